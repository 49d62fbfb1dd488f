"""Inverse systems: derivative spaces, annihilators, socles and witnesses.

``x_i`` acts on ``S = k[y_1..y_r]`` as ``d/dy_i`` (honest partial
derivatives, multinomial factors included). Over a field of
characteristic zero this gives the same dimensions as the contraction
action, so nothing below depends on that choice except the ``alpha!``
weights in :func:`annihilator_component`.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Sequence

from .forms import Form
from .linalg import EchelonBasis, integer_row, nullspace, rank
from .macaulay import monomial_exponents


class GenericityError(RuntimeError):
    """Seeded draws never produced the expected generic h-vector."""


# ---------------------------------------------------------------------------
# modules


@dataclass(frozen=True)
class InverseModule:
    generators: tuple[Form, ...]

    def __init__(self, generators: Sequence[Form]):
        gens = tuple(generators)
        if not gens:
            raise ValueError("an inverse module needs at least one generator")
        n = gens[0].nvars
        if any(g.nvars != n for g in gens):
            raise ValueError("generators must share the number of variables")
        if any(g.is_zero for g in gens):
            raise ValueError("zero generator")
        for d in {g.degree for g in gens}:
            same = [g for g in gens if g.degree == d]
            if rank(g.to_vector() for g in same) < len(same):
                raise ValueError(f"generators of degree {d} are linearly dependent")
        object.__setattr__(self, "generators", gens)

    @property
    def nvars(self) -> int:
        return self.generators[0].nvars

    @property
    def top_degree(self) -> int:
        return max(g.degree for g in self.generators)

    def __len__(self) -> int:
        return len(self.generators)


@lru_cache(maxsize=None)
def _monomial_index(nvars: int, degree: int) -> dict[tuple[int, ...], int]:
    return {e: i for i, e in enumerate(monomial_exponents(nvars, degree))}


@lru_cache(maxsize=None)
def _diff_table(nvars: int, degree: int) -> tuple[tuple[tuple[int, int, int], ...], ...]:
    """For each variable, (source index, target index, multiplier) triples for
    differentiating degree-``degree`` coordinate vectors."""
    target = _monomial_index(nvars, degree - 1)
    table = []
    for v in range(nvars):
        entries = []
        for j, e in enumerate(monomial_exponents(nvars, degree)):
            if e[v]:
                f = list(e)
                f[v] -= 1
                entries.append((j, target[tuple(f)], e[v]))
        table.append(tuple(entries))
    return tuple(table)


def _diff_vector(vec: Sequence[int], nvars: int, degree: int, v: int) -> list[int]:
    out = [0] * comb(nvars - 2 + degree, degree - 1)
    for j, t, mult in _diff_table(nvars, degree)[v]:
        if vec[j]:
            out[t] = vec[j] * mult
    return out


@dataclass
class DerivativeSpace:
    degree: int
    basis_rank: int
    basis: list[list[int]]
    derivative_rank: int = 0
    spanning: list[list[int]] = field(default_factory=list, repr=False)


def derivative_spaces(m: InverseModule) -> list[DerivativeSpace]:
    """``M_d`` for d = 0..top, computed top-down.

    ``M_d`` is spanned by the first partials of ``M_{d+1}`` together with the
    degree-d generators. Spanning sets are kept as actual derivatives (not
    reduced rows) so coefficient sizes do not snowball across degrees.
    ``derivative_rank`` is the dimension of the derivative part alone.
    """
    r = m.nvars
    top = m.top_degree
    spaces: list[DerivativeSpace] = [None] * (top + 1)  # type: ignore[list-item]
    above: list[list[int]] = []
    for d in range(top, -1, -1):
        eb = EchelonBasis(comb(r - 1 + d, d))
        chosen = []
        for vec in above:
            for v in range(r):
                w = _diff_vector(vec, r, d + 1, v)
                if any(w) and eb.add(w):
                    chosen.append(w)
        deriv_rank = eb.rank
        for g in m.generators:
            if g.degree == d:
                w = integer_row(g.to_vector())
                if eb.add(w):
                    chosen.append(w)
        spaces[d] = DerivativeSpace(d, eb.rank, [eb.rows[k] for k in sorted(eb.rows)], deriv_rank, chosen)
        above = chosen
    return spaces


def hvector_of_module(m: InverseModule) -> tuple[int, ...]:
    return tuple(s.basis_rank for s in derivative_spaces(m))


def socle_vector(m: InverseModule) -> tuple[int, ...]:
    """``s_d`` = number of minimal generators of M in degree d."""
    return tuple(s.basis_rank - s.derivative_rank for s in derivative_spaces(m))


def module_profile(m: InverseModule) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(h-vector, socle vector) from one pass."""
    spaces = derivative_spaces(m)
    return (tuple(s.basis_rank for s in spaces),
            tuple(s.basis_rank - s.derivative_rank for s in spaces))


# ---------------------------------------------------------------------------
# annihilators


def _pairing_weights(nvars: int, d: int) -> list[int]:
    out = []
    for e in monomial_exponents(nvars, d):
        w = 1
        for k in e:
            w *= factorial(k)
        out.append(w)
    return out


def annihilator_vectors(m: InverseModule, d: int, spaces: list[DerivativeSpace] | None = None) -> list[list[Fraction]]:
    """Coordinate vectors (lex monomial order) of a basis of ``I_d``."""
    if d < 0:
        raise ValueError("degree must be non-negative")
    r = m.nvars
    n = comb(r - 1 + d, d)
    if d > m.top_degree:
        return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    spaces = spaces or derivative_spaces(m)
    weights = _pairing_weights(r, d)
    rows = [[w * c for w, c in zip(weights, vec)] for vec in spaces[d].basis]
    return nullspace(rows, n)


def annihilator_component(m: InverseModule, d: int) -> list[Form]:
    """Basis of the degree-d piece of ``Ann(M)`` as forms in ``x1..xr``."""
    return [Form.from_vector(m.nvars, d, v, var="x") for v in annihilator_vectors(m, d)]


def socle_vector_via_ideal(m: InverseModule) -> tuple[int, ...]:
    """Socle dimensions computed on the algebra side.

    ``soc(A)_i = {p in R_i : x_j p in I_{i+1} for all j} / I_i``; membership
    in ``I_{i+1}`` is tested against a basis of the complement of ``I_{i+1}``.
    """
    r = m.nvars
    top = m.top_degree
    spaces = derivative_spaces(m)
    ideal = [annihilator_vectors(m, d, spaces) for d in range(top + 2)]
    out = []
    for i in range(top + 1):
        n_i = comb(r - 1 + i, i)
        n_next = comb(r + i, i + 1)
        # functionals vanishing exactly on I_{i+1}
        checks = nullspace(ideal[i + 1], n_next) if ideal[i + 1] else [
            [Fraction(int(a == b)) for b in range(n_next)] for a in range(n_next)]
        idx_next = _monomial_index(r, i + 1)
        rows = []
        for v in range(r):
            # matrix of p -> checks . (x_v p)
            for chk in checks:
                row = []
                for e in monomial_exponents(r, i):
                    f = list(e)
                    f[v] += 1
                    row.append(chk[idx_next[tuple(f)]])
                rows.append(row)
        dim_p = n_i - rank(rows)
        out.append(dim_p - len(ideal[i]))
    return tuple(out)


# ---------------------------------------------------------------------------
# decompositions


@dataclass(frozen=True)
class ThreePartDecomposition:
    h_prime: tuple[int, ...]
    h_double: tuple[int, ...]
    h_triple: tuple[int, ...]
    h_f: tuple[int, ...]
    h_g: tuple[int, ...]
    h: tuple[int, ...]


def three_part_decomposition(f: Form, g: Form) -> ThreePartDecomposition:
    """Split ``h(<f,g>)`` through the intersection ``N = <f> cap <g>``.

    ``h''_d = dim <f>_d + dim <g>_d - dim <f,g>_d``; ``h' = h_f - h''`` and
    ``h''' = h_g - h''``.
    """
    if f.degree != g.degree:
        raise ValueError("forms must have the same degree")
    both = InverseModule([f, g])  # raises on dependence
    hf = hvector_of_module(InverseModule([f]))
    hg = hvector_of_module(InverseModule([g]))
    h = hvector_of_module(both)
    h2 = tuple(a + b - c for a, b, c in zip(hf, hg, h))
    h1 = tuple(a - b for a, b in zip(hf, h2))
    h3 = tuple(a - b for a, b in zip(hg, h2))
    return ThreePartDecomposition(h1, h2, h3, hf, hg, h)


# ---------------------------------------------------------------------------
# generic power sums


def expected_generic_hvector(r: int, m: int, d: int) -> tuple[int, ...]:
    """``h_j(m,d) = min(m, dim R_j, dim R_{d-j})`` in r variables."""
    if min(r, m, d) < 1:
        raise ValueError("r, m, d must be positive")
    return tuple(1 if j in (0, d) else min(m, comb(r - 1 + j, j), comb(r - 1 + d - j, d - j))
                 for j in range(d + 1))


COEFF_NUM = 100
COEFF_DEN = 16
RETRY_BUDGET = 8


def random_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-COEFF_NUM, COEFF_NUM), rng.randint(1, COEFF_DEN))


def power_sum(points: Sequence[Sequence[Fraction | int]], d: int) -> Form:
    """``sum_t L_t^d`` where ``L_t`` has coefficient vector ``points[t]``."""
    r = len(points[0])
    total = Form(r, d, {})
    for p in points:
        total = total + Form.power_of_linear(p, d)
    return total


def generic_power_sum(r: int, m: int, d: int, seed: int = 0, retries: int = RETRY_BUDGET) -> Form:
    """Sum of d-th powers of m seeded random linear forms in r variables.

    The draw is accepted only when ``<F>`` has the generic h-vector; up to
    ``retries`` redraws are made from the same seeded stream.
    """
    if min(r, m, d) < 1:
        raise ValueError("r, m, d must be positive")
    rng = random.Random(seed)
    want = expected_generic_hvector(r, m, d)
    seen = []
    for _ in range(retries + 1):
        pts = [[random_rational(rng) for _ in range(r)] for _ in range(m)]
        f = power_sum(pts, d)
        if f.is_zero:
            seen.append(None)
            continue
        got = hvector_of_module(InverseModule([f]))
        if got == want:
            return f
        seen.append(got)
    raise GenericityError(
        f"no generic draw for r={r}, m={m}, d={d}, seed={seed} after {retries} redraws; "
        f"expected {want}, got {seen}")


def augmented_level_hvector(h: Sequence[int], r: int, m: int, d: int) -> tuple[int, ...]:
    """h-vector of ``<M, F>`` with F a sum of m generic d-th powers and
    ``h = h(M)`` level of socle degree d."""
    h = tuple(h)
    if len(h) != d + 1:
        raise ValueError(f"h must have socle degree {d}")
    cap = comb(r - 1 + d, d) - h[d]
    if m < 1 or m > cap:
        raise ValueError(f"m={m} outside [1, {cap}] (C(r-1+d, d) - h_d)")
    gen = expected_generic_hvector(r, m, d)
    return (1,) + tuple(min(h[i] + gen[i], comb(r - 1 + i, i)) for i in range(1, d + 1))


# ---------------------------------------------------------------------------
# explicit constructions


def remark26_witness(r: int, e: int) -> InverseModule:
    """Two-generator module with h-vector (1, r, ..., r, 2) whose pencil has
    few first derivatives; the shape depends on r mod 3."""
    if r < 2 or e < 2:
        raise ValueError("need r >= 2 and e >= 2")
    p, res = divmod(r, 3)

    def mono(*pairs):
        exps = [0] * r
        for i, k in pairs:
            exps[i - 1] += k
        return Form.monomial(exps)

    f = Form(r, e, {})
    g = Form(r, e, {})
    for k in range(1, p + 1):
        f = f + mono((p + k, 1), (k, e - 1))
        g = g + mono((2 * p + k, 1), (k, e - 1))
    if res >= 1:
        f = f + mono((3 * p + 1, e))
    if res == 2:
        g = g + mono((3 * p + 2, e))
    return InverseModule([f, g])


@dataclass(frozen=True)
class PencilRank:
    generic_rank: int
    certified_max: int
    samples: tuple[tuple[tuple[Fraction, Fraction], int], ...]

    def rank_at(self, mu, lam) -> int | None:
        for (a, b), rk in self.samples:
            if (a, b) == (Fraction(mu), Fraction(lam)):
                return rk
        return None


def pencil_derivative_rank(f: Form, g: Form, seed: int = 0, extra_samples: int = 4) -> PencilRank:
    """First-derivative count across the pencil ``mu F + lam G``.

    ``generic_rank`` is the maximum over [1:0], [0:1] and seeded points.
    ``certified_max`` is the least c such that every (c+1)-minor of the
    derivative matrix vanishes identically in (mu, lam). Such a minor is
    a binary form of degree c+1, so it is identically zero iff it vanishes
    at c+2 distinct points of P^1; the check evaluates ranks at the points
    [1:0], [1:1], ..., [1:c+1].
    """
    if f.degree != g.degree or f.nvars != g.nvars:
        raise ValueError("pencil needs two forms of the same degree and ring")
    InverseModule([f, g])
    r = f.nvars
    df = [f.differentiate(i + 1).to_vector() for i in range(r)]
    dg = [g.differentiate(i + 1).to_vector() for i in range(r)]

    def rank_at(mu, lam):
        return rank([[mu * a + lam * b for a, b in zip(u, v)] for u, v in zip(df, dg)])

    rng = random.Random(seed)
    points = [(Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))]
    points += [(Fraction(1), random_rational(rng)) for _ in range(extra_samples)]
    samples = tuple((pt, rank_at(*pt)) for pt in points)
    generic = max(rk for _, rk in samples)

    cache = {}

    def rank_cached(t):
        if t not in cache:
            cache[t] = rank_at(Fraction(1), Fraction(t)) if t >= 0 else rank_at(Fraction(0), Fraction(1))
        return cache[t]

    certified = r
    for c in range(r + 1):
        pts = [-1] + list(range(c + 1))  # [0:1] then [1:0], [1:1], ...
        if all(rank_cached(t) <= c for t in pts):
            certified = c
            break
    return PencilRank(generic, certified, samples)


# ---------------------------------------------------------------------------
# Gorenstein forms with a prescribed SI h-vector


def lifted_points(diff: Sequence[int]) -> list[tuple[int, ...]]:
    """Integer points in ``A^n`` whose Hilbert function has first difference ``diff``.

    ``diff`` is an O-sequence with ``diff[1] = n``; the points are the
    exponent vectors of the standard monomials of the lex ideal with that
    Hilbert function (the lex-last ``diff[i]`` monomials of each degree).
    """
    n = diff[1] if len(diff) > 1 else 0
    pts = []
    for i, c in enumerate(diff):
        if c == 0:
            continue
        mons = monomial_exponents(n, i)
        if c > len(mons):
            raise ValueError(f"{list(diff)} is not an O-sequence")
        pts.extend(mons[len(mons) - c:])
    return pts


def gorenstein_form(g: Sequence[int]) -> Form:
    """A form in ``g_1`` variables whose inverse system has h-vector g.

    g must be an SI-sequence. The form is ``sum_P (y_1 + P . (y_2..y_c))^e``
    over the points P lifted from the first difference of g's first half.
    The result should always be re-verified by the caller.
    """
    g = list(g)
    e = len(g) - 1
    if e == 0:
        return Form(1, 0, {(0,): 1})
    diff = [g[0]] + [g[i] - g[i - 1] for i in range(1, e // 2 + 1)]
    pts = lifted_points(diff)
    return power_sum([(1,) + tuple(p) for p in pts], e)


def verify_level(m: InverseModule, h: Sequence[int]) -> bool:
    """``m`` gives h-vector ``h`` and its socle sits in degree e only."""
    hv, soc = module_profile(m)
    e = len(h) - 1
    want_soc = tuple([0] * e + [h[-1]])
    return hv == tuple(h) and soc == want_soc
