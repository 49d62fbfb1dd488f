"""Graded Betti numbers: the Koszul oracle, the Hilbert-series identity,
Diesel's conditions in codimension 3, and the (1,3,...,3,2) first modules."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import ceil, comb
from typing import Mapping, Sequence

from .forms import Form
from .hvec import is_symmetric, validate_hvector
from .invsys import InverseModule, annihilator_vectors, derivative_spaces
from .linalg import EchelonBasis, rank, rref
from .macaulay import macaulay_upper, monomial_exponents


# ---------------------------------------------------------------------------
# tables


@dataclass
class BettiTable:
    codim: int
    entries: dict[tuple[int, int], int] = field(default_factory=dict)
    hvector: tuple[int, ...] | None = None

    def __post_init__(self):
        clean = {}
        for (i, j), b in self.entries.items():
            if b < 0:
                raise ValueError(f"negative Betti number at ({i}, {j})")
            if not 1 <= i <= self.codim:
                raise ValueError(f"homological index {i} outside 1..{self.codim}")
            if b:
                clean[(i, j)] = b
        self.entries = dict(sorted(clean.items()))

    def beta(self, i: int, j: int) -> int:
        return self.entries.get((i, j), 0)

    def degrees(self, i: int) -> list[int]:
        """Multiset of shifts in the i-th module, ascending."""
        out = []
        for (k, j), b in self.entries.items():
            if k == i:
                out.extend([j] * b)
        return sorted(out)

    @property
    def last_module_socle(self) -> tuple[int, ...]:
        return socle_from_table(self)

    def with_entry(self, i: int, j: int, delta: int) -> "BettiTable":
        ent = dict(self.entries)
        ent[(i, j)] = ent.get((i, j), 0) + delta
        return BettiTable(self.codim, ent, self.hvector)

    def to_text(self) -> str:
        head = f"# codim {self.codim}"
        if self.hvector is not None:
            head += " h " + ",".join(map(str, self.hvector))
        lines = [head] + [f"{i} {j} {b}" for (i, j), b in self.entries.items()]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "BettiTable":
        codim = None
        h = None
        entries = {}
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                parts = line[1:].split()
                if "codim" in parts:
                    codim = int(parts[parts.index("codim") + 1])
                if "h" in parts:
                    h = tuple(int(x) for x in parts[parts.index("h") + 1].split(","))
                continue
            i, j, b = (int(x) for x in line.split())
            entries[(i, j)] = entries.get((i, j), 0) + b
        if codim is None:
            raise ValueError("Betti table text has no '# codim' header")
        return cls(codim, entries, h)


def socle_from_table(b: BettiTable) -> tuple[int, ...]:
    """``s_j = beta_{r, j + r}``."""
    r = b.codim
    top = {j: v for (i, j), v in b.entries.items() if i == r}
    if not top:
        raise ValueError("table has no last module")
    e = max(top) - r
    return tuple(top.get(j + r, 0) for j in range(e + 1))


def _polymul(p: Sequence[int], q: Sequence[int]) -> list[int]:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


def _trim(p: list[int]) -> list[int]:
    while len(p) > 1 and p[-1] == 0:
        p = p[:-1]
    return p


def hilbert_numerator(h: Sequence[int], r: int) -> list[int]:
    """Coefficients of ``H(z) (1 - z)^r``."""
    one_minus = [1]
    for _ in range(r):
        one_minus = _polymul(one_minus, [1, -1])
    return _trim(_polymul(list(h), one_minus))


def betti_polynomial(b: BettiTable) -> list[int]:
    """Coefficients of ``1 + sum (-1)^i beta_{i,j} z^j``."""
    top = max((j for _, j in b.entries), default=0)
    out = [0] * (top + 1)
    out[0] = 1
    for (i, j), v in b.entries.items():
        out[j] += (-1) ** i * v
    return _trim(out)


def functional_equation_check(h: Sequence[int], b: BettiTable) -> tuple[bool, list[int]]:
    """Compare ``H(z)(1-z)^r`` with the Betti polynomial; the residual is
    Betti side minus Hilbert side."""
    lhs = hilbert_numerator(h, b.codim)
    rhs = betti_polynomial(b)
    n = max(len(lhs), len(rhs))
    res = [(rhs[k] if k < len(rhs) else 0) - (lhs[k] if k < len(lhs) else 0) for k in range(n)]
    res = _trim(res)
    return res == [0], res


# ---------------------------------------------------------------------------
# Koszul oracle


def ideal_components_from_generators(gens: Sequence[Form], cap: int) -> dict[int, list[list[int]]]:
    """Degreewise spans ``I_d``, d = 0..cap, of the ideal generated by ``gens``."""
    if not gens:
        raise ValueError("no generators")
    r = gens[0].nvars
    comps: dict[int, list[list[int]]] = {}
    prev: list[list[int]] = []
    for d in range(cap + 1):
        n = comb(r - 1 + d, d)
        eb = EchelonBasis(n)
        if prev:
            idx = {e: k for k, e in enumerate(monomial_exponents(r, d))}
            src = monomial_exponents(r, d - 1)
            for vec in prev:
                for v in range(r):
                    w = [0] * n
                    for k, c in enumerate(vec):
                        if c:
                            e = list(src[k])
                            e[v] += 1
                            w[idx[tuple(e)]] = c
                    eb.add(w)
        for g in gens:
            if g.degree == d and not g.is_zero:
                eb.add(g.to_vector())
        comps[d] = [eb.rows[k] for k in sorted(eb.rows)]
        prev = comps[d]
    return comps


def ideal_components_from_module(m: InverseModule, cap: int) -> dict[int, list[list[Fraction]]]:
    spaces = derivative_spaces(m)
    return {d: annihilator_vectors(m, d, spaces) for d in range(cap + 1)}


class _Quotient:
    """``A = R/I`` degree by degree, with standard monomials taken from the
    non-pivot columns of each reduced ``I_d``."""

    def __init__(self, comps: Mapping[int, Sequence[Sequence]], r: int, cap: int):
        self.r = r
        self.std: list[list[int]] = []
        self.nf: list[dict[int, dict[int, Fraction]]] = []
        for d in range(cap + 1):
            n = comb(r - 1 + d, d)
            rows, piv = rref(comps.get(d, []), n) if comps.get(d) else ([], [])
            pivset = set(piv)
            std = [c for c in range(n) if c not in pivset]
            pos = {c: k for k, c in enumerate(std)}
            nf = {}
            for c in std:
                nf[c] = {pos[c]: Fraction(1)}
            for row, p in zip(rows, piv):
                nf[p] = {pos[c]: -row[c] for c in std if row[c]}
            self.std.append(std)
            self.nf.append(nf)

    def dim(self, d: int) -> int:
        return len(self.std[d]) if 0 <= d < len(self.std) else 0

    def mult(self, v: int, d: int) -> list[dict[int, Fraction]]:
        """Matrix of ``x_v : A_d -> A_{d+1}`` as sparse columns."""
        idx = {e: k for k, e in enumerate(monomial_exponents(self.r, d + 1))}
        mons = monomial_exponents(self.r, d)
        cols = []
        for c in self.std[d]:
            e = list(mons[c])
            e[v] += 1
            cols.append(self.nf[d + 1][idx[tuple(e)]] if d + 1 < len(self.nf) else {})
        return cols


def koszul_betti(comps: Mapping[int, Sequence[Sequence]], codim: int, cap: int,
                 hvector: Sequence[int] | None = None) -> BettiTable:
    """``beta_{i,j} = dim H_i(K(x; A))_j`` from exact ranks of the Koszul
    differentials ``wedge^i k^r (x) A_{j-i} -> wedge^{i-1} k^r (x) A_{j-i+1}``."""
    r = codim
    if not 1 <= r <= 4:
        raise ValueError("the Koszul oracle is meant for codimension <= 4")
    A = _Quotient(comps, r, cap)
    dims = [A.dim(d) for d in range(cap + 1)]
    if dims[cap] != 0:
        raise ValueError(f"quotient is not zero in degree cap={cap}; raise the cap")
    e = max(d for d in range(cap + 1) if dims[d])
    if cap < e + r:
        raise ValueError(f"cap={cap} too small to close the last module (need >= {e + r})")
    subsets = [list(combinations(range(r), i)) for i in range(r + 1)]
    sub_idx = [{s: k for k, s in enumerate(ss)} for ss in subsets]
    mults = {(v, d): A.mult(v, d) for v in range(r) for d in range(e + 1)}

    def diff_rank(i: int, j: int) -> int:
        # d_i : K_{i,j} -> K_{i-1,j}, source A_{j-i}, target A_{j-i+1}
        if i < 1 or i > r:
            return 0
        d = j - i
        if d < 0 or d > e or dims[d] == 0 or d + 1 > e:
            return 0
        nt = dims[d + 1]
        rows = []
        for s in subsets[i]:
            for a in range(dims[d]):
                row = [Fraction(0)] * (len(subsets[i - 1]) * nt)
                for pos, v in enumerate(s):
                    t = s[:pos] + s[pos + 1:]
                    sign = -1 if pos % 2 else 1
                    base = sub_idx[i - 1][t] * nt
                    for k, c in mults[(v, d)][a].items():
                        row[base + k] += sign * c
                rows.append(row)
        return rank(rows)

    entries = {}
    for i in range(1, r + 1):
        for j in range(i, e + i + 1):
            d = j - i
            dim_k = comb(r, i) * dims[d]
            if dim_k == 0:
                continue
            b = dim_k - diff_rank(i, j) - diff_rank(i + 1, j)
            if b:
                entries[(i, j)] = b
    return BettiTable(r, entries, tuple(hvector) if hvector is not None else tuple(dims[: e + 1]))


def koszul_betti_of_module(m: InverseModule, cap: int | None = None) -> BettiTable:
    e = m.top_degree
    cap = e + m.nvars if cap is None else cap
    return koszul_betti(ideal_components_from_module(m, cap), m.nvars, cap)


def koszul_betti_of_ideal(gens: Sequence[Form], cap: int) -> BettiTable:
    return koszul_betti(ideal_components_from_generators(gens, cap), gens[0].nvars, cap)


# ---------------------------------------------------------------------------
# Gotzmann


def gotzmann_check(codim: int, d: int, dim_v: int, dim_r1v: int) -> bool:
    """``(dim R_d - dim V)^<d> == dim R_{d+1} - dim R_1 V``."""
    total = comb(codim - 1 + d, d)
    if not 0 <= dim_v <= total:
        raise ValueError(f"dim V={dim_v} outside [0, {total}]")
    return macaulay_upper(total - dim_v, d) == comb(codim + d, d + 1) - dim_r1v


# ---------------------------------------------------------------------------
# codimension-3 Gorenstein shapes


def third_difference(T: Sequence[int]) -> list[int]:
    """``Delta^3 T`` on the window of degrees 0..e+3."""
    v = list(T) + [0, 0, 0]
    for _ in range(3):
        v = [v[0]] + [v[i] - v[i - 1] for i in range(1, len(v))]
    return v


@dataclass(frozen=True)
class DieselParams:
    k: int
    mu: int
    forced_generators: dict[int, int]
    d: tuple[int, ...]
    degenerate: bool = False


def diesel_params(T: Sequence[int]) -> DieselParams:
    T = validate_hvector(T)
    if not is_symmetric(T) or T[-1] != 1:
        raise ValueError(f"{T} is not a symmetric vector ending in 1")
    e = len(T) - 1
    d = third_difference(T)
    k = 0
    while (T[k] if k <= e else 0) >= comb(2 + k, 2):
        k += 1
    neg = {i: -d[i] for i in range(1, e + 3) if d[i] < 0}
    s = sum(neg.values())
    mu = 2 * ceil(s / 2) - 1
    degenerate = e >= 1 and T[1] < 3
    return DieselParams(k, mu, neg, tuple(d), degenerate)


@dataclass(frozen=True)
class GorensteinShape:
    q: tuple[int, ...]
    p: tuple[int, ...]
    e: int

    def __post_init__(self):
        if len(self.q) != len(self.p):
            raise ValueError("q and p must have the same length")
        if list(self.q) != sorted(self.q):
            raise ValueError("q must be ascending")
        if list(self.p) != sorted(self.p, reverse=True):
            raise ValueError("p must be descending")

    @property
    def n(self) -> int:
        return len(self.q)

    @property
    def gaps(self) -> tuple[int, ...]:
        return tuple(a - b for a, b in zip(self.p, self.q))

    def table(self) -> BettiTable:
        ent: Counter = Counter()
        for q in self.q:
            ent[(1, q)] += 1
        for p in self.p:
            ent[(2, p)] += 1
        ent[(3, self.e + 3)] += 1
        return BettiTable(3, dict(ent))


def diesel_check(T: Sequence[int], shape: GorensteinShape) -> tuple[bool, dict]:
    """All of Diesel's conditions for ``shape`` to resolve a codim-3
    Gorenstein algebra with h-vector T; returns (ok, per-condition trace)."""
    T = validate_hvector(T)
    e = len(T) - 1
    if shape.e != e:
        raise ValueError(f"shape socle degree {shape.e} does not match T (e={e})")
    par = diesel_params(T)
    n = shape.n
    rr = shape.gaps
    fe_ok, res = functional_equation_check(T, shape.table())
    trace = {
        "functional_equation": fe_ok,
        "pairing": all(p + q == e + 3 for p, q in zip(shape.p, shape.q)),
        "n_odd": n % 2 == 1,
        "mu_le_n": par.mu <= n,
        "n_le_2k_plus_1": n <= 2 * par.k + 1,
        "r1_positive": n >= 1 and rr[0] > 0,
        "paired_gaps_positive": all(rr[i - 1] + rr[n - i + 1] > 0 for i in range(2, n + 1)),
    }
    ok = all(trace.values())
    trace = dict(trace)
    if not fe_ok:
        trace["residual"] = res
    trace.update({"k": par.k, "mu": par.mu, "n": n})
    return ok, trace


def diesel_check_table(T: Sequence[int], table: BettiTable) -> tuple[bool, dict]:
    """:func:`diesel_check` on a raw table; structural defects (wrong last
    module, unequal module ranks) are reported as failed conditions."""
    T = validate_hvector(T)
    e = len(T) - 1
    q = tuple(table.degrees(1))
    p = tuple(sorted(table.degrees(2), reverse=True))
    third = table.degrees(3)
    structure = {"codim_3": table.codim == 3, "last_module": third == [e + 3],
                 "ranks_match": len(q) == len(p)}
    if not all(structure.values()):
        fe_ok, res = functional_equation_check(T, table)
        trace = dict(structure)
        trace["functional_equation"] = fe_ok
        if not fe_ok:
            trace["residual"] = res
        return False, trace
    ok, trace = diesel_check(T, GorensteinShape(q, p, e))
    trace.update(structure)
    return ok, trace


# ---------------------------------------------------------------------------
# first modules for (1, 3, ..., 3, 2)


def thm44_first_module(h: Sequence[int]) -> list[list[int]]:
    """Possible generator degrees of the annihilator of a level (1,3,...,3,2)."""
    from .level2 import Verdict, is_rrr2_shape, thm29_check

    h = validate_hvector(h)
    e = len(h) - 1
    if e < 3 or h[1] != 3 or not is_rrr2_shape(h):
        raise ValueError(f"{h} is not of the shape (1, 3, ..., 3, 2) with e >= 3")
    if thm29_check(h).verdict is not Verdict.LEVEL:
        raise ValueError(f"{h} is not a level h-vector")
    j = h[e // 2]
    if j > 3:
        return [sorted([2, 2, j - 1, e - j + 3, e + 1])]
    return [[2, 2, 2, e], [2, 2, 2, e, e + 1]]
