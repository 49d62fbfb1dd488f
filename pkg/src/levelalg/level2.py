"""Three-valued decisions for type-2 level h-vectors ``(1, r, ..., a, 2)``."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from math import ceil, comb
from typing import Sequence

from . import bounds
from .forms import Form
from .hvec import (Tri, is_gorenstein_hvector, symmetric_o_sequences,
                   two_part_decompositions, validate_hvector)
from .invsys import (GenericityError, InverseModule, expected_generic_hvector, generic_power_sum,
                     gorenstein_form, verify_level)
from .macaulay import is_o_sequence, macaulay_upper


class Verdict(enum.Enum):
    LEVEL = "Level"
    NOT_LEVEL = "NotLevel"
    UNKNOWN = "Unknown"


@dataclass
class Certificate:
    verdict: Verdict
    stage: str
    trace: dict = field(default_factory=dict)
    witness: InverseModule | None = None

    def __post_init__(self):
        if self.verdict is Verdict.LEVEL and self.witness is None:
            raise ValueError("a Level certificate needs a witness")

    def to_dict(self, witness_path: str | None = None) -> dict:
        return {"verdict": self.verdict.value, "stage": self.stage, "trace": self.trace,
                "witness_file": witness_path}

    def to_text(self, witness_path: str | None = None) -> str:
        lines = [f"verdict: {self.verdict.value}", f"stage: {self.stage}"]
        for k in sorted(self.trace):
            lines.append(f"trace.{k}: {self.trace[k]}")
        lines.append(f"witness: {witness_path or '-'}")
        return "\n".join(lines) + "\n"


def _hv(h) -> list[int]:
    return list(h)


def _require_type2(h: Sequence[int]) -> tuple[int, ...]:
    h = validate_hvector(h)
    if h[-1] != 2:
        raise ValueError(f"expected last entry 2, got {h}")
    return h


# ---------------------------------------------------------------------------
# Gorenstein quotient bound


@dataclass(frozen=True)
class IarrobinoBound:
    u: int
    delta_u: int
    guaranteed_entry: int


def iarrobino_bound(h: Sequence[int], u: int) -> IarrobinoBound:
    """Least ``delta >= 0`` with ``h_{e-u} >= 2 h_u - 2 - 3 delta``; some
    Gorenstein quotient of socle degree e then has u-th entry at least
    ``h_u - delta``."""
    h = _require_type2(h)
    e = len(h) - 1
    if not 1 <= u <= e:
        raise ValueError(f"u must lie in [1, {e}]")
    delta = max(0, ceil((2 * h[u] - 2 - h[e - u]) / 3))
    return IarrobinoBound(u, delta, h[u] - delta)


def check_a_lower_bound(r: int) -> bool:
    return bounds.a_lower_bound_holds(r)


# ---------------------------------------------------------------------------
# (1, r, ..., r, 2) with r <= 4


def is_rrr2_shape(h: Sequence[int]) -> bool:
    e = len(h) - 1
    return e >= 2 and h[-1] == 2 and h[1] == h[e - 1]


def linear_times_power_module(e: int) -> InverseModule:
    """``<y1 y3^(e-1), y2 y3^(e-1)>``, h-vector (1, 3, ..., 3, 2)."""
    return InverseModule([Form.monomial((1, 0, e - 1)), Form.monomial((0, 1, e - 1))])


def gorenstein_witness_form(g: Sequence[int], seed: int = 0) -> Form:
    """A form whose inverse system has the SI h-vector g.

    A seeded generic power sum when g is a generic vector ``h(m, e)``,
    otherwise a power sum over lifted points.
    """
    g = list(g)
    e = len(g) - 1
    c = g[1] if e else 1
    m = max(g)
    if e >= 1 and tuple(g) == expected_generic_hvector(c, m, e):
        try:
            return generic_power_sum(c, m, e, seed)
        except GenericityError:
            pass
    return gorenstein_form(g)


def rrr2_witness(h: Sequence[int], seed: int = 0) -> InverseModule:
    """``<F, y_r^e>`` with F in ``y1..y_{r-1}`` giving ``h - (0, 1, ..., 1)``."""
    h = list(h)
    e, r = len(h) - 1, h[1]
    if r == 3 and all(x == 3 for x in h[1:e]):
        return linear_times_power_module(e)
    g = [h[0]] + [x - 1 for x in h[1:]]
    f = gorenstein_witness_form(g, seed).embed(r)
    top = [0] * r
    top[r - 1] = e
    return InverseModule([f, Form.monomial(top)])


def thm29_check(h: Sequence[int], seed: int = 0) -> Certificate:
    """Exact answer for ``(1, r, ..., r, 2)`` with r <= 4: level iff
    ``h - (0, 1, ..., 1)`` is Gorenstein of codimension r - 1."""
    h = _require_type2(h)
    if not is_rrr2_shape(h):
        raise ValueError(f"{h} is not of the shape (1, r, ..., r, 2)")
    r = h[1]
    if r >= 5:
        return Certificate(Verdict.UNKNOWN, "thm29", {"reason": "open for r >= 5"})
    g = [1] + [x - 1 for x in h[1:]]
    verdict = is_gorenstein_hvector(g)
    trace = {"gorenstein_part": g}
    if verdict is Tri.NO:
        trace["reason"] = "h - (0,1,...,1) is not a Gorenstein h-vector of codimension r-1"
        return Certificate(Verdict.NOT_LEVEL, "thm29", trace)
    m = rrr2_witness(h, seed)
    if not verify_level(m, h):
        raise RuntimeError(f"witness for {h} failed verification")
    return Certificate(Verdict.LEVEL, "thm29", trace, m)


# ---------------------------------------------------------------------------
# decomposition screens


def screen_cor22(h: Sequence[int]) -> Certificate:
    """NotLevel when h is not a Gorenstein vector plus a reversed O-sequence."""
    h = _require_type2(h)
    if not is_o_sequence(h):
        return Certificate(Verdict.NOT_LEVEL, "cor22-screen", {"reason": "not an O-sequence"})
    pairs = two_part_decompositions(h)
    trace = {"decompositions": [{"g": _hv(p.g), "tail": _hv(p.tail), "g_verdict": p.g_verdict.value}
                                for p in pairs]}
    if not pairs:
        trace["reason"] = "no Gorenstein g with reverse(h - g) an O-sequence"
        return Certificate(Verdict.NOT_LEVEL, "cor22-screen", trace)
    return Certificate(Verdict.UNKNOWN, "cor22-screen", trace)


def screen_thm23(h: Sequence[int]) -> Certificate:
    """Pairwise intersection screen in codimension 3.

    For a level ``M = <F, G>``, ``h = h_F + h_G - h''`` where ``h''`` is the
    h-vector of ``<F> cap <G>``, itself an O-sequence. The screen collects
    the admissible single-form vectors, drops those that cannot reach h
    with any partner (``g + g' >= h`` fails somewhere), and looks for a pair
    whose ``h''`` is a non-negative O-sequence.
    """
    h = _require_type2(h)
    if h[1] != 3:
        raise ValueError("the pairwise screen is implemented for codimension 3 only")
    if not is_o_sequence(h):
        return Certificate(Verdict.NOT_LEVEL, "thm23-screen", {"reason": "not an O-sequence"})
    cands = [p.g for p in two_part_decompositions(h)]
    n = len(h)

    def covers(g1, g2):
        return next((d for d in range(n) if g1[d] + g2[d] < h[d]), None)

    excluded = []
    kept = []
    for g in cands:
        if any(covers(g, g2) is None for g2 in cands):
            kept.append(g)
        else:
            # the best partner still falls short somewhere
            d = max(range(n), key=lambda k: h[k] - g[k] - max(x[k] for x in cands))
            best = max(x[d] for x in cands)
            if g[d] + best < h[d]:
                reason = f"{g[d]}+{best}<{h[d]}"
            else:
                reason = "no single partner reaches h in every degree"
            excluded.append({"g": _hv(g), "degree": d, "reason": reason})
    pairs = []
    admissible = None
    for i, g1 in enumerate(kept):
        for g2 in kept[i:]:
            if covers(g1, g2) is not None:
                continue
            mid = [a + b - c for a, b, c in zip(g1, g2, h)]
            ok = all(x >= 0 for x in mid) and is_o_sequence(mid)
            pairs.append({"g_f": _hv(g1), "g_g": _hv(g2), "h_double": mid,
                          "status": "admissible" if ok else "not an O-sequence"})
            if ok and admissible is None:
                admissible = pairs[-1]
    trace = {"candidates": [_hv(g) for g in cands], "excluded": excluded, "pairs": pairs}
    if admissible is None:
        trace["reason"] = "no pair of admissible forms has an O-sequence intersection part"
        return Certificate(Verdict.NOT_LEVEL, "thm23-screen", trace)
    return Certificate(Verdict.UNKNOWN, "thm23-screen", trace)


# ---------------------------------------------------------------------------
# bounds stage


def _o_sequence_failure(h):
    for d in range(1, len(h) - 1):
        cap = macaulay_upper(h[d], d)
        if h[d + 1] > cap:
            return {"degree": d + 1, "inequality": f"h_{d + 1}={h[d + 1]} > h_{d}^<{d}>={cap}"}
    return None


def _bounds_failure(h) -> dict | None:
    e = len(h) - 1
    r, a = h[1], h[e - 1]
    if a > 2 * r:
        return {"bound": "a <= 2r", "inequality": f"a={a} > {2 * r}"}
    if a < r:
        if bounds.a_lower_bound_holds(r):
            return {"bound": "a >= r (r <= 7)", "inequality": f"a={a} < r={r}"}
        return None
    if e >= 3:
        b = h[e - 2]
        ub = bounds.b_upper(r, a, e)
        if b > ub:
            return {"bound": "b", "inequality": f"b={b} > {ub}"}
    if a > r or r <= 5:
        for i in range(2, e - 1):
            ub = bounds.entry_upper(r, a, e, i)
            if h[e - i] > ub:
                return {"bound": f"h_{e - i}", "inequality": f"h_{e - i}={h[e - i]} > {ub}"}
    if a == r and r <= 5:
        for i in range(1, e):
            if h[i] != h[e - i]:
                return {"bound": "symmetry (a = r <= 5)",
                        "inequality": f"h_{i}={h[i]} != h_{e - i}={h[e - i]}"}
    return None


# ---------------------------------------------------------------------------
# witness search over two-block power sums


def _block_hv(nvars: int, m: int, e: int) -> list[int]:
    return list(expected_generic_hvector(nvars, m, e))


def _solve_gamma(h, gb, r, e, gamma_max):
    """Values of the second block's summand count that make the capped sum
    equal h, as an interval (lo, hi) or None."""
    lo, hi = 1, gamma_max
    for i in range(1, e + 1):
        cap = comb(r - 1 + i, i)
        dmax = 1 if i == e else min(cap, comb(r - 1 + e - i, e - i))
        need = h[i] - gb[i]
        if h[i] < cap:
            # gb_i + min(gamma, dmax) == h_i
            if need < 1 or need > dmax:
                return None
            if need < dmax:
                lo, hi = max(lo, need), min(hi, need)
            else:
                lo = max(lo, dmax)
        elif h[i] == cap:
            if need > dmax:
                return None
            lo = max(lo, need)
        else:
            return None
        if lo > hi:
            return None
    return lo, hi


def witness_candidates(h: Sequence[int]) -> list[bounds.Recipe]:
    """Two-block recipes (v-variable block, r-variable block) predicted to give h."""
    h = list(h)
    e, r = len(h) - 1, h[1]
    half = e // 2
    gamma_max = comb(r - 1 + half, half)
    out = []
    for v in range(1, r + 1):
        # beta above max(h) would overshoot the middle entry
        for beta in range(1, min(comb(v - 1 + half, half), max(h)) + 1):
            gb = _block_hv(v, beta, e)
            sol = _solve_gamma(h, gb, r, e, gamma_max)
            if sol is None:
                continue
            gamma = sol[0]
            second = bounds.Block((r,), 1) if gamma == 1 and v < r else bounds.Block(tuple(range(1, r + 1)), gamma)
            rec = bounds.Recipe(r, e, (bounds.Block(tuple(range(1, v + 1)), beta), second))
            if rec.predicted() == tuple(h):
                out.append(rec)
    return out


def witness_search(h: Sequence[int], seed: int = 0, limit: int = 4) -> tuple[InverseModule, bounds.Recipe] | None:
    for rec in witness_candidates(h)[:limit]:
        try:
            m = bounds.build_recipe(rec, seed)
        except GenericityError:
            continue
        return m, rec
    return None


# ---------------------------------------------------------------------------
# orchestration


def decide(h: Sequence[int], seed: int = 0) -> Certificate:
    h = _require_type2(h)
    e = len(h) - 1
    fail = _o_sequence_failure(h)
    if fail is not None:
        return Certificate(Verdict.NOT_LEVEL, "o-sequence", fail)
    if e == 1:
        m = InverseModule([Form.monomial((1, 0)), Form.monomial((0, 1))])
        return Certificate(Verdict.LEVEL, "trivial", {"reason": "linear forms y1, y2"}, m)
    fail = _bounds_failure(h)
    if fail is not None:
        return Certificate(Verdict.NOT_LEVEL, "bounds", fail)
    r = h[1]
    if is_rrr2_shape(h) and r <= 4:
        return thm29_check(h, seed)
    found = witness_search(h, seed)
    if found is not None:
        m, rec = found
        return Certificate(Verdict.LEVEL, "witness-search", {"recipe": rec.to_dict()}, m)
    cert = screen_cor22(h)
    if cert.verdict is Verdict.NOT_LEVEL:
        return cert
    if r == 3:
        cert23 = screen_thm23(h)
        if cert23.verdict is Verdict.NOT_LEVEL:
            return cert23
    trace = {"reason": "no screen fired and no witness found"}
    if r >= 5 and is_rrr2_shape(h):
        trace["note"] = "open for r >= 5"
    if not bounds.a_lower_bound_holds(r) and h[e - 1] < r:
        trace["note"] = "lower bound for a is open when r > 7"
    return Certificate(Verdict.UNKNOWN, "exhausted", trace)


# ---------------------------------------------------------------------------
# enumeration and census


def rrr2_gorenstein_parts(r: int, e: int) -> list[list[int]]:
    """SI vectors of codimension r - 1 and socle degree e with g_1 = r - 1."""
    upper = [comb(r - 2 + i, i) for i in range(e + 1)]
    out = []
    for g in symmetric_o_sequences(upper, codim=r - 1):
        if is_gorenstein_hvector(g) is Tri.YES:
            out.append(g)
    return out


def enumerate_rrr2(r: int, e_max: int, seed: int = 0, verify: bool = True) -> list[tuple[int, ...]]:
    """Sorted level vectors (1, r, ..., r, 2) with 2 <= e <= e_max."""
    if not 2 <= r <= 4:
        raise ValueError("enumerate_rrr2 covers 2 <= r <= 4")
    out = []
    for e in range(2, e_max + 1):
        for g in rrr2_gorenstein_parts(r, e):
            h = tuple([1] + [x + 1 for x in g[1:]])
            if verify and not verify_level(rrr2_witness(h, seed), h):
                raise RuntimeError(f"witness for {h} failed verification")
            out.append(h)
    return sorted(out)


def count_shape_o_sequences(r: int, e: int) -> int:
    """Number of O-sequences (1, r, h_2, ..., h_{e-2}, r, 2), by dynamic programming."""
    if e < 2:
        return 0
    if e == 2:
        return int(is_o_sequence([1, r, 2]))
    ways = {r: 1}
    for d in range(1, e - 2):
        nxt: dict[int, int] = {}
        for v, c in ways.items():
            for w in range(1, macaulay_upper(v, d) + 1):
                nxt[w] = nxt.get(w, 0) + c
        ways = nxt
    total = 0
    for v, c in ways.items():
        if r <= macaulay_upper(v, e - 2) and 2 <= macaulay_upper(r, e - 1):
            total += c
    return total


def _completions(prefix: list[int], r: int, e: int) -> int:
    """O-sequence completions of ``prefix`` (entries h_0..h_k) to the shape."""
    k = len(prefix) - 1
    if k >= e - 1:
        return int(is_o_sequence(prefix[: e - 1] + [r, 2]))
    ways = {prefix[-1]: 1}
    for d in range(k, e - 2):
        nxt: dict[int, int] = {}
        for v, c in ways.items():
            for w in range(1, macaulay_upper(v, d) + 1):
                nxt[w] = nxt.get(w, 0) + c
        ways = nxt
    return sum(c for v, c in ways.items() if r <= macaulay_upper(v, e - 2) and 2 <= macaulay_upper(r, e - 1))


@dataclass
class CensusRow:
    r: int
    e: int
    total: int
    members: list[tuple[int, ...]]
    leaf_not_level: int
    pruned_not_level: int
    pruned_reasons: dict[str, int]

    @property
    def accounted(self) -> int:
        return len(self.members) + self.leaf_not_level + self.pruned_not_level


def census(r: int, e: int, seed: int = 0) -> CensusRow:
    """Classify every O-sequence (1, r, ..., r, 2) of socle degree e.

    Prefixes are extended left to right. A prefix whose next entry breaks
    the per-entry bound or the symmetry forced by ``a = r <= 5`` makes every
    completion NotLevel by the bounds stage; those subtrees are counted by
    dynamic programming instead of being listed. Surviving full vectors go
    through :func:`decide`.
    """
    if not 2 <= r <= 4:
        raise ValueError("census covers 2 <= r <= 4")
    total = count_shape_o_sequences(r, e)
    members: list[tuple[int, ...]] = []
    leaf_no = 0
    pruned = 0
    reasons: dict[str, int] = {}

    def bump(reason, n):
        nonlocal pruned
        if n:
            pruned += n
            reasons[reason] = reasons.get(reason, 0) + n

    def rec(prefix):
        nonlocal leaf_no
        i = len(prefix)
        if i == e - 1:
            h = prefix + [r, 2]
            if not is_o_sequence(h):
                return
            cert = decide(h, seed)
            if cert.verdict is Verdict.LEVEL:
                members.append(tuple(h))
            elif cert.verdict is Verdict.NOT_LEVEL:
                leaf_no += 1
            else:
                raise RuntimeError(f"census hit Unknown at {h}")
            return
        hi = macaulay_upper(prefix[-1], i - 1)
        ub = bounds.entry_upper(r, r, e, e - i) if 2 <= e - i <= e - 2 else hi
        for v in range(1, hi + 1):
            child = prefix + [v]
            if v > ub:
                bump("entry bound", _completions(child, r, e))
            elif e - i < i and v != prefix[e - i]:
                bump("symmetry", _completions(child, r, e))
            else:
                rec(child)

    if e == 2:
        h = [1, r, 2]
        if is_o_sequence(h):
            cert = decide(h, seed)
            if cert.verdict is Verdict.LEVEL:
                members.append(tuple(h))
            else:
                leaf_no += 1
    else:
        rec([1, r])
    return CensusRow(r, e, total, sorted(members), leaf_no, pruned, reasons)
