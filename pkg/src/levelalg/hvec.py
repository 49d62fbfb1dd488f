"""Sequence algebra on h-vectors and the low-codimension Gorenstein tests."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator, Sequence

from .macaulay import is_o_sequence, macaulay_upper


class Tri(enum.Enum):
    YES = "Yes"
    NO = "No"
    UNKNOWN = "Unknown"


def validate_hvector(h: Sequence[int]) -> tuple[int, ...]:
    h = tuple(int(x) for x in h)
    if not h or h[0] != 1:
        raise ValueError(f"h-vector must start with 1: {h}")
    if any(x < 0 for x in h):
        raise ValueError(f"h-vector has negative entries: {h}")
    if len(h) > 1 and h[-1] == 0:
        raise ValueError(f"h-vector must end at its socle degree (last entry > 0): {h}")
    return h


def socle_degree(h: Sequence[int]) -> int:
    return len(h) - 1


def pad(v: Sequence[int], length: int) -> list[int]:
    return list(v) + [0] * (length - len(v))


def add(u: Sequence[int], v: Sequence[int]) -> list[int]:
    n = max(len(u), len(v))
    return [a + b for a, b in zip(pad(u, n), pad(v, n))]


def sub(u: Sequence[int], v: Sequence[int]) -> list[int]:
    n = max(len(u), len(v))
    return [a - b for a, b in zip(pad(u, n), pad(v, n))]


def reverse(v: Sequence[int]) -> list[int]:
    return list(v)[::-1]


def first_difference(v: Sequence[int]) -> list[int]:
    return [v[0]] + [v[i] - v[i - 1] for i in range(1, len(v))]


def is_differentiable(v: Sequence[int]) -> bool:
    d = first_difference(v)
    return all(x >= 0 for x in d) and is_o_sequence(d)


def is_symmetric(h: Sequence[int]) -> bool:
    return list(h) == list(h)[::-1]


def is_si_sequence(h: Sequence[int]) -> bool:
    e = len(h) - 1
    return is_symmetric(h) and is_differentiable(h[: e // 2 + 1])


def is_gorenstein_hvector(h: Sequence[int]) -> Tri:
    """Decide Gorenstein-ness where the SI criterion is known to be exact.

    Codimension <= 3 (Stanley) and codimension 4 with ``h_2 <= 7``
    (Iarrobino-Srinivasan). Elsewhere only the necessary conditions are
    checked: failing symmetry or Macaulay growth gives ``NO``, anything
    else is ``UNKNOWN``.
    """
    h = list(h)
    if not is_symmetric(h) or not is_o_sequence(h):
        return Tri.NO
    r = h[1] if len(h) > 1 else 0
    if r <= 3 or (r == 4 and (len(h) < 3 or h[2] <= 7)):
        return Tri.YES if is_si_sequence(h) else Tri.NO
    return Tri.UNKNOWN


def symmetric_o_sequences(upper: Sequence[int], codim: int | None = None) -> Iterator[list[int]]:
    """Symmetric O-sequences ``g`` with ``g_0 = g_e = 1``, ``1 <= g_i <= upper_i``.

    ``upper`` has length e+1; the search runs over the first half and
    mirrors it. With ``codim`` set, ``g_1`` is pinned to that value.
    """
    e = len(upper) - 1
    if e == 0:
        yield [1]
        return
    half = e // 2
    cap = [min(upper[i], upper[e - i]) for i in range(e + 1)]

    def mirror(prefix):
        if e % 2 == 0:
            return prefix + prefix[:half][::-1]
        return prefix + prefix[::-1]

    def rec(prefix):
        i = len(prefix)
        if i > half:
            g = mirror(prefix)
            if is_o_sequence(g):
                yield g
            return
        hi = cap[i]
        if i >= 2:
            hi = min(hi, macaulay_upper(prefix[-1], i - 1))
        lo = 1
        if i == 1 and codim is not None:
            lo = hi = codim if codim <= cap[1] else 0
            if hi == 0:
                return
        for v in range(lo, hi + 1):
            yield from rec(prefix + [v])

    if cap[0] < 1 or cap[e] < 1:
        return
    yield from rec([1])


@dataclass(frozen=True)
class DecompositionPair:
    g: tuple[int, ...]
    tail: tuple[int, ...]
    g_verdict: Tri


def two_part_decompositions(h: Sequence[int]) -> list[DecompositionPair]:
    """All ``h = g + tail`` with g a plausible Gorenstein vector of socle
    degree e and ``reverse(tail)`` an O-sequence, sorted by g.

    ``UNKNOWN`` Gorenstein verdicts are kept, so the list over-approximates.
    """
    h = validate_hvector(h)
    if h[-1] != 2:
        raise ValueError(f"two_part_decompositions needs h_e = 2, got {h}")
    out = []
    for g in symmetric_o_sequences(h):
        verdict = is_gorenstein_hvector(g)
        if verdict is Tri.NO:
            continue
        tail = sub(h, g)
        if is_o_sequence(reverse(tail)):
            out.append(DecompositionPair(tuple(g), tuple(tail), verdict))
    out.sort(key=lambda p: p.g)
    return out
