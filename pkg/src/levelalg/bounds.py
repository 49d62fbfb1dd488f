"""Closed-form bounds on type-2 level h-vectors (1, r, ..., a, 2) and the
power-sum recipes that attain them."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import ceil, comb
from typing import Sequence

from .forms import Form
from .invsys import (GenericityError, InverseModule, RETRY_BUDGET, expected_generic_hvector,
                     generic_power_sum, module_profile)


class HypothesisError(ValueError):
    """The requested bound is not established for these parameters."""


def _dim(r: int, i: int) -> int:
    return comb(r - 1 + i, i)


# ---------------------------------------------------------------------------
# split maxima


def lemma34_max(r: int, a: int, i: int) -> int:
    """Max of ``C(r1-1+i, i) + C(r2-1+i, i)`` over ``r1 + r2 = a``, ``1 <= r1, r2 <= r``."""
    _check_split(r, a, i)
    if a == r:
        return comb(r - 2 + i, i) + 1
    return comb(r - 1 + i, i) + comb(a - r - 1 + i, i)


def lemma34_bruteforce(r: int, a: int, i: int) -> int:
    _check_split(r, a, i)
    return max(comb(r1 - 1 + i, i) + comb(a - r1 - 1 + i, i)
               for r1 in range(1, r + 1) if 1 <= a - r1 <= r)


def _check_split(r, a, i):
    if r < 2 or not r <= a <= 2 * r or i < 1:
        raise ValueError(f"need 2 <= r <= a <= 2r and i >= 1, got r={r}, a={a}, i={i}")


# ---------------------------------------------------------------------------
# recipes


@dataclass(frozen=True)
class Block:
    """Sum of ``summands`` generic e-th powers of linear forms in the listed
    variables (1-based). A one-variable, one-summand block is the pure power."""

    variables: tuple[int, ...]
    summands: int

    def describe(self) -> str:
        if len(self.variables) == 1 and self.summands == 1:
            return f"y{self.variables[0]}^e"
        vs = f"y{self.variables[0]}..y{self.variables[-1]}" if len(self.variables) > 1 else f"y{self.variables[0]}"
        return f"{self.summands} generic powers in {vs}"


@dataclass(frozen=True)
class Recipe:
    r: int
    e: int
    blocks: tuple[Block, ...]

    def predicted(self) -> tuple[int, ...]:
        """h-vector the recipe gives when the draws are generic: blockwise
        generic h-vectors added and capped at ``dim R_i``."""
        h = [0] * (self.e + 1)
        for b in self.blocks:
            g = expected_generic_hvector(len(b.variables), b.summands, self.e)
            h = [x + y for x, y in zip(h, g)]
        return (1,) + tuple(min(h[i], _dim(self.r, i)) for i in range(1, self.e + 1))

    def to_dict(self) -> dict:
        return {"r": self.r, "e": self.e,
                "blocks": [{"variables": list(b.variables), "summands": b.summands,
                            "text": b.describe()} for b in self.blocks]}


def _place(f: Form, variables: Sequence[int], r: int) -> Form:
    terms = {}
    for e, c in f.terms.items():
        full = [0] * r
        for v, k in zip(variables, e):
            full[v - 1] = k
        terms[tuple(full)] = c
    return Form(r, f.degree, terms)


def build_recipe(recipe: Recipe, seed: int = 0, retries: int = RETRY_BUDGET) -> InverseModule:
    """Draw the recipe's forms and keep the first draw whose module has the
    predicted h-vector and socle ``(0, ..., 0, #blocks)``."""
    want = recipe.predicted()
    want_soc = tuple([0] * recipe.e + [len(recipe.blocks)])
    rng = random.Random(seed)
    last = None
    for _ in range(retries + 1):
        forms = []
        for b in recipe.blocks:
            if len(b.variables) == 1 and b.summands == 1:
                exps = [0] * recipe.r
                exps[b.variables[0] - 1] = recipe.e
                forms.append(Form.monomial(exps))
                continue
            sub = generic_power_sum(len(b.variables), b.summands, recipe.e, seed=rng.getrandbits(64))
            forms.append(_place(sub, b.variables, recipe.r))
        try:
            m = InverseModule(forms)
        except ValueError:
            continue
        got = module_profile(m)
        if got == (want, want_soc):
            return m
        last = got
    raise GenericityError(f"recipe {recipe.to_dict()} never gave {want} (last draw {last})")


# ---------------------------------------------------------------------------
# reports


@dataclass
class BoundReport:
    index: str
    upper: int
    lower: int | None = None
    attainable_range: tuple[int, int] | None = None
    witness_recipe: dict | None = None
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"index": self.index, "upper": self.upper, "lower": self.lower,
                "attainable_range": list(self.attainable_range) if self.attainable_range else None,
                "witness_recipe": self.witness_recipe, "notes": self.notes}


def a_lower_bound_holds(r: int) -> bool:
    """``a >= r`` for every level (1, r, ..., a, 2): the inequality
    ``r - ceil((2r - 2 - a)/3) - a + 1 >= 0`` at ``a = r - 1``."""
    if r < 2:
        raise ValueError("r must be at least 2")
    a = r - 1
    return r - ceil((2 * r - 2 - a) / 3) - a + 1 >= 0


def a_range(r: int) -> BoundReport:
    if r < 2:
        raise ValueError("r must be at least 2")
    lower = r if a_lower_bound_holds(r) else None
    rep = BoundReport("a", 2 * r, lower, (r, 2 * r))
    rep.witness_recipe = {"split": "a = d1 + d2, 1 <= d1, d2 <= r",
                          "forms": "two sums of e-th powers of d1 and d2 generic linear forms"}
    if lower is None:
        rep.notes.append("no lower bound for a is known when r > 7")
    return rep


def b_upper(r: int, a: int, e: int) -> int:
    if a == r:
        return comb(r, 2) + 1
    return min(comb(r + 1, 2) + comb(a - r + 1, 2), comb(r + e - 3, e - 2))


def b_recipe(r: int, a: int, e: int, b: int) -> Recipe:
    """Two-block module whose h-vector ends (..., b, a, 2)."""
    lo, hi = (r if a == r else a), b_upper(r, a, e)
    if not lo <= b <= hi:
        raise ValueError(f"b={b} outside [{lo}, {hi}]")
    if a == r:
        return Recipe(r, e, (Block(tuple(range(1, r)), b - 1), Block((r,), 1)))
    k = a - r
    full = comb(r + 1, 2)
    if b - k <= full:
        return Recipe(r, e, (Block(tuple(range(1, k + 1)), k), Block(tuple(range(1, r + 1)), b - k)))
    return Recipe(r, e, (Block(tuple(range(1, k + 1)), b - full), Block(tuple(range(1, r + 1)), full)))


def b_bound(r: int, a: int, e: int) -> BoundReport:
    if r < 2 or not r <= a <= 2 * r or e < 3:
        raise ValueError(f"need 2 <= r <= a <= 2r and e >= 3, got r={r}, a={a}, e={e}")
    hi = b_upper(r, a, e)
    lo = r if a == r else a
    rep = BoundReport("b", hi, None, (lo, hi) if lo <= hi else None)
    if lo <= hi:
        rep.witness_recipe = {"lowest": b_recipe(r, a, e, lo).to_dict(),
                              "highest": b_recipe(r, a, e, hi).to_dict()}
    else:
        rep.notes.append("no witness recipe: the constructive range is empty")
    rep.notes.append("values b < a are not covered by a construction here")
    return rep


def entry_upper(r: int, a: int, e: int, i: int) -> int:
    """Largest possible ``h_{e-i}`` of a level (1, r, ..., a, 2), 2 <= i <= e-2."""
    if not 2 <= i <= e - 2:
        raise ValueError(f"i must lie in [2, e-2], got i={i}, e={e}")
    if r < 2 or not r <= a <= 2 * r:
        raise ValueError(f"need 2 <= r <= a <= 2r, got r={r}, a={a}")
    if a == r:
        if r > 5:
            raise HypothesisError(f"entry bound for a = r is only established for r <= 5 (r={r})")
        return min(comb(r - 2 + i, i) + 1, comb(r - 2 + e - i, e - i) + 1)
    return min(comb(r - 1 + i, i) + comb(a - r - 1 + i, i), comb(r - 1 + e - i, e - i))


def max_recipe(r: int, a: int, e: int) -> Recipe:
    half = e // 2
    if a == r:
        alpha = comb(r - 2 + half, half)
        return Recipe(r, e, (Block(tuple(range(1, r)), alpha), Block((r,), 1)))
    beta = comb(a - r - 1 + half, half)
    gamma = comb(r - 1 + half, half)
    return Recipe(r, e, (Block(tuple(range(1, a - r + 1)), beta), Block(tuple(range(1, r + 1)), gamma)))


def max_hvector(r: int, a: int, e: int) -> tuple[tuple[int, ...], Recipe]:
    """Entrywise-maximal level (1, r, ..., a, 2) (quasi-compressed for fixed a)."""
    if e < 4:
        raise ValueError("max_hvector needs e >= 4")
    h = [1, r] + [0] * (e - 3) + [a, 2]
    for i in range(2, e - 1):
        h[e - i] = entry_upper(r, a, e, i)
    return tuple(h), max_recipe(r, a, e)


def realize_max(r: int, a: int, e: int, seed: int = 0) -> InverseModule:
    h, recipe = max_hvector(r, a, e)
    if recipe.predicted() != h:
        raise RuntimeError(f"recipe predicts {recipe.predicted()}, bound is {h}")
    return build_recipe(recipe, seed)
