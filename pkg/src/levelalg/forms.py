"""Homogeneous polynomials with exact rational coefficients.

A :class:`Form` is a sparse map from exponent tuples to non-zero
``Fraction`` coefficients. The same type serves both sides of apolarity:
forms in the dual variables ``y1..yr`` (inverse systems) and forms in
``x1..xr`` (ideal elements); ``var`` only affects printing.

Text grammar (one form per line in files)::

    3/2*y1^2*y2 - y3^3      # '#' starts a comment
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Iterable, Mapping, Sequence

from .macaulay import monomial_exponents

Exponent = tuple[int, ...]
Number = int | Fraction


class FormParseError(ValueError):
    """Raised for text that does not follow the form grammar."""


@dataclass(frozen=True)
class Form:
    nvars: int
    degree: int
    terms: Mapping[Exponent, Fraction] = field(default_factory=dict)
    var: str = "y"

    def __post_init__(self):
        clean = {}
        for e, c in self.terms.items():
            if len(e) != self.nvars:
                raise ValueError(f"exponent {e} has wrong length for {self.nvars} variables")
            if sum(e) != self.degree:
                raise ValueError(f"exponent {e} does not have degree {self.degree}")
            c = Fraction(c)
            if c:
                clean[tuple(e)] = c
        object.__setattr__(self, "terms", clean)

    # construction -----------------------------------------------------

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff: Number = 1, var: str = "y") -> "Form":
        return cls(len(exps), sum(exps), {tuple(exps): Fraction(coeff)}, var)

    @classmethod
    def power_of_linear(cls, coeffs: Sequence[Number], d: int, var: str = "y") -> "Form":
        """``(c_1 y_1 + ... + c_r y_r)^d`` expanded by the multinomial theorem."""
        r = len(coeffs)
        cs = [Fraction(c) for c in coeffs]
        terms = {}
        fd = factorial(d)
        for e in monomial_exponents(r, d):
            coef = Fraction(fd)
            for c, k in zip(cs, e):
                if k:
                    coef *= c**k / factorial(k)
            if coef:
                terms[e] = coef
        return cls(r, d, terms, var)

    @classmethod
    def from_vector(cls, nvars: int, degree: int, vec: Sequence[Number], var: str = "y") -> "Form":
        mons = monomial_exponents(nvars, degree)
        return cls(nvars, degree, {e: Fraction(c) for e, c in zip(mons, vec) if c}, var)

    # arithmetic ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: "Form"):
        if self.nvars != other.nvars:
            raise ValueError("forms live in different polynomial rings")
        if self.degree != other.degree and not (self.is_zero or other.is_zero):
            raise ValueError("cannot add forms of different degrees")

    def __add__(self, other: "Form") -> "Form":
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        deg = self.degree if not self.is_zero else other.degree
        return Form(self.nvars, deg, terms, self.var)

    def __neg__(self) -> "Form":
        return Form(self.nvars, self.degree, {e: -c for e, c in self.terms.items()}, self.var)

    def __sub__(self, other: "Form") -> "Form":
        return self + (-other)

    def scale(self, c: Number) -> "Form":
        return Form(self.nvars, self.degree, {e: c * v for e, v in self.terms.items()}, self.var)

    def __mul__(self, other: "Form") -> "Form":
        if self.nvars != other.nvars:
            raise ValueError("forms live in different polynomial rings")
        terms: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return Form(self.nvars, self.degree + other.degree, terms, self.var)

    def embed(self, nvars: int) -> "Form":
        """The same form viewed in a ring with more variables appended."""
        if nvars < self.nvars:
            raise ValueError("cannot drop variables")
        pad = (0,) * (nvars - self.nvars)
        return Form(nvars, self.degree, {e + pad: c for e, c in self.terms.items()}, self.var)

    def differentiate(self, var_index: int) -> "Form":
        """Partial derivative with respect to variable ``var_index`` (1-based)."""
        if not 1 <= var_index <= self.nvars:
            raise ValueError(f"variable index {var_index} out of range 1..{self.nvars}")
        k = var_index - 1
        terms = {}
        for e, c in self.terms.items():
            if e[k]:
                f = list(e)
                f[k] -= 1
                terms[tuple(f)] = c * e[k]
        return Form(self.nvars, self.degree - 1, terms, self.var)

    def to_vector(self) -> list[Fraction]:
        return [self.terms.get(e, Fraction(0)) for e in monomial_exponents(self.nvars, self.degree)]

    # text -----------------------------------------------------------------

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            sign = "-" if c < 0 else "+"
            c = abs(c)
            factors = [f"{self.var}{i + 1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k]
            if c != 1 or not factors:
                factors.insert(0, str(c))
            parts.append((sign, "*".join(factors)))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


_FACTOR = re.compile(r"^(?:(?P<num>\d+)(?:/(?P<den>\d+))?|(?P<var>[xy])(?P<idx>\d+)(?:\^(?P<exp>\d+))?)$")


def parse_form(text: str, nvars: int | None = None) -> Form:
    """Parse one homogeneous form. ``nvars`` defaults to the largest index used."""
    src = re.sub(r"\s+", "", text)
    if not src:
        raise FormParseError("empty form")
    if src[0] not in "+-":
        src = "+" + src
    chunks = re.findall(r"([+-])([^+-]*)", src)
    if "".join(s + b for s, b in chunks) != src:
        raise FormParseError(f"cannot split {text!r} into terms")
    raw = []
    var_side = None
    max_idx = 0
    for sign, body in chunks:
        if not body:
            raise FormParseError(f"dangling sign in {text!r}")
        coeff = Fraction(-1 if sign == "-" else 1)
        powers: dict[int, int] = {}
        for factor in body.split("*"):
            m = _FACTOR.match(factor)
            if m is None:
                raise FormParseError(f"bad factor {factor!r} in {text!r}")
            if m.group("num") is not None:
                den = int(m.group("den") or 1)
                if den == 0:
                    raise FormParseError(f"zero denominator in {factor!r}")
                coeff *= Fraction(int(m.group("num")), den)
                continue
            side = m.group("var")
            if var_side is None:
                var_side = side
            elif side != var_side:
                raise FormParseError(f"mixed x and y variables in {text!r}")
            idx = int(m.group("idx"))
            if idx < 1:
                raise FormParseError(f"variable index must be >= 1 in {factor!r}")
            max_idx = max(max_idx, idx)
            powers[idx] = powers.get(idx, 0) + int(m.group("exp") or 1)
        raw.append((coeff, powers))
    if nvars is None:
        nvars = max(max_idx, 1)
    elif max_idx > nvars:
        raise FormParseError(f"variable index {max_idx} exceeds {nvars} variables")
    terms: dict[Exponent, Fraction] = {}
    degrees = set()
    for coeff, powers in raw:
        e = [0] * nvars
        for idx, k in powers.items():
            e[idx - 1] = k
        degrees.add(sum(e))
        terms[tuple(e)] = terms.get(tuple(e), 0) + coeff
    if len(degrees) != 1:
        raise FormParseError(f"form {text!r} is not homogeneous (degrees {sorted(degrees)})")
    return Form(nvars, degrees.pop(), terms, var_side or "y")


def parse_forms(text: str, nvars: int | None = None) -> list[Form]:
    """Parse a generator file: one form per line, ``#`` comments, blank lines ignored.

    Without ``nvars`` all forms share the largest variable index seen.
    """
    lines = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise FormParseError("no forms found")
    forms = [parse_form(line, nvars) for line in lines]
    if nvars is None:
        n = max(f.nvars for f in forms)
        forms = [f.embed(n) for f in forms]
    sides = {f.var for f in forms}
    if len(sides) > 1:
        raise FormParseError("file mixes x and y variables")
    return forms


def format_forms(forms: Iterable[Form], header: str | None = None) -> str:
    lines = [f"# {line}" for line in header.splitlines()] if header else []
    lines.extend(str(f) for f in forms)
    return "\n".join(lines) + "\n"
