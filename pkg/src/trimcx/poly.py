"""Monomials and homogeneous polynomials in k[x, y, z].

Monomials are exponent triples ``(a, b, c)`` for ``x^a y^b z^c``. A degree
strand ``S_d`` has the fixed basis returned by :func:`strand_basis`, ordered
graded-lex (``x^d`` first). Every dense vector in this package is written in
that basis.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import comb

import numpy as np

from .field import DEFAULT_FIELD

VARIABLES = ("x", "y", "z")
Monomial = tuple  # (a, b, c)

UNIT_VECTORS = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


@lru_cache(maxsize=None)
def strand_basis(d: int) -> tuple:
    """Monomials of degree ``d`` in graded-lex order; length binom(d+2, 2)."""
    if d < 0:
        return ()
    return tuple((a, b, d - a - b) for a in range(d, -1, -1) for b in range(d - a, -1, -1))


@lru_cache(maxsize=None)
def strand_index(d: int) -> dict:
    return {m: i for i, m in enumerate(strand_basis(d))}


def strand_dim(d: int) -> int:
    return comb(d + 2, 2) if d >= 0 else 0


@lru_cache(maxsize=None)
def shift_indices(d: int, var: int) -> np.ndarray:
    """Index map S_d -> S_{d+1} for multiplication by one variable."""
    target = strand_index(d + 1)
    e = UNIT_VECTORS[var]
    return np.array(
        [target[(m[0] + e[0], m[1] + e[1], m[2] + e[2])] for m in strand_basis(d)],
        dtype=np.intp,
    )


def monomial_mul(m1, m2):
    return (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])


def monomial_divides(m1, m2) -> bool:
    return m1[0] <= m2[0] and m1[1] <= m2[1] and m1[2] <= m2[2]


def format_monomial(m) -> str:
    parts = []
    for v, e in zip(VARIABLES, m):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "*".join(parts)


class HomogPoly:
    """A homogeneous polynomial with an explicit degree.

    ``terms`` maps monomials to nonzero field elements; the zero polynomial
    keeps its degree annotation so that strand bookkeeping stays exact.
    """

    __slots__ = ("degree", "terms", "field")

    def __init__(self, degree: int, terms=None, field=DEFAULT_FIELD):
        if degree < 0:
            raise ValueError("negative degree")
        self.degree = degree
        self.field = field
        clean = {}
        for m, c in (terms or {}).items():
            m = tuple(m)
            if sum(m) != degree or min(m) < 0:
                raise ValueError(f"monomial {m} does not have degree {degree}")
            c = field(c)
            if c != 0:
                clean[m] = c
        self.terms = clean

    @classmethod
    def _raw(cls, degree, terms, field):
        obj = cls.__new__(cls)
        obj.degree = degree
        obj.terms = terms
        obj.field = field
        return obj

    @classmethod
    def zero(cls, degree: int, field=DEFAULT_FIELD) -> "HomogPoly":
        return cls._raw(degree, {}, field)

    @classmethod
    def monomial(cls, m, coeff=1, field=DEFAULT_FIELD) -> "HomogPoly":
        return cls(sum(m), {tuple(m): coeff}, field)

    @classmethod
    def constant(cls, c, field=DEFAULT_FIELD) -> "HomogPoly":
        return cls(0, {(0, 0, 0): c}, field)

    @classmethod
    def variable(cls, name: str, field=DEFAULT_FIELD) -> "HomogPoly":
        return cls.monomial(UNIT_VECTORS[VARIABLES.index(name)], 1, field)

    @classmethod
    def from_vector(cls, vec, degree: int, field=DEFAULT_FIELD) -> "HomogPoly":
        basis = strand_basis(degree)
        terms = {basis[i]: field(vec[i]) for i in np.flatnonzero(np.asarray(vec) != 0)}
        return cls._raw(degree, terms, field)

    def to_vector(self) -> np.ndarray:
        vec = self.field.zeros(strand_dim(self.degree))
        idx = strand_index(self.degree)
        for m, c in self.terms.items():
            vec[idx[m]] = c
        return vec

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def constant_term(self):
        """Coefficient of 1 (nonzero only for degree 0)."""
        return self.terms.get((0, 0, 0), self.field(0))

    def _check(self, other: "HomogPoly"):
        if self.field != other.field:
            raise ValueError("polynomials over different fields")

    def __add__(self, other: "HomogPoly") -> "HomogPoly":
        self._check(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        if self.degree != other.degree:
            raise ValueError(f"cannot add degree {self.degree} and {other.degree}")
        F = self.field
        terms = dict(self.terms)
        for m, c in other.terms.items():
            v = F(terms.get(m, 0) + c)
            if v:
                terms[m] = v
            else:
                terms.pop(m, None)
        return HomogPoly._raw(self.degree, terms, F)

    def __neg__(self) -> "HomogPoly":
        F = self.field
        return HomogPoly._raw(self.degree, {m: F.neg(c) for m, c in self.terms.items()}, F)

    def __sub__(self, other: "HomogPoly") -> "HomogPoly":
        return self + (-other)

    def scale(self, c) -> "HomogPoly":
        F = self.field
        c = F(c)
        if c == 0:
            return HomogPoly._raw(self.degree, {}, F)
        return HomogPoly._raw(self.degree, {m: F(v * c) for m, v in self.terms.items()}, F)

    def __mul__(self, other) -> "HomogPoly":
        if not isinstance(other, HomogPoly):
            return self.scale(other)
        self._check(other)
        F = self.field
        deg = self.degree + other.degree
        terms = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])
                terms[m] = terms.get(m, 0) + c1 * c2
        clean = {}
        for m, c in terms.items():
            c = F(c)
            if c:
                clean[m] = c
        return HomogPoly._raw(deg, clean, F)

    __rmul__ = scale

    def __pow__(self, n: int) -> "HomogPoly":
        result = HomogPoly.constant(1, self.field)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, HomogPoly):
            if other == 0:
                return not self.terms
            return NotImplemented
        if not self.terms and not other.terms:
            return True
        return self.degree == other.degree and self.terms == other.terms

    def __hash__(self):
        return hash((self.degree, frozenset(self.terms.items())))

    def __str__(self):
        if not self.terms:
            return "0"
        F = self.field
        order = strand_index(self.degree)
        out = []
        for m in sorted(self.terms, key=order.__getitem__):
            c = F.lift(self.terms[m])
            mono = format_monomial(m)
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            out.append((sign, body))
        first_sign, first = out[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in out[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"HomogPoly({str(self)!r}, degree={self.degree})"


class ParseError(ValueError):
    pass


_TERM_SPLIT = re.compile(r"(?=[+-])")
_FACTOR = re.compile(r"^(?:(\d+(?:/\d+)?)|([xyz])(?:\^(\d+))?)$")


def parse_poly(text: str, field=DEFAULT_FIELD, degree: int | None = None) -> HomogPoly:
    """Parse ``3*x^2*y - z^3``-style text into a :class:`HomogPoly`.

    Inhomogeneous input raises :class:`ParseError`. ``degree`` fixes the
    degree of a zero polynomial (and is checked against nonzero input).
    """
    s = text.replace(" ", "").replace("\t", "")
    if not s:
        raise ParseError("empty polynomial")
    terms = {}
    for chunk in _TERM_SPLIT.split(s):
        if not chunk:
            continue
        sign = 1
        while chunk and chunk[0] in "+-":
            if chunk[0] == "-":
                sign = -sign
            chunk = chunk[1:]
        if not chunk:
            raise ParseError(f"dangling sign in {text!r}")
        coeff = Fraction(sign)
        exps = [0, 0, 0]
        for factor in chunk.split("*"):
            match = _FACTOR.match(factor)
            if match is None:
                raise ParseError(f"cannot parse factor {factor!r} in {text!r}")
            number, var, exp = match.groups()
            if number is not None:
                coeff *= Fraction(number)
            else:
                exps[VARIABLES.index(var)] += int(exp) if exp else 1
        m = tuple(exps)
        terms[m] = terms.get(m, 0) + coeff
    degrees = {sum(m) for m, c in terms.items() if field(c) != 0}
    if len(degrees) > 1:
        raise ParseError(f"inhomogeneous polynomial {text!r} (degrees {sorted(degrees)})")
    if degrees:
        deg = degrees.pop()
        if degree is not None and degree != deg:
            raise ParseError(f"expected degree {degree}, got {deg}")
    else:
        deg = degree if degree is not None else max(sum(m) for m in terms)
    return HomogPoly(deg, {m: c for m, c in terms.items() if sum(m) == deg}, field)


def variables(field=DEFAULT_FIELD):
    """The three variables x, y, z as polynomials."""
    return tuple(HomogPoly.variable(v, field) for v in VARIABLES)
