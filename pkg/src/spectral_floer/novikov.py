"""Novikov polynomials over a lattice of sphere classes.

An exponent is a tuple of ``rank`` integers.  Both directions store the
exponent ``A`` of a term; an upward element reads the term as ``q^{-A}`` and a
downward one as ``q^{A}``, so multiplication adds stored exponents either way.
In both directions the leading term is the one with the largest ``omega(A)``.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Optional, Tuple

from .errors import (
    AmbiguousLeadingTerm,
    DirectionMismatch,
    EmptyElement,
    GroupMismatch,
    InputError,
)

Exponent = Tuple[int, ...]

INF = math.inf


def as_fraction(value) -> Fraction:
    if isinstance(value, float):
        raise InputError(f"floating point value {value!r} is not accepted; use an exact rational")
    return Fraction(value)


def box_exponents(rank: int, radius: int) -> Iterator[Exponent]:
    """All exponents with every entry in ``[-radius, radius]``."""
    rng = range(-radius, radius + 1)
    return itertools.product(rng, repeat=rank)


class Direction(enum.Enum):
    UP = "up"
    DOWN = "down"


@dataclass(frozen=True)
class GammaGroup:
    omega: Tuple[Fraction, ...]
    c1: Tuple[int, ...]

    def __init__(self, omega: Iterable, c1: Iterable):
        om = tuple(as_fraction(w) for w in omega)
        ch = tuple(int(c) for c in c1)
        if len(om) != len(ch):
            raise InputError("omega and c1 must have the same length")
        object.__setattr__(self, "omega", om)
        object.__setattr__(self, "c1", ch)
        object.__setattr__(self, "_areas", {})

    @property
    def rank(self) -> int:
        return len(self.omega)

    @property
    def zero(self) -> Exponent:
        return (0,) * self.rank

    def area(self, exp: Exponent) -> Fraction:
        exp = tuple(exp)
        a = self._areas.get(exp)
        if a is None:
            a = self._areas[exp] = sum((w * k for w, k in zip(self.omega, exp)), Fraction(0))
        return a

    def chern(self, exp: Exponent) -> int:
        return sum(c * a for c, a in zip(self.c1, exp))

    def check_exponent(self, exp) -> Exponent:
        exp = tuple(int(a) for a in exp)
        if len(exp) != self.rank:
            raise InputError(f"exponent {exp} has length {len(exp)}, group rank is {self.rank}")
        return exp

    def injectivity(self, box: Optional[int] = None) -> str:
        """Whether ``A -> (omega(A), c1(A))`` is injective.

        Returns ``"injective"``, ``"not injective"``, ``"injective on box"`` or
        ``"unverified"``.
        """
        r = self.rank
        if r == 0:
            return "injective"
        if r == 1:
            return "injective" if (self.omega[0], self.c1[0]) != (0, 0) else "not injective"
        if r == 2:
            det = self.omega[0] * self.c1[1] - self.omega[1] * self.c1[0]
            return "injective" if det != 0 else "not injective"
        if box is None:
            return "unverified"
        seen = {}
        for exp in box_exponents(r, box):
            key = (self.area(exp), self.chern(exp))
            if key in seen:
                return "not injective"
            seen[key] = exp
        return "injective on box"

    def lattice_offset(self, value: Fraction, box: Optional[int] = None) -> Optional[Exponent]:
        """An exponent ``A`` with ``omega(A) == value``, or None.

        Rank one is solved exactly; higher rank searches the box.
        """
        value = Fraction(value)
        if self.rank == 0:
            return () if value == 0 else None
        if self.rank == 1:
            w = self.omega[0]
            if w == 0:
                return (0,) if value == 0 else None
            k = value / w
            return (int(k),) if k.denominator == 1 else None
        radius = 3 if box is None else box
        best = None
        for exp in box_exponents(self.rank, radius):
            if self.area(exp) == value:
                if best is None or sum(map(abs, exp)) < sum(map(abs, best)):
                    best = exp
        return best

    def __str__(self):
        om = ", ".join(str(w) for w in self.omega)
        ch = ", ".join(str(c) for c in self.c1)
        return f"Gamma(rank={self.rank}, omega=[{om}], c1=[{ch}])"


class NovikovElement:
    """Finite-support element of the upward or downward Novikov ring."""

    __slots__ = ("group", "direction", "_terms", "_hash")

    def __init__(self, group: GammaGroup, direction: Direction, terms: Mapping = ()):
        self.group = group
        self.direction = direction
        clean: Dict[Exponent, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for exp, coeff in items:
            exp = group.check_exponent(exp)
            c = as_fraction(coeff)
            if c:
                clean[exp] = clean.get(exp, Fraction(0)) + c
                if not clean[exp]:
                    del clean[exp]
        self._terms = clean
        self._hash = None

    @classmethod
    def monomial(cls, group, direction, exp=None, coeff=1):
        exp = group.zero if exp is None else exp
        return cls(group, direction, {tuple(exp): coeff})

    @classmethod
    def one(cls, group, direction=Direction.DOWN):
        return cls.monomial(group, direction)

    @property
    def terms(self) -> Dict[Exponent, Fraction]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def coefficient(self, exp) -> Fraction:
        return self._terms.get(tuple(exp), Fraction(0))

    def _compatible(self, other: "NovikovElement"):
        if not isinstance(other, NovikovElement):
            raise TypeError(f"expected NovikovElement, got {type(other).__name__}")
        if self.group != other.group:
            raise GroupMismatch("elements live over different groups")
        if self.direction != other.direction:
            raise DirectionMismatch(
                f"cannot combine {self.direction.value}ward and {other.direction.value}ward elements")

    def _new(self, terms):
        return NovikovElement(self.group, self.direction, terms)

    def __add__(self, other):
        self._compatible(other)
        out = dict(self._terms)
        for exp, c in other._terms.items():
            out[exp] = out.get(exp, Fraction(0)) + c
        return self._new(out)

    def __neg__(self):
        return self._new({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "NovikovElement":
        c = as_fraction(c)
        return self._new({e: c * v for e, v in self._terms.items()})

    def shift(self, exp: Exponent) -> "NovikovElement":
        """Multiply by the monomial with stored exponent ``exp``."""
        return self._new({tuple(a + b for a, b in zip(e, exp)): c for e, c in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, NovikovElement):
            return self.scale(other)
        self._compatible(other)
        out: Dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return self._new(out)

    __rmul__ = scale

    def __eq__(self, other):
        if not isinstance(other, NovikovElement):
            return NotImplemented
        return (self.group == other.group and self.direction == other.direction
                and self._terms == other._terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.group, self.direction, frozenset(self._terms.items())))
        return self._hash

    def valuation(self):
        return valuation(self)

    def __repr__(self):
        if not self._terms:
            return "0"
        sign = "-" if self.direction is Direction.UP else ""
        parts = []
        for exp, c in self.items():
            if all(a == 0 for a in exp):
                parts.append(str(c))
            else:
                parts.append(f"{c}*q^{sign}{list(exp)}")
        return " + ".join(parts)


def nov_add(x: NovikovElement, y: NovikovElement) -> NovikovElement:
    return x + y


def nov_mul(x: NovikovElement, y: NovikovElement) -> NovikovElement:
    return x * y


def valuation(x: NovikovElement):
    """Upward: min of omega(-A).  Downward: max of omega(B).  Zero gives the infinite sentinel."""
    if not x:
        return INF if x.direction is Direction.UP else -INF
    top = max(x.group.area(e) for e in x._terms)
    return -top if x.direction is Direction.UP else top


def leading_term(x: NovikovElement) -> Tuple[NovikovElement, Exponent]:
    if not x:
        raise EmptyElement("the zero element has no leading term")
    area = x.group.area
    top = max(area(e) for e in x._terms)
    hits = [e for e in x._terms if area(e) == top]
    if len(hits) > 1:
        raise AmbiguousLeadingTerm(
            f"exponents {sorted(hits)} share the extreme area value {top}")
    exp = hits[0]
    return x._new({exp: x._terms[exp]}), exp


def nov_invert_truncated(x: NovikovElement, window) -> NovikovElement:
    """Geometric-series inverse, exact up to terms past ``window``.

    The product ``x * y`` equals ``1 + r`` where every term of ``r`` has
    area below ``-window`` (valuation past ``window`` upward, below
    ``-window`` downward).
    """
    window = as_fraction(window)
    lead, lexp = leading_term(x)
    c = lead.coefficient(lexp)
    g = x.group
    neg_l = tuple(-a for a in lexp)
    # x = c q^L (1 + u), every exponent of u has negative area
    u = x.shift(neg_l).scale(1 / c) - NovikovElement.one(g, x.direction)
    cutoff = -window
    if not u:
        return NovikovElement.monomial(g, x.direction, neg_l, 1 / c)
    gap = min(-g.area(e) for e in u._terms)
    kmax = math.floor(window / gap) if window >= 0 else 0
    total = NovikovElement.one(g, x.direction)
    power = NovikovElement.one(g, x.direction)
    minus_u = -u
    for _ in range(kmax):
        power = power * minus_u
        power = power._new({e: v for e, v in power._terms.items() if g.area(e) >= cutoff})
        if not power:
            break
        total = total + power
    total = total._new({e: v for e, v in total._terms.items() if g.area(e) >= cutoff})
    return total.shift(neg_l).scale(1 / c)
