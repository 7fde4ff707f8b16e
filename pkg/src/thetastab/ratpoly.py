"""Exact rational Laurent polynomials in one variable n.

A polynomial is stored as a map from integer exponents (negative exponents
allowed, for Laurent terms) to nonzero Fractions.  The zero polynomial is
the empty map; its degree is the sentinel -inf, which compares below every
integer.

Two total orders live here:

* eventual dominance on polynomials: p > q iff p(n) > q(n) for all large n,
  decided exactly by the sign of the highest nonzero coefficient of p - q.
  RatPoly's rich comparisons use this order.
* the order on values L / sqrt(b) (NuValue): decided coefficientwise from
  the highest exponent down, using sign analysis plus the squared
  comparison c_x^2 * b_y vs c_y^2 * b_x.  No radicals or floats are ever
  formed.

Hilbert-polynomial statistics use the factorial normalization
P(n) = sum_k a_k n^k / k!, so the rank is a_d = d! * (coefficient of n^d)
and the i-th slope is a_i / a_d.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from math import factorial
from typing import Iterable, Mapping, Union

from .errors import DegreeMismatch, NonpositiveRank

RationalLike = Union[int, str, Fraction]

#: Degree of the zero polynomial; compares below every integer.
NEG_INFINITY = float("-inf")

LESS, EQUAL, GREATER = -1, 0, 1


def as_fraction(value: RationalLike) -> Fraction:
    """Coerce ints, 'p/q' strings and Fractions to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as a rational number")


def _sign(x: Fraction) -> int:
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


@total_ordering
class RatPoly:
    """Immutable sparse Laurent polynomial with Fraction coefficients.

    Rich comparisons implement the eventual-dominance total order.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[int, RationalLike] | None = None):
        clean: dict[int, Fraction] = {}
        if coeffs:
            for exp, val in coeffs.items():
                frac = as_fraction(val)
                if frac != 0:
                    clean[int(exp)] = frac
        object.__setattr__(self, "_coeffs", clean)

    def __setattr__(self, name, value):  # pragma: no cover - guard
        raise AttributeError("RatPoly is immutable")

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls) -> RatPoly:
        return cls()

    @classmethod
    def const(cls, value: RationalLike) -> RatPoly:
        return cls({0: value})

    @classmethod
    def variable(cls, exponent: int = 1, coeff: RationalLike = 1) -> RatPoly:
        return cls({exponent: coeff})

    # -- inspectors -------------------------------------------------------

    def items(self) -> tuple[tuple[int, Fraction], ...]:
        """Terms as (exponent, coefficient), highest exponent first."""
        return tuple(sorted(self._coeffs.items(), reverse=True))

    def coeff(self, exponent: int) -> Fraction:
        return self._coeffs.get(exponent, Fraction(0))

    def degree(self) -> int | float:
        """Highest exponent, or -inf for the zero polynomial."""
        return max(self._coeffs) if self._coeffs else NEG_INFINITY

    def min_exponent(self) -> int | float:
        return min(self._coeffs) if self._coeffs else NEG_INFINITY

    def leading_coeff(self) -> Fraction:
        return self._coeffs[max(self._coeffs)] if self._coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self._coeffs

    def has_negative_exponents(self) -> bool:
        return any(e < 0 for e in self._coeffs)

    def __call__(self, n: RationalLike) -> Fraction:
        point = as_fraction(n)
        return sum((c * point**e for e, c in self._coeffs.items()), Fraction(0))

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: RatPoly) -> RatPoly:
        merged = dict(self._coeffs)
        for exp, val in other._coeffs.items():
            merged[exp] = merged.get(exp, Fraction(0)) + val
        return RatPoly(merged)

    def __sub__(self, other: RatPoly) -> RatPoly:
        merged = dict(self._coeffs)
        for exp, val in other._coeffs.items():
            merged[exp] = merged.get(exp, Fraction(0)) - val
        return RatPoly(merged)

    def __neg__(self) -> RatPoly:
        return RatPoly({e: -c for e, c in self._coeffs.items()})

    def __mul__(self, other: RatPoly | RationalLike) -> RatPoly:
        if isinstance(other, RatPoly):
            product: dict[int, Fraction] = {}
            for e1, c1 in self._coeffs.items():
                for e2, c2 in other._coeffs.items():
                    exp = e1 + e2
                    product[exp] = product.get(exp, Fraction(0)) + c1 * c2
            return RatPoly(product)
        scalar = as_fraction(other)
        return RatPoly({e: c * scalar for e, c in self._coeffs.items()})

    __rmul__ = __mul__

    # -- ordering and identity ---------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatPoly):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __lt__(self, other: RatPoly) -> bool:
        return eventual_compare(self, other) == LESS

    def __hash__(self) -> int:
        return hash(self.items())

    def __repr__(self) -> str:
        return f"RatPoly({dict(self.items())!r})"

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for exp, c in self.items():
            if exp == 0:
                term = str(c)
            else:
                mag = "" if abs(c) == 1 else f"{abs(c)}*"
                var = "n" if exp == 1 else f"n^{exp}"
                term = f"{'-' if c < 0 else ''}{mag}{var}"
            if parts:
                parts.append(f"- {term[1:]}" if term.startswith("-") else f"+ {term}")
            else:
                parts.append(term)
        return " ".join(parts)


def eventual_compare(p: RatPoly, q: RatPoly) -> int:
    """Compare p and q in the eventual-dominance order.

    Returns GREATER iff the highest nonzero coefficient of p - q is
    positive, EQUAL iff p = q, LESS otherwise.  Works for Laurent
    polynomials as well: what matters is the sign at the top exponent.
    """
    diff = p - q
    if diff.is_zero():
        return EQUAL
    return GREATER if diff.leading_coeff() > 0 else LESS


@dataclass(frozen=True)
class HilbertStats:
    """Derived data of a Hilbert polynomial of an object of dimension d.

    With P(n) = sum_k a_k n^k / k!: rank = a_d, reduced = P / rank, and
    slopes[i] = a_i / a_d for 0 <= i <= d-1.
    """

    dim: int
    poly: RatPoly
    rank: Fraction
    reduced: RatPoly
    slopes: tuple[Fraction, ...]

    def a_coefficient(self, i: int) -> Fraction:
        """The factorial-normalized coefficient a_i = i! * [n^i] P."""
        return self.poly.coeff(i) * factorial(i)

    @property
    def mumford_slope(self) -> Fraction:
        return self.slopes[-1]


def hilbert_stats(poly: RatPoly, d: int) -> HilbertStats:
    """Rank, reduced polynomial and slopes of a degree-d Hilbert polynomial."""
    if d < 0:
        raise DegreeMismatch(f"dimension must be nonnegative, got {d}")
    if poly.has_negative_exponents():
        raise DegreeMismatch("Laurent terms are not allowed in Hilbert polynomials")
    if poly.degree() != d:
        raise DegreeMismatch(f"expected degree {d}, got degree {poly.degree()}")
    rank = poly.coeff(d) * factorial(d)
    if rank <= 0:
        raise NonpositiveRank(f"leading Hilbert coefficient a_{d} = {rank} is not positive")
    reduced = poly * (Fraction(1) / rank)
    slopes = tuple(poly.coeff(i) * factorial(i) / rank for i in range(d))
    return HilbertStats(dim=d, poly=poly, rank=rank, reduced=reduced, slopes=slopes)


def hilbert_line_bundle_projective(d: int, k: int) -> RatPoly:
    """Hilbert polynomial of the twist O(k) on d-dimensional projective space.

    This is binomial(n+k+d, d) expanded as a polynomial in n; for d = 1 it
    is n + k + 1.
    """
    if d < 1:
        raise ValueError(f"projective dimension must be >= 1, got {d}")
    result = RatPoly.const(1)
    for j in range(1, d + 1):
        result = result * RatPoly({1: 1, 0: k + j})
    return result * Fraction(1, factorial(d))


@dataclass(frozen=True)
class NuValue:
    """Exact representation of the value L / sqrt(b) with b > 0.

    Dataclass equality is structural (same L, same b); use nu_compare for
    the represented-value order, under which e.g. (0, 7) and (0, 3) agree.
    """

    L: RatPoly
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "b", as_fraction(self.b))
        if self.b <= 0:
            raise ValueError(f"norm must be positive, got {self.b}")

    @classmethod
    def zero(cls) -> NuValue:
        return cls(RatPoly.zero(), Fraction(1))

    def sign(self) -> int:
        """Sign of the represented value in the eventual order."""
        return nu_compare(self, NuValue.zero())

    def approx(self, n: RationalLike) -> float:
        """Float value L(n) / sqrt(b); for display and sanity checks only."""
        return float(self.L(n)) / float(self.b) ** 0.5


def nu_compare(x: NuValue, y: NuValue) -> int:
    """Compare L_x / sqrt(b_x) and L_y / sqrt(b_y) exactly.

    Coefficients are compared from the highest exponent down; each pair is
    decided by signs and, when the signs agree, by comparing
    c_x^2 * b_y with c_y^2 * b_x.  This realizes the eventual-dominance
    order on the represented real-coefficient polynomials.
    """
    exponents = sorted({e for e, _ in x.L.items()} | {e for e, _ in y.L.items()}, reverse=True)
    for exp in exponents:
        cx, cy = x.L.coeff(exp), y.L.coeff(exp)
        sx, sy = _sign(cx), _sign(cy)
        if sx != sy:
            return GREATER if sx > sy else LESS
        if sx == 0:
            continue
        lhs, rhs = cx * cx * y.b, cy * cy * x.b
        if lhs != rhs:
            return sx if lhs > rhs else -sx
    return EQUAL


def nu_max(values: Iterable[NuValue]) -> NuValue:
    """Largest value under nu_compare; first occurrence wins ties."""
    best: NuValue | None = None
    for val in values:
        if best is None or nu_compare(val, best) == GREATER:
            best = val
    if best is None:
        raise ValueError("nu_max of empty iterable")
    return best
