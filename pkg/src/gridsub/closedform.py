"""Exact polynomial closed forms for the two-row counts.

For fixed bottom row size n the counts have the shape

    B(m, n) = 2**(m-2) * P_n(m) / (n-1)!
    A(m, n) = 2**(m-2) * Q_n(m) / (n-1)!

with monic P_n, Q_n of degree n-1. P_n is built from the telescoped
recursion using power-sum polynomials; Q_n is fitted by exact interpolation
and then checked on extra points.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Sequence

from .tworow import all_exact, bimonotone_exact


class VerificationFailure(AssertionError):
    """A fitted polynomial failed an over-determined check."""


@dataclass(frozen=True)
class RationalPoly:
    """Dense polynomial with ``Fraction`` coefficients, lowest degree first."""

    coeffs: tuple[Fraction, ...] = ()

    def __post_init__(self):
        c = [Fraction(x) for x in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def const(cls, c) -> "RationalPoly":
        return cls((c,))

    @classmethod
    def x(cls) -> "RationalPoly":
        return cls((0, 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_monic(self) -> bool:
        return self.leading == 1

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "RationalPoly") -> "RationalPoly":
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return RationalPoly(tuple((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                                  for i in range(n)))

    def __neg__(self) -> "RationalPoly":
        return RationalPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "RationalPoly") -> "RationalPoly":
        return self + (-other)

    def __mul__(self, other) -> "RationalPoly":
        if not isinstance(other, RationalPoly):
            return RationalPoly(tuple(c * other for c in self.coeffs))
        if not self.coeffs or not other.coeffs:
            return RationalPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return RationalPoly(tuple(out))

    __rmul__ = __mul__

    def int_coeffs(self) -> list[int]:
        if any(c.denominator != 1 for c in self.coeffs):
            raise ValueError(f"non-integral coefficients in {self}")
        return [int(c) for c in self.coeffs]

    def __str__(self) -> str:
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = abs(c)
            coef = "" if (mag == 1 and k > 0) else str(mag)
            var = "" if k == 0 else ("m" if k == 1 else f"m^{k}")
            body = f"{coef}*{var}" if coef and var else (coef or var)
            terms.append(("- " if c < 0 else "+ ") + body)
        if not terms:
            return "0"
        s = " ".join(terms)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


@lru_cache(maxsize=None)
def bernoulli(k: int) -> Fraction:
    """Bernoulli numbers with B_1 = +1/2."""
    if k < 0:
        raise ValueError("k must be >= 0")
    return _bernoulli_minus(k) if k != 1 else Fraction(1, 2)


@lru_cache(maxsize=None)
def _bernoulli_minus(k: int) -> Fraction:
    # sum_{j=0}^{k} C(k+1, j) B_j = 0 for k >= 1 (B_1 = -1/2 convention)
    if k == 0:
        return Fraction(1)
    return -sum((comb(k + 1, j) * _bernoulli_minus(j) for j in range(k)), Fraction(0)) / (k + 1)


@lru_cache(maxsize=None)
def power_sum_poly(p: int) -> RationalPoly:
    """Polynomial S with S(m) = 1**p + 2**p + ... + m**p (Faulhaber)."""
    if p < 0:
        raise ValueError("p must be >= 0")
    coeffs = [Fraction(0)] * (p + 2)
    for j in range(p + 1):
        coeffs[p + 1 - j] += Fraction(comb(p + 1, j)) * bernoulli(j) / (p + 1)
    return RationalPoly(tuple(coeffs))


def prefix_sum_poly(f: RationalPoly) -> RationalPoly:
    """F with F(m) = f(1) + ... + f(m)."""
    out = RationalPoly()
    for i, c in enumerate(f.coeffs):
        out = out + power_sum_poly(i) * c
    return out


def interpolate(xs: Sequence, ys: Sequence) -> RationalPoly:
    """Unique polynomial of degree < len(xs) through the given points (Lagrange)."""
    if len(xs) != len(ys) or len(set(xs)) != len(xs):
        raise ValueError("need distinct abscissae matching the ordinates")
    out = RationalPoly()
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        basis = RationalPoly.const(1)
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j != i:
                basis = basis * RationalPoly((-xj, 1))
                denom *= xi - xj
        out = out + basis * (Fraction(yi) / denom)
    return out


@lru_cache(maxsize=None)
def derive_p(n: int) -> RationalPoly:
    """P_n via P_n(m) = (n-1) * (P_{n-1}(m) + sum_{i=n}^{m} P_{n-1}(i))."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return RationalPoly.const(1)
    prev = derive_p(n - 1)
    tail = prefix_sum_poly(prev)
    tail = tail - RationalPoly.const(tail(n - 1))
    return (prev + tail) * (n - 1)


def _normalized(value: Fraction, m: int, n: int) -> Fraction:
    return value * factorial(n - 1) / Fraction(2) ** (m - 2)


def fit_from_counts(n: int, counts, start: int | None = None) -> RationalPoly:
    """Interpolate m -> count(m, n) * (n-1)! / 2**(m-2) at m = start .. start+n-1."""
    start = n if start is None else start
    xs = list(range(start, start + n))
    return interpolate(xs, [_normalized(counts(m, n), m, n) for m in xs])


def check_polynomial(poly: RationalPoly, n: int, counts, extra: Iterable[int], name: str = "poly") -> None:
    """Raise :class:`VerificationFailure` unless ``poly`` is monic of degree n-1
    and reproduces ``counts(m, n)`` at every m in ``extra``."""
    if poly.degree != n - 1 or not poly.is_monic():
        raise VerificationFailure(f"{name}_{n} = {poly} is not monic of degree {n - 1}")
    for m in extra:
        want = counts(m, n)
        got = Fraction(2) ** (m - 2) * poly(m) / factorial(n - 1)
        if got != want:
            raise VerificationFailure(f"{name}_{n}({m}) gives {got}, recursion gives {want}")


@lru_cache(maxsize=None)
def derive_q(n: int) -> RationalPoly:
    """Q_n by interpolation on m = n..2n-1, checked on m = 2n..3n-1."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return fit_polynomial(n, all_exact, "Q")


def fit_polynomial(n: int, counts, name: str = "poly") -> RationalPoly:
    """Interpolate on m = n..2n-1, then check on the next n values of m."""
    poly = fit_from_counts(n, counts)
    check_polynomial(poly, n, counts, range(2 * n, 3 * n), name)
    return poly


def verify_p(n: int) -> None:
    """Over-determined check of P_n against the recursion on n extra points."""
    check_polynomial(derive_p(n), n, bimonotone_exact, range(n, 2 * n), "P")


def bimonotone_closed_form(m: int, n: int) -> Fraction:
    """B(m, n) from P_n; the polynomial only applies for m >= n, below that B is 0."""
    if m < n:
        return Fraction(0)
    return Fraction(2) ** (m - 2) * derive_p(n)(m) / factorial(n - 1)


def all_closed_form(m: int, n: int) -> Fraction:
    return Fraction(2) ** (m - 2) * derive_q(n)(m) / factorial(n - 1)


def decimal_string(q: Fraction, digits: int = 12) -> str:
    with localcontext() as ctx:
        ctx.prec = digits
        return str(Decimal(q.numerator) / Decimal(q.denominator))


@dataclass(frozen=True)
class AsymptoticReport:
    n: int
    m: int
    degrees: tuple[int, int]
    leading: tuple[Fraction, Fraction]
    ratio: Fraction

    @property
    def equivalent(self) -> bool:
        return self.degrees == (self.n - 1, self.n - 1) and self.leading == (1, 1)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "degrees": list(self.degrees),
            "leading": [str(c) for c in self.leading],
            "equivalent": self.equivalent,
            "ratio": f"{self.ratio.numerator}/{self.ratio.denominator}",
            "ratio_decimal": decimal_string(self.ratio),
        }


def asymptotic_check(n: int, m_max: int) -> AsymptoticReport:
    """Compare P_n and Q_n: degree, leading coefficient and B/A at ``m_max``."""
    if n < 1 or m_max < n:
        raise ValueError("need n >= 1 and m_max >= n")
    p, q = derive_p(n), derive_q(n)
    return AsymptoticReport(n, m_max, (p.degree, q.degree), (p.leading, q.leading),
                            p(m_max) / q(m_max))
