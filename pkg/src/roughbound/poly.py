"""Dense univariate polynomials over ``Fraction`` with exact real-root counting."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from ._rational import format_rational

NEG_INF = -math.inf


def _trim(coeffs: Iterable[Fraction | int]) -> tuple[Fraction, ...]:
    c = [Fraction(x) for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class RationalPolynomial:
    """``coeffs[i]`` is the coefficient of ``t**i``; trailing zeros are trimmed."""

    coeffs: tuple[Fraction, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", _trim(self.coeffs))

    @classmethod
    def of(cls, *coeffs: Fraction | int) -> RationalPolynomial:
        return cls(tuple(Fraction(c) for c in coeffs))

    @classmethod
    def monomial(cls, degree: int, coeff: Fraction | int = 1) -> RationalPolynomial:
        return cls((0,) * degree + (Fraction(coeff),))

    @classmethod
    def one_plus_t_power(cls, l: int) -> RationalPolynomial:
        if l < 0:
            raise ValueError("exponent must be non-negative")
        return cls(tuple(math.comb(l, i) for i in range(l + 1)))

    @property
    def degree(self) -> float:
        """Degree, ``-inf`` for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __call__(self, t: Fraction | int) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def __add__(self, other: RationalPolynomial) -> RationalPolynomial:
        a, b = self.coeffs, other.coeffs
        size = max(len(a), len(b))
        return RationalPolynomial(
            tuple((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(size))
        )

    def __neg__(self) -> RationalPolynomial:
        return RationalPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other: RationalPolynomial) -> RationalPolynomial:
        return self + (-other)

    def __mul__(self, other: RationalPolynomial | Fraction | int) -> RationalPolynomial:
        if not isinstance(other, RationalPolynomial):
            return RationalPolynomial(tuple(c * other for c in self.coeffs))
        if self.is_zero() or other.is_zero():
            return RationalPolynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for k, y in enumerate(other.coeffs):
                    out[i + k] += x * y
        return RationalPolynomial(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> RationalPolynomial:
        result = RationalPolynomial.of(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def shift(self, k: int) -> RationalPolynomial:
        """Multiply by ``t**k``."""
        return RationalPolynomial((0,) * k + self.coeffs) if self.coeffs else self

    def reciprocal_flip(self, d: int) -> RationalPolynomial:
        """``t**d * q(1/t)``; needs ``d >= deg q``."""
        if self.degree > d:
            raise ValueError(f"flip degree {d} below polynomial degree {self.degree}")
        padded = self.coeffs + (Fraction(0),) * (d + 1 - len(self.coeffs))
        return RationalPolynomial(tuple(reversed(padded)))

    def derivative(self) -> RationalPolynomial:
        return RationalPolynomial(tuple(i * c for i, c in enumerate(self.coeffs) if i))

    def antiderivative(self) -> RationalPolynomial:
        return RationalPolynomial((Fraction(0),) + tuple(c / (i + 1) for i, c in enumerate(self.coeffs)))

    def integrate(self, lo: Fraction | int = 0, hi: Fraction | int = 1) -> Fraction:
        prim = self.antiderivative()
        return prim(hi) - prim(lo)

    def divmod(self, divisor: RationalPolynomial) -> tuple[RationalPolynomial, RationalPolynomial]:
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dd = len(divisor.coeffs) - 1
        lead = divisor.leading
        quot = [Fraction(0)] * max(len(rem) - dd, 0)
        for i in range(len(rem) - 1, dd - 1, -1):
            factor = rem[i] / lead
            if factor:
                quot[i - dd] = factor
                for k, c in enumerate(divisor.coeffs):
                    rem[i - dd + k] -= factor * c
        return RationalPolynomial(tuple(quot)), RationalPolynomial(tuple(rem[:dd]))

    def __floordiv__(self, other: RationalPolynomial) -> RationalPolynomial:
        return self.divmod(other)[0]

    def __mod__(self, other: RationalPolynomial) -> RationalPolynomial:
        return self.divmod(other)[1]

    def monic(self) -> RationalPolynomial:
        return self * (1 / self.leading) if self.coeffs else self

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mag = abs(c)
            body = "t" if i == 1 else f"t^{i}" if i else ""
            num = "" if mag == 1 and body else str(mag)
            sep = "*" if num and body else ""
            terms.append(("-" if c < 0 else "+", f"{num}{sep}{body}"))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        return out + "".join(f" {s} {t}" for s, t in terms[1:])

    def to_strings(self) -> list[str]:
        return [format_rational(c) for c in self.coeffs]


def poly_gcd(a: RationalPolynomial, b: RationalPolynomial) -> RationalPolynomial:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def square_free_part(p: RationalPolynomial) -> RationalPolynomial:
    """``p / gcd(p, p')``: same distinct roots, all simple."""
    if p.is_zero():
        raise ValueError("zero polynomial has no square-free part")
    g = poly_gcd(p, p.derivative())
    return (p // g).monic()


def sturm_sequence(p: RationalPolynomial) -> list[RationalPolynomial]:
    seq = [p, p.derivative()]
    while not seq[-1].is_zero():
        seq.append(-(seq[-2] % seq[-1]))
    return seq[:-1]


def _sign_changes(seq: Sequence[RationalPolynomial], x: Fraction) -> int:
    signs = [v > 0 for v in (q(x) for q in seq) if v != 0]
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def count_roots(p: RationalPolynomial, lo: Fraction | int, hi: Fraction | int) -> int:
    """Number of distinct real roots of ``p`` in the open interval ``(lo, hi)``."""
    lo, hi = Fraction(lo), Fraction(hi)
    if lo >= hi:
        return 0
    q = square_free_part(p)
    # strip roots sitting exactly on the endpoints so both evaluations are nonzero
    for x in (lo, hi):
        if q(x) == 0:
            q = q // RationalPolynomial.of(-x, 1)
    if q.degree < 1:
        return 0
    seq = sturm_sequence(q)
    return _sign_changes(seq, lo) - _sign_changes(seq, hi)


@dataclass(frozen=True)
class RootBracket:
    """Interval isolating exactly one root; ``lo == hi`` marks an exact rational root."""

    lo: Fraction
    hi: Fraction

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    def contains(self, x: Fraction) -> bool:
        return x == self.lo if self.exact else self.lo < x < self.hi


def isolate_roots(
    p: RationalPolynomial, lo: Fraction | int = 0, hi: Fraction | int = 1
) -> list[RootBracket]:
    """Disjoint brackets, one per distinct root in ``(lo, hi)``, each strictly inside and separated."""
    lo, hi = Fraction(lo), Fraction(hi)
    q = square_free_part(p)
    found: list[RootBracket] = []

    def split(a: Fraction, b: Fraction) -> None:
        k = count_roots(q, a, b)
        if k == 0:
            return
        if k == 1:
            found.append(RootBracket(a, b))
            return
        mid = (a + b) / 2
        split(a, mid)
        if q(mid) == 0:
            found.append(RootBracket(mid, mid))
        split(mid, b)

    split(lo, hi)
    found.sort(key=lambda r: r.lo)
    return _separate(q, found, lo, hi)


def _narrow(q: RationalPolynomial, r: RootBracket) -> RootBracket:
    if r.exact:
        return r
    mid = (r.lo + r.hi) / 2
    if q(mid) == 0:
        return RootBracket(mid, mid)
    return RootBracket(r.lo, mid) if count_roots(q, r.lo, mid) else RootBracket(mid, r.hi)


def _separate(q: RationalPolynomial, brackets: list[RootBracket], lo: Fraction, hi: Fraction) -> list[RootBracket]:
    while True:
        touching = set()
        for i, r in enumerate(brackets):
            if not r.exact and (r.lo == lo or r.hi == hi):
                touching.add(i)
            if i and brackets[i - 1].hi >= r.lo:
                touching.update({i - 1, i})
        if not touching:
            return brackets
        brackets = [_narrow(q, r) if i in touching else r for i, r in enumerate(brackets)]


def refine(p: RationalPolynomial, bracket: RootBracket, width: Fraction) -> RootBracket:
    q = square_free_part(p)
    while not bracket.exact and bracket.hi - bracket.lo > width:
        bracket = _narrow(q, bracket)
    return bracket


@lru_cache(maxsize=None)
def _one_plus_t(l: int) -> RationalPolynomial:
    return RationalPolynomial.one_plus_t_power(l)


def integrate_01_shifted(r: RationalPolynomial, l: int) -> Fraction:
    """Exact ``integral_0^1 (1+t)**l r(t) dt``."""
    if l < 0:
        raise ValueError("shift l must be non-negative")
    return (_one_plus_t(l) * r).integrate(0, 1)
