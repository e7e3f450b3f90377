"""Weight functions, the per-block objective ``F_w`` and its profile ``g``.

For a weight ``w`` on subset cardinalities, the boundary sum of a partition
with block sizes ``a_1..a_m`` is ``n * sum_k C(n,k) w(k) - sum_i a_i F_w(a_i)``,
so every optimization question reduces to the table ``g(a) = a F_w(a)``.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Sequence

from ._rational import format_decimal, format_rational

CUSTOM = 0


def binom(n: int, k: int) -> int:
    """Binomial coefficient, zero outside ``0 <= k <= n``."""
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k)


@lru_cache(maxsize=None)
def harmonic(n: int) -> Fraction:
    return sum((Fraction(1, k) for k in range(1, n + 1)), Fraction(0))


def harmonic_tail(n: int, a: int) -> Fraction:
    """``1/(a+1) + ... + 1/n`` (empty sum when ``a >= n``)."""
    return harmonic(n) - harmonic(min(a, n))


@dataclass(frozen=True)
class WeightSpec:
    """Weight ``w_j`` on ``{0..n}``.

    ``j`` is 1 (uniform), 2 (``1/k``) or 3 (``1/(C(n,k) k)``).  ``j = 0``
    together with ``table`` plugs in an arbitrary table of rational weights.
    """

    j: int
    n: int
    table: tuple[Fraction, ...] | None = None

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be positive")
        if self.table is not None:
            if self.j != CUSTOM:
                raise ValueError("a weight table requires j=0")
            if len(self.table) != self.n + 1:
                raise ValueError(f"weight table needs n+1={self.n + 1} entries")
            object.__setattr__(self, "table", tuple(Fraction(v) for v in self.table))
        elif self.j not in (1, 2, 3):
            raise ValueError(f"j must be 1, 2 or 3, got {self.j}")

    @classmethod
    def from_table(cls, values: Sequence[Fraction | int]) -> WeightSpec:
        return cls(CUSTOM, len(values) - 1, tuple(Fraction(v) for v in values))


def _check_range(name: str, value: int, lo: int, hi: int) -> None:
    if not lo <= value <= hi:
        raise ValueError(f"{name}={value} outside [{lo}, {hi}]")


def weight_value(spec: WeightSpec, k: int) -> Fraction:
    _check_range("k", k, 0, spec.n)
    if spec.table is not None:
        return spec.table[k]
    if spec.j == 1:
        return Fraction(1)
    if k == 0:
        return Fraction(0)
    if spec.j == 2:
        return Fraction(1, k)
    return Fraction(1, comb(spec.n, k) * k)


@lru_cache(maxsize=None)
def weight_table(spec: WeightSpec) -> tuple[Fraction, ...]:
    return tuple(weight_value(spec, k) for k in range(spec.n + 1))


@lru_cache(maxsize=None)
def total_weight(spec: WeightSpec) -> Fraction:
    """``sum_k C(n,k) w(k)``, the weight of the whole power set."""
    return sum((comb(spec.n, k) * weight_value(spec, k) for k in range(spec.n + 1)), Fraction(0))


@lru_cache(maxsize=None)
def normalizer(spec: WeightSpec) -> Fraction:
    n = spec.n
    if spec.j == 1:
        return Fraction(2**n)
    if spec.j == 2:
        return sum((Fraction(comb(n, k), k) for k in range(1, n + 1)), Fraction(0))
    if spec.j == 3:
        return harmonic(n)
    return total_weight(spec)


@lru_cache(maxsize=None)
def big_f(spec: WeightSpec, a: int) -> Fraction:
    """``F_w(a) = sum_k (C(n-a, k) + C(n-a, k-a)) w(k)`` evaluated term by term."""
    _check_range("a", a, 1, spec.n)
    n = spec.n
    return sum(
        ((binom(n - a, k) + binom(n - a, k - a)) * weight_value(spec, k) for k in range(n + 1)),
        Fraction(0),
    )


@lru_cache(maxsize=None)
def big_f_closed(spec: WeightSpec, a: int) -> Fraction:
    """Closed form of ``F_w(a)`` where one exists.

    ``2**(n-a+1)`` for the uniform weight and ``1/a + H(n) - H(a)`` for
    ``j = 3``; ``j = 2`` and custom tables use the defining sum.
    """
    _check_range("a", a, 1, spec.n)
    if spec.table is None and spec.j == 1:
        return Fraction(2 ** (spec.n - a + 1))
    if spec.table is None and spec.j == 3:
        return Fraction(1, a) + harmonic_tail(spec.n, a)
    return big_f(spec, a)


def _parts_of(sizes: Iterable[int] | object) -> tuple[int, ...]:
    parts = getattr(sizes, "parts", sizes)
    return tuple(int(x) for x in parts)  # type: ignore[union-attr]


def f_via_lemma1(sizes: Iterable[int], spec: WeightSpec) -> Fraction:
    """Boundary sum ``f_w`` of any set partition with the given block sizes."""
    parts = _parts_of(sizes)
    if any(x < 1 for x in parts) or sum(parts) != spec.n:
        raise ValueError(f"block sizes {parts} do not partition n={spec.n}")
    return spec.n * total_weight(spec) - sum((a * big_f_closed(spec, a) for a in parts), Fraction(0))


@dataclass(frozen=True)
class ObjectiveProfile:
    """Table ``a -> g(a) = scale * a * F_w(a)`` for ``a = 1..n``."""

    j: int
    n: int
    values: tuple[Fraction, ...]
    scale: Fraction = Fraction(1)

    def g(self, a: int) -> Fraction:
        _check_range("a", a, 1, self.n)
        return self.values[a - 1]

    def total(self, items: Iterable[int]) -> Fraction:
        return sum((self.g(a) for a in items), Fraction(0))

    def second_difference(self, a: int) -> Fraction:
        """``g(a-1) + g(a+1) - 2 g(a)``; negative means strictly concave at ``a``."""
        _check_range("a", a, 2, self.n - 1)
        return self.g(a - 1) + self.g(a + 1) - 2 * self.g(a)

    def csv_rows(self) -> list[tuple[int, str, str]]:
        return [(a, format_rational(v), format_decimal(v)) for a, v in enumerate(self.values, start=1)]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["a", "g", "g_decimal"])
        writer.writerows(self.csv_rows())
        return buf.getvalue()


@lru_cache(maxsize=None)
def g_profile(spec: WeightSpec) -> ObjectiveProfile:
    """Per-item objective; the uniform weight is scaled by ``2**-(n+1)`` to give ``a / 2**a``."""
    if spec.n < 2:
        raise ValueError("profile needs n >= 2")
    scale = Fraction(1, 2 ** (spec.n + 1)) if spec.j == 1 and spec.table is None else Fraction(1)
    values = tuple(scale * a * big_f_closed(spec, a) for a in range(1, spec.n + 1))
    return ObjectiveProfile(spec.j, spec.n, values, scale)


@dataclass(frozen=True)
class ShapeReport:
    """Concave-then-convex threshold ``c`` of a profile.

    ``c == n`` means the profile is strictly concave on all of ``2..n-1``.
    """

    c: int
    lin_equality: bool
    concave_range_ok: bool
    convex_range_ok: bool

    @property
    def valid(self) -> bool:
        return self.concave_range_ok and self.convex_range_ok


def shape_analysis(profile: ObjectiveProfile) -> ShapeReport:
    n = profile.n
    if n < 3:
        raise ValueError("shape analysis needs a profile of length >= 3")
    c = n
    for a in range(2, n):
        if profile.second_difference(a) >= 0:
            c = a
            break
    concave_ok = all(profile.second_difference(a) < 0 for a in range(2, c))
    convex_ok = all(profile.second_difference(a) > 0 for a in range(c + 1, n))
    lin_equality = c < n and profile.second_difference(c) == 0
    return ShapeReport(c, lin_equality, concave_ok, convex_ok)


def thu_sum(a: int, b: int, c: int) -> Fraction:
    """``sum_{i=0}^{a} C(a,i) / ((b+i) C(c, b+i))``."""
    if a < 0 or b <= 0 or c < a + b:
        raise ValueError(f"need a >= 0, b > 0, c >= a + b; got a={a}, b={b}, c={c}")
    return sum((Fraction(comb(a, i), (b + i) * comb(c, b + i)) for i in range(a + 1)), Fraction(0))


def thu_closed(a: int, b: int, c: int) -> Fraction:
    if a < 0 or b <= 0 or c < a + b:
        raise ValueError(f"need a >= 0, b > 0, c >= a + b; got a={a}, b={b}, c={c}")
    return Fraction(1, b * comb(c - a, b))


def lemma_lower_sum(n: int, a: int) -> Fraction:
    """``sum_k C(n-a, k-a) / (C(n,k) k)``, which collapses to ``1/a``."""
    _check_range("a", a, 1, n)
    return sum((Fraction(binom(n - a, k - a), comb(n, k) * k) for k in range(1, n + 1)), Fraction(0))


def lemma_upper_sum(n: int, a: int) -> Fraction:
    """``sum_k C(n-a, k) / (C(n,k) k)``, which collapses to ``H(n) - H(a)``."""
    _check_range("a", a, 1, n)
    return sum((Fraction(binom(n - a, k), comb(n, k) * k) for k in range(1, n + 1)), Fraction(0))
