"""Integer partitions of ``n`` into ``m`` parts and their optimal members.

Senses here always refer to the integer-partition objective
``sum_i a_i F_w(a_i)``.  Minimizing the boundary of a *set* partition means
maximizing this objective; :func:`set_level_optimum` is the only place that
translates between the two.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Literal

from ._rational import format_rational
from .weights import ObjectiveProfile, ShapeReport, WeightSpec, big_f_closed, total_weight

Sense = Literal["min", "max"]

DEFAULT_PARTITION_BUDGET = 10**7
THEOREM2_MIN_N = 13


class BudgetExceededError(ValueError):
    def __init__(self, n: int, m: int, count: int, budget: int):
        super().__init__(f"P({n},{m}) has {count} partitions, above the budget of {budget}")
        self.count = count


class UnsupportedCaseError(ValueError):
    """No closed form is known for these parameters; use brute force instead."""


@dataclass(frozen=True, order=True)
class IntegerPartition:
    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        parts = tuple(sorted((int(x) for x in self.parts), reverse=True))
        if not parts or parts[-1] < 1:
            raise ValueError(f"parts must be positive integers, got {self.parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def from_multiplicities(cls, *pairs: tuple[int, int]) -> IntegerPartition:
        """Build ``i1^k1 i2^k2 ...`` from ``(item, count)`` pairs; repeated items add up."""
        if any(k < 0 for _, k in pairs):
            raise ValueError(f"multiplicities must be non-negative, got {pairs}")
        return cls(tuple(i for i, k in pairs for _ in range(k)))

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def m(self) -> int:
        return len(self.parts)

    @property
    def multiplicities(self) -> dict[int, int]:
        """``{i: lambda_i}`` for the items that occur."""
        return dict(sorted(Counter(self.parts).items()))

    def multiplicity_form(self) -> str:
        return " ".join(f"{i}^{k}" for i, k in self.multiplicities.items())

    def to_dict(self) -> dict:
        return {"parts": list(self.parts), "multiplicity_form": self.multiplicity_form()}

    def __str__(self) -> str:
        return self.multiplicity_form()


@lru_cache(maxsize=None)
def partition_count(n: int, m: int) -> int:
    """``|P(n, m)|`` via ``p(n, m) = p(n-1, m-1) + p(n-m, m)``."""
    if n == 0 and m == 0:
        return 1
    if n <= 0 or m <= 0 or m > n:
        return 0
    return partition_count(n - 1, m - 1) + partition_count(n - m, m)


def enumerate_partitions(n: int, m: int) -> Iterator[IntegerPartition]:
    """Stream ``P(n, m)`` in decreasing lexicographic order."""
    if not 1 <= m <= n:
        raise ValueError(f"need 1 <= m <= n, got n={n}, m={m}")
    parts = [0] * m

    def fill(i: int, remaining: int, cap: int) -> Iterator[IntegerPartition]:
        slots = m - i
        if slots == 1:
            parts[i] = remaining
            yield IntegerPartition(tuple(parts))
            return
        hi = min(cap, remaining - (slots - 1))
        lo = -(-remaining // slots)
        for first in range(hi, lo - 1, -1):
            parts[i] = first
            yield from fill(i + 1, remaining - first, first)

    yield from fill(0, n, n)


def _check_spec(n: int, spec: WeightSpec) -> None:
    if spec.n != n:
        raise ValueError(f"partition of {n} evaluated with a weight on n={spec.n}")


def objective(p: IntegerPartition, spec: WeightSpec) -> Fraction:
    """``sum_i a_i F_w(a_i)``."""
    _check_spec(p.n, spec)
    return sum((a * big_f_closed(spec, a) for a in p.parts), Fraction(0))


@dataclass(frozen=True)
class OptResult:
    n: int
    m: int
    j: int
    sense: Sense
    value: Fraction
    argopt: tuple[IntegerPartition, ...] = field(default_factory=tuple)

    def to_dict(self) -> dict:
        return {"value": format_rational(self.value), "argopt": [p.to_dict() for p in self.argopt]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _check_sense(sense: str) -> None:
    if sense not in ("min", "max"):
        raise ValueError(f"sense must be 'min' or 'max', got {sense!r}")


def brute_force_optima(
    n: int, m: int, spec: WeightSpec, sense: Sense, budget: int = DEFAULT_PARTITION_BUDGET
) -> OptResult:
    """Scan all of ``P(n, m)``; returns the optimum and every partition attaining it."""
    _check_sense(sense)
    _check_spec(n, spec)
    count = partition_count(n, m)
    if count > budget:
        raise BudgetExceededError(n, m, count, budget)
    better = (lambda x, y: x < y) if sense == "min" else (lambda x, y: x > y)
    best: Fraction | None = None
    argopt: list[IntegerPartition] = []
    for p in enumerate_partitions(n, m):
        v = objective(p, spec)
        if best is None or better(v, best):
            best, argopt = v, [p]
        elif v == best:
            argopt.append(p)
    assert best is not None
    return OptResult(n, m, spec.j, sense, best, tuple(argopt))


def _uniform_blocks(n: int, m: int) -> IntegerPartition:
    q, r = divmod(n, m)
    return IntegerPartition.from_multiplicities((q, m - r), (q + 1, r))


def _min_form(n: int, m: int) -> IntegerPartition:
    # guard order matters: small excess first, then n > 5m, then residues of m-n mod 4
    d = n - m
    if d <= 5:
        return IntegerPartition.from_multiplicities((1, m - 1), (d + 1, 1))
    if n > 5 * m:
        return _uniform_blocks(n, m)
    residue = (m - n) % 4
    if residue == 0:
        return IntegerPartition.from_multiplicities((1, m - d // 4), (5, d // 4))
    if residue == 1:
        return IntegerPartition.from_multiplicities((1, m - (d + 1) // 4), (4, 1), (5, (d - 3) // 4))
    if residue == 2:
        return IntegerPartition.from_multiplicities((1, m - (d + 2) // 4), (4, 2), (5, (d - 6) // 4))
    return IntegerPartition.from_multiplicities((1, m - (d - 1) // 4), (5, (d - 5) // 4), (6, 1))


def _max_form_uniform(n: int, m: int) -> IntegerPartition:
    if n >= 2 * m:
        return IntegerPartition.from_multiplicities((2, m - 1), (n - 2 * m + 2, 1))
    return IntegerPartition.from_multiplicities((1, 2 * m - n), (2, n - m))


def _max_form_relative(n: int, m: int) -> IntegerPartition:
    if n > 2 * m + 2:
        return IntegerPartition.from_multiplicities((2, m - 1), (n - 2 * m + 2, 1))
    if n == 2 * m + 2:
        return IntegerPartition.from_multiplicities((2, m - 2), (3, 2))
    if n == 2 * m + 1:
        return IntegerPartition.from_multiplicities((2, m - 1), (3, 1))
    return IntegerPartition.from_multiplicities((1, 2 * m - n), (2, n - m))


def closed_form_optimal(n: int, m: int, spec: WeightSpec, sense: Sense) -> IntegerPartition:
    """Explicit optimal member of ``P(n, m)`` for the built-in weights.

    Raises :class:`UnsupportedCaseError` for ``j = 2`` below ``n = 13`` and
    for custom weight tables.
    """
    _check_sense(sense)
    _check_spec(n, spec)
    if not 2 <= m < n:
        raise ValueError(f"need 2 <= m < n, got n={n}, m={m}")
    if spec.table is not None:
        raise UnsupportedCaseError("no closed form for custom weight tables")
    if spec.j == 2 and n < THEOREM2_MIN_N:
        raise UnsupportedCaseError(
            f"j=2 closed forms need n >= {THEOREM2_MIN_N}; use brute_force_optima for n={n}"
        )
    if spec.j == 3:
        p = IntegerPartition.from_multiplicities((1, m - 1), (n - m + 1, 1)) if sense == "min" else _uniform_blocks(n, m)
    elif sense == "min":
        p = _min_form(n, m)
    else:
        p = _max_form_uniform(n, m) if spec.j == 1 else _max_form_relative(n, m)
    if (p.n, p.m) != (n, m):
        raise AssertionError(f"closed form {p} is not in P({n},{m})")
    return p


def theorem4_filter(p: IntegerPartition, profile: ObjectiveProfile, shape: ShapeReport, sense: Sense) -> bool:
    """Structural necessary condition for ``p`` to optimize ``sum g(a_i)``.

    Requires a concave-convex profile with threshold ``c``.  A minimizer has
    no two items in ``{c-1..n}`` at distance >= 2 (except ``c-1, c+1`` when
    the threshold is linear) and at most one item in ``{2..c-1}``.  A
    maximizer has no two items in ``{1..c}`` at distance >= 2 and at most one
    item in ``{c..n-1}`` (two items ``c`` allowed when linear).
    """
    _check_sense(sense)
    if not shape.valid:
        raise ValueError("profile is not concave-convex; the structural filter does not apply")
    if p.n != profile.n:
        raise ValueError("partition and profile disagree on n")
    c, n, eq = shape.c, profile.n, shape.lin_equality
    items = p.parts
    pairs = [(items[i], items[k]) for i in range(len(items)) for k in range(i + 1, len(items))]
    for x, y in pairs:
        lo, hi = min(x, y), max(x, y)
        if sense == "min":
            if lo >= c - 1 and hi - lo >= 2 and not (eq and (lo, hi) == (c - 1, c + 1)):
                return False
            if 2 <= lo and hi <= c - 1:
                return False
        else:
            if hi <= c and hi - lo >= 2:
                return False
            if c <= lo and hi <= n - 1 and not (eq and lo == hi == c):
                return False
    return True


def set_level_optimum(
    n: int, m: int, spec: WeightSpec, sense: Sense, budget: int = DEFAULT_PARTITION_BUDGET
) -> tuple[Fraction, IntegerPartition]:
    """Optimal boundary sum over set partitions into ``m`` blocks, with witness block sizes.

    A set partition with minimal boundary has block sizes maximizing the
    integer objective, and vice versa.
    """
    _check_sense(sense)
    flipped: Sense = "max" if sense == "min" else "min"
    if m == 1 or m == n:
        witness = next(enumerate_partitions(n, m))
    else:
        try:
            witness = closed_form_optimal(n, m, spec, flipped)
        except UnsupportedCaseError:
            witness = brute_force_optima(n, m, spec, flipped, budget).argopt[0]
    return n * total_weight(spec) - objective(witness, spec), witness
