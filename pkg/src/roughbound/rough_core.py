"""Set partitions of ``[n]``, rough approximations and exhaustive subset sums.

Everything here that loops over subsets really does visit all ``2**n`` of
them; these functions are the brute-force side that the closed forms in
:mod:`roughbound.weights` are checked against.  Subsets are bitmasks, bit
``i - 1`` standing for element ``i``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import comb, lcm
from typing import Iterable, Iterator, Sequence

import numpy as np

from ._rational import format_rational
from .weights import WeightSpec, normalizer, weight_table

DEFAULT_SUBSET_CAP = 20


class DimensionMismatchError(ValueError):
    """Partition and subset live on ground sets of different size."""


class EnumerationCapError(ValueError):
    """Refusal to enumerate ``2**n`` subsets above the configured cap."""


@dataclass(frozen=True)
class SubsetMask:
    n: int
    bits: int = 0

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("n must be non-negative")
        if self.bits < 0 or self.bits >> self.n:
            raise ValueError(f"mask {self.bits:#x} has elements outside [1..{self.n}]")

    @classmethod
    def from_members(cls, n: int, members: Iterable[int]) -> SubsetMask:
        bits = 0
        for x in members:
            if not 1 <= x <= n:
                raise ValueError(f"element {x} outside [1..{n}]")
            bits |= 1 << (x - 1)
        return cls(n, bits)

    @classmethod
    def full(cls, n: int) -> SubsetMask:
        return cls(n, (1 << n) - 1)

    def members(self) -> tuple[int, ...]:
        return tuple(i + 1 for i in range(self.n) if self.bits >> i & 1)

    def complement(self) -> SubsetMask:
        return SubsetMask(self.n, ~self.bits & ((1 << self.n) - 1))

    def issubset(self, other: SubsetMask) -> bool:
        return self.bits & ~other.bits == 0

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __iter__(self) -> Iterator[int]:
        return iter(self.members())


@dataclass(frozen=True)
class SetPartition:
    """Partition of ``[n]`` into nonempty blocks, stored sorted by minimum."""

    n: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        blocks = tuple(sorted((tuple(sorted(b)) for b in self.blocks), key=lambda b: b[0] if b else 0))
        seen: set[int] = set()
        for b in blocks:
            if not b:
                raise ValueError("blocks must be nonempty")
            for x in b:
                if not 1 <= x <= self.n:
                    raise ValueError(f"element {x} outside [1..{self.n}]")
                if x in seen:
                    raise ValueError(f"element {x} appears in more than one block")
                seen.add(x)
        if len(seen) != self.n:
            missing = sorted(set(range(1, self.n + 1)) - seen)
            raise ValueError(f"elements {missing} are not covered by any block")
        object.__setattr__(self, "blocks", blocks)

    @property
    def m(self) -> int:
        return len(self.blocks)

    @cached_property
    def masks(self) -> tuple[int, ...]:
        return tuple(SubsetMask.from_members(self.n, b).bits for b in self.blocks)

    def block_sizes(self) -> tuple[int, ...]:
        """Block sizes in non-increasing order."""
        return tuple(sorted((len(b) for b in self.blocks), reverse=True))

    @classmethod
    def from_growth_string(cls, rgs: Sequence[int]) -> SetPartition:
        blocks: dict[int, list[int]] = {}
        for i, label in enumerate(rgs, start=1):
            blocks.setdefault(label, []).append(i)
        return cls(len(rgs), tuple(tuple(b) for b in blocks.values()))

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "blocks": [list(b) for b in self.blocks]})

    @classmethod
    def from_json(cls, text: str) -> SetPartition:
        data = json.loads(text)
        try:
            n = int(data["n"])
            blocks = tuple(tuple(int(x) for x in b) for b in data["blocks"])
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed partition JSON: {exc}") from exc
        return cls(n, blocks)


def _check_dims(p: SetPartition, x: SubsetMask) -> None:
    if p.n != x.n:
        raise DimensionMismatchError(f"partition has n={p.n}, subset has n={x.n}")


def lower_approx(p: SetPartition, x: SubsetMask) -> SubsetMask:
    """Union of the blocks contained in ``x``."""
    _check_dims(p, x)
    bits = 0
    for b in p.masks:
        if b & x.bits == b:
            bits |= b
    return SubsetMask(p.n, bits)


def upper_approx(p: SetPartition, x: SubsetMask) -> SubsetMask:
    """Union of the blocks meeting ``x``."""
    _check_dims(p, x)
    bits = 0
    for b in p.masks:
        if b & x.bits:
            bits |= b
    return SubsetMask(p.n, bits)


def boundary(p: SetPartition, x: SubsetMask) -> SubsetMask:
    _check_dims(p, x)
    up = upper_approx(p, x)
    lo = lower_approx(p, x)
    return SubsetMask(p.n, up.bits & ~lo.bits)


def set_partitions(n: int, m: int | None = None) -> Iterator[SetPartition]:
    """All set partitions of ``[n]`` (optionally with exactly ``m`` blocks).

    Generated through restricted growth strings ``r`` with ``r[0] = 0`` and
    ``r[i] <= max(r[:i]) + 1``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    rgs = [0] * n

    def extend(i: int, top: int) -> Iterator[SetPartition]:
        if m is not None and (top + 1) + (n - i) < m:
            return
        if i == n:
            if m is None or top + 1 == m:
                yield SetPartition.from_growth_string(rgs)
            return
        limit = top + 1 if m is None else min(top + 1, m - 1)
        for label in range(limit + 1):
            rgs[i] = label
            yield from extend(i + 1, max(top, label))

    yield from extend(1, 0)


@lru_cache(maxsize=8)
def _subset_tables(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Popcount of every mask, masks ordered by popcount, and group offsets."""
    pop = np.zeros(1 << n, dtype=np.int64)
    for b in range(n):
        pop[1 << b : 1 << (b + 1)] = pop[: 1 << b] + 1
    order = np.argsort(pop, kind="stable")
    offsets = np.searchsorted(pop[order], np.arange(n + 1))
    pop.flags.writeable = False
    order.flags.writeable = False
    return pop, order, offsets


def _check_cap(n: int, cap: int) -> None:
    if n > cap:
        raise EnumerationCapError(
            f"refusing to enumerate 2**{n} subsets (cap n <= {cap}); raise the cap explicitly"
        )


def _sum_by_size(per_subset: np.ndarray, n: int) -> list[int]:
    """Exact integer sums of ``per_subset`` grouped by subset cardinality."""
    _, order, offsets = _subset_tables(n)
    grouped = np.add.reduceat(per_subset[order], offsets)
    return [int(v) for v in grouped]


def boundary_size_by_cardinality(p: SetPartition, cap: int = DEFAULT_SUBSET_CAP) -> list[int]:
    """``S[k] = sum of |A(X)|`` over all ``X`` with ``|X| = k``, by enumeration."""
    _check_cap(p.n, cap)
    pop, _, _ = _subset_tables(p.n)
    xs = np.arange(1 << p.n, dtype=np.int64)
    total = np.zeros(1 << p.n, dtype=np.int64)
    for mask, block in zip(p.masks, p.blocks):
        size = len(block)
        if size == 1:
            continue
        hit = pop[xs & mask]
        total += size * ((hit > 0) & (hit < size))
    return _sum_by_size(total, p.n)


def lower_size_by_cardinality(p: SetPartition, cap: int = DEFAULT_SUBSET_CAP) -> list[int]:
    _check_cap(p.n, cap)
    pop, _, _ = _subset_tables(p.n)
    xs = np.arange(1 << p.n, dtype=np.int64)
    total = np.zeros(1 << p.n, dtype=np.int64)
    for mask, block in zip(p.masks, p.blocks):
        total += len(block) * ((xs & mask) == mask)
    return _sum_by_size(total, p.n)


@dataclass(frozen=True)
class ExpectationReport:
    j: int
    f_value: Fraction
    normalizer: Fraction

    @property
    def mu(self) -> Fraction:
        return self.f_value / self.normalizer

    def to_dict(self) -> dict:
        return {
            "j": self.j,
            "f_value": format_rational(self.f_value),
            "normalizer": format_rational(self.normalizer),
            "mu": format_rational(self.mu),
        }


def expected_boundary_exhaustive(
    p: SetPartition, j: int, cap: int = DEFAULT_SUBSET_CAP
) -> ExpectationReport:
    """Expected boundary size under distribution ``j``, summed over all subsets."""
    spec = WeightSpec(j, p.n)
    sizes = boundary_size_by_cardinality(p, cap)
    numerators, denominator = _integer_weights(spec)
    f = Fraction(sum(w * s for w, s in zip(numerators, sizes)), denominator)
    return ExpectationReport(j, f, normalizer(spec))


@lru_cache(maxsize=None)
def _integer_weights(spec: WeightSpec) -> tuple[tuple[int, ...], int]:
    """Weights as integers over one common denominator."""
    table = weight_table(spec)
    d = lcm(*(w.denominator for w in table))
    return tuple(w.numerator * (d // w.denominator) for w in table), d


def az_analogon_sum(p: SetPartition, cap: int = DEFAULT_SUBSET_CAP) -> Fraction:
    """``sum over nonempty X of |A^-(X)| / (C(n,|X|) |X|)``; equals the block count."""
    n = p.n
    lower = lower_size_by_cardinality(p, cap)
    return sum((Fraction(lower[k], comb(n, k) * k) for k in range(1, n + 1)), Fraction(0))


def az_identity_sum(family: Sequence[SubsetMask], cap: int = DEFAULT_SUBSET_CAP) -> Fraction:
    """``sum over nonempty X of |F(X)| / (C(n,|X|) |X|)``, ``F(X)`` the meet of members inside ``X``.

    ``F(X)`` is empty when no member of the family lies inside ``X``.
    """
    if not family:
        raise ValueError("family must be nonempty")
    n = family[0].n
    for a in family:
        if a.n != n:
            raise DimensionMismatchError("family members have different ground sets")
        if not a.bits:
            raise ValueError("family members must be nonempty")
    _check_cap(n, cap)
    pop, _, _ = _subset_tables(n)
    xs = np.arange(1 << n, dtype=np.int64)
    meet = np.full(1 << n, (1 << n) - 1, dtype=np.int64)
    covered = np.zeros(1 << n, dtype=bool)
    for a in family:
        inside = (xs & a.bits) == a.bits
        meet = np.where(inside, meet & a.bits, meet)
        covered |= inside
    sizes = _sum_by_size(np.where(covered, pop[meet], 0), n)
    return sum((Fraction(sizes[k], comb(n, k) * k) for k in range(1, n + 1)), Fraction(0))
