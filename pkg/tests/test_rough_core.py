from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import subset_sum_oracle, weight_oracle
from roughbound.rough_core import (
    DimensionMismatchError,
    EnumerationCapError,
    SetPartition,
    SubsetMask,
    az_analogon_sum,
    az_identity_sum,
    boundary,
    expected_boundary_exhaustive,
    lower_approx,
    set_partitions,
    upper_approx,
)
from roughbound.weights import WeightSpec, f_via_lemma1

P4 = SetPartition(4, ((1,), (2, 3, 4)))


def S(n, *xs):
    return SubsetMask.from_members(n, xs)


@st.composite
def partitions(draw, max_n=7):
    n = draw(st.integers(1, max_n))
    labels = draw(st.lists(st.integers(0, n - 1), min_size=n, max_size=n))
    blocks = {}
    for i, lab in enumerate(labels, start=1):
        blocks.setdefault(lab, []).append(i)
    return SetPartition(n, tuple(tuple(b) for b in blocks.values()))


@st.composite
def partition_and_subset(draw):
    p = draw(partitions())
    return p, SubsetMask(p.n, draw(st.integers(0, (1 << p.n) - 1)))


def test_approximation_examples():
    x = S(4, 1, 2)
    assert lower_approx(P4, x).members() == (1,)
    assert upper_approx(P4, x).members() == (1, 2, 3, 4)
    assert boundary(P4, x).members() == (2, 3, 4)
    assert boundary(P4, S(4, 2, 3, 4)).members() == ()


@pytest.mark.parametrize("op", [lower_approx, upper_approx, boundary])
def test_empty_and_full(op):
    assert op(P4, SubsetMask(4)).bits == 0
    if op is not boundary:
        assert op(P4, SubsetMask.full(4)) == SubsetMask.full(4)


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        boundary(P4, S(5, 1))


@given(partition_and_subset())
def test_sandwich_and_complement_symmetry(px):
    p, x = px
    assert lower_approx(p, x).issubset(x) and x.issubset(upper_approx(p, x))
    assert boundary(p, x) == boundary(p, x.complement())


@given(partition_and_subset())
def test_boundary_is_union_of_split_blocks(px):
    p, x = px
    members = set(x.members())
    split = {e for b in p.blocks if set(b) & members and set(b) - members for e in b}
    assert set(boundary(p, x).members()) == split


def test_exhaustive_example_values():
    rep = expected_boundary_exhaustive(P4, 1)
    assert (rep.f_value, rep.normalizer, rep.mu) == (36, 16, Fraction(9, 4))
    assert expected_boundary_exhaustive(SetPartition(2, ((1,), (2,))), 1).f_value == 0


@settings(max_examples=60, deadline=None)
@given(partitions(max_n=6), st.sampled_from([1, 2, 3]))
def test_exhaustive_matches_set_oracle(p, j):
    expected = subset_sum_oracle(p.blocks, p.n, weight_oracle(j, p.n))
    rep = expected_boundary_exhaustive(p, j)
    assert rep.f_value == expected
    assert rep.mu * rep.normalizer == rep.f_value
    assert 0 <= rep.mu <= p.n


@settings(max_examples=40, deadline=None)
@given(partitions(max_n=8), st.sampled_from([1, 2, 3]))
def test_lemma1_matches_exhaustive(p, j):
    assert expected_boundary_exhaustive(p, j).f_value == f_via_lemma1(p.block_sizes(), WeightSpec(j, p.n))


def test_report_depends_only_on_block_sizes():
    a = SetPartition(6, ((1, 2), (3, 4, 5), (6,)))
    b = SetPartition(6, ((1, 6, 3), (2,), (4, 5)))
    for j in (1, 2, 3):
        assert expected_boundary_exhaustive(a, j) == expected_boundary_exhaustive(b, j)


def test_cap_refusal():
    p = SetPartition(6, ((1, 2, 3), (4, 5, 6)))
    with pytest.raises(EnumerationCapError):
        expected_boundary_exhaustive(p, 1, cap=5)
    with pytest.raises(EnumerationCapError):
        az_analogon_sum(p, cap=5)


@pytest.mark.parametrize(
    "n, blocks, expected",
    [(3, ((1,), (2, 3)), 2), (3, ((1,), (2,), (3,)), 3), (1, ((1,),), 1)],
)
def test_az_analogon_examples(n, blocks, expected):
    assert az_analogon_sum(SetPartition(n, blocks)) == expected


@given(partitions(max_n=9))
@settings(deadline=None)
def test_az_analogon_equals_block_count(p):
    assert az_analogon_sum(p) == p.m


def az_oracle(family, n):
    total = Fraction(0)
    for k in range(1, n + 1):
        for xs in combinations(range(1, n + 1), k):
            x = set(xs)
            inside = [set(a.members()) for a in family if set(a.members()) <= x]
            meet = set.intersection(*inside) if inside else set()
            total += Fraction(len(meet), len(list(combinations(range(n), k))) * k)
    return total


def test_az_identity_examples():
    assert az_identity_sum([S(2, 1)]) == 1
    assert az_identity_sum([S(3, 1), S(3, 2), S(3, 3)]) == 1
    assert az_identity_sum([S(1, 1)]) == 1
    assert az_oracle([S(2, 1)], 2) == 1


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6).flatmap(lambda n: st.lists(st.integers(1, (1 << n) - 1), min_size=1, max_size=6).map(lambda bs: [SubsetMask(n, b) for b in bs])))
def test_az_identity_random_families(family):
    n = family[0].n
    assert az_identity_sum(family) == 1 == az_oracle(family, n)


def test_az_identity_rejects_bad_families():
    with pytest.raises(ValueError):
        az_identity_sum([])
    with pytest.raises(ValueError):
        az_identity_sum([SubsetMask(3, 0)])


BELL = [1, 2, 5, 15, 52, 203, 877]


@pytest.mark.parametrize("n", range(1, 8))
def test_set_partition_counts(n):
    parts = list(set_partitions(n))
    assert len(parts) == BELL[n - 1]
    assert len(set(parts)) == len(parts)


@pytest.mark.parametrize("n, m, stirling", [(5, 2, 15), (6, 3, 90), (7, 7, 1), (7, 1, 1)])
def test_set_partitions_with_block_count(n, m, stirling):
    parts = list(set_partitions(n, m))
    assert len(parts) == stirling and all(p.m == m for p in parts)


def test_canonical_form_and_json():
    p = SetPartition(5, ((5, 3), (2, 1), (4,)))
    assert p.blocks == ((1, 2), (3, 5), (4,))
    assert SetPartition.from_json(p.to_json()) == p
    assert p.to_json() == '{"n": 5, "blocks": [[1, 2], [3, 5], [4]]}'


@pytest.mark.parametrize(
    "n, blocks",
    [(3, ((1, 2),)), (3, ((1, 2), (2, 3))), (3, ((1,), (2,), (4,))), (2, ((1, 2), ()))],
)
def test_invalid_partitions(n, blocks):
    with pytest.raises(ValueError):
        SetPartition(n, blocks)
