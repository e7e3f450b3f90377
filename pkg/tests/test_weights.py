from fractions import Fraction
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import weight_oracle
from roughbound.weights import (
    ObjectiveProfile,
    WeightSpec,
    big_f,
    big_f_closed,
    binom,
    f_via_lemma1,
    g_profile,
    harmonic,
    harmonic_tail,
    lemma_lower_sum,
    lemma_upper_sum,
    normalizer,
    shape_analysis,
    thu_closed,
    thu_sum,
    total_weight,
    weight_value,
)


def test_weight_examples():
    assert weight_value(WeightSpec(1, 4), 0) == 1
    assert weight_value(WeightSpec(2, 4), 0) == 0
    assert weight_value(WeightSpec(2, 4), 3) == Fraction(1, 3)
    assert weight_value(WeightSpec(3, 4), 2) == Fraction(1, 12)


def test_normalizer_examples():
    assert normalizer(WeightSpec(1, 5)) == 32
    assert normalizer(WeightSpec(2, 2)) == Fraction(5, 2)
    assert normalizer(WeightSpec(3, 3)) == Fraction(11, 6)


@pytest.mark.parametrize("j", [1, 2, 3])
@pytest.mark.parametrize("n", range(1, 15))
def test_normalizer_is_total_weight(j, n):
    spec = WeightSpec(j, n)
    w = weight_oracle(j, n)
    assert normalizer(spec) == total_weight(spec) == sum(comb(n, k) * w(k) for k in range(n + 1))


def test_invalid_specs():
    with pytest.raises(ValueError):
        WeightSpec(4, 5)
    with pytest.raises(ValueError):
        WeightSpec(1, 0)
    with pytest.raises(ValueError):
        WeightSpec(1, 3, (1, 1, 1, 1))
    with pytest.raises(ValueError):
        WeightSpec(0, 3, (1, 2))
    with pytest.raises(ValueError):
        weight_value(WeightSpec(1, 3), 4)


def test_binom_and_harmonic():
    assert binom(5, -1) == binom(5, 6) == binom(-1, 0) == 0
    assert binom(5, 2) == 10
    assert harmonic(4) == Fraction(25, 12)
    assert harmonic_tail(4, 2) == Fraction(7, 12)
    assert harmonic_tail(4, 4) == 0


@pytest.mark.parametrize("j", [1, 3])
def test_closed_f_matches_definition(j):
    for n in range(1, 31):
        spec = WeightSpec(j, n)
        assert all(big_f_closed(spec, a) == big_f(spec, a) for a in range(1, n + 1))


def test_closed_f_values():
    assert big_f_closed(WeightSpec(1, 5), 2) == 16
    assert big_f_closed(WeightSpec(3, 4), 2) == Fraction(1, 2) + Fraction(7, 12)


def test_lemma1_example():
    # {1},{2,3,4} under the uniform weight: 36 subsets-worth of boundary
    assert f_via_lemma1((3, 1), WeightSpec(1, 4)) == 36
    assert f_via_lemma1((4,), WeightSpec(1, 4)) == 4 * 16 - 4 * 2
    assert f_via_lemma1((1, 1, 1), WeightSpec(2, 3)) == 0


def test_lemma1_rejects_bad_sizes():
    with pytest.raises(ValueError):
        f_via_lemma1((2, 1), WeightSpec(1, 4))
    with pytest.raises(ValueError):
        f_via_lemma1((4, 0), WeightSpec(1, 4))


@st.composite
def compositions(draw, max_n=20):
    n = draw(st.integers(2, max_n))
    cuts = sorted(draw(st.sets(st.integers(1, n - 1))))
    bounds = [0, *cuts, n]
    return n, [y - x for x, y in zip(bounds, bounds[1:])]


@given(compositions(), st.sampled_from([1, 2, 3]))
def test_lemma1_bounds(comp, j):
    n, sizes = comp
    spec = WeightSpec(j, n)
    f = f_via_lemma1(sizes, spec)
    assert 0 <= f <= n * total_weight(spec)
    assert (f == 0) == (len(sizes) == n)


def test_profile_examples():
    p1 = g_profile(WeightSpec(1, 8))
    assert [p1.g(a) for a in range(1, 5)] == [Fraction(1, 2), Fraction(1, 2), Fraction(3, 8), Fraction(1, 4)]
    p2 = g_profile(WeightSpec(2, 6))
    assert p2.g(2) - p2.g(1) == Fraction(29, 60)


@pytest.mark.parametrize("n", range(3, 31))
def test_j3_second_difference(n):
    prof = g_profile(WeightSpec(3, n))
    assert all(prof.second_difference(a) == Fraction(-1, a) for a in range(2, n))
    shape = shape_analysis(prof)
    assert shape.c == n and not shape.lin_equality and shape.valid


@pytest.mark.parametrize("n", range(4, 25))
def test_j1_shape(n):
    prof = g_profile(WeightSpec(1, n))
    shape = shape_analysis(prof)
    assert (shape.c, shape.lin_equality, shape.valid) == (3, True, True)
    assert 2 * prof.g(3) == prof.g(2) + prof.g(4)


@pytest.mark.parametrize("n", range(6, 25))
def test_j2_shape_and_monotonicity(n):
    prof = g_profile(WeightSpec(2, n))
    shape = shape_analysis(prof)
    assert (shape.c, shape.lin_equality, shape.valid) == (4, False, True)
    assert prof.g(2) > prof.g(1)
    assert all(prof.g(a + 1) < prof.g(a) for a in range(2, n))


def test_custom_table_shape_may_be_invalid():
    # second differences +1, -3, +3: convex before concave
    spec = WeightSpec.from_table([0] * 6)
    assert g_profile(spec).values == (0,) * 5
    prof = ObjectiveProfile(0, 5, tuple(Fraction(v) for v in (1, 2, 4, 3, 5)))
    assert not shape_analysis(prof).valid


def test_custom_table_matches_builtin():
    n = 7
    builtin = WeightSpec(2, n)
    custom = WeightSpec.from_table([weight_value(builtin, k) for k in range(n + 1)])
    assert all(big_f_closed(custom, a) == big_f_closed(builtin, a) for a in range(1, n + 1))
    assert f_via_lemma1((3, 2, 2), custom) == f_via_lemma1((3, 2, 2), builtin)


def test_csv_export():
    text = g_profile(WeightSpec(1, 3)).to_csv()
    lines = text.strip().split("\n")
    assert lines[0] == "a,g,g_decimal"
    assert lines[1] == "1,1/2,0.5"
    assert lines[3].startswith("3,3/8,0.375")


def test_identity_examples():
    assert thu_sum(0, 1, 1) == thu_closed(0, 1, 1) == 1
    assert thu_sum(1, 1, 2) == Fraction(1, 2) + Fraction(1, 2) == thu_closed(1, 1, 2)
    assert lemma_lower_sum(5, 2) == Fraction(1, 2)
    assert lemma_upper_sum(5, 2) == harmonic_tail(5, 2)
    with pytest.raises(ValueError):
        thu_sum(2, 1, 2)
