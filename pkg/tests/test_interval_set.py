"""
Testes da álgebra de conjuntos de intervalos
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings

from modules.errors import MalformedPairError, OutOfRangeError
from modules.interval_set import (
    EMPTY,
    FULL_AXIS,
    IntervalSet,
    as_rational,
    breakpoints,
    complement,
    normalize,
)
from strategies import interval_sets


class TestNormalize:

    def test_merges_touching_pieces(self):
        assert normalize([(0, "1/2"), ("1/2", 1)]) == normalize([(0, 1)])

    def test_merges_overlapping_and_sorts(self):
        s = normalize([("1/2", 1), (-1, 0), ("-1/2", "3/4")])
        assert s.pieces == ((Fraction(-1), Fraction(1)),)

    def test_drops_degenerate_pairs(self):
        assert normalize([("1/3", "1/3")]) == EMPTY

    def test_reversed_pair_is_malformed(self):
        with pytest.raises(MalformedPairError):
            normalize([(1, 0)])

    def test_endpoint_outside_axis(self):
        with pytest.raises(OutOfRangeError) as info:
            normalize([(0, 2)])
        assert info.value.value == 2

    def test_pair_with_wrong_arity(self):
        with pytest.raises(MalformedPairError):
            normalize([(0, "1/2", 1)])

    def test_constructor_rejects_non_canonical(self):
        with pytest.raises(ValueError):
            IntervalSet(((Fraction(0), Fraction(1, 2)), (Fraction(1, 2), Fraction(1))))


class TestOperations:

    def test_measure_is_exact(self):
        assert normalize([(0, "1/3"), ("2/3", 1)]).measure == Fraction(2, 3)

    def test_intersection_and_difference(self):
        a = normalize([("-1/2", "1/2")])
        b = normalize([(0, 1)])
        assert (a & b) == normalize([(0, "1/2")])
        assert (a - b) == normalize([("-1/2", 0)])
        assert (b - a) == normalize([("1/2", 1)])

    def test_complement_of_empty_is_axis(self):
        assert complement(EMPTY) == FULL_AXIS
        assert complement(FULL_AXIS) == EMPTY

    def test_half_open_membership(self):
        s = normalize([(0, "1/2")])
        assert s.contains(0)
        assert not s.contains("1/2")

    def test_breakpoints_are_sorted_and_unique(self):
        sets = [normalize([(0, "1/2")]), normalize([("-1/2", "1/2")])]
        assert breakpoints(sets) == [Fraction(-1, 2), Fraction(0), Fraction(1, 2)]

    def test_str(self):
        assert str(EMPTY) == "{}"
        assert str(normalize([(0, "1/2")])) == "[0, 1/2)"


class TestAsRational:

    def test_float_uses_shortest_repr(self):
        assert as_rational(0.1) == Fraction(1, 10)

    def test_strings(self):
        assert as_rational(" 1/3 ") == Fraction(1, 3)
        assert as_rational("0.25") == Fraction(1, 4)

    def test_rejects_bool_and_nan(self):
        with pytest.raises(TypeError):
            as_rational(True)
        with pytest.raises(ValueError):
            as_rational(float("nan"))


@given(interval_sets(), interval_sets())
@settings(max_examples=200, deadline=None)
def test_inclusion_exclusion(a, b):
    assert (a | b).measure + (a & b).measure == a.measure + b.measure


@given(interval_sets(), interval_sets())
@settings(max_examples=200, deadline=None)
def test_difference_and_intersection_partition(a, b):
    assert ((a - b) & (a & b)) == EMPTY
    assert ((a - b) | (a & b)) == a


@given(interval_sets())
@settings(max_examples=200, deadline=None)
def test_double_complement(a):
    assert complement(complement(a)) == a
    assert a.measure + complement(a).measure == 2


@given(interval_sets(), interval_sets())
@settings(max_examples=100, deadline=None)
def test_union_commutes(a, b):
    assert (a | b) == (b | a)
    assert (a & b) == (b & a)
