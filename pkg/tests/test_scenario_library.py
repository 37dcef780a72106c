"""
Testes da biblioteca de cenários: casos paramétricos, formas fechadas e varreduras
"""

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from modules.dof_region import FdBounds, compare, fd_bounds, fdp_bounds
from modules.errors import InvalidScenarioError
from modules.interval_set import EMPTY, normalize
from modules.network_scenario import validate
from modules.scenario_library import (
    BUILTIN_SCENARIOS,
    CaseKind,
    ScenarioSampler,
    SweepGeometry,
    SweepResult,
    build_case,
    case_parameters,
    fully_overlapped,
    fully_overlapped_bounds,
    length_sweep,
    overlap_supports,
    overlap_sweep,
    resolve_case,
    random_scenario,
    sweep_row,
    symmetric_spread,
    symmetric_spread_bounds,
    symmetric_spread_is_rectangular,
)
from strategies import half_lengths, interval_sets

F = Fraction
UNIT = normalize([(0, 1)])


class TestCases:

    def test_aliases(self):
        assert resolve_case("a") is CaseKind.FULLY_OVERLAPPED
        assert resolve_case(" B ") is CaseKind.SYMMETRIC_SPREAD
        assert resolve_case("asymmetric_arrays") is CaseKind.ASYMMETRIC_ARRAYS

    def test_unknown_case(self):
        with pytest.raises(KeyError):
            resolve_case("z")

    def test_case_parameters(self):
        assert case_parameters("a") == ("l_bs", "l_usr", "psi")

    def test_builtin_without_params(self, mixed_support):
        assert build_case("mixed_support") is mixed_support

    def test_build_from_strings(self):
        s = build_case("b", l="1/2", psi_fwd="-1/2,1/2", psi_back="0,1")
        assert fd_bounds(s) == FdBounds(F(1), F(1), F(2))
        assert compare(s).fd_rectangular

    def test_missing_parameters(self):
        with pytest.raises(InvalidScenarioError) as info:
            build_case("a", l_bs=1)
        assert len(info.value.violations) == 2

    def test_fully_overlapped_needs_support(self):
        with pytest.raises(InvalidScenarioError):
            fully_overlapped(1, 1, EMPTY)

    def test_fully_overlapped_array_lengths(self):
        s = fully_overlapped(2, "1/2", UNIT)
        assert (s.l_t2, s.l_r1) == (F(2), F(2))
        assert (s.l_t1, s.l_r2) == (F(1, 2), F(1, 2))

    def test_builtins_are_valid(self):
        for s in BUILTIN_SCENARIOS.values():
            assert validate(s) == []


# -- Formas fechadas -----------------------------------------------------------

@given(half_lengths(), half_lengths(), interval_sets())
@settings(max_examples=150, deadline=None)
def test_fully_overlapped_closed_form(l_bs, l_usr, psi):
    assume(not psi.is_empty)
    s = fully_overlapped(l_bs, l_usr, psi)
    assert fully_overlapped_bounds(l_bs, l_usr, psi) == (fd_bounds(s), fdp_bounds(s))


@given(half_lengths(), interval_sets(), interval_sets())
@settings(max_examples=200, deadline=None)
def test_symmetric_spread_closed_form(l, fwd, back):
    s = symmetric_spread(l, fwd, back)
    assert fd_bounds(s) == symmetric_spread_bounds(l, fwd, back)
    assert fd_bounds(s) == fdp_bounds(s)


@given(half_lengths(), interval_sets(), interval_sets())
@settings(max_examples=200, deadline=None)
def test_symmetric_spread_rectangular_iff(l, fwd, back):
    c = compare(symmetric_spread(l, fwd, back))
    assert c.fd_rectangular == symmetric_spread_is_rectangular(fwd, back)


@given(interval_sets())
@settings(max_examples=100, deadline=None)
def test_identical_supports_collapse_regions(psi):
    assume(not psi.is_empty)
    c = compare(symmetric_spread("1/2", psi, psi))
    assert c.code == "hd=fd=fdp"


# -- Varreduras ----------------------------------------------------------------

class TestOverlapSweep:

    def test_sum_dof_follows_overlap(self):
        result = overlap_sweep("1/2", 5)
        assert [row.param for row in result.rows] == [F(0), F(1, 4), F(1, 2), F(3, 4), F(1)]
        assert [row.d_sum_fd for row in result.rows] == [F(2), F(2), F(2), F(3, 2), F(1)]
        assert [row.rect_fd for row in result.rows] == [True, True, True, False, False]
        assert result.rows[-1].classification.code == "hd=fd=fdp"
        assert result.settings["steps"] == "5"

    def test_geometries_agree(self):
        sliding = overlap_sweep("1/2", 9, SweepGeometry.SLIDING)
        mirrored = overlap_sweep("1/2", 9, "mirrored")
        assert [r.d_sum_fd for r in sliding.rows] == [r.d_sum_fd for r in mirrored.rows]

    def test_supports_have_unit_measure(self):
        for geometry in SweepGeometry:
            fwd, back = overlap_supports(F(1, 3), geometry)
            assert fwd.measure == back.measure == 1
            assert (fwd & back).measure == F(1, 3)

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            overlap_sweep("1/2", 1)
        with pytest.raises(ValueError):
            overlap_supports(F(3, 2))


class TestLengthSweep:

    def test_rows_per_length(self):
        result = length_sweep("1/2", ["1/4", "1/2", 1], UNIT, UNIT)
        assert result.parameter == "l_bs"
        assert [row.d1_max for row in result.rows] == [F(1, 2), F(1), F(1)]
        assert [row.d_sum_fdp for row in result.rows] == [F(1, 2), F(1), F(2)]

    def test_values_must_increase(self):
        with pytest.raises(ValueError):
            length_sweep("1/2", [1, "1/2"], UNIT, UNIT)
        with pytest.raises(ValueError):
            length_sweep("1/2", [], UNIT, UNIT)

    def test_result_checks_order(self, mixed_support):
        rows = [sweep_row(F(1), mixed_support), sweep_row(F(1), mixed_support)]
        with pytest.raises(ValueError):
            SweepResult("x", rows)


# -- Cenários aleatórios -------------------------------------------------------

class TestSampler:

    def test_same_seed_same_scenarios(self):
        a = ScenarioSampler(np.random.default_rng(3)).sample_many(5)
        b = ScenarioSampler(np.random.default_rng(3)).sample_many(5)
        assert a == b
        assert a[0].label == "random-0"

    def test_bounded_denominators(self):
        for s in ScenarioSampler(np.random.default_rng(0), max_denominator=4).sample_many(20):
            assert validate(s) == []
            for support in s.supports().values():
                assert all(4 % p.denominator == 0 for p in support.endpoints())

    def test_shortcut(self):
        assert validate(random_scenario(np.random.default_rng(1))) == []

    def test_rejects_bad_denominator(self):
        with pytest.raises(ValueError):
            ScenarioSampler(np.random.default_rng(0), max_denominator=0)


@given(st.integers(0, 2 ** 16))
@settings(max_examples=30, deadline=None)
def test_sampled_regions_are_nested(seed):
    s = random_scenario(np.random.default_rng(seed))
    c = compare(s)
    assert c.code.count("!") == 0
