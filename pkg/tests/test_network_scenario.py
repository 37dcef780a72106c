"""
Testes do cenário de rede e das dimensões de operadores
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from modules.errors import InvalidScenarioError
from modules.interval_set import normalize
from modules.network_scenario import (
    ensure_valid,
    make_scenario,
    operator_dims,
    p2p_dof,
    scale_lengths,
    swap_flows,
    validate,
)
from strategies import scenarios


def test_mixed_support_dims(mixed_support):
    dims = operator_dims(mixed_support)
    assert dims.dim_t2 == 2
    assert dims.dim_r1 == 1
    assert dims.rank_h12 == Fraction(2, 5)
    assert dims.null_h12 == Fraction(8, 5)
    assert dims.rank_h11 == 1
    assert dims.perp_h11 == 0


def test_interference_free_dims(interference_free):
    dims = operator_dims(interference_free)
    assert dims.rank_h12 == 0
    assert dims.rank_h21 == 0
    assert dims.null_h12 == dims.dim_t2
    assert dims.perp_h11 == 0


def test_p2p_dof_takes_smaller_side():
    assert p2p_dof("1/2", normalize([(0, 1)]), 1, normalize([(0, "1/4")])) == Fraction(1, 2)


def test_make_scenario_converts_lengths():
    s = make_scenario("x", l_t1="1/2", l_t2=1, l_r1=0.25, l_r2=2)
    assert s.l_r1 == Fraction(1, 4)
    assert s.psi_t11.is_empty


def test_validate_lists_every_violation():
    s = make_scenario(l_t1=0, l_t2=1, l_r1=-1, l_r2=1)
    violations = validate(s)
    assert len(violations) == 2
    assert violations[0].startswith("l_t1 deve ser > 0")
    with pytest.raises(InvalidScenarioError) as info:
        ensure_valid(s)
    assert info.value.violations == violations


def test_scale_rejects_non_positive(mixed_support):
    with pytest.raises(ValueError):
        scale_lengths(mixed_support, 0)


@given(scenarios())
@settings(max_examples=150, deadline=None)
def test_swap_is_involution(s):
    assert swap_flows(swap_flows(s)) == s


@given(scenarios())
@settings(max_examples=150, deadline=None)
def test_swap_exchanges_dims(s):
    assert operator_dims(swap_flows(s)) == operator_dims(s).swapped()


@given(scenarios(), st.sampled_from([Fraction(1, 3), Fraction(2), Fraction(7)]))
@settings(max_examples=150, deadline=None)
def test_dims_are_homogeneous(s, c):
    assert operator_dims(scale_lengths(s, c)) == operator_dims(s).scaled(c)


@given(scenarios())
@settings(max_examples=150, deadline=None)
def test_rank_nullity(s):
    dims = operator_dims(s)
    assert dims.null_h12 + dims.rank_h12 == dims.dim_t2
    assert dims.null_h21 + dims.rank_h21 == dims.dim_t1
    assert dims.perp_h11 + dims.rank_h11 == dims.dim_r1
    assert dims.perp_h22 + dims.rank_h22 == dims.dim_r2
