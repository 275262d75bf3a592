import pytest
from hypothesis import given, strategies as st

from cgalg.partitions import (
    O,
    d,
    d_closed_form,
    d_enum,
    d_series,
    delta_degree_identity,
    dims_table,
    e,
    e_enum,
    e_half_closed_form,
    e_series,
    odd_partition_identity,
)
from oracles import Oracle, odd_partitions_brute

ELL_TWICE = {"1/2": 1, "3/2": 3, "5/2": 5, "7/2": 7}


@pytest.mark.parametrize("ell", list(ELL_TWICE))
def test_closed_forms_match_both_routes(ell):
    for m in range(31):
        assert d_closed_form(ell, m) == d_series(ell, m) == d_enum(ell, m)


@pytest.mark.parametrize("ell", ["1/2", "3/2", "5/2"])
def test_counts_match_brute_force(ell):
    o = Oracle(ELL_TWICE[ell])
    for m in range(13):
        labels = o.labels(m)
        assert d(ell, m) == len(labels)
        assert e(ell, m) == sum(o.mu_weight(x) for x in labels)
        assert O(ell, m) == odd_partitions_brute(m, ELL_TWICE[ell])


def test_small_tables():
    assert [d("1/2", m) for m in range(5)] == [1, 1, 2, 2, 3]
    assert [e("1/2", m) for m in range(5)] == [0, 1, 2, 4, 6]
    assert [r["d"] for r in dims_table("3/2", 6)] == [1, 1, 2, 3, 4, 5, 7]


@given(st.integers(0, 40))
def test_half_weight_closed_form(m):
    assert e("1/2", m) == e_half_closed_form(m) == e_series("1/2", m) == e_enum("1/2", m)


@given(st.sampled_from(list(ELL_TWICE)), st.integers(0, 30))
def test_partition_identities(ell, m):
    assert odd_partition_identity(ell, m)
    assert delta_degree_identity(ell, m)


@given(st.sampled_from(list(ELL_TWICE)), st.integers(0, 30))
def test_dimension_grows_with_level(ell, m):
    assert d(ell, m + 2) >= d(ell, m)
    assert d(ell, -1) == 0 and O(ell, -1) == 0


def test_no_closed_form_beyond_seven_halves():
    with pytest.raises(ValueError):
        d_closed_form("9/2", 3)
