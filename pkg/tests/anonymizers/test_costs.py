import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sda_toolkit.anonymizers import (
    GroupIndex,
    base_mergence_cost,
    diversity,
    group_split_size,
    linked_split_parts,
    mergence_cost,
    single_split_parts,
    single_split_size,
)
from tests.utils import min_partition_size


@pytest.mark.parametrize(
    "d_v, d, redirectable, supply, expected",
    [
        pytest.param(3, 3, 0, None, 0, id="same-degree"),
        pytest.param(3, 5, 0, None, 2, id="raise"),
        pytest.param(3, 5, 0, 1, math.inf, id="raise-without-partners"),
        pytest.param(3, 5, 0, 2, 2, id="raise-with-exact-partners"),
        pytest.param(4, 2, 2, None, 0, id="lower-by-redirection"),
        pytest.param(4, 2, 1, None, math.inf, id="not-enough-redirectable"),
        pytest.param(4, 2, 0, None, math.inf, id="lower-without-redirection"),
    ],
)
def test_mergence_cost(d_v, d, redirectable, supply, expected):
    assert mergence_cost(d_v, d, redirectable, supply) == expected


def test_base_cost_is_mergence_without_redirection():
    for d_v in range(1, 6):
        for d in range(1, 6):
            assert base_mergence_cost(d_v, d) == mergence_cost(d_v, d)


def test_diversity():
    assert diversity([0, 1, 1, 2], 3) == 1
    assert diversity([0, 1, 1], 3) == math.inf


@pytest.mark.parametrize(
    "d_v, degrees, expected",
    [
        pytest.param(5, [2, 3], [3, 2], id="two-parts"),
        pytest.param(7, [1, 3, 5], [5, 1, 1], id="largest-first"),
        pytest.param(6, [1, 3, 5], [5, 1], id="tie-prefers-largest"),
        pytest.param(6, [1, 3, 4], [3, 3], id="not-greedy"),
        pytest.param(4, [3], None, id="no-decomposition"),
        pytest.param(4, [], None, id="no-groups"),
        pytest.param(3, [3, 7], [3], id="single-part"),
    ],
)
def test_single_split_parts(d_v, degrees, expected):
    assert single_split_parts(d_v, degrees) == expected


def test_single_split_reads_ksda_groups_only():
    groups = GroupIndex(k=2)
    groups.add(10, 2, community=0)
    groups.add(11, 2, community=1)
    groups.add(12, 3, community=0)
    assert single_split_parts(5, groups) is None
    assert single_split_parts(4, groups) == [2, 2]


@settings(max_examples=100, deadline=None)
@given(
    d_v=st.integers(min_value=1, max_value=30),
    degrees=st.sets(st.integers(min_value=1, max_value=30), min_size=1, max_size=6),
)
def test_single_split_size_is_minimal(d_v: int, degrees: set[int]):
    expected = min_partition_size(d_v, sorted(degrees))
    size = single_split_size(d_v, degrees)
    assert size == (math.inf if expected is None else expected)
    parts = single_split_parts(d_v, degrees)
    if parts is not None:
        assert sum(parts) == d_v
        assert set(parts) <= degrees
        assert parts == sorted(parts, reverse=True)


def test_group_split_size():
    assert group_split_size(3, [3, 5, 4, 2]) == 4
    assert group_split_size(3, [3, 3]) == 0


@pytest.mark.parametrize(
    "d_v, degrees, expected",
    [
        pytest.param(4, [2, 3], [3, 3], id="two-ends"),
        pytest.param(5, [2, 3], [3, 3, 3], id="inner-substitute"),
        pytest.param(2, [2], [2, 2], id="degree-two-ends"),
        pytest.param(3, [1, 2], None, id="no-inner-degree"),
        pytest.param(2, [1], None, id="degree-one-only"),
    ],
)
def test_linked_split_parts(d_v, degrees, expected):
    assert linked_split_parts(d_v, degrees) == expected


@settings(max_examples=100, deadline=None)
@given(
    d_v=st.integers(min_value=2, max_value=30),
    degrees=st.sets(st.integers(min_value=1, max_value=30), min_size=1, max_size=6),
)
def test_linked_split_parts_cover_the_degree(d_v: int, degrees: set[int]):
    parts = linked_split_parts(d_v, degrees)
    if parts is None:
        return
    first, *middle, last = parts
    assert set(parts) <= degrees
    assert min(first, last) >= 2
    assert all(d >= 3 for d in middle)
    assert (first - 1) + (last - 1) + sum(d - 2 for d in middle) == d_v
