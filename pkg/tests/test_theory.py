from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from reference import gamma_sets

from ppic_routes.errors import OutOfRange, UnsupportedFamily
from ppic_routes.mesh import Family, MeshSpec, Side
from ppic_routes.theory import (
    PathType,
    max_path_length,
    multi_path_upper_bound,
    realizability_sets,
    realizable_lengths,
    single_path_realizable,
    stats_bounds,
    type_constraints,
)

SQ = lambda n, m: MeshSpec(Family.SQUARE, n, m)  # noqa: E731


def test_max_path_length_examples():
    assert max_path_length(SQ(2, 2)) == 17
    assert max_path_length(MeshSpec.parse("hex:1x1")) == 7
    assert max_path_length(MeshSpec.parse("tri:1x2")) == 7


def test_realizable_examples():
    assert single_path_realizable(SQ(2, 3), 7).realizable
    assert single_path_realizable(SQ(2, 3), 7).window == "odd_cols"
    assert not single_path_realizable(SQ(2, 3), 3).realizable
    assert not single_path_realizable(SQ(2, 2), 3).realizable
    assert not single_path_realizable(SQ(2, 2), 7).realizable
    assert single_path_realizable(SQ(1, 1), 3).realizable


def test_out_of_range_lengths():
    assert not single_path_realizable(SQ(2, 2), 0).realizable
    assert not single_path_realizable(SQ(2, 2), 18).realizable
    assert single_path_realizable(MeshSpec.parse("hex:1x1"), 7).realizable


def test_reason_names_the_failing_window():
    reason = single_path_realizable(SQ(2, 3), 3).reason
    assert "3 (mod 4)" in reason and "7 ≤ x ≤ 19" in reason


@given(st.integers(1, 8), st.integers(1, 8))
def test_closed_form_matches_longhand(n, m):
    assert set(realizable_lengths(SQ(n, m))) == gamma_sets(n, m)


@given(st.integers(1, 8), st.integers(1, 8))
def test_windows_partition_realizable_lengths(n, m):
    sets = realizability_sets(SQ(n, m))
    windows = sets.active()
    for x in range(1, max_path_length(SQ(n, m)) + 1):
        hits = [w.name for w in windows if x in w]
        if x % 4 != 3:
            assert hits == ["core"]
        else:
            assert "core" not in hits


def test_realizability_sets_square_only():
    with pytest.raises(UnsupportedFamily):
        realizability_sets(MeshSpec.parse("hex:1x1"))


def test_type_constraint_examples():
    c = type_constraints(PathType.OPPOSITE, Side.LEFT, 2, 2)
    assert (c.residues, c.min_length, c.max_length) == ({1}, 5, 13)
    assert type_constraints(PathType.SAME, Side.TOP, 3, 4).min_length == 1
    c = type_constraints(PathType.OPPOSITE, Side.TOP, 3, 2)
    assert (c.residues, c.min_length, c.max_length) == ({3}, 7, 19)
    c = type_constraints(PathType.ADJACENT, Side.RIGHT, 2, 3)
    assert (c.residues, c.min_length, c.max_length) == ({0, 2}, 2, 24)


def test_multi_path_examples():
    for n, m in [(1, 1), (2, 3), (5, 4)]:
        b = multi_path_upper_bound(SQ(n, m), 1)
        assert b.y_max == 2 * n + 2 * m and b.floor_component is None
    b = multi_path_upper_bound(SQ(2, 3), 2)
    assert b.components() == {"floor_component": 24, "count_component": 10, "C1": 4, "C2": None}
    assert b.y_max == 4 and b.active == ("C1",)
    b = multi_path_upper_bound(SQ(2, 2), 3)
    assert b.y_max == 0 and b.blocked and b.residue_block == 0


def test_even_cap_premise_flag():
    assert multi_path_upper_bound(SQ(21, 21), 2).even_cap_unproven is False
    assert multi_path_upper_bound(SQ(3, 3), 8).even_cap_unproven is True
    assert multi_path_upper_bound(SQ(3, 3), 7).even_cap_unproven is False


def test_multi_path_other_families():
    b = multi_path_upper_bound(MeshSpec.parse("hex:2x2"), 5)
    assert b.components() == {"floor_component": 6, "count_component": 14, "C1": None, "C2": None}
    assert multi_path_upper_bound(MeshSpec.parse("tri:1x2"), 1).y_max == 4


def test_multi_path_rejects_zero():
    with pytest.raises(OutOfRange):
        multi_path_upper_bound(SQ(2, 2), 0)


def test_stats_bounds_values():
    b = stats_bounds(SQ(2, 2), 4)
    assert (b.mean, b.max_length, b.variance_bound) == (3, 17, 28)
    # hex 1x1 with one cell consumed: 6 paths sharing one extra 6
    assert stats_bounds(MeshSpec.parse("hex:1x1"), 1).mean == 2
    with pytest.raises(OutOfRange):
        stats_bounds(SQ(2, 2), 5)


@given(st.integers(1, 6), st.integers(1, 6), st.data())
def test_variance_bound_closed_form(n, m, data):
    k = data.draw(st.integers(0, n * m))
    expected = Fraction(8 * k * k, n + m) - Fraction(4 * k * k, (n + m) ** 2)
    assert stats_bounds(SQ(n, m), k).variance_bound == expected
