from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ppic_routes.advisor import Verdict, check_feasibility, minimal_sizes, minimal_square_size
from ppic_routes.config import from_bits
from ppic_routes.errors import EmptyFrontier, InvalidSpec, NoSizeWithinCap
from ppic_routes.mesh import MeshSpec, build_mesh
from ppic_routes.oracle import _bits
from ppic_routes.tracer import path_summaries

LAMBDA1 = [2, 4, 6, 8]
LAMBDA2 = [6, 10, 14, 18, 22, 26]
LAMBDA3 = [3, 5, 7, 9, 11, 13]


def test_reverse_examples_on_2x2():
    r = check_feasibility(2, 2, [1, 18])
    assert r.verdict is Verdict.FAILS_NECESSARY and r.violated() == ["max_length"]
    assert "17" in r.violations[0].detail
    r = check_feasibility(2, 2, [1, 2, 4, 5, 8, 10])
    assert r.violated() == ["path_sum"] and "30" in r.violations[0].detail
    r = check_feasibility(2, 2, [1, 1, 1, 1, 2, 4, 5, 10])
    assert "mean_format" in r.violated()
    assert "3.125" in next(v.detail for v in r.violations if v.name == "mean_format")


def test_lists_every_violation():
    r = check_feasibility(2, 2, [3, 20, 2, 2, 2, 2, 2, 2, 2])
    assert {"max_length", "path_sum", "path_count", "single_path_residue"} <= set(r.violated())


def test_square_sizes():
    assert minimal_square_size(LAMBDA1).size == 2
    s = minimal_square_size(LAMBDA2)
    assert s.size == 5
    assert [v.name for v in s.binding] == ["path_sum"]
    with pytest.raises(NoSizeWithinCap):
        minimal_square_size(LAMBDA3)


def test_frontiers():
    assert (1, 8) in minimal_sizes(LAMBDA3)
    assert minimal_sizes(LAMBDA3) == [(1, 8), (8, 1)]
    assert minimal_sizes([1]) == [(1, 1)]
    assert (2, 2) in minimal_sizes(LAMBDA1)


def test_lambda1_is_realizable_on_2x2():
    g = build_mesh(MeshSpec.parse("square:2x2"))
    want = sorted(LAMBDA1)
    for index in range(1 << g.n_tbu):
        cross = [b == "1" for b in _bits(index, g.n_tbu)]
        lengths = [l for *_, l in path_summaries(g, cross)]
        if all(lengths.count(x) >= want.count(x) for x in set(want)):
            assert from_bits(g, _bits(index, g.n_tbu))
            break
    else:
        pytest.fail("no 2x2 configuration routes [2, 4, 6, 8] at once")


def test_common_factor_note():
    r = check_feasibility(5, 5, LAMBDA2)
    assert r.passes and any("factor 2" in n for n in r.notes)


def test_even_cap_applied_only_with_room():
    assert "even_length_corner" in check_feasibility(8, 8, [2] * 5).violated()
    r = check_feasibility(3, 3, [8] * 5)
    assert "even_length_corner" not in r.violated()
    assert any("skipped" in n for n in r.notes)


def test_mean_format_only_when_all_paths_listed():
    assert "mean_format" not in check_feasibility(2, 2, [1, 1, 1, 1, 2, 4, 5]).violated()


def test_invalid_input():
    with pytest.raises(InvalidSpec):
        check_feasibility(2, 2, [])
    with pytest.raises(InvalidSpec):
        check_feasibility(2, 2, [0, 3])
    with pytest.raises(EmptyFrontier):
        minimal_sizes([3, 3, 3, 3, 3, 3, 3, 3, 3], 2, 2)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(1, 30), min_size=1, max_size=6))
def test_monotone_without_residue_three(lam):
    lam = [x + 1 if x % 4 == 3 else x for x in lam]
    for n in range(1, 5):
        for m in range(1, 5):
            if check_feasibility(n, m, lam).passes:
                assert check_feasibility(n + 1, m, lam).passes or any(x % 2 == 0 for x in lam)
                assert check_feasibility(n, m + 1, lam).passes or any(x % 2 == 0 for x in lam)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(1, 25), min_size=1, max_size=5))
def test_frontier_is_pareto_and_passing(lam):
    try:
        frontier = minimal_sizes(lam, 12, 12)
    except EmptyFrontier:
        return
    assert frontier == sorted(frontier)
    for n, m in frontier:
        assert check_feasibility(n, m, lam).passes
        assert not any(check_feasibility(a, b, lam).passes for a in range(1, n + 1) for b in range(1, m + 1) if (a, b) != (n, m))
