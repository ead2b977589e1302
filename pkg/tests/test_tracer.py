from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reference import square_path_lengths

from ppic_routes.config import Configuration, all_bar, all_cross, enumerate_configurations, from_cross_set
from ppic_routes.construct import construct_extremal, construct_single_path
from ppic_routes.errors import MalformedSum, UnsupportedFamily
from ppic_routes.mesh import Family, MeshSpec, TbuId, build_mesh
from ppic_routes.theory import PathType, path_sum_spectrum, stats_bounds
from ppic_routes.tracer import classify_path, closed_loops, path_stats, trace, trace_all_paths

SQ11 = build_mesh(MeshSpec.parse("square:1x1"))
SQ22 = build_mesh(MeshSpec.parse("square:2x2"))
SQ23 = build_mesh(MeshSpec.parse("square:2x3"))


def _random_config(mesh, seed):
    rng = random.Random(seed)
    return Configuration(mesh.spec, tuple(rng.random() < 0.5 for _ in range(mesh.n_tbu)))


def test_2x2_always_eight_paths():
    for seed in range(50):
        assert len(trace_all_paths(SQ22, _random_config(SQ22, seed))) == 8


def test_all_bar_sum_fits_spectrum():
    for text in ("square:1x1", "square:2x3", "square:4x2"):
        g = build_mesh(MeshSpec.parse(text))
        total = sum(p.length for p in trace_all_paths(g, all_bar(g)))
        assert path_sum_spectrum(g.spec).k_of(total) is not None


def test_length_four_corner_path():
    c = construct_single_path(SQ22, 4)
    path = next(p for p in trace_all_paths(SQ22, c.config) if (p.start, p.end) == (c.start, c.end))
    assert path.length == 4
    assert classify_path(path) is PathType.ADJACENT


def test_same_side_path_residue():
    # opening a spliced loop keeps both ends on the left side
    c = construct_single_path(SQ22, 9)
    path = next(p for p in trace_all_paths(SQ22, c.config) if p.length == 9)
    assert classify_path(path) is PathType.SAME
    assert path.length % 4 == 1


def test_opposite_side_minimum_on_2x2():
    lengths = {p.length for cfg in enumerate_configurations(SQ22) for p in trace_all_paths(SQ22, cfg)
               if p.start_side.axis == p.end_side.axis and p.start_side is not p.end_side
               and p.start_side.axis == "lr"}
    assert min(lengths) == 5 and 5 % 4 == 1


def test_length_two_is_adjacent():
    for seed in range(100):
        for p in trace_all_paths(SQ23, _random_config(SQ23, seed)):
            if p.length == 2:
                assert classify_path(p) is PathType.ADJACENT


def test_classify_rejects_hex():
    g = build_mesh(MeshSpec.parse("hex:1x1"))
    path = trace_all_paths(g, all_cross(g))[0]
    with pytest.raises(UnsupportedFamily):
        classify_path(path, g)


def test_all_cross_2x2_has_no_loops():
    assert closed_loops(SQ22, all_cross(SQ22)) == []


def test_isolated_cell_is_a_loop_of_four():
    g = build_mesh(MeshSpec.parse("square:3x3"))
    loops = closed_loops(g, all_bar(g))
    assert len(loops) == 9 and all(lp.length == 4 for lp in loops)
    # everything crossed except the centre cell's own four TBUs
    centre = {g.index_of(TbuId.parse(t)) for t in ("12-22", "21-22", "22-23", "22-32")}
    cfg = Configuration(g.spec, tuple(t not in centre for t in range(g.n_tbu)))
    loops = closed_loops(g, cfg)
    assert [sorted(lp.tbus) for lp in loops] == [sorted(centre)]


def test_1x1_exhaustive_edge_cover():
    for cfg in enumerate_configurations(SQ11):
        tr = trace(SQ11, cfg)
        assert sum(p.length for p in tr.paths) + sum(lp.length for lp in tr.loops) == 8


def test_path_stats_extremal_2x2():
    stats = path_stats(trace_all_paths(SQ22, construct_extremal(SQ22, 4)), SQ22)
    assert sorted(stats.lengths) == [1] * 7 + [17]
    assert stats.mean == 3 and stats.variance == 28
    assert stats.variance == stats_bounds(SQ22.spec, 4).variance_bound


def test_path_stats_all_bar_1x1():
    stats = path_stats(trace_all_paths(SQ11, all_bar(SQ11)), SQ11)
    assert (stats.total, stats.k0, stats.mean, stats.variance) == (4, 0, 1, 0)


def test_path_stats_rejects_bad_sum():
    with pytest.raises(MalformedSum):
        path_stats([1, 1, 1, 1, 1, 1, 1, 2], SQ22)


def test_every_2x3_config_respects_max_bound(suite_2x3):
    assert suite_2x3.counterexamples.get("max_length", []) == []
    assert suite_2x3.configs == 2**17


def test_paths_are_canonical():
    for seed in range(20):
        for p in trace_all_paths(SQ23, _random_config(SQ23, seed)):
            assert p.start < p.end


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 3), st.integers(1, 3), st.data())
def test_tracer_matches_reference_model(n, m, data):
    g = build_mesh(MeshSpec(Family.SQUARE, n, m))
    cross = data.draw(st.lists(st.booleans(), min_size=g.n_tbu, max_size=g.n_tbu))
    traced = sorted(p.length for p in trace_all_paths(g, cross))
    assert traced == square_path_lengths(n, m, cross)


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 3), st.integers(1, 3), st.data())
def test_trace_invariants(n, m, data):
    g = build_mesh(MeshSpec(Family.SQUARE, n, m))
    cross = data.draw(st.lists(st.booleans(), min_size=g.n_tbu, max_size=g.n_tbu))
    tr = trace(g, cross)
    ends = [p.start for p in tr.paths] + [p.end for p in tr.paths]
    assert len(set(ends)) == len(ends) == g.n_floating
    used = [t for p in tr.paths for t in p.tbus] + [t for lp in tr.loops for t in lp.tbus]
    assert sorted(used) == sorted(list(range(g.n_tbu)) * 2)
    for p in tr.paths:
        orient = [g.orientation[t] for t in p.tbus]
        assert all(a != b for a, b in zip(orient, orient[1:]))
    assert all(lp.length % 4 == 0 for lp in tr.loops)
    stats = path_stats(tr.paths, g)
    b = stats_bounds(g.spec, stats.k0)
    assert stats.mean == 1 + Fraction(2 * stats.k0, n + m)
    assert stats.longest <= b.max_length
    assert stats.variance <= b.variance_bound


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["hex:1x1", "hex:2x2", "tri:1x2", "tri:2x4"]), st.data())
def test_other_families_sum_format(text, data):
    g = build_mesh(MeshSpec.parse(text))
    cross = data.draw(st.lists(st.booleans(), min_size=g.n_tbu, max_size=g.n_tbu))
    tr = trace(g, cross)
    assert len(tr.paths) == g.n_paths
    stats = path_stats(tr.paths, g)
    assert stats.longest <= stats_bounds(g.spec, stats.k0).max_length
