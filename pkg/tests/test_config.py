from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ppic_routes.config import (
    TbuState,
    all_bar,
    all_cross,
    enumerate_configurations,
    from_bits,
    from_index,
    split_range,
    to_bits,
)
from ppic_routes.errors import LengthMismatch, TooLarge
from ppic_routes.mesh import MeshSpec, TbuId, build_mesh
from ppic_routes.tracer import trace

SQ11 = build_mesh(MeshSpec.parse("square:1x1"))
SQ22 = build_mesh(MeshSpec.parse("square:2x2"))
SQ23 = build_mesh(MeshSpec.parse("square:2x3"))


def test_all_cross_2x2_path_sum():
    assert sum(p.length for p in trace(SQ22, all_cross(SQ22)).paths) == 24


def test_all_bar_1x1_paths_have_length_one():
    assert [p.length for p in trace(SQ11, all_bar(SQ11)).paths] == [1] * 4


def test_all_cross_1x1_paths():
    # every corner pair is joined by a two-TBU path; length 5 needs the snake
    assert sorted(p.length for p in trace(SQ11, all_cross(SQ11)).paths) == [2, 2, 2, 2]


def test_2x3_accepts_exactly_17_bits():
    assert len(from_bits(SQ23, "0" * 17)) == 17
    for bad in ("0" * 16, "0" * 18):
        with pytest.raises(LengthMismatch):
            from_bits(SQ23, bad)


def test_2x2_rejects_13_bits():
    with pytest.raises(LengthMismatch):
        from_bits(SQ22, "0" * 13)


def test_rejects_non_binary_characters():
    with pytest.raises(LengthMismatch):
        from_bits(SQ11, "01a1")


@settings(max_examples=50)
@given(st.text(alphabet="01", min_size=12, max_size=12))
def test_bits_round_trip(bits):
    assert to_bits(from_bits(SQ22, bits)) == bits
    assert from_index(SQ22, from_bits(SQ22, bits).index).to_bits() == bits


def test_canonical_order_row_bands_horizontal_first():
    names = [str(t) for t in SQ11.tbus]
    assert names == ["0,1-1,1", "1,0-1,1", "1,1-1,2", "1,1-2,1"]


def test_state_lookup_and_update():
    cfg = all_bar(SQ22)
    tbu = TbuId.parse("10-11")
    assert cfg.state(tbu) is TbuState.BAR
    assert cfg.with_states({tbu: TbuState.CROSS}).state(tbu) is TbuState.CROSS


def test_enumeration_counts():
    assert sum(1 for _ in enumerate_configurations(SQ11)) == 16
    assert sum(1 for _ in enumerate_configurations(SQ23)) == 2**17


def test_enumeration_is_distinct_and_ordered():
    bits = [c.to_bits() for c in enumerate_configurations(SQ11)]
    assert bits == sorted(set(bits))


def test_split_ranges_partition():
    whole = [c.index for c in enumerate_configurations(SQ22)]
    parts = []
    for r in split_range(1 << SQ22.n_tbu, 8):
        parts.extend(c.index for c in enumerate_configurations(SQ22, r))
    assert parts == whole


@given(st.integers(0, 5000), st.integers(1, 40))
def test_split_range_is_disjoint_cover(total, parts):
    ranges = split_range(total, parts)
    flat = [i for r in ranges for i in r]
    assert flat == list(range(total))


def test_cap_blocks_large_meshes():
    big = build_mesh(MeshSpec.parse("square:3x4"))
    with pytest.raises(TooLarge):
        next(enumerate_configurations(big))
    assert next(enumerate_configurations(big, allow_large=True)).index == 0
