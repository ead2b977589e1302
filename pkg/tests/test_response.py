from __future__ import annotations

import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ppic_routes.config import all_bar, all_cross
from ppic_routes.errors import OutOfRange
from ppic_routes.mesh import MeshSpec, build_mesh
from ppic_routes.response import BAR, CROSS, PhaseSettings, TbuPhysical, bar_parity, path_response, tbu_transfer
from ppic_routes.tracer import trace_all_paths

PHYS = TbuPhysical.from_wavelength(0.97, 100e-6, 2.35, 1550e-9)
angles = st.floats(-10, 10, allow_nan=False)


def test_bar_is_diagonal():
    f = tbu_transfer(BAR, PHYS)
    expected = np.diag([1, -1]) * PHYS.unit_factor
    assert np.allclose(f, expected, rtol=0, atol=1e-12)


def test_cross_is_antidiagonal():
    f = tbu_transfer(CROSS, PHYS)
    expected = np.array([[0, 1], [1, 0]]) * PHYS.unit_factor
    assert np.allclose(f, expected, rtol=0, atol=1e-12)


@given(angles)
def test_equal_phases_couple_only(theta):
    f = tbu_transfer(PhaseSettings(theta, theta), PHYS)
    off = -1j * cmath.exp(-1j * theta) * PHYS.unit_factor
    assert abs(f[0, 0]) < 1e-12 and abs(f[1, 1]) < 1e-12
    assert abs(f[0, 1] - off) < 1e-12 and abs(f[1, 0] - off) < 1e-12


@given(angles, angles, st.floats(1e-6, 1e-3), st.floats(1.0, 4.0))
def test_unitary_without_loss(theta, phi, length, n_eff):
    phys = TbuPhysical.from_wavelength(1.0, length, n_eff, 1550e-9)
    f = tbu_transfer(PhaseSettings(theta, phi), phys)
    assert np.allclose(f @ f.conj().T, np.eye(2), rtol=0, atol=1e-12)


def test_single_lossless_tbu():
    phys = TbuPhysical.from_wavelength(1.0, 100e-6, 2.35, 1550e-9)
    out = path_response(1 + 0j, 1, 0, phys)
    assert abs(abs(out) - 1) < 1e-12
    assert abs(cmath.exp(1j * cmath.phase(out)) - cmath.exp(-1j * phys.phase_delay)) < 1e-9


def test_all_cross_magnitude_product():
    g = build_mesh(MeshSpec.parse("square:2x2"))
    phys = TbuPhysical.from_wavelength(0.99, 100e-6, 2.35, 1550e-9)
    paths = trace_all_paths(g, all_cross(g))
    product = math.prod(abs(path_response(1, p.length, bar_parity(p), phys)) for p in paths)
    assert product == pytest.approx(0.99**24, rel=1e-12)


def test_magnitude_fixture():
    phys = TbuPhysical.from_wavelength(0.99, 100e-6, 2.35, 1550e-9)
    assert abs(path_response(1, 17, 0, phys)) == pytest.approx(0.8429431933839266, rel=1e-12)


@given(st.integers(1, 40), st.sampled_from([0, 1]), st.floats(0.5, 1.0), st.floats(1e-6, 1e-3), st.floats(1e14, 2e15))
def test_magnitude_and_phase_dependence(length, q, alpha, tbu_length, omega):
    phys = TbuPhysical(alpha, tbu_length, 2.35, omega)
    other = TbuPhysical(alpha, tbu_length * 1.37, 2.35, omega * 0.9)
    out, alt = path_response(1, length, q, phys), path_response(1, length, q, other)
    assert abs(out) == pytest.approx(alpha**length, rel=1e-9)
    assert abs(alt) == pytest.approx(abs(out), rel=1e-9)
    target = -(omega * 2.35 * length * tbu_length / phys.c + q * math.pi)
    assert abs(out / abs(out) - cmath.exp(1j * target)) < 1e-6
    lossier = path_response(1, length, q, TbuPhysical(alpha * 0.9, tbu_length, 2.35, omega))
    assert abs(cmath.phase(lossier) - cmath.phase(out)) < 1e-9 or abs(abs(cmath.phase(lossier) - cmath.phase(out)) - 2 * math.pi) < 1e-9


def test_bar_parity_examples():
    g = build_mesh(MeshSpec.parse("square:2x2"))
    cfg = all_cross(g)
    assert all(bar_parity(p, cfg) == 0 for p in trace_all_paths(g, cfg))
    bar = all_bar(g)
    p = trace_all_paths(g, bar)[0]
    assert p.length == 1 and bar_parity(p, bar) == 1


def test_bar_parity_counts_each_traversal():
    # a path crossing the same bar TBU twice contributes two sign flips
    g = build_mesh(MeshSpec.parse("square:1x1"))
    cfg = all_bar(g)
    for p in trace_all_paths(g, cfg):
        assert bar_parity(p, cfg) == p.bar_traversals % 2 == sum(1 for t in p.tbus if not cfg.cross[t]) % 2


def test_physical_validation():
    with pytest.raises(OutOfRange):
        TbuPhysical(1.2, 1e-4, 2.35, 1e15)
    with pytest.raises(OutOfRange):
        TbuPhysical(0.9, -1e-4, 2.35, 1e15)
    with pytest.raises(OutOfRange):
        path_response(1, 0, 0, PHYS)
    with pytest.raises(OutOfRange):
        path_response(1, 3, 2, PHYS)
