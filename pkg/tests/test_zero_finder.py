# -*- coding: utf-8 -*-
"""Tests for the zero_finder module."""
import math

import numpy as np
from numpy.polynomial import polynomial as npoly
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from pytest import approx, mark, raises

from pylyzec import zero_finder as zf
from pylyzec.sector_partition import lee_yang_polynomial, sector_spectra
from pylyzec.spin_model import ISING_ZZ, MODEL_KINDS, SpinModel, ThermalParams
from pylyzec.spin_model import ProbeParams, triangle_cluster
from pylyzec.exceptions import ConvergenceException, DecoupledProbeException
from pylyzec.exceptions import GeneralException

from conftest import TRIANGLE_TAU_1, TRIANGLE_TAU_2, make_random_model


def _zeros(model, thermal):
    poly = lee_yang_polynomial(sector_spectra(model), thermal)
    return zf.roots_to_fields(zf.find_polynomial_roots(poly), thermal, poly)


@mark.parametrize("beta_j", [0.1, 0.5, 1.0, 2.0, 5.0])
def test_ferromagnetic_triangle_on_unit_circle(beta_j):
    model, _ = triangle_cluster(1.0, 0.0)
    zeros = _zeros(model, ThermalParams(beta_j))
    assert len(zeros) == 2
    assert zf.unit_circle_check(zeros) < 1e-10
    found = np.array([zero.q for zero in zeros])
    assert np.max(np.abs(found - zf.triangle_zeros(beta_j, 1.0))) < 1e-10
    # conjugate pair
    assert zeros[0].q == approx(zeros[1].q.conjugate(), abs=1e-12)


def test_antiferromagnetic_triangle_roots_are_real():
    model, _ = triangle_cluster(-1.0, 0.0)
    zeros = _zeros(model, ThermalParams(0.5))
    roots = [zero.q for zero in zeros]
    assert all(root.imag == 0.0 for root in roots)
    assert all(root.real < 0 for root in roots)
    assert roots[0].real * roots[1].real == approx(1.0, abs=1e-10)
    assert roots[0].real == approx(-0.190623604147, rel=1e-10)
    assert roots[1].real == approx(-5.245940052771, rel=1e-10)
    assert zf.unit_circle_check(zeros) == approx(4.245940052771, rel=1e-10)


@settings(deadline=None, max_examples=40)
@given(seed=st.integers(min_value=0, max_value=2 ** 32 - 1))
def test_random_ferromagnetic_ising_on_unit_circle(seed):
    rng = np.random.default_rng(seed)
    n_sites = int(rng.integers(1, 7))
    # any graph, isolated spins and repeated components included
    couplings = [(j, j2, float(rng.uniform(0.2, 1.0)))
                 for j in range(n_sites) for j2 in range(j + 1, n_sites)
                 if rng.random() < 0.4]
    model = SpinModel(n_sites, ISING_ZZ, couplings)
    zeros = _zeros(model, ThermalParams(float(rng.uniform(0.2, 1.0))))
    assert sum(zero.multiplicity for zero in zeros) == n_sites
    assert zf.unit_circle_check(zeros) < 1e-8


def test_free_spins_give_one_multiple_zero():
    thermal = ThermalParams(1.0)
    zeros = _zeros(SpinModel(3, ISING_ZZ), thermal)
    assert len(zeros) == 1
    assert zeros[0].multiplicity == 3
    assert zeros[0].q == approx(-1.0, abs=1e-12)
    assert zeros[0].h_tilde.real == approx(0.0, abs=1e-12)
    # h = -1, lambda = 1 reaches q = -1 at tau = pi / 4
    times = zf.zero_times(zeros, -1.0, ProbeParams(1.0, h0=-1.0), thermal)
    assert len(times) == zf.DEFAULT_WINDOWS
    assert all(item.reachable and item.multiplicity == 3 for item in times)
    assert times[0].tau == approx(math.pi / 4, abs=1e-12)


def test_identical_dimers_give_double_zeros():
    model = SpinModel(4, ISING_ZZ, [(0, 1, 1.0), (2, 3, 1.0)])
    thermal = ThermalParams(0.5)
    zeros = _zeros(model, thermal)
    assert [zero.multiplicity for zero in zeros] == [2, 2]
    assert zf.unit_circle_check(zeros) < 1e-12
    times = zf.zero_times(zeros, -1.0, ProbeParams(1.0), thermal, n_windows=3)
    assert len(times) == 6
    assert all(item.reachable for item in times)
    taus = np.array([item.tau for item in times])
    assert np.min(np.diff(taus)) > 1e-3


def test_merge_multiple_roots():
    coefficients = npoly.polyfromroots([-1.0, -1.0, -1.0, -1.0, 2.0])
    angles = 0.3 + 0.5 * np.pi * np.arange(4)
    split = -1.0 + 1e-4 * np.exp(1j * angles)
    merged = zf.merge_multiple_roots(coefficients,
                                     np.concatenate([split, [2.0]]))
    assert np.allclose(merged[:4], -1.0, rtol=0, atol=1e-13)
    assert np.all(merged[:4] == merged[0])
    assert merged[4] == 2.0
    assert zf.cluster_multiplicities(merged).tolist() == [4, 4, 4, 4, 1]


def test_close_simple_roots_stay_apart():
    roots = np.array([1.0, 1.001])
    coefficients = npoly.polyfromroots(roots)
    assert zf.multiple_root_centre(coefficients, roots) is None
    merged = zf.merge_multiple_roots(coefficients, roots)
    assert np.array_equal(merged, roots)


def test_free_spin_zero():
    zeros = _zeros(SpinModel(1, ISING_ZZ), ThermalParams(0.25))
    assert len(zeros) == 1
    assert zeros[0].q == -1
    assert zeros[0].h_tilde == approx(1j * math.pi / (2 * 0.25))
    assert zeros[0].residual == approx(0.0, abs=1e-15)


@settings(deadline=None, max_examples=50)
@given(st.lists(st.floats(min_value=0.01, max_value=100.0),
                min_size=2, max_size=9))
def test_aberth_matches_companion_roots(coefficients):
    companion = np.roots(coefficients[::-1])
    gaps = np.abs(companion[:, np.newaxis] - companion[np.newaxis, :])
    np.fill_diagonal(gaps, np.inf)
    assume(np.min(gaps) > 1e-2)
    roots, residuals, _ = zf.aberth_ehrlich(coefficients)
    assert np.all(residuals < zf.ROOT_TOL)
    # every companion root has an Aberth root nearby
    for root in companion:
        distance = np.min(np.abs(roots - root))
        assert distance <= 1e-7 * max(1.0, abs(root))


def test_companion_roots_agree(triangle, thermal_half):
    model, _ = triangle
    poly = lee_yang_polynomial(sector_spectra(model), thermal_half)
    assert np.allclose(zf.find_polynomial_roots(poly), zf.companion_roots(poly),
                       atol=1e-12)


def test_roots_are_sorted_by_phase_then_modulus():
    roots = zf.find_polynomial_roots(
        lee_yang_polynomial(sector_spectra(SpinModel(4, ISING_ZZ,
                                                     [(0, 1, -1.0),
                                                      (1, 2, -0.5),
                                                      (2, 3, -1.5)])),
                            ThermalParams(1.0)))
    angles = np.angle(roots)
    assert np.all(np.diff(angles) >= 0)
    for a, b in zip(roots[:-1], roots[1:]):
        if np.angle(a) == np.angle(b):
            assert abs(a) <= abs(b)


def test_convergence_failure_keeps_best_roots():
    with raises(ConvergenceException) as info:
        zf.aberth_ehrlich([1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0], max_iter=1)
    assert len(info.value.roots) == 6
    assert len(info.value.residuals) == 6


def test_backward_residual_and_clusters():
    assert zf.backward_residual([-1.0, 0.0, 1.0], 1.0) == 0.0
    assert zf.backward_residual([-1.0, 0.0, 1.0], 0.0) == approx(1.0)
    counts = zf.cluster_multiplicities([1.0, 1.0 + 1e-10, 2.0])
    assert counts.tolist() == [2, 2, 1]


def test_newton_polish_never_worsens():
    coefficients = [2.0, -3.0, 1.0]
    start = np.array([0.99 + 0.01j, 2.02])
    polished = zf.newton_polish(coefficients, start)
    before = zf.backward_residual(coefficients, start)
    after = zf.backward_residual(coefficients, polished)
    assert np.all(after <= before)
    assert polished[1] == approx(2.0, abs=1e-10)


def test_zero_fugacity_rejected():
    with raises(GeneralException):
        zf.LeeYangZero(0.0, 1.0)


def test_triangle_zero_times(triangle, thermal_half):
    model, probe = triangle
    zeros = _zeros(model, thermal_half)
    times = zf.zero_times(zeros, model.bath_field, probe, thermal_half)
    assert all(item.reachable for item in times)
    assert len(times) == 2 * zf.DEFAULT_WINDOWS
    assert times[0].tau == approx(TRIANGLE_TAU_1, abs=1e-10)
    assert times[1].tau == approx(TRIANGLE_TAU_2, abs=1e-10)
    assert times[0].tau == approx(0.486880958713, abs=1e-11)
    assert times[1].tau == approx(1.083915368082, abs=1e-11)
    assert times[0].tau + times[1].tau == approx(math.pi / 2, abs=1e-12)
    assert all(b.tau >= a.tau for a, b in zip(times[:-1], times[1:]))


def test_same_branch_spacing(triangle, thermal_half):
    model, probe = triangle
    zeros = _zeros(model, thermal_half)
    times = zf.zero_times(zeros, model.bath_field, probe, thermal_half)
    period = zf.zero_time_period(probe, thermal_half)
    assert period == approx(math.pi / 2, abs=1e-15)
    for source in (0, 1):
        branch = sorted((item.winding, item.tau) for item in times
                        if item.source == source)
        for (n1, tau1), (n2, tau2) in zip(branch[:-1], branch[1:]):
            assert n2 == n1 + 1
            assert tau2 - tau1 == approx(period, abs=1e-10)


def test_negative_coupling_gives_same_times(thermal_half):
    model, probe = triangle_cluster(1.0, -1.0)
    flipped_model = model.with_field(1.0)
    flipped_probe = ProbeParams(-1.0, h0=probe.h0)
    zeros = _zeros(model, thermal_half)
    forward = zf.zero_times(zeros, model.bath_field, probe, thermal_half)
    backward = zf.zero_times(zeros, flipped_model.bath_field, flipped_probe,
                             thermal_half)
    assert all(item.tau >= 0 for item in backward)
    assert [item.tau for item in backward] == \
           approx([item.tau for item in forward], abs=1e-12)
    windings = [item.winding for item in backward if item.source == 0]
    assert windings == sorted(windings, reverse=True)


def test_unreachable_zeros_report_required_field(thermal_half):
    model, probe = triangle_cluster(1.0, 0.0)
    zeros = _zeros(model, thermal_half)
    times = zf.zero_times(zeros, model.bath_field, probe, thermal_half)
    assert len(times) == 2
    for item in times:
        assert not item.reachable
        assert item.tau is None and item.winding is None
        assert item.required_field == approx(-1.0, abs=1e-12)


def test_decoupled_probe_has_no_zero_times(triangle, thermal_half):
    model, _ = triangle
    zeros = _zeros(model, thermal_half)
    with raises(DecoupledProbeException):
        zf.zero_times(zeros, model.bath_field, ProbeParams(0.0), thermal_half)
    with raises(DecoupledProbeException):
        zf.zero_time_period(ProbeParams(0.0), thermal_half)


def test_literal_triangle_times(thermal_half):
    times = zf.literal_triangle_zero_times(thermal_half, 1.0)
    assert len(times) == 2 * zf.DEFAULT_WINDOWS
    branch, n, tau = times[0]
    assert (branch, n) == (-1, 0)
    # tan(sqrt(e**2 - 1)) is negative
    assert tau == approx(0.704791390231 / 4.0, rel=1e-10)
    assert all(item[2] >= 0 for item in times)
    assert zf.literal_triangle_zero_times(thermal_half, -1.0) == []


@settings(deadline=None, max_examples=40)
@given(seed=st.integers(min_value=0, max_value=2 ** 32 - 1),
       kind=st.sampled_from(MODEL_KINDS),
       beta=st.floats(min_value=0.1, max_value=1.5))
def test_roots_satisfy_vieta_and_inversion(seed, kind, beta):
    rng = np.random.default_rng(seed)
    model = make_random_model(rng, kind, 6)
    poly = lee_yang_polynomial(sector_spectra(model), ThermalParams(beta))
    roots = zf.find_polynomial_roots(poly)
    weights = poly.coefficients
    n = poly.degree
    assert np.sum(roots) == approx(-weights[n - 1] / weights[n], rel=1e-8)
    assert np.prod(roots) == approx((-1) ** n * weights[0] / weights[n],
                                    rel=1e-8)
    # W_k = W_(N-k): the roots are closed under q -> 1/q
    for root in roots:
        distance = np.min(np.abs(roots - 1.0 / root))
        assert distance <= 1e-7 * max(1.0, abs(1.0 / root))
