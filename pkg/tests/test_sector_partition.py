# -*- coding: utf-8 -*-
"""Tests for the sector_partition module."""
import math

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st
from pytest import approx, mark, raises
from scipy.special import comb

from pylyzec import sector_partition as sp
from pylyzec.spin_model import HEISENBERG, ISING_ZZ, MODEL_KINDS
from pylyzec.spin_model import SpinModel, ThermalParams
from pylyzec.spin_model import build_bath_interaction, ring_couplings
from pylyzec.spin_model import chain_couplings
from pylyzec.exceptions import DimensionCapException, GeneralException
from pylyzec.exceptions import ModelValidationException
from pylyzec.exceptions import PartitionOverflowException
from pylyzec.utils import relative_deviation

from conftest import make_random_model


def test_triangle_sector_weights(triangle, thermal_half):
    model, _ = triangle
    poly = sp.lee_yang_polynomial(sp.sector_spectra(model), thermal_half)
    expected = math.exp(0.5) * np.array([1.0, 2.0 * math.exp(-1.0), 1.0])
    assert relative_deviation(poly.weights, expected) < 1e-12
    assert poly.weights == approx([1.648721270700, 1.213061319425,
                                   1.648721270700], rel=1e-11)
    assert poly.degree == 2
    assert poly.coefficients.max() == 1.0


def test_triangle_zero_field_partition(triangle, thermal_half):
    model, _ = triangle
    poly = sp.lee_yang_polynomial(sp.sector_spectra(model), thermal_half)
    value = sp.evaluate_partition(poly, 0.0)
    assert value.real == approx(4.510503860826, rel=1e-12)
    assert abs(value.imag) < 1e-15


def test_free_spin_polynomial():
    model = SpinModel(1, ISING_ZZ)
    poly = sp.lee_yang_polynomial(sp.sector_spectra(model), ThermalParams(2.0))
    assert poly.coefficients.tolist() == [1.0, 1.0]
    # Z = 2 cosh(beta h) for a single spin
    assert sp.evaluate_partition(poly, 0.3) == approx(2.0 * math.cosh(0.6))


@mark.parametrize("kind", MODEL_KINDS)
def test_partition_matches_brute_force(kind, rng, random_model):
    for _ in range(100):
        model = random_model(rng, kind, 5)
        thermal = ThermalParams(float(rng.uniform(0.1, 1.0)))
        field = complex(rng.uniform(-1.0, 1.0), rng.uniform(-0.5, 0.5))
        poly = sp.lee_yang_polynomial(sp.sector_spectra(model), thermal)
        value = sp.evaluate_partition(poly, sp.ComplexField(field))
        reference = sp.brute_force_partition(model, thermal, field)
        assert relative_deviation(value, reference) < 1e-10


def test_partition_array_evaluation(triangle, thermal_half):
    model, _ = triangle
    poly = sp.lee_yang_polynomial(sp.sector_spectra(model), thermal_half)
    fields = np.array([0.0, 0.4 - 0.2j, -3.0 + 1.0j, 2.5])
    values = sp.evaluate_partition(poly, fields)
    assert values.shape == (4,)
    for field, value in zip(fields, values):
        assert value == approx(sp.evaluate_partition(poly, complex(field)),
                               rel=1e-13)


def test_real_field_symmetry():
    model = SpinModel(4, HEISENBERG, ring_couplings(4, 0.8))
    poly = sp.lee_yang_polynomial(sp.sector_spectra(model), ThermalParams(0.7))
    for field in (0.1, 0.5, 2.0):
        assert sp.evaluate_partition(poly, field) == \
               approx(sp.evaluate_partition(poly, -field), rel=1e-13)


def test_large_field_stays_in_log_form():
    model = SpinModel(10, ISING_ZZ, ring_couplings(10, 1.0))
    poly = sp.lee_yang_polynomial(sp.sector_spectra(model), ThermalParams(1.0))
    log_magnitude, phase = sp.evaluate_partition_log(poly, 500.0)
    # all spins up: exp(beta h N) * exp(10 beta J)
    assert log_magnitude == approx(5010.0, rel=1e-13)
    assert phase == approx(0.0, abs=1e-12)
    with raises(PartitionOverflowException) as info:
        sp.evaluate_partition(poly, 500.0)
    assert info.value.scaled.log_magnitude == approx(5010.0, rel=1e-13)
    # far on the other side the reversed evaluation is not needed
    log_magnitude, _ = sp.evaluate_partition_log(poly, -500.0)
    assert log_magnitude == approx(5010.0, rel=1e-13)


def test_extreme_beta_weights_do_not_overflow():
    model = SpinModel(6, ISING_ZZ, ring_couplings(6, 1.0))
    poly = sp.lee_yang_polynomial(sp.sector_spectra(model), ThermalParams(200.0))
    assert np.all(np.isfinite(poly.coefficients))
    assert poly.scale == approx(1200.0)


def test_heisenberg_spectra_match_dense_spectrum():
    model = SpinModel(5, HEISENBERG, chain_couplings(5, 1.0) + [(0, 3, -0.4)])
    spectra = sp.sector_spectra(model)
    dense = build_bath_interaction(model).eigenvalues()
    assert np.allclose(spectra.all_eigenvalues(), dense, atol=1e-11)
    assert [len(block) for block in spectra.sectors] == [1, 5, 10, 10, 5, 1]
    assert spectra.magnetization(0) == -5


def test_threaded_spectra_match_serial():
    model = SpinModel(8, HEISENBERG, ring_couplings(8, 1.0))
    serial = sp.sector_spectra(model)
    threaded = sp.sector_spectra(model, threads=4)
    for first, second in zip(serial.sectors, threaded.sectors):
        assert np.allclose(first, second, atol=1e-12)


def test_spectrum_shape_validation():
    with raises(GeneralException):
        sp.SectorSpectrum(2, [[0.0], [1.0, 2.0]])
    with raises(GeneralException):
        sp.SectorSpectrum(2, [[0.0], [1.0], [2.0]])


def test_polynomial_validation():
    with raises(GeneralException):
        sp.LeeYangPolynomial(1.0, [0.0])
    with raises(GeneralException):
        sp.LeeYangPolynomial(1.0, [0.0, -np.inf])


def test_site_cap():
    with raises(DimensionCapException):
        sp.sector_spectra(SpinModel(15, ISING_ZZ))
    with raises(DimensionCapException):
        sp.sector_spectra(SpinModel(6, ISING_ZZ), max_sites=5)


def test_complex_field():
    thermal = ThermalParams(0.5, hbar=2.0)
    field = sp.ComplexField.for_correlator(-1.0, 0.5, 3.0, thermal)
    # h + lambda - 2i lambda tau / (beta hbar)
    assert complex(field) == approx(complex(-0.5, -3.0))
    with raises(ModelValidationException):
        sp.ComplexField(complex(np.nan, 0.0))


def test_scaled_value():
    assert sp.ScaledValue(0.0, math.pi / 2).to_complex() == approx(1j)
    with raises(PartitionOverflowException):
        sp.ScaledValue(800.0, 0.0).to_complex()


def test_spectra_ignore_bath_field(triangle, thermal_half):
    # sector spectra only depend on the interaction
    model, _ = triangle
    first = sp.sector_spectra(model)
    second = sp.sector_spectra(model.with_field(3.0))
    for a, b in zip(first.sectors, second.sectors):
        assert np.array_equal(a, b)


@settings(deadline=None, max_examples=40)
@given(seed=st.integers(min_value=0, max_value=2 ** 32 - 1),
       kind=st.sampled_from(MODEL_KINDS),
       beta=st.floats(min_value=0.1, max_value=3.0))
def test_flip_symmetric_sectors(seed, kind, beta):
    rng = np.random.default_rng(seed)
    model = make_random_model(rng, kind, 6, -2.0, 2.0)
    spectra = sp.sector_spectra(model)
    n = model.n_sites
    for k in range(n + 1):
        assert np.allclose(spectra.sectors[k], spectra.sectors[n - k],
                           rtol=0, atol=1e-10)
    poly = sp.lee_yang_polynomial(spectra, ThermalParams(beta))
    assert np.allclose(poly.log_weights, poly.log_weights[::-1],
                       rtol=0, atol=1e-10)


@settings(deadline=None, max_examples=30)
@given(seed=st.integers(min_value=0, max_value=2 ** 32 - 1),
       kind=st.sampled_from(MODEL_KINDS))
def test_infinite_temperature_weights_are_binomial(seed, kind):
    rng = np.random.default_rng(seed)
    model = make_random_model(rng, kind, 6, -2.0, 2.0)
    poly = sp.lee_yang_polynomial(sp.sector_spectra(model),
                                  ThermalParams(1e-12))
    expected = comb(model.n_sites, np.arange(model.n_sites + 1))
    assert np.allclose(poly.weights, expected, rtol=1e-9, atol=0)


@settings(deadline=None, max_examples=40)
@given(seed=st.integers(min_value=0, max_value=2 ** 32 - 1),
       kind=st.sampled_from(MODEL_KINDS),
       re_h=st.floats(min_value=-2.0, max_value=2.0),
       im_h=st.floats(min_value=-5.0, max_value=5.0))
def test_partition_commutes_with_conjugation(seed, kind, re_h, im_h):
    rng = np.random.default_rng(seed)
    model = make_random_model(rng, kind, 6, -2.0, 2.0)
    poly = sp.lee_yang_polynomial(sp.sector_spectra(model),
                                  ThermalParams(float(rng.uniform(0.1, 3.0))))
    field = complex(re_h, im_h)
    value = sp.evaluate_partition(poly, field)
    mirrored = sp.evaluate_partition(poly, field.conjugate())
    assert abs(mirrored - value.conjugate()) <= 1e-12 * abs(value) + 1e-300
