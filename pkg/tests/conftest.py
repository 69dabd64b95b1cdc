# -*- coding: utf-8 -*-
#
# License: LGPL version 3.0 - see LICENSE.txt for details
#
"""Shared fixtures: the triangle cluster, random baths and model files."""
import json
import math

import numpy as np
import pytest

from pylyzec.spin_model import SpinModel, ProbeParams, ThermalParams
from pylyzec.spin_model import triangle_cluster

# closed form values of the triangle at beta = 0.5, J = lambda = hbar = 1,
# h = h0 = -1
TRIANGLE_ANGLE = math.atan(math.sqrt(math.e ** 2 - 1.0))
TRIANGLE_TAU_1 = (math.pi - TRIANGLE_ANGLE) / 4.0
TRIANGLE_TAU_2 = (math.pi + TRIANGLE_ANGLE) / 4.0


@pytest.fixture
def triangle():
    """``(model, probe)`` of the ferromagnetic triangle at h = -1."""
    return triangle_cluster(1.0, -1.0)


@pytest.fixture
def thermal_half():
    return ThermalParams(0.5)


def _random_couplings(rng, n_sites, low, high):
    result = []
    for j in range(n_sites):
        for j2 in range(j + 1, n_sites):
            if rng.random() < 0.6:
                result.append((j, j2, float(rng.uniform(low, high))))
    if not result and n_sites > 1:
        result.append((0, 1, float(rng.uniform(low, high))))
    return result


def make_random_model(rng, kind, max_sites, low=-1.0, high=1.0, field=1.0):
    """
    Random bath with 1 to *max_sites* spins, couplings in [low, high] on a
    random graph (isolated spins allowed) and bath field in [-field, field].
    """
    n_sites = int(rng.integers(1, max_sites + 1))
    couplings = _random_couplings(rng, n_sites, low, high)
    return SpinModel(n_sites, kind, couplings,
                     bath_field=float(rng.uniform(-field, field)))


def make_random_probe(rng, scale=1.0):
    return ProbeParams(float(rng.uniform(-scale, scale)),
                       h0=float(rng.uniform(-scale, scale)))


@pytest.fixture
def random_model():
    """Factory, see :func:`make_random_model`."""
    return make_random_model


@pytest.fixture
def random_probe():
    return make_random_probe


@pytest.fixture
def model_file(tmp_path):
    """
    Factory writing a model file from keyword overrides of the triangle
    document; returns its path as a string.
    """
    def factory(name='model.json', **overrides):
        document = {
            'sites': 2,
            'kind': 'ising_zz',
            'couplings': [[0, 1, 1.0]],
            'field_h': -1.0,
            'probe': {'lambda': 1.0, 'h0': -1.0},
            'beta': 0.5,
            'hbar': 1.0,
        }
        for key, value in overrides.items():
            if value is None:
                document.pop(key, None)
            else:
                document[key] = value
        path = tmp_path / name
        path.write_text(json.dumps(document))
        return str(path)
    return factory


@pytest.fixture
def rng():
    return np.random.default_rng(20240531)
