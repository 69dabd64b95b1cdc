# -*- coding: utf-8 -*-
#
# License: LGPL version 3.0 - see LICENSE.txt for details
#
"""
:mod:`sector_partition` - Magnetization sectors and the Lee-Yang polynomial
============================================================================

.. module:: pylyzec.sector_partition
   :platform: Unix, Windows
   :synopsis: Partition function of a spin bath at complex magnetic field.

Because H' commutes with the total magnetization it is block diagonal in the
sectors with a fixed number *k* of up spins. With the sector weights

    W_k = sum_{E in sector k} exp(-beta * E)

the partition function at a (complex) field *h~* is

    Z(beta, h~) = exp(-beta * h~ * N) * sum_k W_k q**k,   q = exp(2 beta h~)

so its zeros in *h~* are the roots of a degree N polynomial in the fugacity
*q*. Spectra do not depend on *beta*: compute :func:`sector_spectra` once per
model and build polynomials for as many temperatures as needed.

Weights are kept in log form and scaled by the largest one, since products
like beta*J of order 5 already spread them over many orders of magnitude.

Example usage:

    >>> from pylyzec.spin_model import triangle_cluster, ThermalParams
    >>> from pylyzec import sector_partition as sp
    >>> model, probe = triangle_cluster(1.0, -1.0)
    >>> poly = sp.lee_yang_polynomial(sp.sector_spectra(model),
    ...                               ThermalParams(0.5))
    >>> poly.weights
    array([1.64872127, 1.21306132, 1.64872127])

"""
import cmath
import logging
import math
import numbers
from concurrent.futures import ThreadPoolExecutor

import numpy as np
import scipy.linalg
from scipy.special import comb, logsumexp

from pylyzec.spin_model import HEISENBERG, MAX_BATH_SITES
from pylyzec.spin_model import build_bath_interaction, total_sz_operator
from pylyzec.spin_model import check_site_cap, sector_block, sector_states
from pylyzec.exceptions import GeneralException, ModelValidationException
from pylyzec.exceptions import PartitionOverflowException

logger = logging.getLogger(__name__)

# trace identity check of every diagonalized block
TRACE_TOL = 1e-9

# log of the largest finite double
LOG_FLOAT_MAX = math.log(np.finfo(float).max)


# ----
class SectorSpectrum(object):
    """
    Eigenvalues of H' per magnetization sector. ``sectors[k]`` holds the
    ``C(N, k)`` sorted eigenvalues of the sector with *k* spins up
    (magnetization ``2k - N``).
    """

    def __init__(self, n_sites, sectors):
        if len(sectors) != n_sites + 1:
            errmsg = "Expected " + str(n_sites + 1) + " sectors, got " + \
                     str(len(sectors)) + "."
            raise GeneralException(errmsg)
        checked = []
        for k, energies in enumerate(sectors):
            energies = np.sort(np.asarray(energies, dtype=float))
            if len(energies) != int(comb(n_sites, k, exact=True)):
                errmsg = "Sector " + str(k) + " must have C(" + \
                         str(n_sites) + ", " + str(k) + ") eigenvalues."
                raise GeneralException(errmsg)
            energies.setflags(write=False)
            checked.append(energies)
        self.n_sites = n_sites
        self.sectors = tuple(checked)


    def magnetization(self, k):
        """Total sigma^z of sector *k*."""
        return 2 * k - self.n_sites


    def all_eigenvalues(self):
        """The union of the sector spectra, sorted."""
        return np.sort(np.concatenate(self.sectors))


    def __repr__(self):
        sizes = [len(energies) for energies in self.sectors]
        return 'SectorSpectrum(n_sites=%d, sizes=%r)' % (self.n_sites, sizes)


# ----
class LeeYangPolynomial(object):
    """
    The fugacity polynomial ``P(q) = sum_k W_k q**k`` at inverse temperature
    *beta*. The weights are stored as ``log_weights`` together with the
    normalization ``scale = max(log_weights)``; :attr:`coefficients` are the
    scaled mantissas ``W_k / exp(scale)`` in ascending order.
    """

    def __init__(self, beta, log_weights):
        log_weights = np.asarray(log_weights, dtype=float)
        if log_weights.ndim != 1 or len(log_weights) < 2:
            raise GeneralException("Need a polynomial of degree >= 1.")
        if not np.all(np.isfinite(log_weights)):
            raise GeneralException("Sector weights must be positive and finite.")
        self.beta = float(beta)
        self.log_weights = log_weights
        self.scale = float(np.max(log_weights))
        self.coefficients = np.exp(log_weights - self.scale)
        self.log_weights.setflags(write=False)
        self.coefficients.setflags(write=False)


    @property
    def degree(self):
        return len(self.log_weights) - 1


    @property
    def weights(self):
        """Unscaled weights W_k (may overflow to inf for extreme beta)."""
        with np.errstate(over='ignore'):
            return np.exp(self.log_weights)


    def evaluate_scaled(self, q):
        """
        Horner evaluation of ``P(q) / exp(scale)`` for scalar or array *q*.
        """
        # numpy wants the highest power first
        return np.polyval(self.coefficients[::-1], q)


    def __repr__(self):
        return 'LeeYangPolynomial(beta=%r, log_weights=%r)' % \
               (self.beta, self.log_weights.tolist())


# ----
class ComplexField(object):
    """
    A complex magnetic field h~. In the correlator identity
    ``h~ = h + lambda - 2i lambda tau / (beta hbar)``
    (see :meth:`for_correlator`).
    """

    def __init__(self, value):
        value = complex(value)
        if not (math.isfinite(value.real) and math.isfinite(value.imag)):
            raise ModelValidationException("Complex field must be finite.")
        self.value = value


    @classmethod
    def for_correlator(cls, bath_field, coupling, tau, thermal):
        """The field probed by the correlator at time separation *tau*."""
        value = complex(bath_field + coupling,
                        -2.0 * coupling * tau / (thermal.beta * thermal.hbar))
        return cls(value)


    def __complex__(self):
        return self.value


    def __repr__(self):
        return 'ComplexField(%r)' % (self.value,)


# ----
class ScaledValue(object):
    """
    A complex number kept as ``exp(log_magnitude + i phase)``.
    """

    def __init__(self, log_magnitude, phase):
        self.log_magnitude = float(log_magnitude)
        self.phase = float(phase)


    def to_complex(self):
        if self.log_magnitude > LOG_FLOAT_MAX:
            errmsg = "Value exp(" + repr(self.log_magnitude) + \
                     ") exceeds the floating point range."
            raise PartitionOverflowException(errmsg, scaled=self)
        return cmath.exp(complex(self.log_magnitude, self.phase))


    def __repr__(self):
        return 'ScaledValue(log_magnitude=%r, phase=%r)' % \
               (self.log_magnitude, self.phase)


# ---
def _sector_eigenvalues(model, n_up):
    states = sector_states(model.n_sites, n_up)
    block = sector_block(model, states)
    if model.kind == HEISENBERG and len(states) > 1:
        energies = scipy.linalg.eigvalsh(block)
        deviation = abs(np.sum(energies) - np.trace(block))
        if deviation > TRACE_TOL * max(1.0, np.sum(np.abs(np.diag(block)))):
            errmsg = "Trace identity violated in sector " + str(n_up) + \
                     " (deviation " + repr(deviation) + ")."
            raise GeneralException(errmsg)
    else:
        # ising blocks (and single states) are diagonal
        energies = np.diag(block).copy()
    return energies


# ---
def sector_spectra(model, max_sites=MAX_BATH_SITES, threads=1):
    """
    Returns the :class:`SectorSpectrum` of H'. Ising sectors are read off the
    diagonal, Heisenberg sectors are diagonalized block by block. With
    *threads* > 1 the blocks are diagonalized in a thread pool.
    """
    check_site_cap(model.n_sites, max_sites)
    sector_ids = list(range(model.n_sites + 1))

    if threads is not None and threads > 1 and model.kind == HEISENBERG:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            sectors = list(pool.map(lambda k: _sector_eigenvalues(model, k),
                                    sector_ids))
    else:
        sectors = [_sector_eigenvalues(model, k) for k in sector_ids]

    result = SectorSpectrum(model.n_sites, sectors)
    logger.debug("sector spectra for %r: %r", model, result)
    return result


# ---
def lee_yang_polynomial(spectra, thermal):
    """
    Builds the :class:`LeeYangPolynomial` of *spectra* at ``thermal.beta``.
    The weights are accumulated in log form (``logsumexp``).
    """
    beta = thermal.beta
    log_weights = [logsumexp(-beta * energies) for energies in spectra.sectors]
    result = LeeYangPolynomial(beta, log_weights)
    return result


# ---
def evaluate_partition_log(poly, field):
    """
    Returns ``(log|Z|, arg Z)`` of ``Z(beta, h~)`` for a scalar or an array of
    complex fields *field*. The scaled polynomial is evaluated in *q* when
    ``|q| <= 1`` and in ``1/q`` otherwise, so no power of *q* overflows.
    A zero of Z gives ``log|Z| = -inf``.
    """
    scalar = np.ndim(field) == 0
    h = np.atleast_1d(np.asarray(_field_value(field), dtype=complex))
    beta = poly.beta
    n = poly.degree
    x = 2.0 * beta * h                     # log q

    inside = x.real <= 0
    log_z = np.empty(h.shape, dtype=complex)
    with np.errstate(divide='ignore'):
        q = np.exp(x[inside])
        log_z[inside] = poly.scale - beta * h[inside] * n + \
                        np.log(poly.evaluate_scaled(q).astype(complex))
        inverse = np.exp(-x[~inside])
        # sum_k W_k q**(k - N) is P with reversed coefficients
        reversed_value = np.polyval(poly.coefficients, inverse)
        log_z[~inside] = poly.scale + beta * h[~inside] * n + \
                         np.log(reversed_value.astype(complex))

    log_magnitude = log_z.real
    phase = np.angle(np.exp(1j * log_z.imag))
    if scalar:
        return float(log_magnitude[0]), float(phase[0])
    return log_magnitude, phase


# ---
def evaluate_partition(poly, field):
    """
    Returns ``Z(beta, h~) = exp(-beta h~ N) P(exp(2 beta h~))`` as a complex
    number (or array). Raises :exc:`PartitionOverflowException` carrying the
    :class:`ScaledValue` when the magnitude exceeds the floating point range.
    """
    log_magnitude, phase = evaluate_partition_log(poly, field)
    if np.max(log_magnitude) > LOG_FLOAT_MAX:
        index = int(np.argmax(log_magnitude))
        scaled = ScaledValue(np.ravel(log_magnitude)[index],
                             np.ravel(phase)[index])
        errmsg = "Partition function overflows: log|Z| = " + \
                 repr(scaled.log_magnitude) + "."
        raise PartitionOverflowException(errmsg, scaled=scaled)
    with np.errstate(under='ignore'):
        result = np.exp(log_magnitude + 1j * phase)
    if np.ndim(result) == 0:
        result = complex(result)
    return result


# ---
def brute_force_partition(model, thermal, field, max_sites=MAX_BATH_SITES):
    """
    Literal ``Tr exp(-beta (H' - h~ sum_j sz_j))`` from
    :func:`scipy.linalg.expm` of the full ``2**N`` matrix. No sector
    eigendecomposition is involved, so it checks :func:`evaluate_partition`
    along an independent path.
    """
    check_site_cap(model.n_sites, max_sites)
    value = complex(_field_value(field))
    interaction = build_bath_interaction(model, max_sites=max_sites).matrix
    magnetization = total_sz_operator(model.n_sites, max_sites=max_sites).matrix
    exponent = -thermal.beta * (interaction - value * magnetization)
    result = complex(np.trace(scipy.linalg.expm(exponent)))
    return result


# ---
def _field_value(field):
    if isinstance(field, ComplexField):
        return field.value
    if isinstance(field, numbers.Number):
        return complex(field)
    return field
