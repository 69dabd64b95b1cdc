# -*- coding: utf-8 -*-
#
# License: LGPL version 3.0 - see LICENSE.txt for details
#
"""
:mod:`correlator` - Two-time correlator of the probe spin
=========================================================

.. module:: pylyzec.correlator
   :platform: Unix, Windows
   :synopsis: Evaluates <sigma+_0(t + tau) sigma-_0(t)> two independent ways.

The correlator of the probe spin in the thermal state of the total
Hamiltonian equals

    C(tau) = exp(beta h0 - 2i h0 tau / hbar) Z(beta, h~) / Z_T,
    h~ = h + lambda - 2i lambda tau / (beta hbar)

so its zeros in *tau* are Lee-Yang zeros of the bath. Two evaluators are
provided:

* :class:`ClosedFormCorrelator` (method ``closed_form``) evaluates the right
  hand side from the sector decomposition, with ``Z_T`` from the probe trace
  ``Z_T = exp(beta h0) Z(h + lambda) + exp(-beta h0) Z(h - lambda)``.
* :class:`OracleCorrelator` (method ``oracle``) diagonalizes the full
  ``2**(N+1)`` Hamiltonian once and conjugates the probe ladder operators
  with the resulting unitaries. It never touches the sector code.

Evaluators must be prepared before use: :meth:`CorrelatorEvaluator.prepare`
does the expensive, read-only precomputation and only afterwards may
:meth:`CorrelatorEvaluator.evaluate` be called, from any number of threads.

Example usage:

    >>> from pylyzec.spin_model import triangle_cluster, ThermalParams
    >>> from pylyzec.correlator import CorrelatorQuery, closed_form_correlator
    >>> model, probe = triangle_cluster(1.0, -1.0)
    >>> query = CorrelatorQuery(model, probe, ThermalParams(0.5), tau=0.0)
    >>> round(closed_form_correlator(query).real, 9)
    0.108608514

.. seealso:: Module :mod:`pylyzec.services`

       High-level workflows built on the evaluators.
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np
import scipy.linalg
from scipy.optimize import minimize_scalar

from pylyzec.spin_model import MAX_BATH_SITES, MAX_ORACLE_SITES
from pylyzec.spin_model import SIGMA_MINUS, SIGMA_PLUS
from pylyzec.spin_model import build_total_hamiltonian, probe_operator
from pylyzec.sector_partition import sector_spectra, lee_yang_polynomial
from pylyzec.sector_partition import evaluate_partition_log
from pylyzec.exceptions import EvaluatorException, GeneralException
from pylyzec.exceptions import NumericException
from pylyzec.utils import EnhancedDict, all_finite, is_close_to_zero

logger = logging.getLogger(__name__)

CLOSED_FORM = 'closed_form'
ORACLE = 'oracle'

# minima of |C| below this are zeros
ZERO_THRESHOLD = 1e-6
# golden section tolerance (relative to tau)
GOLDEN_XTOL = 1e-11


# ----
class CorrelatorQuery(object):
    """
    One correlator evaluation: the bath *model*, *probe* and *thermal*
    parameters, the first time argument *t* and the separation *tau*.
    """

    def __init__(self, model, probe, thermal, t=0.0, tau=0.0):
        self.model = model
        self.probe = probe
        self.thermal = thermal
        self.t = float(t)
        self.tau = float(tau)


    def parameters(self):
        """Parameter echo (an :class:`EnhancedDict`)."""
        result = EnhancedDict()
        result.update(self.model.to_dict())
        result['probe'] = self.probe.to_dict()
        result.update(self.thermal.to_dict())
        return result


# ----
class CorrelatorTrace(object):
    """
    Sampled correlator: strictly increasing *tau_grid*, complex *values*,
    the *query* used (its *tau* is irrelevant) and the *method* tag.
    """

    def __init__(self, tau_grid, values, query, method):
        tau_grid = np.asarray(tau_grid, dtype=float)
        values = np.asarray(values, dtype=complex)
        if tau_grid.shape != values.shape:
            raise GeneralException("Grid and values differ in length.")
        if np.any(np.diff(tau_grid) <= 0):
            raise GeneralException("Time grid must be strictly increasing.")
        if not all_finite(values):
            raise NumericException("Correlator samples are not finite.")
        self.tau_grid = tau_grid
        self.values = values
        self.query = query
        self.method = method


    @property
    def magnitudes(self):
        return np.abs(self.values)


    def __len__(self):
        return len(self.tau_grid)


# ----
class CorrelatorZero(object):
    """
    A refined local minimum of ``|C|``; *is_zero* when below the threshold.
    """

    def __init__(self, tau, magnitude, is_zero):
        self.tau = tau
        self.magnitude = magnitude
        self.is_zero = is_zero


    def __repr__(self):
        return 'CorrelatorZero(tau=%r, magnitude=%r, is_zero=%r)' % \
               (self.tau, self.magnitude, self.is_zero)


# ----
class CorrelatorEvaluator(object):
    """
    Base class of the correlator evaluators. Subclasses implement
    :meth:`_precompute` and :meth:`_evaluate_many`.
    """
    method = 'unknown'

    def __init__(self, model, probe, thermal):
        self.model = model
        self.probe = probe
        self.thermal = thermal
        self._prepared = False


    def prepare(self):
        """
        Runs the precomputation. Must complete before :meth:`evaluate` is
        called; calling it again is harmless.
        """
        if not self._prepared:
            self._precompute()
            self._prepared = True
        return self


    def _precompute(self):
        raise NotImplementedError


    def _evaluate_many(self, taus, t):
        raise NotImplementedError


    def _check_prepared(self):
        if not self._prepared:
            err = "Evaluator not prepared. Run prepare() method first."
            raise EvaluatorException(err)


    # -- public methods
    def evaluate(self, tau, t=0.0):
        """C(tau) at the first time argument *t*."""
        return complex(self.evaluate_many([tau], t=t)[0])


    def evaluate_many(self, taus, t=0.0):
        """C on an array of separations."""
        self._check_prepared()
        taus = np.asarray(taus, dtype=float)
        return self._evaluate_many(taus, float(t))


# ----
class ClosedFormCorrelator(CorrelatorEvaluator):
    """
    Closed form evaluator built on :mod:`pylyzec.sector_partition`. The first
    time argument is accepted but not used: the closed form does not depend
    on it.
    """
    method = CLOSED_FORM

    def __init__(self, model, probe, thermal, max_sites=MAX_BATH_SITES,
                 spectra=None):
        super(ClosedFormCorrelator, self).__init__(model, probe, thermal)
        self._max_sites = max_sites
        self.spectra = spectra
        self.polynomial = None
        self.log_probe_partition = None


    def _precompute(self):
        if self.spectra is None:
            self.spectra = sector_spectra(self.model, max_sites=self._max_sites)
        self.polynomial = lee_yang_polynomial(self.spectra, self.thermal)
        self.log_probe_partition = log_probe_trace_partition(
            self.polynomial, self.model.bath_field, self.probe)


    def fields(self, taus):
        """Complex fields h~ probed at separations *taus*."""
        beta, hbar = self.thermal.beta, self.thermal.hbar
        coupling = self.probe.coupling
        taus = np.asarray(taus, dtype=float)
        return (self.model.bath_field + coupling) - \
               2j * coupling * taus / (beta * hbar)


    def _evaluate_many(self, taus, t):
        beta, hbar, h0 = self.thermal.beta, self.thermal.hbar, self.probe.h0
        log_magnitude, phase = evaluate_partition_log(self.polynomial,
                                                      self.fields(taus))
        magnitude = np.exp(beta * h0 + log_magnitude - self.log_probe_partition)
        return magnitude * np.exp(1j * (phase - 2.0 * h0 * taus / hbar))


# ----
class OracleCorrelator(CorrelatorEvaluator):
    """
    Brute force evaluator: ``Tr[rho sigma+(t + tau) sigma-(t)]`` with
    ``A(s) = U(s)^dagger A U(s)`` from one eigendecomposition of the total
    Hamiltonian.
    """
    method = ORACLE

    def __init__(self, model, probe, thermal, max_sites=MAX_ORACLE_SITES):
        super(OracleCorrelator, self).__init__(model, probe, thermal)
        self._max_sites = max_sites
        self.energies = None
        self.populations = None
        self._raising = None
        self._lowering = None


    def _precompute(self):
        total = build_total_hamiltonian(self.model, self.probe,
                                        max_sites=self._max_sites)
        energies, vectors = scipy.linalg.eigh(total.matrix)
        boltzmann = np.exp(-self.thermal.beta * (energies - energies[0]))
        self.energies = energies
        self.populations = boltzmann / np.sum(boltzmann)

        n_sites = self.model.n_sites
        adjoint = vectors.conj().T
        self._raising = adjoint.dot(probe_operator(SIGMA_PLUS, n_sites)) \
                               .dot(vectors)
        self._lowering = adjoint.dot(probe_operator(SIGMA_MINUS, n_sites)) \
                                .dot(vectors)
        logger.debug("oracle diagonalized %d states", len(energies))


    def heisenberg(self, operator, time):
        """Eigenbasis matrix of ``exp(iHt/hbar) A exp(-iHt/hbar)``."""
        phases = np.exp(1j * self.energies * time / self.thermal.hbar)
        return phases[:, np.newaxis] * operator * phases.conj()[np.newaxis, :]


    def _evaluate_many(self, taus, t):
        lowering = self.heisenberg(self._lowering, t)
        weighted = self.populations[:, np.newaxis] * lowering.T
        result = np.empty(taus.shape, dtype=complex)
        for i, tau in enumerate(taus):
            raising = self.heisenberg(self._raising, t + tau)
            # Tr[rho A B] = sum_mn p_m A_mn B_nm
            result[i] = np.sum(raising * weighted)
        return result


# ----
EVALUATORS = {CLOSED_FORM: ClosedFormCorrelator,
              ORACLE: OracleCorrelator}


# ---
def make_evaluator(model, probe, thermal, method=CLOSED_FORM, **kwargs):
    """
    Returns a prepared evaluator for *method* (``closed_form`` or
    ``oracle``). Extra keyword arguments go to the evaluator class.
    """
    if method not in EVALUATORS:
        errmsg = "Unknown correlator method '" + str(method) + \
                 "'. Valid methods are: " + ", ".join(sorted(EVALUATORS))
        raise EvaluatorException(errmsg)
    evaluator = EVALUATORS[method](model, probe, thermal, **kwargs)
    return evaluator.prepare()


# ---
def log_probe_trace_partition(poly, bath_field, probe):
    """
    ``ln Z_T`` from the two probe blocks:
    ``Z_T = exp(beta h0) Z(h + lambda) + exp(-beta h0) Z(h - lambda)``.
    """
    beta = poly.beta
    log_up, _ = evaluate_partition_log(poly, bath_field + probe.coupling)
    log_down, _ = evaluate_partition_log(poly, bath_field - probe.coupling)
    return float(np.logaddexp(beta * probe.h0 + log_up,
                              -beta * probe.h0 + log_down))


# ---
def closed_form_correlator(query, max_sites=MAX_BATH_SITES):
    """C(tau) of *query* from the partition function at complex field."""
    evaluator = make_evaluator(query.model, query.probe, query.thermal,
                               method=CLOSED_FORM, max_sites=max_sites)
    return evaluator.evaluate(query.tau, t=query.t)


# ---
def oracle_correlator(query, max_sites=MAX_ORACLE_SITES):
    """C(tau) of *query* by brute force on the full Hilbert space."""
    evaluator = make_evaluator(query.model, query.probe, query.thermal,
                               method=ORACLE, max_sites=max_sites)
    return evaluator.evaluate(query.tau, t=query.t)


# ---
def scan_correlator(query, tau_grid, method=CLOSED_FORM, threads=1,
                    noise=0.0, seed=None, evaluator=None):
    """
    Evaluates C on *tau_grid* with one shared precomputation. The grid is
    split into chunks evaluated in a thread pool when *threads* > 1; the
    output order does not depend on the thread count. *noise* > 0 adds
    complex Gaussian noise of that amplitude (seeded by *seed*).
    """
    tau_grid = np.asarray(tau_grid, dtype=float)
    if evaluator is None:
        evaluator = make_evaluator(query.model, query.probe, query.thermal,
                                   method=method)
    else:
        evaluator.prepare()

    if threads is not None and threads > 1 and len(tau_grid) > 1:
        chunks = np.array_split(tau_grid, min(threads, len(tau_grid)))
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(
                lambda chunk: evaluator.evaluate_many(chunk, t=query.t),
                chunks))
        values = np.concatenate(parts)
    else:
        values = evaluator.evaluate_many(tau_grid, t=query.t)

    if noise > 0:
        rng = np.random.default_rng(seed)
        values = values + noise * (rng.standard_normal(len(values)) +
                                   1j * rng.standard_normal(len(values)))

    result = CorrelatorTrace(tau_grid, values, query, evaluator.method)
    return result


# ---
def locate_correlator_zeros(trace, threshold=ZERO_THRESHOLD,
                            xtol=GOLDEN_XTOL, evaluator=None):
    """
    Finds the strict local minima of ``|C|`` on the grid of *trace*, refines
    each by golden section search on the noise free correlator and returns
    :class:`CorrelatorZero` objects sorted by time. A grid minimum that the
    noise free values do not bracket is refined by bounded Brent search on
    its two neighbouring intervals.
    """
    if len(trace) == 0:
        raise GeneralException("Cannot locate zeros of an empty trace.")
    if evaluator is None:
        query = trace.query
        evaluator = make_evaluator(query.model, query.probe, query.thermal,
                                   method=trace.method)
    t = trace.query.t

    def magnitude(tau):
        return abs(evaluator.evaluate(tau, t=t))

    grid = trace.tau_grid
    values = trace.magnitudes
    result = []
    for i in range(1, len(grid) - 1):
        if not (values[i] < values[i - 1] and values[i] < values[i + 1]):
            continue
        bracket = (grid[i - 1], grid[i], grid[i + 1])
        try:
            found = minimize_scalar(magnitude, bracket=bracket,
                                    method='golden',
                                    options={'xtol': xtol})
            tau, value = float(found.x), float(found.fun)
        except ValueError:
            # noisy grid minimum that the clean correlator does not bracket
            found = minimize_scalar(magnitude, bounds=(grid[i - 1],
                                                       grid[i + 1]),
                                    method='bounded',
                                    options={'xatol': xtol * max(1.0,
                                                                 grid[i])})
            tau, value = float(found.x), float(found.fun)
        result.append(CorrelatorZero(tau, value,
                                     is_close_to_zero(value, threshold)))

    logger.debug("%d minima of |C|, %d below %g", len(result),
                 sum(1 for zero in result if zero.is_zero), threshold)
    return result


# ---
def attach_residuals(times, evaluator, t=0.0):
    """
    Fills :attr:`ZeroTime.predicted_residual` with ``|C(tau)|`` for every
    reachable zero time.
    """
    for item in times:
        if item.reachable:
            item.predicted_residual = abs(evaluator.evaluate(item.tau, t=t))
    return times


# ---
def probe_up_probability(model, probe, thermal):
    """``C(0)``: thermal probability of the probe pointing up."""
    evaluator = make_evaluator(model, probe, thermal)
    return evaluator.evaluate(0.0).real


# ---
def constant_modulus(probe, thermal):
    """
    ``|C|`` of a decoupled probe (lambda = 0):
    ``exp(beta h0) / (2 cosh(beta h0))``.
    """
    return 0.5 * (1.0 + math.tanh(thermal.beta * probe.h0))
