# -*- coding: utf-8 -*-
#
# License: LGPL version 3.0 - see LICENSE.txt for details
#
"""
:mod:`services` - High-level Lee-Yang workflows
===============================================

.. module:: pylyzec.services
   :platform: Unix, Windows
   :synopsis: Combines spectra, root finding and correlators into workflows.

Services act like a "registry" of correlator evaluators (instances of
:class:`pylyzec.correlator.CorrelatorEvaluator` subclasses, registered under
a method tag such as ``closed_form`` or ``oracle``) and keep a cache of
sector spectra. Spectra do not depend on the bath field or on the
temperature, so one diagonalization serves every field and every beta of a
sweep.

Example usage:

    >>> from pylyzec.spin_model import triangle_cluster, ThermalParams
    >>> from pylyzec.services import LeeYangService
    >>> srv = LeeYangService()
    >>> model, probe = triangle_cluster(1.0, -1.0)
    >>> report = srv.verify(model, probe, ThermalParams(0.5), samples=20)
    >>> report['passed']
    True

"""
import logging

import numpy as np

from pylyzec.spin_model import MAX_BATH_SITES, is_triangle_cluster
from pylyzec.sector_partition import sector_spectra, lee_yang_polynomial
from pylyzec.zero_finder import DEFAULT_WINDOWS, find_polynomial_roots
from pylyzec.zero_finder import roots_to_fields, zero_times, companion_roots
from pylyzec.zero_finder import literal_triangle_zero_times
from pylyzec.zero_finder import cluster_multiplicities
from pylyzec.correlator import CLOSED_FORM, ORACLE
from pylyzec.correlator import ClosedFormCorrelator, OracleCorrelator
from pylyzec.correlator import CorrelatorQuery, attach_residuals
from pylyzec.correlator import scan_correlator, locate_correlator_zeros
from pylyzec.exceptions import DimensionCapException, ServiceException
from pylyzec.utils import EnhancedDict, relative_deviation

logger = logging.getLogger(__name__)

# identity check gate
IDENTITY_TOL = 1e-10
# largest bath checked against the brute force correlator
MAX_VERIFY_SITES = 4
DEFAULT_SAMPLES = 100
DEFAULT_SEED = 42
# random (t, tau) draws of the identity check
VERIFY_TIME_RANGE = 10.0
# Aberth and companion roots agreeing closer than this are not reported
CROSS_CHECK_TOL = 1e-6


# ----
class BaseEvaluatorService(object):
    """
    Base class for all services using correlator evaluators.
    """
    def __init__(self, max_sites=MAX_BATH_SITES):
        self.max_sites = max_sites
        self._evaluators_registry = {}
        self._spectra_cache = {}


    def register_evaluator(self, method, evaluator_class, overwrite=False):
        """
        Associates a :class:`pylyzec.correlator.CorrelatorEvaluator` subclass
        with the *method* tag. Raises :exc:`ServiceException` if the tag is
        already taken and *overwrite* is False.
        """
        if (not overwrite) and (method in self._evaluators_registry):
            errmsg = "Method '" + method + "' already registered."
            raise ServiceException(errmsg)
        self._evaluators_registry[method] = evaluator_class


    def available_evaluators(self):
        """
        Returns a dictionary with keys - method tags and values - the
        registered evaluator classes.
        """
        return self._evaluators_registry


    def spectra(self, model, threads=1):
        """
        Sector spectra of *model*, computed once per interaction (the bath
        field does not enter). Sectors are diagonalized on *threads* workers.
        """
        key = (model.kind, model.n_sites, model.couplings)
        if key in self._spectra_cache:
            logger.debug("spectra cache hit for %r", model)
        else:
            self._spectra_cache[key] = sector_spectra(model,
                                                     max_sites=self.max_sites,
                                                     threads=threads)
        return self._spectra_cache[key]


    def get_evaluator(self, model, probe, thermal, method=CLOSED_FORM,
                      threads=1):
        """
        Returns a prepared evaluator of the class registered for *method*.
        """
        if method not in self._evaluators_registry:
            errmsg = "No evaluator registered for method '" + \
                     str(method) + "'."
            raise ServiceException(errmsg)
        evaluator_class = self._evaluators_registry[method]
        if issubclass(evaluator_class, ClosedFormCorrelator):
            evaluator = evaluator_class(model, probe, thermal,
                                        spectra=self.spectra(model, threads))
        else:
            evaluator = evaluator_class(model, probe, thermal)
        return evaluator.prepare()


# ----
class LeeYangService(BaseEvaluatorService):
    """
    Registers the closed form and oracle evaluators and offers the workflows
    behind the command line: zeros, correlator scans, the identity check and
    zero times (with beta sweeps).
    """

    _default_evaluators = {CLOSED_FORM: ClosedFormCorrelator,
                           ORACLE: OracleCorrelator}

    def __init__(self, evaluators=None, max_sites=MAX_BATH_SITES):
        super(LeeYangService, self).__init__(max_sites=max_sites)
        registry = evaluators or self._default_evaluators
        for method in sorted(registry):
            self.register_evaluator(method, registry[method], overwrite=True)


    def polynomial(self, model, thermal):
        """Fugacity polynomial of *model* at ``thermal.beta``."""
        return lee_yang_polynomial(self.spectra(model), thermal)


    def zeros(self, model, thermal):
        """
        Returns ``(polynomial, zeros)`` where *zeros* is the list of
        :class:`pylyzec.zero_finder.LeeYangZero`.
        """
        poly = self.polynomial(model, thermal)
        roots = find_polynomial_roots(poly)
        self._cross_check(roots, companion_roots(poly))
        result = roots_to_fields(roots, thermal, poly)
        return poly, result


    @staticmethod
    def _cross_check(roots, reference, tol=CROSS_CHECK_TOL):
        """
        Largest distance from an Aberth-Ehrlich root to the nearest companion
        matrix root, relative to ``max(1, |q|)``. Logged at WARNING when it
        exceeds ``tol**(1/m)`` for a root of multiplicity *m*.
        """
        if len(roots) == 0:
            return 0.0
        distances = np.abs(roots[:, None] - reference[None, :]).min(axis=1)
        relative = distances / np.maximum(1.0, np.abs(roots))
        allowed = tol ** (1.0 / cluster_multiplicities(roots))
        deviation = float(np.max(relative))
        if np.any(relative > allowed):
            logger.warning("companion matrix roots differ by %g", deviation)
        else:
            logger.debug("companion cross-check: %g", deviation)
        return deviation


    def scan(self, model, probe, thermal, tau_grid, method=CLOSED_FORM,
             threads=1, noise=0.0, seed=None, t=0.0):
        """
        Correlator trace on *tau_grid* (see
        :func:`pylyzec.correlator.scan_correlator`).
        """
        evaluator = self.get_evaluator(model, probe, thermal, method, threads)
        query = CorrelatorQuery(model, probe, thermal, t=t)
        result = scan_correlator(query, tau_grid, method=method,
                                 threads=threads, noise=noise, seed=seed,
                                 evaluator=evaluator)
        return result


    def locate_zeros(self, trace):
        """Refined minima of ``|C|`` of a trace (closed form refinement)."""
        query = trace.query
        evaluator = self.get_evaluator(query.model, query.probe,
                                       query.thermal, CLOSED_FORM)
        return locate_correlator_zeros(trace, evaluator=evaluator)


    def verify(self, model, probe, thermal, samples=DEFAULT_SAMPLES,
               seed=DEFAULT_SEED, time_range=VERIFY_TIME_RANGE):
        """
        Compares the closed form with the brute force correlator on
        *samples* random ``(t, tau)`` pairs and checks that the brute force
        value does not depend on *t*. Returns an :class:`EnhancedDict` report
        with ``max_relative_deviation``, ``max_t_shift_deviation``, the worst
        case and ``passed``.
        """
        if model.n_sites > MAX_VERIFY_SITES:
            errmsg = "Identity check needs at most " + \
                     str(MAX_VERIFY_SITES) + " bath spins, got " + \
                     str(model.n_sites) + "."
            raise DimensionCapException(errmsg, n_sites=model.n_sites,
                                        cap=MAX_VERIFY_SITES)

        rng = np.random.default_rng(seed)
        taus = rng.uniform(0.0, time_range, samples)
        shifts = rng.uniform(0.0, time_range, samples)

        closed = self.get_evaluator(model, probe, thermal, CLOSED_FORM)
        oracle = self.get_evaluator(model, probe, thermal, ORACLE)

        closed_values = closed.evaluate_many(taus)
        oracle_values = oracle.evaluate_many(taus, t=0.0)
        identity = np.array([relative_deviation(c, o) for c, o in
                             zip(closed_values, oracle_values)])
        shifted = np.array([oracle.evaluate(tau, t=shift)
                            for tau, shift in zip(taus, shifts)])
        t_shift = np.abs(shifted - oracle_values)

        worst = int(np.argmax(identity))
        result = EnhancedDict()
        result['samples'] = samples
        result['seed'] = seed
        result['max_relative_deviation'] = float(np.max(identity))
        result['max_t_shift_deviation'] = float(np.max(t_shift))
        result['max_abs_correlator'] = float(np.max(np.abs(oracle_values)))
        worst_case = EnhancedDict()
        worst_case['tau'] = float(taus[worst])
        worst_case['closed_form_re'] = float(closed_values[worst].real)
        worst_case['closed_form_im'] = float(closed_values[worst].imag)
        worst_case['oracle_re'] = float(oracle_values[worst].real)
        worst_case['oracle_im'] = float(oracle_values[worst].imag)
        result['worst_case'] = worst_case
        result['passed'] = bool(result['max_relative_deviation'] < IDENTITY_TOL
                                and result['max_t_shift_deviation'] <
                                IDENTITY_TOL)
        logger.debug("identity check: %r", result)
        return result


    def zero_times(self, model, probe, thermal, n_windows=DEFAULT_WINDOWS):
        """
        Returns ``(zeros, times)``: Lee-Yang zeros and their
        :class:`pylyzec.zero_finder.ZeroTime` list, reachable times verified
        with the closed form correlator.
        """
        _, zeros = self.zeros(model, thermal)
        times = zero_times(zeros, model.bath_field, probe, thermal,
                           n_windows=n_windows)
        evaluator = self.get_evaluator(model, probe, thermal, CLOSED_FORM)
        attach_residuals(times, evaluator)
        return zeros, times


    def sweep_zero_times(self, model, probe, thermal, betas,
                         n_windows=DEFAULT_WINDOWS):
        """
        :meth:`zero_times` for every inverse temperature in *betas*, reusing
        the cached spectra. Returns a list of ``(beta, zeros, times)``.
        """
        result = []
        for beta in betas:
            zeros, times = self.zero_times(model, probe, thermal.with_beta(beta),
                                           n_windows=n_windows)
            result.append((beta, zeros, times))
        return result


    def triangle_comparison(self, model, probe, thermal, times,
                            n_windows=DEFAULT_WINDOWS):
        """
        For the triangle cluster, pairs every derived zero time with the
        nearest time of the literal closed formula. Returns a list of
        :class:`EnhancedDict` rows (empty for other models).
        """
        result = []
        if not is_triangle_cluster(model, probe):
            return result
        literal = literal_triangle_zero_times(thermal, probe.coupling,
                                              n_windows=n_windows)
        if not literal:
            return result
        literal_taus = np.array([tau for _, _, tau in literal])
        for item in times:
            if not item.reachable:
                continue
            nearest = int(np.argmin(np.abs(literal_taus - item.tau)))
            row = EnhancedDict()
            row['derived_tau'] = item.tau
            row['literal_tau'] = float(literal_taus[nearest])
            row['literal_branch'] = literal[nearest][0]
            row['literal_n'] = literal[nearest][1]
            row['discrepancy'] = item.tau - float(literal_taus[nearest])
            result.append(row)
        return result
