# -*- coding: utf-8 -*-
#
# License: LGPL version 3.0 - see LICENSE.txt for details
#
"""
:mod:`zero_finder` - Lee-Yang zeros and the correlator zero times
==================================================================

.. module:: pylyzec.zero_finder
   :platform: Unix, Windows
   :synopsis: Roots of the fugacity polynomial, complex fields, zero times.

The Lee-Yang zeros of a bath are the roots of its fugacity polynomial
(:class:`pylyzec.sector_partition.LeeYangPolynomial`). They are found with the
Aberth-Ehrlich simultaneous iteration on the scaled coefficients and polished
with Newton steps; :func:`companion_roots` gives an independent
eigenvalue-based answer used for cross-checks.

The probe correlator sees the bath at fugacity

    q(tau) = exp(2 beta (h + lambda)) * exp(-4i lambda tau / hbar)

so a zero *q0* is reached at real times only when ``ln|q0| = 2 beta (h +
lambda)``. The times then repeat with period ``pi hbar / (2 |lambda|)``.
All time arithmetic is done on *q* directly; the principal logarithm is only
used to report the complex field.

Example usage:

    >>> from pylyzec.spin_model import triangle_cluster, ThermalParams
    >>> from pylyzec.sector_partition import sector_spectra, lee_yang_polynomial
    >>> from pylyzec import zero_finder as zf
    >>> model, probe = triangle_cluster(1.0, -1.0)
    >>> thermal = ThermalParams(0.5)
    >>> poly = lee_yang_polynomial(sector_spectra(model), thermal)
    >>> zeros = zf.roots_to_fields(zf.find_polynomial_roots(poly), thermal, poly)
    >>> times = zf.zero_times(zeros, model.bath_field, probe, thermal)
    >>> round(times[0].tau, 9)
    0.486880959

"""
import cmath
import logging
import math

import numpy as np
import scipy.linalg
from numpy.polynomial import polynomial as npoly
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from pylyzec.exceptions import ConvergenceException, DecoupledProbeException
from pylyzec.exceptions import GeneralException

logger = logging.getLogger(__name__)

DEFAULT_MAX_ITER = 200
ROOT_TOL = 1e-12
CLUSTER_TOL = 1e-8
REACHABILITY_TOL = 1e-9
DEFAULT_WINDOWS = 8
# roots of a real polynomial closer than this to the axis are real
REAL_AXIS_TOL = 1e-14
NEWTON_POLISH_STEPS = 3
# an m-fold root splits into m computed roots about EPS**(1/m) apart
MULTIPLE_ROOT_EPS = 1e-12
# candidate groups of multiple roots start at this relative radius
CLUSTER_START_RADIUS = 0.25
CLUSTER_SHRINK = 4.0


# ----
class LeeYangZero(object):
    """
    A root *q* of the fugacity polynomial with its complex field
    ``h~ = (ln|q| + i arg q) / (2 beta)`` on the principal branch.
    """

    def __init__(self, q, beta, residual=None, multiplicity=1):
        if q == 0:
            raise GeneralException("Zero fugacity is not a Lee-Yang zero.")
        self.q = complex(q)
        self.beta = float(beta)
        self.phase = cmath.phase(self.q)
        self.h_tilde = complex(math.log(abs(self.q)), self.phase) / \
                       (2.0 * self.beta)
        self.modulus_deviation = abs(abs(self.q) - 1.0)
        self.residual = residual
        self.multiplicity = multiplicity


    def __repr__(self):
        return 'LeeYangZero(q=%r, h_tilde=%r)' % (self.q, self.h_tilde)


# ----
class ZeroTime(object):
    """
    A real time at which the correlator vanishes. For unreachable zeros
    *tau* and *winding* are None and *required_field* holds the bath field
    that would make the zero reachable. *multiplicity* is the order of the
    Lee-Yang zero behind it.
    """

    def __init__(self, source, reachable, required_field, tau=None,
                 winding=None, multiplicity=1):
        self.source = source
        self.multiplicity = multiplicity
        self.reachable = reachable
        self.required_field = required_field
        self.tau = tau
        self.winding = winding
        # |C(tau)|, filled by the correlator verification
        self.predicted_residual = None


    def __repr__(self):
        return 'ZeroTime(source=%r, reachable=%r, tau=%r, winding=%r)' % \
               (self.source, self.reachable, self.tau, self.winding)


# ---
def backward_residual(coefficients, q):
    """
    ``|P(q)| / sum_k |a_k| |q|**k`` for ascending *coefficients*; insensitive
    to the size of *q*.
    """
    q = np.asarray(q, dtype=complex)
    value = np.abs(npoly.polyval(q, coefficients))
    size = npoly.polyval(np.abs(q), np.abs(coefficients))
    return value / size


# ---
def _initial_guesses(coefficients):
    n = len(coefficients) - 1
    # geometric mean of the root moduli is |a_0 / a_n|**(1/n)
    radius = abs(coefficients[0] / coefficients[-1]) ** (1.0 / n)
    # offset keeps the start off the real axis and not conjugate symmetric
    angles = (2.0 * np.pi * np.arange(n) + 0.5 * np.pi) / n
    return radius * np.exp(1j * angles)


# ---
def aberth_ehrlich(coefficients, max_iter=DEFAULT_MAX_ITER, tol=ROOT_TOL):
    """
    All roots of the polynomial with ascending *coefficients* by the
    Aberth-Ehrlich iteration. Returns ``(roots, residuals, iterations)``.
    Raises :exc:`ConvergenceException` with the best approximations when the
    backward residuals do not drop below *tol* within *max_iter* sweeps.
    """
    coefficients = np.asarray(coefficients, dtype=complex)
    derivative = npoly.polyder(coefficients)
    z = _initial_guesses(coefficients)
    n = len(z)

    iterations = 0
    residuals = backward_residual(coefficients, z)
    for iterations in range(1, max_iter + 1):
        p = npoly.polyval(z, coefficients)
        dp = npoly.polyval(z, derivative)
        with np.errstate(divide='ignore', invalid='ignore'):
            newton = p / dp
            differences = z[:, np.newaxis] - z[np.newaxis, :]
            differences[np.arange(n), np.arange(n)] = np.inf
            repulsion = np.sum(1.0 / differences, axis=1)
            step = newton / (1.0 - newton * repulsion)
        # a guess sitting exactly on a root gives 0/0
        step = np.where(np.isfinite(step), step, 0.0)
        z = z - step
        residuals = backward_residual(coefficients, z)
        if np.all(residuals < tol) or \
           np.all(np.abs(step) <= 4 * np.finfo(float).eps * np.abs(z)):
            break

    if not np.all(residuals < tol):
        errmsg = "Aberth-Ehrlich iteration did not converge in " + \
                 str(max_iter) + " iterations (worst residual " + \
                 repr(float(np.max(residuals))) + ")."
        raise ConvergenceException(errmsg, roots=z, residuals=residuals)
    return z, residuals, iterations


# ---
def newton_polish(coefficients, roots, steps=NEWTON_POLISH_STEPS):
    """
    A few Newton steps per root, each kept only if it lowers the backward
    residual.
    """
    coefficients = np.asarray(coefficients, dtype=complex)
    derivative = npoly.polyder(coefficients)
    result = np.array(roots, dtype=complex)
    for i in range(len(result)):
        best = result[i]
        best_residual = backward_residual(coefficients, best)
        for _ in range(steps):
            slope = npoly.polyval(best, derivative)
            if slope == 0:
                break
            candidate = best - npoly.polyval(best, coefficients) / slope
            candidate_residual = backward_residual(coefficients, candidate)
            if not candidate_residual < best_residual:
                break
            best, best_residual = candidate, candidate_residual
        result[i] = best
    return result


# ---
def _linked_groups(roots, radius):
    """
    Single-linkage groups (lists of positions) of *roots* closer than
    ``radius * max(1, |q|)``.
    """
    magnitudes = np.maximum(1.0, np.abs(roots))
    scale = np.maximum(magnitudes[:, np.newaxis], magnitudes[np.newaxis, :])
    adjacency = np.abs(roots[:, np.newaxis] - roots[np.newaxis, :]) <= \
                radius * scale
    count, labels = connected_components(csr_matrix(adjacency),
                                         directed=False)
    return [np.flatnonzero(labels == label) for label in range(count)]


# ---
def multiple_root_centre(coefficients, members, eps=MULTIPLE_ROOT_EPS):
    """
    Tests whether the computed roots *members* are one root of multiplicity
    ``m = len(members)`` split by rounding. The centroid is refined by Newton
    steps on ``P^(m-1)``, which has a simple root there. It is accepted when
    the backward residual of ``P^(j)`` at the centre is below
    ``eps**((m - j) / m)`` for every ``j < m``. Returns the centre or None.
    """
    coefficients = np.asarray(coefficients, dtype=complex)
    m = len(members)
    centre = complex(np.mean(members))
    low = npoly.polyder(coefficients, m - 1)
    high = npoly.polyder(coefficients, m)
    for _ in range(NEWTON_POLISH_STEPS):
        slope = npoly.polyval(centre, high)
        if slope == 0:
            break
        candidate = centre - npoly.polyval(centre, low) / slope
        if not backward_residual(low, candidate) < \
               backward_residual(low, centre):
            break
        centre = complex(candidate)

    for j in range(m):
        limit = eps ** (float(m - j) / m)
        if backward_residual(npoly.polyder(coefficients, j), centre) > limit:
            return None
    return centre


# ---
def merge_multiple_roots(coefficients, roots, tol=CLUSTER_TOL):
    """
    Replaces every group of computed *roots* that forms one multiple root by
    copies of its refined centre (see :func:`multiple_root_centre`).
    Candidate groups are linked within a radius that shrinks from
    ``CLUSTER_START_RADIUS`` until the group passes the test; roots closer
    than *tol* are always merged.
    """
    result = np.array(roots, dtype=complex)
    pending = [(np.arange(len(result)), CLUSTER_START_RADIUS)]
    while pending:
        indices, radius = pending.pop()
        for group in _linked_groups(result[indices], radius):
            members = indices[group]
            if len(members) < 2:
                continue
            centre = multiple_root_centre(coefficients, result[members])
            if centre is None and radius > tol:
                pending.append((members, radius / CLUSTER_SHRINK))
                continue
            if centre is None:
                centre = complex(np.mean(result[members]))
            logger.debug("%d-fold root at %r", len(members), centre)
            result[members] = centre
    return result


# ---
def _canonical_order(roots):
    roots = np.array(roots, dtype=complex)
    # real coefficients: snap numerically real roots onto the axis
    on_axis = np.abs(roots.imag) <= REAL_AXIS_TOL * np.maximum(1.0,
                                                              np.abs(roots))
    roots[on_axis] = roots[on_axis].real
    order = np.lexsort((np.abs(roots), np.angle(roots)))
    return roots[order]


# ---
def find_polynomial_roots(poly, max_iter=DEFAULT_MAX_ITER, tol=ROOT_TOL):
    """
    Returns all ``poly.degree`` roots of the fugacity polynomial *poly* as a
    complex array sorted by phase, then modulus. A multiple root appears as
    identical copies of its refined centre.
    """
    coefficients = poly.coefficients
    if len(coefficients) < 2:
        raise GeneralException("Need a polynomial of degree >= 1.")

    roots, residuals, iterations = aberth_ehrlich(coefficients,
                                                  max_iter=max_iter, tol=tol)
    roots = newton_polish(coefficients, roots)
    result = _canonical_order(merge_multiple_roots(coefficients, roots))

    multiplicities = cluster_multiplicities(result)
    logger.debug("%d roots after %d Aberth iterations, worst residual %g",
                 len(result), iterations,
                 float(np.max(backward_residual(coefficients, result))))
    if np.any(multiplicities > 1):
        logger.debug("clustered roots with multiplicities %r",
                     multiplicities.tolist())
    return result


# ---
def companion_roots(poly):
    """
    Roots as eigenvalues of the companion matrix of the scaled coefficients.
    """
    companion = npoly.polycompanion(poly.coefficients)
    return _canonical_order(scipy.linalg.eigvals(companion))


# ---
def cluster_multiplicities(roots, tol=CLUSTER_TOL):
    """
    For every root, the number of roots (itself included) closer than *tol*.
    """
    roots = np.asarray(roots, dtype=complex)
    distances = np.abs(roots[:, np.newaxis] - roots[np.newaxis, :])
    return np.sum(distances < tol, axis=1)


# ---
def roots_to_fields(roots, thermal, poly=None, tol=CLUSTER_TOL):
    """
    Wraps *roots* into :class:`LeeYangZero` objects at ``thermal.beta``.
    Roots closer than *tol* (the copies left by :func:`merge_multiple_roots`)
    give one zero with their count as multiplicity. When *poly* is given the
    residual ``|P(q)| / max W_k`` is recorded.
    """
    roots = np.asarray(roots, dtype=complex)
    taken = np.zeros(len(roots), dtype=bool)
    result = []
    for i, q in enumerate(roots):
        if taken[i]:
            continue
        members = ~taken & (np.abs(roots - q) < tol)
        taken |= members
        q = complex(np.mean(roots[members]))
        multiplicity = int(np.count_nonzero(members))
        residual = None
        if poly is not None:
            residual = float(abs(poly.evaluate_scaled(q)))
        result.append(LeeYangZero(q, thermal.beta, residual=residual,
                                  multiplicity=multiplicity))
    return result


# ---
def zero_times(zeros, bath_field, probe, thermal,
               n_windows=DEFAULT_WINDOWS, tol=REACHABILITY_TOL):
    """
    Maps Lee-Yang *zeros* to real correlator zero times.

    A zero is reachable when ``Re h~ = h + lambda`` within *tol*; its times are
    ``tau = hbar (2 pi n - phi) / (4 lambda)`` for the *n_windows* windings
    that give ``tau >= 0``. Unreachable zeros are returned once with the bath
    field ``Re h~ - lambda`` that would reach them. The result is sorted by
    time, unreachable entries last.
    """
    coupling = probe.coupling
    if coupling == 0:
        raise DecoupledProbeException(
            "probe decoupled; correlator has no bath-induced zeros")

    target = bath_field + coupling
    reachable_times = []
    unreachable = []
    for source, zero in enumerate(zeros):
        required_field = zero.h_tilde.real - coupling
        if abs(zero.h_tilde.real - target) >= tol:
            if abs(zero.h_tilde.real - target) < 1e3 * tol:
                logger.warning("zero %d misses reachability by %g", source,
                               abs(zero.h_tilde.real - target))
            unreachable.append(ZeroTime(source, False, required_field,
                                        multiplicity=zero.multiplicity))
            continue

        phi = zero.phase
        if coupling > 0:
            first = int(math.ceil(phi / (2.0 * math.pi)))
            windings = range(first, first + n_windows)
        else:
            first = int(math.floor(phi / (2.0 * math.pi)))
            windings = range(first, first - n_windows, -1)
        for n in windings:
            tau = thermal.hbar * (2.0 * math.pi * n - phi) / (4.0 * coupling)
            reachable_times.append(ZeroTime(source, True, required_field,
                                            tau=max(tau, 0.0), winding=n,
                                            multiplicity=zero.multiplicity))

    reachable_times.sort(key=lambda item: (item.tau, item.source))
    return reachable_times + unreachable


# ---
def zero_time_period(probe, thermal):
    """Spacing ``pi hbar / (2 |lambda|)`` of same-branch zero times."""
    if probe.coupling == 0:
        raise DecoupledProbeException(
            "probe decoupled; correlator has no bath-induced zeros")
    return math.pi * thermal.hbar / (2.0 * abs(probe.coupling))


# ---
def unit_circle_check(zeros):
    """
    Largest ``| |q| - 1 |`` over *zeros* (LeeYangZero objects or raw roots).
    """
    deviations = [abs(abs(getattr(zero, 'q', zero)) - 1.0) for zero in zeros]
    return float(max(deviations)) if deviations else 0.0


# ---
def triangle_zeros(beta, coupling):
    """
    Closed form fugacity roots of the triangle bath,
    ``q = -exp(-2 beta J) +/- sqrt(exp(-4 beta J) - 1)``.
    """
    a = math.exp(-2.0 * beta * coupling)
    root = cmath.sqrt(a * a - 1.0)
    return _canonical_order([-a + root, -a - root])


# ---
def literal_triangle_zero_times(thermal, coupling, n_windows=DEFAULT_WINDOWS):
    """
    Zero times of the ferromagnetic triangle as the closed formula is usually
    printed, ``tau = hbar / (4 J) (+/- tan sqrt(exp(4 beta J) - 1) + 2 pi n)``,
    taken literally (tangent, no pi offset). Returns ``(branch, n, tau)``
    triples with ``tau >= 0``, sorted by time, at most ``2 * n_windows``.
    Kept for comparison with the times derived from the polynomial roots.
    """
    if coupling <= 0:
        return []
    angle = math.tan(math.sqrt(math.exp(4.0 * thermal.beta * coupling) - 1.0))
    factor = thermal.hbar / (4.0 * coupling)
    result = []
    for branch in (+1, -1):
        for n in range(-n_windows, n_windows + 1):
            tau = factor * (branch * angle + 2.0 * math.pi * n)
            if tau >= 0:
                result.append((branch, n, tau))
    result.sort(key=lambda item: item[2])
    return result[:2 * n_windows]
