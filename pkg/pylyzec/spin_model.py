# -*- coding: utf-8 -*-
#
# License: LGPL version 3.0 - see LICENSE.txt for details
#
"""
:mod:`spin_model` - Spin baths, probe parameters and Hamiltonian matrices
=========================================================================

.. module:: pylyzec.spin_model
   :platform: Unix, Windows
   :synopsis: Builds bath and total Hamiltonians as dense Hermitian matrices.

The functions in this module build the operators of a spin-1/2 bath

    H = H' - h * sum_j sigma^z_j

coupled to a probe spin through ``-lambda * sigma^z_0 * sum_j sigma^z_j``.
Only interactions that commute with the total magnetization are supported:
the Ising (``ising_zz``) and isotropic Heisenberg (``heisenberg``) couplings.

Basis convention: bit *j* of a basis index is 1 when spin *j* is up
(sigma^z eigenvalue +1), so the magnetization of a basis state is a
population count. In the total Hilbert space the probe occupies the highest
bit.

The field term ``-h * sum sigma^z`` is never added to the matrix of H'; all
field dependence is handled analytically by :mod:`pylyzec.sector_partition`.

Example usage:

    >>> from pylyzec.spin_model import SpinModel, build_bath_interaction
    >>> model = SpinModel(2, 'ising_zz', [(0, 1, 1.0)])
    >>> build_bath_interaction(model).matrix.diagonal().real
    array([-1.,  1.,  1., -1.])

"""
import logging
import math

import numpy as np

from pylyzec.exceptions import ModelValidationException
from pylyzec.exceptions import DimensionMismatchException
from pylyzec.exceptions import DimensionCapException
from pylyzec.utils import is_finite_real

logger = logging.getLogger(__name__)

ISING_ZZ = 'ising_zz'
HEISENBERG = 'heisenberg'
MODEL_KINDS = (ISING_ZZ, HEISENBERG)

# dense matrices only; sector blocks stay below C(14, 7) = 3432
MAX_BATH_SITES = 14
# full 2**(N+1) space used by the brute force correlator
MAX_ORACLE_SITES = 13

HERMITICITY_TOL = 1e-12

# single site operators in the (down, up) ordering of the basis
IDENTITY = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, 1j], [-1j, 0]], dtype=complex)
SIGMA_Z = np.array([[-1, 0], [0, 1]], dtype=complex)
# raising operator maps down (index 0) to up (index 1)
SIGMA_PLUS = (SIGMA_X + 1j * SIGMA_Y) / 2
SIGMA_MINUS = (SIGMA_X - 1j * SIGMA_Y) / 2

PAULI = {'x': SIGMA_X, 'y': SIGMA_Y, 'z': SIGMA_Z}


def levi_civita(a, b, c):
    """
    Returns the totally antisymmetric symbol for axis labels ``'x'``, ``'y'``,
    ``'z'``.
    """
    order = 'xyz'
    i, j, k = order.index(a), order.index(b), order.index(c)
    result = (i - j) * (j - k) * (k - i) / 2
    return int(result)


# ----
class SpinModel(object):
    """
    A spin-1/2 bath: *n_sites* spins, an interaction *kind* (one of
    :data:`MODEL_KINDS`), a list of couplings ``(j, j2, J)`` with
    ``0 <= j < j2 < n_sites`` and the bath field *bath_field* (the *h* of
    ``-h * sum sigma^z``).

    Raises :exc:`ModelValidationException` when any invariant is violated.
    Instances are not modified after construction.
    """

    def __init__(self, n_sites, kind, couplings=None, bath_field=0.0):
        if isinstance(n_sites, bool) or not isinstance(n_sites, int) \
           or n_sites < 1:
            errmsg = "Number of sites must be a positive integer, got " + \
                     repr(n_sites) + "."
            raise ModelValidationException(errmsg)

        if kind not in MODEL_KINDS:
            errmsg = "Unsupported interaction kind '" + str(kind) + \
                     "'. Only interactions commuting with the total " + \
                     "magnetization are accepted: " + ", ".join(MODEL_KINDS)
            raise ModelValidationException(errmsg)

        if not is_finite_real(bath_field):
            errmsg = "Bath field must be a finite real number, got " + \
                     repr(bath_field) + "."
            raise ModelValidationException(errmsg)

        seen = set()
        checked = []
        for coupling in (couplings or []):
            try:
                j, j2, strength = coupling
            except (TypeError, ValueError):
                errmsg = "Coupling must be a triple (j, j2, J), got " + \
                         repr(coupling) + "."
                raise ModelValidationException(errmsg)
            if isinstance(j, bool) or isinstance(j2, bool) or \
               not isinstance(j, (int, np.integer)) or \
               not isinstance(j2, (int, np.integer)):
                errmsg = "Site indices must be integers: " + repr(coupling)
                raise ModelValidationException(errmsg)
            if not (0 <= j < j2 < n_sites):
                errmsg = "Coupling indices out of range (need 0 <= j < j2 < " + \
                         str(n_sites) + "): " + repr(coupling)
                raise ModelValidationException(errmsg)
            if (j, j2) in seen:
                errmsg = "Duplicate coupling between sites " + str(j) + \
                         " and " + str(j2) + "."
                raise ModelValidationException(errmsg)
            if not is_finite_real(strength):
                errmsg = "Coupling strength must be finite: " + repr(coupling)
                raise ModelValidationException(errmsg)
            seen.add((int(j), int(j2)))
            checked.append((int(j), int(j2), float(strength)))

        self.n_sites = n_sites
        self.kind = kind
        self.couplings = tuple(checked)
        self.bath_field = float(bath_field)


    @property
    def dimension(self):
        """Dimension of the bath Hilbert space, ``2**n_sites``."""
        return 2 ** self.n_sites


    @property
    def is_ferromagnetic(self):
        """True when every coupling strength is non-negative."""
        return all(strength >= 0 for _, _, strength in self.couplings)


    def with_field(self, bath_field):
        """Returns a copy of the model with another bath field."""
        return SpinModel(self.n_sites, self.kind, self.couplings, bath_field)


    def to_dict(self):
        """Parameter echo used in output headers."""
        result = dict(sites=self.n_sites,
                      kind=self.kind,
                      couplings=[[j, j2, strength]
                                 for j, j2, strength in self.couplings],
                      field_h=self.bath_field)
        return result


    def __repr__(self):
        return 'SpinModel(n_sites=%d, kind=%r, couplings=%r, bath_field=%r)' % \
               (self.n_sites, self.kind, list(self.couplings), self.bath_field)


# ----
class ProbeParams(object):
    """
    Probe spin parameters: the probe-bath *coupling* (lambda) and the probe
    field *h0*. A zero coupling is allowed (decoupled probe).
    """

    def __init__(self, coupling, h0=0.0):
        for name, value in (('coupling', coupling), ('h0', h0)):
            if not is_finite_real(value):
                errmsg = "Probe parameter '" + name + \
                         "' must be a finite real number, got " + \
                         repr(value) + "."
                raise ModelValidationException(errmsg)
        self.coupling = float(coupling)
        self.h0 = float(h0)


    def to_dict(self):
        return {'lambda': self.coupling, 'h0': self.h0}


    def __repr__(self):
        return 'ProbeParams(coupling=%r, h0=%r)' % (self.coupling, self.h0)


# ----
class ThermalParams(object):
    """
    Inverse temperature *beta* and Planck constant *hbar* (default 1). Both
    must be strictly positive.
    """

    def __init__(self, beta, hbar=1.0):
        for name, value in (('beta', beta), ('hbar', hbar)):
            if not is_finite_real(value) or value <= 0:
                errmsg = "Thermal parameter '" + name + \
                         "' must be a finite positive number, got " + \
                         repr(value) + "."
                raise ModelValidationException(errmsg)
        self.beta = float(beta)
        self.hbar = float(hbar)


    def with_beta(self, beta):
        """Returns a copy with another inverse temperature."""
        return ThermalParams(beta, self.hbar)


    def to_dict(self):
        return {'beta': self.beta, 'hbar': self.hbar}


    def __repr__(self):
        return 'ThermalParams(beta=%r, hbar=%r)' % (self.beta, self.hbar)


# ----
class HamiltonianOperator(object):
    """
    A dense Hermitian operator on *n_sites* spins in the sigma^z product basis.
    """

    def __init__(self, matrix, n_sites):
        matrix = np.asarray(matrix, dtype=complex)
        if matrix.shape != (2 ** n_sites, 2 ** n_sites):
            errmsg = "Matrix shape " + str(matrix.shape) + \
                     " does not match " + str(n_sites) + " sites."
            raise DimensionMismatchException(errmsg)
        matrix.setflags(write=False)
        self.matrix = matrix
        self.n_sites = n_sites


    @property
    def dimension(self):
        return self.matrix.shape[0]


    def hermiticity_error(self):
        """Largest entry of ``|M - M^dagger|``."""
        return float(np.max(np.abs(self.matrix - self.matrix.conj().T)))


    def is_hermitian(self, tol=HERMITICITY_TOL):
        return self.hermiticity_error() < tol


    def is_diagonal(self):
        off_diagonal = self.matrix - np.diag(self.matrix.diagonal())
        return not np.any(off_diagonal)


    def eigenvalues(self):
        """Sorted real spectrum (dense Hermitian solver)."""
        return np.linalg.eigvalsh(self.matrix)


# ---
def check_site_cap(n_sites, cap, what='bath'):
    """
    Raises :exc:`DimensionCapException` when *n_sites* exceeds *cap*.
    """
    if n_sites > cap:
        errmsg = "Too many spins for dense " + what + " matrices: " + \
                 str(n_sites) + " > " + str(cap) + "."
        raise DimensionCapException(errmsg, n_sites=n_sites, cap=cap)


# ---
def site_operator(single, site, n_sites):
    """
    Embeds the 2x2 matrix *single* acting on *site* into the space of
    *n_sites* spins. The rightmost Kronecker factor is site 0 (lowest bit).
    """
    result = np.ones((1, 1), dtype=complex)
    for position in range(n_sites - 1, -1, -1):
        factor = single if position == site else IDENTITY
        result = np.kron(result, factor)
    return result


# ---
def basis_magnetizations(n_sites):
    """
    Returns the sum of sigma^z (``2 * popcount(b) - n``) for every basis index
    *b*, as an integer array.
    """
    states = np.arange(2 ** n_sites)
    ups = np.zeros(states.shape, dtype=int)
    for site in range(n_sites):
        ups += (states >> site) & 1
    return 2 * ups - n_sites


# ---
def build_bath_interaction(model, max_sites=MAX_BATH_SITES):
    """
    Builds the interaction H' of *model* (without the field term) as a dense
    ``2**N x 2**N`` matrix from products of Pauli matrices:

    * ``ising_zz``:   ``H' = -sum J sz_j sz_j2``
    * ``heisenberg``: ``H' = -sum J (sx_j sx_j2 + sy_j sy_j2 + sz_j sz_j2)``
    """
    n_sites = model.n_sites
    check_site_cap(n_sites, max_sites)

    axes = 'z' if model.kind == ISING_ZZ else 'xyz'
    matrix = np.zeros((model.dimension, model.dimension), dtype=complex)
    for j, j2, strength in model.couplings:
        for axis in axes:
            pauli = PAULI[axis]
            matrix -= strength * np.dot(site_operator(pauli, j, n_sites),
                                        site_operator(pauli, j2, n_sites))

    result = HamiltonianOperator(matrix, n_sites)
    logger.debug("built %s interaction on %d sites (%d couplings)",
                 model.kind, n_sites, len(model.couplings))
    return result


# ---
def total_sz_operator(n_sites, max_sites=MAX_BATH_SITES):
    """
    Returns the diagonal operator ``sum_j sigma^z_j`` on *n_sites* spins.
    """
    if n_sites < 1:
        raise ModelValidationException("Need at least one site.")
    check_site_cap(n_sites, max_sites)
    result = HamiltonianOperator(np.diag(basis_magnetizations(n_sites)),
                                 n_sites)
    return result


# ---
def commutator_norm(a, b):
    """
    Returns the largest entry magnitude of ``AB - BA``. Accepts
    :class:`HamiltonianOperator` instances or square arrays.
    """
    ma = a.matrix if isinstance(a, HamiltonianOperator) else np.asarray(a)
    mb = b.matrix if isinstance(b, HamiltonianOperator) else np.asarray(b)
    if ma.shape != mb.shape:
        errmsg = "Cannot commute operators of shapes " + str(ma.shape) + \
                 " and " + str(mb.shape) + "."
        raise DimensionMismatchException(errmsg)
    commutator = np.dot(ma, mb) - np.dot(mb, ma)
    return float(np.max(np.abs(commutator)))


# ---
def build_total_hamiltonian(model, probe, max_sites=MAX_ORACLE_SITES):
    """
    Builds

        H_T = H' - h sum_j sz_j - h0 sz_0 - lambda sz_0 sum_j sz_j

    on ``N + 1`` spins with the probe on the highest bit (site index N).
    Only the brute force correlator uses the full space.
    """
    n_sites = model.n_sites
    check_site_cap(n_sites + 1, max_sites, what='total')

    interaction = build_bath_interaction(model).matrix
    bath_sz = np.diag(basis_magnetizations(n_sites)).astype(complex)
    bath = interaction - model.bath_field * bath_sz
    identity = np.eye(model.dimension, dtype=complex)

    matrix = np.kron(IDENTITY, bath) \
             - probe.h0 * np.kron(SIGMA_Z, identity) \
             - probe.coupling * np.kron(SIGMA_Z, bath_sz)
    result = HamiltonianOperator(matrix, n_sites + 1)
    return result


# ---
def probe_operator(single, n_bath_sites):
    """
    Embeds a single site matrix acting on the probe (highest bit) into the
    total space of ``n_bath_sites + 1`` spins.
    """
    return site_operator(single, n_bath_sites, n_bath_sites + 1)


# ---
def sector_states(n_sites, n_up):
    """
    Returns the sorted basis indices with exactly *n_up* spins up.
    """
    magnetizations = basis_magnetizations(n_sites)
    return np.flatnonzero(magnetizations == 2 * n_up - n_sites)


# ---
def sector_block(model, states):
    """
    Returns the real symmetric matrix of H' restricted to the basis indices
    *states*, built directly from bit operations: the zz part is diagonal and
    the xx + yy part of a Heisenberg bond exchanges two antiparallel spins
    with amplitude ``-2 J``. *states* must be closed under such exchanges
    (a magnetization sector is).
    """
    states = np.asarray(states)
    size = len(states)
    position = dict((int(b), i) for i, b in enumerate(states))
    block = np.zeros((size, size))

    for j, j2, strength in model.couplings:
        bit_j = (states >> j) & 1
        bit_j2 = (states >> j2) & 1
        aligned = np.where(bit_j == bit_j2, 1.0, -1.0)
        block[np.arange(size), np.arange(size)] -= strength * aligned

        if model.kind == HEISENBERG:
            mask = (1 << j) | (1 << j2)
            for i in np.flatnonzero(bit_j != bit_j2):
                target = position[int(states[i]) ^ mask]
                block[target, i] -= 2.0 * strength
    return block


# ---
def chain_couplings(n_sites, strength=1.0):
    """Nearest-neighbour couplings of an open chain."""
    return [(j, j + 1, strength) for j in range(n_sites - 1)]


def ring_couplings(n_sites, strength=1.0):
    """Nearest-neighbour couplings of a closed ring (n_sites >= 3)."""
    result = chain_couplings(n_sites, strength)
    if n_sites >= 3:
        result.append((0, n_sites - 1, strength))
    return result


def complete_couplings(n_sites, strength=1.0):
    """All-to-all couplings."""
    return [(j, j2, strength)
            for j in range(n_sites) for j2 in range(j + 1, n_sites)]


# ---
def triangle_cluster(coupling, field):
    """
    The Ising triangle ``-J(s0 s1 + s0 s2 + s1 s2) - h(s0 + s1 + s2)`` written
    as a two-spin bath plus a probe: returns ``(SpinModel, ProbeParams)`` with
    bath coupling *J*, bath field *h*, ``lambda = J`` and ``h0 = h``.
    """
    model = SpinModel(2, ISING_ZZ, [(0, 1, coupling)], bath_field=field)
    probe = ProbeParams(coupling, h0=field)
    return model, probe


# ---
def is_triangle_cluster(model, probe):
    """
    True when *model* and *probe* describe the Ising triangle of
    :func:`triangle_cluster`.
    """
    result = False
    if model.kind == ISING_ZZ and model.n_sites == 2 and \
       len(model.couplings) == 1:
        strength = model.couplings[0][2]
        result = math.isclose(probe.coupling, strength, rel_tol=1e-12) and \
                 math.isclose(probe.h0, model.bath_field, rel_tol=1e-12,
                              abs_tol=1e-15)
    return result
