# -*- coding: utf-8 -*-
#
# License: LGPL version 3.0 - see LICENSE.txt for details
#
"""
:mod:`exceptions` - Exception classes used within the library
=============================================================

.. module:: pylyzec.exceptions
   :platform: Unix, Windows
   :synopsis: Contains the exception classes used in the library

Contains the hierarchy of exceptions used within the library. Applications
can catch :exc:`PylyzecException` to handle every failure raised by the
package, or one of the narrower classes to map failures to exit codes (see
:mod:`pylyzec.cli`).
"""

class PylyzecException(Exception):
    """
    The base class for all exception used in the library. It is not meant to
    be raised by any functions/method directly, but can be used by the
    applications as "catch all" exception.
    """
    pass


class GeneralException(PylyzecException):
    """
    Raised by the various functions and object methods in the library.
    """
    pass


class ModelValidationException(GeneralException):
    """
    Indicates that a spin model, probe or thermal parameter set does not
    satisfy its invariants (out of range site index, duplicate coupling,
    non-finite value, unsupported Hamiltonian kind, ...).
    """
    pass


class ModelFileException(ModelValidationException):
    """
    Raised when a model file cannot be parsed or contains unknown keys.
    """
    pass


class DimensionMismatchException(GeneralException):
    """
    Raised when two operators of different dimension are combined.
    """
    pass


class DimensionCapException(GeneralException):
    """
    Raised when the number of spins exceeds the configured cap for dense
    matrices.
    """
    def __init__(self, message, n_sites=None, cap=None):
        super(DimensionCapException, self).__init__(message)
        self.n_sites = n_sites
        self.cap = cap


class NumericException(GeneralException):
    """
    Base class for numerical failures (non-convergence, overflow).
    """
    pass


class ConvergenceException(NumericException):
    """
    Raised by the polynomial root finder when the iteration does not converge.
    The best approximations reached and their residuals are kept in
    :attr:`roots` and :attr:`residuals`.
    """
    def __init__(self, message, roots=None, residuals=None):
        super(ConvergenceException, self).__init__(message)
        self.roots = roots
        self.residuals = residuals


class PartitionOverflowException(NumericException):
    """
    Raised when a partition function does not fit the floating point range.
    The value is still available in scaled form as :attr:`scaled`
    (an instance of :class:`pylyzec.sector_partition.ScaledValue`).
    """
    def __init__(self, message, scaled=None):
        super(PartitionOverflowException, self).__init__(message)
        self.scaled = scaled


class DecoupledProbeException(GeneralException):
    """
    Raised when zero times are requested for a probe with zero coupling.
    """
    pass


class EvaluatorException(GeneralException):
    """
    Raised by :mod:`pylyzec.correlator` evaluators when they are used before
    :meth:`prepare` has been run.
    """
    pass


class ServiceException(GeneralException):
    """
    Raised by high-level :mod:`pylyzec.services` classes.
    """
    pass
