# -*- coding: utf-8 -*-
#
# License: LGPL version 3.0 - see LICENSE.txt for details
#
"""
:mod:`utils` - Various utility functions and classes
=====================================================

.. module:: pylyzec.utils
   :platform: Unix, Windows
   :synopsis: Provides commonly used utility functions

Contains various utility functions used by the rest of the package: the
ordered record dictionary used for machine readable output, the fixed
number formatting of the emitted tables and the tolerance helpers shared by
the verification code.
"""
import json
import math
import numbers
from collections import OrderedDict

import numpy as np

# significant digits of every emitted number
SIGNIFICANT_DIGITS = 12

# floor of the denominator in relative deviations
RELATIVE_FLOOR = 1e-30


def check_dependencies():
    """
    Checks if the required dependenices for the package are present.
    Returns a dictionary with keys - library names and values - None (if the
    library is not found) or its version string.
    """
    result = {'numpy': None,
              'scipy': None
             }
    try:
        import numpy
        result['numpy'] = str(numpy.__version__)
    except ImportError:
        pass

    try:
        import scipy
        result['scipy'] = str(scipy.__version__)
    except ImportError:
        pass

    return result


# -----------------------------------------------
def format_number(value, digits=SIGNIFICANT_DIGITS):
    """
    Formats a real number with *digits* significant digits. Negative zero is
    printed as zero so that re-runs stay byte-identical.
    """
    value = float(value) + 0.0 # -0.0 + 0.0 == +0.0
    return '{0:.{1}g}'.format(value, digits)


# -----------------------------------------------
def round_number(value, digits=SIGNIFICANT_DIGITS):
    """
    Returns *value* rounded to *digits* significant digits as a float (or the
    argument unchanged if it is not a real number). Used for the records
    output format.
    """
    result = value
    if isinstance(value, bool):
        pass
    elif isinstance(value, numbers.Integral):
        result = int(value)
    elif isinstance(value, numbers.Real):
        result = float(format_number(value, digits))
    return result


# -----------------------------------------------
def relative_deviation(value, reference, floor=RELATIVE_FLOOR):
    """
    Returns ``|value - reference| / max(|reference|, floor)``. Works for
    complex scalars and numpy arrays (the maximum over the array is returned).
    """
    value = np.asarray(value)
    reference = np.asarray(reference)
    denominator = np.maximum(np.abs(reference), floor)
    result = float(np.max(np.abs(value - reference) / denominator))
    return result


# -----------------------------------------------
def all_finite(values):
    """
    Returns True when every element of *values* (real or complex) is finite.
    """
    arr = np.asarray(values)
    return bool(np.all(np.isfinite(arr)))


# -----------------------------------------------
def is_close_to_zero(value, abs_tol=1e-9):
    """
    Returns True when ``|value| <= abs_tol``.
    """
    return abs(value) <= abs_tol


# -----------------------------------------------
class EnhancedDict(OrderedDict):
    """
    This class adds some handy and often used methods to the standard
    OrderedDict() class.
    """

    def to_json(self, *args, **kwargs):
        """
        Converts the dictionary into JSON format. Any arguments provided are
        passed to :func:`json.dumps`.
        """
        result = json.dumps(self, *args, **kwargs)
        return result


    def rounded(self, digits=SIGNIFICANT_DIGITS):
        """
        Returns a copy where every real number is rounded with
        :func:`round_number`. Nested dictionaries are rounded too.
        """
        result = EnhancedDict()
        for key in self:
            element = self[key]
            if isinstance(element, EnhancedDict):
                result[key] = element.rounded(digits)
            elif isinstance(element, dict):
                result[key] = EnhancedDict(element).rounded(digits)
            else:
                result[key] = round_number(element, digits)
        return result


# -----------------------------------------------
def is_finite_real(value):
    """
    Returns True if *value* is a real number (bool excluded) and finite.
    """
    result = False
    if isinstance(value, numbers.Real) and not isinstance(value, bool):
        result = math.isfinite(float(value))
    return result
