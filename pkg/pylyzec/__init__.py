# -*- coding: utf-8 -*-
#
# License: LGPL version 3.0 - see LICENSE.txt for details
#
"""
PyLYZEC - Python Lee-Yang Zeros and Echo Correlators
====================================================

This library computes the Lee-Yang zeros of small spin-1/2 baths (Ising and
Heisenberg couplings) and the two-time correlator of a probe spin coupled to
the bath, whose zeros in time are Lee-Yang zeros of the bath. See README.md
and the package documentation for installation instructions and examples.
"""
__version_info__ = (0, 1, 0)
__version__ = u'.'.join(map(str, __version_info__))

__license__ = u'GNU Lesser General Public License v.3.0'
