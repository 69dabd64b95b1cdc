# -*- coding: utf-8 -*-
#
# License: LGPL version 3.0 - see LICENSE.txt for details
#
"""
:mod:`modelfile` - Model description files
==========================================

.. module:: pylyzec.modelfile
   :platform: Unix, Windows
   :synopsis: Strict parsing of JSON model files.

A model file is a JSON document describing the bath, the probe and the
temperature::

    {
      "sites": 2,
      "kind": "ising_zz",
      "couplings": [[0, 1, 1.0]],
      "field_h": -1.0,
      "probe": {"lambda": 1.0, "h0": -1.0},
      "beta": 0.5,
      "hbar": 1.0
    }

``couplings``, ``field_h`` and ``hbar`` are optional (empty, 0 and 1), as is
``h0`` inside ``probe``. Unknown keys are rejected: a model with, say, a
transverse field must fail loudly rather than be silently dropped.
"""
import json
import logging

from pylyzec.spin_model import SpinModel, ProbeParams, ThermalParams
from pylyzec.exceptions import ModelFileException, ModelValidationException
from pylyzec.utils import EnhancedDict

logger = logging.getLogger(__name__)

REQUIRED_KEYS = ('sites', 'kind', 'probe', 'beta')
OPTIONAL_KEYS = ('couplings', 'field_h', 'hbar')
PROBE_KEYS = ('lambda', 'h0')


# ----
class ModelFile(object):
    """
    A parsed model file: :attr:`model`, :attr:`probe` and :attr:`thermal`.
    """

    def __init__(self, model, probe, thermal, path=None):
        self.model = model
        self.probe = probe
        self.thermal = thermal
        self.path = path


    def parameters(self):
        """Full parameter echo in the key order of the file format."""
        result = EnhancedDict()
        result.update(self.model.to_dict())
        result['probe'] = self.probe.to_dict()
        result.update(self.thermal.to_dict())
        return result


# ---
def parse_model_document(document, path=None):
    """
    Validates a decoded JSON *document* (a dictionary) and returns a
    :class:`ModelFile`. Raises :exc:`ModelFileException` for structural
    problems and :exc:`ModelValidationException` for invalid values.
    """
    if not isinstance(document, dict):
        raise ModelFileException("Model file must contain a JSON object.")

    unknown = sorted(set(document) - set(REQUIRED_KEYS + OPTIONAL_KEYS))
    if unknown:
        errmsg = "Unknown keys in model file: " + ", ".join(unknown)
        raise ModelFileException(errmsg)
    missing = [key for key in REQUIRED_KEYS if key not in document]
    if missing:
        errmsg = "Missing keys in model file: " + ", ".join(missing)
        raise ModelFileException(errmsg)

    probe_section = document['probe']
    if not isinstance(probe_section, dict):
        raise ModelFileException("'probe' must be an object.")
    unknown = sorted(set(probe_section) - set(PROBE_KEYS))
    if unknown:
        errmsg = "Unknown keys in 'probe': " + ", ".join(unknown)
        raise ModelFileException(errmsg)
    if 'lambda' not in probe_section:
        raise ModelFileException("Missing 'lambda' in 'probe'.")

    couplings = document.get('couplings', [])
    if not isinstance(couplings, list):
        raise ModelFileException("'couplings' must be a list of [j, j2, J].")

    model = SpinModel(document['sites'], document['kind'],
                      [tuple(item) if isinstance(item, list) else item
                       for item in couplings],
                      bath_field=document.get('field_h', 0.0))
    probe = ProbeParams(probe_section['lambda'], probe_section.get('h0', 0.0))
    thermal = ThermalParams(document['beta'], document.get('hbar', 1.0))

    result = ModelFile(model, probe, thermal, path=path)
    return result


# ---
def read_model_file(path):
    """
    Reads and validates the model file at *path*.
    """
    try:
        with open(path) as afile:
            document = json.load(afile)
    except (IOError, OSError) as ex:
        raise ModelFileException("Cannot read model file '" + str(path) +
                                 "': " + str(ex))
    except ValueError as ex:
        raise ModelFileException("Invalid JSON in '" + str(path) + "': " +
                                 str(ex))

    try:
        result = parse_model_document(document, path=path)
    except ModelValidationException:
        logger.debug("rejected model file %s", path)
        raise
    return result


# ---
def write_model_file(path, model, probe, thermal):
    """
    Writes a model file that :func:`read_model_file` reads back.
    """
    document = ModelFile(model, probe, thermal).parameters()
    with open(path, 'w') as afile:
        afile.write(document.to_json(indent=2))
        afile.write('\n')
