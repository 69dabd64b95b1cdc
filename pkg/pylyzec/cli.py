# -*- coding: utf-8 -*-
#
# License: LGPL version 3.0 - see LICENSE.txt for details
#
"""
:mod:`cli` - Command line front-end
===================================

.. module:: pylyzec.cli
   :platform: Unix, Windows
   :synopsis: Batch commands over model files.

Commands (each takes a model file, see :mod:`pylyzec.modelfile`):

* ``zeros``       - Lee-Yang zeros of the bath, one record per zero.
* ``correlator``  - sampled correlator on a time grid.
* ``verify``      - closed form versus brute force correlator.
* ``zero-times``  - real times at which the correlator vanishes.

Data goes to the file given by ``-o`` (``-`` is standard output) as comma
separated values with one ``#`` header line carrying the parameter echo, or
as a stream of JSON records with ``--format records``. Diagnostics go to
standard error.

Exit codes: 0 ok, 1 tolerance failure, 2 parse error, 3 numeric failure,
4 size cap exceeded, 5 no zero reachable.
"""
import argparse
import csv
import logging
import os
import sys

import numpy as np

import pylyzec
from pylyzec.modelfile import read_model_file
from pylyzec.services import LeeYangService, DEFAULT_SAMPLES, DEFAULT_SEED
from pylyzec.zero_finder import DEFAULT_WINDOWS, zero_time_period
from pylyzec.correlator import CLOSED_FORM, ORACLE
from pylyzec.spin_model import MAX_BATH_SITES
from pylyzec.exceptions import PylyzecException, ModelValidationException
from pylyzec.exceptions import DimensionCapException, DecoupledProbeException
from pylyzec.exceptions import NumericException
from pylyzec.utils import EnhancedDict, format_number, check_dependencies
from pylyzec.utils import all_finite

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_TOLERANCE = 1
EXIT_PARSE = 2
EXIT_NUMERIC = 3
EXIT_CAP = 4
EXIT_UNREACHABLE = 5

CSV = 'csv'
RECORDS = 'records'


# ----
class TableWriter(object):
    """
    Writes rows (ordered dictionaries with the same keys) either as comma
    separated values behind a ``#`` header line or as JSON records.
    """

    def __init__(self, stream, columns, header, output_format=CSV):
        self._stream = stream
        self._columns = list(columns)
        self._format = output_format
        if output_format == CSV:
            self._writer = csv.writer(stream, lineterminator='\n')
            self._stream.write('# ' + header.to_json(sort_keys=False) + '\n')
            self._writer.writerow(self._columns)
        else:
            record = EnhancedDict(record='header')
            record.update(header.rounded())
            self._stream.write(record.to_json() + '\n')


    def write(self, row):
        numbers = [row[key] for key in self._columns
                   if isinstance(row[key], (float, complex, np.floating))]
        if not all_finite(numbers):
            raise NumericException("Non-finite value in row " + repr(row))
        if self._format == CSV:
            self._writer.writerow([_csv_cell(row[key])
                                   for key in self._columns])
        else:
            record = EnhancedDict((key, row[key]) for key in self._columns)
            self._stream.write(record.rounded().to_json() + '\n')


# ---
def _csv_cell(value):
    if value is None:
        return ''
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format_number(value)


# ---
class _Output(object):
    """Context manager for ``-`` (standard output) or a file path."""

    def __init__(self, path):
        self._path = path
        self._stream = None

    def __enter__(self):
        if self._path == '-':
            self._stream = sys.stdout
        else:
            self._stream = open(self._path, 'w', newline='')
        return self._stream

    def __exit__(self, *exc_info):
        if self._stream is not sys.stdout:
            self._stream.close()
        else:
            self._stream.flush()
        return False


# ---
def _header(command, modelfile, **options):
    result = EnhancedDict()
    result['command'] = command
    result['parameters'] = modelfile.parameters()
    for key in sorted(options):
        result[key] = options[key]
    return result


# ---
def cmd_zeros(arguments, service):
    modelfile = read_model_file(arguments.model_file)
    _, zeros = service.zeros(modelfile.model, modelfile.thermal)

    columns = ['index', 're_q', 'im_q', 'abs_q', 'phase', 're_h_tilde',
               'im_h_tilde', 'multiplicity', 'residual']
    header = _header('zeros', modelfile)
    with _Output(arguments.output) as stream:
        writer = TableWriter(stream, columns, header, arguments.format)
        for index, zero in enumerate(zeros):
            row = dict(index=index, re_q=zero.q.real, im_q=zero.q.imag,
                       abs_q=abs(zero.q), phase=zero.phase,
                       re_h_tilde=zero.h_tilde.real,
                       im_h_tilde=zero.h_tilde.imag,
                       multiplicity=zero.multiplicity,
                       residual=zero.residual)
            writer.write(row)
    return EXIT_OK


# ---
def cmd_correlator(arguments, service):
    modelfile = read_model_file(arguments.model_file)
    if arguments.points < 2:
        raise ModelValidationException("Need at least 2 grid points.")
    if not arguments.tau_max > arguments.tau_min:
        raise ModelValidationException("Need tau-max > tau-min.")

    grid = np.linspace(arguments.tau_min, arguments.tau_max, arguments.points)
    trace = service.scan(modelfile.model, modelfile.probe, modelfile.thermal,
                         grid, method=arguments.method,
                         threads=arguments.threads, noise=arguments.noise,
                         seed=arguments.seed)

    columns = ['tau', 're_C', 'im_C', 'abs_C']
    header = _header('correlator', modelfile, method=arguments.method,
                     tau_min=arguments.tau_min, tau_max=arguments.tau_max,
                     points=arguments.points, noise=arguments.noise,
                     seed=arguments.seed)
    with _Output(arguments.output) as stream:
        writer = TableWriter(stream, columns, header, arguments.format)
        for tau, value in zip(trace.tau_grid, trace.values):
            writer.write(dict(tau=tau, re_C=value.real, im_C=value.imag,
                              abs_C=abs(value)))
    return EXIT_OK


# ---
def cmd_verify(arguments, service):
    modelfile = read_model_file(arguments.model_file)
    report = service.verify(modelfile.model, modelfile.probe,
                            modelfile.thermal, samples=arguments.samples,
                            seed=arguments.seed)

    with _Output(arguments.output) as stream:
        stream.write('max_relative_deviation ' +
                     format_number(report['max_relative_deviation']) + '\n')
        stream.write('max_t_shift_deviation ' +
                     format_number(report['max_t_shift_deviation']) + '\n')
        stream.write('passed ' + ('true' if report['passed'] else 'false') +
                     '\n')

    if not report['passed']:
        print("ERROR: identity check failed, worst case: " +
              report['worst_case'].rounded().to_json(), file=sys.stderr)
        return EXIT_TOLERANCE
    return EXIT_OK


# ---
def cmd_zero_times(arguments, service):
    modelfile = read_model_file(arguments.model_file)
    model, probe, thermal = modelfile.model, modelfile.probe, modelfile.thermal

    betas = arguments.betas or [thermal.beta]
    sweep = service.sweep_zero_times(model, probe, thermal, betas,
                                     n_windows=arguments.windows)

    columns = ['beta', 'zero', 'multiplicity', 'reachable', 'required_h',
               'tau', 'winding', 'abs_C']
    header = _header('zero-times', modelfile, windows=arguments.windows,
                     betas=betas, period=zero_time_period(probe, thermal))
    any_reachable = False
    with _Output(arguments.output) as stream:
        writer = TableWriter(stream, columns, header, arguments.format)
        for beta, _, times in sweep:
            for item in times:
                any_reachable = any_reachable or item.reachable
                writer.write(dict(beta=beta, zero=item.source,
                                  multiplicity=item.multiplicity,
                                  reachable=item.reachable,
                                  required_h=item.required_field,
                                  tau=item.tau, winding=item.winding,
                                  abs_C=item.predicted_residual))

    for beta, _, times in sweep:
        rows = service.triangle_comparison(model, probe,
                                           thermal.with_beta(beta), times,
                                           n_windows=arguments.windows)
        if rows:
            _print_triangle_comparison(beta, rows)

    if not any_reachable:
        print("ERROR: no zero reachable at h = " +
              format_number(model.bath_field) + "; see required_h column",
              file=sys.stderr)
        return EXIT_UNREACHABLE
    return EXIT_OK


# ---
def _print_triangle_comparison(beta, rows):
    out = sys.stderr
    print("# triangle cluster, beta = " + format_number(beta) +
          ": literal closed formula versus polynomial roots", file=out)
    print("# derived_tau,literal_tau,literal_branch,literal_n,discrepancy",
          file=out)
    for row in rows:
        print(','.join(_csv_cell(row[key]) for key in row), file=out)


# ---
def _float_list(text):
    try:
        result = [float(item) for item in text.split(',') if item.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError("expected comma separated numbers")
    if not result or any(value <= 0 for value in result):
        raise argparse.ArgumentTypeError("expected positive numbers")
    return result


# ---
def _site_cap(text):
    try:
        result = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("expected an integer")
    if not 1 <= result <= MAX_BATH_SITES:
        raise argparse.ArgumentTypeError(
            "expected 1 to " + str(MAX_BATH_SITES) + " sites")
    return result


# ---
def build_parser():
    parser = argparse.ArgumentParser(
        prog='lyprobe',
        description='Lee-Yang zeros of spin baths seen through the two-time '
                    'correlator of a probe spin',
        epilog='ver.: ' + pylyzec.__version__)
    parser.add_argument('-v', '--verbose', action='store_true',
                        help='Print verbose information')

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('model_file', help='Model description (JSON)')
    common.add_argument('-o', '--output', default='-',
                        help="Output file ('-' for standard output)")
    common.add_argument('--format', choices=[CSV, RECORDS], default=CSV,
                        help='Output format')
    common.add_argument('--seed', type=int, default=DEFAULT_SEED,
                        help='Seed of every random draw')
    common.add_argument('--threads', type=int, default=os.cpu_count() or 1,
                        help='Worker threads for grid evaluation')
    common.add_argument('--max-sites', type=_site_cap, default=MAX_BATH_SITES,
                        help='Largest bath handled with dense sector blocks')

    commands = parser.add_subparsers(dest='command')
    commands.required = True

    commands.add_parser('zeros', parents=[common],
                        help='Lee-Yang zeros of the bath')

    correlator = commands.add_parser('correlator', parents=[common],
                                     help='Correlator on a time grid')
    correlator.add_argument('--tau-min', type=float, default=0.0)
    correlator.add_argument('--tau-max', type=float, default=4.0)
    correlator.add_argument('--points', type=int, default=1000)
    correlator.add_argument('--method', choices=[CLOSED_FORM, ORACLE],
                            default=CLOSED_FORM)
    correlator.add_argument('--noise', type=float, default=0.0,
                            help='Amplitude of additive complex noise')

    verify = commands.add_parser('verify', parents=[common],
                                 help='Closed form versus brute force')
    verify.add_argument('--samples', type=int, default=DEFAULT_SAMPLES)

    times = commands.add_parser('zero-times', parents=[common],
                                help='Real times of correlator zeros')
    times.add_argument('--windows', type=int, default=DEFAULT_WINDOWS,
                       help='Windings per reachable zero')
    times.add_argument('--betas', type=_float_list, default=None,
                       help='Comma separated inverse temperatures to sweep')
    return parser


COMMANDS = {'zeros': cmd_zeros,
            'correlator': cmd_correlator,
            'verify': cmd_verify,
            'zero-times': cmd_zero_times}


# ---
def main(arg=None):
    parser = build_parser()
    if arg is None:
        arguments = parser.parse_args()
    else:
        arguments = parser.parse_args(arg)

    logging.basicConfig(
        level=logging.DEBUG if arguments.verbose else logging.WARNING,
        stream=sys.stderr,
        format='%(levelname)s %(name)s: %(message)s')
    logger.debug("dependencies: %r", check_dependencies())

    service = LeeYangService(max_sites=arguments.max_sites)
    try:
        result = COMMANDS[arguments.command](arguments, service)
    except (ModelValidationException, DecoupledProbeException) as ex:
        print("ERROR: " + str(ex), file=sys.stderr)
        result = EXIT_PARSE
    except DimensionCapException as ex:
        print("ERROR: " + str(ex), file=sys.stderr)
        result = EXIT_CAP
    except PylyzecException as ex:
        print("ERROR: " + str(ex), file=sys.stderr)
        result = EXIT_NUMERIC
    return result


if __name__ == '__main__':
    sys.exit(main())
