"""Command line front-end.

    easyqrand run --suite approx --seed 42 --count 1 --n-max 4 --out reports
    easyqrand eval state.json test.json --delta 0.5

`run` exits with 0 when every check passes, 1 when a check fails and 2 on
usage or configuration errors. `eval` prints the verdict as JSON.
"""
import argparse
import json
import logging
import sys

from easyqrand.constants import ExitCode, Suite, Tolerances
from easyqrand.qsigma.evaluation import DEFAULT_COUNT
from easyqrand.suites import RunConfig, eval_state_against_test, run_suite
from easyqrand.suites.config import REPORT_FORMATS

__license__ = "LGPL"

logger = logging.getLogger(__name__)


def parse_tolerance(text):
    """KEY=VAL with KEY a tolerance name and VAL a float."""
    key, sep, value = text.partition('=')
    if not sep or key not in Tolerances.DEFAULTS:
        raise argparse.ArgumentTypeError(
            f"expected KEY=VAL with KEY in {sorted(Tolerances.DEFAULTS)}, got {text!r}")
    try:
        return key, float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"tolerance {key} needs a number, got {value!r}")


def build_parser():
    parser = argparse.ArgumentParser(prog='easyqrand',
                                     description='Verify quantum randomness constructions')
    parser.add_argument('--log-level', default='WARNING',
                        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'])
    commands = parser.add_subparsers(dest='command', required=True)

    run = commands.add_parser('run', help='run a verification suite')
    run.add_argument('--config', help='JSON file with RunConfig keys, overridden by flags')
    run.add_argument('--suite', choices=[suite.value for suite in Suite])
    run.add_argument('--seed', type=int)
    run.add_argument('--n-max', dest='n_max', type=int)
    run.add_argument('--count', dest='instance_count', type=int)
    run.add_argument('--delta', type=float)
    run.add_argument('--out', dest='output_dir')
    run.add_argument('--tol', action='append', type=parse_tolerance, default=[],
                     metavar='KEY=VAL')
    run.add_argument('--format', choices=list(REPORT_FORMATS))
    run.add_argument('--workers', type=int)
    run.add_argument('--artifacts', action='store_true', default=None,
                     help='also write eigen logs, traces and LLN reports as CSV')

    evaluate = commands.add_parser('eval', help='evaluate a state on a quantum test')
    evaluate.add_argument('state_file')
    evaluate.add_argument('test_file')
    evaluate.add_argument('--delta', type=float, required=True)
    evaluate.add_argument('--count', type=int, default=DEFAULT_COUNT)
    return parser


def config_from_args(args):
    overrides = {key: getattr(args, key) for key in
                 ('suite', 'seed', 'n_max', 'instance_count', 'delta', 'output_dir', 'format',
                  'workers', 'artifacts')}
    if args.tol:
        overrides['tolerances'] = dict(args.tol)
    if args.config:
        return RunConfig.from_file(args.config, **overrides)
    return RunConfig(**{key: val for key, val in overrides.items() if val is not None})


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=getattr(logging, args.log_level))

    if args.command == 'eval':
        try:
            result = eval_state_against_test(args.state_file, args.test_file, args.delta,
                                             args.count)
        except (RuntimeError, ValueError) as e:
            print(f"easyqrand: {e}", file=sys.stderr)
            return ExitCode.USAGE_ERROR
        print(json.dumps(result, indent=1))
        return ExitCode.PASS

    try:
        cfg = config_from_args(args)
    except (RuntimeError, ValueError) as e:
        print(f"easyqrand: {e}", file=sys.stderr)
        return ExitCode.USAGE_ERROR
    try:
        report = run_suite(cfg)
    except RuntimeError as e:
        logger.critical(f"{cfg.suite.value} suite aborted: {e}")
        return ExitCode.CHECK_FAILURE
    print(f"{report.suite}: {report.passed}/{report.total} checks passed, "
          f"{report.failed} failed")
    for record in report.failures():
        print(f"  FAIL {record.instance_id}: {record.inequality} "
              f"(lhs={record.lhs!r}, rhs={record.rhs!r}, margin={record.margin!r})")
    return ExitCode.PASS if report.ok else ExitCode.CHECK_FAILURE


if __name__ == '__main__':
    sys.exit(main())
