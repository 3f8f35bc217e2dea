"""Entry points shared by the command line and library users."""
import logging

from easyqrand.codecs import QuantumTestCodec, StateCodec
from easyqrand.constants import PREFIX_DISCIPLINES, Discipline, Suite
from easyqrand.qsigma import verdict
from easyqrand.qsigma.evaluation import DEFAULT_COUNT
from .base import BaseSuite
from .report import SuiteReport

__license__ = "LGPL"

logger = logging.getLogger(__name__)

SUITE_ORDER = [Suite.APPROX, Suite.CONVERT, Suite.MEASURES, Suite.LLN]


def run_suite(cfg, write=True):
    """Run the suite named by `cfg` and write its report into cfg.output_dir.

    Suite 'all' runs the four suites in turn and reports their records
    together.

    Parameters
    ----------
    cfg : RunConfig
    write : bool, default=True
        Write the report files.

    Returns
    -------
    SuiteReport
    """
    if cfg.suite == Suite.ALL:
        parts = [BaseSuite.lookup(suite.value)(cfg.with_suite(suite)).run()
                 for suite in SUITE_ORDER]
        report = SuiteReport(Suite.ALL.value,
                             [record for part in parts for record in part.records],
                             cfg.seed, wall_time=sum(part.wall_time for part in parts))
    else:
        report = BaseSuite.lookup(cfg.suite.value)(cfg).run()
    if write:
        report.write(cfg.output_dir, cfg.format)
    return report


def _member_depth(member):
    return member.depth if hasattr(member, 'depth') else member.qubits


def discipline_verdicts(values, delta, discipline, count=DEFAULT_COUNT):
    """Verdict of every discipline that can read members of this kind.

    Prefix members are read as a qMLT (every value >= delta) and as a weak
    Solovay test (at least `count` values > delta); single projection
    members under the discipline of the test.
    """
    exceeding = sum(1 for val in values if val > delta)
    if discipline in PREFIX_DISCIPLINES:
        return {Discipline.QMLT.value: bool(values) and bool(min(values) >= delta),
                Discipline.QSOLOVAY.value: exceeding >= count}
    return {discipline.value: exceeding >= count}


def eval_state_against_test(state_file, test_file, delta, count=DEFAULT_COUNT, tols=None):
    """Evaluate a stored state on a stored quantum test.

    Parameters
    ----------
    state_file, test_file : str
        Files in the state and quantum_test JSON formats.
    delta : float
    count : int
        Stand-in for "infinitely many" in the Solovay type verdicts.
    tols : Tolerances or None

    Returns
    -------
    dict
        The output of `verdict` for the test's own discipline, with
        'verdicts' mapping every applicable discipline to its failure
        verdict.
    """
    rho = StateCodec(tols=tols).load(state_file)
    test = QuantumTestCodec(tols=tols).load(test_file)
    for j, member in enumerate(test.members):
        if _member_depth(member) > rho.depth:
            msg = (f"Member {j} of the test needs {_member_depth(member)} levels, the state "
                   f"has {rho.depth}")
            logger.error(msg)
            raise RuntimeError(msg)
    result = verdict(rho, test, delta, count)
    result['verdicts'] = discipline_verdicts(result['values'], delta, test.discipline, count)
    return result
