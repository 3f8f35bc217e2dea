"""Law of large numbers suite: exact averages, Chernoff masses and trace Markov."""
import logging

from easyqrand.checks import CheckRecord
from easyqrand.lln import (eigen_threshold_record, lln_average, mass_records, report_records,
                           trace_markov_record, verify_lln_failure)
from easyqrand.sampling import ChernoffSampler, MarkovPairSampler
from easyqrand.states import make_bernoulli, make_tau
from .base import BaseSuite

__license__ = "LGPL"

logger = logging.getLogger(__name__)

AVERAGE_DEPTH = 20
DEVIANT_DEPTH = 16
EIGEN_DEPTH = 8
MARKOV_QUBITS = 6
CHERNOFF_LEVELS = 40
EXACT_AVERAGE_TOL = 1e-12
AFFINE_OBSERVABLE = (-1.0, 2.0)


class LLNSuite(BaseSuite, suite_name='lln'):

    def plan(self):
        n_max, seed = self.cfg.n_max, self.cfg.seed
        return [
            (ChernoffSampler(seed=seed, mass_levels=CHERNOFF_LEVELS,
                             state_depth=min(n_max, DEVIANT_DEPTH)), self.check_chernoff),
            (MarkovPairSampler(seed=seed, max_qubits=min(n_max, MARKOV_QUBITS)),
             self.check_markov),
        ]

    def average_records(self, p):
        """lln_average equals its mean on tau and b_p at every level.

        The mean is (a + b)/2 on tau and a p + b (1 - p) on b_p, checked for
        the projections (a, b) = (0, 1) and for the observable AFFINE_OBSERVABLE.
        """
        depth = min(self.cfg.n_max, AVERAGE_DEPTH)
        p = float(p)
        records = []
        for a, b in ((0.0, 1.0), AFFINE_OBSERVABLE):
            for rho, expected, name in ((make_tau(depth), 0.5 * (a + b), 'tau'),
                                        (make_bernoulli(p, depth), a * p + b * (1.0 - p), 'b_p')):
                for n in range(1, depth + 1):
                    records.append(CheckRecord(f'|lln_average({name}, {n}, {a}, {b}) - M|',
                                               abs(lln_average(rho, n, a, b) - expected), '<=',
                                               0.0, tol=EXACT_AVERAGE_TOL))
        return records

    def check_chernoff(self, sample):
        test, rho = sample['test'], sample['rho']
        records = self.average_records(sample['p'])
        records.extend(mass_records(test))
        schnorr = test.as_quantum_test(min(self.cfg.n_max, EIGEN_DEPTH))
        records.append(CheckRecord('sum_n b_p(S_n) <= declared limit',
                                   schnorr.partial_sums[-1], '<=', schnorr.declared_limit,
                                   tol=self.tols.mass))
        report = verify_lln_failure(rho, test)
        records.extend(report_records(report))
        for n in range(1, min(self.cfg.n_max, EIGEN_DEPTH) + 1):
            records.append(eigen_threshold_record(test, n))
        return records, {'lln_report': report}

    def check_markov(self, sample):
        record = trace_markov_record(sample['a_mat'], sample['rho'], sample['mu'], sample['m'],
                                     sample['B'], self.tols)
        return [record], {}
