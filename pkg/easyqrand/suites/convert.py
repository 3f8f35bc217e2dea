"""Solovay to MLT conversion, nesting and convexity suite."""
import logging

from easyqrand.checks import CheckRecord
from easyqrand.constants import Discipline
from easyqrand.convert import mass_records, solovay_to_mlt_with_trace, verify_failure_transfer
from easyqrand.qsigma import (QuantumTest, build_nested, convexity_records, member_value,
                              mixture_pigeonhole, verify_nested)
from easyqrand.sampling import MixtureSampler, PlantedSolovaySampler, RandomQMLTSampler
from .base import BaseSuite

__license__ = "LGPL"

logger = logging.getLogger(__name__)

SOLOVAY_DEPTH = 8
SOLOVAY_M_MAX = 3
NESTING_DEPTH = 6
MIXTURE_DEPTH = 4


class ConvertSuite(BaseSuite, suite_name='convert'):

    def plan(self):
        n_max, seed = self.cfg.n_max, self.cfg.seed
        depth = min(n_max, SOLOVAY_DEPTH)
        return [
            (PlantedSolovaySampler(seed=seed, depth=depth, members=depth,
                                   delta=self.cfg.delta), self.check_solovay),
            (RandomQMLTSampler(seed=seed, depth=min(n_max, NESTING_DEPTH)), self.check_nesting),
            (MixtureSampler(seed=seed, depth=min(n_max, MIXTURE_DEPTH)), self.check_mixture),
        ]

    def check_solovay(self, sample):
        inst, rho = sample['instance'], sample['rho']
        mlt, trace = solovay_to_mlt_with_trace(inst, SOLOVAY_M_MAX, self.tols)
        solovay = inst.as_test()
        records = [CheckRecord('sum_k tau(S^k) < 1', solovay.total_mass, '<', 1.0)]
        records.extend(mass_records(inst, mlt, self.tols))
        for j in range(len(mlt)):
            records.extend(verify_failure_transfer(rho, inst, mlt, mlt.index(j), self.tols))
        return records, {'construction_trace': trace}

    def check_nesting(self, sample):
        test, rho = sample['test'], sample['rho']
        nested = build_nested(test, self.tols)
        records = verify_nested(nested, self.tols)
        values = [member_value(rho, member) for member in nested.members]
        for j in range(len(values) - 1):
            m = nested.index(j)
            records.append(CheckRecord(f'rho(Q^{m + 1}) <= rho(Q^{m})', values[j + 1], '<=',
                                       values[j], tol=self.tols.check))
        return records, {}

    def check_mixture(self, sample):
        states, weights, member = sample['states'], sample['weights'], sample['member']
        records = convexity_records(states, weights, member, self.tols)
        test = QuantumTest(Discipline.QMLT, [member], mass_bounds=[1.0], tols=self.tols)
        outcome = mixture_pigeonhole(states, weights, test, self.cfg.delta, tols=self.tols)
        records.append(CheckRecord('failing mixture has a failing component',
                                   float(outcome['consistent']), '>=', 1.0))
        return records, {}
