"""Approximation bound suite.

Each instance is a planted ApproxInstance. The greedy maximal set M is
built once; the suite checks the trace bound, the maximality of M, the
transfer bound on rejection-sampled members of the class and the operator
form of the bound with W the sum of m captured subspaces.
"""
import logging

from easyqrand.approx import (approximate_density_class, lemma_review_check, maximality_record,
                              norm_subadditivity_check, trace_bound_record, transfer_record)
from easyqrand.sampling import ApproxInstanceSampler
from easyqrand.sampling.planted import sample_class
from .base import BaseSuite

__license__ = "LGPL"

logger = logging.getLogger(__name__)

MAX_APPROX_QUBITS = 6


class ApproxSuite(BaseSuite, suite_name='approx'):

    samples_per_instance = 50

    def plan(self):
        sampler = ApproxInstanceSampler(seed=self.cfg.seed,
                                        max_qubits=min(self.cfg.n_max, MAX_APPROX_QUBITS))
        return [(sampler, self.check_instance)]

    def check_instance(self, sample):
        inst, core, rng = sample['instance'], sample['core'], sample['rng']
        result = approximate_density_class(inst, self.tols)
        records = [trace_bound_record(inst, result, self.tols), maximality_record(inst.v, result)]
        states = sample_class(rng, inst, self.samples_per_instance, core=core)
        records.extend(transfer_record(inst, result, rho, self.tols) for rho in states)
        if states:
            rho = states[0]
            captured = [proj for proj in inst.subspaces if proj.expectation(rho) > inst.delta]
            w = sum(proj.matrix() for proj in captured[:inst.m])
            records.extend(lemma_review_check(inst.v, inst.m, inst.delta, w, rho, result,
                                              self.tols))
        if len(inst.subspaces) > 1:
            records.append(norm_subadditivity_check(inst.subspaces[0].matrix(),
                                                    inst.subspaces[1].matrix(), self.tols))
        return records, {'eigen_log': result.eigen_log}
