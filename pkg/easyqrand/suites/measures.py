"""Counting bound and quantum to classical conversion suite (diagonal states)."""
import logging

from easyqrand.checks import CheckRecord
from easyqrand.measures import (classical_solovay_to_mlt, classical_state_records,
                                counting_record, measure_of, qmlt_to_classical,
                                qmlt_transfer_records, schnorr_to_classical,
                                solovay_transfer_records, threshold_indices)
from easyqrand.sampling import PlantedDiagonalSampler, RandomProjectorSampler
from .base import BaseSuite

__license__ = "LGPL"

logger = logging.getLogger(__name__)

PROJECTOR_QUBITS = 6
QMLT_DEPTH = 6
CLASSICAL_DEPTH = 12
CLASSICAL_M_MAX = 3


class MeasuresSuite(BaseSuite, suite_name='measures'):

    def plan(self):
        n_max, seed = self.cfg.n_max, self.cfg.seed
        return [
            (RandomProjectorSampler(seed=seed, max_qubits=min(n_max, PROJECTOR_QUBITS)),
             self.check_counting),
            (PlantedDiagonalSampler(seed=seed, depth=min(n_max, QMLT_DEPTH),
                                    classical_depth=min(n_max, CLASSICAL_DEPTH),
                                    delta=self.cfg.delta), self.check_conversions),
        ]

    def check_counting(self, sample):
        proj, delta = sample['projector'], sample['delta']
        indices = threshold_indices(proj, delta)
        return [counting_record(indices.size, proj.rank, delta)], {}

    def check_conversions(self, sample):
        delta = sample['delta']
        measure = measure_of(sample['rho'])
        records = [CheckRecord('measure additivity defect', measure.additivity_defect(), '<=',
                               self.tols.trace)]
        qmlt = sample['qmlt']
        classical = qmlt_to_classical(qmlt, delta, self.tols)
        records.extend(qmlt_transfer_records(measure, qmlt, classical, delta))

        solovay = sample['solovay']
        mlt = classical_solovay_to_mlt(solovay, delta, CLASSICAL_M_MAX, self.tols)
        records.extend(solovay_transfer_records(measure_of(sample['solovay_rho']), solovay, mlt,
                                                delta))

        schnorr = sample['schnorr']
        image = schnorr_to_classical(schnorr, delta, self.tols)
        for x in (sample['x'], sample['path']):
            records.extend(classical_state_records(x, schnorr, image, delta))
        return records, {}
