from .dyadic import DyadicMeasure, measure_of, is_prefix_free, cylinder_indices
from .classical import ClassicalSigmaPrefix, ClassicalTestPrefix, top_level_prefix
from .conversions import (threshold_indices, threshold_basis_set, check_counting_bound,
                          counting_record, qmlt_to_classical, classical_solovay_to_mlt,
                          schnorr_to_classical, qmlt_transfer_records, solovay_transfer_records,
                          classical_state_records)
