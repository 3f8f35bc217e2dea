from .greedy import GreedyResult, greedy_maximal_set, maximality_record
from .bounds import (ApproxInstance, approximate_density_class, trace_bound_record,
                     transfer_record, lemma_review_check, norm_subadditivity_check)
