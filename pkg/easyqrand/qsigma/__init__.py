from .projector import Projector, inclusion_defect, span_of_union
from .sigma_prefix import (QSigmaPrefix, zero_prefix, full_prefix, cylinder_prefix,
                           path_prefix, from_projectors, tensor_closure)
from .evaluation import (tau_value, rho_value, rho_values, member_value, member_values,
                         projector_tau, projector_bernoulli_mass, fails_qmlt, passes_qmlt,
                         fails_solovay, passes_solovay, fails, verdict, convexity_records,
                         mixture_pigeonhole)
from .tests import QuantumTest
from .nesting import build_nested, verify_nested
