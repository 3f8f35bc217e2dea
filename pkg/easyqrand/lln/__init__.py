from .observables import (LLNObservable, lln_average, averaging_diagonal, averaging_operator,
                          reflect_observable)
from .chernoff import (ChernoffTest, chernoff_test, binomial_mass, mass_records,
                       verify_lln_failure, report_records, eigen_threshold_record)
from .markov import (markov_bound, eigen_projector, trace_markov, trace_markov_record)
