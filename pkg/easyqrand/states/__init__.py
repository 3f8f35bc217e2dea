"""Complex-matrix substrate, density matrices and state prefixes.

Summary
-------
States are coherent sequences of density matrices linked by the partial
trace over the last qubit. This package provides the dense and the sparse
diagonal representation of a level and the canonical state families
(tau, classical states, Bernoulli states and their mixtures).
"""
from .density import DensityMatrix, DiagonalLevel, partial_trace_last, partial_trace_out
from .prefix import (StatePrefix, make_tau, make_classical, make_bernoulli, make_diagonal,
                     make_dense, from_top_level, mix_states, DIAGONAL_KINDS)

__license__ = "LGPL"
