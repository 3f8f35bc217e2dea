"""Random states, projections and tests.

Every function takes a numpy Generator as its first argument and draws all
of its randomness from it.
"""
import logging
import numpy as np

from easyqrand.constants import Discipline
from easyqrand.qsigma import Projector, QSigmaPrefix, QuantumTest
from easyqrand.states import DensityMatrix, DiagonalLevel, from_top_level
from easyqrand.states import matrices

__license__ = "LGPL"

logger = logging.getLogger(__name__)


def complex_gaussian(rng, shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_density_matrix(rng, qubits, rank=None):
    """rho = A A^dagger / Tr(A A^dagger) for a complex Gaussian (2^n x rank) A."""
    dim = 2 ** qubits
    rank = dim if rank is None else rank
    a = complex_gaussian(rng, (dim, rank))
    rho = a @ a.conj().T
    return DensityMatrix(rho / np.trace(rho).real, validate=False)


def random_dense_state(rng, depth, rank=None):
    """Coherent dense prefix: random top level, lower levels by partial trace."""
    return from_top_level(random_density_matrix(rng, depth, rank))


def random_diagonal_level(rng, qubits, support=None):
    """Diagonal level with Dirichlet(1, ..., 1) weights on `support` random strings."""
    dim = 2 ** qubits
    if support is None or support >= dim:
        indices = np.arange(dim)
    else:
        indices = np.sort(rng.choice(dim, size=support, replace=False))
    weights = rng.dirichlet(np.ones(indices.size))
    return DiagonalLevel(qubits, indices, weights, validate=False)


def random_diagonal_state(rng, depth, support=None):
    """Coherent diagonal prefix built from a random top level."""
    return from_top_level(random_diagonal_level(rng, depth, support))


def random_projector(rng, qubits, rank=None):
    """Haar-random projection of the given (or a uniformly random) rank."""
    dim = 2 ** qubits
    if rank is None:
        rank = int(rng.integers(0, dim + 1))
    return Projector.from_columns(matrices.random_unitary_columns(rng, dim, rank),
                                  qubits=qubits, validate=False)


def _grow(rng, lower, qubits, extra, diagonal):
    """lower (x) I plus `extra` random directions orthogonal to it."""
    if lower is None:
        lifted = Projector.zero(qubits)
    else:
        lifted = lower.tensor_identity()
    if extra == 0:
        return lifted
    if diagonal:
        free = np.setdiff1d(np.arange(2 ** qubits), lifted.support)
        picked = rng.choice(free, size=extra, replace=False)
        return Projector.from_support(qubits, np.concatenate([lifted.support, picked]))
    basis = lifted.columns()
    added = matrices.complete_orthonormal(rng, basis, extra)
    return Projector(qubits, columns=np.ascontiguousarray(np.column_stack([basis, added])))


def random_sigma_prefix(rng, depth, budgets=None, diagonal=False):
    """Random nested prefix.

    Level k is the lift of level k - 1 plus a random number of new
    directions, keeping rank(P_k) <= budgets[k - 1] (2^k by default).

    Parameters
    ----------
    rng : numpy.random.Generator
    depth : int
    budgets : sequence of int or None
        Rank caps per level; each must be at least twice the previous one
        for the lift to fit.
    diagonal : bool
        Draw diagonal projections (basis index sets) instead of dense ones.

    Returns
    -------
    QSigmaPrefix
    """
    budgets = [2 ** k for k in range(1, depth + 1)] if budgets is None else list(budgets)
    levels = []
    lower = None
    for k in range(1, depth + 1):
        lifted = 0 if lower is None else 2 * lower.rank
        room = budgets[k - 1] - lifted
        if room < 0:
            msg = f"Rank budget {budgets[k - 1]} at level {k} cannot hold the lift ({lifted})"
            logger.error(msg)
            raise RuntimeError(msg)
        extra = int(rng.integers(0, min(room, 2) + 1)) if room else 0
        lower = _grow(rng, lower, k, extra, diagonal)
        levels.append(lower)
    return QSigmaPrefix(levels)


def qmlt_budgets(index, depth):
    """Rank caps 2^(n - index) (0 below the index) keeping tau <= 2^-index."""
    return [2 ** (n - index) if n >= index else 0 for n in range(1, depth + 1)]


def random_qmlt(rng, depth, members, diagonal=False):
    """Random qMLT with members G^1 .. G^members and tau(G^i) <= 2^-i."""
    prefixes = [random_sigma_prefix(rng, depth, qmlt_budgets(i, depth), diagonal)
                for i in range(1, members + 1)]
    return QuantumTest(Discipline.QMLT, prefixes)


def perturbed_unit(rng, vec, scale):
    """Normalized vec + scale * complex Gaussian noise (per component)."""
    noisy = vec + scale * complex_gaussian(rng, vec.shape)
    return noisy / np.linalg.norm(noisy)


def random_qubit_state(rng):
    """Haar-random single-qubit pure state."""
    return matrices.random_unitary_columns(rng, 2, 1)[:, 0]
