"""Planted instances.

Planted instances come with a state that is known to trigger the hypothesis
of the bound under test, so the conclusion can be checked on it.
"""
import logging
import numpy as np

from easyqrand.approx import ApproxInstance
from easyqrand.constants import ClassicalDiscipline, Discipline
from easyqrand.convert import SolovayInstance
from easyqrand.measures import ClassicalSigmaPrefix, ClassicalTestPrefix, cylinder_indices
from easyqrand.qsigma import Projector, QSigmaPrefix, QuantumTest
from easyqrand.states import DensityMatrix, make_classical, make_dense, mix_states
from easyqrand.states import matrices
from easyqrand.utils.helpers import index_to_bitstring
from .generators import (perturbed_unit, random_density_matrix,
                         random_diagonal_state, random_qubit_state)

__license__ = "LGPL"

logger = logging.getLogger(__name__)

MAX_REJECTION_ATTEMPTS = 100000


def planted_approx_instance(rng, qubits, subspaces, m, delta, max_rank=3):
    """ApproxInstance whose first m subspaces share a planted unit vector.

    Returns
    -------
    (ApproxInstance, numpy.ndarray)
        The instance and its core vector c; |c><c| lies in the class Q.
    """
    dim = 2 ** qubits
    core = perturbed_unit(rng, np.zeros(dim, dtype=np.complex128), 1.0)
    projs = []
    for k in range(subspaces):
        rank = int(rng.integers(1, max_rank + 1))
        if k < m:
            cols = np.column_stack([core, matrices.complete_orthonormal(
                rng, core.reshape(-1, 1), rank - 1)])
        else:
            cols = matrices.random_unitary_columns(rng, dim, rank)
        projs.append(Projector.from_columns(cols, qubits=qubits, validate=False))
    return ApproxInstance(projs, delta, m), core


def propose_near(rng, core, spread):
    """Random density matrix concentrated around |core><core|."""
    dim = core.size
    psi = perturbed_unit(rng, core, spread * rng.random())
    noise = random_density_matrix(rng, matrices.qubits_of(dim), rank=1).mat
    weight = spread * rng.random()
    return DensityMatrix((1.0 - weight) * np.outer(psi, psi.conj()) + weight * noise,
                         validate=False)


def sample_class(rng, inst, count, core=None, spread=0.5, max_attempts=MAX_REJECTION_ATTEMPTS):
    """Rejection-sample up to `count` density matrices of the class Q of `inst`.

    Proposals are random rank-one density matrices, or, when a core vector
    is given, mixtures concentrated around it.

    Returns
    -------
    list of DensityMatrix
        The accepted samples, fewer than `count` if the attempts ran out.
    """
    accepted = []
    attempts = 0
    while len(accepted) < count and attempts < max_attempts:
        attempts += 1
        if core is None:
            rho = random_density_matrix(rng, inst.qubits, rank=1)
        else:
            rho = propose_near(rng, core, spread)
        if inst.contains(rho):
            accepted.append(rho)
    if len(accepted) < count:
        logger.warning(f"rejection sampling accepted {len(accepted)}/{count} after {attempts} "
                       f"attempts")
    return accepted


def product_state(rng, depth):
    """Random product pure state, as its unit vectors chi_1 .. chi_N."""
    vecs = []
    chi = np.ones(1, dtype=np.complex128)
    for _ in range(depth):
        chi = np.kron(chi, random_qubit_state(rng))
        vecs.append(chi)
    return vecs


def planted_solovay_instance(rng, depth=8, members=8, delta=0.5, noise=0.05):
    """Solovay instance with a planted failing product state.

    Member k is S^k_n = |phi_k><phi_k| (x) I for n >= k, with phi_k a small
    perturbation of the first k factors chi_k of a random product state, so
    tau(S^k) = 2^-k and the total mass is 1 - 2^-members. The product state
    puts about 1 - noise^2 on every member.

    Returns
    -------
    (SolovayInstance, StatePrefix)
    """
    chis = product_state(rng, depth)
    prefixes = []
    for k in range(1, members + 1):
        phi = perturbed_unit(rng, chis[k - 1], noise / np.sqrt(2 ** k))
        base = Projector.from_columns(phi, qubits=k, validate=False)
        levels = [Projector.zero(n) for n in range(1, k)]
        proj = base
        for n in range(k, depth + 1):
            levels.append(proj)
            proj = proj.tensor_identity()
        prefixes.append(QSigmaPrefix(levels[:depth]))
    rho = make_dense([np.outer(chi, chi.conj()) for chi in chis])
    return SolovayInstance(prefixes, delta), rho


def planted_diagonal_qmlt(rng, depth, members, weight=0.9, noise=0.05):
    """qMLT with dense members around a random path X and a diagonal state.

    Member i is the nested closure of |phi_i><phi_i| (x) I with phi_i a
    perturbation of |X|i>, so tau(G^i) = 2^-i. The state mixes rho_X with
    weight `weight` and a random diagonal state.

    Returns
    -------
    (QuantumTest, StatePrefix, str)
        The test, the diagonal state and the path X.
    """
    x = ''.join(rng.choice(['0', '1'], size=depth))
    prefixes = []
    for i in range(1, members + 1):
        target = np.zeros(2 ** i, dtype=np.complex128)
        target[int(x[:i], 2)] = 1.0
        phi = perturbed_unit(rng, target, noise / np.sqrt(target.size))
        proj = Projector.from_columns(phi, qubits=i, validate=False)
        levels = [Projector.zero(n) for n in range(1, i)]
        for n in range(i, depth + 1):
            levels.append(proj)
            proj = proj.tensor_identity()
        prefixes.append(QSigmaPrefix(levels))
    rho = mix_states([make_classical(x, depth), random_diagonal_state(rng, depth)],
                     [weight, 1.0 - weight])
    return QuantumTest(Discipline.QMLT, prefixes), rho, x


def planted_classical_solovay(rng, depth, members, weight=0.9):
    """Classical Solovay test around a random path X, with a diagonal state.

    Member k (k = 2 .. members + 1) covers the cylinder of X|k and the
    cylinder of one random string of length k + 2, both from level k on, so
    the total mass stays below 5/8. The state mixes rho_X with weight
    `weight` and a random diagonal state.

    Returns
    -------
    (ClassicalTestPrefix, StatePrefix, str)
    """
    x = ''.join(rng.choice(['0', '1'], size=depth))
    prefixes = []
    for k in range(2, members + 2):
        extra = index_to_bitstring(rng.integers(0, 2 ** (k + 2)), k + 2)
        levels = []
        for n in range(1, depth + 1):
            cover = [x[:k]] if n >= k else []
            if n >= k + 2:
                cover.append(extra)
            levels.append(cylinder_indices(cover, n))
        prefixes.append(ClassicalSigmaPrefix(levels))
    rho = mix_states([make_classical(x, depth), random_diagonal_state(rng, depth)],
                     [weight, 1.0 - weight])
    return ClassicalTestPrefix(ClassicalDiscipline.SOLOVAY, prefixes), rho, x


def planted_schnorr_test(rng, depth, members, noise=0.3):
    """qSchnorr test of single projections near random basis strings.

    Member r acts on n_r = r + 1 qubits (r + 1 <= depth) and projects onto a
    perturbed basis vector, so its tau mass is 2^-(r+1) and the declared
    limit 1/2 bounds the partial sums.
    """
    members = min(members, depth - 1)
    projs = []
    for r in range(1, members + 1):
        n = r + 1
        target = np.zeros(2 ** n, dtype=np.complex128)
        target[int(rng.integers(0, 2 ** n))] = 1.0
        phi = perturbed_unit(rng, target, noise / np.sqrt(target.size))
        projs.append(Projector.from_columns(phi, qubits=n, validate=False))
    return QuantumTest(Discipline.QSCHNORR, projs, declared_limit=0.5)
