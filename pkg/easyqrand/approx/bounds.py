"""Subspace approximation of a density class.

An instance is a family of projections M_1 .. M_K on C^(2^n) with total rank
at most d, a threshold delta in (0, 1) and a multiplicity m. The class Q is
the set of density matrices rho with Tr(rho M_k) > delta for at least m
indices k. A maximal orthonormal set for V = sum_k M_k above lambda = m delta/4
spans a projection M with

    Tr(M) < 4 d / (delta m)   and   Tr(M rho) > delta / 4 for rho in Q.
"""
import logging
import numpy as np

from easyqrand.checks import CheckRecord
from easyqrand.constants import resolve_tolerances
from easyqrand.states import DensityMatrix
from easyqrand.states import matrices
from .greedy import greedy_maximal_set

__license__ = "LGPL"

logger = logging.getLogger(__name__)


class ApproxInstance:
    """Subspaces M_k with their rank budget d, threshold delta and multiplicity m.

    Parameters
    ----------
    subspaces : list of Projector
        All on the same number of qubits.
    delta : float
        In (0, 1).
    m : int
        At least 1.
    d : float or None
        Rank budget, sum of ranks by default.
    """

    def __init__(self, subspaces, delta, m, d=None):
        self.subspaces = list(subspaces)
        if not self.subspaces:
            msg = "ApproxInstance needs at least one subspace"
            logger.error(msg)
            raise RuntimeError(msg)
        qubits = {proj.qubits for proj in self.subspaces}
        if len(qubits) != 1:
            msg = f"Subspaces act on different qubit counts {sorted(qubits)}"
            logger.error(msg)
            raise RuntimeError(msg)
        self.qubits = qubits.pop()
        if not 0.0 < delta < 1.0:
            msg = f"delta must lie in (0, 1), got {delta}"
            logger.error(msg)
            raise ValueError(msg)
        if int(m) != m or m < 1:
            msg = f"m must be a positive integer, got {m}"
            logger.error(msg)
            raise ValueError(msg)
        self.delta = float(delta)
        self.m = int(m)
        ranks = sum(proj.rank for proj in self.subspaces)
        self.d = float(ranks if d is None else d)
        if ranks > self.d:
            msg = f"Subspaces have total rank {ranks}, above the budget d = {self.d}"
            logger.error(msg)
            raise RuntimeError(msg)
        self._v = None

    @property
    def dim(self):
        return 2 ** self.qubits

    @property
    def lam(self):
        """Greedy threshold m delta / 4."""
        return self.m * self.delta / 4.0

    @property
    def v(self):
        """V = sum_k M_k."""
        if self._v is None:
            self._v = sum(proj.matrix() for proj in self.subspaces)
            self._v.setflags(write=False)
        return self._v

    def capture_counts(self, rho):
        """Number of k with Tr(rho M_k) > delta."""
        return sum(1 for proj in self.subspaces if proj.expectation(rho) > self.delta)

    def contains(self, rho):
        """Whether rho lies in the class Q."""
        return self.capture_counts(rho) >= self.m

    def __repr__(self):
        return (f"ApproxInstance(qubits={self.qubits}, K={len(self.subspaces)}, d={self.d}, "
                f"delta={self.delta}, m={self.m})")


def approximate_density_class(inst, tols=None):
    """Greedy maximal set for V = sum_k M_k above m delta / 4, with no seeds.

    Returns
    -------
    GreedyResult
    """
    logger.debug(f"approximating {inst}")
    return greedy_maximal_set(inst.v, inst.lam, [], tols=tols)


def trace_bound_record(inst, result, tols=None, instance_id=''):
    """Tr(M) < 4 d / (delta m)."""
    tols = resolve_tolerances(tols)
    return CheckRecord('Tr(M) < 4d/(delta m)', result.trace, '<',
                       4.0 * inst.d / (inst.delta * inst.m), tol=tols.check,
                       instance_id=instance_id)


def transfer_record(inst, result, rho, tols=None, instance_id=''):
    """Tr(M rho) > delta / 4 for a density matrix rho of the class."""
    tols = resolve_tolerances(tols)
    return CheckRecord('Tr(M rho) > delta/4', result.projector.expectation(rho), '>',
                       inst.delta / 4.0, tol=tols.check, instance_id=instance_id)


def lemma_review_check(v, m, delta, w, rho, result, tols=None, instance_id=''):
    """Verify the operator form of the approximation bound.

    For 0 <= W <= V with ||W|| <= m and Tr(W rho) > m delta, a maximal set
    for V above m delta / 4 satisfies Tr(M) < 4 Tr(V)/(m delta) and
    Tr(M rho) > delta / 4.

    Parameters
    ----------
    v, w : array_like
        Hermitian matrices V and W.
    m : float
    delta : float
    rho : DensityMatrix or array_like
    result : GreedyResult
        Run of greedy_maximal_set on V with lambda = m delta / 4.
    tols : Tolerances or None
    instance_id : str

    Returns
    -------
    list of CheckRecord
        The four preconditions, followed by the two conclusions when every
        precondition holds.
    """
    tols = resolve_tolerances(tols)
    if abs(result.lam - m * delta / 4.0) > tols.eps_max:
        msg = (f"lemma_review_check needs a greedy run with lambda = m delta / 4 = "
               f"{m * delta / 4.0}, got lambda = {result.lam}")
        logger.error(msg)
        raise RuntimeError(msg)
    v = matrices.as_cmatrix(v)
    w = matrices.as_cmatrix(w, matrices.qubits_of(v.shape[0]))
    if not isinstance(rho, DensityMatrix):
        rho = DensityMatrix(rho, tols=tols)
    records = [
        CheckRecord('|W - W^dagger|_max', matrices.max_abs(w - w.conj().T), '<=', tols.herm),
        CheckRecord('lambda_min(V - W)', float(matrices.eigvalsh(v - w)[0]), '>=', 0.0,
                    tol=tols.psd),
        CheckRecord('||W|| <= m', matrices.spectral_norm(w), '<=', m, tol=1e-9),
        CheckRecord('Tr(W rho) > m delta', rho.expectation(w), '>', m * delta),
    ]
    if all(records):
        m_proj = result.projector
        records.append(CheckRecord('Tr(M) < 4Tr(V)/(m delta)', result.trace, '<',
                                   4.0 * np.trace(v).real / (m * delta), tol=tols.check))
        records.append(CheckRecord('Tr(M rho) > delta/4', m_proj.expectation(rho), '>',
                                   delta / 4.0, tol=tols.check))
    else:
        logger.warning("lemma_review_check preconditions failed, conclusions not checked")
    return [record.with_instance(instance_id) for record in records]


def norm_subadditivity_check(a, b, tols=None):
    """||A + B|| <= ||A|| + ||B|| for Hermitian A, B (operator norm)."""
    tols = resolve_tolerances(tols)
    a = matrices.as_cmatrix(a)
    b = matrices.as_cmatrix(b, matrices.qubits_of(a.shape[0]))
    return CheckRecord('||A+B|| <= ||A|| + ||B||', matrices.spectral_norm(a + b), '<=',
                       matrices.spectral_norm(a) + matrices.spectral_norm(b), tol=tols.herm)
