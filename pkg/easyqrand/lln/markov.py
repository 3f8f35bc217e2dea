"""Reverse Markov inequalities.

For a random variable Y <= B and mu < E[Y],

    P{Y >= mu} >= (E[Y] - mu) / (B - mu).

The trace form replaces Y by a Hermitian A with spectrum below B measured in
a state rho, and the event by the eigenspace projection F_mu of A for
eigenvalues >= mu: Tr(rho F_mu) >= (m - mu)/(B - mu) whenever
mu < m <= Tr(rho A).
"""
import logging
import numpy as np

from easyqrand.checks import CheckRecord
from easyqrand.constants import resolve_tolerances
from easyqrand.qsigma import Projector
from easyqrand.states import DensityMatrix
from easyqrand.states import matrices

__license__ = "LGPL"

logger = logging.getLogger(__name__)

MARKOV_SLACK = 1e-12
TRACE_MARKOV_SLACK = 1e-8


def _distribution(probs):
    if isinstance(probs, dict):
        items = list(probs.items())
    else:
        items = list(probs)
    values = np.array([float(v) for v, _ in items])
    weights = np.array([float(w) for _, w in items])
    return values, weights


def markov_bound(y_max, mu, ev, probs):
    """Lower bound (E[Y] - mu)/(B - mu) on P{Y >= mu}, checked on `probs`.

    Parameters
    ----------
    y_max : float
        Upper bound B of the support.
    mu : float
        Level, below `ev`.
    ev : float
        Expectation E[Y].
    probs : dict or sequence of (value, probability) pairs
        Finite distribution of Y.

    Returns
    -------
    float
    """
    values, weights = _distribution(probs)
    if mu >= ev:
        msg = f"Need mu < E[Y], got mu = {mu}, E[Y] = {ev}"
        logger.error(msg)
        raise ValueError(msg)
    if np.any(weights < 0.0) or abs(weights.sum() - 1.0) > 1e-9:
        msg = "Probabilities must be nonnegative and sum to 1"
        logger.error(msg)
        raise RuntimeError(msg)
    if values.size and values[weights > 0].max(initial=-np.inf) > y_max + MARKOV_SLACK:
        msg = f"Distribution has support above B = {y_max}"
        logger.error(msg)
        raise RuntimeError(msg)
    if abs(float(np.dot(values, weights)) - ev) > 1e-9:
        msg = f"E[Y] = {ev} disagrees with the distribution mean {float(np.dot(values, weights))}"
        logger.error(msg)
        raise RuntimeError(msg)
    bound = (ev - mu) / (y_max - mu)
    prob = float(weights[values >= mu].sum())
    if prob < bound - MARKOV_SLACK:
        msg = f"P(Y >= mu) = {prob!r} is below the bound {bound!r}"
        logger.error(msg)
        raise RuntimeError(msg)
    return bound


def eigen_projector(a_mat, mu):
    """F_mu, the projection onto the eigenvectors of A with eigenvalue >= mu."""
    vals, vecs = matrices.eigh(a_mat)
    return Projector.from_columns(vecs[:, vals >= mu], validate=False)


def _trace_markov(a_mat, rho, mu, m_lb, b_ub, tols):
    tols = resolve_tolerances(tols)
    a_mat = matrices.as_cmatrix(a_mat)
    if not isinstance(rho, DensityMatrix):
        rho = DensityMatrix(rho, tols=tols)
    if not matrices.is_hermitian(a_mat, tols):
        msg = "trace_markov needs a Hermitian A"
        logger.error(msg)
        raise RuntimeError(msg)
    top = matrices.operator_norm(a_mat)
    if top > b_ub + tols.herm:
        msg = f"A has eigenvalue {top!r} above B = {b_ub}"
        logger.error(msg)
        raise RuntimeError(msg)
    mean = rho.expectation(a_mat)
    if not mu < m_lb <= mean + tols.herm:
        msg = f"Need mu < m <= Tr(rho A), got mu = {mu}, m = {m_lb}, Tr(rho A) = {mean!r}"
        logger.error(msg)
        raise RuntimeError(msg)
    f_mu = eigen_projector(a_mat, mu)
    return f_mu, (m_lb - mu) / (b_ub - mu), f_mu.expectation(rho)


def trace_markov(a_mat, rho, mu, m_lb, b_ub, tols=None):
    """F_mu and the bound (m - mu)/(B - mu) on Tr(rho F_mu).

    Parameters
    ----------
    a_mat : array_like
        Hermitian A with eigenvalues at most B.
    rho : DensityMatrix or array_like
    mu, m_lb, b_ub : float
        mu < m <= Tr(rho A) and B.
    tols : Tolerances or None

    Returns
    -------
    (Projector, float)
    """
    f_mu, bound, value = _trace_markov(a_mat, rho, mu, m_lb, b_ub, tols)
    if value < bound - TRACE_MARKOV_SLACK:
        msg = f"Tr(rho F_mu) = {value!r} is below the bound {bound!r}"
        logger.error(msg)
        raise RuntimeError(msg)
    return f_mu, bound


def trace_markov_record(a_mat, rho, mu, m_lb, b_ub, tols=None, instance_id=''):
    """trace_markov as a CheckRecord; precondition failures still raise."""
    _, bound, value = _trace_markov(a_mat, rho, mu, m_lb, b_ub, tols)
    return CheckRecord('Tr(rho F_mu) >= (m - mu)/(B - mu)', value, '>=', bound,
                       tol=TRACE_MARKOV_SLACK, instance_id=instance_id)
