"""Greedy extension to a maximal orthonormal set.

Given a positive Hermitian V and a threshold lambda, a set C of orthonormal
vectors is maximal when no unit vector orthogonal to C has <u|V|u> above
lambda. Starting from the seed vectors, each iteration deflates V onto the
orthogonal complement of span(C),

    P = I - sum_{u in C} |u><u|,

and takes the top eigenpair (theta, w) of P V P. If theta exceeds
lambda + eps_max, w joins C; otherwise C is maximal and the loop stops.

Ties between degenerate top eigenvectors are broken deterministically: each
candidate is phase-canonicalized and the lexicographically largest vector of
components rounded at 1e-12 is taken.
"""
import logging
import numpy as np
import pandas as pd

from easyqrand.constants import resolve_tolerances
from easyqrand.checks import CheckRecord
from easyqrand.qsigma import Projector
from easyqrand.states import matrices

__copyright__ = """

    Copyright 2021 EasyQRand developers

    This file is part of EasyQRand

    EasyQRand is free software: you can redistribute it and/or modify
    it under the terms of the Lesser GNU General Public License as published by
    the Free Software Foundation, either version 3 of the License, or
    (at your option) any later version.

    EasyQRand is distributed in the hope that it will be useful,
    but WITHOUT ANY WARRANTY; without even the implied warranty of
    MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
    Lesser GNU General Public License for more details.

    You should have received a copy of the Lesser GNU General Public License
    along with this program.  If not, see <https://www.gnu.org/licenses/>.

"""
__license__ = "LGPL"

logger = logging.getLogger(__name__)

DEGENERACY_GAP = 1e-12
EIGEN_LOG_COLUMNS = ['iteration', 'theta', 'accepted']


class GreedyResult:
    """Outcome of greedy_maximal_set.

    Attributes
    ----------
    basis : numpy.ndarray
        (dim x r) array whose columns are the orthonormal set C, seeds first.
    seeds : int
        Number of leading columns that came from the seed vectors.
    lam : float
        Threshold the set is maximal for.
    residual : float
        Top eigenvalue of the deflated matrix at exit.
    eigen_log : pandas.DataFrame
        One row per iteration: iteration, theta, accepted.
    """

    def __init__(self, basis, seeds, lam, residual, eigen_log):
        self.basis = basis
        self.basis.setflags(write=False)
        self.seeds = int(seeds)
        self.lam = float(lam)
        self.residual = float(residual)
        self.eigen_log = eigen_log
        self._projector = None

    @property
    def trace(self):
        """Tr(M), the size of C."""
        return int(self.basis.shape[1])

    @property
    def added(self):
        """Number of vectors accepted on top of the seeds."""
        return self.trace - self.seeds

    @property
    def vectors(self):
        return [self.basis[:, j] for j in range(self.trace)]

    @property
    def projector(self):
        """M = sum over C of |u><u|."""
        if self._projector is None:
            self._projector = Projector.from_columns(self.basis, validate=False)
        return self._projector

    def accepted_pattern(self):
        return [bool(flag) for flag in self.eigen_log['accepted']]

    def write_eigen_log(self, path):
        self.eigen_log.to_csv(path, index=False)

    def __repr__(self):
        return f"GreedyResult(trace={self.trace}, lam={self.lam!r}, residual={self.residual!r})"


def _top_eigenvector(mat):
    vals, vecs = matrices.eigh(mat)
    theta = float(vals[-1])
    candidates = np.nonzero(vals >= theta - DEGENERACY_GAP)[0]
    if candidates.size == 1:
        return theta, matrices.canonical_phase(vecs[:, -1])
    keyed = []
    for idx in candidates:
        vec = matrices.canonical_phase(vecs[:, idx])
        key = tuple(np.round(np.column_stack([vec.real, vec.imag]).ravel(), 12))
        keyed.append((key, int(idx), vec))
    keyed.sort(key=lambda item: (item[0], -item[1]), reverse=True)
    return theta, keyed[0][2]


def _check_seeds(v, lam, seeds, tols):
    dim = v.shape[0]
    for j, seed in enumerate(seeds):
        if seed.shape != (dim,):
            msg = f"Seed vector {j} has shape {seed.shape}, expected ({dim},)"
            logger.error(msg)
            raise RuntimeError(msg)
    defect = matrices.orthonormality_defect(seeds)
    if defect > tols.proj:
        msg = f"Seed vectors are not orthonormal (defect {defect:.3e})"
        logger.error(msg)
        raise RuntimeError(msg)
    for j, seed in enumerate(seeds):
        value = matrices.expectation(v, seed)
        if value <= lam - tols.eps_max:
            msg = f"Seed vector {j} has <u|V|u> = {value!r}, not above the threshold {lam!r}"
            logger.error(msg)
            raise RuntimeError(msg)


def greedy_maximal_set(v, lam, seed_vectors=None, tols=None):
    """Extend `seed_vectors` to a maximal orthonormal set above `lam`.

    Parameters
    ----------
    v : array_like
        Hermitian positive matrix V.
    lam : float
        Threshold lambda.
    seed_vectors : sequence of 1d arrays or None
        Orthonormal vectors u with <u|V|u> > lambda.
    tols : Tolerances or None
        Uses `herm`, `proj` and `eps_max`.

    Returns
    -------
    GreedyResult
    """
    tols = resolve_tolerances(tols)
    v = matrices.as_cmatrix(v)
    if not matrices.is_hermitian(v, tols):
        msg = "greedy_maximal_set needs a Hermitian V"
        logger.error(msg)
        raise RuntimeError(msg)
    v = matrices.hermitian_part(v)
    dim = v.shape[0]
    seeds = [np.asarray(seed, dtype=np.complex128) for seed in (seed_vectors or [])]
    _check_seeds(v, lam, seeds, tols)

    basis = np.column_stack(seeds) if seeds else np.zeros((dim, 0), dtype=np.complex128)
    rows = []
    residual = 0.0
    iteration = 0
    while basis.shape[1] < dim:
        deflate = np.eye(dim) - basis @ basis.conj().T
        theta, w = _top_eigenvector(deflate @ v @ deflate)
        accepted = theta > lam + tols.eps_max
        rows.append((iteration, theta, accepted))
        logger.debug(f"greedy iteration {iteration}: theta={theta!r} accepted={accepted}")
        iteration += 1
        residual = theta
        if not accepted:
            break
        w = w - basis @ (basis.conj().T @ w)
        w = w / np.linalg.norm(w)
        basis = np.column_stack([basis, w])
    else:
        residual = 0.0
    if residual > lam + tols.eps_max:
        msg = f"Greedy exit with residual {residual!r} above {lam!r}"
        logger.error(msg)
        raise RuntimeError(msg)
    if basis.shape[1] == len(seeds):
        logger.info(f"greedy extension accepted no vectors beyond {len(seeds)} seeds")
    eigen_log = pd.DataFrame(rows, columns=EIGEN_LOG_COLUMNS)
    return GreedyResult(np.ascontiguousarray(basis), len(seeds), lam, residual, eigen_log)


def maximality_record(v, result, slack=1e-8):
    """Recompute the residual eigenvalue of P V P for a finished run.

    Returns
    -------
    CheckRecord
        max over unit u orthogonal to C of <u|V|u>, against lambda + slack.
    """
    v = matrices.hermitian_part(matrices.as_cmatrix(v))
    dim = v.shape[0]
    if result.trace == dim:
        residual = 0.0
    else:
        deflate = np.eye(dim) - result.basis @ result.basis.conj().T
        residual = matrices.operator_norm(deflate @ v @ deflate)
    return CheckRecord('max_{u perp C} <u|V|u> <= lambda', residual, '<=', result.lam, tol=slack)
