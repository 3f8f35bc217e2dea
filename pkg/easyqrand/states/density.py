"""Density matrices, diagonal levels and partial traces.

A level of a state is either held densely (`DensityMatrix`) or, for states
that are diagonal in the computational basis, as a sparse weight map
(`DiagonalLevel`). Both support the partial trace over the last qubit; the
diagonal fast path never builds a matrix.
"""
import logging
import numpy as np

from easyqrand.constants import MAX_DENSE_QUBITS, MAX_DIAGONAL_QUBITS, resolve_tolerances
from easyqrand.utils.helpers import bitstring_to_index, index_to_bitstring
from . import matrices

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


class DensityMatrix:
    """Trace-one positive semidefinite Hermitian matrix on C^(2^n).

    Parameters
    ----------
    mat : array_like
        Square complex matrix of dimension 2^n.
    qubits : int or None
        Expected qubit count, checked when given.
    tols : Tolerances or None
    validate : bool, default=True
        Check the Hermitian, PSD and trace invariants. Internal callers that
        produce matrices by trace-preserving maps may skip this.

    Attributes
    ----------
    qubits : int
    mat : numpy.ndarray
    """

    def __init__(self, mat, qubits=None, tols=None, validate=True):
        self.mat = matrices.as_cmatrix(mat, qubits)
        self.mat.setflags(write=False)
        self.qubits = matrices.qubits_of(self.mat.shape[0])
        if validate:
            self.validate(tols)

    def validate(self, tols=None):
        tols = resolve_tolerances(tols)
        if not matrices.is_hermitian(self.mat, tols):
            msg = f"Density matrix on {self.qubits} qubits is not Hermitian"
            logger.error(msg)
            raise RuntimeError(msg)
        if abs(self.trace() - 1.0) > tols.trace:
            msg = f"Density matrix has trace {self.trace()!r}, expected 1"
            logger.error(msg)
            raise RuntimeError(msg)
        if not matrices.is_psd(self.mat, tols):
            msg = f"Density matrix on {self.qubits} qubits is not positive semidefinite"
            logger.error(msg)
            raise RuntimeError(msg)

    @property
    def dim(self):
        return self.mat.shape[0]

    def trace(self):
        return float(np.trace(self.mat).real)

    def diagonal(self):
        return np.diag(self.mat).real.copy()

    def is_diagonal(self, tols=None):
        tols = resolve_tolerances(tols)
        off = self.mat - np.diag(np.diag(self.mat))
        return matrices.max_abs(off) <= tols.herm

    def expectation(self, operator):
        """Tr(rho A) for a dense operator A of the same dimension."""
        return matrices.trace_product(self.mat, operator)

    def to_dense(self):
        return self

    def __repr__(self):
        return f"DensityMatrix(qubits={self.qubits})"


class DiagonalLevel:
    """Diagonal density matrix stored as a sparse weight map.

    Parameters
    ----------
    qubits : int
    indices : array_like of int
        Computational basis indices carrying weight (need not be sorted).
    weights : array_like of float
        Nonnegative weights, one per index.
    tols : Tolerances or None
    validate : bool, default=True

    Attributes
    ----------
    qubits : int
    indices : numpy.ndarray
        Sorted, unique int64 indices with strictly positive weight.
    weights : numpy.ndarray
    """

    def __init__(self, qubits, indices, weights, tols=None, validate=True):
        if qubits < 0 or qubits > MAX_DIAGONAL_QUBITS:
            msg = f"Diagonal levels are limited to {MAX_DIAGONAL_QUBITS} qubits, got {qubits}"
            logger.error(msg)
            raise RuntimeError(msg)
        self.qubits = int(qubits)
        indices = np.asarray(indices, dtype=np.int64).ravel()
        weights = np.asarray(weights, dtype=np.float64).ravel()
        if indices.shape != weights.shape:
            msg = "DiagonalLevel needs exactly one weight per index"
            logger.error(msg)
            raise RuntimeError(msg)
        if indices.size and (indices.min() < 0 or indices.max() >= 2 ** self.qubits):
            msg = f"Basis index out of range for {self.qubits} qubits"
            logger.error(msg)
            raise RuntimeError(msg)
        if validate:
            tols = resolve_tolerances(tols)
            if weights.size and weights.min() < -tols.psd:
                msg = "DiagonalLevel weights must be nonnegative"
                logger.error(msg)
                raise RuntimeError(msg)
        unique, inverse = np.unique(indices, return_inverse=True)
        merged = np.bincount(inverse, weights=weights, minlength=unique.size)
        keep = merged > 0.0
        self.indices = unique[keep]
        self.weights = merged[keep]
        self.indices.setflags(write=False)
        self.weights.setflags(write=False)
        if validate:
            self.validate(tols)

    @classmethod
    def from_mapping(cls, qubits, mapping, tols=None, validate=True):
        """Build from a {bitstring: weight} map."""
        for sigma in mapping:
            if len(sigma) != qubits:
                msg = f"Bitstring {sigma!r} has length {len(sigma)}, expected {qubits}"
                logger.error(msg)
                raise RuntimeError(msg)
        keys = sorted(mapping)
        indices = [bitstring_to_index(sigma) for sigma in keys]
        weights = [mapping[sigma] for sigma in keys]
        return cls(qubits, indices, weights, tols=tols, validate=validate)

    def validate(self, tols=None):
        tols = resolve_tolerances(tols)
        if abs(self.total() - 1.0) > tols.trace:
            msg = f"Diagonal level weights sum to {self.total()!r}, expected 1"
            logger.error(msg)
            raise RuntimeError(msg)

    def total(self):
        return float(np.sum(self.weights))

    def to_mapping(self):
        """{bitstring: weight} over the support."""
        return {index_to_bitstring(idx, self.qubits): float(w)
                for idx, w in zip(self.indices, self.weights)}

    def weight(self, sigma):
        if len(sigma) != self.qubits:
            return 0.0
        pos = np.searchsorted(self.indices, bitstring_to_index(sigma))
        if pos < self.indices.size and self.indices[pos] == bitstring_to_index(sigma):
            return float(self.weights[pos])
        return 0.0

    def vector(self):
        """The full length-2^n diagonal."""
        out = np.zeros(2 ** self.qubits)
        out[self.indices] = self.weights
        return out

    def to_dense(self):
        """Densify into a DensityMatrix (limited to the dense qubit cap)."""
        if self.qubits > MAX_DENSE_QUBITS:
            msg = f"Cannot densify a {self.qubits}-qubit level"
            logger.error(msg)
            raise RuntimeError(msg)
        return DensityMatrix(np.diag(self.vector()).astype(np.complex128), validate=False)

    def expectation_diagonal(self, diagonal):
        """Tr(rho A) for an operator A given by its full diagonal."""
        diagonal = np.asarray(diagonal)
        return float(np.sum(self.weights * diagonal[self.indices].real))

    def mass_on(self, indices):
        """Total weight on a set of basis indices."""
        indices = np.asarray(indices, dtype=np.int64)
        return float(np.sum(self.weights[np.isin(self.indices, indices)]))

    def __repr__(self):
        return f"DiagonalLevel(qubits={self.qubits}, support={self.indices.size})"


def partial_trace_out(mat, keep_qubits, drop_qubits):
    """Trace out the last `drop_qubits` qubits of a dense matrix.

    Parameters
    ----------
    mat : numpy.ndarray
        Matrix on keep_qubits + drop_qubits qubits.
    keep_qubits, drop_qubits : int

    Returns
    -------
    numpy.ndarray
        Matrix on keep_qubits qubits.
    """
    dim_a = 2 ** keep_qubits
    dim_b = 2 ** drop_qubits
    if mat.shape != (dim_a * dim_b, dim_a * dim_b):
        msg = f"Matrix of shape {mat.shape} does not split as {keep_qubits}+{drop_qubits} qubits"
        logger.error(msg)
        raise RuntimeError(msg)
    reshaped = np.reshape(mat, [dim_a, dim_b, dim_a, dim_b])
    return np.trace(reshaped, axis1=1, axis2=3)


def partial_trace_last(rho):
    """Discard the last qubit: out[i, j] = rho[2i, 2j] + rho[2i+1, 2j+1].

    Parameters
    ----------
    rho : DensityMatrix or DiagonalLevel

    Returns
    -------
    DensityMatrix or DiagonalLevel
        Same storage as the input, on one qubit less.
    """
    if rho.qubits < 1:
        msg = "Cannot trace out a qubit of a 0-qubit level"
        logger.error(msg)
        raise RuntimeError(msg)
    if isinstance(rho, DiagonalLevel):
        parents = rho.indices >> 1
        unique, inverse = np.unique(parents, return_inverse=True)
        weights = np.bincount(inverse, weights=rho.weights, minlength=unique.size)
        return DiagonalLevel(rho.qubits - 1, unique, weights, validate=False)
    return DensityMatrix(partial_trace_out(rho.mat, rho.qubits - 1, 1), validate=False)
