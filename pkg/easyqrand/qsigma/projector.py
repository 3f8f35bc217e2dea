"""Special projections.

A `Projector` is a Hermitian orthogonal projection on C^(2^n). It is held in
whichever form is cheapest for how it was built:

* a dense matrix,
* an orthonormal basis of its range (columns),
* a set of computational basis indices (a diagonal projection P_S).

All three answer the same questions (rank, diagonal, expectation in a state,
tensoring with the identity) and are converted into each other on demand.
"""
import logging
import numpy as np

from easyqrand.constants import MAX_DENSE_QUBITS, MAX_DIAGONAL_QUBITS, resolve_tolerances
from easyqrand.states import DensityMatrix, DiagonalLevel
from easyqrand.states import matrices
from easyqrand.utils.helpers import bitstring_to_index, index_to_bitstring

__license__ = "LGPL"

logger = logging.getLogger(__name__)


class Projector:
    """Orthogonal projection on n qubits.

    Use the `from_matrix`, `from_columns` and `from_support` constructors
    rather than calling the class directly.

    Attributes
    ----------
    qubits : int
    rank : int
    """

    def __init__(self, qubits, mat=None, columns=None, support=None):
        self.qubits = int(qubits)
        self._mat = mat
        self._columns = columns
        self._support = support
        if support is not None:
            self.rank = int(support.size)
        elif columns is not None:
            self.rank = int(columns.shape[1])
        else:
            self.rank = int(np.count_nonzero(matrices.eigvalsh(mat) > 0.5))
        for arr in (mat, columns, support):
            if arr is not None:
                arr.setflags(write=False)

    @classmethod
    def from_matrix(cls, mat, qubits=None, tols=None, validate=True):
        """Projector given densely; checks Hermiticity, idempotence and rank."""
        mat = matrices.as_cmatrix(mat, qubits)
        proj = cls(matrices.qubits_of(mat.shape[0]), mat=mat)
        if validate:
            proj.validate(tols)
        return proj

    @classmethod
    def from_columns(cls, columns, qubits=None, tols=None, validate=True):
        """Projector onto the span of orthonormal columns (dim x rank array)."""
        columns = np.asarray(columns, dtype=np.complex128)
        if columns.ndim == 1:
            columns = columns.reshape(-1, 1)
        n = matrices.qubits_of(columns.shape[0])
        if qubits is not None and n != qubits:
            msg = f"Columns live on {n} qubits, expected {qubits}"
            logger.error(msg)
            raise RuntimeError(msg)
        if validate:
            tols = resolve_tolerances(tols)
            defect = matrices.orthonormality_defect(list(columns.T))
            if defect > tols.proj:
                msg = f"Projector columns are not orthonormal (defect {defect:.3e})"
                logger.error(msg)
                raise RuntimeError(msg)
        return cls(n, columns=columns)

    @classmethod
    def from_support(cls, qubits, indices):
        """Diagonal projector P_S onto computational basis indices S."""
        if qubits > MAX_DIAGONAL_QUBITS:
            msg = f"Diagonal projectors are limited to {MAX_DIAGONAL_QUBITS} qubits"
            logger.error(msg)
            raise RuntimeError(msg)
        indices = np.unique(np.asarray(indices, dtype=np.int64))
        if indices.size and (indices[0] < 0 or indices[-1] >= 2 ** qubits):
            msg = f"Basis index out of range for {qubits} qubits"
            logger.error(msg)
            raise RuntimeError(msg)
        return cls(qubits, support=indices)

    @classmethod
    def from_bitstrings(cls, qubits, strings):
        """Diagonal projector P_S onto the basis vectors |sigma>, sigma in S."""
        for sigma in strings:
            if len(sigma) != qubits:
                msg = f"Bitstring {sigma!r} does not have length {qubits}"
                logger.error(msg)
                raise RuntimeError(msg)
        return cls.from_support(qubits, [bitstring_to_index(s) for s in strings])

    @classmethod
    def zero(cls, qubits):
        return cls.from_support(qubits, [])

    @classmethod
    def identity(cls, qubits):
        return cls.from_support(qubits, np.arange(2 ** qubits))

    def validate(self, tols=None):
        tols = resolve_tolerances(tols)
        mat = self.matrix()
        if not matrices.is_hermitian(mat, tols):
            msg = f"Projector on {self.qubits} qubits is not Hermitian"
            logger.error(msg)
            raise RuntimeError(msg)
        if matrices.max_abs(mat @ mat - mat) > tols.proj:
            msg = f"Matrix on {self.qubits} qubits is not idempotent"
            logger.error(msg)
            raise RuntimeError(msg)
        if abs(self.rank - np.trace(mat).real) > 1e-6:
            msg = f"Projector rank {self.rank} disagrees with its trace {np.trace(mat).real}"
            logger.error(msg)
            raise RuntimeError(msg)

    @property
    def dim(self):
        return 2 ** self.qubits

    @property
    def is_diagonal(self):
        return self._support is not None

    @property
    def support(self):
        """Basis indices of a diagonal projector (None otherwise)."""
        return self._support

    def bitstrings(self):
        if self._support is None:
            msg = "Only diagonal projectors have a bitstring support"
            logger.error(msg)
            raise RuntimeError(msg)
        return [index_to_bitstring(idx, self.qubits) for idx in self._support]

    def matrix(self):
        """Dense matrix (limited to the dense qubit cap)."""
        if self._mat is None:
            if self.qubits > MAX_DENSE_QUBITS:
                msg = f"Cannot densify a {self.qubits}-qubit projector"
                logger.error(msg)
                raise RuntimeError(msg)
            if self._support is not None:
                diag = np.zeros(self.dim, dtype=np.complex128)
                diag[self._support] = 1.0
                mat = np.diag(diag)
            else:
                mat = matrices.projector_from_columns(self._columns, self.dim)
            mat.setflags(write=False)
            self._mat = mat
        return self._mat

    def columns(self):
        """Orthonormal basis of the range as a (dim x rank) array."""
        if self._columns is None:
            if self._support is not None:
                cols = np.zeros((self.dim, self.rank), dtype=np.complex128)
                cols[self._support, np.arange(self.rank)] = 1.0
            else:
                vals, vecs = matrices.eigh(self._mat)
                cols = vecs[:, vals > 0.5]
            cols.setflags(write=False)
            self._columns = cols
        return self._columns

    def diagonal(self):
        """<sigma|P|sigma> for every basis vector, as a real array."""
        if self._support is not None:
            out = np.zeros(self.dim)
            out[self._support] = 1.0
            return out
        if self._columns is not None:
            return np.sum(np.abs(self._columns) ** 2, axis=1)
        return np.diag(self._mat).real.copy()

    def trace(self):
        return float(self.rank)

    def apply(self, vectors):
        """P applied to the columns of `vectors`."""
        vectors = np.asarray(vectors, dtype=np.complex128)
        if self._support is not None:
            out = np.zeros_like(vectors)
            out[self._support] = vectors[self._support]
            return out
        if self._columns is not None:
            return self._columns @ (self._columns.conj().T @ vectors)
        return self._mat @ vectors

    def expectation(self, level):
        """Tr(rho P) for a DensityMatrix or DiagonalLevel on the same qubits."""
        if level.qubits != self.qubits:
            msg = f"State level has {level.qubits} qubits, projector has {self.qubits}"
            logger.error(msg)
            raise RuntimeError(msg)
        if isinstance(level, DiagonalLevel):
            if self._support is not None:
                return level.mass_on(self._support)
            return level.expectation_diagonal(self.diagonal())
        if self._support is not None:
            return float(np.sum(level.diagonal()[self._support]))
        if self._columns is not None:
            cols = self._columns
            return float(np.einsum('ij,ik,kj->', cols.conj(), level.mat, cols).real)
        return matrices.trace_product(level.mat, self._mat)

    def tensor_identity(self):
        """P (x) I_2 on one qubit more."""
        if self._support is not None:
            lifted = np.concatenate([2 * self._support, 2 * self._support + 1])
            return Projector.from_support(self.qubits + 1, lifted)
        cols = self.columns()
        lifted = np.concatenate([np.kron(cols, np.array([[1.0], [0.0]])),
                                 np.kron(cols, np.array([[0.0], [1.0]]))], axis=1)
        return Projector(self.qubits + 1, columns=lifted)

    def __repr__(self):
        return f"Projector(qubits={self.qubits}, rank={self.rank})"


def inclusion_defect(inner, outer):
    """How far range(inner) is from lying inside range(outer).

    Returns max-entry of outer.U - U over an orthonormal basis U of
    range(inner); 0 means range(inner) is contained in range(outer).
    Diagonal pairs are compared combinatorially.
    """
    if inner.qubits != outer.qubits:
        msg = f"Cannot compare ranges on {inner.qubits} and {outer.qubits} qubits"
        logger.error(msg)
        raise RuntimeError(msg)
    if inner.rank == 0:
        return 0.0
    if inner.is_diagonal and outer.is_diagonal:
        return 0.0 if np.all(np.isin(inner.support, outer.support)) else 1.0
    basis = inner.columns()
    return matrices.max_abs(outer.apply(basis) - basis)


def span_of_union(projectors, qubits, tols=None):
    """Projector onto the span of the union of ranges of `projectors`.

    The basis is read off the eigendecomposition of the sum of the
    projectors, keeping eigenvalues above the span cutoff. Diagonal inputs
    take the union of supports instead.
    """
    tols = resolve_tolerances(tols)
    projectors = [proj for proj in projectors if proj.rank > 0]
    if not projectors:
        return Projector.zero(qubits)
    if all(proj.is_diagonal for proj in projectors):
        return Projector.from_support(qubits, np.concatenate([p.support for p in projectors]))
    total = sum(proj.matrix() for proj in projectors)
    vals, vecs = matrices.eigh(total)
    cols = vecs[:, vals > tols.span_cutoff]
    return Projector(qubits, columns=np.ascontiguousarray(cols))
