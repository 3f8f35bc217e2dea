"""Complex matrix substrate.

A CMatrix is a dense, square numpy array of dtype complex128 whose dimension
is a power of two, 2^n for a declared qubit count n. This module holds the
conversions and the numerical predicates (Hermitian, positive semidefinite,
projector, orthonormal) shared by the rest of the library.
"""
import logging
import numpy as np
import scipy.linalg

from easyqrand.constants import MAX_DENSE_QUBITS, resolve_tolerances

__license__ = "LGPL"

logger = logging.getLogger(__name__)


def qubits_of(dim):
    """Number of qubits n with 2^n == dim."""
    dim = int(dim)
    if dim < 1 or dim & (dim - 1):
        msg = f"Dimension {dim} is not a power of two"
        logger.error(msg)
        raise RuntimeError(msg)
    return dim.bit_length() - 1


def as_cmatrix(entries, qubits=None):
    """Convert `entries` into a validated CMatrix.

    Parameters
    ----------
    entries : array_like
        Square matrix with complex (or real) entries.
    qubits : int or None
        Expected qubit count; checked when given.

    Returns
    -------
    numpy.ndarray
        complex128 array of shape (2^n, 2^n).
    """
    mat = np.array(entries, dtype=np.complex128)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        msg = f"CMatrix must be square, got shape {mat.shape}"
        logger.error(msg)
        raise RuntimeError(msg)
    n = qubits_of(mat.shape[0])
    if qubits is not None and n != qubits:
        msg = f"CMatrix has {n} qubits, expected {qubits}"
        logger.error(msg)
        raise RuntimeError(msg)
    if n > MAX_DENSE_QUBITS:
        msg = f"Dense matrices are limited to {MAX_DENSE_QUBITS} qubits, got {n}"
        logger.error(msg)
        raise RuntimeError(msg)
    return mat


def max_abs(mat):
    """Max-entry norm."""
    if mat.size == 0:
        return 0.0
    return float(np.max(np.abs(mat)))


def hermitian_part(mat):
    return 0.5 * (mat + mat.conj().T)


def is_hermitian(mat, tols=None):
    tols = resolve_tolerances(tols)
    return max_abs(mat - mat.conj().T) <= tols.herm


def eigvalsh(mat):
    """Ascending eigenvalues of the Hermitian part of `mat`."""
    return scipy.linalg.eigvalsh(hermitian_part(mat))


def eigh(mat):
    """Ascending eigenpairs of the Hermitian part of `mat`."""
    return scipy.linalg.eigh(hermitian_part(mat))


def is_psd(mat, tols=None):
    tols = resolve_tolerances(tols)
    if mat.shape[0] == 0:
        return True
    return bool(eigvalsh(mat)[0] >= -tols.psd)


def operator_norm(mat):
    """max_u <u|A|u>/<u|u>, i.e. the largest eigenvalue of a Hermitian A."""
    return float(eigvalsh(mat)[-1])


def trace_product(a, b):
    """Real part of Tr(a b) without forming the product."""
    return float(np.einsum('ij,ji->', a, b).real)


def expectation(mat, vec):
    """<v|A|v> for a (not necessarily normalized) vector v."""
    vec = np.asarray(vec, dtype=np.complex128)
    return float(np.vdot(vec, mat @ vec).real)


def projector_from_columns(columns, dim):
    """Sum of |u><u| over the orthonormal columns of a (dim x r) array."""
    columns = np.asarray(columns, dtype=np.complex128).reshape(dim, -1)
    return columns @ columns.conj().T


def orthonormality_defect(vectors):
    """Max-entry deviation of the Gram matrix of `vectors` from identity.

    Parameters
    ----------
    vectors : sequence of 1d arrays, all of the same length

    Returns
    -------
    float
    """
    if len(vectors) == 0:
        return 0.0
    basis = np.column_stack(vectors)
    gram = basis.conj().T @ basis
    return max_abs(gram - np.eye(gram.shape[0]))


def canonical_phase(vec):
    """Rotate `vec` so its first component of largest modulus is real positive."""
    vec = np.asarray(vec, dtype=np.complex128)
    moduli = np.abs(vec)
    if moduli.size == 0 or moduli.max() == 0.0:
        return vec
    # argmax returns the first maximal index
    pivot = vec[int(np.argmax(moduli))]
    return vec * (abs(pivot) / pivot)


def lift(vec):
    """The two vectors |v> (x) |0> and |v> (x) |1>."""
    vec = np.asarray(vec, dtype=np.complex128)
    return (np.kron(vec, np.array([1.0, 0.0])), np.kron(vec, np.array([0.0, 1.0])))


def random_unitary_columns(rng, dim, rank):
    """`rank` orthonormal complex columns drawn from the Haar measure via QR."""
    if rank == 0:
        return np.zeros((dim, 0), dtype=np.complex128)
    gauss = rng.standard_normal((dim, rank)) + 1j * rng.standard_normal((dim, rank))
    q, r = np.linalg.qr(gauss)
    phases = np.diag(r) / np.abs(np.diag(r))
    return q * phases


def complete_orthonormal(rng, basis, count):
    """Draw `count` random unit vectors orthogonal to the columns of `basis`.

    Parameters
    ----------
    rng : numpy.random.Generator
    basis : numpy.ndarray
        (dim x r) array with orthonormal columns (r may be 0).
    count : int

    Returns
    -------
    numpy.ndarray
        (dim x count) array with orthonormal columns spanning a subspace of
        the orthogonal complement of `basis`.
    """
    dim = basis.shape[0]
    if count == 0:
        return np.zeros((dim, 0), dtype=np.complex128)
    if basis.shape[1] + count > dim:
        msg = f"Cannot add {count} orthonormal vectors to rank {basis.shape[1]} in dim {dim}"
        logger.error(msg)
        raise RuntimeError(msg)
    gauss = rng.standard_normal((dim, count)) + 1j * rng.standard_normal((dim, count))
    # two projection passes keep the draw orthogonal to working precision
    for _ in range(2):
        gauss = gauss - basis @ (basis.conj().T @ gauss)
    q, _ = np.linalg.qr(gauss)
    for _ in range(2):
        q = q - basis @ (basis.conj().T @ q)
        q, _ = np.linalg.qr(q)
    return q


def spectral_norm(mat):
    """Operator norm max |eigenvalue| of a Hermitian matrix."""
    if mat.shape[0] == 0:
        return 0.0
    return float(np.max(np.abs(eigvalsh(mat))))
