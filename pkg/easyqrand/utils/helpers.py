"""Bitstring helpers.

Bitstrings are Python strings over '0'/'1'. A bitstring sigma of length n
labels the computational basis vector |sigma> of C^(2^n); its index is the
big-endian integer value of sigma, so the first qubit is the most
significant bit and the partial trace over the last qubit maps index i to
i >> 1.
"""
import itertools
import numpy as np


def check_bitstring(sigma):
    """Raise RuntimeError unless `sigma` is a string over {'0', '1'}."""
    if not isinstance(sigma, str) or any(c not in '01' for c in sigma):
        raise RuntimeError(f"Not a bitstring: {sigma!r}")
    return sigma


def bitstring_to_index(sigma):
    """Index of |sigma> in the computational basis."""
    check_bitstring(sigma)
    if sigma == '':
        return 0
    return int(sigma, 2)


def index_to_bitstring(index, n):
    """Bitstring of length n with big-endian value `index`."""
    if n == 0:
        return ''
    return format(int(index), f'0{n}b')


def all_bitstrings(n):
    """All bitstrings of length n in lexicographic (= index) order."""
    return [''.join(bits) for bits in itertools.product('01', repeat=n)]


def popcounts(indices, n):
    """Number of ones in each of the n-bit `indices` (vectorized).

    Parameters
    ----------
    indices : array_like of int
    n : int
        Bit width.

    Returns
    -------
    numpy.ndarray of int64
    """
    indices = np.asarray(indices, dtype=np.int64)
    counts = np.zeros(indices.shape, dtype=np.int64)
    for bit in range(n):
        counts += (indices >> bit) & 1
    return counts


def bit_at(indices, n, position):
    """Value of the bit at 1-based `position` (1 = first qubit) of n-bit indices."""
    indices = np.asarray(indices, dtype=np.int64)
    return (indices >> (n - position)) & 1


def children(sigma):
    return (sigma + '0', sigma + '1')


def prefixes(sigma):
    """All prefixes of sigma, from the empty string up to sigma itself."""
    return [sigma[:k] for k in range(len(sigma) + 1)]
