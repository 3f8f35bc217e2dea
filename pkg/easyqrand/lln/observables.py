"""Single-position observables and their averages.

Q^n_i = I^(i-1) (x) diag(a, b) (x) I^(n-i) measures a on |0> and b on |1> at
position i. It is diagonal, so Tr(rho_n Q^n_i) only reads the diagonal of
rho_n, and the average n^-1 sum_i Tr(rho_n Q^n_i) only depends on the
number of ones of each basis string.
"""
import logging
import numpy as np

from easyqrand.constants import MAX_DENSE_QUBITS
from easyqrand.states import DiagonalLevel
from easyqrand.utils.helpers import bit_at, popcounts

__license__ = "LGPL"

logger = logging.getLogger(__name__)


class LLNObservable:
    """Q^n_i with eigenvalue a on |0> and b on |1> at position i.

    For a = 0, b = 1 this is the projection P^n_i onto the strings with a one
    at position i.
    """

    def __init__(self, n, i, a=0.0, b=1.0):
        if not 1 <= i <= n:
            msg = f"Position {i} outside 1..{n}"
            logger.error(msg)
            raise RuntimeError(msg)
        self.n = int(n)
        self.i = int(i)
        self.a = float(a)
        self.b = float(b)

    def diagonal(self):
        bits = bit_at(np.arange(2 ** self.n), self.n, self.i)
        return np.where(bits == 1, self.b, self.a)

    def matrix(self):
        if self.n > MAX_DENSE_QUBITS:
            msg = f"Cannot densify an observable on {self.n} qubits"
            logger.error(msg)
            raise RuntimeError(msg)
        return np.diag(self.diagonal()).astype(np.complex128)

    def expectation(self, level):
        if isinstance(level, DiagonalLevel):
            bits = bit_at(level.indices, self.n, self.i)
            return float(np.sum(level.weights * np.where(bits == 1, self.b, self.a)))
        return float(np.dot(level.diagonal(), self.diagonal()))

    def __repr__(self):
        return f"LLNObservable(n={self.n}, i={self.i}, a={self.a}, b={self.b})"


def _support(level):
    """(indices, weights) of the diagonal of a level."""
    if isinstance(level, DiagonalLevel):
        return level.indices, level.weights
    diag = level.diagonal()
    return np.arange(diag.size), diag


def lln_average(rho, n, a=0.0, b=1.0):
    """n^-1 sum_{i<=n} Tr(rho_n Q^n_i).

    Parameters
    ----------
    rho : StatePrefix
    n : int
        Level, 1 <= n <= rho.depth.
    a, b : float

    Returns
    -------
    float
    """
    if not 1 <= n <= rho.depth:
        msg = f"Level {n} outside 1..{rho.depth}"
        logger.error(msg)
        raise RuntimeError(msg)
    indices, weights = _support(rho.level(n))
    ones = popcounts(indices, n)
    return float(np.sum(weights * (b * ones + a * (n - ones)))) / n


def averaging_diagonal(n, a=0.0, b=1.0):
    """Diagonal of A_n = n^-1 sum_i Q^n_i."""
    ones = popcounts(np.arange(2 ** n), n)
    return (b * ones + a * (n - ones)) / n


def averaging_operator(n, a=0.0, b=1.0):
    """A_n as a dense matrix, summing the materialized Q^n_i."""
    total = sum(LLNObservable(n, i, a, b).matrix() for i in range(1, n + 1))
    return total / n


def reflect_observable(a, b):
    """Parameters (-a, -b) turning lower deviations into upper ones."""
    return -a, -b
