"""Chernoff tests for the law of large numbers.

For the Bernoulli state b_p and the observables Q^n_i with values (a, b),
each position has mean M = a p + b (1 - p). The level-n set

    C_n = {sigma : n^-1 (b #ones(sigma) + a #zeros(sigma)) > (1 + delta) M}

only depends on the number of ones, and Hoeffding's inequality bounds its
b_p mass by exp(-2 delta^2 n M^2 / (b - a)^2). The projections S_n = P_{C_n}
form a p-quantum Schnorr test; states whose averages stay above M + delta
put at least C delta on S_n, with C = (1 - M)/(|z| + |3M|), z = max(a, b).

Masses are exact: rational arithmetic with big-integer binomials up to
n = 64, log-space sums beyond.
"""
import logging
import math
from fractions import Fraction
import numpy as np
import pandas as pd
from scipy.special import gammaln, logsumexp

from easyqrand.checks import CheckRecord
from easyqrand.constants import Discipline, MAX_DIAGONAL_QUBITS, MAX_DENSE_QUBITS
from easyqrand.convert import as_fraction
from easyqrand.qsigma import Projector, QuantumTest
from easyqrand.states import DiagonalLevel
from easyqrand.states import matrices
from easyqrand.utils.helpers import popcounts
from .observables import lln_average, averaging_operator

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

EXACT_BINOMIAL_MAX_N = 64
REPORT_COLUMNS = ['n', 'average', 'threshold', 'mass', 'bound', 'margin']


def binomial_mass(n, ones, p):
    """b_p mass of the level-n strings whose number of ones lies in `ones`.

    Each one carries weight 1 - p and each zero weight p. Exact (Fraction)
    for n <= 64, a log-space float sum beyond.
    """
    ones = sorted(set(int(k) for k in ones))
    if not ones:
        return Fraction(0) if n <= EXACT_BINOMIAL_MAX_N else 0.0
    if n <= EXACT_BINOMIAL_MAX_N:
        p = as_fraction(p)
        return sum((math.comb(n, k) * p ** (n - k) * (1 - p) ** k for k in ones), Fraction(0))
    p = float(p)
    if p in (0.0, 1.0):
        heavy = 0 if p == 1.0 else n
        return 1.0 if heavy in ones else 0.0
    ks = np.array(ones, dtype=float)
    log_terms = (gammaln(n + 1) - gammaln(ks + 1) - gammaln(n - ks + 1)
                 + (n - ks) * np.log(p) + ks * np.log1p(-p))
    return float(np.exp(logsumexp(log_terms)))


class ChernoffTest:
    """Levels n_min .. n_max of the Chernoff test for (p, a, b, delta).

    Parameters are stored as exact fractions (floats are read through their
    decimal repr) so that membership of a number of ones in C_n is decided
    exactly.

    Parameters
    ----------
    p : number in [0, 1]
    a, b : numbers with a < b
    delta : positive number
    n_min, n_max : int
        1 <= n_min <= n_max.

    Attributes
    ----------
    M : Fraction
        a p + b (1 - p), required to lie in (0, 1).
    ones : dict
        n -> sorted list of the numbers of ones k whose strings form C_n.
    masses : dict
        n -> b_p(S_n) (Fraction up to n = 64).
    """

    def __init__(self, p, a, b, delta, n_min, n_max):
        self.p = as_fraction(p)
        self.a = as_fraction(a)
        self.b = as_fraction(b)
        self.delta = as_fraction(delta)
        if not 0 <= self.p <= 1:
            msg = f"p must lie in [0, 1], got {self.p}"
            logger.error(msg)
            raise ValueError(msg)
        if not self.a < self.b:
            msg = f"Need a < b, got a = {self.a}, b = {self.b}"
            logger.error(msg)
            raise ValueError(msg)
        if self.delta <= 0:
            msg = f"delta must be positive, got {self.delta}"
            logger.error(msg)
            raise ValueError(msg)
        self.M = self.a * self.p + self.b * (1 - self.p)
        if not 0 < self.M < 1:
            msg = (f"Mean M = {float(self.M)!r} outside (0, 1); reflect or rescale the "
                   f"observable first")
            logger.error(msg)
            raise ValueError(msg)
        if not 1 <= n_min <= n_max:
            msg = f"Need 1 <= n_min <= n_max, got {n_min}, {n_max}"
            logger.error(msg)
            raise ValueError(msg)
        self.n_min = int(n_min)
        self.n_max = int(n_max)
        self.ones = {}
        self.masses = {}
        target = (1 + self.delta) * self.M
        for n in range(self.n_min, self.n_max + 1):
            self.ones[n] = [k for k in range(n + 1)
                            if self.b * k + self.a * (n - k) > target * n]
            self.masses[n] = binomial_mass(n, self.ones[n], self.p)
        logger.debug(f"Chernoff test built for levels {self.n_min}..{self.n_max}")

    @property
    def levels(self):
        return range(self.n_min, self.n_max + 1)

    @property
    def threshold(self):
        """(1 + delta) M."""
        return float((1 + self.delta) * self.M)

    @property
    def rate(self):
        """exp(-2 delta^2 M^2 / (b - a)^2), the per-level decay factor."""
        return math.exp(-2.0 * float(self.delta ** 2 * self.M ** 2 / (self.b - self.a) ** 2))

    def bound(self, n):
        """exp(-2 delta^2 n M^2 / (b - a)^2)."""
        return self.rate ** n

    @property
    def constant(self):
        """C = (1 - M)/(|z| + |3M|) with z = max(a, b)."""
        z = max(self.a, self.b)
        return float((1 - self.M) / (abs(z) + abs(3 * self.M)))

    def _check_level(self, n):
        if n not in self.ones:
            msg = f"Level {n} outside {self.n_min}..{self.n_max}"
            logger.error(msg)
            raise RuntimeError(msg)

    def indices(self, n):
        """Basis indices of C_n (n <= 24)."""
        self._check_level(n)
        if n > MAX_DIAGONAL_QUBITS:
            msg = f"Cannot enumerate C_n at level {n}"
            logger.error(msg)
            raise RuntimeError(msg)
        everything = np.arange(2 ** n, dtype=np.int64)
        return everything[np.isin(popcounts(everything, n), self.ones[n])]

    def projector(self, n):
        """S_n = P_{C_n}."""
        return Projector.from_support(n, self.indices(n))

    def state_mass(self, level):
        """Tr(rho_n S_n) for a diagonal or dense level."""
        n = level.qubits
        self._check_level(n)
        if isinstance(level, DiagonalLevel):
            indices, weights = level.indices, level.weights
        else:
            weights = level.diagonal()
            indices = np.arange(weights.size)
        return float(np.sum(weights[np.isin(popcounts(indices, n), self.ones[n])]))

    def declared_limit(self):
        """sum_{n >= n_min} of the level bounds, a geometric series."""
        rate = self.rate
        return rate ** self.n_min / (1.0 - rate)

    def as_quantum_test(self, n_max=None):
        """The p-quantum Schnorr test (S_n) for n up to min(n_max, 24)."""
        top = min(self.n_max if n_max is None else n_max, MAX_DIAGONAL_QUBITS)
        members = [self.projector(n) for n in range(self.n_min, top + 1)]
        return QuantumTest(Discipline.PSCHNORR, members, p=float(self.p),
                           declared_limit=self.declared_limit())

    def __repr__(self):
        return (f"ChernoffTest(p={self.p}, a={self.a}, b={self.b}, delta={self.delta}, "
                f"levels={self.n_min}..{self.n_max})")


def chernoff_test(p, a, b, delta, n_min, n_max):
    """Build the Chernoff test; see ChernoffTest."""
    return ChernoffTest(p, a, b, delta, n_min, n_max)


def mass_records(test, instance_id=''):
    """b_p(S_n) <= exp(-2 delta^2 n M^2/(b - a)^2) with the exact mass on the left."""
    records = []
    for n in test.levels:
        mass = test.masses[n]
        bound = test.bound(n)
        lhs = float(mass)
        if isinstance(mass, Fraction):
            # the exact comparison decides; rounding must not flip it
            if mass <= Fraction(bound):
                lhs = min(lhs, bound)
            elif lhs <= bound:
                lhs = float(np.nextafter(bound, np.inf))
        records.append(CheckRecord(f'b_p(S_{n}) <= exp(-2d^2nM^2/(b-a)^2)', lhs, '<=', bound,
                                   instance_id=instance_id))
    return records


def verify_lln_failure(rho, test):
    """Mass of a deviating state on the Chernoff test.

    At every level n of both the state and the test where the average
    n^-1 sum_i Tr(rho_n Q^n_i) exceeds delta + M, the state should put at
    least C delta on S_n.

    Returns
    -------
    pandas.DataFrame
        One row per witnessing level with columns n, average, threshold
        (delta + M), mass (Tr(rho_n S_n)), bound (C delta) and margin
        (mass - bound). Empty when no level witnesses a deviation.
    """
    a, b = float(test.a), float(test.b)
    threshold = float(test.delta + test.M)
    bound = test.constant * float(test.delta)
    rows = []
    for n in range(test.n_min, min(test.n_max, rho.depth) + 1):
        average = lln_average(rho, n, a, b)
        if average > threshold:
            mass = test.state_mass(rho.level(n))
            rows.append((n, average, threshold, mass, bound, mass - bound))
    if not rows:
        logger.debug("verify_lln_failure: no witnessing level")
    return pd.DataFrame(rows, columns=REPORT_COLUMNS)


def report_records(report, instance_id=''):
    """CheckRecords Tr(rho_n S_n) >= C delta from a verify_lln_failure report."""
    return [CheckRecord(f'Tr(rho_{int(row.n)} S_{int(row.n)}) >= C delta', row.mass, '>=',
                        row.bound, tol=1e-12, instance_id=instance_id)
            for row in report.itertuples(index=False)]


def eigen_threshold_record(test, n, instance_id=''):
    """C_n equals the span of the eigenvectors of A_n above (1 + delta) M.

    A_n is materialized densely from the Q^n_i, so n is limited to the dense
    cap. The record holds 1 when the basis strings of the eigenspace are
    exactly C_n.
    """
    if n > MAX_DENSE_QUBITS:
        msg = f"Cannot materialize A_n at level {n}"
        logger.error(msg)
        raise RuntimeError(msg)
    a_n = averaging_operator(n, float(test.a), float(test.b))
    vals, vecs = matrices.eigh(a_n)
    above = vecs[:, vals > test.threshold + 1e-12]
    weight = np.sum(np.abs(above) ** 2, axis=1)
    eigen_set = np.nonzero(weight > 0.5)[0]
    agree = np.array_equal(eigen_set, test.indices(n))
    return CheckRecord(f'C_{n} == eigenspace(A_{n} > (1+delta)M)', float(agree), '>=', 1.0,
                       instance_id=instance_id)
