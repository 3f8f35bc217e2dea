"""Classical Sigma_1 prefixes and classical tests on Cantor space.

A classical Sigma_1 prefix is a sequence (A_1, ..., A_N) of sets of strings,
A_k made of strings of length k, with [A_k] contained in [A_{k+1}]: every
string of A_k has both children in A_{k+1}. Sets are stored as sorted arrays
of basis indices and compared combinatorially.
"""
import logging
import numpy as np

from easyqrand.constants import ClassicalDiscipline, resolve_tolerances
from easyqrand.qsigma import Projector
from easyqrand.utils.helpers import bitstring_to_index, index_to_bitstring

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


class ClassicalSigmaPrefix:
    """Nested sequence of same-length string sets.

    Parameters
    ----------
    levels : sequence
        Level k (position k - 1) given as an iterable of length-k bitstrings
        or as an integer array of basis indices.
    validate : bool, default=True
        Check string lengths and the nesting of consecutive levels.
    """

    def __init__(self, levels, validate=True):
        self._levels = []
        for k, level in enumerate(levels, start=1):
            self._levels.append(self._as_indices(k, level))
        self.depth = len(self._levels)
        if validate:
            self.validate()

    @staticmethod
    def _as_indices(k, level):
        if isinstance(level, np.ndarray):
            indices = np.unique(level.astype(np.int64))
        else:
            level = list(level)
            for sigma in level:
                if len(sigma) != k:
                    msg = f"String {sigma!r} at level {k} has length {len(sigma)}"
                    logger.error(msg)
                    raise RuntimeError(msg)
            indices = np.unique(np.array([bitstring_to_index(s) for s in level],
                                         dtype=np.int64))
        if indices.size and (indices[0] < 0 or indices[-1] >= 2 ** k):
            msg = f"Basis index out of range at level {k}"
            logger.error(msg)
            raise RuntimeError(msg)
        indices.setflags(write=False)
        return indices

    def indices(self, k):
        return self._levels[k - 1]

    def level(self, k):
        """Sorted bitstrings of level k."""
        return [index_to_bitstring(idx, k) for idx in self._levels[k - 1]]

    @property
    def levels(self):
        return [self.level(k) for k in range(1, self.depth + 1)]

    def nesting_violations(self, k):
        """Strings of level k with a child missing from level k + 1."""
        lower = self._levels[k - 1]
        kids = np.concatenate([2 * lower, 2 * lower + 1])
        missing = ~np.isin(kids, self._levels[k])
        return sorted({index_to_bitstring(idx >> 1, k) for idx in kids[missing]})

    def validate(self):
        for k in range(1, self.depth):
            missing = self.nesting_violations(k)
            if missing:
                msg = f"Level {k} strings {missing[:5]} are not covered at level {k + 1}"
                logger.error(msg)
                raise RuntimeError(msg)

    def projector(self, k):
        """The diagonal projection P_{A_k}."""
        return Projector.from_support(k, self._levels[k - 1])

    def lebesgue_mass(self):
        """Lebesgue measure of the union of the cylinders, |A_N| / 2^N."""
        if self.depth == 0:
            return 0.0
        return max(self._levels[k - 1].size / 2.0 ** k for k in range(1, self.depth + 1))

    def measure_value(self, measure):
        """mu([A]) as the largest mu([A_k]) over the levels the measure reaches."""
        depth = min(self.depth, measure.depth)
        if depth == 0:
            return 0.0
        return max(measure.mass_of_indices(k, self._levels[k - 1]) for k in range(1, depth + 1))

    def __repr__(self):
        return f"ClassicalSigmaPrefix(depth={self.depth}, sizes={[a.size for a in self._levels]})"


def top_level_prefix(n, strings):
    """Prefix of depth n with only level n populated (a single string set)."""
    levels = [np.zeros(0, dtype=np.int64) for _ in range(n - 1)]
    strings = list(strings)
    if strings and not isinstance(strings[0], str):
        levels.append(np.asarray(strings, dtype=np.int64))
    else:
        levels.append(np.array([bitstring_to_index(s) for s in strings], dtype=np.int64))
    return ClassicalSigmaPrefix(levels)


class ClassicalTestPrefix:
    """A finite classical test.

    Parameters
    ----------
    discipline : ClassicalDiscipline or str
    members : sequence of ClassicalSigmaPrefix
    mass_bounds : sequence of float or None
        Per-member bounds of an MLT, 2^-m by default.
    declared_limit : float or None
        Limit of the partial sums of a Schnorr test (required there).
    first_index : int
    tols : Tolerances or None
    validate : bool, default=True

    Attributes
    ----------
    masses : list of float
        Lebesgue masses of the members.
    partial_sums : list of float
    """

    def __init__(self, discipline, members, mass_bounds=None, declared_limit=None,
                 first_index=1, tols=None, validate=True):
        self.discipline = ClassicalDiscipline(discipline)
        self.members = list(members)
        self.first_index = int(first_index)
        self.masses = [member.lebesgue_mass() for member in self.members]
        self.partial_sums = [float(s) for s in np.cumsum(self.masses)]
        self.declared_limit = None if declared_limit is None else float(declared_limit)
        if self.discipline == ClassicalDiscipline.MLT and mass_bounds is None:
            mass_bounds = [2.0 ** -self.index(j) for j in range(len(self.members))]
        self.mass_bounds = None if mass_bounds is None else [float(b) for b in mass_bounds]
        if validate:
            self.validate(tols)

    def index(self, position):
        return self.first_index + position

    def validate(self, tols=None):
        tols = resolve_tolerances(tols)
        if self.mass_bounds is not None:
            if len(self.mass_bounds) != len(self.members):
                msg = f"Got {len(self.mass_bounds)} mass bounds for {len(self.members)} members"
                logger.error(msg)
                raise RuntimeError(msg)
            for j, (mass, bound) in enumerate(zip(self.masses, self.mass_bounds)):
                if mass > bound + tols.mass:
                    msg = f"Member {self.index(j)} has mass {mass!r} above its bound {bound!r}"
                    logger.error(msg)
                    raise RuntimeError(msg)
        if self.discipline == ClassicalDiscipline.SCHNORR:
            if self.declared_limit is None:
                msg = "A classical Schnorr test needs a declared limit"
                logger.error(msg)
                raise RuntimeError(msg)
            if self.partial_sums and self.partial_sums[-1] > self.declared_limit + tols.mass:
                msg = (f"Partial sums reach {self.partial_sums[-1]!r}, above the declared "
                       f"limit {self.declared_limit!r}")
                logger.error(msg)
                raise RuntimeError(msg)

    def measure_values(self, measure):
        return [member.measure_value(measure) for member in self.members]

    def fails(self, measure, delta, count=3):
        """Failure of the measure at order delta.

        MLT: every member has mu >= delta. Solovay and Schnorr: at least
        `count` members have mu > delta.
        """
        values = self.measure_values(measure)
        if self.discipline == ClassicalDiscipline.MLT:
            return bool(values) and min(values) >= delta
        return sum(1 for val in values if val > delta) >= count

    def __len__(self):
        return len(self.members)

    def __repr__(self):
        return f"ClassicalTestPrefix({self.discipline.value}, members={len(self.members)})"
