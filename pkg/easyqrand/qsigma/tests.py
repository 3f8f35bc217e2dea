"""Quantum tests.

A `QuantumTest` bundles its members with the discipline they obey and the
certificate of that discipline:

================  ====================  ===================================
discipline        members               certificate
================  ====================  ===================================
qMLT              QSigmaPrefix          tau(G^m) <= mass_bounds[m]
qSolovay          QSigmaPrefix          partial sums of tau(S^k)
strongSolovay     Projector             partial sums of tau(S^k)
qSchnorr          Projector             partial sums and a declared limit
pSchnorr          Projector             partial sums of b_p and a limit
================  ====================  ===================================

Members of a qMLT are indexed from `first_index` (1 by default); the default
mass bound of member m is 2^-m.
"""
import logging
import numpy as np

from easyqrand.constants import Discipline, PREFIX_DISCIPLINES, resolve_tolerances
from .projector import Projector
from .sigma_prefix import QSigmaPrefix
from .evaluation import tau_value, projector_tau, projector_bernoulli_mass

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

LIMIT_DISCIPLINES = (Discipline.QSCHNORR, Discipline.PSCHNORR)


class QuantumTest:
    """A quantum test of one of the five disciplines.

    Parameters
    ----------
    discipline : Discipline or str
    members : sequence of QSigmaPrefix or Projector
    partial_sums : sequence of float or None
        Running sums of member masses (Solovay type disciplines). Computed
        when omitted, checked against the members when given.
    declared_limit : float or None
        Limit of the partial sums, required for qSchnorr and pSchnorr.
    mass_bounds : sequence of float or None
        Per-member tau bounds of a qMLT, 2^-m by default.
    p : float or None
        Bernoulli parameter of a pSchnorr test.
    first_index : int
        Index of the first member (qMLT).
    tols : Tolerances or None
    validate : bool, default=True
    """

    def __init__(self, discipline, members, partial_sums=None, declared_limit=None,
                 mass_bounds=None, p=None, first_index=1, tols=None, validate=True):
        self.discipline = Discipline(discipline)
        self.members = list(members)
        self.first_index = int(first_index)
        self.p = None if p is None else float(p)
        self.declared_limit = None if declared_limit is None else float(declared_limit)
        expected = QSigmaPrefix if self.discipline in PREFIX_DISCIPLINES else Projector
        for j, member in enumerate(self.members):
            if not isinstance(member, expected):
                msg = (f"Member {j} of a {self.discipline.value} test must be a "
                       f"{expected.__name__}, got {type(member).__name__}")
                logger.error(msg)
                raise RuntimeError(msg)
        if self.discipline == Discipline.PSCHNORR:
            if self.p is None or not 0.0 <= self.p <= 1.0:
                msg = f"A pSchnorr test needs p in [0, 1], got {p}"
                logger.error(msg)
                raise ValueError(msg)
        self.masses = [self.member_mass(member) for member in self.members]

        if self.discipline == Discipline.QMLT:
            if mass_bounds is None:
                mass_bounds = [2.0 ** -self.index(j) for j in range(len(self.members))]
            self.mass_bounds = [float(bound) for bound in mass_bounds]
            self.partial_sums = None
            self._given_sums = None
        else:
            self.mass_bounds = None
            self.partial_sums = [float(s) for s in np.cumsum(self.masses)]
            self._given_sums = None if partial_sums is None else [float(s) for s in partial_sums]
        if validate:
            self.validate(tols)

    def index(self, position):
        """Index of the member at list position `position`."""
        return self.first_index + position

    def member(self, m):
        """Member with index `m`; RuntimeError outside the index range."""
        if not self.first_index <= m < self.first_index + len(self.members):
            msg = (f"No member with index {m}, indices run from {self.first_index} to "
                   f"{self.first_index + len(self.members) - 1}")
            logger.error(msg)
            raise RuntimeError(msg)
        return self.members[m - self.first_index]

    def member_mass(self, member):
        """tau mass (b_p for pSchnorr) of one member."""
        if self.discipline in PREFIX_DISCIPLINES:
            return tau_value(member)
        if self.discipline == Discipline.PSCHNORR:
            return projector_bernoulli_mass(member, self.p)
        return projector_tau(member)

    @property
    def total_mass(self):
        return float(sum(self.masses))

    def validate(self, tols=None):
        """Check the certificate of the discipline."""
        tols = resolve_tolerances(tols)
        if self.discipline == Discipline.QMLT:
            if len(self.mass_bounds) != len(self.members):
                msg = f"Got {len(self.mass_bounds)} mass bounds for {len(self.members)} members"
                logger.error(msg)
                raise RuntimeError(msg)
            for j, (mass, bound) in enumerate(zip(self.masses, self.mass_bounds)):
                if mass > bound + tols.mass:
                    msg = (f"Member {self.index(j)} of the qMLT has tau mass {mass!r} "
                           f"above its bound {bound!r}")
                    logger.error(msg)
                    raise RuntimeError(msg)
            return
        if self._given_sums is not None:
            if len(self._given_sums) != len(self.members):
                msg = f"Got {len(self._given_sums)} partial sums for {len(self.members)} members"
                logger.error(msg)
                raise RuntimeError(msg)
            if any(b < a - tols.mass for a, b in zip(self._given_sums, self._given_sums[1:])):
                msg = "Declared partial sums are not monotone"
                logger.error(msg)
                raise RuntimeError(msg)
            slack = tols.mass * max(1, len(self.members))
            for j, (given, computed) in enumerate(zip(self._given_sums, self.partial_sums)):
                if abs(given - computed) > slack:
                    msg = (f"Declared partial sum {j} is {given!r}, members give {computed!r}")
                    logger.error(msg)
                    raise RuntimeError(msg)
        if self.discipline in LIMIT_DISCIPLINES:
            if self.declared_limit is None:
                msg = f"A {self.discipline.value} test needs a declared limit"
                logger.error(msg)
                raise RuntimeError(msg)
            if self.partial_sums and self.partial_sums[-1] > self.declared_limit + tols.mass:
                msg = (f"Partial sums reach {self.partial_sums[-1]!r}, above the declared "
                       f"limit {self.declared_limit!r}")
                logger.error(msg)
                raise RuntimeError(msg)

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __repr__(self):
        return f"QuantumTest({self.discipline.value}, members={len(self.members)})"
