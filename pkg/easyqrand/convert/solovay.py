"""Conversion of quantum Solovay tests into quantum Martin-Lof tests.

For a Solovay instance (S^k)_k with sum_k tau(S^k) < 1 and S^k_n = 0 for
k > n, member m of the resulting qMLT is built level by level:

1. lift the orthonormal set C^m_{n-1} to D^m_n = {psi (x) |0>, psi (x) |1>},
2. extend D^m_n greedily to a maximal orthonormal set C^m_n above
   lambda = 2^m delta / 4 for V_n = sum_{k<=n} S^k_n,
3. G^m_n = sum over C^m_n of |psi><psi|.

Lifting keeps <psi (x) i|V_n|psi (x) i> >= <psi|V_{n-1}|psi>, so the seeds
stay above the threshold and G^m is nested. The mass of G^m stays below
(4/delta) 2^-m, and a state that puts more than delta on at least 2^m of the
S^k_n at some level n puts more than delta/4 on G^m_n.
"""
import logging
import math
from fractions import Fraction
import numpy as np
import pandas as pd

from easyqrand.approx import greedy_maximal_set
from easyqrand.checks import CheckRecord
from easyqrand.constants import Discipline, resolve_tolerances
from easyqrand.qsigma import Projector, QSigmaPrefix, QuantumTest, tau_value
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

DEFAULT_M_MAX = 4
LIFT_SLACK = 1e-9
TRACE_COLUMNS = ['m', 'n', 'size', 'added', 'tau_partial']


def as_fraction(value):
    """Exact rational form of `value` (int, Fraction, decimal string or float)."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        if not math.isfinite(value):
            msg = f"{value!r} is not a rational number"
            logger.error(msg)
            raise RuntimeError(msg)
        value = repr(value)
    try:
        return Fraction(value)
    except (ValueError, TypeError, ZeroDivisionError):
        msg = f"{value!r} is not a rational number"
        logger.error(msg)
        raise RuntimeError(msg)


class SolovayInstance:
    """A finite quantum Solovay test ready for conversion.

    Parameters
    ----------
    members : list of QSigmaPrefix
        S^1 .. S^K, all of depth N, with level n of S^k zero for k > n.
    delta : Fraction, int, str or float
        Failure order, a rational in (0, 1), stored exactly.
    tols : Tolerances or None

    Attributes
    ----------
    depth : int
    delta : Fraction
    total_mass : float
        sum_k tau(S^k), below 1.
    """

    def __init__(self, members, delta, tols=None):
        tols = resolve_tolerances(tols)
        self.members = list(members)
        self.delta = as_fraction(delta)
        if not 0 < self.delta < 1:
            msg = f"delta must lie in (0, 1), got {self.delta}"
            logger.error(msg)
            raise ValueError(msg)
        depths = {member.depth for member in self.members}
        if len(depths) != 1:
            msg = f"Solovay members need one common depth, got {sorted(depths)}"
            logger.error(msg)
            raise RuntimeError(msg)
        self.depth = depths.pop()
        for k, member in enumerate(self.members, start=1):
            member.validate(tols)
            for n in range(1, min(k - 1, self.depth) + 1):
                if member.level(n).rank != 0:
                    msg = f"Level {n} of member {k} must be zero (k > n)"
                    logger.error(msg)
                    raise RuntimeError(msg)
        self.total_mass = float(sum(tau_value(member) for member in self.members))
        if self.total_mass >= 1.0:
            msg = f"Solovay members have total mass {self.total_mass!r}, must be below 1"
            logger.error(msg)
            raise RuntimeError(msg)
        self._v = {}

    def v_level(self, n):
        """V_n = sum_{k<=n} S^k_n as a dense matrix."""
        if n not in self._v:
            mat = np.zeros((2 ** n, 2 ** n), dtype=np.complex128)
            for member in self.members[:n]:
                proj = member.level(n)
                if proj.rank:
                    mat = mat + proj.matrix()
            mat.setflags(write=False)
            self._v[n] = mat
        return self._v[n]

    def threshold(self, m):
        """2^m delta / 4, exactly."""
        return Fraction(2) ** m * self.delta / 4

    def as_test(self):
        """The members as a qSolovay QuantumTest."""
        return QuantumTest(Discipline.QSOLOVAY, self.members)

    def __repr__(self):
        return (f"SolovayInstance(K={len(self.members)}, depth={self.depth}, "
                f"delta={self.delta}, mass={self.total_mass!r})")


def _lift_seeds(inst, n, previous, tols):
    seeds = []
    if n == 1 or previous.shape[1] == 0:
        return seeds
    v_prev = inst.v_level(n - 1)
    v_now = inst.v_level(n)
    for j in range(previous.shape[1]):
        psi = previous[:, j]
        before = matrices.expectation(v_prev, psi)
        for lifted in matrices.lift(psi):
            after = matrices.expectation(v_now, lifted)
            if after < before - LIFT_SLACK:
                msg = (f"Lifting at level {n} lowers <psi|V|psi> from {before!r} to {after!r}")
                logger.error(msg)
                raise RuntimeError(msg)
            seeds.append(lifted)
    return seeds


def convert_member(inst, m, tols=None):
    """Build G^m level by level.

    Returns
    -------
    (QSigmaPrefix, list of dict)
        The member and its construction trace rows.
    """
    tols = resolve_tolerances(tols)
    lam = float(inst.threshold(m))
    previous = np.zeros((1, 0), dtype=np.complex128)
    levels = []
    rows = []
    for n in range(1, inst.depth + 1):
        seeds = _lift_seeds(inst, n, previous, tols)
        result = greedy_maximal_set(inst.v_level(n), lam, seeds, tols=tols)
        if result.added == 0:
            logger.info(f"G^{m}_{n}: greedy extension kept the {len(seeds)} lifted vectors")
        previous = result.basis
        levels.append(Projector.from_columns(result.basis, qubits=n, validate=False))
        rows.append({'m': m, 'n': n, 'size': result.trace, 'added': result.added,
                     'tau_partial': result.trace / 2.0 ** n})
        logger.debug(f"G^{m}_{n}: |C| = {result.trace}")
    return QSigmaPrefix(levels, tols=tols), rows


def solovay_to_mlt_with_trace(inst, m_max=DEFAULT_M_MAX, tols=None):
    """solovay_to_mlt, also returning the construction trace as a DataFrame."""
    tols = resolve_tolerances(tols)
    if int(m_max) != m_max or m_max < 1:
        msg = f"m_max must be a positive integer, got {m_max}"
        logger.error(msg)
        raise ValueError(msg)
    members = []
    rows = []
    for m in range(1, m_max + 1):
        member, member_rows = convert_member(inst, m, tols)
        members.append(member)
        rows.extend(member_rows)
    bounds = [float(4 / inst.delta) * 2.0 ** -m for m in range(1, m_max + 1)]
    test = QuantumTest(Discipline.QMLT, members, mass_bounds=bounds, tols=tols)
    return test, pd.DataFrame(rows, columns=TRACE_COLUMNS)


def solovay_to_mlt(inst, m_max=DEFAULT_M_MAX, tols=None):
    """Convert a Solovay instance into a qMLT (G^m)_{m=1..m_max}.

    Parameters
    ----------
    inst : SolovayInstance
    m_max : int
    tols : Tolerances or None

    Returns
    -------
    QuantumTest
        qMLT whose member m carries the mass bound (4/delta) 2^-m.
    """
    return solovay_to_mlt_with_trace(inst, m_max, tols)[0]


def mass_records(inst, mlt, tols=None, instance_id=''):
    """tau(G^m) < (4/delta) 2^-m for every member."""
    tols = resolve_tolerances(tols)
    return [CheckRecord(f'tau(G^{mlt.index(j)}) < (4/delta)2^-m', tau_value(member), '<',
                        float(4 / inst.delta) * 2.0 ** -mlt.index(j), tol=tols.check,
                        instance_id=instance_id)
            for j, member in enumerate(mlt.members)]


def witness_levels(rho, inst, m):
    """Levels n at which at least 2^m members have Tr(rho_n S^k_n) > delta."""
    delta = float(inst.delta)
    levels = []
    for n in range(1, min(rho.depth, inst.depth) + 1):
        level = rho.level(n)
        hits = sum(1 for member in inst.members[:n] if member.level(n).expectation(level) > delta)
        if hits >= 2 ** m:
            levels.append(n)
    return levels


def verify_failure_transfer(rho, inst, mlt, m, tols=None, instance_id=''):
    """Check Tr(rho_n G^m_n) > delta/4 at every witnessing level n.

    Parameters
    ----------
    rho : StatePrefix
    inst : SolovayInstance
    mlt : QuantumTest
        Output of solovay_to_mlt for `inst`.
    m : int
        Member index of `mlt`.

    Returns
    -------
    list of CheckRecord
        One record per witnessing level; empty when the hypothesis never
        holds (vacuous pass).
    """
    tols = resolve_tolerances(tols)
    member = mlt.member(m)
    records = []
    for n in witness_levels(rho, inst, m):
        value = member.level(n).expectation(rho.level(n))
        records.append(CheckRecord(f'Tr(rho_{n} G^{m}_{n}) > delta/4', value, '>',
                                   float(inst.delta) / 4.0, tol=tols.check,
                                   instance_id=instance_id))
    if not records:
        logger.debug(f"failure transfer for m={m} holds vacuously")
    return records
