"""Nested reshaping of a quantum Martin-Lof test.

Given a qMLT (G^i)_i, the test (Q^m)_{m>=2} with

    Q^m_n = projection onto span of range(G^i_n), m <= i <= n

is again a qMLT (tau(Q^m) < 2^{-m+1}) whose members decrease:
range(Q^{m+1}_n) lies in range(Q^m_n).
"""
import logging

from easyqrand.checks import CheckRecord
from easyqrand.constants import Discipline, resolve_tolerances
from .projector import span_of_union, inclusion_defect
from .sigma_prefix import QSigmaPrefix
from .tests import QuantumTest
from .evaluation import tau_value

__license__ = "LGPL"

logger = logging.getLogger(__name__)


def _check_input(test, tols):
    if test.discipline != Discipline.QMLT:
        msg = f"build_nested needs a qMLT, got {test.discipline.value}"
        logger.error(msg)
        raise RuntimeError(msg)
    test.validate(tols)
    for j, bound in enumerate(test.mass_bounds):
        if bound > 2.0 ** -test.index(j) + tols.mass:
            msg = (f"Member {test.index(j)} carries mass bound {bound!r}, "
                   f"build_nested needs the standard bound 2^-{test.index(j)}")
            logger.error(msg)
            raise RuntimeError(msg)
    depths = {member.depth for member in test.members}
    if len(depths) > 1:
        msg = f"qMLT members have different depths {sorted(depths)}"
        logger.error(msg)
        raise RuntimeError(msg)
    return depths.pop() if depths else 0


def build_nested(test, tols=None):
    """Build the decreasing qMLT (Q^m)_{m>=2} from a qMLT (G^i)_i.

    Parameters
    ----------
    test : QuantumTest
        qMLT with standard mass bounds 2^-i.
    tols : Tolerances or None

    Returns
    -------
    QuantumTest
        qMLT with members Q^m for m = max(2, first index) .. last index,
        mass bounds 2^{-m+1} and the same depth as the input members.
    """
    tols = resolve_tolerances(tols)
    depth = _check_input(test, tols)
    by_index = {test.index(j): member for j, member in enumerate(test.members)}
    last = test.index(len(test.members) - 1) if test.members else 0
    first = max(2, test.first_index)
    members = []
    for m in range(first, last + 1):
        levels = []
        for n in range(1, depth + 1):
            parts = [by_index[i].level(n) for i in range(m, min(n, last) + 1)]
            levels.append(span_of_union(parts, n, tols=tols))
        members.append(QSigmaPrefix(levels, tols=tols))
        logger.debug(f"build_nested: Q^{m} ranks {members[-1].ranks()}")
    return QuantumTest(Discipline.QMLT, members, first_index=first,
                       mass_bounds=[2.0 ** (1 - m) for m in range(first, last + 1)],
                       tols=tols)


def verify_nested(nested, tols=None, instance_id=''):
    """Check the rank, inclusion and mass properties of a build_nested output.

    Returns
    -------
    list of CheckRecord
    """
    tols = resolve_tolerances(tols)
    records = []
    for j, member in enumerate(nested.members):
        m = nested.index(j)
        for n in range(1, member.depth + 1):
            records.append(CheckRecord(f'rank(Q^{m}_{n}) < 2^(n-m+1)', member.level(n).rank,
                                       '<', 2.0 ** (n - m + 1), instance_id=instance_id))
        records.append(CheckRecord(f'tau(Q^{m}) < 2^(-m+1)', tau_value(member), '<',
                                   2.0 ** (1 - m), tol=tols.mass, instance_id=instance_id))
        if j + 1 < len(nested.members):
            inner = nested.members[j + 1]
            for n in range(1, member.depth + 1):
                defect = inclusion_defect(inner.level(n), member.level(n))
                records.append(CheckRecord(f'range(Q^{m + 1}_{n}) in range(Q^{m}_{n})',
                                           defect, '<=', tols.nest, instance_id=instance_id))
    return records
