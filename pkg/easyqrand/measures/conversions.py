"""From quantum tests to classical tests.

All three constructions threshold the diagonal of a projection: the strings
sigma with <sigma|F|sigma> > delta form a set S with |S| < Tr(F)/delta.
"""
import logging
import numpy as np

from easyqrand.checks import CheckRecord
from easyqrand.constants import ClassicalDiscipline, Discipline, resolve_tolerances
from easyqrand.states import make_classical
from easyqrand.qsigma import member_value
from easyqrand.utils.helpers import index_to_bitstring
from .classical import ClassicalSigmaPrefix, ClassicalTestPrefix, top_level_prefix

__license__ = "LGPL"

logger = logging.getLogger(__name__)

COUNT_SLACK = 1e-9


def threshold_indices(f, delta):
    """Basis indices sigma with <sigma|F|sigma> > delta, sorted."""
    if delta <= 0.0:
        msg = f"delta must be positive, got {delta}"
        logger.error(msg)
        raise ValueError(msg)
    if f.is_diagonal:
        if delta < 1.0:
            return np.array(f.support, dtype=np.int64)
        return np.zeros(0, dtype=np.int64)
    return np.nonzero(f.diagonal() > delta)[0].astype(np.int64)


def threshold_basis_set(e_dim, f, delta):
    """The strings sigma of length e_dim with <sigma|F|sigma> > delta.

    Parameters
    ----------
    e_dim : int
        Number of qubits n of the computational basis E.
    f : Projector
        Projection on n qubits.
    delta : float
        Positive threshold.

    Returns
    -------
    list of str
        Sorted bitstrings. Raises RuntimeError if the counting bound
        |S| < Tr(F)/delta fails for a non-empty S.
    """
    if f.qubits != e_dim:
        msg = f"Projector acts on {f.qubits} qubits, basis has {e_dim}"
        logger.error(msg)
        raise RuntimeError(msg)
    indices = threshold_indices(f, delta)
    check_counting_bound(indices.size, f.rank, delta)
    return [index_to_bitstring(idx, e_dim) for idx in indices]


def check_counting_bound(size, rank, delta):
    if size and not size < rank / delta + COUNT_SLACK:
        msg = f"Threshold set of size {size} breaks |S| < Tr(F)/delta = {rank / delta!r}"
        logger.error(msg)
        raise RuntimeError(msg)


def counting_record(size, rank, delta, instance_id=''):
    """|S| < Tr(F)/delta with the integer size on the left."""
    return CheckRecord('|S| < Tr(F)/delta', size, '<', rank / delta, tol=COUNT_SLACK,
                       instance_id=instance_id)


def _close_upwards(levels):
    """Add the children of level k strings missing from level k + 1."""
    closed = [levels[0]]
    for k, level in enumerate(levels[1:], start=2):
        kids = np.concatenate([2 * closed[-1], 2 * closed[-1] + 1])
        merged = np.union1d(level, kids)
        if merged.size != level.size:
            logger.info(f"threshold closure added {merged.size - level.size} strings at level {k}")
        closed.append(merged)
    return closed


def qmlt_to_classical(qt, delta, tols=None):
    """Classical MLT (C^m)_m with C^m_n = {sigma : <sigma|G^m_n|sigma> > delta/4}.

    The diagonal of a nested projection only grows along extensions, so the
    levels are nested; strings lost to rounding at a level boundary are
    added back and logged. Member m has Lebesgue mass below 4/delta times
    the mass bound of G^m.

    Parameters
    ----------
    qt : QuantumTest
        A qMLT.
    delta : float
    tols : Tolerances or None

    Returns
    -------
    ClassicalTestPrefix
    """
    tols = resolve_tolerances(tols)
    if qt.discipline != Discipline.QMLT:
        msg = f"qmlt_to_classical needs a qMLT, got {qt.discipline.value}"
        logger.error(msg)
        raise RuntimeError(msg)
    qt.validate(tols)
    members = []
    for member in qt.members:
        levels = []
        for n in range(1, member.depth + 1):
            proj = member.level(n)
            indices = threshold_indices(proj, delta / 4.0)
            check_counting_bound(indices.size, proj.rank, delta / 4.0)
            levels.append(indices)
        if levels:
            levels = _close_upwards(levels)
        members.append(ClassicalSigmaPrefix(levels))
    bounds = [4.0 / delta * bound for bound in qt.mass_bounds]
    return ClassicalTestPrefix(ClassicalDiscipline.MLT, members, mass_bounds=bounds,
                               first_index=qt.first_index, tols=tols)


def classical_solovay_to_mlt(st, delta, m_max, tols=None):
    """Classical MLT from a classical Solovay test by counting memberships.

    C^m_t = {sigma of length t : #{k <= t : sigma in S^k_t} > 2^(m-1) delta}.

    Parameters
    ----------
    st : ClassicalTestPrefix
        Solovay test with total mass below 1 and S^k_t empty for k > t.
    delta : float
    m_max : int
    tols : Tolerances or None

    Returns
    -------
    ClassicalTestPrefix
        MLT with members m = 1 .. m_max and mass bounds 2^(-m+1)/delta.
    """
    tols = resolve_tolerances(tols)
    if st.discipline != ClassicalDiscipline.SOLOVAY:
        msg = f"classical_solovay_to_mlt needs a Solovay test, got {st.discipline.value}"
        logger.error(msg)
        raise RuntimeError(msg)
    if delta <= 0.0:
        msg = f"delta must be positive, got {delta}"
        logger.error(msg)
        raise ValueError(msg)
    if st.partial_sums and st.partial_sums[-1] >= 1.0:
        msg = f"Solovay members have total mass {st.partial_sums[-1]!r}, must be below 1"
        logger.error(msg)
        raise RuntimeError(msg)
    depths = {member.depth for member in st.members}
    if len(depths) > 1:
        msg = f"Solovay members need one common depth, got {sorted(depths)}"
        logger.error(msg)
        raise RuntimeError(msg)
    depth = depths.pop() if depths else 0
    for k, member in enumerate(st.members, start=1):
        for n in range(1, min(k - 1, depth) + 1):
            if member.indices(n).size:
                msg = f"Level {n} of member {k} must be empty (k > n)"
                logger.error(msg)
                raise RuntimeError(msg)

    counts = []
    for t in range(1, depth + 1):
        hits = [member.indices(t) for member in st.members[:t]]
        if hits:
            strings, tally = np.unique(np.concatenate(hits), return_counts=True)
        else:
            strings, tally = np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
        counts.append((strings, tally))
    members = []
    for m in range(1, m_max + 1):
        bar = 2.0 ** (m - 1) * delta
        levels = [strings[tally > bar] for strings, tally in counts]
        members.append(ClassicalSigmaPrefix(levels))
        logger.debug(f"classical C^{m}: sizes {[lvl.size for lvl in levels]}")
    bounds = [2.0 ** (1 - m) / delta for m in range(1, m_max + 1)]
    return ClassicalTestPrefix(ClassicalDiscipline.MLT, members, mass_bounds=bounds, tols=tols)


def schnorr_to_classical(qt, delta, tols=None):
    """Classical Schnorr test T^r = {sigma : <sigma|Q^r|sigma> > delta}.

    Parameters
    ----------
    qt : QuantumTest
        qSchnorr test with single projection members Q^r on n_r qubits.
    delta : float

    Returns
    -------
    ClassicalTestPrefix
        Schnorr test with member r of depth n_r, mass bound tau(Q^r)/delta and
        declared limit (declared limit of qt)/delta.
    """
    tols = resolve_tolerances(tols)
    if qt.discipline != Discipline.QSCHNORR:
        msg = f"schnorr_to_classical needs a qSchnorr test, got {qt.discipline.value}"
        logger.error(msg)
        raise RuntimeError(msg)
    members = []
    for proj in qt.members:
        indices = threshold_indices(proj, delta)
        check_counting_bound(indices.size, proj.rank, delta)
        members.append(top_level_prefix(proj.qubits, indices))
    bounds = [mass / delta for mass in qt.masses]
    return ClassicalTestPrefix(ClassicalDiscipline.SCHNORR, members, mass_bounds=bounds,
                               declared_limit=qt.declared_limit / delta, tols=tols)


def qmlt_transfer_records(measure, qt, ct, delta, instance_id=''):
    """Mass transfer from a failing quantum test to its classical image.

    At every level n where Tr(rho_n G^m_n) > delta, mu(C^m_n) >= 3 delta/4.
    When rho fails qt at order delta, also mu(C^m) > delta/2 for all m.
    """
    records = []
    rho = measure.state
    for j, (member, image) in enumerate(zip(qt.members, ct.members)):
        m = qt.index(j)
        for n in range(1, min(member.depth, rho.depth) + 1):
            if member.level(n).expectation(rho.level(n)) > delta:
                records.append(CheckRecord(f'mu(C^{m}_{n}) >= 3delta/4',
                                           measure.mass_of_indices(n, image.indices(n)), '>=',
                                           0.75 * delta, tol=1e-9, instance_id=instance_id))
    values = [member_value(rho, member) for member in qt.members]
    if values and min(values) >= delta:
        for j, image in enumerate(ct.members):
            records.append(CheckRecord(f'mu(C^{ct.index(j)}) > delta/2',
                                       image.measure_value(measure), '>', 0.5 * delta,
                                       tol=1e-9, instance_id=instance_id))
    return records


def solovay_transfer_records(measure, st, mlt, delta, instance_id=''):
    """mu(J^m) > delta/2 whenever 2^m members have mass above delta at one level."""
    records = []
    for j, image in enumerate(mlt.members):
        m = mlt.index(j)
        for n in range(1, min(image.depth, measure.depth) + 1):
            heavy = sum(1 for member in st.members
                        if member.depth >= n
                        and measure.mass_of_indices(n, member.indices(n)) > delta)
            if heavy >= 2 ** m:
                records.append(CheckRecord(f'mu(J^{m}) > delta/2 at level {n}',
                                           image.measure_value(measure), '>', 0.5 * delta,
                                           tol=1e-9, instance_id=instance_id))
                break
    return records


def classical_state_records(x, qt, ct, delta, instance_id=''):
    """rho_X puts more than delta on Q^r exactly when X|n_r lies in T^r."""
    records = []
    depth = max((proj.qubits for proj in qt.members), default=0)
    if depth == 0:
        return records
    rho = make_classical(x, depth)
    for r, (proj, image) in enumerate(zip(qt.members, ct.members), start=1):
        n = proj.qubits
        captured = proj.expectation(rho.level(n)) > delta
        inside = x[:n] in set(image.level(n))
        records.append(CheckRecord(f'[Tr(rho_X Q^{r}) > delta] == [X|n_r in T^{r}]',
                                   float(captured == inside), '>=', 1.0,
                                   instance_id=instance_id))
    return records
