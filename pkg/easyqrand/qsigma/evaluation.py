"""Evaluating states against q-Sigma_1 sets and quantum tests.

Values
------
For a state rho and a q-Sigma_1 prefix G of depth N the value rho(G) is the
limit of Tr(rho_k P_k). Nesting makes the sequence nondecreasing, so on a
finite prefix the best available approximation is the maximum over the
levels both prefixes share. Single projections (strong Solovay and Schnorr
members) on n qubits are evaluated at level n, and are unavailable for
prefixes shallower than n.

Verdicts
--------
A state fails a qMLT at order delta when every member captures at least
delta of it; it fails a Solovay type test when at least `count` members
capture more than delta (the finite stand-in for infinitely many).
"""
import logging
import numpy as np

from easyqrand.checks import CheckRecord
from easyqrand.constants import Discipline, PREFIX_DISCIPLINES
from easyqrand.states import mix_states
from easyqrand.states.prefix import bernoulli_level
from .projector import Projector
from .sigma_prefix import QSigmaPrefix

__license__ = "LGPL"

logger = logging.getLogger(__name__)

SOLOVAY_DISCIPLINES = (Discipline.QSOLOVAY, Discipline.STRONG_SOLOVAY,
                       Discipline.QSCHNORR, Discipline.PSCHNORR)

DEFAULT_COUNT = 3


def tau_value(g):
    """tau(G) approximated by 2^-N rank(P_N)."""
    if g.depth == 0:
        return 0.0
    return g.level(g.depth).rank / 2.0 ** g.depth


def projector_tau(proj):
    """tau mass rank(P) / 2^n of a single projection."""
    return proj.rank / 2.0 ** proj.qubits


def projector_bernoulli_mass(proj, p):
    """b_p mass Tr(b_{p,n} P) of a single projection."""
    return proj.expectation(bernoulli_level(p, proj.qubits))


def rho_values(rho, g):
    """Tr(rho_k P_k) for k = 1 .. min(rho.depth, g.depth)."""
    if g.depth == 0:
        msg = "Cannot evaluate a state on an empty q-Sigma_1 prefix"
        logger.error(msg)
        raise RuntimeError(msg)
    depth = min(rho.depth, g.depth)
    return [g.level(k).expectation(rho.level(k)) for k in range(1, depth + 1)]


def rho_value(rho, g):
    """rho(G) approximated by the largest Tr(rho_k P_k) over shared levels.

    Parameters
    ----------
    rho : StatePrefix
    g : QSigmaPrefix

    Returns
    -------
    float
    """
    return max(rho_values(rho, g))


def member_value(rho, member):
    """Value of a test member, or None when rho is too shallow for it."""
    if isinstance(member, QSigmaPrefix):
        return rho_value(rho, member)
    if isinstance(member, Projector):
        if member.qubits > rho.depth or member.qubits == 0:
            return None
        return member.expectation(rho.level(member.qubits))
    msg = f"Unknown test member type {type(member).__name__}"
    logger.error(msg)
    raise RuntimeError(msg)


def member_values(rho, test):
    return [member_value(rho, member) for member in test.members]


def _require(test, allowed, operation):
    if test.discipline not in allowed:
        names = ', '.join(d.value for d in allowed)
        msg = f"{operation} needs a test of discipline {names}, got {test.discipline.value}"
        logger.error(msg)
        raise RuntimeError(msg)


def fails_qmlt(rho, test, delta):
    """True iff every member G of the qMLT has rho(G) >= delta.

    A test without members is never failed.
    """
    _require(test, (Discipline.QMLT,), 'fails_qmlt')
    values = member_values(rho, test)
    if not values:
        return False
    return bool(min(values) >= delta)


def passes_qmlt(rho, test, delta):
    return not fails_qmlt(rho, test, delta)


def fails_solovay(rho, test, delta, count=DEFAULT_COUNT):
    """True iff at least `count` members S have rho(S) > delta.

    Parameters
    ----------
    rho : StatePrefix
    test : QuantumTest
        Of discipline qSolovay, strongSolovay, qSchnorr or pSchnorr.
    delta : float
    count : int
        Finite stand-in for "infinitely many", at least 1.

    Returns
    -------
    bool
    """
    _require(test, SOLOVAY_DISCIPLINES, 'fails_solovay')
    if count < 1:
        msg = f"count must be at least 1, got {count}"
        logger.error(msg)
        raise ValueError(msg)
    exceeding = [val for val in member_values(rho, test) if val is not None and val > delta]
    return len(exceeding) >= count


def passes_solovay(rho, test, delta, count=DEFAULT_COUNT):
    return not fails_solovay(rho, test, delta, count)


def fails(rho, test, delta, count=DEFAULT_COUNT):
    """Failure verdict according to the discipline of `test`."""
    if test.discipline == Discipline.QMLT:
        return fails_qmlt(rho, test, delta)
    return fails_solovay(rho, test, delta, count)


def verdict(rho, test, delta, count=DEFAULT_COUNT):
    """Per-member values, summary statistics and the verdict, as a dict.

    Keys are 'discipline', 'values' (None for unavailable members), 'inf'
    (smallest available value), 'exceed_count' (members above delta),
    'count', 'fails' and 'passes'.
    """
    values = member_values(rho, test)
    available = [val for val in values if val is not None]
    failed = fails(rho, test, delta, count)
    return {
        'discipline': test.discipline.value,
        'delta': float(delta),
        'values': values,
        'inf': min(available) if available else None,
        'exceed_count': sum(1 for val in available if val > delta),
        'count': count if test.discipline in SOLOVAY_DISCIPLINES else None,
        'fails': failed,
        'passes': not failed,
    }


def _member_levels(member):
    if isinstance(member, QSigmaPrefix):
        return [(k, member.level(k)) for k in range(1, member.depth + 1)]
    return [(member.qubits, member)]


def convexity_records(states, weights, member, tols=None, mixture=None):
    """Check Tr(mix_k G_k) = sum_i alpha_i Tr(rho^i_k G_k) at every level.

    Parameters
    ----------
    states : list of StatePrefix
    weights : list of float
    member : QSigmaPrefix or Projector
    tols : Tolerances or None
    mixture : StatePrefix or None
        Precomputed mix_states(states, weights).

    Returns
    -------
    list of CheckRecord
        One record per level, each with slack 1e-10.
    """
    if mixture is None:
        mixture = mix_states(states, weights, tols=tols)
    records = []
    for k, proj in _member_levels(member):
        if k > mixture.depth:
            continue
        lhs = proj.expectation(mixture.level(k))
        rhs = sum(w * proj.expectation(state.level(k)) for w, state in zip(weights, states))
        records.append(CheckRecord(f'|Tr(mix G_{k}) - sum a_i Tr(rho^i G_{k})|',
                                   abs(lhs - rhs), '<=', 0.0, tol=1e-10))
    return records


def mixture_pigeonhole(states, weights, test, delta, count=DEFAULT_COUNT, tols=None):
    """Locate the components responsible for a failing mixture.

    For every member on which the mixture reaches the failure threshold
    (>= delta for qMLT, > delta otherwise) the mixture value is a convex
    combination of component values at the same level, so some component
    reaches it too. That component (the first one of largest value) is the
    witness for the member.

    Returns
    -------
    dict
        'mixture_fails': verdict of the mixture,
        'witnesses': {member position: component index},
        'component_fails': verdict of each component,
        'consistent': every failing member has a witness whose value is at
        least the mixture value (up to 1e-10).
    """
    mixture = mix_states(states, weights, tols=tols)
    prefix_test = test.discipline in PREFIX_DISCIPLINES
    mix_vals = member_values(mixture, test)
    comp_vals = [member_values(state, test) for state in states]
    witnesses = {}
    consistent = True
    for j, value in enumerate(mix_vals):
        if value is None:
            continue
        reached = value >= delta if prefix_test else value > delta
        if not reached:
            continue
        column = np.array([vals[j] for vals in comp_vals], dtype=float)
        best = int(np.argmax(column))
        witnesses[j] = best
        consistent = consistent and column[best] >= value - 1e-10
    result = {
        'mixture_fails': fails(mixture, test, delta, count),
        'witnesses': witnesses,
        'component_fails': [fails(state, test, delta, count) for state in states],
        'consistent': consistent,
    }
    logger.debug(f"mixture pigeonhole: {result}")
    return result
