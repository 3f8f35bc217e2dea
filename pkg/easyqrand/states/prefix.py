"""Finite prefixes of quantum states.

A state is a coherent sequence (rho_1, rho_2, ...) of density matrices where
rho_k lives on k qubits and tracing out the last qubit of rho_k gives
rho_{k-1}. A `StatePrefix` keeps the first `depth` levels. Dense prefixes
store their levels explicitly; diagonal kinds (classical, Bernoulli and
mixtures of diagonal states) may instead carry a recipe that builds level k on
demand, which is what makes depths up to 24 affordable.

Examples
--------
>>> tau = make_tau(3)
>>> tau.level(2).weight('01')
0.25
"""
import logging
from fractions import Fraction
import numpy as np

from easyqrand.constants import (StateKind, MAX_DENSE_QUBITS, MAX_DIAGONAL_QUBITS,
                                 resolve_tolerances)
from easyqrand.utils.helpers import check_bitstring, bitstring_to_index, popcounts
from .density import DensityMatrix, DiagonalLevel, partial_trace_last
from . import matrices

__license__ = "LGPL"

logger = logging.getLogger(__name__)

DIAGONAL_KINDS = (StateKind.DIAGONAL, StateKind.CLASSICAL, StateKind.BERNOULLI)


class StatePrefix:
    """Coherent sequence (rho_1, ..., rho_N) of density matrices.

    Parameters
    ----------
    kind : StateKind or str
    depth : int
        Number of levels N.
    levels : sequence or None
        Explicit levels, level k (k qubits) at position k - 1. `DensityMatrix`
        for the dense kind, `DiagonalLevel` for the others.
    recipe : callable or None
        Function k -> level, used instead of `levels` for lazy prefixes.
    params : dict or None
        Parameters of the recipe ({'x': ...} or {'p': ...}), kept for
        serialization.
    tols : Tolerances or None
    validate : bool, default=True
        Check level types, sizes and coherence of explicit levels.

    Attributes
    ----------
    kind : StateKind
    depth : int
    params : dict
    """

    def __init__(self, kind, depth, levels=None, recipe=None, params=None, tols=None,
                 validate=True):
        self.kind = StateKind(kind)
        self.depth = int(depth)
        self.params = dict(params or {})
        if self.depth < 1:
            msg = f"StatePrefix depth must be at least 1, got {depth}"
            logger.error(msg)
            raise RuntimeError(msg)
        cap = MAX_DIAGONAL_QUBITS if self.is_diagonal else MAX_DENSE_QUBITS
        if self.depth > cap:
            msg = f"{self.kind.value} prefixes are limited to depth {cap}, got {depth}"
            logger.error(msg)
            raise RuntimeError(msg)
        if (levels is None) == (recipe is None):
            msg = "StatePrefix needs exactly one of 'levels' or 'recipe'"
            logger.error(msg)
            raise RuntimeError(msg)
        self._recipe = recipe
        self._cache = {}
        if levels is not None:
            levels = list(levels)
            if len(levels) != self.depth:
                msg = f"Expected {self.depth} levels, got {len(levels)}"
                logger.error(msg)
                raise RuntimeError(msg)
            for k, level in enumerate(levels, start=1):
                self._check_level(k, level)
                self._cache[k] = level
            if validate:
                self.validate(tols)

    @property
    def is_diagonal(self):
        return self.kind in DIAGONAL_KINDS

    @property
    def is_lazy(self):
        return self._recipe is not None

    def _check_level(self, k, level):
        expected = DiagonalLevel if self.is_diagonal else DensityMatrix
        if not isinstance(level, expected):
            msg = (f"Level {k} of a {self.kind.value} prefix must be a "
                   f"{expected.__name__}, got {type(level).__name__}")
            logger.error(msg)
            raise RuntimeError(msg)
        if level.qubits != k:
            msg = f"Level {k} has {level.qubits} qubits"
            logger.error(msg)
            raise RuntimeError(msg)

    def level(self, k):
        """Level k (k qubits), 1 <= k <= depth."""
        if not 1 <= k <= self.depth:
            msg = f"Level {k} outside 1..{self.depth}"
            logger.error(msg)
            raise RuntimeError(msg)
        if k not in self._cache:
            level = self._recipe(k)
            self._check_level(k, level)
            self._cache[k] = level
        return self._cache[k]

    @property
    def levels(self):
        return [self.level(k) for k in range(1, self.depth + 1)]

    def dense_level(self, k):
        """Level k as a DensityMatrix, densifying diagonal levels."""
        return self.level(k).to_dense()

    def coherence_defect(self, k):
        """Max-entry distance between PT(rho_k) and rho_{k-1}."""
        if k < 2:
            return 0.0
        traced = partial_trace_last(self.level(k))
        lower = self.level(k - 1)
        if self.is_diagonal:
            return matrices.max_abs(traced.vector() - lower.vector())
        return matrices.max_abs(traced.mat - lower.mat)

    def validate(self, tols=None):
        """Check the coherence invariant level by level."""
        tols = resolve_tolerances(tols)
        for k in range(2, self.depth + 1):
            defect = self.coherence_defect(k)
            if defect > tols.coh:
                msg = f"Levels {k - 1} and {k} are not coherent (defect {defect:.3e})"
                logger.error(msg)
                raise RuntimeError(msg)

    def truncate(self, depth):
        """The prefix of the first `depth` levels."""
        if depth == self.depth:
            return self
        if not 1 <= depth <= self.depth:
            msg = f"Cannot truncate depth {self.depth} prefix to depth {depth}"
            logger.error(msg)
            raise RuntimeError(msg)
        if self.is_lazy:
            return StatePrefix(self.kind, depth, recipe=self._recipe, params=self.params)
        return StatePrefix(self.kind, depth, levels=self.levels[:depth], params=self.params,
                           validate=False)

    def __repr__(self):
        return f"StatePrefix(kind={self.kind.value}, depth={self.depth})"


def _check_probability(p):
    if isinstance(p, Fraction):
        p = float(p)
    p = float(p)
    if not 0.0 <= p <= 1.0:
        msg = f"Probability must lie in [0, 1], got {p}"
        logger.error(msg)
        raise ValueError(msg)
    return p


def bernoulli_level(p, k):
    """Level k of b_p: weight p^#zeros (1-p)^#ones on each bitstring."""
    indices = np.arange(2 ** k, dtype=np.int64)
    ones = popcounts(indices, k)
    weights = np.power(p, k - ones) * np.power(1.0 - p, ones)
    return DiagonalLevel(k, indices, weights, validate=False)


def make_bernoulli(p, depth):
    """Product Bernoulli state b_p with single-qubit weights (p, 1 - p).

    Parameters
    ----------
    p : float or Fraction
        Weight of |0> on every qubit, in [0, 1].
    depth : int

    Returns
    -------
    StatePrefix
    """
    p = _check_probability(p)
    return StatePrefix(StateKind.BERNOULLI, depth, recipe=lambda k: bernoulli_level(p, k),
                       params={'p': p})


def make_tau(depth):
    """The tracial state, level k equal to 2^-k I (the Bernoulli state b_1/2)."""
    return make_bernoulli(0.5, depth)


def make_classical(x, depth):
    """The state rho_X with level k equal to |X|k><X|k|.

    Parameters
    ----------
    x : str
        Bitstring of length at least `depth`.
    depth : int
    """
    check_bitstring(x)
    if len(x) < depth:
        msg = f"Bitstring of length {len(x)} is shorter than depth {depth}"
        logger.error(msg)
        raise RuntimeError(msg)
    x = x[:depth]

    def recipe(k):
        return DiagonalLevel(k, [bitstring_to_index(x[:k])], [1.0], validate=False)

    return StatePrefix(StateKind.CLASSICAL, depth, recipe=recipe, params={'x': x})


def make_diagonal(levels, tols=None):
    """Diagonal prefix from explicit {bitstring: weight} maps or DiagonalLevels."""
    built = []
    for k, level in enumerate(levels, start=1):
        if not isinstance(level, DiagonalLevel):
            level = DiagonalLevel.from_mapping(k, level, tols=tols)
        built.append(level)
    return StatePrefix(StateKind.DIAGONAL, len(built), levels=built, tols=tols)


def make_dense(levels, tols=None):
    """Dense prefix from explicit matrices (coherence is checked)."""
    built = []
    for k, level in enumerate(levels, start=1):
        if not isinstance(level, DensityMatrix):
            level = DensityMatrix(level, qubits=k, tols=tols)
        built.append(level)
    return StatePrefix(StateKind.DENSE, len(built), levels=built, tols=tols)


def from_top_level(top, tols=None):
    """Coherent prefix whose lower levels are partial traces of `top`.

    Parameters
    ----------
    top : DensityMatrix or DiagonalLevel
        The deepest level rho_N.
    """
    levels = [top]
    while levels[-1].qubits > 1:
        levels.append(partial_trace_last(levels[-1]))
    levels.reverse()
    kind = StateKind.DIAGONAL if isinstance(top, DiagonalLevel) else StateKind.DENSE
    return StatePrefix(kind, top.qubits, levels=levels, tols=tols)


def _check_weights(weights, count, tols):
    weights = [float(w) for w in weights]
    if len(weights) != count:
        msg = f"Got {len(weights)} weights for {count} states"
        logger.error(msg)
        raise RuntimeError(msg)
    if any(w < 0.0 for w in weights) or abs(sum(weights) - 1.0) > tols.trace:
        msg = f"Mixture weights must be nonnegative and sum to 1, got {weights}"
        logger.error(msg)
        raise RuntimeError(msg)
    return weights


def mix_states(states, weights, tols=None):
    """Level-wise convex combination sum_i alpha_i rho^i.

    Parameters
    ----------
    states : list of StatePrefix
        Prefixes of equal depth.
    weights : list of float
        Nonnegative weights summing to 1.
    tols : Tolerances or None

    Returns
    -------
    StatePrefix
        A diagonal (lazy) prefix when every component is diagonal, a dense one
        otherwise. Coherence is inherited from the components since the
        partial trace is linear.
    """
    tols = resolve_tolerances(tols)
    if len(states) == 0:
        msg = "mix_states needs at least one state"
        logger.error(msg)
        raise RuntimeError(msg)
    weights = _check_weights(weights, len(states), tols)
    depths = {state.depth for state in states}
    if len(depths) != 1:
        msg = f"Cannot mix prefixes of different depths {sorted(depths)}"
        logger.error(msg)
        raise RuntimeError(msg)
    depth = depths.pop()
    if len(states) == 1:
        return states[0]
    states = list(states)

    if all(state.is_diagonal for state in states):
        def recipe(k):
            indices = np.concatenate([state.level(k).indices for state in states])
            masses = np.concatenate([w * state.level(k).weights
                                     for w, state in zip(weights, states)])
            return DiagonalLevel(k, indices, masses, validate=False)

        return StatePrefix(StateKind.DIAGONAL, depth, recipe=recipe)

    levels = []
    for k in range(1, depth + 1):
        mat = sum(w * state.dense_level(k).mat for w, state in zip(weights, states))
        levels.append(DensityMatrix(mat, validate=False))
    return StatePrefix(StateKind.DENSE, depth, levels=levels, validate=False)
