"""Measures on Cantor space given by diagonal states.

A diagonal state rho induces the measure mu_rho with mu_rho([sigma]) equal to
the weight of sigma in rho_|sigma|. Additivity mu(sigma) = mu(sigma0) +
mu(sigma1) is the coherence of the state.
"""
import logging
import numpy as np

from easyqrand.constants import StateKind, resolve_tolerances
from easyqrand.states import DiagonalLevel, StatePrefix, partial_trace_last
from easyqrand.utils.helpers import bitstring_to_index, check_bitstring

__license__ = "LGPL"

logger = logging.getLogger(__name__)


class DyadicMeasure:
    """Masses mu(sigma) of all bitstrings of length at most `depth`.

    Parameters
    ----------
    state : StatePrefix
        A prefix of diagonal kind; level k supplies the masses of length k
        strings.
    """

    def __init__(self, state):
        if not state.is_diagonal:
            msg = f"Measures need a diagonal state, got a {state.kind.value} prefix"
            logger.error(msg)
            raise RuntimeError(msg)
        self.state = state
        self.depth = state.depth

    @classmethod
    def from_mapping(cls, mapping, depth=None, tols=None):
        """Measure from {bitstring: mass}.

        Only the masses of the deepest strings are used to build the state;
        the masses of shorter strings, when present, are checked against
        the sums of their extensions.
        """
        lengths = {len(sigma) for sigma in mapping}
        if depth is None:
            depth = max(lengths) if lengths else 0
        if depth < 1:
            msg = "A measure needs masses of strings of length at least 1"
            logger.error(msg)
            raise RuntimeError(msg)
        top = {sigma: mass for sigma, mass in mapping.items() if len(sigma) == depth}
        level = DiagonalLevel.from_mapping(depth, top, tols=tols)
        levels = [level]
        while levels[-1].qubits > 1:
            levels.append(partial_trace_last(levels[-1]))
        levels.reverse()
        measure = cls(StatePrefix(StateKind.DIAGONAL, depth, levels=levels, tols=tols))
        measure.check_masses(mapping, tols)
        return measure

    def check_masses(self, mapping, tols=None):
        tols = resolve_tolerances(tols)
        for sigma, mass in mapping.items():
            if abs(self.mass(sigma) - float(mass)) > tols.trace:
                msg = f"mass({sigma!r}) = {mass!r} is not the sum of its extensions"
                logger.error(msg)
                raise RuntimeError(msg)

    def mass(self, sigma):
        """mu([sigma]); the empty string has mass 1."""
        check_bitstring(sigma)
        if sigma == '':
            return 1.0
        if len(sigma) > self.depth:
            msg = f"String of length {len(sigma)} is deeper than the measure ({self.depth})"
            logger.error(msg)
            raise RuntimeError(msg)
        return self.state.level(len(sigma)).weight(sigma)

    def __call__(self, sigma):
        return self.mass(sigma)

    def mass_of_indices(self, n, indices):
        """Total mass of the length-n strings with the given basis indices."""
        return self.state.level(n).mass_on(indices)

    def mass_of_set(self, strings):
        """mu([S]) for a prefix-free set S of strings."""
        strings = list(strings)
        if not is_prefix_free(strings):
            msg = "mass_of_set needs a prefix-free set of strings"
            logger.error(msg)
            raise RuntimeError(msg)
        return float(sum(self.mass(sigma) for sigma in strings))

    def additivity_defect(self):
        """Largest |mu(sigma) - mu(sigma0) - mu(sigma1)| over |sigma| < depth."""
        worst = abs(self.state.level(1).total() - 1.0)
        for k in range(2, self.depth + 1):
            worst = max(worst, self.state.coherence_defect(k))
        return worst

    def validate(self, tols=None):
        tols = resolve_tolerances(tols)
        defect = self.additivity_defect()
        if defect > tols.trace:
            msg = f"Measure is not additive (defect {defect:.3e})"
            logger.error(msg)
            raise RuntimeError(msg)

    def to_mapping(self):
        """{bitstring: mass} over all strings of positive mass, the empty one included."""
        out = {'': 1.0}
        for k in range(1, self.depth + 1):
            out.update(self.state.level(k).to_mapping())
        return out

    def __repr__(self):
        return f"DyadicMeasure(depth={self.depth}, kind={self.state.kind.value})"


def measure_of(rho):
    """The measure mu_rho of a diagonal state prefix."""
    return DyadicMeasure(rho)


def is_prefix_free(strings):
    ordered = sorted(set(strings))
    return all(not b.startswith(a) for a, b in zip(ordered, ordered[1:]))


def cylinder_indices(strings, n):
    """Basis indices of the length-n extensions of a prefix-free set of strings."""
    parts = []
    for sigma in strings:
        if len(sigma) > n:
            msg = f"String {sigma!r} is longer than {n}"
            logger.error(msg)
            raise RuntimeError(msg)
        shift = n - len(sigma)
        parts.append((bitstring_to_index(sigma) << shift) + np.arange(2 ** shift))
    if not parts:
        return np.zeros(0, dtype=np.int64)
    return np.unique(np.concatenate(parts).astype(np.int64))
