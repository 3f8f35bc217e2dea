"""JSON form of state prefixes.

    {"kind": "dense" | "diagonal" | "classical" | "bernoulli",
     "depth": N, "levels": [...]}

Dense levels are 2^k x 2^k nested lists of [re, im] pairs, diagonal levels
{bitstring: weight} maps. A classical state also carries its path "x" and
a Bernoulli state its parameter "p"; the levels of a Bernoulli state have
full support and are not written.
"""
import logging

from easyqrand.constants import StateKind
from easyqrand.states import (DensityMatrix, make_bernoulli, make_classical, make_dense,
                              make_diagonal)
from .base import BaseCodec, require_keys, complex_to_pairs, pairs_to_complex

__license__ = "LGPL"

logger = logging.getLogger(__name__)


class StateCodec(BaseCodec, codec_name='state'):

    def encode(self, rho):
        out = {'kind': rho.kind.value, 'depth': rho.depth}
        if rho.kind == StateKind.BERNOULLI:
            out['p'] = rho.params['p']
            return out
        if rho.kind == StateKind.CLASSICAL:
            out['x'] = rho.params['x']
        if rho.is_diagonal:
            out['levels'] = [level.to_mapping() for level in rho.levels]
        else:
            out['levels'] = [complex_to_pairs(level.mat) for level in rho.levels]
        return out

    def decode(self, data):
        require_keys(data, ['kind', 'depth'], 'state')
        try:
            kind = StateKind(data['kind'])
        except ValueError:
            msg = f"Unknown state kind {data['kind']!r}"
            logger.error(msg)
            raise RuntimeError(msg)
        depth = int(data['depth'])
        if kind == StateKind.BERNOULLI:
            require_keys(data, ['p'], 'Bernoulli state')
            return make_bernoulli(data['p'], depth)
        if kind == StateKind.CLASSICAL:
            return make_classical(self._classical_path(data, depth), depth)
        require_keys(data, ['levels'], f'{kind.value} state')
        levels = data['levels']
        if len(levels) != depth:
            msg = f"State declares depth {depth} but has {len(levels)} levels"
            logger.error(msg)
            raise RuntimeError(msg)
        if kind == StateKind.DIAGONAL:
            return make_diagonal(levels, tols=self.tols)
        mats = [DensityMatrix(pairs_to_complex(level, f'Level {k}'), qubits=k, tols=self.tols)
                for k, level in enumerate(levels, start=1)]
        return make_dense(mats, tols=self.tols)

    @staticmethod
    def _classical_path(data, depth):
        """The path X, read from "x" or from the point mass of the deepest level."""
        if 'x' in data:
            return data['x']
        require_keys(data, ['levels'], 'classical state')
        top = data['levels'][depth - 1] if len(data['levels']) >= depth else {}
        points = [sigma for sigma, weight in top.items() if weight != 0.0]
        if len(points) != 1 or top[points[0]] != 1.0:
            msg = "The deepest level of a classical state must be a single unit mass"
            logger.error(msg)
            raise RuntimeError(msg)
        return points[0]
