"""Sampling elements that draw verification instances."""
import logging
import numpy as np

from easyqrand.convert import as_fraction
from easyqrand.lln import chernoff_test
from easyqrand.states import make_bernoulli
from easyqrand.states import matrices
from .base import BaseSamplingElement
from . import generators, planted

__license__ = "LGPL"

logger = logging.getLogger(__name__)


class ApproxInstanceSampler(BaseSamplingElement, sampler_name='approx_instance'):
    """Planted ApproxInstances with dim <= 2^max_qubits and at most max_subspaces subspaces."""

    def __init__(self, max_qubits=6, max_subspaces=8, deltas=(0.2, 0.4, 0.8), max_m=4,
                 **kwargs):
        super().__init__(**kwargs)
        if max_qubits < 2:
            msg = f"max_qubits must be at least 2, got {max_qubits}"
            logger.error(msg)
            raise ValueError(msg)
        self.max_qubits = int(max_qubits)
        self.max_subspaces = int(max_subspaces)
        self.deltas = [float(d) for d in deltas]
        self.max_m = int(max_m)

    def sampler_params(self):
        return {'max_qubits': self.max_qubits, 'max_subspaces': self.max_subspaces,
                'deltas': self.deltas, 'max_m': self.max_m}

    def draw(self, rng):
        qubits = int(rng.integers(2, self.max_qubits + 1))
        m = int(rng.integers(1, self.max_m + 1))
        subspaces = int(rng.integers(m, max(m, self.max_subspaces) + 1))
        delta = float(rng.choice(self.deltas))
        inst, core = planted.planted_approx_instance(rng, qubits, subspaces, m, delta)
        return {'instance': inst, 'core': core, 'rng': rng}


class PlantedSolovaySampler(BaseSamplingElement, sampler_name='planted_solovay'):
    """Solovay instances with a planted failing product state."""

    def __init__(self, depth=8, members=8, delta='1/2', **kwargs):
        super().__init__(**kwargs)
        self.depth = int(depth)
        self.members = int(members)
        self.delta = str(as_fraction(delta))

    def sampler_params(self):
        return {'depth': self.depth, 'members': self.members, 'delta': self.delta}

    def draw(self, rng):
        inst, rho = planted.planted_solovay_instance(rng, self.depth, self.members,
                                                     as_fraction(self.delta))
        return {'instance': inst, 'rho': rho}


class RandomQMLTSampler(BaseSamplingElement, sampler_name='random_qmlt'):
    """Random qMLTs with one member per level, and a random dense state."""

    def __init__(self, depth=6, diagonal=False, **kwargs):
        super().__init__(**kwargs)
        self.depth = int(depth)
        self.diagonal = bool(diagonal)

    def sampler_params(self):
        return {'depth': self.depth, 'diagonal': self.diagonal}

    def draw(self, rng):
        test = generators.random_qmlt(rng, self.depth, self.depth, self.diagonal)
        return {'test': test, 'rho': generators.random_dense_state(rng, self.depth)}


class MixtureSampler(BaseSamplingElement, sampler_name='mixture'):
    """Random dense states with mixture weights and a random nested prefix."""

    def __init__(self, depth=4, components=3, **kwargs):
        super().__init__(**kwargs)
        self.depth = int(depth)
        self.components = int(components)

    def sampler_params(self):
        return {'depth': self.depth, 'components': self.components}

    def draw(self, rng):
        count = int(rng.integers(2, self.components + 1))
        states = [generators.random_dense_state(rng, self.depth) for _ in range(count)]
        weights = rng.dirichlet(np.ones(count))
        weights = list(weights / weights.sum())
        member = generators.random_sigma_prefix(rng, self.depth)
        return {'states': states, 'weights': weights, 'member': member}


class RandomProjectorSampler(BaseSamplingElement, sampler_name='random_projector'):
    """Random dense projections on up to max_qubits qubits with a threshold."""

    def __init__(self, max_qubits=6, **kwargs):
        super().__init__(**kwargs)
        self.max_qubits = int(max_qubits)

    def sampler_params(self):
        return {'max_qubits': self.max_qubits}

    def draw(self, rng):
        qubits = int(rng.integers(1, self.max_qubits + 1))
        proj = generators.random_projector(rng, qubits)
        delta = float(rng.uniform(0.05, 0.95))
        return {'projector': proj, 'delta': delta}


class PlantedDiagonalSampler(BaseSamplingElement, sampler_name='planted_diagonal'):
    """Planted diagonal instances for the quantum to classical conversions.

    Each draw holds a qMLT with a diagonal state failing it, a classical
    Solovay test with a diagonal state failing it, and a qSchnorr test.
    """

    def __init__(self, depth=6, classical_depth=12, delta=0.5, **kwargs):
        super().__init__(**kwargs)
        self.depth = int(depth)
        self.classical_depth = int(classical_depth)
        self.delta = float(delta)

    def sampler_params(self):
        return {'depth': self.depth, 'classical_depth': self.classical_depth,
                'delta': self.delta}

    def draw(self, rng):
        qmlt, rho, x = planted.planted_diagonal_qmlt(rng, self.depth, self.depth)
        solovay, solovay_rho, y = planted.planted_classical_solovay(
            rng, self.classical_depth, self.classical_depth - 1)
        schnorr = planted.planted_schnorr_test(rng, self.depth, self.depth - 1)
        path = ''.join(rng.choice(['0', '1'], size=self.depth))
        return {'qmlt': qmlt, 'rho': rho, 'x': x, 'solovay': solovay,
                'solovay_rho': solovay_rho, 'schnorr': schnorr, 'path': path,
                'delta': self.delta}


class MarkovPairSampler(BaseSamplingElement, sampler_name='markov_pair'):
    """Random (A, rho, mu, m, B) tuples satisfying the trace Markov preconditions.

    A is a random Hermitian matrix on up to max_qubits qubits, B its top
    eigenvalue, m = Tr(rho A) and mu a level strictly between the bottom of
    the spectrum and m. Draws where m sits at the top of the spectrum are
    redrawn.
    """

    def __init__(self, max_qubits=6, **kwargs):
        super().__init__(**kwargs)
        self.max_qubits = int(max_qubits)

    def sampler_params(self):
        return {'max_qubits': self.max_qubits}

    def draw(self, rng):
        while True:
            qubits = int(rng.integers(1, self.max_qubits + 1))
            dim = 2 ** qubits
            g = generators.complex_gaussian(rng, (dim, dim))
            a_mat = matrices.hermitian_part(g)
            rho = generators.random_density_matrix(rng, qubits, rank=int(rng.integers(1, 4)))
            vals = matrices.eigvalsh(a_mat)
            mean = rho.expectation(a_mat)
            if vals[-1] - mean > 1e-6:
                break
        mu = float(vals[0] + (mean - vals[0]) * rng.uniform(0.05, 0.95))
        m_lb = float(mu + (mean - mu) * rng.uniform(0.5, 1.0))
        return {'a_mat': a_mat, 'rho': rho, 'mu': mu, 'm': m_lb, 'B': float(vals[-1])}


class ChernoffSampler(BaseSamplingElement, sampler_name='chernoff'):
    """Chernoff tests for the standard (0, 1) observable and a deviating state.

    The test parameters are drawn from `ps` and `deltas` and the test is
    built for levels 1 .. mass_levels. The deviating state is the
    Bernoulli state whose qubits read 1 with probability `deviant_ones`.
    """

    def __init__(self, ps=('1/2', '1/3'), deltas=('1/10', '1/5'), mass_levels=40,
                 state_depth=16, deviant_ones='4/5', **kwargs):
        super().__init__(**kwargs)
        self.ps = [str(as_fraction(p)) for p in ps]
        self.deltas = [str(as_fraction(d)) for d in deltas]
        self.mass_levels = int(mass_levels)
        self.state_depth = int(state_depth)
        self.deviant_ones = str(as_fraction(deviant_ones))

    def sampler_params(self):
        return {'ps': self.ps, 'deltas': self.deltas, 'mass_levels': self.mass_levels,
                'state_depth': self.state_depth, 'deviant_ones': self.deviant_ones}

    def draw(self, rng):
        p = as_fraction(self.ps[int(rng.integers(0, len(self.ps)))])
        delta = as_fraction(self.deltas[int(rng.integers(0, len(self.deltas)))])
        test = chernoff_test(p, 0, 1, delta, 1, self.mass_levels)
        rho = make_bernoulli(1 - as_fraction(self.deviant_ones), self.state_depth)
        return {'test': test, 'rho': rho, 'p': p, 'delta': delta}
