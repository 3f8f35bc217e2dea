import numpy as np
import pytest
from fractions import Fraction
from easyqrand.constants import Discipline
from easyqrand.states import DensityMatrix
from easyqrand.qsigma import fails_qmlt, fails_solovay
from easyqrand.measures import measure_of
from easyqrand.sampling import (AVAILABLE_SAMPLERS, BaseSamplingElement, instance_rng,
                                ApproxInstanceSampler, PlantedSolovaySampler,
                                RandomQMLTSampler, MixtureSampler, RandomProjectorSampler,
                                PlantedDiagonalSampler, MarkovPairSampler, ChernoffSampler)
from easyqrand.sampling import generators, planted


@pytest.fixture
def approx_sampler():
    return ApproxInstanceSampler(max_qubits=3, max_subspaces=4, seed=3, max_num=2)


def test_instance_rng():
    first = instance_rng(7, 2).random(4)
    second = instance_rng(7, 2).random(4)
    assert(np.array_equal(first, second))
    assert(not np.array_equal(first, instance_rng(7, 3).random(4)))
    spawned = np.random.default_rng(np.random.SeedSequence(7).spawn(3)[2]).random(4)
    assert(np.array_equal(first, spawned))


def test_registry():
    for name in ['approx_instance', 'planted_solovay', 'random_qmlt', 'mixture',
                 'random_projector', 'planted_diagonal', 'markov_pair', 'chernoff']:
        assert(name in AVAILABLE_SAMPLERS)
        assert(issubclass(AVAILABLE_SAMPLERS[name], BaseSamplingElement))


def test_iteration(approx_sampler):
    samples = list(approx_sampler)
    assert(len(samples) == 2)
    assert([s['instance_id'] for s in samples] == ['approx_instance-0000',
                                                   'approx_instance-0001'])
    assert(approx_sampler.count == 2)
    with pytest.raises(StopIteration):
        next(approx_sampler)


def test_sample_is_order_independent(approx_sampler):
    samples = list(approx_sampler)
    again = ApproxInstanceSampler(max_qubits=3, max_subspaces=4, seed=3).sample(1)
    assert(np.array_equal(samples[1]['instance'].v, again['instance'].v))
    assert(np.array_equal(samples[1]['core'], again['core']))


def test_infinite_sampler():
    sampler = RandomProjectorSampler(seed=1)
    assert(not sampler.is_finite())
    with pytest.raises(RuntimeError):
        sampler.n_samples()
    assert(next(sampler)['instance_id'] == 'random_projector-0000')


def test_serialize(approx_sampler):
    next(approx_sampler)
    restored = BaseSamplingElement.deserialize(approx_sampler.serialize())
    assert(isinstance(restored, ApproxInstanceSampler))
    assert(restored.get_restart_dict() == approx_sampler.get_restart_dict())
    assert(restored.count == 1)
    with pytest.raises(RuntimeError):
        BaseSamplingElement.deserialize('{"element_name": "nope", "state": {}}')


def test_approx_instance_sampler(approx_sampler):
    sample = next(approx_sampler)
    inst = sample['instance']
    assert(2 <= inst.qubits <= 3)
    assert(inst.delta in (0.2, 0.4, 0.8))
    core = sample['core']
    assert(inst.contains(DensityMatrix(np.outer(core, core.conj()))))
    with pytest.raises(ValueError):
        ApproxInstanceSampler(max_qubits=1)


def test_planted_solovay_sampler():
    sample = PlantedSolovaySampler(depth=5, members=5, seed=11).sample(0)
    inst = sample['instance']
    assert(inst.delta == Fraction(1, 2))
    assert(inst.total_mass == pytest.approx(1.0 - 2.0 ** -5))
    assert(fails_solovay(sample['rho'], inst.as_test(), 0.5))


def test_random_qmlt_sampler():
    sample = RandomQMLTSampler(depth=4, diagonal=True, seed=5).sample(0)
    test = sample['test']
    assert(test.discipline == Discipline.QMLT)
    assert(len(test) == 4)
    assert(all(mass <= bound for mass, bound in zip(test.masses, test.mass_bounds)))
    assert(sample['rho'].depth == 4)
    assert(all(member.is_diagonal for member in test.members))


def test_mixture_sampler():
    sample = MixtureSampler(depth=3, components=3, seed=2).sample(4)
    assert(2 <= len(sample['states']) <= 3)
    assert(sum(sample['weights']) == pytest.approx(1.0))
    assert(sample['member'].depth == 3)


def test_random_projector_sampler():
    sample = RandomProjectorSampler(max_qubits=3, seed=9).sample(0)
    assert(0.05 <= sample['delta'] <= 0.95)
    sample['projector'].validate()


def test_planted_diagonal_sampler():
    sample = PlantedDiagonalSampler(depth=5, classical_depth=8, seed=4).sample(0)
    assert(fails_qmlt(sample['rho'], sample['qmlt'], 0.5))
    assert(sample['solovay'].fails(measure_of(sample['solovay_rho']), 0.5))
    assert(sample['schnorr'].discipline == Discipline.QSCHNORR)
    assert(len(sample['schnorr']) == 4)
    assert(len(sample['path']) == 5)


def test_markov_pair_sampler():
    sample = MarkovPairSampler(max_qubits=3, seed=8).sample(0)
    mean = sample['rho'].expectation(sample['a_mat'])
    assert(sample['mu'] < sample['m'] <= mean + 1e-9)
    assert(sample['B'] >= mean)


def test_chernoff_sampler():
    sample = ChernoffSampler(mass_levels=12, state_depth=8, seed=6).sample(0)
    assert(sample['p'] in (Fraction(1, 2), Fraction(1, 3)))
    assert(sample['delta'] in (Fraction(1, 10), Fraction(1, 5)))
    assert(sample['test'].n_max == 12)
    assert(sample['rho'].params['p'] == pytest.approx(0.2))


def test_generators():
    rng = np.random.default_rng(0)
    generators.random_density_matrix(rng, 3, rank=2).validate()
    state = generators.random_dense_state(rng, 3)
    state.validate()
    generators.random_diagonal_state(rng, 4).validate()
    prefix = generators.random_sigma_prefix(rng, 4)
    prefix.validate()
    assert(all(rank <= 2 ** k for k, rank in enumerate(prefix.ranks(), start=1)))
    assert(generators.qmlt_budgets(2, 4) == [0, 1, 2, 4])
    with pytest.raises(RuntimeError):
        generators.random_sigma_prefix(rng, 2, budgets=[-1, 4])


def test_planted_classical_solovay():
    rng = np.random.default_rng(1)
    test, rho, x = planted.planted_classical_solovay(rng, 8, 5)
    assert(len(test) == 5)
    assert(test.partial_sums[-1] < 1.0)
    assert(rho.level(8).weight(x) >= 0.9)
