import numpy as np
import pytest
from easyqrand.qsigma import Projector
from easyqrand.states import DensityMatrix
from easyqrand.approx.greedy import greedy_maximal_set, maximality_record
from easyqrand.approx.bounds import (ApproxInstance, approximate_density_class,
                                     trace_bound_record, transfer_record, lemma_review_check,
                                     norm_subadditivity_check)


@pytest.fixture
def single_subspace():
    return ApproxInstance([Projector.from_bitstrings(2, ['00'])], delta=0.5, m=1)


@pytest.fixture
def ket00():
    mat = np.zeros((4, 4))
    mat[0, 0] = 1.0
    return DensityMatrix(mat)


def test_greedy_zero_matrix():
    result = greedy_maximal_set(np.zeros((4, 4)), 0.25)
    assert(result.trace == 0)
    assert(result.accepted_pattern() == [False])
    assert(maximality_record(np.zeros((4, 4)), result))


def test_greedy_identity():
    result = greedy_maximal_set(np.eye(2), 0.5)
    assert(result.trace == 2)
    assert(result.residual == 0.0)
    assert(np.allclose(result.basis.conj().T @ result.basis, np.eye(2)))
    assert(maximality_record(np.eye(2), result))


def test_greedy_is_deterministic():
    first = greedy_maximal_set(np.eye(4), 0.5)
    second = greedy_maximal_set(np.eye(4), 0.5)
    assert(np.array_equal(first.basis, second.basis))


def test_greedy_threshold():
    v = np.diag([3.0, 1.0, 0.5, 0.0])
    result = greedy_maximal_set(v, 0.75)
    assert(result.trace == 2)
    assert(result.accepted_pattern() == [True, True, False])
    assert(result.eigen_log['theta'].iloc[-1] == pytest.approx(0.5))
    assert(maximality_record(v, result))


def test_greedy_seeds():
    v = np.diag([3.0, 1.0, 0.5, 0.0])
    seed = np.array([0.0, 1.0, 0.0, 0.0])
    result = greedy_maximal_set(v, 0.75, [seed])
    assert(result.seeds == 1)
    assert(result.added == 1)
    assert(np.allclose(result.basis[:, 0], seed))
    with pytest.raises(RuntimeError):
        greedy_maximal_set(v, 0.75, [np.array([0.0, 0.0, 1.0, 0.0])])
    with pytest.raises(RuntimeError):
        greedy_maximal_set(v, 0.75, [seed, seed])
    with pytest.raises(RuntimeError):
        greedy_maximal_set(v, 0.75, [np.array([1.0, 0.0])])


def test_greedy_needs_hermitian():
    with pytest.raises(RuntimeError):
        greedy_maximal_set(np.array([[1.0, 1.0], [0.0, 1.0]]), 0.5)


def test_write_eigen_log(tmp_path):
    result = greedy_maximal_set(np.eye(2), 0.5)
    result.write_eigen_log(tmp_path / 'eigen_log.csv')
    with open(tmp_path / 'eigen_log.csv') as fd:
        assert(fd.readline().strip() == 'iteration,theta,accepted')


def test_approx_instance_exceptions():
    proj = Projector.from_bitstrings(2, ['00'])
    with pytest.raises(RuntimeError):
        ApproxInstance([], 0.5, 1)
    with pytest.raises(RuntimeError):
        ApproxInstance([proj, Projector.identity(1)], 0.5, 1)
    with pytest.raises(ValueError):
        ApproxInstance([proj], 1.0, 1)
    with pytest.raises(ValueError):
        ApproxInstance([proj], 0.5, 0)
    with pytest.raises(RuntimeError):
        ApproxInstance([proj, proj], 0.5, 1, d=1)


def test_single_subspace(single_subspace, ket00):
    assert(single_subspace.lam == 0.125)
    assert(single_subspace.d == 1.0)
    assert(single_subspace.contains(ket00))
    result = approximate_density_class(single_subspace)
    assert(result.trace == 1)
    record = trace_bound_record(single_subspace, result, instance_id='one')
    assert(record.rhs == 8.0)
    assert(record.passed)
    assert(record.instance_id == 'one')
    assert(transfer_record(single_subspace, result, ket00))


def test_class_membership():
    subspaces = [Projector.from_bitstrings(2, ['00', '01']), Projector.from_bitstrings(2, ['00'])]
    inst = ApproxInstance(subspaces, 0.5, 2)
    tau = DensityMatrix(np.eye(4) / 4)
    assert(inst.capture_counts(tau) == 0)
    assert(not inst.contains(tau))
    result = approximate_density_class(inst)
    assert(trace_bound_record(inst, result))
    mixed = DensityMatrix(np.diag([0.9, 0.1, 0.0, 0.0]))
    assert(inst.contains(mixed))
    assert(transfer_record(inst, result, mixed))


def test_lemma_review_check(single_subspace, ket00):
    result = approximate_density_class(single_subspace)
    v = single_subspace.v
    records = lemma_review_check(v, 1, 0.5, v, ket00, result, instance_id='lemma')
    assert(len(records) == 6)
    assert(all(records))
    assert(records[0].instance_id == 'lemma')


def test_lemma_review_check_precondition(single_subspace):
    result = approximate_density_class(single_subspace)
    v = single_subspace.v
    records = lemma_review_check(v, 1, 0.5, v, np.eye(4) / 4, result)
    assert(len(records) == 4)
    assert(not records[-1].passed)


def test_norm_subadditivity():
    a = np.diag([1.0, -2.0])
    b = np.array([[0.0, 1.0], [1.0, 0.0]])
    record = norm_subadditivity_check(a, b)
    assert(record.passed)
    assert(record.rhs == pytest.approx(3.0))


def test_lemma_review_check_threshold(single_subspace, ket00):
    v = single_subspace.v
    other = greedy_maximal_set(v, 0.5, [])
    with pytest.raises(RuntimeError):
        lemma_review_check(v, 1, 0.5, v, ket00, other)


@pytest.mark.parametrize('fraction', [0.1, 0.4, 0.8])
def test_greedy_maximal_on_random_dense(fraction):
    rng = np.random.default_rng(int(fraction * 10))
    a = rng.standard_normal((16, 16)) + 1j * rng.standard_normal((16, 16))
    v = a @ a.conj().T
    lam = fraction * np.linalg.eigvalsh(v)[-1]
    result = greedy_maximal_set(v, lam)
    assert(0 < result.trace < 16)
    basis = result.basis
    assert(np.allclose(basis.conj().T @ basis, np.eye(result.trace), atol=1e-10))
    rayleigh = np.einsum('ij,ik,kj->j', basis.conj(), v, basis).real
    assert(np.all(rayleigh > lam))
    record = maximality_record(v, result)
    assert(record.passed)
    assert(record.lhs <= lam + 1e-8)
