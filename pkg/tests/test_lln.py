import math
import numpy as np
import pytest
from fractions import Fraction
from easyqrand.constants import Discipline
from easyqrand.states.prefix import make_tau, make_bernoulli, make_classical
from easyqrand.states import DensityMatrix, DiagonalLevel
from easyqrand.lln.observables import (LLNObservable, lln_average, averaging_diagonal,
                                       averaging_operator, reflect_observable)
from easyqrand.lln.chernoff import (binomial_mass, ChernoffTest, chernoff_test, mass_records,
                                    verify_lln_failure, report_records, eigen_threshold_record)
from easyqrand.lln.markov import (markov_bound, eigen_projector, trace_markov,
                                  trace_markov_record)
from easyqrand.sampling.generators import random_dense_state, random_diagonal_state


@pytest.fixture
def fair_test():
    return chernoff_test('1/2', 0, 1, '1/5', 1, 20)


def test_observable():
    obs = LLNObservable(3, 1)
    assert(list(obs.diagonal()) == [0, 0, 0, 0, 1, 1, 1, 1])
    assert(obs.expectation(make_classical('100', 3).level(3)) == 1.0)
    assert(obs.expectation(make_tau(3).level(3)) == pytest.approx(0.5))
    assert(np.allclose(np.diag(LLNObservable(2, 2, -1, 1).matrix()).real, [-1, 1, -1, 1]))
    with pytest.raises(RuntimeError):
        LLNObservable(3, 4)


def test_lln_average():
    assert(lln_average(make_tau(8), 8) == pytest.approx(0.5))
    assert(lln_average(make_classical('1' * 10, 10), 10) == 1.0)
    assert(lln_average(make_classical('0110', 4), 4) == 0.5)
    assert(lln_average(make_bernoulli(0.25, 6), 6) == pytest.approx(0.75))
    assert(lln_average(make_classical('01', 2), 2, a=-1, b=1) == 0.0)
    with pytest.raises(RuntimeError):
        lln_average(make_tau(3), 4)


def test_averaging_operator():
    assert(list(averaging_diagonal(2)) == [0.0, 0.5, 0.5, 1.0])
    assert(np.allclose(np.diag(averaging_operator(2)).real, averaging_diagonal(2)))
    assert(np.allclose(averaging_operator(3), np.diag(averaging_diagonal(3))))
    assert(reflect_observable(0, 1) == (0, -1))


def test_binomial_mass():
    assert(binomial_mass(2, [1], Fraction(1, 2)) == Fraction(1, 2))
    assert(binomial_mass(3, [0], '1/3') == Fraction(1, 27))
    assert(binomial_mass(4, [], 0.5) == 0)
    assert(binomial_mass(100, range(101), 0.3) == pytest.approx(1.0))
    assert(binomial_mass(100, [100], 1.0) == 0.0)
    assert(binomial_mass(100, [0], 1.0) == 1.0)


def test_chernoff_test(fair_test):
    assert(fair_test.M == Fraction(1, 2))
    assert(fair_test.threshold == pytest.approx(0.6))
    assert(fair_test.ones[20] == list(range(13, 21)))
    assert(fair_test.ones[5] == [4, 5])
    assert(float(fair_test.masses[20]) <= math.exp(-0.4))
    assert(fair_test.bound(20) == pytest.approx(math.exp(-0.4)))
    assert(fair_test.constant == pytest.approx(0.2))
    assert(list(fair_test.indices(2)) == [3])
    assert(fair_test.projector(1).bitstrings() == ['1'])
    assert(fair_test.projector(3).rank == 4)
    with pytest.raises(RuntimeError):
        fair_test.indices(21)


def test_chernoff_exceptions():
    with pytest.raises(ValueError):
        ChernoffTest('1/2', 1, 1, '1/5', 1, 4)
    with pytest.raises(ValueError):
        ChernoffTest(0, 0, 1, '1/5', 1, 4)
    with pytest.raises(ValueError):
        ChernoffTest('1/2', 0, 1, 0, 1, 4)
    with pytest.raises(ValueError):
        ChernoffTest('1/2', 0, 1, '1/5', 5, 4)
    with pytest.raises(ValueError):
        ChernoffTest('3/2', 0, 1, '1/5', 1, 4)


def test_mass_records(fair_test):
    records = mass_records(fair_test, instance_id='fair')
    assert(len(records) == 20)
    assert(all(records))
    assert(records[-1].rhs == pytest.approx(math.exp(-0.4)))


def test_as_quantum_test(fair_test):
    qt = fair_test.as_quantum_test(6)
    assert(qt.discipline == Discipline.PSCHNORR)
    assert(len(qt) == 6)
    assert(qt.p == 0.5)
    assert(qt.declared_limit == pytest.approx(fair_test.declared_limit()))
    assert(qt.partial_sums[-1] <= qt.declared_limit)


def test_state_mass(fair_test):
    assert(fair_test.state_mass(make_classical('11', 2).level(2)) == 1.0)
    assert(fair_test.state_mass(make_tau(2).level(2)) == pytest.approx(0.25))
    dense = DensityMatrix(np.eye(4) / 4)
    assert(fair_test.state_mass(dense) == pytest.approx(0.25))


def test_verify_lln_failure(fair_test):
    report = verify_lln_failure(make_classical('1' * 8, 8), fair_test)
    assert(list(report['n']) == list(range(1, 9)))
    assert(np.allclose(report['average'], 1.0))
    assert(np.allclose(report['bound'], 0.04))
    records = report_records(report, instance_id='ones')
    assert(len(records) == 8)
    assert(all(records))
    assert(verify_lln_failure(make_tau(8), fair_test).empty)


@pytest.mark.parametrize('n', [2, 4, 5])
def test_eigen_threshold_record(fair_test, n):
    assert(eigen_threshold_record(fair_test, n).passed)


def test_markov_bound():
    assert(markov_bound(1.0, 0.4, 0.5, {0.0: 0.5, 1.0: 0.5}) == pytest.approx(1.0 / 6.0))
    assert(markov_bound(1.0, 0.4, 0.5, [(0.0, 0.5), (1.0, 0.5)]) == pytest.approx(1.0 / 6.0))
    with pytest.raises(ValueError):
        markov_bound(1.0, 0.6, 0.5, {0.0: 0.5, 1.0: 0.5})
    with pytest.raises(RuntimeError):
        markov_bound(0.5, 0.4, 0.5, {0.0: 0.5, 1.0: 0.5})
    with pytest.raises(RuntimeError):
        markov_bound(1.0, 0.4, 0.6, {0.0: 0.5, 1.0: 0.5})
    with pytest.raises(RuntimeError):
        markov_bound(1.0, 0.4, 0.5, {0.0: 0.6, 1.0: 0.5})


def test_trace_markov():
    a_mat = np.diag([0.0, 1.0])
    f_mu, bound = trace_markov(a_mat, np.eye(2) / 2, 0.4, 0.5, 1.0)
    assert(np.allclose(f_mu.matrix(), np.diag([0.0, 1.0])))
    assert(bound == pytest.approx(1.0 / 6.0))
    assert(f_mu.expectation(DensityMatrix(np.eye(2) / 2)) == pytest.approx(0.5))
    record = trace_markov_record(a_mat, np.eye(2) / 2, 0.4, 0.5, 1.0, instance_id='two')
    assert(record.passed)
    assert(record.lhs == pytest.approx(0.5))


def test_trace_markov_preconditions():
    a_mat = np.diag([0.0, 1.0])
    with pytest.raises(RuntimeError):
        trace_markov(a_mat, np.eye(2) / 2, 0.4, 0.6, 1.0)
    with pytest.raises(RuntimeError):
        trace_markov(a_mat, np.eye(2) / 2, 0.4, 0.5, 0.8)
    with pytest.raises(RuntimeError):
        trace_markov(np.array([[0.0, 1.0], [0.0, 0.0]]), np.eye(2) / 2, 0.1, 0.2, 1.0)


def test_eigen_projector():
    a_mat = np.array([[0.5, 0.5], [0.5, 0.5]])
    assert(eigen_projector(a_mat, 0.5).rank == 1)
    assert(eigen_projector(a_mat, -0.5).rank == 2)


@pytest.mark.parametrize('n', [1, 3, 5, 8])
def test_lln_average_matches_trace(n):
    rng = np.random.default_rng(40 + n)
    states = [random_diagonal_state(rng, n, support=min(7, 2 ** n)), make_bernoulli('1/3', n)]
    if n <= 5:
        states.append(random_dense_state(rng, n))
    for rho in states:
        top = rho.level(n)
        mat = top.to_dense().mat if isinstance(top, DiagonalLevel) else top.mat
        for a, b in [(0.0, 1.0), (-1.0, 2.0)]:
            expected = np.trace(mat @ averaging_operator(n, a, b)).real
            assert(abs(lln_average(rho, n, a, b) - expected) <= 1e-12)


@pytest.mark.parametrize('a, b', [(0.0, 1.0), (-1.0, 2.0), (3.5, -0.25), (2.0, 2.0)])
@pytest.mark.parametrize('p', ['1/3', '3/4'])
def test_lln_average_bernoulli(p, a, b):
    q = float(Fraction(p))
    for n in [1, 4, 9]:
        assert(lln_average(make_bernoulli(p, n), n, a, b) ==
               pytest.approx(a * q + b * (1.0 - q), abs=1e-12))


def test_trace_markov_diagonal_reduces_to_markov_bound():
    rng = np.random.default_rng(11)
    for _ in range(10):
        vals = rng.uniform(0.0, 1.0, 8)
        w = rng.dirichlet(np.ones(8))
        ev = float(np.dot(vals, w))
        mu = ev / 2.0
        f_mu, bound = trace_markov(np.diag(vals), np.diag(w), mu, ev, 1.0)
        assert(bound == pytest.approx(markov_bound(1.0, mu, ev, list(zip(vals, w))), abs=1e-12))
        assert(f_mu.expectation(DensityMatrix(np.diag(w))) ==
               pytest.approx(float(w[vals >= mu].sum()), abs=1e-12))
