import numpy as np
import pytest
from easyqrand.constants import ClassicalDiscipline, Discipline
from easyqrand.qsigma import Projector, QuantumTest, cylinder_prefix, from_projectors
from easyqrand.states.prefix import make_classical, make_tau, make_dense
from easyqrand.measures.dyadic import (DyadicMeasure, measure_of, is_prefix_free,
                                       cylinder_indices)
from easyqrand.measures.classical import (ClassicalSigmaPrefix, ClassicalTestPrefix,
                                          top_level_prefix)
from easyqrand.measures.conversions import (threshold_indices, threshold_basis_set,
                                            check_counting_bound, counting_record,
                                            qmlt_to_classical, classical_solovay_to_mlt,
                                            schnorr_to_classical, qmlt_transfer_records,
                                            solovay_transfer_records, classical_state_records)
from easyqrand.utils.helpers import all_bitstrings


def cylinder(sigma, depth):
    return ClassicalSigmaPrefix([[s for s in all_bitstrings(k) if s.startswith(sigma)]
                                 if k >= len(sigma) else [] for k in range(1, depth + 1)])


@pytest.fixture
def plus():
    return Projector.from_columns(np.array([1.0, 1.0]) / np.sqrt(2.0))


@pytest.fixture
def classical_solovay():
    return ClassicalTestPrefix(ClassicalDiscipline.SOLOVAY,
                               [cylinder('0' * k, 3) for k in range(1, 4)])


def test_threshold_basis_set(plus):
    assert(threshold_basis_set(3, Projector.from_bitstrings(3, ['000']), 0.5) == ['000'])
    assert(threshold_basis_set(1, plus, 0.25) == ['0', '1'])
    assert(threshold_basis_set(1, plus, 0.5) == [])
    assert(threshold_indices(Projector.identity(2), 1.0).size == 0)
    with pytest.raises(RuntimeError):
        threshold_basis_set(2, plus, 0.25)
    with pytest.raises(ValueError):
        threshold_indices(plus, 0.0)


def test_counting_bound():
    assert(counting_record(2, 1, 0.25).passed)
    assert(not counting_record(5, 1, 0.25).passed)
    check_counting_bound(0, 0, 0.5)
    with pytest.raises(RuntimeError):
        check_counting_bound(5, 1, 0.25)


def test_dyadic_measure():
    mapping = {'0': 0.25, '1': 0.75, '00': 0.25, '10': 0.5, '11': 0.25}
    measure = DyadicMeasure.from_mapping(mapping)
    assert(measure.depth == 2)
    assert(measure('') == 1.0)
    assert(measure.mass('1') == pytest.approx(0.75))
    assert(measure.mass('01') == 0.0)
    assert(measure.additivity_defect() == pytest.approx(0.0))
    assert(measure.to_mapping() == {'': 1.0, '0': 0.25, '1': 0.75, '00': 0.25, '10': 0.5,
                                    '11': 0.25})
    assert(measure.mass_of_set(['0', '11']) == pytest.approx(0.5))
    with pytest.raises(RuntimeError):
        measure.mass_of_set(['0', '01'])
    with pytest.raises(RuntimeError):
        measure.mass('000')


def test_dyadic_measure_exceptions():
    with pytest.raises(RuntimeError):
        DyadicMeasure.from_mapping({'00': 0.25, '01': 0.25, '10': 0.5, '0': 0.4})
    with pytest.raises(RuntimeError):
        DyadicMeasure.from_mapping({})
    with pytest.raises(RuntimeError):
        measure_of(make_dense([np.eye(2) / 2]))


def test_prefix_free():
    assert(is_prefix_free(['0', '10', '11']))
    assert(not is_prefix_free(['1', '10']))
    assert(list(cylinder_indices(['1'], 2)) == [2, 3])
    assert(list(cylinder_indices(['00', '1'], 2)) == [0, 2, 3])
    with pytest.raises(RuntimeError):
        cylinder_indices(['000'], 2)


def test_classical_sigma_prefix():
    prefix = ClassicalSigmaPrefix([['0'], ['00', '01', '11']])
    assert(prefix.level(2) == ['00', '01', '11'])
    assert(prefix.lebesgue_mass() == 0.75)
    assert(prefix.measure_value(measure_of(make_tau(2))) == pytest.approx(0.75))
    assert(prefix.projector(2).rank == 3)
    with pytest.raises(RuntimeError):
        ClassicalSigmaPrefix([['0'], ['00']])
    with pytest.raises(RuntimeError):
        ClassicalSigmaPrefix([['00']])
    top = top_level_prefix(2, ['01'])
    assert(top.levels == [[], ['01']])


def test_classical_test_prefix():
    with pytest.raises(RuntimeError):
        ClassicalTestPrefix(ClassicalDiscipline.MLT, [cylinder('', 2)])
    with pytest.raises(RuntimeError):
        ClassicalTestPrefix(ClassicalDiscipline.SCHNORR, [cylinder('0', 2)])
    mlt = ClassicalTestPrefix(ClassicalDiscipline.MLT, [cylinder('0', 2), cylinder('00', 2)])
    assert(mlt.mass_bounds == [0.5, 0.25])
    assert(mlt.fails(measure_of(make_classical('00', 2)), 0.5))
    assert(not mlt.fails(measure_of(make_tau(2)), 0.5))


def test_classical_solovay_fails(classical_solovay):
    assert(classical_solovay.partial_sums == [0.5, 0.75, 0.875])
    assert(classical_solovay.fails(measure_of(make_classical('000', 3)), 0.5))
    assert(not classical_solovay.fails(measure_of(make_classical('100', 3)), 0.5))


def test_qmlt_to_classical():
    qt = QuantumTest(Discipline.QMLT, [cylinder_prefix('0', 3), cylinder_prefix('00', 3)])
    ct = qmlt_to_classical(qt, 0.5)
    assert(ct.discipline == ClassicalDiscipline.MLT)
    assert(ct.members[0].levels == [['0'], ['00', '01'], ['000', '001', '010', '011']])
    assert(ct.mass_bounds == [4.0, 2.0])
    measure = measure_of(make_classical('000', 3))
    records = qmlt_transfer_records(measure, qt, ct, 0.5, instance_id='q')
    assert(len(records) == 7)
    assert(all(records))
    with pytest.raises(RuntimeError):
        qmlt_to_classical(QuantumTest(Discipline.QSOLOVAY, [cylinder_prefix('0', 3)]), 0.5)


def test_qmlt_to_classical_dense(plus):
    member = from_projectors([plus, plus.tensor_identity()])
    ct = qmlt_to_classical(QuantumTest(Discipline.QMLT, [member]), 0.5)
    assert(ct.members[0].levels == [['0', '1'], ['00', '01', '10', '11']])


def test_classical_solovay_to_mlt(classical_solovay):
    mlt = classical_solovay_to_mlt(classical_solovay, 0.5, 2)
    assert(mlt.members[0].levels == [['0'], ['00', '01'], ['000', '001', '010', '011']])
    assert(mlt.members[1].levels == [[], ['00'], ['000', '001']])
    assert(mlt.mass_bounds == [2.0, 1.0])
    measure = measure_of(make_classical('000', 3))
    records = solovay_transfer_records(measure, classical_solovay, mlt, 0.5)
    assert(len(records) == 1)
    assert(all(records))


def test_classical_solovay_to_mlt_exceptions(classical_solovay):
    heavy = ClassicalTestPrefix(ClassicalDiscipline.SOLOVAY, [cylinder('0', 2), cylinder('1', 2)])
    with pytest.raises(RuntimeError):
        classical_solovay_to_mlt(heavy, 0.5, 2)
    with pytest.raises(ValueError):
        classical_solovay_to_mlt(classical_solovay, 0.0, 2)
    mlt = ClassicalTestPrefix(ClassicalDiscipline.MLT, [cylinder('0', 2)])
    with pytest.raises(RuntimeError):
        classical_solovay_to_mlt(mlt, 0.5, 2)


def test_schnorr_to_classical():
    qt = QuantumTest(Discipline.QSCHNORR, [Projector.from_bitstrings(1, ['0']),
                                           Projector.from_bitstrings(2, ['00'])],
                     declared_limit=1.0)
    ct = schnorr_to_classical(qt, 0.5)
    assert(ct.discipline == ClassicalDiscipline.SCHNORR)
    assert(ct.members[0].level(1) == ['0'])
    assert(ct.members[1].level(2) == ['00'])
    assert(ct.mass_bounds == [1.0, 0.5])
    assert(ct.declared_limit == 2.0)
    records = classical_state_records('011', qt, ct, 0.5)
    assert(len(records) == 2)
    assert(all(records))
    with pytest.raises(RuntimeError):
        schnorr_to_classical(QuantumTest(Discipline.STRONG_SOLOVAY, list(qt.members)), 0.5)
