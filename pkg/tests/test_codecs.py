import json
import numpy as np
import pytest
from easyqrand.constants import ClassicalDiscipline, Discipline, StateKind
from easyqrand.states import DensityMatrix
from easyqrand.states.prefix import make_bernoulli, make_classical, make_diagonal, from_top_level
from easyqrand.qsigma import Projector, QuantumTest, cylinder_prefix
from easyqrand.measures import ClassicalSigmaPrefix, ClassicalTestPrefix, DyadicMeasure
from easyqrand.codecs import (AVAILABLE_CODECS, codec, StateCodec, ProjectorCodec,
                              QuantumTestCodec, ClassicalTestCodec, MeasureCodec,
                              encode_projector, decode_projector)
from easyqrand.codecs.base import BaseCodec, complex_to_pairs, pairs_to_complex, require_keys


@pytest.fixture
def bell_state():
    vec = np.array([1.0, 0.0, 0.0, 1.0]) / np.sqrt(2.0)
    return from_top_level(DensityMatrix(np.outer(vec, vec)))


def test_registry():
    for name in ['state', 'projector', 'quantum_test', 'classical_test', 'measure']:
        assert(name in AVAILABLE_CODECS)
    assert(isinstance(codec('state'), StateCodec))
    assert(codec('measure').element_category() == 'codec')
    with pytest.raises(RuntimeError):
        codec('spreadsheet')


def test_pairs():
    arr = np.array([[1 + 2j, 0.5j]])
    assert(complex_to_pairs(arr) == [[[1.0, 2.0], [0.0, 0.5]]])
    assert(np.array_equal(pairs_to_complex(complex_to_pairs(arr), 'arr'), arr))
    with pytest.raises(RuntimeError):
        pairs_to_complex([[1.0, 2.0, 3.0]], 'arr')
    with pytest.raises(RuntimeError):
        pairs_to_complex('abc', 'arr')


def test_require_keys():
    require_keys({'a': 1}, ['a'], 'thing')
    with pytest.raises(RuntimeError):
        require_keys({'a': 1}, ['a', 'b'], 'thing')
    with pytest.raises(RuntimeError):
        require_keys([1], ['a'], 'thing')


def test_encode_bernoulli():
    assert(StateCodec().encode(make_bernoulli(0.25, 10)) ==
           {'kind': 'bernoulli', 'depth': 10, 'p': 0.25})
    state = StateCodec().loads('{"kind": "bernoulli", "depth": 3, "p": 0.25}')
    assert(state.level(3).weight('000') == pytest.approx(0.25 ** 3))


def test_encode_classical():
    data = StateCodec().encode(make_classical('0110', 3))
    assert(data['x'] == '011')
    assert(data['levels'] == [{'0': 1.0}, {'01': 1.0}, {'011': 1.0}])
    del data['x']
    state = StateCodec().decode(data)
    assert(state.kind == StateKind.CLASSICAL)
    assert(state.params['x'] == '011')
    with pytest.raises(RuntimeError):
        StateCodec().decode({'kind': 'classical', 'depth': 1, 'levels': [{'0': 0.5, '1': 0.5}]})


def test_diagonal_state():
    state = make_diagonal([{'0': 0.5, '1': 0.5}, {'00': 0.5, '11': 0.5}])
    text = StateCodec().dumps(state)
    decoded = StateCodec().loads(text)
    assert(decoded.kind == StateKind.DIAGONAL)
    assert(decoded.level(2).to_mapping() == {'00': 0.5, '11': 0.5})


def test_dense_state(bell_state, tmp_path):
    path = tmp_path / 'bell.json'
    StateCodec().dump(bell_state, path)
    decoded = StateCodec().load(path)
    assert(decoded.kind == StateKind.DENSE)
    assert(np.array_equal(decoded.level(2).mat, bell_state.level(2).mat))
    with open(path) as fd:
        assert(json.load(fd)['levels'][1][0][3] == pytest.approx([0.5, 0.0]))


def test_state_decode_errors():
    with pytest.raises(RuntimeError):
        StateCodec().decode({'kind': 'quantum', 'depth': 1})
    with pytest.raises(RuntimeError):
        StateCodec().decode({'kind': 'diagonal', 'depth': 2, 'levels': [{'0': 1.0}]})
    with pytest.raises(RuntimeError):
        StateCodec().decode({'kind': 'dense', 'depth': 1, 'levels': [[[[2.0, 0.0], [0.0, 0.0]],
                                                                      [[0.0, 0.0], [0.0, 0.0]]]]})
    with pytest.raises(RuntimeError):
        StateCodec().loads('{"kind": ')
    with pytest.raises(RuntimeError):
        StateCodec().load('/nonexistent/state.json')


def test_projector_codec():
    diag = Projector.from_bitstrings(2, ['01', '10'])
    assert(encode_projector(diag) == {'qubits': 2, 'support': ['01', '10']})
    plus = Projector.from_columns(np.array([1.0, 1.0]) / np.sqrt(2.0))
    data = ProjectorCodec().encode(plus)
    assert(len(data['columns']) == 1)
    decoded = ProjectorCodec().decode(data)
    assert(np.allclose(decoded.matrix(), plus.matrix()))
    assert(decode_projector({'qubits': 2, 'columns': []}).rank == 0)
    with pytest.raises(RuntimeError):
        decode_projector({'qubits': 2})
    with pytest.raises(RuntimeError):
        decode_projector({'qubits': 2, 'columns': [[[1.0, 0.0], [0.0, 0.0]]]})


def test_quantum_test_codec():
    test = QuantumTest(Discipline.QMLT, [cylinder_prefix('0', 2), cylinder_prefix('00', 2)])
    data = QuantumTestCodec().encode(test)
    assert(data['discipline'] == 'qMLT')
    assert(data['mass_bounds'] == [0.5, 0.25])
    assert('declared_limit' not in data)
    assert(data['members'][0]['levels'][1] == {'qubits': 2, 'support': ['00', '01']})
    decoded = QuantumTestCodec().loads(json.dumps(data))
    assert(decoded.masses == test.masses)
    data['members'][0]['depth'] = 3
    with pytest.raises(RuntimeError):
        QuantumTestCodec().decode(data)
    with pytest.raises(RuntimeError):
        QuantumTestCodec().decode({'discipline': 'qQuick', 'members': []})


def test_schnorr_codec():
    test = QuantumTest(Discipline.PSCHNORR, [Projector.from_bitstrings(1, ['1'])], p=0.25,
                       declared_limit=1.0)
    data = QuantumTestCodec().encode(test)
    assert(data['p'] == 0.25)
    assert(data['partial_sums'] == [0.75])
    decoded = QuantumTestCodec().decode(data)
    assert(decoded.discipline == Discipline.PSCHNORR)
    assert(decoded.declared_limit == 1.0)
    data['partial_sums'] = [0.5]
    with pytest.raises(RuntimeError):
        QuantumTestCodec().decode(data)


def test_classical_test_codec():
    member = ClassicalSigmaPrefix([['0'], ['00', '01']])
    test = ClassicalTestPrefix(ClassicalDiscipline.MLT, [member])
    data = ClassicalTestCodec().encode(test)
    assert(data['members'] == [[['0'], ['00', '01']]])
    assert(data['masses'] == [0.5])
    decoded = ClassicalTestCodec().decode(data)
    assert(decoded.members[0].levels == member.levels)
    data['masses'] = [0.25]
    with pytest.raises(RuntimeError):
        ClassicalTestCodec().decode(data)
    with pytest.raises(RuntimeError):
        ClassicalTestCodec().decode({'discipline': 'Kurtz', 'members': []})


def test_measure_codec():
    measure = DyadicMeasure.from_mapping({'00': 0.25, '10': 0.75})
    data = MeasureCodec().encode(measure)
    assert(data == {'': 1.0, '0': 0.25, '1': 0.75, '00': 0.25, '10': 0.75})
    assert(MeasureCodec().decode(data).mass('1') == 0.75)
    with pytest.raises(RuntimeError):
        MeasureCodec().decode([0.5, 0.5])


def test_codec_element_roundtrip():
    restored = BaseCodec.deserialize(codec('quantum_test').serialize())
    assert(isinstance(restored, QuantumTestCodec))
    with pytest.raises(RuntimeError):
        BaseCodec.deserialize(json.dumps({'element_name': 'state', 'element_category': 'suite'}))
