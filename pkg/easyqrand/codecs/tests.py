"""JSON forms of quantum tests, classical tests and measures."""
import logging

from easyqrand.constants import (ClassicalDiscipline, Discipline, PREFIX_DISCIPLINES,
                                 resolve_tolerances)
from easyqrand.measures import ClassicalSigmaPrefix, ClassicalTestPrefix, DyadicMeasure
from easyqrand.qsigma import QSigmaPrefix, QuantumTest
from .base import BaseCodec, require_keys
from .projector import encode_projector, decode_projector

__license__ = "LGPL"

logger = logging.getLogger(__name__)


def _optional(data, out, keys):
    for key in keys:
        if data.get(key) is not None:
            out[key] = data[key]
    return out


class QuantumTestCodec(BaseCodec, codec_name='quantum_test'):
    """{"discipline", "members", "partial_sums"} plus the discipline certificate.

    Members of the prefix disciplines are {"depth", "levels"} objects with
    one projector per level; qSchnorr and pSchnorr members are projectors.
    """

    def encode(self, test):
        if test.discipline in PREFIX_DISCIPLINES:
            members = [{'depth': member.depth,
                        'levels': [encode_projector(proj) for proj in member.projs]}
                       for member in test.members]
        else:
            members = [encode_projector(proj) for proj in test.members]
        out = {'discipline': test.discipline.value, 'members': members,
               'partial_sums': test.partial_sums, 'first_index': test.first_index}
        return _optional({'mass_bounds': test.mass_bounds,
                          'declared_limit': test.declared_limit, 'p': test.p}, out,
                         ['mass_bounds', 'declared_limit', 'p'])

    def decode(self, data):
        require_keys(data, ['discipline', 'members'], 'quantum test')
        try:
            discipline = Discipline(data['discipline'])
        except ValueError:
            msg = f"Unknown discipline {data['discipline']!r}"
            logger.error(msg)
            raise RuntimeError(msg)
        if discipline in PREFIX_DISCIPLINES:
            members = []
            for member in data['members']:
                require_keys(member, ['levels'], 'test member')
                projs = [decode_projector(level, self.tols) for level in member['levels']]
                if int(member.get('depth', len(projs))) != len(projs):
                    msg = f"Member declares depth {member['depth']} but has {len(projs)} levels"
                    logger.error(msg)
                    raise RuntimeError(msg)
                members.append(QSigmaPrefix(projs, tols=self.tols))
        else:
            members = [decode_projector(member, self.tols) for member in data['members']]
        return QuantumTest(discipline, members, partial_sums=data.get('partial_sums'),
                           declared_limit=data.get('declared_limit'),
                           mass_bounds=data.get('mass_bounds'), p=data.get('p'),
                           first_index=data.get('first_index', 1), tols=self.tols)


class ClassicalTestCodec(BaseCodec, codec_name='classical_test'):
    """{"discipline", "members": [[strings per level]], "masses"}."""

    def encode(self, test):
        out = {'discipline': test.discipline.value,
               'members': [member.levels for member in test.members],
               'masses': test.masses, 'first_index': test.first_index}
        return _optional({'mass_bounds': test.mass_bounds,
                          'declared_limit': test.declared_limit}, out,
                         ['mass_bounds', 'declared_limit'])

    def decode(self, data):
        require_keys(data, ['discipline', 'members'], 'classical test')
        tols = resolve_tolerances(self.tols)
        try:
            discipline = ClassicalDiscipline(data['discipline'])
        except ValueError:
            msg = f"Unknown classical discipline {data['discipline']!r}"
            logger.error(msg)
            raise RuntimeError(msg)
        members = [ClassicalSigmaPrefix(levels) for levels in data['members']]
        test = ClassicalTestPrefix(discipline, members, mass_bounds=data.get('mass_bounds'),
                                   declared_limit=data.get('declared_limit'),
                                   first_index=data.get('first_index', 1), tols=tols)
        given = data.get('masses')
        if given is not None:
            if len(given) != len(members) or any(
                    abs(float(a) - b) > tols.mass for a, b in zip(given, test.masses)):
                msg = f"Declared masses {given} disagree with the members {test.masses}"
                logger.error(msg)
                raise RuntimeError(msg)
        return test


class MeasureCodec(BaseCodec, codec_name='measure'):
    """{bitstring: mass} over the strings of positive mass."""

    def encode(self, measure):
        return measure.to_mapping()

    def decode(self, data):
        if not isinstance(data, dict):
            msg = "A measure must be a JSON object of bitstring masses"
            logger.error(msg)
            raise RuntimeError(msg)
        return DyadicMeasure.from_mapping(data, tols=self.tols)
