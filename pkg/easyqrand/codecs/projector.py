"""JSON form of projections.

Dense projections are stored as their orthonormal columns, a list of rank
vectors of length 2^n whose entries are [re, im] pairs. Diagonal ones are
stored as the bitstrings of their support.
"""
import logging
import numpy as np

from easyqrand.qsigma import Projector
from .base import BaseCodec, require_keys, complex_to_pairs, pairs_to_complex

__license__ = "LGPL"

logger = logging.getLogger(__name__)


def encode_projector(proj):
    if proj.is_diagonal:
        return {'qubits': proj.qubits, 'support': proj.bitstrings()}
    return {'qubits': proj.qubits, 'columns': complex_to_pairs(proj.columns().T)}


def decode_projector(data, tols=None, validate=True):
    require_keys(data, ['qubits'], 'projector')
    qubits = int(data['qubits'])
    if 'support' in data:
        return Projector.from_bitstrings(qubits, data['support'])
    if 'columns' not in data:
        msg = "A projector needs 'columns' or 'support'"
        logger.error(msg)
        raise RuntimeError(msg)
    if len(data['columns']) == 0:
        return Projector.zero(qubits)
    columns = pairs_to_complex(data['columns'], 'Projector columns')
    if columns.ndim != 2 or columns.shape[1] != 2 ** qubits:
        msg = f"Projector columns must have length {2 ** qubits}, got shape {columns.shape}"
        logger.error(msg)
        raise RuntimeError(msg)
    return Projector.from_columns(columns.T, qubits=qubits, tols=tols, validate=validate)


class ProjectorCodec(BaseCodec, codec_name='projector'):

    def encode(self, proj):
        return encode_projector(proj)

    def decode(self, data):
        return decode_projector(data, self.tols)
