"""JSON codecs for states, projections, tests and measures."""
from .base import BaseCodec, AVAILABLE_CODECS, codec
from .projector import ProjectorCodec, encode_projector, decode_projector
from .state import StateCodec
from .tests import QuantumTestCodec, ClassicalTestCodec, MeasureCodec

__license__ = "LGPL"
