"""Constants and Enums to set defaults and constrain selections


Attributes
----------

DEFAULT_TOLERANCES : Tolerances
    Tolerances used by every numerical operation unless a `tols` object is
    passed explicitly.
MAX_DENSE_QUBITS : int
    Largest level held as a dense 2^n x 2^n matrix.
ELEMENT_VERSION : str
    Format version written into serialized elements.
MAX_DIAGONAL_QUBITS : int
    Largest level held as a sparse diagonal weight map.
"""
from enum import Enum, IntEnum

__copyright__ = """

    Copyright 2021 EasyQRand developers

    This file is part of EasyQRand

    EasyQRand is free software: you can redistribute it and/or modify
    it under the terms of the Lesser GNU General Public License as published by
    the Free Software Foundation, either version 3 of the License, or
    (at your option) any later version.

    EasyQRand is distributed in the hope that it will be useful,
    but WITHOUT ANY WARRANTY; without even the implied warranty of
    MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
    Lesser GNU General Public License for more details.

    You should have received a copy of the Lesser GNU General Public License
    along with this program.  If not, see <https://www.gnu.org/licenses/>.

"""
__license__ = "LGPL"

MAX_DENSE_QUBITS = 12
MAX_DIAGONAL_QUBITS = 24

ELEMENT_VERSION = "0.1"


class StateKind(Enum):
    """
    Storage kinds of a StatePrefix
    """

    DENSE = 'dense'
    DIAGONAL = 'diagonal'
    CLASSICAL = 'classical'
    BERNOULLI = 'bernoulli'


class Discipline(Enum):
    """
    Quantum test disciplines
    """

    QMLT = 'qMLT'
    QSOLOVAY = 'qSolovay'
    STRONG_SOLOVAY = 'strongSolovay'
    QSCHNORR = 'qSchnorr'
    PSCHNORR = 'pSchnorr'


# Disciplines whose members are whole q-Sigma_1 prefixes rather than
# single projections.
PREFIX_DISCIPLINES = (Discipline.QMLT, Discipline.QSOLOVAY)


class ClassicalDiscipline(Enum):
    """
    Classical test disciplines on Cantor space
    """

    MLT = 'MLT'
    SOLOVAY = 'Solovay'
    SCHNORR = 'Schnorr'


class Suite(Enum):
    """
    Verification suites runnable from the command line
    """

    APPROX = 'approx'
    CONVERT = 'convert'
    MEASURES = 'measures'
    LLN = 'lln'
    ALL = 'all'


# Suites that only build diagonal objects may go deeper than the dense cap.
DIAGONAL_SUITES = (Suite.MEASURES, Suite.LLN)


class ExitCode(IntEnum):
    """
    Exit status of the command line front-end
    """

    PASS = 0
    CHECK_FAILURE = 1
    USAGE_ERROR = 2


class Tolerances:
    """Named numerical tolerances.

    Parameters
    ----------
    **overrides
        Any of the names in `Tolerances.DEFAULTS`, mapped to a float.

    Attributes
    ----------
    herm : float
        Hermiticity, max-entry deviation of A from A^dagger.
    psd : float
        Smallest admissible (negative) eigenvalue of a PSD matrix.
    trace : float
        Deviation of a trace (or total weight) from its target.
    coh : float
        Coherence of consecutive levels under the partial trace.
    proj : float
        Idempotence of a projector, max-entry of P^2 - P.
    nest : float
        Range inclusion of consecutive levels of a q-Sigma_1 prefix.
    mass : float
        Slack on declared mass bounds of tests.
    eps_max : float
        Band on the strict `theta > lambda` test in greedy extension.
    span_cutoff : float
        Eigenvalue cutoff when extracting the span of a union of ranges.
    check : float
        Slack on the inequalities verified by suites.
    """

    DEFAULTS = {
        'herm': 1e-9,
        'psd': 1e-9,
        'trace': 1e-10,
        'coh': 1e-9,
        'proj': 1e-9,
        'nest': 1e-8,
        'mass': 1e-9,
        'eps_max': 1e-10,
        'span_cutoff': 1e-9,
        'check': 1e-7,
    }

    def __init__(self, **overrides):
        unknown = set(overrides) - set(self.DEFAULTS)
        if unknown:
            raise RuntimeError(f"Unknown tolerance names: {sorted(unknown)}")
        values = dict(self.DEFAULTS)
        values.update({key: float(val) for key, val in overrides.items()})
        for key, val in values.items():
            if val < 0.0:
                raise ValueError(f"Tolerance '{key}' must be nonnegative, got {val}")
            setattr(self, key, val)

    def as_dict(self):
        return {key: getattr(self, key) for key in self.DEFAULTS}

    def with_overrides(self, **overrides):
        values = self.as_dict()
        values.update(overrides)
        return Tolerances(**values)

    def __repr__(self):
        return f"Tolerances({self.as_dict()})"


DEFAULT_TOLERANCES = Tolerances()


def resolve_tolerances(tols):
    """Return `tols`, or the module defaults when it is None."""
    return DEFAULT_TOLERANCES if tols is None else tols
