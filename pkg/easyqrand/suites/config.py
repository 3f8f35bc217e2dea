"""Run configuration of the verification suites."""
import json
import logging
import cerberus
import numpy

from easyqrand.constants import (DEFAULT_TOLERANCES, DIAGONAL_SUITES, MAX_DENSE_QUBITS,
                                 MAX_DIAGONAL_QUBITS, Suite, Tolerances)

__license__ = "LGPL"

logger = logging.getLogger(__name__)

REPORT_FORMATS = ('json', 'csv', 'both')


class RunConfigValidator(cerberus.Validator):
    """Validator that also accepts numpy integers as 'integer'."""

    types_mapping = cerberus.Validator.types_mapping.copy()
    types_mapping['integer'] = cerberus.TypeDefinition('integer', (int, numpy.integer), (bool,))


SCHEMA = {
    'seed': {'type': 'integer', 'min': 0, 'max': 2 ** 64 - 1, 'default': 0},
    'n_max': {'type': 'integer', 'min': 2, 'max': MAX_DIAGONAL_QUBITS, 'default': 6},
    'tolerances': {'type': 'dict', 'default': {},
                   'keysrules': {'type': 'string', 'allowed': list(Tolerances.DEFAULTS)},
                   'valuesrules': {'type': 'number', 'min': 0.0}},
    'suite': {'type': 'string', 'allowed': [suite.value for suite in Suite], 'default': 'all'},
    'output_dir': {'type': 'string', 'empty': False, 'default': '.'},
    'instance_count': {'type': 'integer', 'min': 1, 'default': 1},
    'delta': {'type': 'number', 'min': 0.0, 'max': 1.0, 'default': 0.5},
    'format': {'type': 'string', 'allowed': list(REPORT_FORMATS), 'default': 'both'},
    'workers': {'type': 'integer', 'min': 1, 'default': 1},
    'artifacts': {'type': 'boolean', 'default': False},
}


class RunConfig:
    """Validated settings of one suite run.

    Parameters
    ----------
    **settings
        Any of the keys of `SCHEMA`; missing keys take their defaults.

    Attributes
    ----------
    tols : Tolerances
        The defaults with the `tolerances` overrides applied.
    """

    def __init__(self, **settings):
        validator = RunConfigValidator(SCHEMA)
        if not validator.validate(settings):
            msg = (f"Error when verifying the run configuration:\n"
                   f"{settings}\n"
                   f"Identified errors were:\n"
                   f"{validator.errors}\n")
            logger.error(msg)
            raise RuntimeError(msg)
        values = validator.document
        self.seed = int(values['seed'])
        self.n_max = int(values['n_max'])
        self.tolerances = {key: float(val) for key, val in values['tolerances'].items()}
        self.suite = Suite(values['suite'])
        self.output_dir = values['output_dir']
        self.instance_count = int(values['instance_count'])
        self.delta = float(values['delta'])
        self.format = values['format']
        self.workers = int(values['workers'])
        self.artifacts = bool(values['artifacts'])
        if not 0.0 < self.delta < 1.0:
            msg = f"delta must lie strictly between 0 and 1, got {self.delta}"
            logger.error(msg)
            raise RuntimeError(msg)
        cap = MAX_DIAGONAL_QUBITS if self.suite in DIAGONAL_SUITES else MAX_DENSE_QUBITS
        if self.n_max > cap:
            msg = f"n_max = {self.n_max} exceeds the cap {cap} of the {self.suite.value} suite"
            logger.error(msg)
            raise RuntimeError(msg)
        self.tols = DEFAULT_TOLERANCES.with_overrides(**self.tolerances)

    @classmethod
    def from_file(cls, path, **overrides):
        """Config from a JSON file; keyword overrides that are not None win.

        A `tolerances` override is merged into the tolerances of the file.
        """
        settings = read_config_file(path)
        overrides = {key: val for key, val in overrides.items() if val is not None}
        if 'tolerances' in overrides:
            tolerances = settings.get('tolerances')
            tolerances = dict(tolerances) if isinstance(tolerances, dict) else {}
            tolerances.update(overrides.pop('tolerances'))
            overrides['tolerances'] = tolerances
        settings.update(overrides)
        return cls(**settings)

    def with_suite(self, suite):
        """Copy of this config running `suite` instead."""
        settings = self.to_dict()
        settings['suite'] = Suite(suite).value
        return RunConfig(**settings)

    def to_dict(self):
        return {'seed': self.seed, 'n_max': self.n_max, 'tolerances': dict(self.tolerances),
                'suite': self.suite.value, 'output_dir': self.output_dir,
                'instance_count': self.instance_count, 'delta': self.delta,
                'format': self.format, 'workers': self.workers, 'artifacts': self.artifacts}

    def __repr__(self):
        return f"RunConfig({self.to_dict()})"


def read_config_file(path):
    """Settings dict stored in the JSON file `path`."""
    try:
        with open(path) as fd:
            settings = json.load(fd)
    except (OSError, json.JSONDecodeError) as e:
        msg = f"Unable to read config file {path}: {e}"
        logger.error(msg)
        raise RuntimeError(msg)
    if not isinstance(settings, dict):
        msg = f"Config file {path} must hold a JSON object"
        logger.error(msg)
        raise RuntimeError(msg)
    return settings
