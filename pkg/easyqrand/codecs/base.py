from easyqrand.base_element import BaseElement
import json
import logging
import numpy as np

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

logger = logging.getLogger(__name__)

# Dict to store all registered codecs (any class which extends
# BaseCodec is automatically registered as a codec)
AVAILABLE_CODECS = {}


class BaseCodec(BaseElement):
    """Baseclass for all EasyQRand JSON codecs.

    A codec converts one kind of library object to a JSON-compatible dict
    (`encode`) and back (`decode`). Floats are left to the json module,
    which writes the shortest repr that reads back to the same double.

    Parameters
    ----------
    tols : Tolerances or None
        Tolerances used to validate decoded objects.
    """

    category = "codec"
    registry = AVAILABLE_CODECS

    def __init_subclass__(cls, codec_name, **kwargs):
        """
        Catch any new codecs (all codecs must inherit from BaseCodec) and add
        them to the dict of available codecs.
        """
        super().__init_subclass__(**kwargs)

        cls.codec_name = codec_name

        cls.register(codec_name)

    def __init__(self, tols=None):
        self.tols = tols

    def encode(self, obj):
        raise NotImplementedError

    def decode(self, data):
        raise NotImplementedError

    def dumps(self, obj):
        return json.dumps(self.encode(obj), sort_keys=True)

    def loads(self, text):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            msg = f"Invalid {self.codec_name} JSON: {e}"
            logger.error(msg)
            raise RuntimeError(msg)
        return self.decode(data)

    def dump(self, obj, path):
        with open(path, 'w') as fd:
            fd.write(self.dumps(obj))

    def load(self, path):
        try:
            with open(path) as fd:
                text = fd.read()
        except OSError as e:
            msg = f"Unable to read {self.codec_name} file {path}: {e}"
            logger.critical(msg)
            raise RuntimeError(msg)
        return self.loads(text)

    def element_name(self):
        return self.codec_name


def require_keys(data, keys, what):
    """Raise RuntimeError unless the dict `data` has every key in `keys`."""
    if not isinstance(data, dict):
        msg = f"A {what} must be a JSON object, got {type(data).__name__}"
        logger.error(msg)
        raise RuntimeError(msg)
    missing = [key for key in keys if key not in data]
    if missing:
        msg = f"A {what} needs the keys {missing}"
        logger.error(msg)
        raise RuntimeError(msg)


def complex_to_pairs(arr):
    """Nested [re, im] lists for a complex array of any shape."""
    arr = np.asarray(arr, dtype=np.complex128)
    return np.stack([arr.real, arr.imag], axis=-1).tolist()


def pairs_to_complex(pairs, what):
    """Inverse of `complex_to_pairs`."""
    try:
        arr = np.asarray(pairs, dtype=np.float64)
    except (ValueError, TypeError):
        msg = f"{what} must be a nested list of [re, im] pairs"
        logger.error(msg)
        raise RuntimeError(msg)
    if arr.ndim == 0 or arr.shape[-1] != 2:
        msg = f"{what} must be a nested list of [re, im] pairs"
        logger.error(msg)
        raise RuntimeError(msg)
    return arr[..., 0] + 1j * arr[..., 1]


def codec(name, tols=None):
    """Instance of the registered codec `name`."""
    return BaseCodec.lookup(name)(tols=tols)
