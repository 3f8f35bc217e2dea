"""Registered elements: samplers, codecs and suites.

Every concrete element class is entered, under its name, in the registry
of its category when the class is defined. An element serializes to its
name and restart dict, which is enough to rebuild it through the registry,
so a suite run or a sampler stream can be reproduced from a JSON line.
"""
import json
import logging

from easyqrand.constants import ELEMENT_VERSION

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


class BaseElement(object):
    """Baseclass for all EasyQRand elements (samplers, suites, codecs).

    Category baseclasses set `category` and `registry`, and call `register`
    from their `__init_subclass__`.

    Attributes
    ----------
    category : str
        'sampling', 'codec' or 'suite'.
    registry : dict
        Name to class map shared by every element of the category.
    """

    category = None
    registry = None

    @classmethod
    def register(cls, name):
        if name in cls.registry and cls.registry[name] is not cls:
            logger.warning(f"{cls.category} element '{name}' redefined by {cls.__name__}")
        cls.registry[name] = cls

    @classmethod
    def lookup(cls, name):
        """Class registered as `name` in the category of `cls`."""
        if name not in cls.registry:
            msg = f"Unknown {cls.category} element '{name}', choose from {sorted(cls.registry)}"
            logger.error(msg)
            raise RuntimeError(msg)
        return cls.registry[name]

    def element_name(self):
        raise NotImplementedError

    def element_version(self):
        return ELEMENT_VERSION

    def element_category(self):
        return self.category

    def get_restart_dict(self):
        """Constructor arguments that rebuild this element."""
        return {}

    @classmethod
    def restore(cls, state):
        """Element rebuilt from the output of `get_restart_dict`."""
        return cls(**state)

    def serialize(self):
        return json.dumps({
            "element_name": self.element_name(),
            "element_version": self.element_version(),
            "element_category": self.element_category(),
            "state": self.get_restart_dict()
        }, sort_keys=True)

    @classmethod
    def deserialize(cls, serialized):
        """Rebuild an element of this category from the output of `serialize`."""
        try:
            inputs = json.loads(serialized)
        except json.JSONDecodeError as e:
            msg = f"Invalid serialized {cls.category} element: {e}"
            logger.error(msg)
            raise RuntimeError(msg)
        if not isinstance(inputs, dict) or "element_name" not in inputs:
            msg = f"Serialized {cls.category} element needs an 'element_name'"
            logger.error(msg)
            raise RuntimeError(msg)
        category = inputs.get("element_category", cls.category)
        if category != cls.category:
            msg = f"Cannot restore a {category} element as a {cls.category} element"
            logger.error(msg)
            raise RuntimeError(msg)
        version = inputs.get("element_version", ELEMENT_VERSION)
        if version != ELEMENT_VERSION:
            logger.warning(f"Restoring a version {version} element with version "
                           f"{ELEMENT_VERSION}")
        return cls.lookup(inputs["element_name"]).restore(inputs.get("state") or {})
