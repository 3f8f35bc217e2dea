from easyqrand.base_element import BaseElement
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

# Dict to store all registered samplers (any class which extends
# BaseSamplingElement is automatically registered as a sampler)
AVAILABLE_SAMPLERS = {}


def instance_rng(seed, index):
    """Generator of instance `index` for a run seeded with `seed`.

    Equal to numpy.random.default_rng(SeedSequence(seed).spawn(n)[index]) for
    any n > index, so instances can be drawn in any order.
    """
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))


class BaseSamplingElement(BaseElement):
    """Baseclass for all EasyQRand sampling elements.

    A sampler yields one instance dictionary per call to `next`. Instance
    number i is drawn from its own generator, `instance_rng(seed, i)`, so a
    sampler restarted at count i reproduces the rest of the sequence.

    Parameters
    ----------
    seed : int
    max_num : int
        Number of instances; 0 or less makes the sampler infinite.
    count : int
        Number of instances already drawn.

    Attributes
    ----------
    sampler_name : str
        Name of the particular sampler.
    """

    category = "sampling"
    registry = AVAILABLE_SAMPLERS

    def __init_subclass__(cls, sampler_name, **kwargs):
        """
        Catch any new samplers (all samplers must inherit from
        BaseSamplingElement) and add them to the dict of available samplers.

        Parameters
        ----------
        sampler_name : str
            Name of the particular sampler.
        """

        super().__init_subclass__(**kwargs)

        cls.sampler_name = sampler_name

        cls.register(sampler_name)

    def __init__(self, seed=0, max_num=0, count=0):
        self.seed = int(seed)
        self.max_num = int(max_num)
        self.count = int(count)

    def element_name(self):
        return self.sampler_name

    def is_finite(self):
        return self.max_num > 0

    def n_samples(self):
        if self.is_finite():
            return self.max_num
        raise RuntimeError("You can't get the number of samples in an infinite sampler")

    def __iter__(self):
        return self

    def __next__(self):
        if self.is_finite() and self.count >= self.max_num:
            raise StopIteration
        sample = self.sample(self.count)
        self.count += 1
        return sample

    def sample(self, index):
        """Instance number `index`, independent of the iteration state."""
        sample = self.draw(instance_rng(self.seed, index))
        sample['instance_id'] = f"{self.sampler_name}-{index:04d}"
        return sample

    def draw(self, rng):
        """Build one instance dictionary from `rng`; implemented by subclasses."""
        raise NotImplementedError

    def sampler_params(self):
        """Subclass constructor arguments beyond seed, max_num and count."""
        return {}

    def get_restart_dict(self):
        state = {"seed": self.seed, "max_num": self.max_num, "count": self.count}
        state.update(self.sampler_params())
        return state

