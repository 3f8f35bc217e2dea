"""Seeded instance samplers.

Summary
-------
Samplers are elements registered in AVAILABLE_SAMPLERS. Each yields instance
dictionaries (states, projections, tests and planted instances) drawn from
a per-instance generator, so any instance can be rebuilt from the seed and
its index alone.
"""
from .base import BaseSamplingElement, AVAILABLE_SAMPLERS, instance_rng
from .instances import (ApproxInstanceSampler, PlantedSolovaySampler, RandomQMLTSampler,
                        MixtureSampler, RandomProjectorSampler, PlantedDiagonalSampler,
                        MarkovPairSampler, ChernoffSampler)
from . import generators, planted

__license__ = "LGPL"
