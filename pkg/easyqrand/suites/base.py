from easyqrand.base_element import BaseElement
import itertools
import logging
import os
import time
import dask
import dask.bag

from .config import RunConfig
from .report import SuiteReport

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

# Dict to store all registered suites (any class which extends
# BaseSuite is automatically registered as a suite)
AVAILABLE_SUITES = {}


class BaseSuite(BaseElement):
    """Baseclass for all EasyQRand verification suites.

    A suite pairs samplers with checkers. For every sampler and every
    instance index below `cfg.instance_count` the checker receives the
    sampled instance and returns its CheckRecords together with a dict of
    named DataFrames (eigen logs, construction traces, LLN reports).

    Parameters
    ----------
    cfg : RunConfig
    """

    category = "suite"
    registry = AVAILABLE_SUITES

    def __init_subclass__(cls, suite_name, **kwargs):
        """
        Catch any new suites (all suites must inherit from BaseSuite) and
        add them to the dict of available suites.
        """
        super().__init_subclass__(**kwargs)

        cls.suite_name = suite_name

        cls.register(suite_name)

    def __init__(self, cfg):
        self.cfg = cfg
        self.tols = cfg.tols

    def element_name(self):
        return self.suite_name

    def get_restart_dict(self):
        return self.cfg.to_dict()

    @classmethod
    def restore(cls, state):
        return cls(RunConfig(**state))

    def plan(self):
        """List of (sampler, checker) pairs; implemented by subclasses."""
        raise NotImplementedError

    def _tasks(self):
        return [(sampler, checker, index)
                for sampler, checker in self.plan()
                for index in range(self.cfg.instance_count)]

    def _run_task(self, task):
        sampler, checker, index = task
        sample = sampler.sample(index)
        instance_id = sample['instance_id']
        logger.debug(f"{self.suite_name}: checking {instance_id}")
        records, tables = checker(sample)
        records = [record.with_instance(instance_id) for record in records]
        if self.cfg.artifacts:
            self._write_tables(instance_id, tables)
        return records

    def _write_tables(self, instance_id, tables):
        folder = os.path.join(self.cfg.output_dir, 'artifacts')
        try:
            os.makedirs(folder, exist_ok=True)
            for name, frame in tables.items():
                frame.to_csv(os.path.join(folder, f"{instance_id}_{name}.csv"), index=False)
        except OSError as e:
            msg = f"Unable to write artifacts of {instance_id} to {folder}: {e}"
            logger.critical(msg)
            raise RuntimeError(msg)

    def collect(self):
        """CheckRecords of every instance, in task order."""
        tasks = self._tasks()
        if self.cfg.workers > 1:
            bag = dask.bag.from_sequence(tasks, npartitions=min(len(tasks), self.cfg.workers))
            results = bag.map(self._run_task).compute(scheduler='threads',
                                                      num_workers=self.cfg.workers)
        else:
            with dask.config.set(scheduler='synchronous'):
                results = dask.bag.from_sequence(tasks).map(self._run_task).compute()
        return list(itertools.chain.from_iterable(results))

    def run(self):
        """Run every instance and return the SuiteReport."""
        start = time.perf_counter()
        records = self.collect()
        report = SuiteReport(self.suite_name, records, self.cfg.seed,
                             wall_time=time.perf_counter() - start)
        logger.info(f"{self.suite_name}: {report.passed}/{report.total} checks passed")
        return report
