"""Suite reports.

A report holds every CheckRecord of a run, sorted by instance id, and its
summary counts. The JSON and CSV forms depend only on the records, so a run
repeated with the same configuration writes identical bytes; the wall time
goes to a separate timing file.
"""
import json
import logging
import os
import pandas as pd

__license__ = "LGPL"

logger = logging.getLogger(__name__)

REPORT_COLUMNS = ['instance_id', 'inequality', 'lhs', 'relation', 'rhs', 'margin', 'pass']


class SuiteReport:
    """Records and summary of one suite run.

    Parameters
    ----------
    suite : str
    records : list of CheckRecord
    seed : int
    wall_time : float or None
        Seconds spent, kept out of the report files.
    """

    def __init__(self, suite, records, seed, wall_time=None):
        self.suite = suite
        self.seed = int(seed)
        self.records = sorted(records, key=lambda record: record.instance_id)
        self.wall_time = wall_time

    @property
    def total(self):
        return len(self.records)

    @property
    def passed(self):
        return sum(1 for record in self.records if record.passed)

    @property
    def failed(self):
        return self.total - self.passed

    @property
    def ok(self):
        return self.failed == 0

    def summary(self):
        return {'total': self.total, 'passed': self.passed, 'failed': self.failed}

    def failures(self):
        return [record for record in self.records if not record.passed]

    def to_frame(self):
        return pd.DataFrame([record.to_dict() for record in self.records],
                            columns=REPORT_COLUMNS)

    def to_json(self):
        return json.dumps({'suite': self.suite, 'seed': self.seed, 'summary': self.summary(),
                           'records': [record.to_dict() for record in self.records]},
                          sort_keys=True, indent=1)

    def write(self, output_dir, fmt='both'):
        """Write the report (and the timing side file) into `output_dir`.

        Returns
        -------
        list of str
            Paths of the report files written.
        """
        try:
            os.makedirs(output_dir, exist_ok=True)
            paths = []
            if fmt in ('json', 'both'):
                path = os.path.join(output_dir, f"{self.suite}_report.json")
                with open(path, 'w') as fd:
                    fd.write(self.to_json())
                paths.append(path)
            if fmt in ('csv', 'both'):
                path = os.path.join(output_dir, f"{self.suite}_report.csv")
                self.to_frame().to_csv(path, index=False)
                paths.append(path)
            if self.wall_time is not None:
                with open(os.path.join(output_dir, f"{self.suite}_timing.json"), 'w') as fd:
                    json.dump({'suite': self.suite, 'wall_time': self.wall_time}, fd)
        except OSError as e:
            msg = f"Unable to write the {self.suite} report to {output_dir}: {e}"
            logger.critical(msg)
            raise RuntimeError(msg)
        return paths

    def __repr__(self):
        return (f"SuiteReport({self.suite}: {self.passed}/{self.total} passed, "
                f"{self.failed} failed)")
