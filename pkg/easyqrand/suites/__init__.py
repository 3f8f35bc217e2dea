"""Verification suites.

Summary
-------
Each suite draws seeded instances, runs the constructions of the library on
them and collects the verified inequalities as CheckRecords in a
SuiteReport.
"""
from .base import BaseSuite, AVAILABLE_SUITES
from .config import RunConfig, RunConfigValidator, SCHEMA
from .report import SuiteReport
from .approx import ApproxSuite
from .convert import ConvertSuite
from .measures import MeasuresSuite
from .lln import LLNSuite
from .run import run_suite, eval_state_against_test, discipline_verdicts

__license__ = "LGPL"
