"""Brute-force oracles and per-theorem suites."""

from ..axioms import AxiomVerdict, check_axioms
from .suites import SUITES, SuiteReport, run_all, run_suite

__all__ = ["AxiomVerdict", "SUITES", "SuiteReport", "check_axioms", "run_all", "run_suite"]
