"""Experiment driver, published reference values and reporting."""

from .experiment import ALGORITHMS, ExperimentSpec, ExperimentSummary, default_config, run_experiment, run_single, summarize
from .reference import DEFAULT_TARGETS, PARAMETERS, REFERENCE_TABLE, ReferenceRow
from .report import CSV_COLUMNS, FORMATS, Comparison, compare_to_reference, emit, render, summary_from_json, summary_to_json
