"""Experiment orchestration, report figures and the command line."""

from commaware.harness.config import ExperimentConfig, NetworkEntry, load_config
from commaware.harness.experiment import run_experiment, rank_from_sweeps
