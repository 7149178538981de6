"""Stochastic q-gradient descent with benchmark objectives and an experiment harness."""

from .benchmarks import FUNCTION_NAMES, ObjectiveFunction, get_function, in_global_basin, initial_point
from .optimizer import (
    OptimizerState,
    QGradientConfig,
    RunResult,
    descend_step,
    golden_section,
    optimize,
    sample_q,
    steepest_descent,
)
from .qcalc import EvalCountedFunction, classical_gradient_fd, q_derivative_1d, q_gradient, q_number, q_partial

__version__ = "0.1.0"
