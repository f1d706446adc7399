"""Online makespan scheduling under scenarios: algorithms, exact optimum, adversaries."""
from .core import (
    AssignmentState,
    Instance,
    Job,
    LoadMatrix,
    Weight,
    anticipation,
    completion_time,
    exact,
    load_matrix,
    makespan,
    proxy_ratio,
)
from .algorithms import get_algorithm, run_online
from .oracle import exact_opt, lower_bound_avg, verify_certificate
from .transforms import cut_job, delete_job
from .adversaries import get_adversary
from .harness import duel, minimax_certify, minimax_value, random_instance, run_static

__version__ = "0.1.0"
