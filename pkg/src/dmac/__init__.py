"""Distributed minimax adaptive control for networks of scalar linear systems."""

from .config import paper_preset, parse_config, serialize_config
from .controllers import (
    SelectedModel,
    SufficientStatistics,
    hinf_control,
    minimax_control,
    nominal_control,
    residual,
    select_model,
    update_statistics,
)
from .disturbance import DisturbanceSpec, generate, realize
from .dynamics import ModelSet, NetworkState, coupling_sum, network_step, node_step
from .engine import ScenarioConfig, TrajectoryRecord, identification_time, run, simulate
from .metrics import cumulative_cost, disturbance_energy, gain_ratio, trajectory_gap
from .topology import (
    Topology,
    admissible_interval,
    build_topology,
    sample_model_set,
    validate_model,
)

__version__ = "0.1.0"
