"""Compositional deadlock verification for protocol interaction systems."""

from .composition import BudgetExceeded, global_behavior, partial_behavior, port_behavior
from .equivalence import (
    Partition,
    branching_bisimilar,
    branching_partition,
    conforms,
    is_tau_free,
    minimize,
)
from .generators import generate_ex1, generate_star
from .lts import TAU, Lts, hide, is_deadlock_free, reachable_states
from .system import PortRef, System, project_component, project_port, validate
from .textfmt import ParseError, parse_system, render_system
from .topology import CommGraph, comm_graph, is_tree_like, is_uniquely_connected, port_connectivity
from .verifier import Outcome, Verdict, check_oracle, check_theorem, cross_validate

__version__ = "0.1.0"
