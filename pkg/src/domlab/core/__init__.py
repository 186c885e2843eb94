"""
Core computations: dominating-set enumeration, move graphs, the invariants
engine, bound checkers, the graph catalog and the guard protocol simulator
"""

from .engine import (
    INVARIANTS,
    STATUS_OK,
    STATUS_UNKNOWN,
    Certificate,
    FeasibilityProfile,
    InvariantEngine,
    InvariantReport,
    autonomous_feasible,
    autonomous_number,
    domination_number,
    eternal_domination_number,
    feasibility_profile,
    foolproof_number,
    refute,
    secdom_sufficiency,
    verify_foolproof,
)
from .kernel import Move, enumerate_dominating, is_dominating, is_secure_dominating, legal_moves
from .move_graph import FamilyCertificate, MoveGraph, build_move_graph, verify_family
from .simulator import ProtocolConfig, SimOutcome, exhaustive_check, monte_carlo, simulate
from .trajectory import Step, Trajectory

__all__ = [
    "INVARIANTS",
    "STATUS_OK",
    "STATUS_UNKNOWN",
    "Certificate",
    "FeasibilityProfile",
    "InvariantEngine",
    "InvariantReport",
    "autonomous_feasible",
    "autonomous_number",
    "domination_number",
    "eternal_domination_number",
    "feasibility_profile",
    "foolproof_number",
    "refute",
    "secdom_sufficiency",
    "verify_foolproof",
    "Move",
    "enumerate_dominating",
    "is_dominating",
    "is_secure_dominating",
    "legal_moves",
    "FamilyCertificate",
    "MoveGraph",
    "build_move_graph",
    "verify_family",
    "ProtocolConfig",
    "SimOutcome",
    "exhaustive_check",
    "monte_carlo",
    "simulate",
    "Step",
    "Trajectory",
]
