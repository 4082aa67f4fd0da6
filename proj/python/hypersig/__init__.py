"""Exact verification toolkit for square-state toy models and C(m,n,d)."""
from ._hypersig import (
    vertex_count,
    count_vertices_by_enumeration,
    payoff,
    game_max,
    membership,
    xi,
    verify_xi,
    consistency_scan,
    measurement_classes,
    capacity,
    full_report,
)

__all__ = [
    "vertex_count",
    "count_vertices_by_enumeration",
    "payoff",
    "game_max",
    "membership",
    "xi",
    "verify_xi",
    "consistency_scan",
    "measurement_classes",
    "capacity",
    "full_report",
]
