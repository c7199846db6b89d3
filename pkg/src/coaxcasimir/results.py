"""Result containers shared by the energy and pressure routines."""
from dataclasses import dataclass, field
import enum


class MethodTag(str, enum.Enum):
    EXACT = "Exact"
    SEMICLASSICAL = "Semiclassical"
    PFA_INNER = "PFA_inner"
    PFA_OUTER = "PFA_outer"
    PFA_GEOM = "PFA_geom"


@dataclass(frozen=True)
class EnergyBreakdown:
    """Dimensionless energy ε(α) with its term-by-term decomposition.

    ``per_n_terms`` holds ``(index, contribution)`` pairs already in units of
    ε, so they sum to ``epsilon`` up to ``error_estimate``. The index is the
    angular number for the exact sum and the winding number for the
    semiclassical one. ``depsilon`` is dε/dα when the method provides it.
    """

    epsilon: float
    per_n_terms: tuple
    n_used: int
    error_estimate: float
    method_tag: MethodTag
    alpha: float
    depsilon: float = None
    depsilon_error: float = None
    subtotals: dict = field(default_factory=dict)
