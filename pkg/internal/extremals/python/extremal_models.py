"""
Extremal Models
Candidate families, interval minimizers and region maps over (p, λ)
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field

from internal.sets.python.set_models import QuantileSet


class Family(str, Enum):
    """Candidate families of prescribed measure and asymmetry, mirrored variants included"""
    E1 = "E1"
    E2 = "E2"
    E2_BAR = "E2bar"
    E3 = "E3"
    E3_BAR = "E3bar"
    E4 = "E4"
    E5 = "E5"
    E5_BAR = "E5bar"
    E6 = "E6"
    E6_BAR = "E6bar"
    E7 = "E7"
    E7_BAR = "E7bar"

    @property
    def base(self) -> "Family":
        return Family(self.value.replace("bar", ""))

    @property
    def mirrored(self) -> bool:
        return self.value.endswith("bar")

    @property
    def index(self) -> int:
        return int(self.value[1])

    @property
    def has_parameter(self) -> bool:
        return self.base in (Family.E6, Family.E7)


# Families compared by the region map, in tie-break order
MAP_FAMILIES: Tuple[Family, ...] = (Family.E1, Family.E2, Family.E3, Family.E4)


class CandidateSet(BaseModel):
    """A family instantiated at (p, λ[, t])"""
    family: Family
    p: float
    lam: float = Field(alias="lambda")
    t: Optional[float] = None
    set: QuantileSet
    perimeter: float

    class Config:
        populate_by_name = True


class IntervalShape(str, Enum):
    """Minimal-perimeter interval of a given measure"""
    symmetric_interval = "symmetric-interval"
    half_line = "half-line"
    tie = "tie"


class IntervalMinimizer(BaseModel):
    p: float
    shape: IntervalShape
    perimeter: float
    symmetric_perimeter: float
    half_line_perimeter: float


class PsiShape(BaseModel):
    """Interior local extrema of t ↦ ψ_p(t) on a grid"""
    p: float
    minima: List[float] = Field(default_factory=list)
    maxima: List[float] = Field(default_factory=list)
    grid_step: float


class HypothesisReport(BaseModel):
    """J′ concave on (0,1/2) and J′(0⁺) = 0"""
    j_prime_concave: bool
    j_prime_at_zero: float
    holds: bool


class DominationReport(BaseModel):
    """Counts of violated dominations among the auxiliary families"""
    checked: int = 0
    e5_over_e4_violations: int = 0
    e6_over_e1_violations: int = 0
    e7_over_e2_e3_violations: int = 0
    worst_margin: float = float("inf")

    @property
    def violations(self) -> int:
        return self.e5_over_e4_violations + self.e6_over_e1_violations + self.e7_over_e2_e3_violations


@dataclass
class RegionMap:
    """Argmin family over the grid {0 ≤ p ≤ 1/2, 0 ≤ λ ≤ min(2p, 1)}"""
    measure: str
    grid_n: int
    origin_free: bool
    p_values: np.ndarray
    lam_values: np.ndarray
    # winner[i, j] labels (p_values[i], lam_values[j]); "" outside the triangle
    winner: np.ndarray
    tie: np.ndarray
    perimeters: Dict[Family, np.ndarray] = field(default_factory=dict)
    lambda0_curve: List[Tuple[float, float]] = field(default_factory=list)
    p0_curve: List[Tuple[float, float]] = field(default_factory=list)
    e1_e2_curve: List[Tuple[float, float]] = field(default_factory=list)
    p1: Optional[float] = None
    p2: Optional[float] = None

    def label_at(self, p: float, lam: float) -> str:
        i = int(np.argmin(np.abs(self.p_values - p)))
        j = int(np.argmin(np.abs(self.lam_values - lam)))
        return str(self.winner[i, j])
