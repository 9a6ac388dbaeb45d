"""
Set Models
Finite unions of intervals in quantile coordinates and reference points
"""

from enum import Enum
from typing import List, Tuple

from pydantic import BaseModel, field_validator

# Endpoints closer than this collapse (degenerate intervals, touching intervals)
MERGE_TOL = 1e-12


class SetShape(str, Enum):
    """Extremal shapes of the unconstrained problem"""
    complement = "complement-of-symmetric-interval"
    interval = "symmetric-interval"


class QuantileSet(BaseModel):
    """Union of intervals (t1, t2) ∪ (t3, t4) ∪ ... with 0 ≤ t1 < ... ≤ 1.

    Quantiles 0 and 1 stand for the real-line endpoints -inf and +inf.
    """
    endpoints: Tuple[float, ...] = ()

    class Config:
        frozen = True

    @field_validator("endpoints", mode="before")
    @classmethod
    def _normalize(cls, value):
        values = [float(v) for v in value]
        if len(values) % 2:
            raise ValueError(f"an even number of endpoints is required, got {len(values)}")
        for v in values:
            if not -MERGE_TOL <= v <= 1.0 + MERGE_TOL:
                raise ValueError(f"endpoint {v!r} outside [0, 1]")
        values = [min(max(v, 0.0), 1.0) for v in values]
        for left, right in zip(values, values[1:]):
            if right < left - MERGE_TOL:
                raise ValueError(f"endpoints must be increasing: {left!r} > {right!r}")

        intervals: List[List[float]] = []
        for i in range(0, len(values), 2):
            a, b = values[i], max(values[i + 1], values[i])
            if b - a < MERGE_TOL:
                continue
            if intervals and a - intervals[-1][1] < MERGE_TOL:
                intervals[-1][1] = b
            else:
                intervals.append([a, b])
        return tuple(v for pair in intervals for v in pair)

    @classmethod
    def from_intervals(cls, intervals) -> "QuantileSet":
        return cls(endpoints=[v for pair in intervals for v in pair])

    @property
    def intervals(self) -> List[Tuple[float, float]]:
        e = self.endpoints
        return [(e[i], e[i + 1]) for i in range(0, len(e), 2)]

    @property
    def n_components(self) -> int:
        return len(self.endpoints) // 2

    def is_empty(self) -> bool:
        return not self.endpoints


class ReferencePoints(BaseModel):
    """α_p, β_p, σ_p on the real line and their quantile images"""
    p: float
    alpha_p: float
    beta_p: float
    sigma_p: float
    alpha_quantile: float
    beta_quantile: float
    sigma_quantile: float
