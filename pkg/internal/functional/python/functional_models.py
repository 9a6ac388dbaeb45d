"""
Functional Models
Piecewise-linear functions on the line and reports of the functional inequalities
"""

import math
from typing import List, Optional

import numpy as np
from pydantic import BaseModel, Field, field_validator, model_validator


class PiecewiseFunction(BaseModel):
    """Continuous piecewise-linear u, constant beyond the extreme breakpoints"""
    breakpoints: List[float]
    values: List[float]

    class Config:
        frozen = True

    @field_validator("breakpoints")
    @classmethod
    def _ordered(cls, value):
        if not value:
            raise ValueError("at least one breakpoint is required")
        if any(not math.isfinite(x) for x in value):
            raise ValueError("breakpoints must be finite")
        if any(b <= a for a, b in zip(value, value[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        return value

    @field_validator("values")
    @classmethod
    def _finite(cls, value):
        if any(not math.isfinite(y) for y in value):
            raise ValueError("values must be finite")
        return value

    @model_validator(mode="after")
    def _matching(self):
        if len(self.values) != len(self.breakpoints):
            raise ValueError("values and breakpoints differ in length")
        return self

    def __call__(self, x):
        # np.interp holds the end values beyond the extreme breakpoints
        return np.interp(x, self.breakpoints, self.values)

    @property
    def sup(self) -> float:
        return max(self.values)

    @property
    def inf(self) -> float:
        return min(self.values)

    def segments(self):
        """(x_left, x_right, u_left, u_right) for each finite segment"""
        xs, ys = self.breakpoints, self.values
        return list(zip(xs[:-1], xs[1:], ys[:-1], ys[1:]))

    def with_zero_crossings(self) -> "PiecewiseFunction":
        """Same function with a breakpoint wherever a segment changes sign"""
        xs, ys = [self.breakpoints[0]], [self.values[0]]
        for x0, x1, y0, y1 in self.segments():
            if y0 * y1 < 0.0:
                xs.append(x0 + (x1 - x0) * y0 / (y0 - y1))
                ys.append(0.0)
            xs.append(x1)
            ys.append(y1)
        return PiecewiseFunction(breakpoints=xs, values=ys)

    def map_values(self, fn) -> "PiecewiseFunction":
        """Apply fn to the values; exact for fn linear on each sign of u after zero insertion"""
        base = self.with_zero_crossings()
        return PiecewiseFunction(breakpoints=base.breakpoints, values=[float(fn(y)) for y in base.values])

    def positive_part(self) -> "PiecewiseFunction":
        return self.map_values(lambda y: max(y, 0.0))

    def negative_part(self) -> "PiecewiseFunction":
        return self.map_values(lambda y: max(-y, 0.0))

    def absolute(self) -> "PiecewiseFunction":
        return self.map_values(abs)

    def scaled(self, factor: float) -> "PiecewiseFunction":
        return PiecewiseFunction(breakpoints=self.breakpoints, values=[factor * y for y in self.values])

    def shifted(self, offset: float) -> "PiecewiseFunction":
        return PiecewiseFunction(breakpoints=self.breakpoints, values=[y + offset for y in self.values])

    def minus(self, other: "PiecewiseFunction") -> "PiecewiseFunction":
        xs = sorted(set(self.breakpoints) | set(other.breakpoints))
        return PiecewiseFunction(breakpoints=xs, values=[float(y) for y in self(xs) - other(xs)])


class CheegerRate(BaseModel):
    """β sampled on s, and the profile recovered from it by the dual transform"""
    measure: str
    s_values: List[float]
    beta_values: List[float]
    t_values: List[float] = Field(default_factory=list)
    i_tilde_values: List[float] = Field(default_factory=list)
    recovered_values: List[float] = Field(default_factory=list)

    @property
    def round_trip_residual(self) -> float:
        if not self.t_values:
            return 0.0
        return float(np.max(np.abs(np.asarray(self.i_tilde_values) - np.asarray(self.recovered_values))))

    @property
    def monotone(self) -> bool:
        return bool(np.all(np.diff(self.beta_values) <= 1e-12))


class InequalityRow(BaseModel):
    s: float
    beta: float
    lhs: float
    rhs: float
    margin: float


class InequalityReport(BaseModel):
    """Both sides of a functional inequality at each s"""
    name: str
    measure: str
    tolerance: float = 1e-10
    rows: List[InequalityRow] = Field(default_factory=list)

    @property
    def violations(self) -> List[InequalityRow]:
        return [row for row in self.rows if row.margin < -self.tolerance]

    @property
    def holds(self) -> bool:
        return not self.violations

    @property
    def min_margin(self) -> Optional[float]:
        return min((row.margin for row in self.rows), default=None)


class LemmaReport(BaseModel):
    """Sampled evaluations of an auxiliary inequality; margin = rhs - lhs"""
    name: str
    samples: int = 0
    violations: int = 0
    min_margin: float = math.inf
    tolerance: float = 1e-10

    def record(self, lhs: float, rhs: float) -> None:
        margin = rhs - lhs
        self.samples += 1
        self.min_margin = min(self.min_margin, margin)
        if margin < -self.tolerance:
            self.violations += 1
