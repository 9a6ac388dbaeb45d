"""
Measure Models
Catalog tags and serializable specs of symmetric log-convex measures
"""

from enum import Enum
from typing import List

from pydantic import BaseModel, Field


class MeasureKind(str, Enum):
    """Catalog of supported measure kinds"""
    cauchy = "cauchy"
    exponential = "exp"
    subexponential = "subexp"
    custom = "custom"


class MeasureSpec(BaseModel):
    """Kind plus parameters, as recorded in run manifests"""
    kind: MeasureKind
    params: List[float] = Field(default_factory=list)

    class Config:
        use_enum_values = True

    def label(self) -> str:
        kind = MeasureKind(self.kind)
        if kind is MeasureKind.exponential:
            return "exp"
        if not self.params:
            return kind.value
        return f"{kind.value}:" + ",".join(f"{value:g}" for value in self.params)
