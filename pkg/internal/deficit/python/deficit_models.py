"""
Deficit Models
"""

from typing import Dict, Optional

from pydantic import BaseModel, Field


class DeficitConstants(BaseModel):
    """Constants of the quantitative deficit bounds at a given p"""
    p: float
    c: float
    c_prime: Optional[float] = None
    M: float
    epsilon: float
    # the five competing terms of c before the 1/32 factor
    terms: Dict[str, float] = Field(default_factory=dict)


class DeficitRow(BaseModel):
    """One candidate family evaluated against the deficit bounds"""
    family: str
    t: Optional[float] = None
    perimeter: float
    measure: float
    asymmetry: float
    deficit: float
    bound: float
    origin_free_bound: Optional[float] = None
    margin: float
