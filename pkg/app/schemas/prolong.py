from typing import Dict, List, Optional

from pydantic import BaseModel, Field

from app.schemas.cartan import RunConfig, SpecSource
from app.schemas.catalog import VerdictModel


class ProlongRequest(BaseModel):
    """
    A prolong of the non-positive part of a graded Cartan algebra, or of a shipped fixture.
    """
    source: Optional[SpecSource] = None
    fixture: Optional[str] = None
    fixture_variant: Optional[str] = None
    r: Optional[List[int]] = None
    N: Optional[List[int]] = None
    free: Optional[int] = Field(default=None, ge=1, description="value for every FREE coordinate")
    degree_cap: Optional[int] = Field(default=None, ge=0)
    full_g0: bool = False
    constraints: bool = True
    identify: bool = True


class PartialProlongRequest(ProlongRequest):
    V1: List[str] = Field(description="degree-1 fields in text form spanning the chosen submodule")


class ProlongReport(BaseModel):
    config: RunConfig
    input: str
    N_used: List[int]
    dims_by_degree: Dict[int, int]
    total: int
    stabilized: bool
    degree_cap: int
    N_constraints: Optional[List[str]] = None
    warnings: List[str] = Field(default_factory=list)
    verdicts: List[VerdictModel] = Field(default_factory=list)
    top_verdicts: List[str] = Field(default_factory=list)
    timings: Dict[str, float] = Field(default_factory=dict)


class ReproduceCell(BaseModel):
    row: str
    N: str
    expected: str
    passed: bool
    got: List[str]
    dims_by_degree: Dict[int, int] = Field(default_factory=dict)
    detail: str = ""


class ReproduceReport(BaseModel):
    config: RunConfig
    table: str
    cells: List[ReproduceCell]
    skipped: List[str] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cells)
