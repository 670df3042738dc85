from typing import Dict, List, Literal, Optional, Union

from pydantic import BaseModel, Field, model_validator

from app.core.config import settings

Variant = Literal["full", "derived", "core", "center_quotient"]
OutputFormat = Literal["text", "json"]


class RunConfig(BaseModel):
    """
    Everything needed to repeat a run; echoed into every report.
    """
    command: str
    inputs: List[str] = Field(default_factory=list)
    r: Optional[List[int]] = None
    N: Optional[List[int]] = None
    degree_cap: Optional[int] = None
    format: OutputFormat = "text"
    seed: int = settings.RANDOM_SEED
    sentinels: List[int] = Field(default_factory=lambda: [settings.SENTINEL_LO, settings.SENTINEL_HI])


class CartanSpecFile(BaseModel):
    """
    On-disk format of a Cartan matrix with its parity-tagged diagonal.
    """
    size: int = Field(ge=1)
    diagonal: List[str]
    offdiag: List[List[Union[int, str]]] = Field(default_factory=list)
    completion_B: Optional[List[List[Union[int, str]]]] = None
    relation_T: Optional[List[List[Union[int, str]]]] = None
    name: Optional[str] = None
    param_group: Optional[str] = None

    @model_validator(mode="after")
    def shapes(self):
        if len(self.diagonal) != self.size:
            raise ValueError(f"expected {self.size} diagonal tokens, got {len(self.diagonal)}")
        bad = [t for t in self.diagonal if t not in ("2", "od", "ev", "1", "0")]
        if bad:
            raise ValueError(f"unknown diagonal tokens {bad}")
        for entry in self.offdiag:
            if len(entry) != 3:
                raise ValueError(f"off-diagonal entries are [i, j, value], got {entry}")
        return self


class SpecSource(BaseModel):
    """
    Where a Cartan matrix comes from: a named preset with parameters, a shipped preset file, or inline data.
    """
    preset: Optional[str] = None
    args: List[int] = Field(default_factory=list)
    preset_file: Optional[str] = None
    spec: Optional[CartanSpecFile] = None
    variant: Variant = "full"

    @model_validator(mode="after")
    def exactly_one(self):
        given = [x for x in (self.preset, self.preset_file, self.spec) if x is not None]
        if len(given) != 1:
            raise ValueError("give exactly one of 'preset', 'preset_file' or 'spec'")
        return self


class RootSpace(BaseModel):
    weight: List[int]
    dim: int


class BuildReport(BaseModel):
    config: RunConfig
    name: str
    dim: int
    sdim: str
    rank: int
    size: int
    center_dim: int
    derived_dim: int
    simple_core_dim: int
    simple_core_sdim: str
    dynkin: str
    root_spaces: List[RootSpace]


class GradeRequest(BaseModel):
    source: SpecSource
    r: List[int]


class GradeReport(BaseModel):
    config: RunConfig
    name: str
    r: List[int]
    simplest: bool
    depth: int
    dims_by_degree: Dict[int, int]


class ReflectRequest(BaseModel):
    source: SpecSource
    sequence: List[int] = Field(description="1-based simple roots to reflect in, in order")


class ReflectReport(BaseModel):
    config: RunConfig
    steps: List[str]
    roots: List[List[int]]
    dynkin: str
    matrix: List[List[str]]


class RootClassesReport(BaseModel):
    config: RunConfig
    name: str
    classes: int
    representatives: List[str]
