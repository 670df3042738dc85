from typing import Dict, List, Literal, Optional, Union

from pydantic import BaseModel, Field, model_validator

EntryKind = Literal["oracle", "fixture", "profile", "self", "superization"]


class CatalogEntry(BaseModel):
    """
    A named algebra a prolong can be recognized as.
    """
    name: str
    kind: EntryKind
    oracle: Optional[str] = None
    formula: Optional[str] = None
    fixture: Optional[str] = None
    variant: Optional[str] = None
    base: Optional[str] = None
    coordinate_degrees: Optional[List[int]] = None
    depth: Optional[int] = None
    profile: Optional[Dict[int, int]] = None
    prefix: bool = False
    total: Optional[int] = None
    constraints: Optional[List[str]] = None
    all_free: bool = False
    tolerate: List[int] = Field(default_factory=list)
    odd_coordinates: Optional[List[str]] = None
    source: str = ""
    notes: str = ""

    @model_validator(mode="after")
    def kind_fields(self):
        needed = {"oracle": self.oracle, "fixture": self.fixture, "profile": self.profile or self.total,
                  "superization": self.base}
        if self.kind in needed and not needed[self.kind]:
            raise ValueError(f"catalog entry '{self.name}' of kind {self.kind} is missing its reference data")
        return self


class NSpec(BaseModel):
    """
    How a row instantiates the shearing vector: explicit values, or a value for every FREE coordinate.
    """
    values: Optional[List[int]] = None
    free: Optional[int] = None

    @model_validator(mode="after")
    def one_of(self):
        if (self.values is None) == (self.free is None):
            raise ValueError("an N instance needs exactly one of 'values' or 'free'")
        return self

    def __str__(self) -> str:
        return f"N={tuple(self.values)}" if self.values is not None else f"FREE={self.free}"


class TableRow(BaseModel):
    """
    One cell of a reproduction table: a preset, a grading and the verdict it should produce.
    """
    preset: str
    args: List[int] = Field(default_factory=list)
    variant: Literal["full", "derived", "core", "center_quotient"] = "full"
    r: List[int]
    N: List[NSpec] = Field(default_factory=lambda: [NSpec(free=1)])
    degree_cap: Optional[int] = None
    expected: str
    outer: int = 0
    slow: bool = False
    note: str = ""

    def label(self) -> str:
        args = ",".join(str(a) for a in self.args)
        r = "".join(str(x) for x in self.r)
        return f"{self.preset}({args}) {self.variant} r=({r})"


class CatalogFile(BaseModel):
    version: int = 1
    entries: List[CatalogEntry]
    tables: Dict[str, List[TableRow]]

    def entry(self, name: str) -> Optional[CatalogEntry]:
        return next((e for e in self.entries if e.name == name), None)


class VerdictModel(BaseModel):
    name: str
    kind: str
    exact: bool
    mismatches: List[str] = Field(default_factory=list)
    notes: List[str] = Field(default_factory=list)


class DimFormulaModel(BaseModel):
    name: str
    params: Dict[str, Union[int, str, List[int]]]
    even: int
    odd: int
    sdim: str
