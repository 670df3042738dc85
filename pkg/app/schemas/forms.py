from typing import List, Literal, Optional, Union

from pydantic import BaseModel, Field, model_validator

GramToken = Union[Literal["I", "Pi", "S"], List[List[int]]]


class FormSpec(BaseModel):
    """
    A non-degenerate symmetric bilinear form on a superspace of dimension n_ev|n_od.
    """
    n_ev: int = Field(default=0, ge=0)
    n_od: int = Field(default=0, ge=0)
    B_ev: GramToken = "I"
    B_od: GramToken = "I"
    parity: Literal["even", "odd"] = "even"

    @model_validator(mode="after")
    def nonempty(self):
        if self.n_ev + self.n_od == 0:
            raise ValueError("the superspace must not be zero")
        if self.parity == "odd" and self.n_ev != self.n_od:
            raise ValueError("an odd non-degenerate form needs n_ev = n_od")
        return self


class ExtendRequest(BaseModel):
    family: Literal["oo", "pe"]
    k_ev: Optional[int] = None
    k_od: Optional[int] = None
    m: Optional[int] = None
    level: int = Field(default=1, ge=1)
    which: Literal["cocycle", "I0", "both"] = "both"


class FormBlock(BaseModel):
    block: Literal["even", "odd"]
    form_class: str
    change_of_basis: List[List[str]]


class FormReport(BaseModel):
    parity: str
    sdim: str
    blocks: List[FormBlock]
    preserver_sdim: Optional[str] = None


class AlgebraSummary(BaseModel):
    name: str
    dim: int
    sdim: str
    labels: List[str]
