from typing import Dict, List, Optional

from pydantic import BaseModel, Field

from app.schemas.cartan import RunConfig


class SeriesReport(BaseModel):
    """
    A series member on its natural basis: dimensions by degree, and optionally the fields themselves.
    """
    config: RunConfig
    name: str
    N: List[int]
    n_odd: int = 0
    dim: int
    sdim: str
    dims_by_degree: Dict[int, int]
    formula: Optional[str] = None
    basis: List[str] = Field(default_factory=list)
