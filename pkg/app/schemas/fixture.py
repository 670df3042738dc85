from typing import Dict, List, Optional, Union

from pydantic import BaseModel, Field, model_validator


class CoordinateModel(BaseModel):
    """
    One indeterminate of a realization.
    """
    name: str
    degree: int = Field(ge=1)
    parity: int = Field(default=0, ge=0, le=1)


class GeneratorModel(BaseModel):
    """
    A basis element of g_{<=0}: either an explicit field or the bracket of two earlier labels.
    """
    label: str
    degree: int = Field(le=0)
    field: Optional[str] = None
    bracket: Optional[List[str]] = None

    @model_validator(mode="after")
    def one_definition(self):
        if (self.field is None) == (self.bracket is None):
            raise ValueError(f"generator '{self.label}' needs exactly one of 'field' or 'bracket'")
        if self.bracket is not None and len(self.bracket) != 2:
            raise ValueError(f"generator '{self.label}': a bracket takes two labels")
        return self

    def checksum_line(self) -> str:
        body = self.field if self.field is not None else "[" + ",".join(self.bracket) + "]"
        return f"{self.label}|{self.degree}|{body}"


class FixtureFile(BaseModel):
    """
    On-disk format of a transcribed realization.
    """
    name: str
    description: str = ""
    coordinates: List[CoordinateModel]
    N_pattern: List[Union[int, str]]
    generators: List[GeneratorModel]
    variants: Dict[str, List[GeneratorModel]] = Field(default_factory=dict)
    # generating functions in k(1;N|4), t = x1 and xi1, xi2 paired with xi3, xi4
    contact_images: Dict[str, str] = Field(default_factory=dict)
    checksum: str

    @model_validator(mode="after")
    def pattern_length(self):
        if len(self.N_pattern) != len(self.coordinates):
            raise ValueError("N_pattern needs one entry per coordinate")
        return self

    def checksum_lines(self) -> List[str]:
        lines = [g.checksum_line() for g in self.generators]
        for variant in sorted(self.variants):
            lines.extend(f"{variant}:{g.checksum_line()}" for g in self.variants[variant])
        lines.extend(f"K:{label}|{self.contact_images[label]}" for label in sorted(self.contact_images))
        return lines
