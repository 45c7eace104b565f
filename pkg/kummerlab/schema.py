"""Pydantic model of the problem document read by the command line."""

from typing import Any, Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, StrictInt, constr, field_validator
from sympy import isprime

# "−" (U+2212) is accepted as a minus sign
Rational = constr(pattern=r"^\s*[+\-−]?\d+(/\d+)?\s*$")
Endpoint = constr(pattern=r"^\s*([+\-−]?\d+(/\d+)?|[+\-−]inf)\s*$")


class AnnulusModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    lo: Endpoint
    hi: Endpoint
    lo_closed: bool = False
    hi_closed: bool = False
    orientation: Literal[1, -1] = 1


class EdgeModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str
    tail: Optional[str] = None
    head: Optional[str] = None


class SemiGraphModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    vertices: List[str] = Field(default_factory=list)
    edges: List[EdgeModel]


class ProblemFile(BaseModel):
    """A single problem: prime, optional geometry and command parameters"""

    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    schema_version: Literal[1] = Field(alias="schema")
    p: StrictInt
    annulus: Optional[AnnulusModel] = None
    newton: Optional[List[Tuple[StrictInt, Rational]]] = None
    laurent: Optional[List[Tuple[StrictInt, Rational]]] = None
    semigraph: Optional[SemiGraphModel] = None
    params: Dict[str, Any] = Field(default_factory=dict)

    @field_validator("p")
    @classmethod
    def check_prime(cls, value: int) -> int:
        if not isprime(value):
            raise ValueError(f"p must be a prime, got {value}")
        return value

    @field_validator("newton", "laurent")
    @classmethod
    def check_degrees(cls, terms):
        if terms is not None:
            degrees = [degree for degree, _ in terms]
            if not degrees:
                raise ValueError("at least one term is required")
            if len(set(degrees)) != len(degrees):
                raise ValueError(f"repeated degrees {degrees}")
        return terms
