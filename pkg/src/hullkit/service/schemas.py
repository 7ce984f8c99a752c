"""Request/response shapes for the analysis service.

Payloads mirror the on-disk JSON formats: algebras are {size, ops, kind},
map families are lists of image tuples on 0..size-1, semirings carry both
Cayley tables. Deep validation (table lengths, associativity, ...) happens
in the library constructors, not here.
"""
from __future__ import annotations

from typing import Optional

from pydantic import BaseModel, Field


class OpSpec(BaseModel):
    name: str
    arity: int
    table: list[int]


class AlgebraSpec(BaseModel):
    size: int
    ops: list[OpSpec]
    kind: Optional[str] = None


class ConfigSpec(BaseModel):
    """Optional overrides of the server-side RunConfig defaults."""

    enumeration_bound: Optional[int] = None
    exhaustive_map_bound: Optional[int] = None
    max_results: Optional[int] = None
    lift_product_bound: Optional[int] = None
    seed: Optional[int] = None


class EndRequest(BaseModel):
    algebra: AlgebraSpec
    gens: Optional[list[int]] = None  # generator positions, to skip the map scan
    dot: bool = False
    config: Optional[ConfigSpec] = None


class EndReport(BaseModel):
    order: int
    units: int
    idempotents: int
    d_class_sizes: list[int]
    dot: Optional[str] = None


class IdealRequest(BaseModel):
    """An algebra plus an ideal of its endomorphism monoid.

    Either a symbolic spec ("rank:k", "non-units", "gens:i,j,...") resolved
    against End(A), or the member maps themselves.
    """

    algebra: AlgebraSpec
    ideal: Optional[str] = None
    ideal_elements: Optional[list[list[int]]] = None
    gens: Optional[list[int]] = None
    config: Optional[ConfigSpec] = None


class CheckRequest(IdealRequest):
    properties: list[str] = Field(
        default_factory=lambda: ["rep", "sep", "reductive", "balanced"]
    )


class SnRequest(BaseModel):
    n: int
    which: Optional[str] = None  # full | non_aut | even_generated
    allow_irregular: bool = False
    dot: bool = False
    config: Optional[ConfigSpec] = None


class SemiringSpec(BaseModel):
    order: int
    add: list[list[int]]
    mul: list[list[int]]
    zero: int
    one: Optional[int] = None


class SemiringRequest(BaseModel):
    semiring: SemiringSpec
    ideal: Optional[list[int]] = None  # explicit element positions
    ideal_gens: Optional[list[int]] = None  # or generators of a mul ideal
    idems: Optional[list[int]] = None  # run the orthogonal-idempotent variant
    config: Optional[ConfigSpec] = None


class Health(BaseModel):
    status: str
    version: str


class ErrorBody(BaseModel):
    kind: str
    error: str
