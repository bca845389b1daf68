"""Request models for the service endpoints.

Integer fields are strict: JSON documents with floats or numeric strings in
weight positions are rejected at the boundary rather than coerced, except in
the scaling endpoint where "p/q" strings are the point.
"""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, StrictInt, StrictStr

Owner = Literal["eve", "adam"]
VariantName = Literal["limsup-strict", "limsup-weak", "liminf-strict", "liminf-weak"]


class VertexModel(BaseModel):
    id: StrictStr
    owner: Owner


class EdgeModel(BaseModel):
    src: StrictStr
    dst: StrictStr
    weight: StrictInt


class ArenaModel(BaseModel):
    vertices: list[VertexModel]
    edges: list[EdgeModel]


class RationalEdgeModel(BaseModel):
    src: StrictStr
    dst: StrictStr
    weight: StrictInt | StrictStr


class RationalArenaModel(BaseModel):
    vertices: list[VertexModel]
    edges: list[RationalEdgeModel]


class UEdgeRequest(BaseModel):
    m_src: StrictInt
    t_src: StrictInt
    weight: StrictInt
    m_dst: StrictInt
    t_dst: StrictInt


class MpEvalRequest(BaseModel):
    prefix: list[StrictInt] = []
    cycle: list[StrictInt]
    variant: VariantName = "limsup-strict"


class SolveRequest(BaseModel):
    arena: ArenaModel


class CheckCertRequest(BaseModel):
    arena: ArenaModel
    certificate: dict


class ValueRequest(BaseModel):
    arena: ArenaModel
    vertex: StrictStr


class SimulateRequest(BaseModel):
    arena: ArenaModel
    certificate: dict
    start: StrictStr
    steps: StrictInt
    seed: StrictInt = 0


class MorphismRequest(BaseModel):
    arena: ArenaModel
    root: StrictStr


class OracleRequest(BaseModel):
    arena: ArenaModel


class GenRequest(BaseModel):
    n: StrictInt
    d: StrictInt
    wmax: StrictInt
    seed: StrictInt


class ScaleRequest(BaseModel):
    arena: RationalArenaModel


class SelftestRequest(BaseModel):
    quick: bool = False
