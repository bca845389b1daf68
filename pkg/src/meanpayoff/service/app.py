"""Service endpoints over the core library.

Every mathematical operation lives in the core modules; handlers only
convert between JSON shapes and domain values.  Domain errors surface as
422 responses with a machine-readable kind so clients can map them to exit
codes: parse, validation, certificate, guard.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..arena import (
    ArenaParseError,
    ArenaValidationError,
    UnknownVertexError,
    arena_from_obj,
    arena_to_obj,
    generate_arena,
    scale_weights,
    Vertex,
)
from ..morphism import MorphismFailure, build_morphism
from ..oracle import OracleGuardError, oracle_winning_set
from ..payoff import UltimatelyPeriodicWord, Variant, mp_value, satisfies
from ..selfcheck import run_selfcheck
from ..solver import (
    TOP,
    CertificateFormatError,
    check_certificate,
    result_from_obj,
    result_to_obj,
    simulate,
    solve,
    value,
)
from ..universal import UVertex, u_edge
from .schemas import (
    ArenaModel,
    CheckCertRequest,
    GenRequest,
    MorphismRequest,
    MpEvalRequest,
    OracleRequest,
    ScaleRequest,
    SelftestRequest,
    SimulateRequest,
    SolveRequest,
    UEdgeRequest,
    ValueRequest,
)

app = FastAPI(title="mean-payoff solver service", version=__version__)


def _error(kind: str, exc: Exception) -> JSONResponse:
    return JSONResponse(
        status_code=422, content={"detail": {"kind": kind, "message": str(exc)}}
    )


@app.exception_handler(ArenaParseError)
async def _on_parse(request: Request, exc: ArenaParseError):
    return _error("parse", exc)


@app.exception_handler(ArenaValidationError)
async def _on_validation(request: Request, exc: ArenaValidationError):
    return _error("validation", exc)


@app.exception_handler(UnknownVertexError)
async def _on_unknown_vertex(request: Request, exc: UnknownVertexError):
    return _error("validation", exc)


@app.exception_handler(CertificateFormatError)
async def _on_certificate(request: Request, exc: CertificateFormatError):
    return _error("certificate", exc)


@app.exception_handler(OracleGuardError)
async def _on_guard(request: Request, exc: OracleGuardError):
    return _error("guard", exc)


@app.exception_handler(ValueError)
async def _on_value_error(request: Request, exc: ValueError):
    return _error("validation", exc)


def _to_arena(model: ArenaModel):
    return arena_from_obj(model.model_dump())


@app.get("/healthz")
async def healthz():
    return {"status": "ok", "version": __version__}


@app.post("/u-edge")
async def post_u_edge(req: UEdgeRequest):
    edge = u_edge(UVertex(req.m_src, req.t_src), req.weight, UVertex(req.m_dst, req.t_dst))
    return {"edge": edge}


@app.post("/mp-eval")
async def post_mp_eval(req: MpEvalRequest):
    word = UltimatelyPeriodicWord(tuple(req.prefix), tuple(req.cycle))
    return {
        "value": str(mp_value(word)),
        "satisfied": satisfies(word, Variant(req.variant)),
    }


@app.post("/solve")
async def post_solve(req: SolveRequest):
    return result_to_obj(solve(_to_arena(req.arena)))


@app.post("/check-cert")
async def post_check_cert(req: CheckCertRequest):
    arena = _to_arena(req.arena)
    verdict = check_certificate(arena, result_from_obj(req.certificate))
    return {
        "ok": verdict.ok,
        "violations": [
            {"vertex": v.vertex, "edge": v.edge, "kind": v.kind} for v in verdict.violations
        ],
    }


@app.post("/value")
async def post_value(req: ValueRequest):
    return {"value": str(value(_to_arena(req.arena), req.vertex))}


@app.post("/simulate")
async def post_simulate(req: SimulateRequest):
    arena = _to_arena(req.arena)
    cert = result_from_obj(req.certificate)
    trace = simulate(arena, cert, req.start, req.steps, req.seed)
    m = cert.measure.m
    f0 = cert.measure.values[req.start]
    assert f0 is not TOP  # simulate already rejected non-winning starts
    steps = [
        {
            "step": s.step,
            "edge": s.edge,
            "src": s.src,
            "dst": s.dst,
            "weight": s.weight,
            "prefix_sum": s.prefix_sum,
            "within_bound": m * s.prefix_sum <= f0 - s.step,
        }
        for s in trace
    ]
    return {
        "m": m,
        "start_label": f0,
        "steps": steps,
        "all_within_bound": all(s["within_bound"] for s in steps),
    }


@app.post("/morphism")
async def post_morphism(req: MorphismRequest):
    res = build_morphism(_to_arena(req.arena), req.root)
    if isinstance(res, MorphismFailure):
        return {"failure": {"cycle": list(res.cycle), "sum": res.cycle_sum}}
    return {"m": res.m, "labels": dict(sorted(res.labels.items()))}


@app.post("/oracle")
async def post_oracle(req: OracleRequest):
    return {"winning_eve": sorted(oracle_winning_set(_to_arena(req.arena)))}


@app.post("/gen")
async def post_gen(req: GenRequest):
    return arena_to_obj(generate_arena(req.n, req.d, req.wmax, req.seed))


@app.post("/scale")
async def post_scale(req: ScaleRequest):
    vertices = tuple(Vertex(v.id, v.owner) for v in req.arena.vertices)
    raw = [(e.src, e.dst, e.weight) for e in req.arena.edges]
    arena, factor = scale_weights(vertices, raw)
    return {"arena": arena_to_obj(arena), "factor": factor}


@app.post("/selftest")
async def post_selftest(req: SelftestRequest):
    ok, results = run_selfcheck(quick=req.quick)
    return {
        "ok": ok,
        "report": [
            f"{r.name}: {'ok' if r.ok else 'FAIL'} ({r.detail})" for r in results
        ],
    }
