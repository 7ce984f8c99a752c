"""HTTP facade over the library: one endpoint per analysis entry point.

Every endpoint is a pure function of its payload plus the run config, so
identical requests give identical JSON. Library errors map to status codes:
bad data 400, refused sizes 413, violated invariants 500.
"""
from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..algebra import FiniteAlgebra, algebra_from_dict, validate_map
from ..casestudies import build_sn_model, sn_ideal_analysis, sn_rule_matrix
from ..config import RunConfig, default_config
from ..errors import (
    ConstructionError,
    DimensionError,
    HullkitError,
    ParseError,
    PreconditionError,
    SizeRefusalError,
)
from ..hull import (
    enumerate_bitranslations,
    hull_report,
    is_left_balanced,
    is_right_balanced,
)
from ..quotients import (
    build_quotient_pipeline,
    is_representable,
    is_separable,
    map_reductivity,
)
from ..semigroups import (
    eggbox_dot,
    endo_rank_ideal,
    enumerate_endomorphisms,
    green_relations,
    ideal_generated,
    non_units_ideal,
    semigroup_from_maps,
)
from ..semirings import (
    check_prop_semiring,
    check_prop_semiring_plus,
    mul_ideal_closure,
    semiring_from_dict,
)
from .schemas import (
    CheckRequest,
    EndReport,
    EndRequest,
    Health,
    IdealRequest,
    SemiringRequest,
    SnRequest,
)

app = FastAPI(title="hullkit", version=__version__)

_BAD_DATA = (ParseError, PreconditionError, ConstructionError, DimensionError)


@app.exception_handler(HullkitError)
def _hullkit_error(request: Request, exc: HullkitError):
    if isinstance(exc, _BAD_DATA):
        status = 400
    elif isinstance(exc, SizeRefusalError):
        status = 413
    else:  # TheoremViolationError and anything else structural
        status = 500
    return JSONResponse(
        status_code=status, content={"kind": type(exc).__name__, "error": str(exc)}
    )


def _config(spec) -> RunConfig:
    cfg = default_config()
    if spec is None:
        return cfg
    given = {k: v for k, v in spec.model_dump().items() if v is not None}
    return RunConfig(**{**cfg.__dict__, **given})


def _algebra(spec) -> FiniteAlgebra:
    return algebra_from_dict(spec.model_dump(exclude_none=True))


def _end_monoid(alg, gens, cfg):
    if gens is not None and not all(0 <= g < alg.size for g in gens):
        raise PreconditionError("generators must be positions in 0..%d" % (alg.size - 1))
    return enumerate_endomorphisms(alg, gens=gens, config=cfg)


def _resolve_ideal(alg: FiniteAlgebra, req: IdealRequest, cfg: RunConfig) -> list:
    """The ideal as a duplicate-free sorted list of carrier maps."""
    if req.ideal_elements is not None:
        if req.ideal is not None:
            raise PreconditionError("give either an ideal spec or elements, not both")
        maps = sorted({validate_map(f, alg.size) for f in req.ideal_elements})
        if not maps:
            raise PreconditionError("the ideal is empty")
        return maps
    spec = req.ideal
    if spec is None:
        raise PreconditionError("an ideal spec or explicit elements are required")
    end = _end_monoid(alg, req.gens, cfg)
    if spec == "non-units":
        idx = non_units_ideal(end)
    elif spec.startswith("rank:"):
        try:
            k = int(spec[5:])
        except ValueError:
            raise PreconditionError("rank spec needs an integer, got %r" % spec)
        maps = endo_rank_ideal(alg, end.elems, k, cap=alg.size)
        if not maps:
            raise PreconditionError("no endomorphism has rank below %d" % k)
        return maps
    elif spec.startswith("gens:"):
        try:
            gens_idx = [int(x) for x in spec[5:].split(",")]
        except ValueError:
            raise PreconditionError("gens spec needs comma-separated integers")
        if not all(0 <= g < end.order for g in gens_idx):
            raise PreconditionError(
                "generator positions must lie in 0..%d" % (end.order - 1)
            )
        idx = ideal_generated(end, gens_idx)
    else:
        raise PreconditionError(
            "ideal spec must be rank:k, non-units or gens:i,j,... (got %r)" % spec
        )
    return [end.elems[i] for i in idx]


@app.get("/health", response_model=Health)
def health():
    return Health(status="ok", version=__version__)


@app.post("/end", response_model=EndReport, response_model_exclude_none=True)
def end_monoid(req: EndRequest):
    cfg = _config(req.config)
    alg = _algebra(req.algebra)
    end = _end_monoid(alg, req.gens, cfg)
    box = green_relations(end)
    return EndReport(
        order=end.order,
        units=len(end.units()),
        idempotents=len(end.idempotents()),
        d_class_sizes=sorted((len(c) for c in box.d_classes), reverse=True),
        dot=eggbox_dot(end, box) if req.dot else None,
    )


@app.post("/hull")
def hull(req: IdealRequest):
    cfg = _config(req.config)
    alg = _algebra(req.algebra)
    maps = _resolve_ideal(alg, req, cfg)
    return hull_report(alg, maps, cfg, gens=req.gens).to_dict()


@app.post("/quotient")
def quotient(req: IdealRequest):
    cfg = _config(req.config)
    alg = _algebra(req.algebra)
    maps = _resolve_ideal(alg, req, cfg)
    pipe = build_quotient_pipeline(alg, maps)
    out = pipe.to_dict()
    out["a_mod_size"] = pipe.a_mod.size
    out["i_mod_order"] = pipe.i_mod.order
    out["k_of_i"] = pipe.chain.k_of_i
    return out


@app.post("/check")
def check(req: CheckRequest):
    cfg = _config(req.config)
    alg = _algebra(req.algebra)
    maps = _resolve_ideal(alg, req, cfg)
    known = {"rep", "sep", "reductive", "balanced"}
    bad = [p for p in req.properties if p not in known]
    if bad:
        raise PreconditionError(
            "unknown properties %r; pick from %s" % (bad, sorted(known))
        )
    out = {"size": alg.size, "ideal_order": len(maps)}
    for prop in req.properties:
        if prop == "rep":
            out["rep"] = is_representable(alg, maps)
        elif prop == "sep":
            out["sep"] = is_separable(alg, maps)
        elif prop == "reductive":
            out["reductive"] = map_reductivity(maps, maps)
        else:
            i_sg = semigroup_from_maps(maps)
            omega = enumerate_bitranslations(i_sg, cfg)
            canon = i_sg.elems
            out["balanced"] = {
                "all_left": all(
                    is_left_balanced(alg.size, canon, p.left)[0] for p in omega
                ),
                "all_right": all(
                    is_right_balanced(alg.size, canon, p.right) for p in omega
                ),
            }
    return out


@app.post("/sn")
def sn(req: SnRequest):
    cfg = _config(req.config)
    model = build_sn_model(req.n, allow_irregular=req.allow_irregular, config=cfg)
    out = {
        "n": req.n,
        "order": model.end.order,
        "units": len(model.psi),
        "odd_collapses": len(model.E),
        "even_collapses": len(model.K),
        "exact": model.exact,
        "rules": sn_rule_matrix(model),
    }
    if req.which is not None:
        out["analysis"] = sn_ideal_analysis(model, req.which, cfg)
    if req.dot:
        out["dot"] = eggbox_dot(model.end)
    return out


@app.post("/semiring")
def semiring(req: SemiringRequest):
    cfg = _config(req.config)
    r = semiring_from_dict(req.semiring.model_dump(exclude_none=True))
    if (req.ideal is None) == (req.ideal_gens is None):
        raise PreconditionError("give exactly one of ideal or ideal_gens")
    if req.ideal is not None:
        ideal = sorted(set(req.ideal))
    else:
        ideal = list(mul_ideal_closure(r, req.ideal_gens))
    if not all(isinstance(x, int) and 0 <= x < r.order for x in ideal):
        raise PreconditionError("ideal positions must lie in 0..%d" % (r.order - 1))
    if req.idems is not None:
        return check_prop_semiring_plus(r, ideal, req.idems, cfg)
    return check_prop_semiring(r, ideal, cfg)
