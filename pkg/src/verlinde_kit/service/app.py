"""FastAPI application wrapping the library.

create_app(config) returns the ASGI app; the CLI mounts it in process
through httpx, and `verlinde-kit serve` runs it under uvicorn.  Library
errors map onto HTTP statuses by their CLI exit code (4 -> 400,
3 -> 413, 2 -> 422) with a uniform {"error": ...} body.
"""

from collections import Counter
from importlib.metadata import PackageNotFoundError, version

from fastapi import FastAPI
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse

from ..config import Config, from_env
from ..errors import InputError, SchemaError, ValidationFailure, VerlindeError
from ..fusion import build_fusion_ring, fusion_verlinde
from ..graphs import GradedQuiver
from ..gusrep import check_quantum_dynkin, load_usrep, spectrum, validate
from ..lie import build_algebra
from ..rootspace import exponent_multiplicities, quantum_root_system, root_inner
from ..torus import build_level
from . import schemas

_STATUS = {4: 400, 3: 413, 2: 422}


def _version() -> str:
    try:
        return version("verlinde-kit")
    except PackageNotFoundError:
        return "unknown"


def _merge(base: Config, body: schemas.ConfigBody | None) -> Config:
    if body is None:
        return base
    overrides = {k: v for k, v in body.model_dump().items() if v is not None}
    return base.replace(**overrides) if overrides else base


def _point(elem) -> list:
    return [str(c) for c in elem.coords]


def _classical_exponents(algebra) -> list:
    # the exponents are the conjugate of the root-height count partition
    counts = Counter(algebra.root_heights)
    return sorted(
        sum(1 for c in counts.values() if c >= t)
        for t in range(1, counts[1] + 1)
    )


def _lie_report(body: schemas.LieRequest, config: Config) -> dict:
    algebra = build_algebra(body.family, body.rank)
    exponents = _classical_exponents(algebra)
    weyl_order = 1
    for m in exponents:
        weyl_order *= m + 1
    return {
        "family": algebra.family,
        "rank": algebra.rank,
        "cartan": [list(r) for r in algebra.cartan.entries],
        "simply_laced": algebra.simply_laced,
        "positive_roots": [list(r) for r in algebra.positive_roots],
        "highest_root": list(algebra.highest_root),
        "marks": list(algebra.marks),
        "comarks": list(algebra.comarks),
        "coxeter_number": algebra.coxeter_number,
        "dual_coxeter": algebra.dual_coxeter,
        "classical_exponents": exponents,
        "weyl_order": weyl_order,
        "center": {
            "order": algebra.center.order,
            "cyclic_orders": list(algebra.center.cyclic_orders),
        },
    }


def _fusion_report(body: schemas.FusionRequest, config: Config) -> dict:
    if (body.k is None) != (body.j is None):
        raise InputError("give both k and j for a single row, or neither")
    algebra = build_algebra(body.family, body.rank)
    level = build_level(algebra, body.level, config)
    ring = build_fusion_ring(level, config)
    if body.k is None:
        pairs = [(k, j) for k in ring.basis for j in ring.basis]
    else:
        pairs = [(tuple(body.k), tuple(body.j))]
    entries = []
    for k, j in pairs:
        row = ring.multiply(k, j)
        for s in ring.basis:
            n = row.get(s, 0)
            if n:
                entries.append({"k": list(k), "j": list(j), "s": list(s), "n": n})
    verified = None
    if body.verify:
        for k, j in pairs:
            row = ring.multiply(k, j)
            for s in ring.basis:
                other = fusion_verlinde(level, k, j, s, config)
                if other != row.get(s, 0):
                    raise ValidationFailure(
                        f"fusion oracles disagree at k={k} j={j} s={s}: "
                        f"folding {row.get(s, 0)}, character sum {other}"
                    )
        verified = True
    return {
        "family": algebra.family,
        "rank": algebra.rank,
        "level": level.level,
        "quantum_coxeter": level.n_c,
        "basis": [list(b) for b in ring.basis],
        "unit": list(ring.rho),
        "entries": entries,
        "verified": verified,
    }


def _load_rep(body: schemas.RepRequest, config: Config):
    quiver = GradedQuiver(body.quiver)
    level_n = body.level if body.level is not None else quiver.level
    algebra = build_algebra(quiver.family, quiver.rank)
    ring = build_fusion_ring(build_level(algebra, level_n, config), config)
    return load_usrep(ring, quiver), quiver


def create_app(config: Config | None = None) -> FastAPI:
    base = config if config is not None else from_env()
    app = FastAPI(title="verlinde-kit", version=_version())

    @app.exception_handler(VerlindeError)
    async def library_error(request, exc: VerlindeError):
        return JSONResponse(
            status_code=_STATUS.get(exc.exit_code, 500),
            content={
                "error": {
                    "type": type(exc).__name__,
                    "message": str(exc),
                    "exit_code": exc.exit_code,
                }
            },
        )

    @app.exception_handler(RequestValidationError)
    async def request_error(request, exc: RequestValidationError):
        parts = [
            "{}: {}".format(".".join(str(p) for p in e["loc"]), e["msg"])
            for e in exc.errors()
        ]
        return JSONResponse(
            status_code=400,
            content={
                "error": {
                    "type": "SchemaError",
                    "message": "; ".join(parts),
                    "exit_code": 4,
                }
            },
        )

    @app.get("/health", response_model=schemas.HealthReport)
    def health():
        return {"status": "ok", "name": "verlinde-kit", "version": _version()}

    @app.post("/lie", response_model=schemas.LieReport)
    def lie(body: schemas.LieRequest):
        return _lie_report(body, _merge(base, body.config))

    @app.post("/fusion", response_model=schemas.FusionReport)
    def fusion(body: schemas.FusionRequest):
        return _fusion_report(body, _merge(base, body.config))

    @app.post("/rep/validate", response_model=schemas.ValidateReport)
    def rep_validate(body: schemas.RepRequest):
        rep, _ = _load_rep(body, _merge(base, body.config))
        return validate(rep)

    @app.post("/rep/spectrum", response_model=schemas.SpectrumReport)
    def rep_spectrum(body: schemas.RepRequest):
        config = _merge(base, body.config)
        rep, _ = _load_rep(body, config)
        table = spectrum(rep, config)
        points = [
            {"point": _point(e), "multiplicity": table.value_at(e)}
            for e in rep.ring.level.spec
        ]
        return {
            "dimension": rep.dim,
            "points": points,
            "total": sum(p["multiplicity"] for p in points),
        }

    @app.post("/rep/exponents", response_model=schemas.ExponentReport)
    def rep_exponents(body: schemas.RepRequest):
        config = _merge(base, body.config)
        rep, _ = _load_rep(body, config)
        table = exponent_multiplicities(rep, config)
        spec_table = spectrum(rep, config)
        entries = []
        for elem, (m_phi, m_phi0) in table.items():
            entries.append(
                {
                    "point": _point(elem),
                    "m_phi": m_phi,
                    "m_phi0": m_phi0,
                    "m_pi": spec_table.value_at(elem),
                    "exponents": list(table.exponents[elem]),
                }
            )
        return {
            "quantum_coxeter": rep.ring.level.n_c,
            "orbit": [list(r) for r in table.orbit],
            "entries": entries,
            "matches_spectrum": all(
                e["m_phi0"] == e["m_pi"] for e in entries
            ),
        }

    @app.post("/rep/roots", response_model=schemas.RootsReport)
    def rep_roots(body: schemas.RepRequest):
        config = _merge(base, body.config)
        rep, quiver = _load_rep(body, config)
        roots = quantum_root_system(rep, config)
        level = rep.ring.level
        group = level.weight_torus
        scale = len(level.torus_elems)
        out = []
        for r in roots:
            v = [0] * rep.dim
            v[r.vertex] = 1
            pair = (group.from_coords(r.klass), v)
            norm2 = root_inner(rep, pair, pair, config) * scale
            out.append(
                {
                    "class": list(r.klass),
                    "vertex": quiver.ids[r.vertex],
                    "norm2": int(norm2),
                }
            )
        return {
            "count": len(roots),
            "distinct": len(set(roots)),
            "roots": out,
        }

    @app.post("/dynkin/check", response_model=schemas.DynkinReport)
    def dynkin_check(body: schemas.DynkinRequest):
        config = _merge(base, body.config)
        family, rank, level = body.family, body.rank, body.level
        if family is None or rank is None or level is None:
            doc = body.quiver
            try:
                family = family if family is not None else doc["algebra"]["family"]
                rank = rank if rank is not None else doc["algebra"]["rank"]
                level = level if level is not None else doc["level"]
            except (KeyError, TypeError) as exc:
                raise SchemaError(
                    "quiver document lacks algebra/level fields and no "
                    "explicit family/rank/level was given"
                ) from exc
        ok, certificate = check_quantum_dynkin(
            body.quiver, (family, rank), level, config
        )
        return certificate

    return app
