"""The analysis service: stateless handlers over the exact core."""

from __future__ import annotations

import hashlib
from typing import List

from fastapi import FastAPI, HTTPException

from .. import __version__
from ..build import build_family
from ..calculus import build_profile, profile_to_json
from ..core import BFN1Error, TruthTable, parse, serialize
from ..entropy import (
    as_fraction,
    build_entropy_report,
    entropy_report_to_json,
    junta_set,
)
from ..spectrum import (
    SpectralSampleDist,
    degree,
    spectrum_to_json,
    transform,
)
from ..verify import (
    ExhaustiveGen,
    FamilyGen,
    RandomGen,
    all_check_ids,
    get_check,
    run_check,
    sweep,
    tightness_search,
)
from ..verify.search import ComposeGreedyStrategy
from .schemas import (
    AnalyzeRequest,
    AnalyzeResponse,
    CheckInfo,
    ConstructRequest,
    ConstructResponse,
    FamilySpec,
    FunctionSource,
    SampleRequest,
    SampleResponse,
    SearchRequest,
    SearchResponse,
    VerifyRequest,
    VerifyResponse,
)


def _family_table(spec: FamilySpec) -> TruthTable:
    params = {
        "n": spec.n, "m": spec.m, "count": spec.count, "k": spec.k,
        "mask": spec.mask, "seed": spec.seed, "depth": spec.depth,
    }
    params = {k: v for k, v in params.items() if v is not None}
    if spec.outer_bfn1 is not None:
        params["outer"] = parse(spec.outer_bfn1)
    if spec.inner_bfn1 is not None:
        params["inner"] = parse(spec.inner_bfn1)
    return build_family(spec.family, params)


def _source_table(source: FunctionSource) -> TruthTable:
    if source.bfn1 is not None:
        return parse(source.bfn1)
    return _family_table(source.family)


def _source_meta(source: FunctionSource) -> dict:
    if source.bfn1 is not None:
        return {"kind": "bfn1"}
    return {"kind": "family",
            "family": source.family.model_dump(exclude_none=True)}


def _digest(table: TruthTable) -> str:
    return hashlib.sha256(serialize(table)).hexdigest()


def _check_params(req: VerifyRequest) -> dict:
    params: dict = {}
    if req.rho_grid is not None:
        params["rho_grid"] = tuple(req.rho_grid)
    if req.eps_grid is not None:
        params["eps_grid"] = tuple(req.eps_grid)
    if req.friedgut_eps is not None:
        params["friedgut_eps"] = tuple(
            as_fraction(e) for e in req.friedgut_eps)
    return params


def _check_ids(requested: List[str]) -> List[str]:
    if requested == ["all"] or requested == []:
        return all_check_ids()
    for cid in requested:
        get_check(cid)
    return list(requested)


def _analysis_bundle(table: TruthTable, eps: float, include_spectrum: bool,
                     checks: List[str], source_meta: dict) -> dict:
    spec = transform(table)
    profile = build_profile(table)
    ent = build_entropy_report(spec, profile)
    bundle: dict = {
        "schema": "report-v1",
        "metadata": {"n": table.n, "digest": _digest(table),
                     "source": source_meta},
        "degree": degree(spec),
        "influence": profile_to_json(profile),
        "entropy": entropy_report_to_json(ent),
    }
    eps_frac = as_fraction(eps)
    if profile.total > 0:
        junta = junta_set(spec, profile, eps_frac)
        bundle["junta"] = {
            "eps": {"num": junta.eps.numerator, "den": junta.eps.denominator},
            "coords_mask": junta.coords_mask,
            "threshold": junta.threshold,
            "degree_cap": {"num": junta.degree_cap.numerator,
                           "den": junta.degree_cap.denominator},
            "leaked_weight": {
                "num": junta.leaked_weight.numerator,
                "den": junta.leaked_weight.denominator,
                "dec": format(float(junta.leaked_weight), ".12g"),
            },
        }
    else:
        bundle["junta"] = None
    if include_spectrum:
        bundle["spectrum"] = spectrum_to_json(spec)
    if checks:
        bundle["checks"] = {
            cid: run_check(cid, table).to_json() for cid in _check_ids(checks)
        }
    return bundle


def create_app() -> FastAPI:
    app = FastAPI(
        title="boolcube",
        version=__version__,
        description="Exact spectral analysis of Boolean functions",
    )

    @app.get("/healthz")
    def healthz() -> dict:
        return {"status": "ok", "version": __version__}

    @app.get("/v1/checks", response_model=List[CheckInfo])
    def list_checks() -> List[CheckInfo]:
        return [
            CheckInfo(id=c, kind=get_check(c).kind,
                      description=get_check(c).description)
            for c in all_check_ids()
        ]

    @app.post("/v1/construct", response_model=ConstructResponse)
    def construct(req: ConstructRequest) -> ConstructResponse:
        try:
            table = _family_table(req.spec)
        except (ValueError, BFN1Error) as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        return ConstructResponse(
            n=table.n,
            bfn1=serialize(table).decode("ascii"),
            digest=_digest(table),
        )

    @app.post("/v1/analyze", response_model=AnalyzeResponse)
    def analyze(req: AnalyzeRequest) -> AnalyzeResponse:
        try:
            table = _source_table(req.source)
            bundle = _analysis_bundle(table, req.eps, req.include_spectrum,
                                      req.checks, _source_meta(req.source))
        except (ValueError, BFN1Error) as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        return AnalyzeResponse(bundle=bundle)

    @app.post("/v1/verify", response_model=VerifyResponse)
    def verify(req: VerifyRequest) -> VerifyResponse:
        try:
            check_ids = _check_ids(req.checks)
            params = _check_params(req)
            scope = req.scope
            if scope.kind == "function":
                source = FunctionSource(bfn1=scope.bfn1, family=scope.family)
                table = _source_table(source)
                reports = {cid: run_check(cid, table, params)
                           for cid in check_ids}
                failed = any(r.status == "fail" for r in reports.values())
                report = {
                    "schema": "report-v1",
                    "scope": {"kind": "function", "n": table.n,
                              "digest": _digest(table)},
                    "reports": {cid: r.to_json()
                                for cid, r in reports.items()},
                }
                return VerifyResponse(report=report, failed=failed)
            if scope.kind == "exhaustive":
                gen = ExhaustiveGen(scope.n)
            elif scope.kind == "random":
                gen = RandomGen(scope.n, scope.count, scope.seed)
            else:
                fam = scope.family
                params_fam = {
                    k: v for k, v in {
                        "n": fam.n, "m": fam.m, "count": fam.count,
                        "k": fam.k, "mask": fam.mask, "seed": fam.seed,
                        "depth": fam.depth,
                    }.items() if v is not None
                }
                if fam.outer_bfn1 is not None:
                    params_fam["outer"] = parse(fam.outer_bfn1)
                if fam.inner_bfn1 is not None:
                    params_fam["inner"] = parse(fam.inner_bfn1)
                gen = FamilyGen(fam.family, params_fam)
            rep = sweep(check_ids, gen, params=params, parallel=req.parallel,
                        collect_rows=req.include_rows)
            rows = None
            if req.include_rows and rep.rows is not None:
                rows = [list(r) for r in rep.rows]
            return VerifyResponse(report=rep.to_json(), failed=rep.failed,
                                  rows=rows)
        except (ValueError, BFN1Error) as exc:
            raise HTTPException(status_code=422, detail=str(exc))

    @app.post("/v1/search", response_model=SearchResponse)
    def search(req: SearchRequest) -> SearchResponse:
        try:
            s = req.strategy
            if s.kind == "exhaustive":
                strategy = ExhaustiveGen(s.n)
            elif s.kind == "random":
                strategy = RandomGen(s.n, s.count, s.seed)
            else:
                strategy = ComposeGreedyStrategy(depth=s.depth)
            board = tightness_search(req.objective, strategy, req.budget,
                                     parallel=req.parallel)
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        return SearchResponse(report=board.to_json())

    @app.post("/v1/sample", response_model=SampleResponse)
    def sample(req: SampleRequest) -> SampleResponse:
        try:
            table = _source_table(req.source)
            dist = SpectralSampleDist.from_spectrum(transform(table))
            masks = dist.draw(req.seed, req.count)
        except (ValueError, BFN1Error) as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        return SampleResponse(n=table.n, masks=masks)

    return app
