"""Service layer: plain handler functions plus the FastAPI wrapper.

Handlers map request models to response models and raise domain errors;
the HTTP layer turns any WeylkitError into a 400 with the error class
name, so the CLI behaves identically in-process and over the wire.
"""

from __future__ import annotations

import warnings
from fractions import Fraction
from typing import Dict, List

from . import __version__ as _version
from . import catalog, constructors, documents, lie, weyl
from .errors import DocumentError, InadmissibleParams, WeylkitError
from .lie import LieAlgebra
from .metric import InnerProduct, MetricLieAlgebra
from .schemas import (SCHEMA_VERSION, AnalyzeRequest, AnalyzeResponse,
                      Classify4dRequest, Classify4dResponse,
                      DerivationsRequest, DerivationsResponse, ErrorResponse,
                      ExtendRequest, ExtendResponse, FamilySummary,
                      GtParseRequest, GtParseResponse, HealthResponse,
                      ScanEntryModel, ScanRequest, ScanResponse, SnpRequest,
                      SnpResponse, StructureRequest, StructureResponse,
                      SweepEntryModel)


def _load_document(doc: dict):
    return documents.from_document(doc)


def _require_metric(doc: dict) -> MetricLieAlgebra:
    alg, inner = _load_document(doc)
    if inner is None:
        raise DocumentError("this operation needs a 'gram' entry in the "
                            "document")
    return MetricLieAlgebra(algebra=alg, metric=inner)


def _parse_field(coords: List[str], dim: int) -> List[Fraction]:
    if len(coords) != dim:
        raise DocumentError(f"field needs {dim} coordinates, got "
                            f"{len(coords)}")
    return [documents.parse_rational(v, f"field[{i}]")
            for i, v in enumerate(coords)]


def _fmt_vec(v) -> List[str]:
    return [str(Fraction(x)) for x in v]


def handle_health() -> HealthResponse:
    return HealthResponse(status="ok", name="weylkit", version=_version,
                          schema_version=SCHEMA_VERSION)


def handle_analyze(req: AnalyzeRequest) -> AnalyzeResponse:
    alg, inner = _load_document(req.document)
    report = lie.validate(alg)
    first = None
    if report.first_violation is not None:
        labels = alg.labels or tuple(f"e{i + 1}" for i in range(alg.dim))
        names = ",".join(labels[i] for i in report.first_violation)
        kind = "antisymmetry" if not report.antisymmetry_ok else "jacobi"
        first = f"{kind}({names})"
    base = dict(dim=alg.dim,
                labels=list(alg.labels) if alg.labels else None,
                valid=report.ok, antisymmetry_ok=report.antisymmetry_ok,
                jacobi_ok=report.jacobi_ok, first_violation=first,
                has_gram=inner is not None)
    if not report.ok:
        return AnalyzeResponse(**base)
    nilp = lie.is_nilpotent(alg)
    meta = lie.metabelian_signature(alg)
    return AnalyzeResponse(
        **base,
        unimodular=lie.is_unimodular(alg),
        solvable=lie.is_solvable(alg),
        nilpotent=nilp,
        nilpotency_class=lie.nilpotency_class(alg) if nilp else None,
        center_dim=lie.center(alg).dim,
        derived_dims=[s.dim for s in lie.derived_series(alg)],
        lower_central_dims=[s.dim for s in lie.lower_central_series(alg)],
        vergne_type=list(lie.vergne_type(alg)) if nilp else None,
        metabelian_signature=list(meta) if meta is not None else None)


def handle_snp(req: SnpRequest) -> SnpResponse:
    m = _require_metric(req.document)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        report = weyl.snp_space(m, w1_samples=req.w1_samples, seed=req.seed)
    return SnpResponse(
        dim=m.dim,
        solution_dim=report.solution_space.dim,
        solution_basis=[_fmt_vec(b) for b in report.solution_space.basis],
        is_central_only=report.is_central_only,
        parallel_verified=report.parallel_verified,
        w2_verified=report.w2_verified,
        unimodular=report.unimodular,
        w1_max_sampled=report.w1_max_sampled)


def handle_structure(req: StructureRequest) -> StructureResponse:
    m = _require_metric(req.document)
    field = _parse_field(req.field_coords, m.dim)
    report = weyl.verify_structure(m, field)
    return StructureResponse(ideal_ok=report.ideal_ok,
                             solvable_ok=report.solvable_ok,
                             unimodular_ok=report.unimodular_ok,
                             skew_ok=report.skew_ok,
                             derived_match_ok=report.derived_match_ok,
                             ok=report.ok)


def handle_classify4d(req: Classify4dRequest) -> Classify4dResponse:
    report = catalog.verify_classification(trials=req.trials, seed=req.seed,
                                           perturb_family=req.perturb_family)
    groups: Dict[tuple, List] = {}
    for entry in report.entries:
        groups.setdefault((entry.family, entry.form), []).append(entry)
    summaries = [FamilySummary(family=fam, form=form, draws=len(entries),
                               mismatches=sum(1 for e in entries
                                              if not e.match))
                 for (fam, form), entries in groups.items()]
    mismatches = [SweepEntryModel(family=e.family, form=e.form, kind=e.kind,
                                  params=dict(e.params),
                                  expected_dim=e.expected_dim,
                                  computed_dim=e.computed_dim, match=e.match,
                                  valid=e.valid)
                  for e in report.entries if not e.match]
    return Classify4dResponse(trials=report.trials, seed=report.seed,
                              perturb_family=report.perturb_family,
                              total_draws=len(report.entries),
                              mismatch_count=report.mismatch_count,
                              ok=report.ok, families=summaries,
                              mismatches=mismatches)


def handle_derivations(req: DerivationsRequest) -> DerivationsResponse:
    alg, inner = _load_document(req.document)
    if req.skew:
        if inner is None:
            raise DocumentError("skew derivations need a 'gram' entry in "
                                "the document")
        basis = constructors.skew_derivations(alg, inner)
    else:
        basis = constructors.derivations(alg)
    return DerivationsResponse(
        dim=alg.dim, skew=req.skew, basis_dim=len(basis),
        basis=[[_fmt_vec(row) for row in mat] for mat in basis])


def handle_gt_parse(req: GtParseRequest) -> GtParseResponse:
    tensor = constructors.parse_gt_tensor(req.text, req.m, req.n)
    alg = constructors.gt_algebra(tensor)
    meta = lie.metabelian_signature(alg)
    return GtParseResponse(
        m=tensor.m, n=tensor.n,
        terms=[list(t) for t in tensor.terms],
        text=tensor.text(),
        surjective=constructors.gt_surjective(tensor),
        dim=alg.dim,
        metabelian_signature=list(meta) if meta is not None else None)


def handle_extend(req: ExtendRequest) -> ExtendResponse:
    base = _require_metric(req.document)
    n = base.dim
    deriv = [[documents.parse_rational(v, f"derivation[{i}][{j}]")
              for j, v in enumerate(row)] for i, row in enumerate(req.derivation)]
    if len(deriv) != n or any(len(row) != n for row in deriv):
        raise DocumentError(f"derivation must be a {n}x{n} matrix")
    ext = constructors.build_snp_extension(base.algebra, base.metric, deriv,
                                           a_dim=req.a_dim)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        report = weyl.snp_space(ext)
    contained = all(
        report.solution_space.contains_vector(ext.algebra.basis_vector(n + k))
        for k in range(req.a_dim))
    return ExtendResponse(document=documents.to_document(ext), dim=ext.dim,
                          snp_dim=report.solution_space.dim,
                          complement_dim=req.a_dim,
                          complement_contained=contained)


def handle_scan(req: ScanRequest) -> ScanResponse:
    m = _require_metric(req.document)
    field = _parse_field(req.field_coords, m.dim)
    scan = weyl.stretch_scan(m, field, req.gammas, samples=req.samples,
                             seed=req.seed, tolerance=req.tolerance)
    return ScanResponse(
        field_coords=_fmt_vec(scan.field), samples=scan.samples,
        seed=scan.seed, tolerance=scan.tolerance,
        gamma0_estimate=scan.gamma0_estimate,
        entries=[ScanEntryModel(gamma=e.gamma, max_k=e.max_k,
                                positive_count=e.positive_count,
                                verdict=e.verdict) for e in scan.entries])


# ---------------------------------------------------------------------------
# FastAPI wrapper
# ---------------------------------------------------------------------------

def create_app():
    from fastapi import FastAPI, Request
    from fastapi.responses import JSONResponse

    app = FastAPI(title="weylkit", version=_version)

    @app.exception_handler(WeylkitError)
    async def _domain_error(request: Request, exc: WeylkitError):
        details = None
        if isinstance(exc, InadmissibleParams):
            details = list(exc.violations)
        payload = ErrorResponse(error_class=type(exc).__name__,
                                message=str(exc), details=details)
        return JSONResponse(status_code=400,
                            content=payload.model_dump(exclude_none=True))

    @app.exception_handler(ValueError)
    async def _value_error(request: Request, exc: ValueError):
        payload = ErrorResponse(error_class="ValueError", message=str(exc))
        return JSONResponse(status_code=400,
                            content=payload.model_dump(exclude_none=True))

    @app.get("/health", response_model=HealthResponse)
    async def health():
        return handle_health()

    @app.post("/analyze", response_model=AnalyzeResponse)
    async def analyze(req: AnalyzeRequest):
        return handle_analyze(req)

    @app.post("/snp", response_model=SnpResponse)
    async def snp(req: SnpRequest):
        return handle_snp(req)

    @app.post("/structure", response_model=StructureResponse)
    async def structure(req: StructureRequest):
        return handle_structure(req)

    @app.post("/classify4d", response_model=Classify4dResponse)
    async def classify4d(req: Classify4dRequest):
        return handle_classify4d(req)

    @app.post("/derivations", response_model=DerivationsResponse)
    async def derivations(req: DerivationsRequest):
        return handle_derivations(req)

    @app.post("/gt/parse", response_model=GtParseResponse)
    async def gt_parse(req: GtParseRequest):
        return handle_gt_parse(req)

    @app.post("/extend", response_model=ExtendResponse)
    async def extend(req: ExtendRequest):
        return handle_extend(req)

    @app.post("/scan", response_model=ScanResponse)
    async def scan(req: ScanRequest):
        return handle_scan(req)

    return app
