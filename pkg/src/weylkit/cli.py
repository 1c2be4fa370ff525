"""Command-line interface.

Every subcommand builds the same request model the HTTP API uses and
either calls the handler in-process (default) or POSTs it to a running
server (--server URL).  Human-readable tables go to stdout; --json PATH
writes the full response in canonical JSON.

Exit codes: 0 success, 2 usage, 3 parse/document problem, 4 invalid
input (domain error), 5 a check or scan reported failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Type

from . import documents, schemas, service
from .errors import (DocumentError, DuplicateTerm, ParseError, RangeError,
                     WeylkitError)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_INVALID = 4
EXIT_FAILED = 5

_PARSE_ERRORS = (ParseError, RangeError, DuplicateTerm, DocumentError)
_PARSE_ERROR_NAMES = {cls.__name__ for cls in _PARSE_ERRORS}

_HANDLERS = {
    "/analyze": service.handle_analyze,
    "/snp": service.handle_snp,
    "/structure": service.handle_structure,
    "/classify4d": service.handle_classify4d,
    "/derivations": service.handle_derivations,
    "/gt/parse": service.handle_gt_parse,
    "/extend": service.handle_extend,
    "/scan": service.handle_scan,
}


class _RemoteError(Exception):
    def __init__(self, error_class: str, message: str):
        super().__init__(message)
        self.error_class = error_class


def _call(server: Optional[str], path: str, request,
          response_cls: Type[schemas._Model]):
    if server is None:
        return _HANDLERS[path](request)
    import httpx
    url = server.rstrip("/") + path
    reply = httpx.post(url, json=request.model_dump(by_alias=True),
                       timeout=120.0)
    if reply.status_code == 400:
        body = reply.json()
        raise _RemoteError(body.get("error_class", "WeylkitError"),
                           body.get("message", "request rejected"))
    reply.raise_for_status()
    return response_cls.model_validate(reply.json())


def _read_document(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc}") from None
    return documents.loads(text)


def _write_json(path: Optional[str], model) -> None:
    if path is None:
        return
    payload = model.model_dump(by_alias=True)
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _split_field(raw: str) -> list:
    return [part.strip() for part in raw.split(",")]


def _yesno(value) -> str:
    if value is None:
        return "-"
    return "yes" if value else "no"


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_analyze(args) -> int:
    req = schemas.AnalyzeRequest(document=_read_document(args.document))
    resp = _call(args.server, "/analyze", req, schemas.AnalyzeResponse)
    print(f"dimension          {resp.dim}")
    print(f"valid              {_yesno(resp.valid)}")
    if resp.first_violation:
        print(f"first violation    {resp.first_violation}")
    if resp.valid:
        print(f"unimodular         {_yesno(resp.unimodular)}")
        print(f"solvable           {_yesno(resp.solvable)}")
        print(f"nilpotent          {_yesno(resp.nilpotent)}")
        if resp.nilpotency_class is not None:
            print(f"nilpotency class   {resp.nilpotency_class}")
        print(f"center dimension   {resp.center_dim}")
        print("derived dims       "
              + " -> ".join(str(d) for d in resp.derived_dims))
        print("lower central dims "
              + " -> ".join(str(d) for d in resp.lower_central_dims))
        if resp.vergne_type is not None:
            print("type               "
                  + "(" + ", ".join(str(d) for d in resp.vergne_type) + ")")
        if resp.metabelian_signature is not None:
            sig = resp.metabelian_signature
            print(f"metabelian         ({sig[0]}, {sig[1]})")
    _write_json(args.json, resp)
    return EXIT_OK if resp.valid else EXIT_INVALID


def _cmd_snp(args) -> int:
    req = schemas.SnpRequest(document=_read_document(args.document),
                             w1_samples=args.w1_samples, seed=args.seed)
    resp = _call(args.server, "/snp", req, schemas.SnpResponse)
    print(f"SNP space dimension {resp.solution_dim}")
    for vec in resp.solution_basis:
        print("  basis [" + ", ".join(vec) + "]")
    print(f"central only        {_yesno(resp.is_central_only)}")
    print(f"parallel verified   {_yesno(resp.parallel_verified)}")
    print(f"W2 verified         {_yesno(resp.w2_verified)}")
    print(f"unimodular          {_yesno(resp.unimodular)}")
    if resp.w1_max_sampled is not None:
        print(f"max sampled curvature {resp.w1_max_sampled:.6e}")
    _write_json(args.json, resp)
    return EXIT_OK


def _cmd_structure(args) -> int:
    req = schemas.StructureRequest(document=_read_document(args.document),
                                   field=_split_field(args.field))
    resp = _call(args.server, "/structure", req, schemas.StructureResponse)
    rows = [("orthogonal complement is an ideal", resp.ideal_ok),
            ("complement is solvable", resp.solvable_ok),
            ("complement is unimodular", resp.unimodular_ok),
            ("field acts skewly on complement", resp.skew_ok),
            ("derived algebra is recovered", resp.derived_match_ok)]
    for text, ok in rows:
        print(f"{'pass' if ok else 'FAIL'}  {text}")
    print(f"overall: {'pass' if resp.ok else 'FAIL'}")
    _write_json(args.json, resp)
    return EXIT_OK if resp.ok else EXIT_FAILED


def _cmd_classify4d(args) -> int:
    req = schemas.Classify4dRequest(trials=args.trials, seed=args.seed,
                                    perturb_family=args.perturb)
    resp = _call(args.server, "/classify4d", req, schemas.Classify4dResponse)
    print(f"{'family':<16} {'form':>4} {'draws':>6} {'mismatches':>10}")
    for fam in resp.families:
        print(f"{fam.family:<16} {fam.form:>4} {fam.draws:>6} "
              f"{fam.mismatches:>10}")
    print(f"total draws {resp.total_draws}, mismatches {resp.mismatch_count}")
    for entry in resp.mismatches[:20]:
        print(f"  mismatch: {entry.family} form {entry.form} {entry.kind} "
              f"expected dim {entry.expected_dim} computed "
              f"{entry.computed_dim}")
    _write_json(args.json, resp)
    return EXIT_OK if resp.ok else EXIT_FAILED


def _cmd_derivations(args) -> int:
    req = schemas.DerivationsRequest(document=_read_document(args.document),
                                     skew=args.skew)
    resp = _call(args.server, "/derivations", req, schemas.DerivationsResponse)
    label = "skew derivation" if resp.skew else "derivation"
    print(f"{label} space dimension {resp.basis_dim}")
    for idx, mat in enumerate(resp.basis):
        print(f"  basis element {idx + 1}:")
        for row in mat:
            print("    [" + ", ".join(row) + "]")
    _write_json(args.json, resp)
    return EXIT_OK


def _cmd_gt_parse(args) -> int:
    req = schemas.GtParseRequest(text=args.text, m=args.m, n=args.n)
    resp = _call(args.server, "/gt/parse", req, schemas.GtParseResponse)
    print(f"terms              {len(resp.terms)}")
    print(f"canonical text     {resp.text}")
    print(f"algebra dimension  {resp.dim}")
    print(f"surjective         {_yesno(resp.surjective)}")
    if resp.metabelian_signature is not None:
        sig = resp.metabelian_signature
        print(f"metabelian         ({sig[0]}, {sig[1]})")
    _write_json(args.json, resp)
    return EXIT_OK


def _read_matrix(path: str) -> list:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON in {path}: {exc}") from None
    if not isinstance(raw, list) or \
            any(not isinstance(row, list) for row in raw):
        raise DocumentError(f"{path} must hold a JSON matrix (list of rows)")
    return [[str(v) if not isinstance(v, str) else v for v in row]
            for row in raw]


def _cmd_extend(args) -> int:
    req = schemas.ExtendRequest(document=_read_document(args.document),
                                derivation=_read_matrix(args.derivation),
                                a_dim=args.adim)
    resp = _call(args.server, "/extend", req, schemas.ExtendResponse)
    print(f"extended dimension   {resp.dim}")
    print(f"SNP space dimension  {resp.snp_dim}")
    print(f"complement dimension {resp.complement_dim}")
    print(f"complement contained {_yesno(resp.complement_contained)}")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(documents.dumps(resp.document))
        print(f"wrote {args.out}")
    _write_json(args.json, resp)
    return EXIT_OK


def _cmd_scan(args) -> int:
    gammas = [float(part) for part in args.grid.split(",") if part.strip()]
    req = schemas.ScanRequest(document=_read_document(args.document),
                              field=_split_field(args.field), gammas=gammas,
                              samples=args.samples, seed=args.seed,
                              tolerance=args.tolerance)
    resp = _call(args.server, "/scan", req, schemas.ScanResponse)
    print(f"{'gamma':>10} {'max curvature':>15} {'positive':>9} verdict")
    for entry in resp.entries:
        print(f"{entry.gamma:>10.4g} {entry.max_k:>15.6e} "
              f"{entry.positive_count:>9} {entry.verdict}")
    if resp.gamma0_estimate is not None:
        print(f"first nonpositive stretch: {resp.gamma0_estimate:g}")
    else:
        print("no sampled stretch was nonpositive")
    _write_json(args.json, resp)
    return EXIT_OK if resp.gamma0_estimate is not None else EXIT_FAILED


def _cmd_serve(args) -> int:
    import uvicorn
    uvicorn.run(service.create_app(), host=args.host, port=args.port,
                log_level="warning")
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="weylkit",
        description="Invariant Weyl connections on metric Lie algebras")
    parser.add_argument("--server", metavar="URL", default=None,
                        help="send the request to a running server instead "
                             "of computing in-process")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_json(p):
        p.add_argument("--json", metavar="PATH", default=None,
                       help="write the full response as canonical JSON")

    p = sub.add_parser("analyze", help="validate and profile an algebra")
    p.add_argument("document", help="algebra document (JSON)")
    add_json(p)
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("snp", help="compute the space of SNP fields")
    p.add_argument("document")
    p.add_argument("--w1-samples", type=int, default=0, dest="w1_samples",
                   help="sample this many planes per basis field")
    p.add_argument("--seed", type=int, default=0)
    add_json(p)
    p.set_defaults(func=_cmd_snp)

    p = sub.add_parser("structure",
                       help="verify the orthogonal-complement structure "
                            "for a field")
    p.add_argument("document")
    p.add_argument("--field", required=True,
                   help="comma-separated rational coordinates")
    add_json(p)
    p.set_defaults(func=_cmd_structure)

    p = sub.add_parser("classify4d",
                       help="sweep the 4-dimensional catalog against its "
                            "predicted SNP spaces")
    p.add_argument("--trials", type=int, default=25)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--perturb", metavar="FAMILY", default=None,
                   help="negate one bracket of this family as a negative "
                        "control")
    add_json(p)
    p.set_defaults(func=_cmd_classify4d)

    p = sub.add_parser("derivations", help="basis of the derivation algebra")
    p.add_argument("document")
    p.add_argument("--skew", action="store_true",
                   help="restrict to derivations skew for the document's "
                        "gram matrix")
    add_json(p)
    p.set_defaults(func=_cmd_derivations)

    p = sub.add_parser("gt", help="digit-encoded two-step tensors")
    gt_sub = p.add_subparsers(dest="gt_command", required=True)
    q = gt_sub.add_parser("parse", help="parse and profile a tensor")
    q.add_argument("text", help="whitespace-separated digit triples")
    q.add_argument("--m", type=int, required=True, help="generator count")
    q.add_argument("--n", type=int, required=True, help="center dimension")
    add_json(q)
    q.set_defaults(func=_cmd_gt_parse)

    p = sub.add_parser("extend",
                       help="extend a metric algebra by an abelian "
                            "complement acting through a skew derivation")
    p.add_argument("document", help="base algebra document with gram")
    p.add_argument("--derivation", required=True, metavar="PATH",
                   help="JSON matrix of rationals")
    p.add_argument("--adim", type=int, default=1,
                   help="dimension of the abelian complement")
    p.add_argument("--out", metavar="PATH", default=None,
                   help="write the extended algebra document here")
    add_json(p)
    p.set_defaults(func=_cmd_extend)

    p = sub.add_parser("scan",
                       help="sample Weyl sectional curvature across "
                            "stretches of a field")
    p.add_argument("document")
    p.add_argument("--field", required=True,
                   help="comma-separated rational coordinates")
    p.add_argument("--grid", default="1,10,100",
                   help="comma-separated stretch factors")
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tolerance", type=float, default=1e-9)
    add_json(p)
    p.set_defaults(func=_cmd_scan)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _PARSE_ERRORS as exc:
        print(f"error ({type(exc).__name__}): {exc}", file=sys.stderr)
        return EXIT_PARSE
    except _RemoteError as exc:
        print(f"error ({exc.error_class}): {exc}", file=sys.stderr)
        if exc.error_class in _PARSE_ERROR_NAMES:
            return EXIT_PARSE
        return EXIT_INVALID
    except WeylkitError as exc:
        print(f"error ({type(exc).__name__}): {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ValueError as exc:
        print(f"error (ValueError): {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
