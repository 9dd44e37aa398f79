"""Command-line entry point"""

import argparse
import json
import logging
import sys
from contextlib import contextmanager
from typing import List, Optional

from lsfan import __version__
from lsfan.config import settings
from lsfan.errors import BadCaseError, LsFanError
from lsfan.schemas import (
    ChainsOut,
    CharacterOut,
    DecomposeOut,
    DegreeOut,
    GcdCheckOut,
    GcdMismatchOut,
    LsPathsOut,
    StandardCountOut,
    StraightenOut,
    VerificationRunOut,
    case_out,
    chain_out,
    character_terms,
    monomial_out,
    path_out,
    poset_out,
    to_json,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED_CHECK = 1
EXIT_INVALID = 2

_OVERRIDE_FLAGS = (
    "max_chains",
    "max_linext",
    "max_paths",
    "jobs",
    "mult_one_sign",
    "log_level",
    "lattice_samples",
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lsfan",
        description="LS-path fans, Demazure characters and standard monomials of Schubert varieties.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--type", dest="case_type", help='Cartan type, e.g. "A3"')
    parser.add_argument("--lambda", dest="case_lambda", help='dominant weight, e.g. "0,1,0"')
    parser.add_argument(
        "--tau",
        default="longest",
        help='reduced word such as "2 1", "" for the identity, or "longest" (default)',
    )
    parser.add_argument("--max-chains", type=int, default=None)
    parser.add_argument("--max-linext", type=int, default=None)
    parser.add_argument("--max-paths", type=int, default=None)
    parser.add_argument("--jobs", type=int, default=None, help="worker processes for verify")
    parser.add_argument("--mult-one-sign", choices=("minus", "plus"), default=None)
    parser.add_argument("--lattice-samples", type=int, default=None)
    parser.add_argument(
        "--log-level",
        default=None,
        choices=("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"),
    )

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("poset", help="nodes, covers and bonds of A_tau")
    p.add_argument("--dot", action="store_true", help="emit a DOT digraph instead of JSON")

    sub.add_parser("chains", help="maximal chains with their bonds")

    p = sub.add_parser("lspaths", help="LS-paths of one degree")
    p.add_argument("--degree", type=int, required=True)

    p = sub.add_parser("character", help="Demazure character of V(d lambda)_tau")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--check", action="store_true", help="compare with the LS-path weights")

    p = sub.add_parser("decompose", help="decomposition of an LS-path into degree-one paths")
    p.add_argument("--path", required=True, help='JSON object like {"1": "3/2", "e": "1/2"}')

    p = sub.add_parser("standard-count", help="number of standard monomials of one degree")
    p.add_argument("--degree", type=int, required=True)

    p = sub.add_parser("straighten", help="support of the straightening relation of x_a x_b")
    p.add_argument("--a", required=True, help="degree-one LS-path as JSON")
    p.add_argument("--b", required=True, help="degree-one LS-path as JSON")

    sub.add_parser("degree", help="embedding degree from bonds and from the Hilbert polynomial")
    sub.add_parser("gcd-check", help="gcd independence over all comparable pairs")

    p = sub.add_parser("verify", help="full verification report")
    p.add_argument("--dmax", type=int, required=True)
    p.add_argument("--all-sigma", action="store_true", help="verify every sigma <= tau")
    p.add_argument("--record", action="store_true", help="store the report in the run ledger")

    p = sub.add_parser("history", help="recorded verification runs, newest first")
    p.add_argument("--limit", type=int, default=20)

    sub.add_parser("serve", help="serve the read-only HTTP API")
    return parser


@contextmanager
def _settings_overrides(args: argparse.Namespace):
    """Apply per-invocation flags to the settings, restoring them afterwards."""
    saved = {}
    for field in _OVERRIDE_FLAGS:
        value = getattr(args, field, None)
        if value is not None:
            saved[field] = getattr(settings, field)
            setattr(settings, field, value)
    try:
        yield
    finally:
        for field, value in saved.items():
            setattr(settings, field, value)


def _emit(document) -> None:
    if hasattr(document, "model_dump"):
        document = to_json(document)
    elif isinstance(document, list):
        document = [to_json(d) if hasattr(d, "model_dump") else d for d in document]
    sys.stdout.write(json.dumps(document, sort_keys=True, separators=(",", ":")) + "\n")


def _resolve_case(args: argparse.Namespace):
    from lsfan.services.case_spec import CaseSpec, resolve

    if not args.case_type or args.case_lambda is None:
        raise BadCaseError("--type and --lambda are required for this command")
    return resolve(CaseSpec(type=args.case_type, lambda_=args.case_lambda, tau=args.tau))


def _load_path(poset, text: str):
    from lsfan.services.lspath import parse_path

    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise BadCaseError(f"path is not valid JSON: {e}") from e
    if isinstance(data, dict) and isinstance(data.get("coefficients"), dict):
        data = data["coefficients"]
    if not isinstance(data, dict):
        raise BadCaseError('path must be a JSON object like {"label": "p/q"}')
    return parse_path(poset, data)


# -- commands ----------------------------------------------------------------


def cmd_poset(args) -> int:
    from lsfan.services.bonded_poset import export_dot

    case = _resolve_case(args)
    poset = case.build_poset()
    if args.dot:
        sys.stdout.write(export_dot(poset))
    else:
        _emit(poset_out(case, poset))
    return EXIT_OK


def cmd_chains(args) -> int:
    case = _resolve_case(args)
    poset = case.build_poset()
    chains = poset.chains
    _emit(
        ChainsOut(
            case=case_out(case),
            count=len(chains),
            chains=[chain_out(poset, c) for c in chains],
        )
    )
    return EXIT_OK


def cmd_lspaths(args) -> int:
    from lsfan.services.lspath import enumerate_ls_paths

    case = _resolve_case(args)
    poset = case.build_poset()
    paths = enumerate_ls_paths(poset, args.degree)
    _emit(
        LsPathsOut(
            case=case_out(case),
            degree=args.degree,
            count=len(paths),
            paths=[path_out(poset, a) for a in paths],
        )
    )
    return EXIT_OK


def cmd_character(args) -> int:
    from lsfan.services.demazure import demazure_character
    from lsfan.services.invariants import ls_character
    from lsfan.services.lspath import enumerate_ls_paths

    case = _resolve_case(args)
    ch = demazure_character(case.rs, case.lam, args.degree, case.tau)
    check = None
    if args.check:
        poset = case.build_poset()
        check = ls_character(poset, enumerate_ls_paths(poset, args.degree)) == ch
    _emit(
        CharacterOut(
            case=case_out(case),
            degree=args.degree,
            dimension=ch.dimension(),
            terms=character_terms(ch),
            check=check,
        )
    )
    return EXIT_FAILED_CHECK if check is False else EXIT_OK


def cmd_decompose(args) -> int:
    from lsfan.services.smt import decompose, is_decomposable

    case = _resolve_case(args)
    poset = case.build_poset()
    a = _load_path(poset, args.path)
    factors = decompose(poset, a)
    _emit(
        DecomposeOut(
            path=path_out(poset, a),
            factors=[path_out(poset, f) for f in factors],
            decomposable=is_decomposable(poset, a),
        )
    )
    return EXIT_OK


def cmd_standard_count(args) -> int:
    from lsfan.services.lspath import enumerate_ls_paths
    from lsfan.services.smt import count_standard_monomials

    case = _resolve_case(args)
    poset = case.build_poset()
    count = count_standard_monomials(poset, args.degree)
    paths = len(enumerate_ls_paths(poset, args.degree))
    _emit(
        StandardCountOut(
            case=case_out(case),
            degree=args.degree,
            standard_monomials=count,
            ls_paths=paths,
        )
    )
    return EXIT_OK if count == paths else EXIT_FAILED_CHECK


def cmd_straighten(args) -> int:
    from lsfan.services.smt import Monomial, straightening_support

    case = _resolve_case(args)
    poset = case.build_poset()
    a = _load_path(poset, args.a)
    b = _load_path(poset, args.b)
    terms = straightening_support(poset, a, b)
    _emit(
        StraightenOut(
            monomial=monomial_out(poset, Monomial.of((a, b)), standard=False),
            support=[
                monomial_out(poset, t.monomial, standard=True, guaranteed=t.guaranteed)
                for t in terms
            ],
        )
    )
    return EXIT_OK


def cmd_degree(args) -> int:
    from lsfan.services.invariants import check_degrees

    case = _resolve_case(args)
    by_bonds, by_hilbert = check_degrees(case.build_poset())
    _emit(DegreeOut(degree_by_bonds=by_bonds, degree_by_hilbert=by_hilbert))
    return EXIT_OK


def cmd_gcd_check(args) -> int:
    from lsfan.services.invariants import gcd_battery

    case = _resolve_case(args)
    poset = case.build_poset()
    pairs, mismatches = gcd_battery(poset)
    _emit(
        GcdCheckOut(
            case=case_out(case),
            pairs_checked=pairs,
            mismatches=[
                GcdMismatchOut(**m) for m in mismatches
            ],
            ok=not mismatches,
        )
    )
    return EXIT_FAILED_CHECK if mismatches else EXIT_OK


def cmd_verify(args) -> int:
    from lsfan.services.verification_service import VerificationService

    case = _resolve_case(args)
    if args.dmax < 0:
        raise BadCaseError("--dmax must be nonnegative")
    db = None
    if args.record:
        from lsfan.models.base import SessionLocal, init_db

        init_db()
        db = SessionLocal()
    try:
        service = VerificationService(db=db)
        if args.all_sigma:
            reports = service.verify_all_sigma(case.spec, args.dmax)
            _emit(reports)
        else:
            reports = [service.verify(case.spec, args.dmax)]
            _emit(reports[0])
        if args.record:
            service.record(args.dmax, reports, all_sigma=args.all_sigma)
    finally:
        if db is not None:
            db.close()
    return EXIT_OK if all(r.ok for r in reports) else EXIT_FAILED_CHECK


def cmd_history(args) -> int:
    from lsfan.models.base import SessionLocal, init_db
    from lsfan.services.verification_service import VerificationService

    init_db()
    db = SessionLocal()
    try:
        runs = VerificationService(db=db).history(limit=args.limit)
        _emit([VerificationRunOut.model_validate(run) for run in runs])
    finally:
        db.close()
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    uvicorn.run(
        "lsfan.server:app",
        host=settings.host,
        port=settings.port,
        reload=False,
        log_level=settings.log_level.lower(),
    )
    return EXIT_OK


COMMANDS = {
    "poset": cmd_poset,
    "chains": cmd_chains,
    "lspaths": cmd_lspaths,
    "character": cmd_character,
    "decompose": cmd_decompose,
    "standard-count": cmd_standard_count,
    "straighten": cmd_straighten,
    "degree": cmd_degree,
    "gcd-check": cmd_gcd_check,
    "verify": cmd_verify,
    "history": cmd_history,
    "serve": cmd_serve,
}


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    with _settings_overrides(args):
        logging.basicConfig(
            level=getattr(logging, settings.log_level.upper()),
            format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
            stream=sys.stderr,
        )
        try:
            return COMMANDS[args.command](args)
        except LsFanError as e:
            logger.debug(f"{args.command} failed with {e.code}")
            sys.stderr.write(json.dumps(e.to_dict(), sort_keys=True) + "\n")
            return e.exit_code
        except ValueError as e:
            sys.stderr.write(json.dumps({"error": "E_BAD_INPUT", "message": str(e)}) + "\n")
            return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
