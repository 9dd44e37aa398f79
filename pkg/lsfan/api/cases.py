"""Read-only case endpoints"""

from typing import List

from fastapi import APIRouter, Depends, HTTPException, Query
from sqlalchemy.orm import Session

from lsfan.errors import ConsistencyError, InvalidInputError, LsFanError, ResourceLimitError
from lsfan.models.base import get_db
from lsfan.schemas import (
    CaseReport,
    CharacterOut,
    DegreeOut,
    LsPathsOut,
    PosetOut,
    VerificationRunOut,
    case_out,
    character_terms,
    path_out,
    poset_out,
)
from lsfan.services.case_spec import CaseSpec, resolve
from lsfan.services.demazure import demazure_character
from lsfan.services.invariants import check_degrees
from lsfan.services.lspath import enumerate_ls_paths
from lsfan.services.verification_service import VerificationService

router = APIRouter(prefix="/api/cases", tags=["cases"])

# Keep HTTP verification runs small; the CLI has no such limit.
MAX_HTTP_DEGREE = 4


def _http_error(e: LsFanError) -> HTTPException:
    if isinstance(e, InvalidInputError):
        status = 422
    elif isinstance(e, ResourceLimitError):
        status = 413
    elif isinstance(e, ConsistencyError):
        status = 500
    else:
        status = 400
    return HTTPException(status_code=status, detail=e.to_dict())


def _spec(type: str, lambda_: str, tau: str) -> CaseSpec:
    return CaseSpec(type=type, lambda_=lambda_, tau=tau)


@router.get("/poset", response_model=PosetOut, response_model_by_alias=True)
def get_poset(
    type: str,
    lambda_: str = Query(..., alias="lambda"),
    tau: str = "longest",
):
    """Nodes, covers and bonds of A_tau"""
    try:
        case = resolve(_spec(type, lambda_, tau))
        return poset_out(case, case.build_poset())
    except LsFanError as e:
        raise _http_error(e)


@router.get("/lspaths", response_model=LsPathsOut, response_model_by_alias=True)
def get_lspaths(
    type: str,
    degree: int = Query(..., ge=0, le=MAX_HTTP_DEGREE),
    lambda_: str = Query(..., alias="lambda"),
    tau: str = "longest",
):
    """LS-paths of one degree"""
    try:
        case = resolve(_spec(type, lambda_, tau))
        poset = case.build_poset()
        paths = enumerate_ls_paths(poset, degree)
        return LsPathsOut(
            case=case_out(case),
            degree=degree,
            count=len(paths),
            paths=[path_out(poset, a) for a in paths],
        )
    except LsFanError as e:
        raise _http_error(e)


@router.get("/character", response_model=CharacterOut, response_model_by_alias=True)
def get_character(
    type: str,
    degree: int = Query(..., ge=0, le=MAX_HTTP_DEGREE),
    lambda_: str = Query(..., alias="lambda"),
    tau: str = "longest",
):
    """Demazure character of V(d lambda)_tau"""
    try:
        case = resolve(_spec(type, lambda_, tau))
        ch = demazure_character(case.rs, case.lam, degree, case.tau)
        return CharacterOut(
            case=case_out(case),
            degree=degree,
            dimension=ch.dimension(),
            terms=character_terms(ch),
        )
    except LsFanError as e:
        raise _http_error(e)


@router.get("/degree", response_model=DegreeOut)
def get_degree(type: str, lambda_: str = Query(..., alias="lambda"), tau: str = "longest"):
    """Embedding degree computed from bonds and from the Hilbert polynomial"""
    try:
        case = resolve(_spec(type, lambda_, tau))
        by_bonds, by_hilbert = check_degrees(case.build_poset())
        return DegreeOut(degree_by_bonds=by_bonds, degree_by_hilbert=by_hilbert)
    except LsFanError as e:
        raise _http_error(e)


@router.get("/verify", response_model=CaseReport, response_model_by_alias=True)
def get_verify(
    type: str,
    dmax: int = Query(2, ge=0, le=MAX_HTTP_DEGREE),
    lambda_: str = Query(..., alias="lambda"),
    tau: str = "longest",
):
    """Full verification report (single process)"""
    try:
        return VerificationService(jobs=1).verify(_spec(type, lambda_, tau), dmax)
    except LsFanError as e:
        raise _http_error(e)


@router.get("/history", response_model=List[VerificationRunOut], response_model_by_alias=True)
def get_history(limit: int = Query(20, ge=1, le=500), db: Session = Depends(get_db)):
    """Recorded verification runs, newest first"""
    return VerificationService(db=db).history(limit=limit)
