"""Verification orchestration: worker pool, sub-cases and the run ledger"""

import json
import logging
from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional, Tuple

from sqlalchemy.orm import Session

from lsfan.config import settings
from lsfan.models import VerificationRun
from lsfan.schemas import CaseReport, DegreeRow, to_json
from lsfan.services.bonded_poset import restrict
from lsfan.services.case_spec import CaseSpec, ResolvedCase, resolve
from lsfan.services.invariants import degree_row, run_case, verify_cardinality

logger = logging.getLogger(__name__)

# Settings a worker process needs to reproduce the parent's computation.
OVERRIDABLE = (
    "max_chains",
    "max_linext",
    "max_paths",
    "mult_one_sign",
    "lattice_samples",
    "random_seed",
)


def current_overrides() -> dict:
    return {name: getattr(settings, name) for name in OVERRIDABLE}


def _apply_overrides(overrides: dict) -> None:
    for name, value in overrides.items():
        setattr(settings, name, value)


def _degree_row_job(spec: dict, d: int, overrides: dict) -> dict:
    _apply_overrides(overrides)
    case = resolve(CaseSpec(**spec))
    return degree_row(case.build_poset(), d).model_dump()


def _case_job(spec: dict, d_max: int, overrides: dict) -> dict:
    _apply_overrides(overrides)
    return run_case(CaseSpec(**spec), d_max).model_dump()


class VerificationService:
    """Runs the verification battery, optionally in parallel, and records runs"""

    def __init__(self, db: Optional[Session] = None, jobs: Optional[int] = None):
        self.db = db
        self.jobs = max(1, settings.jobs if jobs is None else jobs)

    # -- verification ------------------------------------------------------

    def degree_rows(self, case: ResolvedCase, d_max: int) -> List[DegreeRow]:
        """Per-degree rows, merged in degree order whatever the worker count."""
        if self.jobs == 1 or d_max == 0:
            poset = case.build_poset()
            return [degree_row(poset, d) for d in range(d_max + 1)]
        spec = case.spec.model_dump(by_alias=True)
        overrides = current_overrides()
        with ProcessPoolExecutor(max_workers=self.jobs) as executor:
            futures = [
                executor.submit(_degree_row_job, spec, d, overrides) for d in range(d_max + 1)
            ]
            return [DegreeRow(**future.result()) for future in futures]

    def verify(self, spec: CaseSpec, d_max: int) -> CaseReport:
        case = resolve(spec)
        logger.info(f"Verifying {case.kind} lambda={case.lam.coords} tau={case.tau.label()}")
        return run_case(case, d_max, rows=self.degree_rows(case, d_max))

    def verify_all_sigma(self, spec: CaseSpec, d_max: int) -> List[CaseReport]:
        """The battery for every ``sigma <= tau``, in node-id order.

        Each sub-case is built directly and compared with the restriction of
        ``A_tau`` to ``sigma``.
        """
        case = resolve(spec)
        poset = case.build_poset()
        sub_cases = [case.with_tau(node.element) for node in poset.nodes]

        if self.jobs == 1:
            reports = [run_case(sub, d_max) for sub in sub_cases]
        else:
            overrides = current_overrides()
            with ProcessPoolExecutor(max_workers=self.jobs) as executor:
                futures = [
                    executor.submit(_case_job, sub.spec.model_dump(by_alias=True), d_max, overrides)
                    for sub in sub_cases
                ]
                reports = [CaseReport(**future.result()) for future in futures]

        for node, sub, report in zip(poset.nodes, sub_cases, reports):
            same = restrict(poset, node.id).signature() == sub.build_poset().signature()
            report.restriction_ok = same
            if not same:
                report.failures.append(f"restriction of A_tau to {node.label} differs from A_sigma")
                report.ok = False
                logger.warning(f"Restriction to {node.label} differs from the direct build")
        return reports

    def counts_all_sigma(self, spec: CaseSpec, d_max: int) -> List[Tuple[str, List[bool]]]:
        """``|LS+_d| = dim V(d lambda)_sigma`` for ``d <= d_max`` and every ``sigma <= tau``.

        Only the cardinality check runs, so a whole catalog stays quick.
        """
        case = resolve(spec)
        out = []
        for node in case.build_poset().nodes:
            sub = case.with_tau(node.element).build_poset()
            out.append((node.label, verify_cardinality(sub, d_max)))
        return out

    # -- run ledger --------------------------------------------------------

    def record(
        self, d_max: int, reports: List[CaseReport], all_sigma: bool = False
    ) -> VerificationRun:
        """Persist a run; the report column holds the JSON document that was printed.

        ``all_sigma`` runs print a list even when tau is the identity.
        """
        if self.db is None:
            raise RuntimeError("recording needs a database session")
        case = reports[-1].case  # tau itself is the last sub-case
        document = [to_json(r) for r in reports] if all_sigma else to_json(reports[0])
        run = VerificationRun(
            case_type=case.type,
            lambda_=",".join(str(c) for c in case.lambda_),
            tau=" ".join(str(i) for i in case.tau),
            d_max=d_max,
            ok=all(r.ok for r in reports),
            report=json.dumps(document, sort_keys=True, separators=(",", ":")),
        )
        self.db.add(run)
        self.db.commit()
        self.db.refresh(run)
        logger.info(f"Recorded verification run {run.id} (ok={run.ok})")
        return run

    def history(self, limit: int = 20) -> List[VerificationRun]:
        if self.db is None:
            raise RuntimeError("history needs a database session")
        return (
            self.db.query(VerificationRun)
            .order_by(VerificationRun.id.desc())
            .limit(limit)
            .all()
        )
