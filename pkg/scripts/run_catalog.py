"""Run the verification battery over the acceptance catalog.

Every case is verified for each sigma <= tau. Prints one JSON line per case
with the verdict, and exits non-zero if any case fails. ``--counts-only``
checks just ``|LS+_d| = dim V(d lambda)_sigma``, which is the timed run.

Usage:
  python scripts/run_catalog.py --dmax 4 --jobs 4
  python scripts/run_catalog.py --dmax 4 --counts-only
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path

REPO_ROOT = Path(__file__).resolve().parents[1]
if str(REPO_ROOT) not in sys.path:
    sys.path.insert(0, str(REPO_ROOT))


def main() -> int:
    ap = argparse.ArgumentParser(description="Verify every case of the acceptance catalog.")
    ap.add_argument("--dmax", type=int, default=4)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--lattice-samples", type=int, default=None)
    ap.add_argument("--top-only", action="store_true", help="skip the sigma < tau sub-cases")
    ap.add_argument(
        "--counts-only",
        action="store_true",
        help="only compare |LS+_d| with the Demazure dimension for every sigma <= tau",
    )
    args = ap.parse_args()

    logging.basicConfig(
        level=logging.WARNING,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )

    from lsfan.config import settings
    from lsfan.services.invariants import catalog_specs
    from lsfan.services.verification_service import VerificationService

    if args.lattice_samples is not None:
        settings.lattice_samples = args.lattice_samples

    service = VerificationService(jobs=args.jobs)
    failed = 0
    started = time.perf_counter()
    for spec in catalog_specs():
        if args.counts_only:
            results = service.counts_all_sigma(spec, args.dmax)
            bad = [label for label, oks in results if not all(oks)]
            failed += len(bad)
            summary = {
                "type": spec.type,
                "lambda": spec.lambda_,
                "sub_cases": len(results),
                "failed": bad,
            }
            print(json.dumps(summary, sort_keys=True))
            continue

        if args.top_only:
            reports = [service.verify(spec, args.dmax)]
        else:
            reports = service.verify_all_sigma(spec, args.dmax)
        bad = [r for r in reports if not r.ok]
        failed += len(bad)
        summary = {
            "type": spec.type,
            "lambda": spec.lambda_,
            "sub_cases": len(reports),
            "failed": [r.case.tau_label for r in bad],
            "chains": reports[-1].chains,
            "degree": reports[-1].degree_by_bonds,
        }
        print(json.dumps(summary, sort_keys=True))

    print(f"{failed} failing case(s) in {time.perf_counter() - started:.1f}s", file=sys.stderr)
    return 1 if failed else 0


if __name__ == "__main__":
    raise SystemExit(main())
