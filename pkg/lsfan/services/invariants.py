"""Cross-validation of the LS-path fan against independent oracles.

Every identity is checked with exact arithmetic: path counts and weights
against Demazure characters, the embedding degree from bonds against the
Hilbert polynomial, gcd independence over all chains, the closed-form lattice
test against ``B_C``, and decomposition against exhaustive search.
"""

from __future__ import annotations

import logging
import math
from collections import Counter
from fractions import Fraction
from typing import Sequence

import numpy as np
import sympy

from lsfan.config import settings
from lsfan.errors import (
    ConsistencyError,
    DegreeMismatchError,
    FitMismatchError,
)
from lsfan.schemas import CaseReport, DegreeRow, case_out
from lsfan.services.bonded_poset import BondedPoset, Chain, chains_between
from lsfan.services.case_spec import CaseSpec, ResolvedCase, resolve
from lsfan.services.demazure import (
    Character,
    check_multiplicity_one,
    demazure_character,
    weyl_dimension,
)
from lsfan.services.lspath import (
    PathVector,
    check_b_matrix,
    enumerate_ls_paths,
    format_path,
    integral_weight,
    ls_member,
    ls_member_via_B,
    weight,
)
from lsfan.services.smt import (
    all_decompositions,
    count_standard_monomials,
    decompose,
    is_decomposable,
    links,
    standard_monomials,
)

logger = logging.getLogger(__name__)

X = sympy.Symbol("d")

# (type, lambda, tau)
CATALOG: tuple[tuple[str, str, str], ...] = (
    ("A1", "1", "longest"),
    ("A1", "2", "longest"),
    ("A1", "3", "longest"),
    ("A2", "1,0", "longest"),
    ("A2", "0,1", "longest"),
    ("A2", "1,1", "longest"),
    ("A3", "0,1,0", "longest"),
    ("B2", "1,0", "longest"),
    ("B2", "0,1", "longest"),
    ("G2", "1,0", "longest"),
)


def catalog_specs() -> list[CaseSpec]:
    return [CaseSpec(type=t, lambda_=lam, tau=tau) for t, lam, tau in CATALOG]


def _tau_element(poset: BondedPoset):
    return poset.node(poset.tau).element


def demazure_dimensions(poset: BondedPoset, upto: int) -> list[int]:
    tau = _tau_element(poset)
    return [demazure_character(poset.rs, poset.lam, d, tau).dimension() for d in range(upto + 1)]


def ls_character(poset: BondedPoset, paths: Sequence[PathVector]) -> Character | None:
    """Character with one ``e^{wt(a)}`` per path; None if some weight is not integral."""
    weights = []
    for a in paths:
        mu = integral_weight(weight(poset, a))
        if mu is None:
            return None
        weights.append(mu)
    return Character(Counter(weights))


# -- counts and characters ---------------------------------------------------


def verify_cardinality(poset: BondedPoset, d_max: int) -> list[bool]:
    if d_max < 0:
        raise ValueError("d_max must be nonnegative")
    dims = demazure_dimensions(poset, d_max)
    return [len(enumerate_ls_paths(poset, d)) == dims[d] for d in range(d_max + 1)]


def verify_character(poset: BondedPoset, d_max: int) -> list[bool]:
    """LS-path weights agree with the character of ``V(d lambda)_tau``.

    Module weights are compared directly; leaf functions carry the negated weight.
    """
    if d_max < 0:
        raise ValueError("d_max must be nonnegative")
    tau = _tau_element(poset)
    out = []
    for d in range(d_max + 1):
        expected = demazure_character(poset.rs, poset.lam, d, tau)
        out.append(ls_character(poset, enumerate_ls_paths(poset, d)) == expected)
    return out


def degree_row(poset: BondedPoset, d: int) -> DegreeRow:
    """Everything checked in one degree ``d``."""
    paths = enumerate_ls_paths(poset, d)
    expected = demazure_character(poset.rs, poset.lam, d, _tau_element(poset))
    n_standard = count_standard_monomials(poset, d)
    standard_ok = n_standard == len(paths)
    if standard_ok and d <= 3:
        totals = {m.total() for m in standard_monomials(poset, d)}
        standard_ok = len(totals) == n_standard and totals == set(paths)
    row = DegreeRow(
        degree=d,
        ls_paths=len(paths),
        demazure_dimension=expected.dimension(),
        cardinality_ok=len(paths) == expected.dimension(),
        character_ok=ls_character(poset, paths) == expected,
        standard_monomials=n_standard,
        standard_ok=standard_ok,
    )
    logger.info(
        f"degree {d}: |LS+| = {row.ls_paths}, dim = {row.demazure_dimension}, "
        f"standard = {row.standard_monomials}"
    )
    return row


# -- degree of the embedding -------------------------------------------------


def hilbert_polynomial(
    poset: BondedPoset, fit_degree: int | None = None, dims: Sequence[int] | None = None
) -> sympy.Expr:
    """Exact interpolation of ``d -> dim V(d lambda)_tau`` through ``d = 0..r``.

    The fit is checked against the three next values.
    """
    r = poset.rank if fit_degree is None else fit_degree
    if dims is None or len(dims) < r + 4:
        dims = demazure_dimensions(poset, r + 3)
    points = [(d, dims[d]) for d in range(r + 1)]
    if len(points) == 1:
        h = sympy.Integer(points[0][1])
    else:
        h = sympy.expand(sympy.interpolate(points, X))
    for d in range(r + 1, r + 4):
        if h.subs(X, d) != dims[d]:
            raise FitMismatchError(f"Hilbert fit gives {h.subs(X, d)} at d={d}, expected {dims[d]}")
    return h


def degree_by_bonds(poset: BondedPoset) -> int:
    """Sum over maximal chains of the product of their bonds."""
    return sum(math.prod(chain.bonds) for chain in poset.chains)


def degree_by_hilbert(poset: BondedPoset, h: sympy.Expr | None = None) -> int:
    """``r!`` times the coefficient of ``d^r`` in the Hilbert polynomial."""
    r = poset.rank
    h = hilbert_polynomial(poset) if h is None else h
    lead = sympy.Poly(h, X).coeff_monomial(X**r) if r else h
    value = sympy.factorial(r) * lead
    if not value.is_integer:
        raise FitMismatchError(f"r! * leading coefficient is {value}, not an integer")
    return int(value)


def check_degrees(poset: BondedPoset, h: sympy.Expr | None = None) -> tuple[int, int]:
    by_bonds = degree_by_bonds(poset)
    by_hilbert = degree_by_hilbert(poset, h)
    if by_bonds != by_hilbert:
        raise DegreeMismatchError(
            f"degree from bonds is {by_bonds}, from the Hilbert polynomial {by_hilbert}"
        )
    return by_bonds, by_hilbert


# -- batteries ---------------------------------------------------------------


def gcd_battery(poset: BondedPoset) -> tuple[int, list[dict]]:
    """gcd of bonds over every chain between every comparable pair ``sigma > eta``.

    Returns the number of pairs checked and the pairs whose chains disagree.
    """
    checked = 0
    mismatches: list[dict] = []
    for upper in poset.nodes:
        for lower in sorted(poset.down_set(upper.id)):
            if lower == upper.id:
                continue
            checked += 1
            gcds = {math.gcd(*c.bonds) for c in chains_between(poset, upper.id, lower)}
            if len(gcds) != 1:
                logger.error(
                    f"Chains from {upper.label} to {poset.label(lower)} give gcds {sorted(gcds)}"
                )
                mismatches.append(
                    {"upper": upper.label, "lower": poset.label(lower), "gcds": sorted(gcds)}
                )
    return checked, mismatches


def _divisors(n: int) -> list[int]:
    return [k for k in range(1, n + 1) if n % k == 0]


def _generator_sample(chain: Chain, rng: np.random.Generator) -> dict[int, Fraction]:
    """Integer combination of the lattice generators ``(e_j - e_{j-1}) / b_j``."""
    values = {n: Fraction(0) for n in chain.nodes}
    for k, b in enumerate(chain.extended_bonds):
        z = int(rng.integers(-3, 4))
        values[chain.nodes[k]] += Fraction(z, b)
        if k + 1 < len(chain.nodes):
            values[chain.nodes[k + 1]] -= Fraction(z, b)
    return values


def lattice_equivalence(
    poset: BondedPoset, samples: int | None = None, seed: int | None = None
) -> tuple[int, int]:
    """Closed-form membership vs. integrality of ``B_C v`` on random vectors.

    Half of the vectors are free (denominators dividing ``N``, numerators in
    ``[-3N, 3N]``), half are combinations of lattice generators. Returns
    ``(vectors checked, disagreements)``.
    """
    samples = settings.lattice_samples if samples is None else samples
    seed = settings.random_seed if seed is None else seed
    N = poset.N
    divisors = _divisors(N)
    checked = disagreements = 0
    for index, chain in enumerate(poset.chains):
        rng = np.random.default_rng(seed + index)
        for s in range(samples):
            if s % 2:
                v = _generator_sample(chain, rng)
            else:
                v = {
                    n: Fraction(int(rng.integers(-3 * N, 3 * N + 1)), int(rng.choice(divisors)))
                    for n in chain.nodes
                }
            checked += 1
            if ls_member(chain, v) != ls_member_via_B(chain, v):
                disagreements += 1
                logger.error(f"Lattice tests disagree on {v} along chain {chain.nodes}")
    return checked, disagreements


def saturation_witness(
    poset: BondedPoset,
    samples: int | None = None,
    seed: int | None = None,
    max_degree: int = 3,
) -> tuple[int, list[str]]:
    """Nonnegative lattice vectors are exactly the enumerated LS-paths.

    Random nonnegative vectors of degree ``1..max_degree`` with denominators
    dividing ``N`` are drawn per chain; lattice members must be enumerated and
    non-members must not be. Returns ``(lattice members seen, failures)``.
    """
    samples = settings.lattice_samples if samples is None else samples
    seed = settings.random_seed if seed is None else seed
    N = poset.N
    enumerated = {d: set(enumerate_ls_paths(poset, d)) for d in range(1, max_degree + 1)}
    members = 0
    failures: list[str] = []
    for index, chain in enumerate(poset.chains):
        rng = np.random.default_rng(seed + 7919 * (index + 1))
        for _ in range(samples):
            d = int(rng.integers(1, max_degree + 1))
            cuts = sorted(int(c) for c in rng.integers(0, d * N + 1, size=chain.r))
            bounds = [0] + cuts + [d * N]
            coeffs = [Fraction(hi - lo, N) for lo, hi in zip(bounds, bounds[1:])]
            v = PathVector.from_mapping(dict(zip(chain.nodes, coeffs)))
            inside = ls_member(chain, v.as_dict())
            members += inside
            if inside != (v in enumerated[d]):
                failures.append(
                    f"{format_path(poset, v)}: lattice member is {inside}, enumeration disagrees"
                )
    return members, failures


def decomposition_check(poset: BondedPoset, d_max: int = 3) -> list[str]:
    """Threshold-cut decomposition agrees with the unique exhaustive decomposition."""
    failures: list[str] = []
    for a in enumerate_ls_paths(poset, 1):
        if is_decomposable(poset, a):
            failures.append(f"degree-one path {format_path(poset, a)} is decomposable")
    for d in range(2, d_max + 1):
        for a in enumerate_ls_paths(poset, d):
            label = format_path(poset, a)
            try:
                factors = decompose(poset, a)
            except ConsistencyError as e:
                failures.append(str(e))
                continue
            total = PathVector.zero()
            for f in factors:
                total = total + f
            if total != a or len(factors) != d:
                failures.append(f"decomposition of {label} does not sum back")
            if not all(links(poset, x, y) for x, y in zip(factors, factors[1:])):
                failures.append(f"decomposition of {label} breaks the support order")
            found = all_decompositions(poset, a)
            if found != [tuple(factors)]:
                failures.append(f"{label} has {len(found)} decompositions by search")
            if poset.is_totally_ordered(a.support) and not is_decomposable(poset, a):
                failures.append(f"{label} lies on a chain but is indecomposable")
    return failures


# -- full battery ------------------------------------------------------------


def run_case(
    case: CaseSpec | ResolvedCase,
    d_max: int,
    *,
    sign: str | None = None,
    lattice_samples: int | None = None,
    seed: int | None = None,
    rows: Sequence[DegreeRow] | None = None,
    decomposition_degree: int = 3,
) -> CaseReport:
    """Run every check on one case, recording failures instead of stopping."""
    if d_max < 0:
        raise ValueError("d_max must be nonnegative")
    case = resolve(case) if isinstance(case, CaseSpec) else case
    sign = settings.mult_one_sign if sign is None else sign
    poset = case.build_poset()
    failures: list[str] = []

    if rows is None:
        rows = [degree_row(poset, d) for d in range(d_max + 1)]
    rows = sorted(rows, key=lambda row: row.degree)
    for row in rows:
        for flag in ("cardinality_ok", "character_ok", "standard_ok"):
            if not getattr(row, flag):
                failures.append(f"degree {row.degree}: {flag} is false")

    report = CaseReport(
        case=case_out(case),
        d_max=d_max,
        nodes=poset.size,
        chains=len(poset.chains),
        lcm_bonds=poset.N,
        degrees=list(rows),
    )

    try:
        dims = demazure_dimensions(poset, poset.rank + 3)
        h = hilbert_polynomial(poset, dims=dims)
        report.hilbert_polynomial = str(h)
        report.degree_by_bonds = degree_by_bonds(poset)
        report.degree_by_hilbert = degree_by_hilbert(poset, h)
        check_degrees(poset, h)
        report.degree_ok = True
    except ConsistencyError as e:
        failures.append(f"{e.code}: {e}")

    _, mismatches = gcd_battery(poset)
    report.gcd_ok = not mismatches
    failures.extend(
        f"gcds {m['gcds']} between {m['upper']} and {m['lower']}" for m in mismatches
    )

    mult_failures = check_multiplicity_one(poset, sign)
    report.multiplicity_one_ok = not mult_failures
    failures.extend(
        f"multiplicity {f['multiplicity']} at {f['weight']} on {f['upper']} > {f['lower']}"
        for f in mult_failures
    )

    report.b_matrix_ok = all(check_b_matrix(chain) for chain in poset.chains)
    if not report.b_matrix_ok:
        failures.append("B_C is not the inverse of the generator matrix")
    _, disagreements = lattice_equivalence(poset, lattice_samples, seed)
    report.lattice_ok = disagreements == 0
    if disagreements:
        failures.append(f"{disagreements} lattice-membership disagreements")
    _, saturation_failures = saturation_witness(poset, lattice_samples, seed)
    report.saturation_ok = not saturation_failures
    failures.extend(saturation_failures)

    decomposition_failures = decomposition_check(poset, min(d_max, decomposition_degree))
    report.decomposition_ok = not decomposition_failures
    failures.extend(decomposition_failures)

    support = case.weyl.parabolic_support(case.lam)
    if case.tau == case.weyl.longest_minimal_rep(support):
        expected = weyl_dimension(case.rs, case.lam)
        actual = demazure_character(case.rs, case.lam, 1, case.tau).dimension()
        report.weyl_dimension_ok = actual == expected
        if not report.weyl_dimension_ok:
            failures.append(f"dim V(lambda) is not the Weyl dimension {expected}")

    report.failures = failures
    report.ok = not failures
    log = logger.info if report.ok else logger.warning
    log(f"Case {case.kind} lambda={case.lam.coords} tau={case.tau.label()}: ok={report.ok}")
    return report
