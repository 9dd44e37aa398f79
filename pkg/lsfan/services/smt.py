"""Standard monomials on the fan of LS-paths.

Degree-one LS-paths generate; a monomial ``x_a1 ... x_an`` is standard when its
factors can be ordered so that ``min supp a_j >= max supp a_{j+1}``. Supports of
LS-paths are totally ordered, and node ids grow with length, so ``min`` and
``max`` of a support are its smallest and largest ids.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction

from lsfan.config import settings
from lsfan.errors import (
    DecompositionError,
    NotDegreeOneError,
    StandardInputError,
    TooManyError,
)
from lsfan.services.bonded_poset import BondedPoset
from lsfan.services.lspath import (
    PathVector,
    dominates_all,
    enumerate_ls_paths,
    format_path,
    is_ls_path,
    linear_extensions,
    require_ls_path,
    weight,
)

logger = logging.getLogger(__name__)

_PERMUTATION_LIMIT = 9


def _factor_key(a: PathVector) -> tuple:
    return (max(a.support), min(a.support), tuple(reversed(a.entries)))


@dataclass(frozen=True)
class Monomial:
    """Product of degree-one LS-paths, factors kept in canonical (descending) order."""

    factors: tuple[PathVector, ...] = ()

    @classmethod
    def of(cls, factors) -> "Monomial":
        factors = tuple(factors)
        if any(f.is_zero() for f in factors):
            raise NotDegreeOneError("a monomial factor cannot be the zero path")
        return cls(tuple(sorted(factors, key=_factor_key, reverse=True)))

    @property
    def degree(self) -> int:
        return len(self.factors)

    def total(self) -> PathVector:
        acc = PathVector.zero()
        for f in self.factors:
            acc = acc + f
        return acc


@dataclass(frozen=True)
class StraighteningTerm:
    monomial: Monomial
    guaranteed: bool = False


def links(poset: BondedPoset, upper: PathVector, lower: PathVector) -> bool:
    """``min supp upper >= max supp lower`` in the Bruhat order."""
    if upper.is_zero() or lower.is_zero():
        return True
    return poset.leq(max(lower.support), min(upper.support))


def _is_chain_ordered(poset: BondedPoset, factors) -> bool:
    return all(links(poset, a, b) for a, b in zip(factors, factors[1:]))


# -- decomposition -----------------------------------------------------------


def _threshold_cut(a: PathVector) -> list[PathVector]:
    """Cut ``a`` at cumulative degrees ``1, ..., d-1`` walking from the top node down."""
    pieces: list[dict[int, Fraction]] = [{}]
    filled = Fraction(0)
    for node, value in sorted(a.entries, reverse=True):
        remaining = value
        while remaining:
            room = 1 - filled
            take = min(room, remaining)
            pieces[-1][node] = pieces[-1].get(node, Fraction(0)) + take
            remaining -= take
            filled += take
            if filled == 1:
                pieces.append({})
                filled = Fraction(0)
    return [PathVector.from_mapping(p) for p in pieces if p]


def is_decomposable(poset: BondedPoset, a: PathVector) -> bool:
    """``a`` is zero or splits as ``a1 + a2`` in LS+ with ``min supp a1 >= max supp a2``."""
    require_ls_path(poset, a)
    if a.is_zero():
        return True
    if a.degree <= 1:
        return False
    pieces = _threshold_cut(a)
    head = pieces[0]
    rest = a - head
    if is_ls_path(poset, head) and is_ls_path(poset, rest) and links(poset, head, rest):
        return True
    for k in range(1, int(a.degree)):
        for g in enumerate_ls_paths(poset, k):
            rest = a - g
            if rest.is_nonnegative() and is_ls_path(poset, rest) and links(poset, g, rest):
                return True
    return False


def decompose(poset: BondedPoset, a: PathVector) -> list[PathVector]:
    """Unique decomposition of ``a`` into degree-one LS-paths, top factor first."""
    require_ls_path(poset, a)
    if a.is_zero():
        return []
    pieces = _threshold_cut(a)
    if all(is_ls_path(poset, p) for p in pieces) and _is_chain_ordered(poset, pieces):
        return pieces
    logger.warning(
        f"Threshold cut of {format_path(poset, a)} left the fan; falling back to search"
    )
    found = all_decompositions(poset, a)
    if not found:
        raise DecompositionError(f"{format_path(poset, a)} has no decomposition")
    return list(found[0])


def all_decompositions(poset: BondedPoset, a: PathVector) -> list[tuple[PathVector, ...]]:
    """Every ordered decomposition into degree-one LS-paths, by exhaustive search."""
    require_ls_path(poset, a)
    generators = [g for g in enumerate_ls_paths(poset, 1) if set(g.support) <= set(a.support)]
    out: list[tuple[PathVector, ...]] = []

    def walk(rest: PathVector, prefix: list[PathVector]):
        if rest.is_zero():
            out.append(tuple(prefix))
            return
        for g in generators:
            if prefix and not links(poset, prefix[-1], g):
                continue
            remainder = rest - g
            if not remainder.is_nonnegative():
                continue
            prefix.append(g)
            walk(remainder, prefix)
            prefix.pop()

    walk(a, [])
    return out


# -- standardness ------------------------------------------------------------


def _require_degree_one(poset: BondedPoset, factors) -> None:
    for f in factors:
        if f.degree != 1:
            raise NotDegreeOneError(f"factor {format_path(poset, f)} has degree {f.degree}")
        require_ls_path(poset, f)


def is_standard(poset: BondedPoset, m: Monomial) -> bool:
    """Some ordering of the factors is linked tail to head."""
    _require_degree_one(poset, m.factors)
    if _is_chain_ordered(poset, m.factors):
        return True
    if len(m.factors) < _PERMUTATION_LIMIT:
        return any(
            _is_chain_ordered(poset, order) for order in itertools.permutations(m.factors)
        )
    return False


def count_standard_monomials(poset: BondedPoset, n: int, cap: int | None = None) -> int:
    """Number of standard monomials of degree ``n``.

    A standard ordering is unique, so this counts linked sequences of degree-one
    paths by dynamic programming over the first factor. Raises ``TooManyError``
    when the count exceeds ``cap`` (default ``settings.max_paths``).
    """
    cap = settings.max_paths if cap is None else cap
    if n < 0:
        raise ValueError("degree must be nonnegative")
    if n == 0:
        return 1
    generators = enumerate_ls_paths(poset, 1)
    below = [
        [j for j, h in enumerate(generators) if links(poset, g, h)] for g in generators
    ]
    counts = [1] * len(generators)  # sequences of length 1 starting at each generator
    for _ in range(n - 1):
        counts = [sum(counts[j] for j in below[i]) for i in range(len(generators))]
    total = sum(counts)
    if total > cap:
        raise TooManyError(f"{total} standard monomials of degree {n}, more than {cap}")
    return total


def standard_monomials(poset: BondedPoset, n: int, cap: int | None = None) -> list[Monomial]:
    """All standard monomials of degree ``n`` in canonical form."""
    cap = settings.max_paths if cap is None else cap
    if n < 0:
        raise ValueError("degree must be nonnegative")
    generators = enumerate_ls_paths(poset, 1)
    out: list[Monomial] = []

    def walk(prefix: list[PathVector]):
        if len(prefix) == n:
            out.append(Monomial.of(prefix))
            if len(out) > cap:
                raise TooManyError(f"more than {cap} standard monomials of degree {n}")
            return
        for g in generators:
            if prefix and not links(poset, prefix[-1], g):
                continue
            prefix.append(g)
            walk(prefix)
            prefix.pop()

    walk([])
    return out


# -- straightening -----------------------------------------------------------


def straightening_support(
    poset: BondedPoset,
    a1: PathVector,
    a2: PathVector,
    cap: int | None = None,
) -> list[StraighteningTerm]:
    """Standard monomials that may occur when straightening ``x_a1 x_a2``.

    Candidates have the weight of ``a1 + a2`` and dominate it under every
    linearization. When the two supports lie on one chain, the decomposition
    of ``a1 + a2`` is flagged as guaranteed to appear.
    """
    source = Monomial.of((a1, a2))
    if is_standard(poset, source):
        raise StandardInputError("the monomial is already standard")

    target = a1 + a2
    target_weight = weight(poset, target)
    extensions = linear_extensions(poset, cap)

    guaranteed: Monomial | None = None
    if poset.is_totally_ordered(set(a1.support) | set(a2.support)) and is_ls_path(poset, target):
        guaranteed = Monomial.of(decompose(poset, target))

    terms: list[StraighteningTerm] = []
    for m in standard_monomials(poset, 2):
        total = m.total()
        if weight(poset, total) != target_weight:
            continue
        if not dominates_all(poset, target, total, extensions=extensions):
            continue
        terms.append(StraighteningTerm(monomial=m, guaranteed=m == guaranteed))

    if guaranteed is not None and not any(t.guaranteed for t in terms):
        logger.warning(
            f"Guaranteed term {format_path(poset, target)} missed the candidate filter; adding it"
        )
        terms.append(StraighteningTerm(monomial=guaranteed, guaranteed=True))
    logger.info(f"Straightening support has {len(terms)} candidate(s)")
    return terms
