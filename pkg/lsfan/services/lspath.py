"""LS-lattices, LS-monoids and the fan of LS-paths.

A chain ``tau_r > ... > tau_0`` with bonds ``b_r, ..., b_1`` (and ``b_0 = 1``)
cuts out the LS-lattice by integrality of the bond-scaled partial sums
``b_j (a_r + ... + a_j)``; the LS-monoid is its nonnegative part and the fan
``LS+`` is the union over all maximal chains, as a set inside ``Q^A``.
Coefficient vectors are ordered ``(a_r, ..., a_0)``, top of the chain first.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

import sympy

from lsfan.config import settings
from lsfan.errors import (
    NotLsPathError,
    SupportError,
    TooManyError,
    TooManyLinearExtensionsError,
    checked,
)
from lsfan.services.bonded_poset import BondedPoset, Chain
from lsfan.services.rootsys import Weight

logger = logging.getLogger(__name__)

Linearization = tuple[int, ...]  # node ids from smallest to largest
RationalWeight = tuple[Fraction, ...]


class Comparison(str, enum.Enum):
    LT = "LT"
    EQ = "EQ"
    GT = "GT"


@dataclass(frozen=True)
class PathVector:
    """Sparse vector in ``Q^A``: sorted ``(node id, value)`` pairs, zeros dropped."""

    entries: tuple[tuple[int, Fraction], ...] = ()

    def __post_init__(self):
        for _, value in self.entries:
            checked(value.numerator)
            checked(value.denominator)

    @classmethod
    def from_mapping(cls, values: Mapping[int, Fraction | int | str]) -> "PathVector":
        cleaned = {}
        for node, value in values.items():
            frac = Fraction(value)
            if frac:
                cleaned[int(node)] = frac
        return cls(tuple(sorted(cleaned.items())))

    @classmethod
    def unit(cls, node: int, value: Fraction | int = 1) -> "PathVector":
        return cls.from_mapping({node: value})

    @classmethod
    def zero(cls) -> "PathVector":
        return cls()

    def get(self, node: int) -> Fraction:
        for n, value in self.entries:
            if n == node:
                return value
        return Fraction(0)

    def as_dict(self) -> dict[int, Fraction]:
        return dict(self.entries)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(n for n, _ in self.entries)

    def is_zero(self) -> bool:
        return not self.entries

    def is_nonnegative(self) -> bool:
        return all(v > 0 for _, v in self.entries)

    @property
    def degree(self) -> Fraction:
        return sum((v for _, v in self.entries), Fraction(0))

    def __add__(self, other: "PathVector") -> "PathVector":
        acc = self.as_dict()
        for n, v in other.entries:
            acc[n] = acc.get(n, Fraction(0)) + v
        return PathVector.from_mapping(acc)

    def __sub__(self, other: "PathVector") -> "PathVector":
        acc = self.as_dict()
        for n, v in other.entries:
            acc[n] = acc.get(n, Fraction(0)) - v
        return PathVector.from_mapping(acc)

    def scale(self, k: Fraction | int) -> "PathVector":
        return PathVector.from_mapping({n: v * k for n, v in self.entries})


def degree(a: PathVector) -> Fraction:
    return a.degree


def weight(poset: BondedPoset, a: PathVector) -> RationalWeight:
    """``sum_sigma a(sigma) sigma(lambda)`` with exact rationals."""
    acc = [Fraction(0)] * poset.rs.rank
    for node, value in a.entries:
        for i, c in enumerate(poset.node(node).weight.coords):
            acc[i] += value * c
    return tuple(acc)


def integral_weight(w: RationalWeight) -> Weight | None:
    """The weight as an integral :class:`Weight`, or None if some coordinate is fractional."""
    if any(c.denominator != 1 for c in w):
        return None
    return Weight(tuple(int(c) for c in w))


# -- lattice membership ------------------------------------------------------


def chain_coefficients(chain: Chain, v: PathVector | Mapping[int, Fraction]) -> list[Fraction]:
    """``[a_r, ..., a_0]`` of ``v`` along ``chain``; E_SUPPORT if ``v`` leaves it."""
    values = v.as_dict() if isinstance(v, PathVector) else {k: Fraction(x) for k, x in v.items()}
    outside = [n for n, x in values.items() if x and n not in chain.nodes]
    if outside:
        raise SupportError(f"support {sorted(outside)} is not contained in the chain")
    return [values.get(n, Fraction(0)) for n in chain.nodes]


def ls_member(chain: Chain, v: PathVector | Mapping[int, Fraction]) -> bool:
    """Membership in the LS-lattice of ``chain`` via the partial-sum conditions."""
    coeffs = chain_coefficients(chain, v)
    partial = Fraction(0)
    for a, b in zip(coeffs, chain.bonds):
        partial += a
        if (b * partial).denominator != 1:
            return False
    partial += coeffs[-1]
    return partial.denominator == 1


def b_matrix(chain: Chain) -> tuple[tuple[int, ...], ...]:
    """Lower-triangular ``B_C``: row for ``b_j`` holds ``b_j`` in columns ``r`` down to ``j``."""
    bonds = chain.extended_bonds
    size = len(bonds)
    return tuple(tuple(bonds[k] if col <= k else 0 for col in range(size)) for k in range(size))


def generator_matrix(chain: Chain) -> sympy.Matrix:
    """Columns ``(e_{tau_j} - e_{tau_{j-1}}) / b_j`` for ``j = r..0`` with ``e_{tau_{-1}} = 0``."""
    bonds = chain.extended_bonds
    size = len(bonds)
    G = sympy.zeros(size, size)
    for k, b in enumerate(bonds):
        G[k, k] = sympy.Rational(1, b)
        if k + 1 < size:
            G[k + 1, k] = -sympy.Rational(1, b)
    return G


def check_b_matrix(chain: Chain) -> bool:
    """``B_C`` is the exact inverse of the generator matrix."""
    B = sympy.Matrix(b_matrix(chain))
    return B * generator_matrix(chain) == sympy.eye(len(chain.nodes))


def ls_member_via_B(chain: Chain, v: PathVector | Mapping[int, Fraction]) -> bool:
    """Membership via integrality of ``B_C v``."""
    coeffs = chain_coefficients(chain, v)
    for row in b_matrix(chain):
        if sum((b * a for b, a in zip(row, coeffs)), Fraction(0)).denominator != 1:
            return False
    return True


def is_ls_path(poset: BondedPoset, a: PathVector) -> bool:
    """``a`` lies in ``LS+_C`` for some maximal chain ``C``."""
    if not a.is_nonnegative():
        return False
    if not poset.is_totally_ordered(a.support):
        return False
    return any(ls_member(c, a) for c in poset.chains_containing(a.support))


def require_ls_path(poset: BondedPoset, a: PathVector) -> None:
    if any(n < 0 or n >= poset.size for n in a.support):
        raise NotLsPathError(f"support {a.support} names nodes outside the poset")
    if not is_ls_path(poset, a):
        raise NotLsPathError(f"{format_path(poset, a)} is not an LS-path")


# -- enumeration -------------------------------------------------------------


def _chain_paths(chain: Chain, d: int):
    """LS+_C in degree ``d`` from partial sums ``t_r <= ... <= t_1 <= d``, ``t_j`` in ``(1/b_j) Z``."""
    r = chain.r
    bonds = chain.bonds

    def walk(k: int, lower: Fraction, sums: list[Fraction]):
        if k == r:
            coeffs = []
            prev = Fraction(0)
            for t in sums:
                coeffs.append(t - prev)
                prev = t
            coeffs.append(d - prev)
            yield PathVector.from_mapping(dict(zip(chain.nodes, coeffs)))
            return
        b = bonds[k]
        m = -((-lower.numerator * b) // lower.denominator)  # ceil(lower * b)
        while Fraction(m, b) <= d:
            sums.append(Fraction(m, b))
            yield from walk(k + 1, Fraction(m, b), sums)
            sums.pop()
            m += 1

    yield from walk(0, Fraction(0), [])


def default_linearization(poset: BondedPoset) -> Linearization:
    """Node-id order; ids are sorted by (length, lexmin word)."""
    return tuple(range(poset.size))


def lex_key(lin: Linearization, a: PathVector) -> tuple[Fraction, ...]:
    values = a.as_dict()
    return tuple(values.get(p, Fraction(0)) for p in reversed(lin))


def enumerate_ls_paths(poset: BondedPoset, d: int, cap: int | None = None) -> list[PathVector]:
    """``LS+_d``: every degree-``d`` LS-path, deduplicated across chains, sorted."""
    cap = settings.max_paths if cap is None else cap
    if d < 0:
        raise ValueError("degree must be nonnegative")
    found: set[PathVector] = set()
    for chain in poset.chains:
        for path in _chain_paths(chain, d):
            found.add(path)
            if len(found) > cap:
                raise TooManyError(f"more than {cap} LS-paths in degree {d}")
    lin = default_linearization(poset)
    result = sorted(found, key=lambda a: lex_key(lin, a))
    logger.debug(f"LS+_{d} has {len(result)} elements")
    return result


def to_path_model(poset: BondedPoset, a: PathVector) -> list[tuple[Fraction, Weight]]:
    """Concatenation data ``(a_h, tau_h(lambda))`` from the top of the support down."""
    require_ls_path(poset, a)
    return [(a.get(n), poset.node(n).weight) for n in sorted(a.support, reverse=True)]


# -- orders ------------------------------------------------------------------


def lex_compare(lin: Linearization, a: PathVector, b: PathVector) -> Comparison:
    """Lexicographic order deciding at the largest node (in ``lin``) where ``a`` and ``b`` differ."""
    ka, kb = lex_key(lin, a), lex_key(lin, b)
    if ka == kb:
        return Comparison.EQ
    return Comparison.LT if ka < kb else Comparison.GT


def linear_extensions(poset: BondedPoset, cap: int | None = None) -> list[Linearization]:
    """All linear extensions, smallest element first, in lexicographic order of ids."""
    cap = settings.max_linext if cap is None else cap
    out: list[Linearization] = []
    missing = {n.id: len(poset.lower_covers(n.id)) for n in poset.nodes}
    order: list[int] = []

    def walk():
        if len(order) == poset.size:
            out.append(tuple(order))
            if len(out) > cap:
                raise TooManyLinearExtensionsError(f"more than {cap} linear extensions")
            return
        ready = [n for n, k in missing.items() if k == 0 and n not in placed]
        for n in sorted(ready):
            placed.add(n)
            order.append(n)
            for up in poset.upper_covers(n):
                missing[up] -= 1
            walk()
            for up in poset.upper_covers(n):
                missing[up] += 1
            order.pop()
            placed.discard(n)

    placed: set[int] = set()
    walk()
    return out


def dominates_all(
    poset: BondedPoset,
    a: PathVector,
    b: PathVector,
    cap: int | None = None,
    extensions: Iterable[Linearization] | None = None,
) -> bool:
    """``a`` is lexicographically at most ``b`` for every linear extension."""
    lins = linear_extensions(poset, cap) if extensions is None else extensions
    return all(lex_compare(lin, a, b) != Comparison.GT for lin in lins)


# -- formatting --------------------------------------------------------------


def format_fraction(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def format_path(poset: BondedPoset, a: PathVector) -> str:
    if a.is_zero():
        return "0"
    return " + ".join(
        f"{format_fraction(v)}*e[{poset.label(n)}]" for n, v in sorted(a.entries, reverse=True)
    )


def parse_path(poset: BondedPoset, data: Mapping[str, str | int]) -> PathVector:
    """Path from a ``{label: "p/q"}`` mapping."""
    try:
        values = {poset.node_by_label(label): Fraction(str(value)) for label, value in data.items()}
    except (ValueError, ZeroDivisionError) as e:
        raise NotLsPathError(f"cannot parse path coefficients: {e}") from e
    return PathVector.from_mapping(values)
