"""Bonded Bruhat posets ``A_tau`` of a Schubert variety.

Nodes are the minimal coset representatives ``sigma <= tau`` in ``W/W_Q`` where
``Q`` is the parabolic of ``lambda``. A cover ``sigma > eta`` carries the positive
root ``beta`` with ``sigma(lambda) = s_beta(eta(lambda))`` and the bond
``<eta(lambda), beta^vee>``. The extended bond to the virtual node below the
identity is always 1 and lives on :class:`Chain`, not as a node.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

from jinja2 import Environment, FileSystemLoader

from lsfan.config import settings
from lsfan.errors import (
    AmbiguousBondError,
    EmptyChainError,
    GcdMismatchError,
    InvalidInputError,
    NoCoverRootError,
    NotComparableError,
    NotDominantError,
    NotMinimalRepError,
    TooManyChainsError,
)
from lsfan.services.rootsys import Root, RootSystem, Weight, pairing, reflect
from lsfan.services.weyl import WeylElement, WeylGroup

logger = logging.getLogger(__name__)

_TEMPLATES = Environment(
    loader=FileSystemLoader(str(Path(__file__).resolve().parents[1] / "templates")),
    trim_blocks=True,
    lstrip_blocks=True,
    keep_trailing_newline=True,
    autoescape=False,
)


@dataclass(frozen=True)
class PosetNode:
    id: int
    element: WeylElement
    weight: Weight  # sigma(lambda)

    @property
    def length(self) -> int:
        return self.element.length

    @property
    def label(self) -> str:
        return self.element.label()


@dataclass(frozen=True)
class Cover:
    upper: int
    lower: int
    bond: int
    beta: Root


@dataclass(frozen=True)
class Chain:
    """Maximal chain ``tau_r > ... > tau_0`` with bonds ``b_r, ..., b_1``."""

    nodes: tuple[int, ...]
    bonds: tuple[int, ...]

    @property
    def r(self) -> int:
        return len(self.nodes) - 1

    @property
    def extended_bonds(self) -> tuple[int, ...]:
        """``b_r, ..., b_1, b_0`` with the extended bond ``b_0 = 1``."""
        return self.bonds + (1,)

    def __contains__(self, node: int) -> bool:
        return node in self.nodes


class BondedPoset:
    """The poset ``A_tau`` with bonded Hasse diagram."""

    def __init__(
        self,
        rs: RootSystem,
        weyl: WeylGroup,
        lam: Weight,
        nodes: list[PosetNode],
        covers: list[Cover],
    ):
        self.rs = rs
        self.weyl = weyl
        self.lam = lam
        self.nodes = nodes
        self.covers = sorted(covers, key=lambda c: (c.lower, c.upper))
        self._cover_map = {(c.upper, c.lower): c for c in self.covers}
        self._lower: dict[int, list[int]] = {n.id: [] for n in nodes}
        self._upper: dict[int, list[int]] = {n.id: [] for n in nodes}
        for c in self.covers:
            self._lower[c.upper].append(c.lower)
            self._upper[c.lower].append(c.upper)
        for ids in list(self._lower.values()) + list(self._upper.values()):
            ids.sort()

    # -- basic accessors --------------------------------------------------

    @property
    def tau(self) -> int:
        return self.nodes[-1].id

    @property
    def bottom(self) -> int:
        return self.nodes[0].id

    @property
    def size(self) -> int:
        return len(self.nodes)

    @property
    def rank(self) -> int:
        """``l(tau)``; maximal chains have ``rank + 1`` nodes."""
        return self.nodes[-1].length

    @cached_property
    def N(self) -> int:
        """lcm of all bonds, including the extended bond 1."""
        return math.lcm(1, *(c.bond for c in self.covers))

    def node(self, node_id: int) -> PosetNode:
        return self.nodes[node_id]

    def label(self, node_id: int) -> str:
        return self.nodes[node_id].label

    @cached_property
    def _by_label(self) -> dict[str, int]:
        return {n.label: n.id for n in self.nodes}

    def node_by_label(self, label: str) -> int:
        try:
            return self._by_label[label.strip()]
        except KeyError:
            raise InvalidInputError(f"no node labelled {label!r} in this poset") from None

    def lower_covers(self, node_id: int) -> list[int]:
        return self._lower[node_id]

    def upper_covers(self, node_id: int) -> list[int]:
        return self._upper[node_id]

    def cover(self, upper: int, lower: int) -> Cover:
        try:
            return self._cover_map[(upper, lower)]
        except KeyError:
            raise NotComparableError(
                f"{self.label(upper)} does not cover {self.label(lower)}"
            ) from None

    def bond(self, upper: int, lower: int) -> int:
        return self.cover(upper, lower).bond

    @cached_property
    def _below(self) -> dict[int, frozenset[int]]:
        below: dict[int, frozenset[int]] = {}
        for n in self.nodes:  # ids increase with length
            acc = {n.id}
            for low in self._lower[n.id]:
                acc |= below[low]
            below[n.id] = frozenset(acc)
        return below

    def leq(self, p: int, q: int) -> bool:
        """``p <= q`` in the poset."""
        return p in self._below[q]

    def down_set(self, node_id: int) -> frozenset[int]:
        return self._below[node_id]

    @cached_property
    def chains(self) -> list["Chain"]:
        """Maximal chains under the configured cap (computed once)."""
        return maximal_chains(self)

    def chains_containing(self, ids) -> list["Chain"]:
        wanted = set(ids)
        return [c for c in self.chains if wanted.issubset(c.nodes)]

    def is_totally_ordered(self, ids) -> bool:
        ordered = sorted(ids)
        return all(self.leq(a, b) for a, b in zip(ordered, ordered[1:]))

    def signature(self) -> tuple:
        """Label-level description, independent of how the poset was built."""
        return (
            tuple((n.label, n.weight.coords) for n in self.nodes),
            tuple(
                (self.label(c.upper), self.label(c.lower), c.bond, c.beta.root_coords)
                for c in self.covers
            ),
        )


def build_poset(rs: RootSystem, lam: Weight, tau: WeylElement, weyl: WeylGroup | None = None):
    """Build ``A_tau`` by a downward breadth-first search over covers in ``W^Q``."""
    weyl = weyl or WeylGroup(rs)
    rs.check_weight(lam)
    if not lam.is_dominant() or lam.is_zero():
        raise NotDominantError(f"lambda {lam.coords} must be dominant and nonzero")
    support = weyl.parabolic_support(lam)
    if not weyl.is_minimal_rep(tau, support):
        raise NotMinimalRepError(
            f"{tau.label()} is not a minimal coset representative for W_Q, Q = {sorted(support)}"
        )

    top_weight = weyl.act(tau, lam)
    elements: dict[Weight, WeylElement] = {top_weight: tau}
    edges: dict[tuple[Weight, Weight], tuple[int, Root]] = {}
    frontier = [top_weight]
    while frontier:
        next_frontier = []
        for mu in frontier:
            sigma = elements[mu]
            for beta in rs.positive_roots:
                if pairing(mu, beta) >= 0:
                    continue
                higher = reflect(mu, beta)
                eta = elements.get(higher) or weyl.minimal_rep_for_weight(lam, higher)
                if eta.length != sigma.length - 1:
                    continue
                if (mu, higher) not in edges:
                    edges[(mu, higher)] = _cover_root(rs, upper=mu, lower=higher)
                if higher not in elements:
                    elements[higher] = eta
                    next_frontier.append(higher)
        frontier = next_frontier

    ordered = sorted(elements.items(), key=lambda kv: (kv[1].length, kv[1].lexmin_word))
    ids = {mu: i for i, (mu, _) in enumerate(ordered)}
    nodes = [PosetNode(id=i, element=elem, weight=mu) for i, (mu, elem) in enumerate(ordered)]
    covers = [
        Cover(upper=ids[up], lower=ids[low], bond=bond, beta=beta)
        for (up, low), (bond, beta) in edges.items()
    ]
    if not nodes[0].element.is_identity():
        raise InvalidInputError("poset has no identity node")
    poset = BondedPoset(rs, weyl, lam, nodes, covers)
    logger.info(
        f"Built A_tau for {rs.kind}, lambda={lam.coords}, tau={tau.label()}: "
        f"{poset.size} nodes, {len(covers)} covers, N={poset.N}"
    )
    return poset


def _cover_root(rs: RootSystem, *, upper: Weight, lower: Weight) -> tuple[int, Root]:
    """Scan all positive roots for the reflection joining two node weights."""
    matches = [
        (pairing(lower, beta), beta)
        for beta in rs.positive_roots
        if pairing(lower, beta) > 0 and reflect(lower, beta) == upper
    ]
    if not matches:
        raise NoCoverRootError(f"no positive root joins {lower.coords} to {upper.coords}")
    if len({b for b, _ in matches}) > 1:
        raise AmbiguousBondError(
            f"roots joining {lower.coords} to {upper.coords} disagree on the bond"
        )
    return matches[0]


def restrict(poset: BondedPoset, sigma: int) -> BondedPoset:
    """The subposet ``A_sigma``, with node ids renumbered in the same order."""
    keep = sorted(poset.down_set(sigma))
    ids = {old: new for new, old in enumerate(keep)}
    nodes = [
        PosetNode(id=ids[old], element=poset.node(old).element, weight=poset.node(old).weight)
        for old in keep
    ]
    covers = [
        Cover(upper=ids[c.upper], lower=ids[c.lower], bond=c.bond, beta=c.beta)
        for c in poset.covers
        if c.upper in ids and c.lower in ids
    ]
    return BondedPoset(poset.rs, poset.weyl, poset.lam, nodes, covers)


def _chains_down(poset: BondedPoset, start: int, stop: int, cap: int):
    out: list[Chain] = []
    target_below = poset.down_set(start)
    if stop not in target_below:
        return out

    def walk(path: list[int], bonds: list[int]):
        here = path[-1]
        if here == stop:
            out.append(Chain(nodes=tuple(path), bonds=tuple(bonds)))
            if len(out) > cap:
                raise TooManyChainsError(f"more than {cap} maximal chains")
            return
        for low in poset.lower_covers(here):
            if poset.leq(stop, low):
                path.append(low)
                bonds.append(poset.bond(here, low))
                walk(path, bonds)
                path.pop()
                bonds.pop()

    walk([start], [])
    return out


def maximal_chains(poset: BondedPoset, cap: int | None = None) -> list[Chain]:
    """All maximal chains ``tau > ... > e`` in depth-first order of node ids."""
    cap = settings.max_chains if cap is None else cap
    return _chains_down(poset, poset.tau, poset.bottom, cap)


def chains_between(poset: BondedPoset, sigma: int, eta: int, cap: int | None = None):
    cap = settings.max_chains if cap is None else cap
    return _chains_down(poset, sigma, eta, cap)


def gcd_between(poset: BondedPoset, sigma: int, eta: int, cap: int | None = None) -> int:
    """gcd of the bonds along every maximal chain from ``sigma`` down to ``eta``.

    Raises E_GCD_MISMATCH if two chains disagree.
    """
    if sigma == eta:
        raise EmptyChainError("gcd over an empty chain is undefined; use sigma > eta")
    if not poset.leq(eta, sigma):
        raise NotComparableError(f"{poset.label(eta)} is not below {poset.label(sigma)}")
    values = {math.gcd(*chain.bonds) for chain in chains_between(poset, sigma, eta, cap)}
    if len(values) != 1:
        raise GcdMismatchError(
            f"chains from {poset.label(sigma)} to {poset.label(eta)} give gcds {sorted(values)}"
        )
    return values.pop()


def export_dot(poset: BondedPoset) -> str:
    """DOT digraph with edges pointing from the lower to the upper node."""
    template = _TEMPLATES.get_template("poset.dot.j2")
    return template.render(
        name=f"A_{poset.label(poset.tau)}",
        nodes=poset.nodes,
        edges=[
            {"lower": poset.label(c.lower), "upper": poset.label(c.upper), "bond": c.bond}
            for c in poset.covers
        ],
    )
