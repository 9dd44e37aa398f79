"""Finite root systems in the fundamental-weight coordinate system.

Weights are integer vectors in the basis of fundamental weights, so the pairing
with a simple coroot is a coordinate lookup. Roots are stored twice: in the
simple-root basis and, for their coroot, in the simple-coroot basis. The
fundamental-basis form of a root is ``C @ root_coords`` where column ``j`` of the
Cartan matrix ``C`` is the simple root ``alpha_j`` (``C[i][j] = <alpha_j, alpha_i^vee>``).
Numbering follows Bourbaki for every type.
"""

from __future__ import annotations

import logging
import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from lsfan.errors import BadIndexError, BadKindError, ConsistencyError, checked

logger = logging.getLogger(__name__)

FAMILIES = ("A", "B", "C", "D", "E", "F", "G")

_KIND_RE = re.compile(r"^\s*([A-Ga-g])\s*(\d+)\s*$")


@dataclass(frozen=True)
class CartanKind:
    """Cartan type, e.g. ``CartanKind("A", 3)``."""

    family: str
    rank: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise BadKindError(f"unknown family {self.family!r}")
        n = self.rank
        valid = {
            "A": n >= 1,
            "B": n >= 2,
            "C": n >= 2,
            # D3 is A3; enter it as such.
            "D": n >= 4,
            "E": 6 <= n <= 8,
            "F": n == 4,
            "G": n == 2,
        }[self.family]
        if not valid:
            raise BadKindError(f"rank {n} is not valid for family {self.family}")

    @classmethod
    def parse(cls, text: str) -> "CartanKind":
        """Parse strings like ``"A3"`` or ``"g2"``."""
        m = _KIND_RE.match(text or "")
        if not m:
            raise BadKindError(f"cannot parse Cartan type {text!r}")
        return cls(m.group(1).upper(), int(m.group(2)))

    @property
    def expected_positive_roots(self) -> int:
        n = self.rank
        if self.family == "A":
            return n * (n + 1) // 2
        if self.family in ("B", "C"):
            return n * n
        if self.family == "D":
            return n * (n - 1)
        if self.family == "E":
            return {6: 36, 7: 63, 8: 120}[n]
        if self.family == "F":
            return 24
        return 6

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"


@dataclass(frozen=True, order=True)
class Weight:
    """Integral weight in the fundamental-weight basis."""

    coords: tuple[int, ...]

    @classmethod
    def of(cls, *coords: int) -> "Weight":
        return cls(tuple(int(c) for c in coords))

    @classmethod
    def zero(cls, rank: int) -> "Weight":
        return cls((0,) * rank)

    @property
    def rank(self) -> int:
        return len(self.coords)

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(tuple(checked(a + b) for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Weight") -> "Weight":
        return Weight(tuple(checked(a - b) for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Weight":
        return Weight(tuple(-a for a in self.coords))

    def scale(self, k: int) -> "Weight":
        return Weight(tuple(checked(k * a) for a in self.coords))

    def is_dominant(self) -> bool:
        return all(c >= 0 for c in self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i: int) -> int:
        return self.coords[i]


@dataclass(frozen=True)
class Root:
    """A root with its coroot; ``weight`` is the fundamental-basis form of the root."""

    root_coords: tuple[int, ...]
    coroot_coords: tuple[int, ...]
    weight: Weight = field(compare=False)


def cartan_matrix(kind: CartanKind) -> np.ndarray:
    """Cartan matrix ``C[i][j] = <alpha_j, alpha_i^vee>`` in Bourbaki numbering."""
    rank = kind.rank
    A = 2 * np.eye(rank, dtype=np.int64)
    if rank == 1:
        return A
    chain = list(range(rank - 1))
    series = kind.family
    if series == "E":
        # 1 - 3 - 4 - 5 - ... - n, with 2 attached to 4
        edges = [(0, 2), (1, 3)] + [(i, i + 1) for i in range(2, rank - 1)]
    elif series == "D":
        edges = [(i, i + 1) for i in range(rank - 2)] + [(rank - 3, rank - 1)]
    else:
        edges = [(i, i + 1) for i in chain]
    for i, j in edges:
        A[i, j] = -1
        A[j, i] = -1
    if series == "B":
        # Final root is shorter
        A[-1, -2] = -2
    elif series == "C":
        # Final root is longer
        A[-2, -1] = -2
    elif series == "F":
        A[2, 1] = -2
    elif series == "G":
        A[0, 1] = -3
    return A


@dataclass(frozen=True)
class RootSystem:
    """Cartan matrix and positive roots of a reduced finite root system."""

    kind: CartanKind
    cartan: tuple[tuple[int, ...], ...]
    positive_roots: tuple[Root, ...]

    @property
    def rank(self) -> int:
        return self.kind.rank

    @cached_property
    def simple_roots(self) -> tuple[Root, ...]:
        by_coords = {r.root_coords: r for r in self.positive_roots}
        return tuple(by_coords[_unit(self.rank, i)] for i in range(self.rank))

    @property
    def rho(self) -> Weight:
        return Weight((1,) * self.rank)

    def fundamental_weight(self, i: int) -> Weight:
        self.check_index(i)
        return Weight(_unit(self.rank, i - 1))

    def check_index(self, i: int) -> None:
        if not 1 <= i <= self.rank:
            raise BadIndexError(f"simple index {i} outside 1..{self.rank}")

    def check_weight(self, mu: Weight) -> None:
        if mu.rank != self.rank:
            raise BadIndexError(f"weight {mu.coords} has rank {mu.rank}, expected {self.rank}")

    def root_to_weight(self, root_coords: tuple[int, ...]) -> Weight:
        """Fundamental-basis form ``C @ root_coords``."""
        return Weight(
            tuple(
                checked(sum(self.cartan[j][i] * root_coords[i] for i in range(self.rank)))
                for j in range(self.rank)
            )
        )

    def simple_reflect(self, mu: Weight, i: int) -> Weight:
        """``s_i`` applied to a weight (``i`` is 1-based)."""
        self.check_index(i)
        k = mu.coords[i - 1]
        if k == 0:
            return mu
        return mu - self.simple_roots[i - 1].weight.scale(k)

    def simple_reflect_root(self, root_coords: tuple[int, ...], i: int) -> tuple[int, ...]:
        """``s_i`` applied to a root written in the simple-root basis."""
        self.check_index(i)
        k = sum(self.cartan[i - 1][j] * root_coords[j] for j in range(self.rank))
        out = list(root_coords)
        out[i - 1] -= k
        return tuple(out)

    def find_root(self, root_coords: tuple[int, ...]) -> Root | None:
        return self._root_index.get(tuple(root_coords))

    @cached_property
    def _root_index(self) -> dict[tuple[int, ...], Root]:
        return {r.root_coords: r for r in self.positive_roots}


def _unit(rank: int, i: int) -> tuple[int, ...]:
    return tuple(1 if j == i else 0 for j in range(rank))


def _is_positive(coords: tuple[int, ...]) -> bool:
    return all(c >= 0 for c in coords) and any(coords)


def build_root_system(kind: CartanKind) -> RootSystem:
    """Cartan data and the full set of positive roots with coroots.

    Roots are generated by closing the simple roots under simple reflections,
    carrying the coroot along (``s_j(beta)^vee = s_j(beta^vee)``).
    """
    C = cartan_matrix(kind)
    rank = kind.rank
    cartan = tuple(tuple(int(x) for x in row) for row in C)

    seen: dict[tuple[int, ...], tuple[int, ...]] = {}
    queue: deque[tuple[tuple[int, ...], tuple[int, ...]]] = deque()
    for i in range(rank):
        e = _unit(rank, i)
        seen[e] = e
        queue.append((e, e))

    while queue:
        beta, gamma = queue.popleft()
        for j in range(rank):
            k = sum(cartan[j][i] * beta[i] for i in range(rank))  # <beta, alpha_j^vee>
            m = sum(gamma[i] * cartan[i][j] for i in range(rank))  # <alpha_j, beta^vee>
            new_beta = tuple(b - (k if i == j else 0) for i, b in enumerate(beta))
            new_gamma = tuple(g - (m if i == j else 0) for i, g in enumerate(gamma))
            if _is_positive(new_beta) and new_beta not in seen:
                seen[new_beta] = new_gamma
                queue.append((new_beta, new_gamma))

    roots = []
    for beta in sorted(seen, key=lambda b: (sum(b), tuple(-c for c in b))):
        weight = Weight(
            tuple(sum(cartan[j][i] * beta[i] for i in range(rank)) for j in range(rank))
        )
        roots.append(Root(root_coords=beta, coroot_coords=seen[beta], weight=weight))

    if len(roots) != kind.expected_positive_roots:
        raise ConsistencyError(
            f"{kind}: generated {len(roots)} positive roots, expected {kind.expected_positive_roots}"
        )
    logger.debug(f"Built root system {kind} with {len(roots)} positive roots")
    return RootSystem(kind=kind, cartan=cartan, positive_roots=tuple(roots))


def pairing(mu: Weight, beta: Root) -> int:
    """``<mu, beta^vee>``."""
    if mu.rank != len(beta.coroot_coords):
        raise BadIndexError("weight and root ranks differ")
    return sum(c * m for c, m in zip(beta.coroot_coords, mu.coords))


def reflect(mu: Weight, beta: Root) -> Weight:
    """``s_beta(mu) = mu - <mu, beta^vee> beta``."""
    k = pairing(mu, beta)
    if k == 0:
        return mu
    return mu - beta.weight.scale(k)
