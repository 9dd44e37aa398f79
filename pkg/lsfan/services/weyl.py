"""Weyl group elements, Bruhat order and minimal coset representatives.

An element ``w`` is identified by ``w(rho)``, which is a regular weight and
determines ``w``. Words ``(i1, ..., ik)`` denote the product ``s_i1 ... s_ik``;
acting on a weight, ``s_ik`` is applied first.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from lsfan.errors import ConsistencyError, InvalidInputError, NotReducedError, TooManyError
from lsfan.services.rootsys import RootSystem, Weight

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WeylElement:
    """Canonical Weyl group element.

    ``key`` is ``w(rho)`` in fundamental coordinates; ``lexmin_word`` is the
    lexicographically smallest reduced word.
    """

    key: Weight
    length: int
    lexmin_word: tuple[int, ...]

    def is_identity(self) -> bool:
        return self.length == 0

    def label(self) -> str:
        """Dot-separated lexmin word, ``"e"`` for the identity."""
        if not self.lexmin_word:
            return "e"
        return ".".join(str(i) for i in self.lexmin_word)


ParabolicSupport = frozenset  # set of 1-based simple indices i with <lambda, alpha_i^vee> = 0


class WeylGroup:
    """Weyl group operations for one root system."""

    def __init__(self, rs: RootSystem):
        self.rs = rs
        self._elements: dict[Weight, WeylElement] = {}
        self._intervals: dict[Weight, frozenset[Weight]] = {}

    # -- construction -----------------------------------------------------

    def element(self, key: Weight) -> WeylElement:
        """Canonical element with ``w(rho) = key``."""
        cached = self._elements.get(key)
        if cached is not None:
            return cached
        self.rs.check_weight(key)
        if any(c == 0 for c in key.coords):
            raise InvalidInputError(f"{key.coords} is not a regular weight")

        length = sum(1 for beta in self.rs.positive_roots if _pair(key, beta) < 0)
        word: list[int] = []
        current = key
        while True:
            descent = next((i for i, c in enumerate(current.coords) if c < 0), None)
            if descent is None:
                break
            word.append(descent + 1)
            current = self.rs.simple_reflect(current, descent + 1)
        if current != self.rs.rho or len(word) != length:
            raise ConsistencyError(f"{key.coords} is not in the Weyl orbit of rho")

        elem = WeylElement(key=key, length=length, lexmin_word=tuple(word))
        self._elements[key] = elem
        return elem

    @property
    def identity(self) -> WeylElement:
        return self.element(self.rs.rho)

    def from_word(self, word: Sequence[int], *, require_reduced: bool = False) -> WeylElement:
        """Element ``s_i1 ... s_ik``; optionally reject non-reduced words."""
        elem = self.element(self.act(word, self.rs.rho))
        if require_reduced and elem.length != len(word):
            raise NotReducedError(
                f"word {' '.join(map(str, word)) or '(empty)'} is not reduced "
                f"(its product has length {elem.length})"
            )
        return elem

    def simple(self, i: int) -> WeylElement:
        return self.from_word((i,))

    # -- action -----------------------------------------------------------

    def act(self, w: WeylElement | Sequence[int], mu: Weight) -> Weight:
        """Apply ``w`` (element or word) to a weight, rightmost letter first."""
        word = w.lexmin_word if isinstance(w, WeylElement) else tuple(w)
        for i in reversed(word):
            mu = self.rs.simple_reflect(mu, i)
        return mu

    def act_on_root(self, w: WeylElement | Sequence[int], root_coords: tuple[int, ...]):
        """Apply ``w`` to a root written in the simple-root basis."""
        word = w.lexmin_word if isinstance(w, WeylElement) else tuple(w)
        for i in reversed(word):
            root_coords = self.rs.simple_reflect_root(root_coords, i)
        return root_coords

    def multiply(self, u: WeylElement, v: WeylElement) -> WeylElement:
        return self.from_word(u.lexmin_word + v.lexmin_word)

    # -- parabolic quotients ---------------------------------------------

    def parabolic_support(self, lam: Weight) -> frozenset[int]:
        self.rs.check_weight(lam)
        return frozenset(i + 1 for i, c in enumerate(lam.coords) if c == 0)

    def is_minimal_rep(self, w: WeylElement, P: Iterable[int]) -> bool:
        """True iff ``w(alpha_i) > 0`` for every ``i`` in ``P``."""
        for i in P:
            self.rs.check_index(i)
            image = self.act_on_root(w, _unit(self.rs.rank, i - 1))
            if any(c < 0 for c in image):
                return False
        return True

    def minimal_rep(self, w: WeylElement, P: Iterable[int]) -> WeylElement:
        """Minimal-length representative of ``w W_P``."""
        indices = sorted(P)
        while True:
            bad = next(
                (
                    i
                    for i in indices
                    if any(c < 0 for c in self.act_on_root(w, _unit(self.rs.rank, i - 1)))
                ),
                None,
            )
            if bad is None:
                return w
            # w(alpha_i) < 0, so w s_i is shorter by one
            w = self.from_word(w.lexmin_word + (bad,))

    def minimal_rep_for_weight(self, lam: Weight, mu: Weight) -> WeylElement:
        """Minimal representative ``sigma`` with ``sigma(lam) = mu`` (``lam`` dominant)."""
        word: list[int] = []
        current = mu
        while True:
            i = next((k for k, c in enumerate(current.coords) if c < 0), None)
            if i is None:
                break
            word.append(i + 1)
            current = self.rs.simple_reflect(current, i + 1)
        if current != lam:
            raise InvalidInputError(f"{mu.coords} is not in the Weyl orbit of {lam.coords}")
        return self.from_word(word)

    def quotient_elements(self, P: Iterable[int]) -> list[WeylElement]:
        """All minimal representatives of ``W / W_P`` sorted by (length, lexmin word)."""
        lam = _support_weight(self.rs.rank, P)
        elems = [self.minimal_rep_for_weight(lam, mu) for mu in self.orbit(lam)]
        return sorted(elems, key=lambda e: (e.length, e.lexmin_word))

    def longest_minimal_rep(self, P: Iterable[int]) -> WeylElement:
        """Maximal element of ``W^P``: the representative sending ``lam`` to the antidominant weight."""
        lam = _support_weight(self.rs.rank, P)
        mu = lam
        while True:
            i = next((k for k, c in enumerate(mu.coords) if c > 0), None)
            if i is None:
                break
            mu = self.rs.simple_reflect(mu, i + 1)
        return self.minimal_rep_for_weight(lam, mu)

    def longest_element(self) -> WeylElement:
        return self.element(-self.rs.rho)

    # -- enumeration ------------------------------------------------------

    def orbit(self, mu: Weight) -> list[Weight]:
        """Weyl orbit of a weight, breadth-first from ``mu``."""
        seen = {mu}
        order = [mu]
        queue = deque([mu])
        while queue:
            nu = queue.popleft()
            for i in range(1, self.rs.rank + 1):
                image = self.rs.simple_reflect(nu, i)
                if image not in seen:
                    seen.add(image)
                    order.append(image)
                    queue.append(image)
        return order

    def enumerate_group(self) -> list[WeylElement]:
        """All elements sorted by (length, lexmin word)."""
        elems = [self.element(key) for key in self.orbit(self.rs.rho)]
        return sorted(elems, key=lambda e: (e.length, e.lexmin_word))

    def reduced_words(self, w: WeylElement, limit: int = 10_000) -> list[tuple[int, ...]]:
        """All reduced words of ``w`` in lexicographic order."""
        out: list[tuple[int, ...]] = []

        def walk(key: Weight, prefix: tuple[int, ...]):
            descents = [i + 1 for i, c in enumerate(key.coords) if c < 0]
            if not descents:
                out.append(prefix)
                if len(out) > limit:
                    raise TooManyError(f"more than {limit} reduced words")
                return
            for i in descents:
                walk(self.rs.simple_reflect(key, i), prefix + (i,))

        walk(w.key, ())
        return out

    # -- Bruhat order -----------------------------------------------------

    def bruhat_interval(self, w: WeylElement) -> frozenset[Weight]:
        """Keys of all ``v <= w``: products of subwords of a reduced word of ``w``."""
        cached = self._intervals.get(w.key)
        if cached is not None:
            return cached
        keys = {self.rs.rho}
        for i in reversed(w.lexmin_word):
            keys |= {self.rs.simple_reflect(k, i) for k in keys}
        interval = frozenset(keys)
        self._intervals[w.key] = interval
        return interval

    def bruhat_leq(self, v: WeylElement, w: WeylElement) -> bool:
        if v.length > w.length:
            return False
        if v.length == w.length:
            return v.key == w.key
        return v.key in self.bruhat_interval(w)


def _pair(mu: Weight, beta) -> int:
    return sum(c * m for c, m in zip(beta.coroot_coords, mu.coords))


def _unit(rank: int, i: int) -> tuple[int, ...]:
    return tuple(1 if j == i else 0 for j in range(rank))


def _support_weight(rank: int, P: Iterable[int]) -> Weight:
    """Dominant weight whose stabiliser is ``W_P``."""
    excluded = set(P)
    return Weight(tuple(0 if i + 1 in excluded else 1 for i in range(rank)))
