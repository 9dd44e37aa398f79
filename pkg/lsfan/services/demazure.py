"""Demazure characters: the independent oracle for ``V(d lambda)_tau``.

Characters live in the group algebra of the weight lattice, stored sparsely as
``Weight -> multiplicity``. ``D_i`` is the isobaric divided-difference operator;
composed along a reduced word of ``tau`` it turns ``e^{d lambda}`` into the
character of the Demazure module.
"""

from __future__ import annotations

import logging
from collections import defaultdict
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from lsfan.config import settings
from lsfan.errors import NegativeMultiplicityError, NotDominantError, TooManyError
from lsfan.services.rootsys import RootSystem, Weight
from lsfan.services.weyl import WeylElement

logger = logging.getLogger(__name__)


class Character:
    """Finite formal sum of ``e^mu`` with positive integer multiplicities."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Weight, int] | Iterable[tuple[Weight, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Weight, int] = defaultdict(int)
        for mu, m in items:
            acc[mu] += m
        negative = {mu: m for mu, m in acc.items() if m < 0}
        if negative:
            mu, m = min(negative.items())
            raise NegativeMultiplicityError(f"multiplicity {m} at weight {mu.coords}")
        self._terms = {mu: m for mu, m in acc.items() if m}

    @classmethod
    def monomial(cls, mu: Weight, mult: int = 1) -> "Character":
        return cls({mu: mult})

    def __iter__(self) -> Iterator[tuple[Weight, int]]:
        return iter(sorted(self._terms.items()))

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Character):
            return NotImplemented
        return self._terms == other._terms

    def __repr__(self) -> str:
        body = " + ".join(f"{m}*e{mu.coords}" for mu, m in self)
        return f"Character({body or '0'})"

    def items(self):
        return sorted(self._terms.items())

    def weights(self) -> set[Weight]:
        return set(self._terms)

    def dimension(self) -> int:
        return sum(self._terms.values())

    def multiplicity(self, mu: Weight) -> int:
        return self._terms.get(mu, 0)


def dimension(ch: Character) -> int:
    return ch.dimension()


def multiplicity(ch: Character, mu: Weight) -> int:
    return ch.multiplicity(mu)


def demazure_op(rs: RootSystem, i: int, ch: Character, cap: int | None = None) -> Character:
    """Isobaric Demazure operator ``D_i``.

    ``e^mu`` with ``k = <mu, alpha_i^vee>`` maps to the ``alpha_i``-string
    ``e^mu + ... + e^{s_i mu}`` when ``k >= 0``, to 0 when ``k = -1``, and to
    ``-(e^{mu + alpha_i} + ... + e^{s_i mu - alpha_i})`` when ``k <= -2``.
    Raises ``TooManyError`` once the result would hold more than ``cap``
    weights (default ``settings.max_paths``).
    """
    rs.check_index(i)
    cap = settings.max_paths if cap is None else cap
    alpha = rs.simple_roots[i - 1].weight
    acc: dict[Weight, int] = defaultdict(int)
    for mu, m in ch:
        k = mu.coords[i - 1]
        length = k + 1 if k >= 0 else max(0, -k - 1)
        if length > cap:
            raise TooManyError(f"alpha_{i}-string through {mu.coords} has more than {cap} weights")
        if k >= 0:
            nu = mu
            for _ in range(k + 1):
                acc[nu] += m
                nu = nu - alpha
        elif k <= -2:
            nu = mu + alpha
            for _ in range(-k - 1):
                acc[nu] -= m
                nu = nu + alpha
        if len(acc) > cap:
            acc = defaultdict(int, {nu: c for nu, c in acc.items() if c})
            if len(acc) > cap:
                raise TooManyError(f"more than {cap} weights in a Demazure character")
    return Character(acc)


def apply_word(
    rs: RootSystem, word: Sequence[int], ch: Character, cap: int | None = None
) -> Character:
    """``D_i1 o ... o D_ik`` applied to ``ch`` (``D_ik`` first)."""
    for i in reversed(word):
        ch = demazure_op(rs, i, ch, cap)
    return ch


def demazure_character(
    rs: RootSystem,
    lam: Weight,
    d: int,
    tau: WeylElement,
    word: Sequence[int] | None = None,
    cap: int | None = None,
) -> Character:
    """Character of ``V(d lambda)_tau`` from a reduced word of ``tau``.

    The number of weights is bounded by ``cap`` (default ``settings.max_paths``).
    """
    rs.check_weight(lam)
    if not lam.is_dominant():
        raise NotDominantError(f"lambda {lam.coords} is not dominant")
    if d < 0:
        raise ValueError("degree must be nonnegative")
    word = tau.lexmin_word if word is None else tuple(word)
    ch = apply_word(rs, word, Character.monomial(lam.scale(d)), cap)
    logger.debug(f"char V({d}*{lam.coords})_{tau.label()} has dimension {ch.dimension()}")
    return ch


def weyl_dimension(rs: RootSystem, lam: Weight) -> int:
    """``dim V(lambda)`` by the product over positive coroots."""
    num = Fraction(1)
    for beta in rs.positive_roots:
        lam_rho = sum(c * (m + 1) for c, m in zip(beta.coroot_coords, lam.coords))
        rho = sum(beta.coroot_coords)
        num *= Fraction(lam_rho, rho)
    return int(num)


def check_multiplicity_one(poset, sign: str = "minus") -> list[dict]:
    """Weights between the two ends of every cover have multiplicity one.

    For a cover with lower node ``sigma``, root ``beta`` and bond ``b``, the
    weights ``sigma(lambda) - j beta`` (``sign="minus"``) or
    ``sigma(lambda) + j beta`` (``sign="plus"``), ``j = 0..b``, are looked up in
    the character of ``V(lambda)_upper``. Returns the failures.
    """
    if sign not in ("minus", "plus"):
        raise ValueError(f"sign must be 'minus' or 'plus', got {sign!r}")
    rs = poset.rs
    failures: list[dict] = []
    characters: dict[int, Character] = {}
    for cover in poset.covers:
        upper = poset.node(cover.upper)
        if cover.upper not in characters:
            characters[cover.upper] = demazure_character(rs, poset.lam, 1, upper.element)
        ch = characters[cover.upper]
        base = poset.node(cover.lower).weight
        step = cover.beta.weight if sign == "plus" else -cover.beta.weight
        mu = base
        for j in range(cover.bond + 1):
            m = ch.multiplicity(mu)
            if m != 1:
                failures.append(
                    {
                        "upper": upper.label,
                        "lower": poset.label(cover.lower),
                        "j": j,
                        "weight": list(mu.coords),
                        "multiplicity": m,
                    }
                )
            mu = mu + step
    if failures:
        logger.warning(f"Multiplicity-one check ({sign}) failed at {len(failures)} weights")
    return failures

