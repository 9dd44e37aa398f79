"""JSON documents emitted by the CLI and the HTTP surface"""

from datetime import datetime
from fractions import Fraction
from typing import Dict, List, Optional

from pydantic import BaseModel, Field

from lsfan.services.bonded_poset import BondedPoset, Chain
from lsfan.services.demazure import Character
from lsfan.services.lspath import PathVector, format_fraction, weight


class CaseOut(BaseModel):
    type: str
    lambda_: List[int] = Field(serialization_alias="lambda")
    tau: List[int]
    tau_label: str


class NodeOut(BaseModel):
    id: int
    label: str
    length: int
    weight: List[int]


class CoverOut(BaseModel):
    upper: str
    lower: str
    bond: int
    beta: List[int]


class PosetOut(BaseModel):
    case: CaseOut
    nodes: List[NodeOut]
    covers: List[CoverOut]
    lcm_bonds: int


class ChainOut(BaseModel):
    nodes: List[str]
    bonds: List[int]
    bond_product: int


class ChainsOut(BaseModel):
    case: CaseOut
    count: int
    chains: List[ChainOut]


class PathVectorOut(BaseModel):
    coefficients: Dict[str, str]
    degree: str
    weight: List[str]


class LsPathsOut(BaseModel):
    case: CaseOut
    degree: int
    count: int
    paths: List[PathVectorOut]


class WeightMultiplicity(BaseModel):
    weight: List[int]
    mult: int


class CharacterOut(BaseModel):
    case: CaseOut
    degree: int
    dimension: int
    terms: List[WeightMultiplicity]
    check: Optional[bool] = None


class DecomposeOut(BaseModel):
    path: PathVectorOut
    factors: List[PathVectorOut]
    decomposable: bool


class MonomialOut(BaseModel):
    factors: List[PathVectorOut]
    standard: bool
    guaranteed: bool = False


class StandardCountOut(BaseModel):
    case: CaseOut
    degree: int
    standard_monomials: int
    ls_paths: int


class StraightenOut(BaseModel):
    monomial: MonomialOut
    support: List[MonomialOut]


class DegreeOut(BaseModel):
    degree_by_bonds: int
    degree_by_hilbert: int


class GcdMismatchOut(BaseModel):
    upper: str
    lower: str
    gcds: List[int]


class GcdCheckOut(BaseModel):
    case: CaseOut
    pairs_checked: int
    mismatches: List[GcdMismatchOut]
    ok: bool


class DegreeRow(BaseModel):
    degree: int
    ls_paths: int
    demazure_dimension: int
    cardinality_ok: bool
    character_ok: bool
    standard_monomials: int
    standard_ok: bool


class CaseReport(BaseModel):
    """Outcome of the full verification battery for one case."""

    case: CaseOut
    d_max: int
    nodes: int
    chains: int
    lcm_bonds: int
    degrees: List[DegreeRow]
    hilbert_polynomial: Optional[str] = None
    degree_by_bonds: Optional[int] = None
    degree_by_hilbert: Optional[int] = None
    degree_ok: bool = False
    gcd_ok: bool = False
    multiplicity_one_ok: bool = False
    lattice_ok: bool = False
    b_matrix_ok: bool = False
    saturation_ok: bool = False
    decomposition_ok: bool = False
    weyl_dimension_ok: Optional[bool] = None
    restriction_ok: Optional[bool] = None
    failures: List[str] = []
    ok: bool = False


class VerificationRunOut(BaseModel):
    id: int
    case_type: str
    lambda_: str = Field(serialization_alias="lambda")
    tau: str
    d_max: int
    ok: bool
    created_at: datetime

    class Config:
        from_attributes = True


# -- converters --------------------------------------------------------------


def case_out(case) -> CaseOut:
    return CaseOut(
        type=str(case.kind),
        lambda_=list(case.lam.coords),
        tau=list(case.tau.lexmin_word),
        tau_label=case.tau.label(),
    )


def path_out(poset: BondedPoset, a: PathVector) -> PathVectorOut:
    return PathVectorOut(
        coefficients={poset.label(n): format_fraction(v) for n, v in a.entries},
        degree=format_fraction(Fraction(a.degree)),
        weight=[format_fraction(c) for c in weight(poset, a)],
    )


def poset_out(case, poset: BondedPoset) -> PosetOut:
    return PosetOut(
        case=case_out(case),
        nodes=[
            NodeOut(id=n.id, label=n.label, length=n.length, weight=list(n.weight.coords))
            for n in poset.nodes
        ],
        covers=[
            CoverOut(
                upper=poset.label(c.upper),
                lower=poset.label(c.lower),
                bond=c.bond,
                beta=list(c.beta.root_coords),
            )
            for c in poset.covers
        ],
        lcm_bonds=poset.N,
    )


def chain_out(poset: BondedPoset, chain: Chain) -> ChainOut:
    product = 1
    for b in chain.bonds:
        product *= b
    return ChainOut(
        nodes=[poset.label(n) for n in chain.nodes],
        bonds=list(chain.bonds),
        bond_product=product,
    )


def character_terms(ch: Character) -> List[WeightMultiplicity]:
    return [WeightMultiplicity(weight=list(mu.coords), mult=m) for mu, m in ch]


def monomial_out(poset: BondedPoset, m, *, standard: bool, guaranteed: bool = False) -> MonomialOut:
    return MonomialOut(
        factors=[path_out(poset, f) for f in m.factors],
        standard=standard,
        guaranteed=guaranteed,
    )


def to_json(model: BaseModel) -> dict:
    """Plain dict with the wire field names."""
    return model.model_dump(mode="json", by_alias=True)
