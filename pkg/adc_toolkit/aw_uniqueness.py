"""
Brute-force search for the families G_φ: c(Δn) → c(Δ1) ⊗ c(Δn) that are
sections of the projections, natural in n and constant on constant φ.

Only the image of the top tuple (0...n) is free at each level: naturality
against the face inclusions pins every lower tuple to a relabelled value of
a lower-level G. Candidates for the top are positive chains with
coefficients bounded by COEFFICIENT_BOUND solving d G(0...n) = G(d(0...n)).
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from adc_toolkit.errors import CapExceededError
from adc_toolkit.models import AdcMorphism, BasisId, ChainElement, SimplexMap, ValidationReport
from adc_toolkit.monoidal import TensorComplex, q_projections, tensor_complex, tensor_label
from adc_toolkit.morphisms import compose, identity_morphism, same_action, validate_morphism
from adc_toolkit.orientals import cosimplicial_image, g_phi, oriental_complex, parse_simplex_id, simplex_id

logger = logging.getLogger(__name__)

COEFFICIENT_BOUND = 2
MAX_LEVEL = 2

Family = Dict[Tuple[int, ...], AdcMorphism]


@dataclass
class AwUniquenessResult:
    report: ValidationReport
    families_per_level: Dict[int, int] = field(default_factory=dict)
    level_one_candidates: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict[str, object]:
        return {
            "report": self.report.to_dict(),
            "families_per_level": {str(k): v for k, v in sorted(self.families_per_level.items())},
            "level_one_candidates": list(self.level_one_candidates),
        }


def _target(n: int) -> TensorComplex:
    return tensor_complex(oriental_complex(1, 1), oriental_complex(n, max(n, 1)), n + 1)


def _relabel(x: ChainElement, psi: SimplexMap) -> ChainElement:
    """(id ⊗ c(ψ)) for an injective ψ, on chains of c(Δ1) ⊗ c(Δk)."""
    T = _target(psi.source_dim)
    acc: Dict[BasisId, int] = {}
    for label, coef in x.terms:
        left, right = T.components[label]
        image = simplex_id([psi(v) for v in parse_simplex_id(right)])
        key = tensor_label(left, image)
        acc[key] = acc.get(key, 0) + coef
    return ChainElement.from_dict(x.degree, acc)


def _pinned_action(phi: SimplexMap, family: Family) -> Dict[BasisId, ChainElement]:
    """Images of all non-top tuples forced by naturality against faces."""
    n = phi.source_dim
    C = oriental_complex(n, max(n, 1))
    action: Dict[BasisId, ChainElement] = {}
    for ident in C.all_ids:
        vertices = parse_simplex_id(ident)
        p = len(vertices) - 1
        if p == n:
            continue
        psi = SimplexMap(p, n, vertices)
        lower = family[phi.compose(psi).values]
        action[ident] = _relabel(lower.image(simplex_id(range(p + 1))), psi)
    return action


def _top_candidates(phi: SimplexMap, pinned: Dict[BasisId, ChainElement]) -> List[ChainElement]:
    n = phi.source_dim
    C = oriental_complex(n, max(n, 1))
    T = _target(n)
    top = simplex_id(range(n + 1))
    unknowns = T.basis_in(n)
    if n == 0:
        required = None
    else:
        acc: Dict[BasisId, int] = {}
        for face, coef in C.boundary_of(top).terms:
            for ident, value in pinned[face].terms:
                acc[ident] = acc.get(ident, 0) + coef * value
        required = ChainElement.from_dict(n - 1, acc)
    found: List[ChainElement] = []
    for coefficients in itertools.product(range(COEFFICIENT_BOUND + 1), repeat=len(unknowns)):
        z = ChainElement.of(n, zip(unknowns, coefficients))
        if z.is_zero():
            continue
        if required is None:
            if T.augment(z) == 1:
                found.append(z)
        elif T.boundary(z) == required:
            found.append(z)
    return found


def _satisfies_conditions(phi: SimplexMap, G: AdcMorphism, family: Family) -> bool:
    """Chain map, projections (a), naturality (b) and the constant case (c)."""
    if not validate_morphism(G).ok:
        return False
    n = phi.source_dim
    T = _target(n)
    q1, q2 = q_projections(T)
    if not same_action(compose(q1, G), cosimplicial_image(phi)):
        return False
    if not same_action(compose(q2, G), identity_morphism(G.source)):
        return False
    for k in range(n):
        for psi in SimplexMap.all_maps(k, n):
            lower = family[phi.compose(psi).values]
            c_psi = cosimplicial_image(psi)
            for ident in lower.source.all_ids:
                lhs = G.apply(c_psi.image(ident))
                rhs = _apply_right(lower.image(ident), psi)
                if lhs != rhs:
                    return False
    if len(set(phi.values)) == 1:
        eps = str(phi.values[0])
        constant = {ident: T.generator(tensor_label(eps, ident)) for ident in G.source.all_ids}
        if any(G.image(ident) != value for ident, value in constant.items()):
            return False
    return True


def _apply_right(x: ChainElement, psi: SimplexMap) -> ChainElement:
    """(id ⊗ c(ψ)) for any monotone ψ; non-injective images vanish."""
    source = _target(psi.source_dim)
    acc: Dict[BasisId, int] = {}
    for label, coef in x.terms:
        left, right = source.components[label]
        image = [psi(v) for v in parse_simplex_id(right)]
        if any(a >= b for a, b in zip(image, image[1:])):
            continue
        key = tensor_label(left, simplex_id(image))
        acc[key] = acc.get(key, 0) + coef
    return ChainElement.from_dict(x.degree, acc)


def _extend(family: Family, n: int) -> Tuple[List[Family], Dict[Tuple[int, ...], List[ChainElement]]]:
    choices: Dict[Tuple[int, ...], List[AdcMorphism]] = {}
    tops: Dict[Tuple[int, ...], List[ChainElement]] = {}
    C = oriental_complex(n, max(n, 1))
    top = simplex_id(range(n + 1))
    for phi in SimplexMap.all_maps(n, 1):
        pinned = _pinned_action(phi, family)
        survivors: List[AdcMorphism] = []
        candidates = _top_candidates(phi, pinned)
        for z in candidates:
            G = AdcMorphism(C, _target(n), {**pinned, top: z}, name=f"G{phi.values}")
            if _satisfies_conditions(phi, G, family):
                survivors.append(G)
        logger.debug(f"G{phi.values}: {len(candidates)} boundary solutions, {len(survivors)} survive")
        choices[phi.values] = survivors
        tops[phi.values] = [G.image(top) for G in survivors]
    keys = sorted(choices)
    extended: List[Family] = []
    for combination in itertools.product(*(choices[key] for key in keys)):
        new_family = dict(family)
        new_family.update(zip(keys, combination))
        extended.append(new_family)
    return extended, tops


def _alternative() -> ChainElement:
    """(1)⊗(01) + (01)⊗(0): solves the level-one equation, fails naturality at level 2."""
    return ChainElement.of(1, [(tensor_label("1", "0.1"), 1), (tensor_label("0.1", "0"), 1)])


def aw_uniqueness_oracle(n_max: int = MAX_LEVEL) -> AwUniquenessResult:
    """
    Confirm that g_φ is the only admissible family up to level n_max.

    families_per_level counts the families admissible up to each level; the
    alternative solution at level one survives until level two, so uniqueness
    at level n is judged on the families that survive the whole search.

    Raises:
        CapExceededError: if n_max is above the supported search level.
    """
    if n_max > MAX_LEVEL or n_max < 0:
        raise CapExceededError(f"uniqueness search supports levels 0..{MAX_LEVEL}, got {n_max}")
    report = ValidationReport(subject=f"AW section uniqueness up to level {n_max}")
    result = AwUniquenessResult(report)
    alternative = _alternative()
    level_one_tops: List[ChainElement] = []
    families: List[Family] = [{}]
    for n in range(n_max + 1):
        next_families: List[Family] = []
        for family in families:
            extended, tops = _extend(family, n)
            next_families.extend(extended)
            if n == 1:
                level_one_tops = tops[(0, 1)]
        families = next_families
        result.families_per_level[n] = len(families)
    result.level_one_candidates = sorted(str(z) for z in level_one_tops)

    for n in range(n_max + 1):
        check = f"unique_level_{n}"
        report.passed(check)
        for phi in SimplexMap.all_maps(n, 1):
            expected = g_phi(phi)
            if not families:
                report.fail(check, f"φ={phi.values}", "no admissible family")
            elif any(not same_action(family[phi.values], expected) for family in families):
                report.fail(check, f"φ={phi.values}", "a surviving family differs from g_φ")
    if n_max >= 2:
        report.passed("alternative_eliminated")
        if alternative not in level_one_tops:
            report.fail("alternative_eliminated", "level 1", "alternative was not a level-one candidate")
        elif any(family[(0, 1)].image("0.1") == alternative for family in families):
            report.fail("alternative_eliminated", "level 2", "alternative extends to level 2")
    logger.info(f"uniqueness oracle: families per level {result.families_per_level}")
    return result
