"""
The orientals c(Δn), their cosimplicial structure, the Alexander-Whitney
diagonal and the maps g_φ built from it.

Basis elements of c(Δn) are strictly increasing tuples of [0, n] written
"i0.i1.....ip" and placed in degree p.
"""

import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from adc_toolkit.config import get_limits_config
from adc_toolkit.errors import AdcInputError, CapExceededError, InternalConsistencyError
from adc_toolkit.models import (
    AdcComplex,
    AdcMorphism,
    Antihomotopy,
    BasisId,
    ChainElement,
    RetractStructure,
    SimplexMap,
    ValidationReport,
)
from adc_toolkit.monoidal import (
    EMPTY,
    TensorComplex,
    join_complex,
    join_label,
    tensor_associator,
    tensor_complex,
    tensor_label,
    tensor_morphism,
)
from adc_toolkit.morphisms import compose, first_difference, identity_morphism, validate_morphism

logger = logging.getLogger(__name__)

SIDES = ("oplax", "lax")


def simplex_id(vertices: Sequence[int]) -> BasisId:
    return ".".join(str(v) for v in vertices)


def parse_simplex_id(ident: BasisId) -> Tuple[int, ...]:
    """Inverse of simplex_id; raises AdcInputError on anything else."""
    try:
        vertices = tuple(int(part) for part in ident.split("."))
    except ValueError:
        raise AdcInputError(f"{ident!r} is not an oriental basis element")
    if any(a >= b for a, b in zip(vertices, vertices[1:])) or min(vertices) < 0:
        raise AdcInputError(f"{ident!r} is not strictly increasing")
    return vertices


@dataclass(frozen=True, eq=False)
class OrientalComplex(AdcComplex):
    n: int

    def simplex(self, *vertices: int) -> ChainElement:
        return self.generator(simplex_id(vertices))


def _check_side(side: str) -> None:
    if side not in SIDES:
        raise AdcInputError(f"side must be one of {SIDES}, got {side!r}")


@lru_cache(maxsize=64)
def oriental_complex(n: int, degree_cap: Optional[int] = None) -> OrientalComplex:
    """
    Build c(Δn).

    Args:
        n: simplex dimension.
        degree_cap: overrides the configured degree cap.

    Raises:
        CapExceededError: if n is above the cap.
    """
    if n < 0:
        raise AdcInputError(f"oriental dimension must be non-negative, got {n}")
    cap = get_limits_config().degree_cap if degree_cap is None else degree_cap
    if n > cap:
        raise CapExceededError(f"c(Δ{n}) is above the degree cap {cap}")
    basis: List[Tuple[BasisId, ...]] = []
    differential: Dict[BasisId, ChainElement] = {}
    for p in range(n + 1):
        ids = []
        for vertices in itertools.combinations(range(n + 1), p + 1):
            ident = simplex_id(vertices)
            ids.append(ident)
            if p > 0:
                faces = {
                    simplex_id(vertices[:k] + vertices[k + 1:]): (-1) ** k for k in range(p + 1)
                }
                differential[ident] = ChainElement.of(p - 1, faces)
        basis.append(tuple(ids))
    augmentation = {str(v): 1 for v in range(n + 1)}
    logger.debug(f"built c(Δ{n}) with {2 ** (n + 1) - 1} basis elements")
    return OrientalComplex(f"c(Δ{n})", n, tuple(basis), differential, augmentation, n=n)


def standard_oriental(n: int) -> OrientalComplex:
    """c(Δn) with the degree cap raised to n when needed; for internal constructions."""
    return oriental_complex(n, max(n, get_limits_config().degree_cap))


@lru_cache(maxsize=1024)
def cosimplicial_image(phi: SimplexMap) -> AdcMorphism:
    """c(φ): tuples map vertex-wise, and to 0 when the image is not strictly increasing."""
    source, target = standard_oriental(phi.source_dim), standard_oriental(phi.target_dim)
    action: Dict[BasisId, ChainElement] = {}
    for ident in source.all_ids:
        image = tuple(phi(v) for v in parse_simplex_id(ident))
        if all(a < b for a, b in zip(image, image[1:])):
            action[ident] = target.generator(simplex_id(image))
    return AdcMorphism(source, target, action, name=f"c{phi.values}")


def collapse_to_point(n: int) -> AdcMorphism:
    """The unique morphism c(Δn) → c(Δ0)."""
    return cosimplicial_image(SimplexMap.constant(n, 0, 0))


def vertex_inclusion(m: int, vertex: Optional[int] = None) -> AdcMorphism:
    """c(Δ0) → c(Δm) at the given vertex, the last one by default."""
    return cosimplicial_image(SimplexMap(0, m, (m if vertex is None else vertex,)))


def oriental_join_iso(m: int, n: int) -> AdcMorphism:
    """c(Δm) ⋆ c(Δn) → c(Δ(m+1+n)), shifting the right tuple by m + 1."""
    J = join_complex(standard_oriental(m), standard_oriental(n), m + 1 + n)
    target = standard_oriental(m + 1 + n)
    action: Dict[BasisId, ChainElement] = {}
    for label, (x, y) in J.components.items():
        left = () if x == EMPTY else parse_simplex_id(x)
        right = () if y == EMPTY else tuple(m + 1 + j for j in parse_simplex_id(y))
        action[label] = target.generator(simplex_id(left + right))
    return AdcMorphism(J, target, action, name=f"join_iso({m},{n})")


def oriental_join_inverse(m: int, n: int) -> AdcMorphism:
    """The inverse of oriental_join_iso."""
    J = join_complex(standard_oriental(m), standard_oriental(n), m + 1 + n)
    source = standard_oriental(m + 1 + n)
    action: Dict[BasisId, ChainElement] = {}
    for ident in source.all_ids:
        vertices = parse_simplex_id(ident)
        left = simplex_id([v for v in vertices if v <= m]) or EMPTY
        right = simplex_id([v - m - 1 for v in vertices if v > m]) or EMPTY
        action[ident] = J.generator(join_label(left, right))
    return AdcMorphism(source, J, action, name=f"join_split({m},{n})")


@lru_cache(maxsize=32)
def aw_diagonal(n: int, side: str = "oplax") -> AdcMorphism:
    """
    ∇(i0...ip) = Σ_l (i0...il) ⊗ (il...ip).

    Both g_φ and its lax counterpart g′_φ factor through this same diagonal;
    the side only changes which factor c(φ) is applied to afterwards.
    """
    _check_side(side)
    C = standard_oriental(n)
    T = tensor_complex(C, C, 2 * n)
    action: Dict[BasisId, ChainElement] = {}
    for ident in C.all_ids:
        vertices = parse_simplex_id(ident)
        terms = {
            tensor_label(simplex_id(vertices[: l + 1]), simplex_id(vertices[l:])): 1
            for l in range(len(vertices))
        }
        action[ident] = ChainElement.of(len(vertices) - 1, terms)
    return AdcMorphism(C, T, action, name="∇" if side == "oplax" else "∇′")


def _interval() -> OrientalComplex:
    return standard_oriental(1)


def g_phi_table(phi: SimplexMap, side: str = "oplax") -> AdcMorphism:
    """
    Closed form of g_φ (oplax) or g′_φ (lax).

    Oplax, with r the number of zeros among φ(i0), ..., φ(ip):
        r = 0: (1) ⊗ x;  r = 1: (0) ⊗ x + (01) ⊗ (i1...ip);  r ≥ 2: (0) ⊗ x.
    Lax, with r′ the number of ones:
        r′ = 0: x ⊗ (0);  r′ = 1: x ⊗ (1) + (i0...ip-1) ⊗ (01);  r′ ≥ 2: x ⊗ (1).
    Tuples of length zero are 0.
    """
    _check_side(side)
    if phi.target_dim != 1:
        raise AdcInputError(f"g_φ needs φ: [n] → [1], got target [{phi.target_dim}]")
    n = phi.source_dim
    C = standard_oriental(n)
    I = _interval()
    T = tensor_complex(I, C, n + 1) if side == "oplax" else tensor_complex(C, I, n + 1)
    action: Dict[BasisId, ChainElement] = {}
    for ident in C.all_ids:
        vertices = parse_simplex_id(ident)
        p = len(vertices) - 1
        values = [phi(v) for v in vertices]
        terms: Dict[BasisId, int] = {}
        if side == "oplax":
            zeros = values.count(0)
            terms[tensor_label("1" if zeros == 0 else "0", ident)] = 1
            if zeros == 1 and p >= 1:
                terms[tensor_label("0.1", simplex_id(vertices[1:]))] = 1
        else:
            ones = values.count(1)
            terms[tensor_label(ident, "0" if ones == 0 else "1")] = 1
            if ones == 1 and p >= 1:
                terms[tensor_label(simplex_id(vertices[:-1]), "0.1")] = 1
        action[ident] = ChainElement.of(p, terms)
    return AdcMorphism(C, T, action, name=f"g{phi.values}" if side == "oplax" else f"g′{phi.values}")


def g_phi_composite(phi: SimplexMap, side: str = "oplax") -> AdcMorphism:
    """(c(φ) ⊗ id) ∘ ∇ for the oplax side, (id ⊗ c(φ)) ∘ ∇ for the lax side."""
    _check_side(side)
    n = phi.source_dim
    C = standard_oriental(n)
    c_phi = cosimplicial_image(phi)
    source = tensor_complex(C, C, 2 * n)
    if side == "oplax":
        collapse = tensor_morphism(c_phi, identity_morphism(C), source, tensor_complex(_interval(), C, n + 1))
    else:
        collapse = tensor_morphism(identity_morphism(C), c_phi, source, tensor_complex(C, _interval(), n + 1))
    return compose(collapse, aw_diagonal(n, side))


def g_phi(phi: SimplexMap, side: str = "oplax") -> AdcMorphism:
    """
    The map c(Δn) → c(Δ1) ⊗ c(Δn) (or c(Δn) ⊗ c(Δ1) on the lax side).

    Raises:
        InternalConsistencyError: if the composite and the closed form disagree.
    """
    table = g_phi_table(phi, side)
    composite = g_phi_composite(phi, side)
    witness = first_difference(table, composite)
    if witness is not None:
        raise InternalConsistencyError(
            f"g{phi.values} ({side}) disagrees at {witness}: "
            f"table {table.image(witness)}, composite {composite.image(witness)}"
        )
    return table


def vertex_retraction(m: int) -> RetractStructure:
    """
    The strong square-zero retract (m, r′, h′) of c(Δm) onto its last vertex.

    h′(i0...ip) = (i0...ip m), and 0 when ip = m; h′ goes from id to m r′.
    """
    C = standard_oriental(m)
    inclusion = vertex_inclusion(m)
    retraction = collapse_to_point(m)
    action: Dict[BasisId, ChainElement] = {}
    for ident in C.all_ids:
        vertices = parse_simplex_id(ident)
        if vertices[-1] != m:
            action[ident] = C.generator(simplex_id(vertices + (m,)))
    homotopy = Antihomotopy(
        identity_morphism(C),
        compose(inclusion, retraction),
        action,
        shift=1,
        name="h′",
    )
    return RetractStructure(
        inclusion=inclusion,
        retraction=retraction,
        homotopy=homotopy,
        over_base=True,
        square_zero=True,
        strong=True,
    )


def _point_projection(T: TensorComplex, x: ChainElement, keep: str) -> ChainElement:
    """Identify c(Δ0) ⊗ K or K ⊗ c(Δ0) with K on a chain."""
    acc: Dict[BasisId, int] = {}
    for label, coef in x.terms:
        left, right = T.components[label]
        kept = right if keep == "right" else left
        acc[kept] = acc.get(kept, 0) + coef
    return ChainElement.from_dict(x.degree, acc)


def check_aw_coalgebra(n: int, side: str = "oplax") -> ValidationReport:
    """
    Validate ∇ on c(Δn): chain map, coassociativity, counit, and naturality
    against every monotone ψ: [k] → [n] with k ≤ n.
    """
    _check_side(side)
    report = ValidationReport(subject=f"Alexander-Whitney diagonal on c(Δ{n}) ({side})")
    C = standard_oriental(n)
    nabla = aw_diagonal(n, side)
    report.extend(validate_morphism(nabla), prefix="chain_map.")

    identity = identity_morphism(C)
    CC = tensor_complex(C, C, 2 * n)
    left = compose(tensor_morphism(nabla, identity, None, tensor_complex(CC, C, 3 * n)), nabla)
    right = compose(tensor_morphism(identity, nabla, None, tensor_complex(C, CC, 3 * n)), nabla)
    reassociated = compose(tensor_associator(C, C, C), left)
    report.passed("coassociative")
    witness = first_difference(reassociated, right)
    if witness is not None:
        report.fail("coassociative", witness, f"{reassociated.image(witness)} vs {right.image(witness)}")

    point = standard_oriental(0)
    counit = collapse_to_point(n)
    left_counit = compose(tensor_morphism(counit, identity, CC, tensor_complex(point, C, n)), nabla)
    right_counit = compose(tensor_morphism(identity, counit, CC, tensor_complex(C, point, n)), nabla)
    report.passed("counit")
    assert isinstance(left_counit.target, TensorComplex)
    assert isinstance(right_counit.target, TensorComplex)
    for ident in C.all_ids:
        expected = C.generator(ident)
        if _point_projection(left_counit.target, left_counit.image(ident), "right") != expected:
            report.fail("counit", ident, "left counit")
        if _point_projection(right_counit.target, right_counit.image(ident), "left") != expected:
            report.fail("counit", ident, "right counit")

    report.passed("natural")
    for k in range(n + 1):
        source = standard_oriental(k)
        source_nabla = aw_diagonal(k, side)
        for psi in SimplexMap.all_maps(k, n):
            c_psi = cosimplicial_image(psi)
            lhs = compose(nabla, c_psi)
            rhs = compose(
                tensor_morphism(c_psi, c_psi, tensor_complex(source, source, 2 * k), CC),
                source_nabla,
            )
            witness = first_difference(lhs, rhs)
            if witness is not None:
                report.fail("natural", f"{psi}:{witness}", f"{lhs.image(witness)} vs {rhs.image(witness)}")
    logger.info(f"AW coalgebra checks on c(Δ{n}): ok={report.ok}")
    return report


def check_g_phi_naturality(n: int, side: str = "oplax") -> ValidationReport:
    """g_φ ∘ c(ψ) = (id ⊗ c(ψ)) ∘ g_{φψ} for every φ: [n] → [1] and ψ: [k] → [n]."""
    _check_side(side)
    report = ValidationReport(subject=f"g_φ naturality on c(Δ{n}) ({side})")
    report.passed("natural")
    I = _interval()
    for phi in SimplexMap.all_maps(n, 1):
        g = g_phi(phi, side)
        for k in range(n + 1):
            for psi in SimplexMap.all_maps(k, n):
                c_psi = cosimplicial_image(psi)
                source = standard_oriental(k)
                g_small = g_phi(phi.compose(psi), side)
                identity = identity_morphism(I)
                if side == "oplax":
                    small = tensor_complex(I, source, k + 1)
                    lift = tensor_morphism(identity, c_psi, small, tensor_complex(I, standard_oriental(n), n + 1))
                else:
                    small = tensor_complex(source, I, k + 1)
                    lift = tensor_morphism(c_psi, identity, small, tensor_complex(standard_oriental(n), I, n + 1))
                lhs = compose(g, c_psi)
                rhs = compose(lift, g_small)
                witness = first_difference(lhs, rhs)
                if witness is not None:
                    report.fail("natural", f"φ={phi.values} ψ={psi.values} at {witness}")
    return report
