"""
Tensor product and join of based ADCs, disk complexes and pushouts.

Sign conventions:

    d(x ⊗ y) = d(x) ⊗ y + (-1)^p x ⊗ d(y)          (d = 0 in degree 0)
    d(x ⋆ y) = d(x) ⋆ y + (-1)^(p+1) x ⋆ d(y)      (d(z) = e(z)∅ in degree 0, d(∅) = 0)

where p is the degree of x (and -1 for ∅). Terms ∅ ⋆ ∅ are dropped.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from adc_toolkit.complexes import atom
from adc_toolkit.config import get_limits_config
from adc_toolkit.errors import AdcInputError, CapExceededError, InternalConsistencyError
from adc_toolkit.models import AdcComplex, AdcMorphism, BasisId, ChainElement, NuCell
from adc_toolkit.morphisms import compose, is_rigid_ordered_inclusion, same_action, validate_morphism

logger = logging.getLogger(__name__)

EMPTY = "∅"
TENSOR = "⊗"
JOIN = "⋆"

JoinFactor = Optional[ChainElement]


def _wrap(ident: BasisId) -> str:
    if TENSOR in ident or JOIN in ident:
        return f"({ident})"
    return ident


def tensor_label(x: BasisId, y: BasisId) -> BasisId:
    return f"{_wrap(x)}{TENSOR}{_wrap(y)}"


def join_label(x: BasisId, y: BasisId) -> BasisId:
    """Label of x ⋆ y; either side may be the unit token."""
    if x == EMPTY and y == EMPTY:
        raise AdcInputError("∅ ⋆ ∅ is not a basis element")
    return f"{_wrap(x)}{JOIN}{_wrap(y)}"


def _resolve_cap(total: int, degree_cap: Optional[int], what: str) -> None:
    cap = get_limits_config().degree_cap if degree_cap is None else degree_cap
    if total > cap:
        raise CapExceededError(f"{what} would reach degree {total}, above the cap {cap}")


@dataclass(frozen=True, eq=False)
class TensorComplex(AdcComplex):
    left: AdcComplex
    right: AdcComplex
    components: Mapping[BasisId, Tuple[BasisId, BasisId]]

    def label(self, x: BasisId, y: BasisId) -> BasisId:
        return tensor_label(x, y)


@dataclass(frozen=True, eq=False)
class JoinComplex(AdcComplex):
    left: AdcComplex
    right: AdcComplex
    components: Mapping[BasisId, Tuple[BasisId, BasisId]]

    def label(self, x: BasisId, y: BasisId) -> BasisId:
        return join_label(x, y)


def _top_degree(K: AdcComplex) -> int:
    """Highest degree with a non-empty basis, -1 for the empty complex."""
    for degree in range(len(K.basis) - 1, -1, -1):
        if K.basis[degree]:
            return degree
    return -1


def tensor_product(T: TensorComplex, x: ChainElement, y: ChainElement) -> ChainElement:
    """The bilinear extension of x ⊗ y into T."""
    acc: Dict[BasisId, int] = {}
    for a, ca in x.terms:
        for b, cb in y.terms:
            label = tensor_label(a, b)
            acc[label] = acc.get(label, 0) + ca * cb
    return ChainElement.from_dict(x.degree + y.degree, acc)


def join_product(J: JoinComplex, x: JoinFactor, y: JoinFactor) -> ChainElement:
    """
    The bilinear extension of x ⋆ y into J, None standing for ∅.

    Raises:
        AdcInputError: if both factors are ∅.
    """
    if x is None and y is None:
        raise AdcInputError("∅ ⋆ ∅ has no image in a join")
    left_terms = ((EMPTY, 1),) if x is None else x.terms
    right_terms = ((EMPTY, 1),) if y is None else y.terms
    degree = (-1 if x is None else x.degree) + 1 + (-1 if y is None else y.degree)
    acc: Dict[BasisId, int] = {}
    for a, ca in left_terms:
        for b, cb in right_terms:
            label = join_label(a, b)
            acc[label] = acc.get(label, 0) + ca * cb
    return ChainElement.from_dict(degree, acc)


@lru_cache(maxsize=256)
def tensor_complex(K: AdcComplex, L: AdcComplex, degree_cap: Optional[int] = None) -> TensorComplex:
    """
    Build K ⊗ L on the product basis.

    Raises:
        CapExceededError: if max_degree(K) + max_degree(L) exceeds the degree cap.
    """
    _resolve_cap(K.max_degree + L.max_degree, degree_cap, f"{K.name} ⊗ {L.name}")
    top = _top_degree(K) + _top_degree(L) if _top_degree(K) >= 0 and _top_degree(L) >= 0 else -1
    basis: List[List[BasisId]] = [[] for _ in range(max(top, 0) + 1)]
    components: Dict[BasisId, Tuple[BasisId, BasisId]] = {}
    differential: Dict[BasisId, ChainElement] = {}
    augmentation: Dict[BasisId, int] = {}

    for total in range(top + 1):
        for p in range(total + 1):
            for x in K.basis_in(p):
                for y in L.basis_in(total - p):
                    label = tensor_label(x, y)
                    basis[total].append(label)
                    components[label] = (x, y)
                    if total == 0:
                        augmentation[label] = K.augmentation_of(x) * L.augmentation_of(y)
                        continue
                    acc: Dict[BasisId, int] = {}
                    if p > 0:
                        for a, ca in K.boundary_of(x).terms:
                            key = tensor_label(a, y)
                            acc[key] = acc.get(key, 0) + ca
                    if total - p > 0:
                        sign = -1 if p % 2 else 1
                        for b, cb in L.boundary_of(y).terms:
                            key = tensor_label(x, b)
                            acc[key] = acc.get(key, 0) + sign * cb
                    differential[label] = ChainElement.from_dict(total - 1, acc)

    result = TensorComplex(
        name=f"{_wrap(K.name)}{TENSOR}{_wrap(L.name)}",
        max_degree=K.max_degree + L.max_degree,
        basis=tuple(tuple(ids) for ids in basis),
        differential=differential,
        augmentation=augmentation,
        left=K,
        right=L,
        components=components,
    )
    logger.info(f"built {result.name} with {result.size} basis elements")
    return result


def _extended_boundary(K: AdcComplex, ident: BasisId) -> Sequence[Tuple[BasisId, int]]:
    """d with the join conventions: d(∅) = 0 and d(z) = e(z)∅ in degree 0."""
    if ident == EMPTY:
        return ()
    if K.degree_of(ident) == 0:
        value = K.augmentation_of(ident)
        return ((EMPTY, value),) if value else ()
    return K.boundary_of(ident).terms


@lru_cache(maxsize=256)
def join_complex(K: AdcComplex, L: AdcComplex, degree_cap: Optional[int] = None) -> JoinComplex:
    """
    Build K ⋆ L with basis {x⋆∅} ∪ {∅⋆y} ∪ {x⋆y}.

    Raises:
        CapExceededError: if max_degree(K) + 1 + max_degree(L) exceeds the degree cap.
    """
    _resolve_cap(K.max_degree + 1 + L.max_degree, degree_cap, f"{K.name} ⋆ {L.name}")
    left_ids = [(EMPTY, -1)] + [(x, K.degree_of(x)) for x in K.all_ids]
    right_ids = [(EMPTY, -1)] + [(y, L.degree_of(y)) for y in L.all_ids]
    top = max(_top_degree(K), _top_degree(L), _top_degree(K) + 1 + _top_degree(L))
    basis: List[List[BasisId]] = [[] for _ in range(max(top, 0) + 1)]
    components: Dict[BasisId, Tuple[BasisId, BasisId]] = {}
    differential: Dict[BasisId, ChainElement] = {}
    augmentation: Dict[BasisId, int] = {}

    for x, p in left_ids:
        for y, q in right_ids:
            if x == EMPTY and y == EMPTY:
                continue
            degree = p + 1 + q
            label = join_label(x, y)
            basis[degree].append(label)
            components[label] = (x, y)
            if degree == 0:
                augmentation[label] = K.augmentation_of(x) if y == EMPTY else L.augmentation_of(y)
                continue
            acc: Dict[BasisId, int] = {}
            for a, ca in _extended_boundary(K, x):
                if a == EMPTY and y == EMPTY:
                    continue
                key = join_label(a, y)
                acc[key] = acc.get(key, 0) + ca
            sign = 1 if p % 2 else -1
            for b, cb in _extended_boundary(L, y):
                if x == EMPTY and b == EMPTY:
                    continue
                key = join_label(x, b)
                acc[key] = acc.get(key, 0) + sign * cb
            differential[label] = ChainElement.from_dict(degree - 1, acc)

    result = JoinComplex(
        name=f"{_wrap(K.name)}{JOIN}{_wrap(L.name)}",
        max_degree=max(K.max_degree, L.max_degree, K.max_degree + 1 + L.max_degree),
        basis=tuple(tuple(ids) for ids in basis),
        differential=differential,
        augmentation=augmentation,
        left=K,
        right=L,
        components=components,
    )
    logger.info(f"built {result.name} with {result.size} basis elements")
    return result


def tensor_morphism(
    f: AdcMorphism,
    g: AdcMorphism,
    source: Optional[TensorComplex] = None,
    target: Optional[TensorComplex] = None,
) -> AdcMorphism:
    """(f ⊗ g)(x ⊗ y) = f(x) ⊗ g(y)."""
    source = source or tensor_complex(f.source, g.source, f.source.max_degree + g.source.max_degree)
    target = target or tensor_complex(f.target, g.target, f.target.max_degree + g.target.max_degree)
    action = {
        label: tensor_product(target, f.image(x), g.image(y))
        for label, (x, y) in source.components.items()
    }
    return AdcMorphism(source, target, action, name=f"{_wrap(f.name)}{TENSOR}{_wrap(g.name)}")


def _join_cap(K: AdcComplex, L: AdcComplex) -> int:
    return K.max_degree + 1 + L.max_degree


def join_inclusions(J: JoinComplex) -> Tuple[AdcMorphism, AdcMorphism]:
    """ι₁: K → K⋆L, x ↦ x⋆∅ and ι₂: L → K⋆L, y ↦ ∅⋆y."""
    K, L = J.left, J.right
    iota1 = AdcMorphism(K, J, {x: J.generator(join_label(x, EMPTY)) for x in K.all_ids}, name="ι₁")
    iota2 = AdcMorphism(L, J, {y: J.generator(join_label(EMPTY, y)) for y in L.all_ids}, name="ι₂")
    return iota1, iota2


def join_morphism(
    f: AdcMorphism,
    g: AdcMorphism,
    source: Optional[JoinComplex] = None,
    target: Optional[JoinComplex] = None,
) -> AdcMorphism:
    """(f ⋆ g)(x ⋆ y) = f(x) ⋆ g(y) with ∅ fixed."""
    source = source or join_complex(f.source, g.source, _join_cap(f.source, g.source))
    target = target or join_complex(f.target, g.target, _join_cap(f.target, g.target))
    action: Dict[BasisId, ChainElement] = {}
    for label, (x, y) in source.components.items():
        left = None if x == EMPTY else f.image(x)
        right = None if y == EMPTY else g.image(y)
        action[label] = join_product(target, left, right)
    return AdcMorphism(source, target, action, name=f"{_wrap(f.name)}{JOIN}{_wrap(g.name)}")


@lru_cache(maxsize=32)
def disk_complex(i: int) -> AdcComplex:
    """
    λ(D_i): generators s{k}, t{k} for k < i and c{i} in degree i.

    d(c_i) = t_{i-1} - s_{i-1} and d(s_k) = d(t_k) = t_{k-1} - s_{k-1}.
    """
    if i < 0:
        raise AdcInputError(f"disk dimension must be non-negative, got {i}")
    _resolve_cap(i, None, f"disk D{i}")
    basis: List[Tuple[BasisId, ...]] = [(f"s{k}", f"t{k}") for k in range(i)]
    basis.append((f"c{i}",))
    differential: Dict[BasisId, ChainElement] = {}
    for k in range(1, i + 1):
        boundary = ChainElement.of(k - 1, {f"t{k - 1}": 1, f"s{k - 1}": -1})
        if k < i:
            differential[f"s{k}"] = boundary
            differential[f"t{k}"] = boundary
        else:
            differential[f"c{i}"] = boundary
    augmentation = {"c0": 1} if i == 0 else {"s0": 1, "t0": 1}
    return AdcComplex(f"D{i}", i, tuple(basis), differential, augmentation)


def principal_cell(i: int, j: int) -> NuCell:
    """
    The atom <c_i ⊗ c_j> in λ(D_i) ⊗ λ(D_j).

    Raises:
        InternalConsistencyError: if the atom fails the unit condition.
    """
    T = tensor_complex(disk_complex(i), disk_complex(j))
    found = atom(T, tensor_label(f"c{i}", f"c{j}"))
    if not found.unital:
        raise InternalConsistencyError(f"principal cell of D{i} ⊗ D{j} is not unital")
    return found.cell


@dataclass(frozen=True, eq=False)
class PushoutComplex(AdcComplex):
    """L ⊔_{K′} M for a rigid ordered inclusion g′: K′ → L and u: K′ → M."""
    inclusion: AdcMorphism
    along: AdcMorphism
    renaming: Mapping[BasisId, BasisId]

    @property
    def base(self) -> AdcComplex:
        return self.inclusion.target

    @property
    def attached(self) -> AdcComplex:
        return self.along.target


@dataclass(frozen=True)
class Pushout:
    complex: PushoutComplex
    left_leg: AdcMorphism
    right_leg: AdcMorphism


def pushout_along_rigid_inclusion(g_prime: AdcMorphism, u: AdcMorphism) -> Pushout:
    """
    Glue M = target(u) onto L = target(g′) along K′.

    Basis: basis(M) followed by the basis of L outside g′(K′). An L-identifier
    that collides with an M-identifier is renamed "L|id". L-differentials are
    rewritten by replacing g′(k) with u(k).

    Raises:
        AdcInputError: if g′ is not a rigid ordered inclusion or the sources differ.
    """
    if g_prime.source.name != u.source.name:
        raise AdcInputError(f"pushout legs start at {g_prime.source.name} and {u.source.name}")
    rigidity = is_rigid_ordered_inclusion(g_prime)
    if not rigidity:
        raise AdcInputError(f"pushout along a non-rigid map: {rigidity.counterexample}")
    K_prime, L, M = g_prime.source, g_prime.target, u.target

    preimage: Dict[BasisId, BasisId] = {g_prime.image(k).terms[0][0]: k for k in K_prime.all_ids}
    m_ids = set(M.all_ids)
    renaming: Dict[BasisId, BasisId] = {}
    for ident in L.all_ids:
        if ident not in preimage:
            renaming[ident] = f"L|{ident}" if ident in m_ids else ident

    def rewrite(x: ChainElement) -> ChainElement:
        acc: Dict[BasisId, int] = {}
        for ident, coef in x.terms:
            if ident in preimage:
                for target_id, target_coef in u.image(preimage[ident]).terms:
                    acc[target_id] = acc.get(target_id, 0) + coef * target_coef
            else:
                acc[renaming[ident]] = acc.get(renaming[ident], 0) + coef
        return ChainElement.from_dict(x.degree, acc)

    depth = max(len(L.basis), len(M.basis))
    basis: List[List[BasisId]] = [list(M.basis_in(degree)) for degree in range(depth)]
    differential: Dict[BasisId, ChainElement] = dict(M.differential)
    augmentation: Dict[BasisId, int] = dict(M.augmentation)
    for degree in range(depth):
        for ident in L.basis_in(degree):
            if ident in preimage:
                continue
            new_id = renaming[ident]
            basis[degree].append(new_id)
            if degree == 0:
                augmentation[new_id] = L.augmentation_of(ident)
            else:
                differential[new_id] = rewrite(L.boundary_of(ident))

    P = PushoutComplex(
        name=f"{_wrap(L.name)}⊔[{K_prime.name}]{_wrap(M.name)}",
        max_degree=max(L.max_degree, M.max_degree),
        basis=tuple(tuple(ids) for ids in basis),
        differential=differential,
        augmentation=augmentation,
        inclusion=g_prime,
        along=u,
        renaming=renaming,
    )
    left_leg = AdcMorphism(L, P, {ident: rewrite(L.generator(ident)) for ident in L.all_ids}, name="j_L")
    right_leg = AdcMorphism(M, P, {ident: M.generator(ident) for ident in M.all_ids}, name="j_M")
    logger.info(f"pushout {P.name}: {P.size} basis elements")
    return Pushout(P, left_leg, right_leg)


def copair(pushout: Pushout, a: AdcMorphism, b: AdcMorphism, name: str = "") -> AdcMorphism:
    """
    The morphism [a, b]: L ⊔_{K′} M → X induced by a: L → X and b: M → X.

    Raises:
        AdcInputError: if a∘g′ and b∘u differ.
    """
    P = pushout.complex
    if a.source.name != P.base.name or b.source.name != P.attached.name:
        raise AdcInputError(f"copair components do not start at {P.base.name} and {P.attached.name}")
    if not same_action(compose(a, P.inclusion), compose(b, P.along)):
        raise AdcInputError(f"copair components disagree on {P.inclusion.source.name}")
    action: Dict[BasisId, ChainElement] = {ident: b.image(ident) for ident in P.attached.all_ids}
    for ident, new_id in P.renaming.items():
        action[new_id] = a.image(ident)
    return AdcMorphism(P, a.target, action, name=name or f"[{a.name},{b.name}]")


def is_isomorphism(f: AdcMorphism) -> bool:
    """A valid morphism that is a degree-preserving bijection on bases."""
    if not validate_morphism(f).ok or f.source.size != f.target.size:
        return False
    hit = set()
    for ident in f.source.all_ids:
        image = f.image(ident)
        if len(image.terms) != 1 or image.terms[0][1] != 1:
            return False
        hit.add(image.terms[0][0])
    return len(hit) == f.target.size


def tensor_associator(K: AdcComplex, L: AdcComplex, M: AdcComplex) -> AdcMorphism:
    """(K ⊗ L) ⊗ M → K ⊗ (L ⊗ M), (x ⊗ y) ⊗ z ↦ x ⊗ (y ⊗ z)."""
    total = K.max_degree + L.max_degree + M.max_degree
    KL = tensor_complex(K, L, total)
    LM = tensor_complex(L, M, total)
    source = tensor_complex(KL, M, total)
    target = tensor_complex(K, LM, total)
    action: Dict[BasisId, ChainElement] = {}
    for label, (xy, z) in source.components.items():
        x, y = KL.components[xy]
        action[label] = target.generator(tensor_label(x, tensor_label(y, z)))
    return AdcMorphism(source, target, action, name="α⊗")


def _left_join(x: BasisId, y: BasisId) -> BasisId:
    return EMPTY if x == EMPTY and y == EMPTY else join_label(x, y)


def join_associator(K: AdcComplex, L: AdcComplex, M: AdcComplex) -> AdcMorphism:
    """(K ⋆ L) ⋆ M → K ⋆ (L ⋆ M); iterated joins are left-associated elsewhere."""
    total = K.max_degree + L.max_degree + M.max_degree + 2
    KL = join_complex(K, L, total)
    LM = join_complex(L, M, total)
    source = join_complex(KL, M, total)
    target = join_complex(K, LM, total)
    action: Dict[BasisId, ChainElement] = {}
    for label, (xy, z) in source.components.items():
        x, y = (EMPTY, EMPTY) if xy == EMPTY else KL.components[xy]
        action[label] = target.generator(join_label(x, _left_join(y, z)))
    return AdcMorphism(source, target, action, name="α⋆")


def empty_complex() -> AdcComplex:
    """The unit of ⋆: no basis elements at all."""
    return AdcComplex(EMPTY, 0, ((),), {}, {})


def tensor_unitors(K: AdcComplex) -> Tuple[AdcMorphism, AdcMorphism]:
    """λ: D0 ⊗ K → K and ρ: K ⊗ D0 → K."""
    U = disk_complex(0)
    left = tensor_complex(U, K, K.max_degree)
    right = tensor_complex(K, U, K.max_degree)
    lam = AdcMorphism(left, K, {label: K.generator(y) for label, (_, y) in left.components.items()}, name="λ⊗")
    rho = AdcMorphism(right, K, {label: K.generator(x) for label, (x, _) in right.components.items()}, name="ρ⊗")
    return lam, rho


def join_unitors(K: AdcComplex) -> Tuple[AdcMorphism, AdcMorphism]:
    """∅ ⋆ K → K and K ⋆ ∅ → K for the empty complex ∅."""
    E = empty_complex()
    left = join_complex(E, K, K.max_degree + 1)
    right = join_complex(K, E, K.max_degree + 1)
    lam = AdcMorphism(left, K, {label: K.generator(y) for label, (_, y) in left.components.items()}, name="λ⋆")
    rho = AdcMorphism(right, K, {label: K.generator(x) for label, (x, _) in right.components.items()}, name="ρ⋆")
    return lam, rho


def iterated_join(factors: Sequence[AdcComplex], degree_cap: Optional[int] = None) -> AdcComplex:
    """Left-associated join of a non-empty sequence of complexes."""
    if not factors:
        raise AdcInputError("iterated join of no factors")
    result: AdcComplex = factors[0]
    for factor in factors[1:]:
        result = join_complex(result, factor, degree_cap)
    return result


def q_projections(T: TensorComplex) -> Tuple[AdcMorphism, AdcMorphism]:
    """
    q₁: K ⊗ L → K and q₂: K ⊗ L → L.

    q₁(x ⊗ y) = e(y) x when y has degree 0 and 0 otherwise; q₂ symmetrically.
    """
    K, L = T.left, T.right
    first: Dict[BasisId, ChainElement] = {}
    second: Dict[BasisId, ChainElement] = {}
    for label, (x, y) in T.components.items():
        if L.degree_of(y) == 0 and L.augmentation_of(y):
            first[label] = K.generator(x, L.augmentation_of(y))
        if K.degree_of(x) == 0 and K.augmentation_of(x):
            second[label] = L.generator(y, K.augmentation_of(x))
    return AdcMorphism(T, K, first, name="q₁"), AdcMorphism(T, L, second, name="q₂")
