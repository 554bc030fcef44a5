"""
Transfer of slice simplices along triangles and cones of ADCs.

A slice simplex of N(ν L) under c: c(Δm) → L is a morphism
a: c(Δm) ⋆ c(Δn) → L with a ∘ ι₁ = c. A triangle (f, g, g′, k) acts on such
simplices through

    ψ: K ⋆ T → L ⊔_{K′} (K′ ⋆ T),   a ↦ [b, a] ∘ ψ

and a cone (k, H) acts through χ on K ⋆ (c(Δ1) ⊗ T), giving the simplicial
homotopy h(φ, a) = [b, a] ∘ χ ∘ (K ⋆ g_φ). The vertex retraction of c(Δm)
assembles these into the triple (r, s, h) checked by slice_sdr_suite.
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Tuple

from adc_toolkit.config import get_limits_config
from adc_toolkit.enumeration import NerveSet, enumerate_morphisms
from adc_toolkit.errors import AdcInputError, InternalConsistencyError
from adc_toolkit.models import (
    AdcComplex,
    AdcMorphism,
    Antihomotopy,
    BasisId,
    ChainElement,
    EnumerationBudget,
    SimplexMap,
    ValidationReport,
)
from adc_toolkit.monoidal import (
    EMPTY,
    JoinComplex,
    Pushout,
    TensorComplex,
    copair,
    join_complex,
    join_inclusions,
    join_label,
    join_morphism,
    join_product,
    pushout_along_rigid_inclusion,
    q_projections,
    tensor_complex,
    tensor_label,
    tensor_morphism,
)
from adc_toolkit.morphisms import (
    antihomotopy_algebra,
    compose,
    first_difference,
    identity_morphism,
    is_rigid_ordered_inclusion,
    same_action,
    validate_antihomotopy,
    validate_morphism,
    zero_antihomotopy,
)
from adc_toolkit.orientals import (
    SIDES,
    aw_diagonal,
    cosimplicial_image,
    g_phi,
    oriental_join_inverse,
    oriental_join_iso,
    parse_simplex_id,
    simplex_id,
    standard_oriental,
    vertex_inclusion,
    vertex_retraction,
)
from adc_toolkit.simplicial import (
    Simplex,
    SimplicialHomotopy,
    SimplicialMap,
    SimplicialObject,
    StandardSimplex,
    maps_agree,
    product_with_interval,
    pullback,
    validate_homotopy,
    validate_simplicial_map,
)

logger = logging.getLogger(__name__)

TransferFactory = Callable[[int], Tuple[AdcMorphism, Pushout]]


@dataclass(frozen=True)
class SliceTriangle:
    """f: K → K′, g: K → L, a rigid ordered inclusion g′: K′ → L and k: g ⇒ g′f."""
    f: AdcMorphism
    g: AdcMorphism
    g_prime: AdcMorphism
    k: Antihomotopy

    @property
    def K(self) -> AdcComplex:
        return self.f.source

    @property
    def K_prime(self) -> AdcComplex:
        return self.f.target

    @property
    def L(self) -> AdcComplex:
        return self.g.target


@dataclass(frozen=True)
class SliceCone:
    """
    Two triangles sharing g and g′, with l: f ⇒ f′ between their top edges
    and a 2-antihomotopy H: g′l + k ⇒ k′.

    `front` carries (f, k) and is reached at the vertex 1 of Δ¹; `back`
    carries (f′, k′) and is reached at the vertex 0.
    """
    front: SliceTriangle
    back: SliceTriangle
    l: Antihomotopy
    H: Antihomotopy


def validate_triangle(t: SliceTriangle) -> ValidationReport:
    report = ValidationReport(subject=f"triangle over {t.L.name}")
    for label, f in (("f", t.f), ("g", t.g), ("g_prime", t.g_prime)):
        report.extend(validate_morphism(f), prefix=f"{label}.")
    report.passed("rigid")
    rigidity = is_rigid_ordered_inclusion(t.g_prime)
    if not rigidity:
        report.fail("rigid", "g_prime", rigidity.counterexample)
    report.passed("endpoints")
    if not same_action(t.k.source_map, t.g):
        report.fail("endpoints", "k", "k does not start at g")
    elif not same_action(t.k.target_map, compose(t.g_prime, t.f)):
        report.fail("endpoints", "k", "k does not end at g′f")
    report.extend(validate_antihomotopy(t.k), prefix="k.")
    return report


def validate_cone(c: SliceCone) -> ValidationReport:
    report = ValidationReport(subject=f"cone over {c.front.L.name}")
    report.extend(validate_triangle(c.front), prefix="front.")
    report.extend(validate_triangle(c.back), prefix="back.")
    report.passed("shared_legs")
    if not same_action(c.front.g, c.back.g) or not same_action(c.front.g_prime, c.back.g_prime):
        report.fail("shared_legs", "g, g′", "front and back triangles differ on g or g′")
        return report
    report.passed("endpoints")
    if not same_action(c.l.source_map, c.front.f) or not same_action(c.l.target_map, c.back.f):
        report.fail("endpoints", "l", "l does not go from f to f′")
    whiskered = antihomotopy_algebra("add", c.front.k, antihomotopy_algebra("postcompose", c.front.g_prime, c.l))
    if not same_action(c.H.source_map, whiskered):
        report.fail("endpoints", "H", "H does not start at g′l + k")
    if not same_action(c.H.target_map, c.back.k):
        report.fail("endpoints", "H", "H does not end at k′")
    report.extend(validate_antihomotopy(c.l), prefix="l.")
    report.extend(validate_antihomotopy(c.H), prefix="H.")
    return report


def _join(K: AdcComplex, T: AdcComplex) -> JoinComplex:
    return join_complex(K, T, K.max_degree + 1 + T.max_degree)


@lru_cache(maxsize=256)
def transfer_pushout(g_prime: AdcMorphism, T: AdcComplex) -> Pushout:
    """L ⊔_{K′} (K′ ⋆ T) along g′ and ι₁."""
    iota, _ = join_inclusions(_join(g_prime.source, T))
    return pushout_along_rigid_inclusion(g_prime, iota)


def _interval_tensor(T: AdcComplex) -> TensorComplex:
    return tensor_complex(standard_oriental(1), T, 1 + T.max_degree)


def psi(t: SliceTriangle, T: AdcComplex) -> AdcMorphism:
    """
    ψ(x ⋆ ∅) = g(x),  ψ(x ⋆ y) = f(x) ⋆ y + e(y) k(x),  ψ(∅ ⋆ y) = ∅ ⋆ y.

    Raises:
        AdcInputError: if g′ is not a rigid ordered inclusion.
    """
    J = _join(t.K, T)
    po = transfer_pushout(t.g_prime, T)
    M = po.complex.attached
    assert isinstance(M, JoinComplex)
    action: Dict[BasisId, ChainElement] = {}
    for label, (x, y) in J.components.items():
        if y == EMPTY:
            action[label] = po.left_leg.apply(t.g.image(x))
            continue
        front = None if x == EMPTY else t.f.image(x)
        chain = po.right_leg.apply(join_product(M, front, T.generator(y)))
        if x != EMPTY and T.degree_of(y) == 0 and T.augmentation_of(y):
            chain = chain + po.left_leg.apply(t.k.image(x)).scaled(T.augmentation_of(y))
        action[label] = chain
    return AdcMorphism(J, po.complex, action, name="ψ")


def chi(c: SliceCone, T: AdcComplex) -> AdcMorphism:
    """
    χ on K ⋆ (c(Δ1) ⊗ T):

        x ⋆ ∅          ↦ g(x)
        x ⋆ (0) ⊗ y    ↦ f′(x) ⋆ y + e(y) k′(x)
        x ⋆ (1) ⊗ y    ↦ f(x) ⋆ y + e(y) k(x)
        x ⋆ (01) ⊗ y   ↦ l(x) ⋆ y + e(y) H(x)

    with l(∅) = 0 and H(∅) = 0.
    """
    K = c.front.K
    IT = _interval_tensor(T)
    J = _join(K, IT)
    po = transfer_pushout(c.front.g_prime, T)
    M = po.complex.attached
    assert isinstance(M, JoinComplex)
    rows = {
        "0": (c.back.f, c.back.k),
        "1": (c.front.f, c.front.k),
        "0.1": (c.l, c.H),
    }
    action: Dict[BasisId, ChainElement] = {}
    for label, (x, w) in J.components.items():
        if w == EMPTY:
            action[label] = po.left_leg.apply(c.front.g.image(x))
            continue
        eps, y = IT.components[w]
        top, correction = rows[eps]
        degree = J.degree_of(label)
        if x == EMPTY:
            if eps == "0.1":
                action[label] = ChainElement.zero(degree)
            else:
                action[label] = po.right_leg.apply(join_product(M, None, T.generator(y)))
            continue
        chain = po.right_leg.apply(join_product(M, top.image(x), T.generator(y)))
        if T.degree_of(y) == 0 and T.augmentation_of(y):
            chain = chain + po.left_leg.apply(correction.image(x)).scaled(T.augmentation_of(y))
        action[label] = chain
    return AdcMorphism(J, po.complex, action, name="χ")


def chi_phi(c: SliceCone, phi: SimplexMap) -> AdcMorphism:
    """χ_φ = χ ∘ (K ⋆ g_φ) on K ⋆ c(Δn)."""
    n = phi.source_dim
    T = standard_oriental(n)
    K = c.front.K
    outer = chi(c, T)
    assert isinstance(outer.source, JoinComplex)
    lift = join_morphism(identity_morphism(K), g_phi(phi), _join(K, T), outer.source)
    return compose(outer, lift, name=f"χ{phi.values}")


def restrict_to_vertex(c: SliceCone, vertex: str, T: AdcComplex) -> AdcMorphism:
    """χ ∘ (K ⋆ (ε ⊗ −)) for ε = (0) or (1)."""
    K = c.front.K
    outer = chi(c, T)
    IT = _interval_tensor(T)
    insert = AdcMorphism(T, IT, {y: IT.generator(tensor_label(vertex, y)) for y in T.all_ids}, name=f"({vertex})⊗−")
    assert isinstance(outer.source, JoinComplex)
    return compose(outer, join_morphism(identity_morphism(K), insert, _join(K, T), outer.source))


def check_cone_endpoints(c: SliceCone, T: AdcComplex) -> ValidationReport:
    """The (1)-row of χ is ψ of the front triangle, the (0)-row ψ of the back one."""
    report = ValidationReport(subject=f"cone endpoints over {T.name}")
    for vertex, triangle, check in (("1", c.front, "front"), ("0", c.back, "back")):
        report.passed(check)
        restricted = restrict_to_vertex(c, vertex, T)
        expected = psi(triangle, T)
        witness = first_difference(restricted, expected)
        if witness is not None:
            report.fail(check, witness, f"{restricted.image(witness)} vs {expected.image(witness)}")
    return report


def degenerate_cone(t: SliceTriangle) -> SliceCone:
    """The cone with l = 0, H = 0 and both triangles equal to t."""
    l = zero_antihomotopy(t.f)
    whiskered = antihomotopy_algebra("add", t.k, antihomotopy_algebra("postcompose", t.g_prime, l))
    H = Antihomotopy(whiskered, t.k, {}, shift=2, name="0")
    return SliceCone(t, t, l, H)


def check_degenerate_cone(t: SliceTriangle, T: AdcComplex) -> ValidationReport:
    """For the degenerate cone, χ = ψ ∘ (K ⋆ q₂)."""
    report = ValidationReport(subject=f"degenerate cone over {T.name}")
    report.passed("factors_through_q2")
    outer = chi(degenerate_cone(t), T)
    _, q2 = q_projections(_interval_tensor(T))
    assert isinstance(outer.source, JoinComplex)
    expected = compose(psi(t, T), join_morphism(identity_morphism(t.K), q2, outer.source, _join(t.K, T)))
    witness = first_difference(outer, expected)
    if witness is not None:
        report.fail("factors_through_q2", witness, f"{outer.image(witness)} vs {expected.image(witness)}")
    return report


def compose_triangles(first: SliceTriangle, second: SliceTriangle) -> SliceTriangle:
    """(f₂ f, g, g″, k + k₂ f) for first: K → K′ and second: K′ → K″ with g₂ = g′."""
    if not same_action(second.g, first.g_prime):
        raise AdcInputError("triangles do not chain: the second g is not the first g′")
    k = antihomotopy_algebra("add", first.k, antihomotopy_algebra("precompose", second.k, first.f))
    return SliceTriangle(compose(second.f, first.f), first.g, second.g_prime, k)


def check_triangle_composition(first: SliceTriangle, second: SliceTriangle, T: AdcComplex) -> ValidationReport:
    """
    Transferring along `second` then `first` equals transferring along the
    composite triangle, checked on the universal slice simplex j_M.
    """
    report = ValidationReport(subject=f"triangle composition over {T.name}")
    composite = compose_triangles(first, second)
    report.extend(validate_triangle(composite), prefix="composite.")
    report.passed("functorial")
    outer = transfer_pushout(second.g_prime, T)
    middle = transfer_pushout(first.g_prime, T)
    bridge = copair(middle, outer.left_leg, psi(second, T), name="[j_L, ψ₂]")
    lhs = compose(bridge, psi(first, T))
    rhs = psi(composite, T)
    witness = first_difference(lhs, rhs)
    if witness is not None:
        report.fail("functorial", witness, f"{lhs.image(witness)} vs {rhs.image(witness)}")
    return report


def _cone_vertex(vertices: Tuple[int, ...], m: int) -> Optional[BasisId]:
    """(i0...ip m), or None when ip = m."""
    if vertices and vertices[-1] == m:
        return None
    return simplex_id(vertices + (m,))


def retraction_triangle(m: int) -> SliceTriangle:
    """(r′, id, m, h′) on c(Δm)."""
    retract = vertex_retraction(m)
    C = standard_oriental(m)
    return SliceTriangle(retract.retraction, identity_morphism(C), retract.inclusion, retract.homotopy)


def commutative_triangle(m: int) -> SliceTriangle:
    """(m, m, id, 0): precomposition with m ⋆ id."""
    inclusion = vertex_inclusion(m)
    C = standard_oriental(m)
    return SliceTriangle(inclusion, inclusion, identity_morphism(C), zero_antihomotopy(inclusion))


def oriental_cone(m: int) -> SliceCone:
    """The cone (h′, id_h′) between the identity triangle and the triangle (m r′, h′)."""
    retract = vertex_retraction(m)
    C = standard_oriental(m)
    identity = identity_morphism(C)
    front = SliceTriangle(identity, identity, identity, zero_antihomotopy(identity))
    back = SliceTriangle(compose(retract.inclusion, retract.retraction), identity, identity, retract.homotopy)
    l = retract.homotopy
    whiskered = antihomotopy_algebra("add", front.k, antihomotopy_algebra("postcompose", identity, l))
    H = Antihomotopy(whiskered, back.k, {}, shift=2, name="id_h′")
    return SliceCone(front, back, l, H)


def psi_oriental_table(m: int, n: int) -> AdcMorphism:
    """Closed form of ψ for the triangle (r′, h′) and T = c(Δn)."""
    T = standard_oriental(n)
    t = retraction_triangle(m)
    J = _join(t.K, T)
    po = transfer_pushout(t.g_prime, T)
    M = po.complex.attached
    L = t.L
    action: Dict[BasisId, ChainElement] = {}
    for label, (x, y) in J.components.items():
        degree = J.degree_of(label)
        if y == EMPTY:
            action[label] = po.left_leg.apply(L.generator(x))
            continue
        if x == EMPTY:
            action[label] = po.right_leg.apply(M.generator(join_label(EMPTY, y)))
            continue
        p, q = len(parse_simplex_id(x)) - 1, T.degree_of(y)
        chain = ChainElement.zero(degree)
        if p == 0:
            chain = chain + po.right_leg.apply(M.generator(join_label("0", y)))
        if q == 0:
            cone = _cone_vertex(parse_simplex_id(x), m)
            if cone is not None:
                chain = chain + po.left_leg.apply(L.generator(cone))
        action[label] = chain
    return AdcMorphism(J, po.complex, action, name="ψ table")


def collapse_identity_pushout(po: Pushout) -> AdcMorphism:
    """c(Δm) ⊔_{c(Δm)} M ≅ M when g′ is the identity."""
    P = po.complex
    if P.renaming:
        raise AdcInputError(f"{P.name} is not glued along an isomorphism")
    M = P.attached
    return AdcMorphism(P, M, {ident: M.generator(ident) for ident in P.all_ids}, name="collapse")


def chi_phi_table(m: int, phi: SimplexMap) -> AdcMorphism:
    """
    Closed form of χ_φ for the oriental cone as an endomorphism of
    c(Δm) ⋆ c(Δn), r being the number of zeros among φ(j0), ..., φ(jq).
    """
    n = phi.source_dim
    K, T = standard_oriental(m), standard_oriental(n)
    J = _join(K, T)
    action: Dict[BasisId, ChainElement] = {}

    def term(left: Optional[BasisId], right: Optional[BasisId]) -> Dict[BasisId, int]:
        if left is None or right is None:
            return {}
        return {join_label(left, right): 1}

    for label, (x, y) in J.components.items():
        degree = J.degree_of(label)
        if y == EMPTY:
            action[label] = J.generator(label)
            continue
        ys = parse_simplex_id(y)
        r = sum(1 for j in ys if phi(j) == 0)
        q = len(ys) - 1
        if r == 0 or x == EMPTY:
            action[label] = J.generator(label)
            continue
        xs = parse_simplex_id(x)
        p = len(xs) - 1
        cone = _cone_vertex(xs, m)
        tail = simplex_id(ys[1:]) or EMPTY
        terms: Dict[BasisId, int] = {}
        if p == 0:
            terms.update(term(str(m), y))
            if q == 0:
                terms.update(term(cone, EMPTY))
            elif r == 1:
                terms.update(term(cone, tail))
        elif r == 1:
            terms.update(term(cone, tail))
        action[label] = ChainElement.of(degree, terms)
    return AdcMorphism(J, J, action, name=f"χ{phi.values} table")


def check_chi_phi(m: int, phi: SimplexMap) -> ValidationReport:
    """
    Validate χ_φ for the oriental cone, compare it with its closed form and
    check that it transports to an endomorphism of c(Δ(m+1+n)).

    Raises:
        InternalConsistencyError: if the composite and the closed form disagree.
    """
    n = phi.source_dim
    cone = oriental_cone(m)
    composite = chi_phi(cone, phi)
    report = ValidationReport(subject=f"χ{phi.values} on c(Δ{m}) ⋆ c(Δ{n})")
    report.extend(validate_morphism(composite), prefix="morphism.")
    po = transfer_pushout(cone.front.g_prime, standard_oriental(n))
    collapsed = compose(collapse_identity_pushout(po), composite)
    table = chi_phi_table(m, phi)
    witness = first_difference(collapsed, table)
    if witness is not None:
        raise InternalConsistencyError(
            f"χ{phi.values} disagrees with its table at {witness}: {collapsed.image(witness)} vs {table.image(witness)}"
        )
    report.passed("table")
    conjugate = compose(oriental_join_iso(m, n), compose(table, oriental_join_inverse(m, n)))
    report.extend(validate_morphism(conjugate), prefix="transported.")
    return report


class NerveSliceSet(SimplicialObject):
    """
    Slice simplices under c: c(Δm) → L, i.e. morphisms a: c(Δm) ⋆ c(Δn) → L
    with a ∘ ι₁ = c, acted on by θ through id ⋆ c(θ).
    """

    def __init__(
        self,
        anchor: AdcMorphism,
        cap: int,
        budget: Optional[EnumerationBudget] = None,
        jobs: Optional[int] = None,
    ):
        super().__init__(cap)
        self.anchor = anchor
        self.base = anchor.source
        self.target = anchor.target
        self.budget = budget
        self.jobs = jobs
        self.completeness: Dict[int, bool] = {}
        self.name = f"N({self.target.name})/{anchor.name or 'c'}"

    def join(self, n: int) -> JoinComplex:
        return _join(self.base, standard_oriental(n))

    def _compute_simplices(self, n: int) -> List[Simplex]:
        J = self.join(n)
        constraint = {join_label(x, EMPTY): self.anchor.image(x) for x in self.base.all_ids}
        found = enumerate_morphisms(J, self.target, self.budget, constraint=constraint, jobs=self.jobs)
        self.completeness[n] = found.budget.complete
        return list(found.items)

    def _act(self, theta: SimplexMap, a: Simplex) -> Simplex:
        assert isinstance(a, AdcMorphism)
        lift = join_morphism(
            identity_morphism(self.base),
            cosimplicial_image(theta),
            self.join(theta.source_dim),
            self.join(theta.target_dim),
        )
        return compose(a, lift, name=a.name)

    def underlying(self, n: int, a: AdcMorphism) -> AdcMorphism:
        """a ∘ ι₂: the n-simplex of N(ν L) under the slice simplex."""
        _, iota = join_inclusions(self.join(n))
        return compose(a, iota)

    @property
    def complete(self) -> bool:
        return all(self.completeness.values())


def transfer_map(
    source: NerveSliceSet,
    target: NerveSliceSet,
    transfer: TransferFactory,
    name: str,
) -> SimplicialMap:
    """a ↦ [c_target, a] ∘ transfer(n) for a slice simplex a of `source`."""

    def apply(n: int, a: Simplex) -> Simplex:
        assert isinstance(a, AdcMorphism)
        moved, po = transfer(n)
        return compose(copair(po, target.anchor, a), moved, name=name)

    return SimplicialMap(source, target, apply, name=name)


@dataclass
class SdrSuite:
    """The maps r, s and the homotopy h on slices of N(ν L), with their checks."""
    r: SimplicialMap
    s: SimplicialMap
    h: SimplicialHomotopy
    report: ValidationReport
    counts: Dict[str, List[int]] = field(default_factory=dict)
    complete: bool = True

    def to_dict(self) -> Dict[str, object]:
        checks = self.report.checks
        return {
            "r_section": checks.get("r_section", False),
            "homotopy": all(v for k, v in checks.items() if k.startswith("homotopy.")),
            "strong": checks.get("strong", False),
            "over_base": checks.get("over_base", False),
            "counts": self.counts,
            "complete": self.complete,
            "report": self.report.to_dict(),
        }


def slice_sdr_suite(
    m: int,
    trunc: int,
    L: AdcComplex,
    anchor: AdcMorphism,
    budget: Optional[EnumerationBudget] = None,
    jobs: Optional[int] = None,
) -> SdrSuite:
    """
    Build and verify the deformation retract of the slice under `anchor` onto
    the slice under its last vertex.

    r is precomposition with m ⋆ id (also computed as ψ of the commutative
    triangle), s is transfer along ψ of (r′, h′), and h(φ, a) is transfer
    along χ_φ of the oriental cone.

    Raises:
        AdcInputError: if the anchor does not start at c(Δm) or end at L.
    """
    if anchor.source.name != standard_oriental(m).name or anchor.target.name != L.name:
        raise AdcInputError(f"anchor must be a morphism c(Δ{m}) → {L.name}", "anchor")
    if budget is None:
        budget = EnumerationBudget(get_limits_config().coeff_cap)
    anchor_report = validate_morphism(anchor)
    if not anchor_report.ok:
        raise AdcInputError(f"anchor is not a morphism: {anchor_report.violations[:1] or anchor_report.input_errors[:1]}", "anchor")

    vertex_anchor = compose(anchor, vertex_inclusion(m), name="c_m")
    upper = NerveSliceSet(anchor, trunc, budget, jobs)
    lower = NerveSliceSet(vertex_anchor, trunc, budget, jobs)
    retract_t = retraction_triangle(m)
    commute_t = commutative_triangle(m)
    cone = oriental_cone(m)

    def r_factory(n: int) -> Tuple[AdcMorphism, Pushout]:
        T = standard_oriental(n)
        return psi(commute_t, T), transfer_pushout(commute_t.g_prime, T)

    def s_factory(n: int) -> Tuple[AdcMorphism, Pushout]:
        T = standard_oriental(n)
        return psi(retract_t, T), transfer_pushout(retract_t.g_prime, T)

    r = transfer_map(upper, lower, r_factory, "r")
    s = transfer_map(lower, upper, s_factory, "s")

    def restrict(n: int, a: Simplex) -> Simplex:
        assert isinstance(a, AdcMorphism)
        lift = join_morphism(vertex_inclusion(m), identity_morphism(standard_oriental(n)), lower.join(n), upper.join(n))
        return compose(a, lift, name="r")

    r_direct = SimplicialMap(upper, lower, restrict, name="r")
    cylinder = product_with_interval(upper)

    def homotopy(n: int, pair: Simplex) -> Simplex:
        phi, a = pair  # type: ignore[misc]
        assert isinstance(a, AdcMorphism)
        T = standard_oriental(n)
        po = transfer_pushout(cone.front.g_prime, T)
        return compose(copair(po, anchor, a), _cached_chi_phi(m, phi), name="h")

    h_map = SimplicialMap(cylinder, upper, homotopy, name="h")
    s_after_r = s.compose(r)
    h = SimplicialHomotopy(h_map, s_after_r, SimplicialMap(upper, upper, lambda n, a: a, name="id"))

    report = ValidationReport(subject=f"slice retract for c(Δ{m}) → {L.name}")
    report.extend(validate_simplicial_map(r), prefix="r.")
    report.extend(validate_simplicial_map(s), prefix="s.")
    report.passed("r_two_ways")
    witness = maps_agree(r, r_direct)
    if witness is not None:
        report.fail("r_two_ways", witness)
    report.passed("r_section")
    witness = maps_agree(r.compose(s), SimplicialMap(lower, lower, lambda n, a: a, name="id"))
    if witness is not None:
        report.fail("r_section", witness)
    report.extend(validate_homotopy(h), prefix="homotopy.")
    report.passed("strong")
    report.passed("over_base")
    for n in range(trunc + 1):
        for a_low in lower.simplices(n):
            lifted = s(n, a_low)
            for phi in SimplexMap.all_maps(n, 1):
                if h_map(n, (phi, lifted)) != lifted:
                    report.fail("strong", f"level {n}: φ={phi.values}")
            if lower.underlying(n, a_low) != upper.underlying(n, lifted):
                report.fail("over_base", f"s at level {n}")
        for a in upper.simplices(n):
            base = upper.underlying(n, a)
            if lower.underlying(n, r(n, a)) != base:
                report.fail("over_base", f"r at level {n}")
            for phi in SimplexMap.all_maps(n, 1):
                if upper.underlying(n, h_map(n, (phi, a))) != base:
                    report.fail("over_base", f"h at level {n}: φ={phi.values}")
    counts = {"slice": upper.counts(), "vertex_slice": lower.counts()}
    complete = upper.complete and lower.complete
    if not complete:
        logger.warning(f"slice enumeration for {L.name} hit the coefficient cap; results cover the capped search only")
    if not report.ok:
        logger.error(f"slice retract for c(Δ{m}) → {L.name} failed: {report.failed_checks()}")
    else:
        logger.info(f"slice retract for c(Δ{m}) → {L.name}: all checks pass, counts {counts}")
    return SdrSuite(r, s, h, report, counts, complete)


@lru_cache(maxsize=512)
def _cached_chi_phi(m: int, phi: SimplexMap) -> AdcMorphism:
    return chi_phi(oriental_cone(m), phi)


def base_change(suite: SdrSuite, v: SimplicialMap) -> ValidationReport:
    """
    Pull r, s and h back along v: A → N(ν L) through the forgetful maps and
    re-check r s = id and the homotopy on the pulled-back slices.
    """
    upper = suite.r.source
    lower = suite.r.target
    assert isinstance(upper, NerveSliceSet) and isinstance(lower, NerveSliceSet)
    forget_upper = SimplicialMap(upper, v.target, upper.underlying, name="U")
    forget_lower = SimplicialMap(lower, v.target, lower.underlying, name="U")
    P_upper = pullback(forget_upper, v)
    P_lower = pullback(forget_lower, v)
    r = SimplicialMap(P_upper, P_lower, lambda n, pair: (suite.r(n, pair[0]), pair[1]), name="r×A")
    s = SimplicialMap(P_lower, P_upper, lambda n, pair: (suite.s(n, pair[0]), pair[1]), name="s×A")
    cylinder = product_with_interval(P_upper)
    h_map = SimplicialMap(
        cylinder,
        P_upper,
        lambda n, pair: (suite.h.homotopy(n, (pair[0], pair[1][0])), pair[1][1]),
        name="h×A",
    )
    h = SimplicialHomotopy(h_map, s.compose(r), SimplicialMap(P_upper, P_upper, lambda n, x: x, name="id"))
    report = ValidationReport(subject=f"base change along {v.name}")
    report.extend(validate_simplicial_map(r), prefix="r.")
    report.extend(validate_simplicial_map(s), prefix="s.")
    report.passed("r_section")
    witness = maps_agree(r.compose(s), SimplicialMap(P_lower, P_lower, lambda n, x: x, name="id"))
    if witness is not None:
        report.fail("r_section", witness)
    report.extend(validate_homotopy(h), prefix="homotopy.")
    return report


def q_pair(K: AdcComplex, L: AdcComplex) -> Tuple[AdcMorphism, AdcMorphism]:
    """q₁: K ⊗ L → K and q₂: K ⊗ L → L."""
    return q_projections(tensor_complex(K, L, K.max_degree + L.max_degree))


def aw_section(x: AdcMorphism, y: AdcMorphism) -> AdcMorphism:
    """s(x, y) = (x ⊗ y) ∘ ∇ for x: c(Δn) → K and y: c(Δn) → L."""
    n = x.source.max_degree
    C = standard_oriental(n)
    if x.source.name != C.name or y.source.name != C.name:
        raise AdcInputError("aw_section needs two morphisms out of the same c(Δn)")
    source = tensor_complex(C, C, 2 * n)
    target = tensor_complex(x.target, y.target, x.target.max_degree + y.target.max_degree)
    return compose(tensor_morphism(x, y, source, target), aw_diagonal(n), name="s")


def check_aw_section(K: AdcComplex, trunc: int, budget: Optional[EnumerationBudget] = None) -> ValidationReport:
    """
    On Δ¹ × N(ν K) within the truncation: q₁ s(φ, x) = c(φ), q₂ s(φ, x) = x,
    s(φ, x) is a morphism, and s commutes with faces and degeneracies.
    """
    nerve_K = NerveSet(K, trunc, budget)
    I = standard_oriental(1)
    q1, q2 = q_pair(I, K)
    report = ValidationReport(subject=f"AW section on Δ¹ × N({K.name})")
    for check in ("morphism", "q1", "q2", "simplicial"):
        report.passed(check)
    cache: Dict[Tuple[SimplexMap, AdcMorphism], AdcMorphism] = {}

    def section(phi: SimplexMap, x: AdcMorphism) -> AdcMorphism:
        key = (phi, x)
        if key not in cache:
            cache[key] = aw_section(cosimplicial_image(phi), x)
        return cache[key]

    for n in range(trunc + 1):
        for phi in SimplexMap.all_maps(n, 1):
            for x in nerve_K.simplices(n):
                assert isinstance(x, AdcMorphism)
                value = section(phi, x)
                witness = f"level {n}: φ={phi.values}, {x.key}"
                if not validate_morphism(value).ok:
                    report.fail("morphism", witness)
                if not same_action(compose(q1, value), cosimplicial_image(phi)):
                    report.fail("q1", witness)
                if not same_action(compose(q2, value), x):
                    report.fail("q2", witness)
                if n == 0:
                    continue
                for i in range(n + 1):
                    theta = SimplexMap.face(n, i)
                    moved = section(phi.compose(theta), nerve_K.act(theta, x))  # type: ignore[arg-type]
                    if moved != compose(value, cosimplicial_image(theta)):
                        report.fail("simplicial", witness, f"d{i}")
    return report


def nerve_map(f: AdcMorphism, source: NerveSet, target: NerveSet) -> SimplicialMap:
    """N(f): x ↦ f ∘ x."""
    return SimplicialMap(source, target, lambda n, x: compose(f, x), name=f"N({f.name})")


def transformation_from_antihomotopy(h: Antihomotopy) -> AdcMorphism:
    """
    The lax-side transformation α: K ⊗ c(Δ1) → L of an antihomotopy h: a ⇒ b:
    α(x ⊗ (0)) = a(x), α(x ⊗ (1)) = b(x), α(x ⊗ (01)) = h(x).
    """
    if h.shift != 1:
        raise AdcInputError("only antihomotopies between morphisms give transformations")
    a, b = h.source_map, h.target_map
    assert isinstance(a, AdcMorphism) and isinstance(b, AdcMorphism)
    K = h.source
    I = standard_oriental(1)
    T = tensor_complex(K, I, K.max_degree + 1)
    action: Dict[BasisId, ChainElement] = {}
    for label, (x, eps) in T.components.items():
        action[label] = {"0": a, "1": b, "0.1": h}[eps].image(x)
    return AdcMorphism(T, h.target, action, name=f"α({h.name})")


def oplax_nerve_homotopy(
    alpha: AdcMorphism,
    trunc: int,
    budget: Optional[EnumerationBudget] = None,
    side: str = "oplax",
) -> SimplicialHomotopy:
    """
    N(α)(φ, x) = α ∘ (id ⊗ x) ∘ g_φ for α: c(Δ1) ⊗ K → L, or
    α ∘ (x ⊗ id) ∘ g′_φ for α: K ⊗ c(Δ1) → L on the lax side.

    The endpoints are the nerves of α restricted to the vertices (0) and (1).

    Raises:
        AdcInputError: if α does not start at a tensor with c(Δ1) on the expected side.
    """
    if side not in SIDES:
        raise AdcInputError(f"side must be one of {SIDES}, got {side!r}")
    T = alpha.source
    I = standard_oriental(1)
    if not isinstance(T, TensorComplex):
        raise AdcInputError(f"{alpha.name} does not start at a tensor product")
    K = T.right if side == "oplax" else T.left
    interval = T.left if side == "oplax" else T.right
    if interval.name != I.name:
        raise AdcInputError(f"{alpha.name} must start at c(Δ1) ⊗ K ({side})")
    L = alpha.target
    source_nerve = NerveSet(K, trunc, budget)
    target_nerve = NerveSet(L, trunc, budget)
    identity = identity_morphism(I)

    def endpoint(vertex: str) -> AdcMorphism:
        action = {
            y: alpha.image(tensor_label(vertex, y) if side == "oplax" else tensor_label(y, vertex))
            for y in K.all_ids
        }
        return AdcMorphism(K, L, action, name=f"α({vertex})")

    def value(n: int, pair: Simplex) -> Simplex:
        phi, x = pair  # type: ignore[misc]
        assert isinstance(x, AdcMorphism)
        C = standard_oriental(n)
        if side == "oplax":
            lift = tensor_morphism(identity, x, tensor_complex(I, C, n + 1), T)
        else:
            lift = tensor_morphism(x, identity, tensor_complex(C, I, n + 1), T)
        return compose(alpha, compose(lift, g_phi(phi, side)), name="N(α)")

    cylinder = product_with_interval(source_nerve)
    h = SimplicialMap(cylinder, target_nerve, value, name=f"N({alpha.name})")
    logger.info(f"nerve homotopy of {alpha.name} ({side}) up to level {trunc}")
    return SimplicialHomotopy(
        h,
        nerve_map(endpoint("0"), source_nerve, target_nerve),
        nerve_map(endpoint("1"), source_nerve, target_nerve),
    )


def interval_nerve(cap: int) -> StandardSimplex:
    return StandardSimplex(1, cap)
