"""
Slices of simplicial sets over a simplex of the base.

For g: X → Z and z ∈ Z_m the under-slice X/z has as n-simplices the pairs
(x, z′) with z′ ∈ Z_{m+1+n}, z′ equal to z on its first m + 1 vertices and
to g(x) on its last n + 1. The over-slice puts z at the end instead.
"""

import logging
from typing import Dict, List, NamedTuple, Optional, Sequence

from adc_toolkit.bisimplicial import CommaBisimplicial, CommaSimplex, comma_bisimplicial
from adc_toolkit.errors import AdcInputError, CapExceededError
from adc_toolkit.models import SimplexMap, ValidationReport, final_inclusion, initial_inclusion
from adc_toolkit.simplicial import (
    Simplex,
    SimplicialMap,
    SimplicialObject,
    identity_map,
    maps_agree,
    op_dual,
    pullback,
    validate_simplicial_map,
)

logger = logging.getLogger(__name__)


class SliceSimplex(NamedTuple):
    x: Simplex
    z: Simplex


def _slice_cap(g: SimplicialMap, m: int, cap: Optional[int]) -> int:
    available = min(g.source.cap, g.target.cap - m - 1)
    if available < 0:
        raise CapExceededError(f"{g.target.name} is truncated at {g.target.cap}, too low to slice at level {m}")
    if cap is None:
        return available
    if cap > available:
        raise CapExceededError(f"slice truncation {cap} above the available {available}")
    return cap


class SliceUnder(SimplicialObject):
    """X/z: the slice of X under the m-simplex z of Z."""

    def __init__(self, g: SimplicialMap, z: Simplex, m: int, cap: Optional[int] = None):
        if not g.target.contains(m, z):
            raise AdcInputError(f"{z!r} is not an {m}-simplex of {g.target.name}")
        super().__init__(_slice_cap(g, m, cap))
        self.g, self.z, self.m = g, z, m
        self.name = f"{g.source.name}/{z!r}"

    def _compute_simplices(self, n: int) -> Sequence[Simplex]:
        Z = self.g.target
        front, back = initial_inclusion(self.m, n), final_inclusion(self.m, n)
        by_image: Dict[Simplex, List[Simplex]] = {}
        for x in self.g.source.simplices(n):
            by_image.setdefault(self.g(n, x), []).append(x)
        found: List[Simplex] = []
        for w in Z.simplices(self.m + 1 + n):
            if Z.act(front, w) != self.z:
                continue
            for x in by_image.get(Z.act(back, w), []):
                found.append(SliceSimplex(x, w))
        return found

    def _act(self, theta: SimplexMap, s: Simplex) -> Simplex:
        assert isinstance(s, SliceSimplex)
        shifted = SimplexMap.identity(self.m).concat(theta)
        return SliceSimplex(self.g.source.act(theta, s.x), self.g.target.act(shifted, s.z))


class SliceOver(SimplicialObject):
    """X\\z computed directly: z′ ∈ Z_{n+1+m} ends with z and starts with g(x)."""

    def __init__(self, g: SimplicialMap, z: Simplex, m: int, cap: Optional[int] = None):
        if not g.target.contains(m, z):
            raise AdcInputError(f"{z!r} is not an {m}-simplex of {g.target.name}")
        super().__init__(_slice_cap(g, m, cap))
        self.g, self.z, self.m = g, z, m
        self.name = f"{g.source.name}\\{z!r}"

    def _compute_simplices(self, n: int) -> Sequence[Simplex]:
        Z = self.g.target
        front, back = initial_inclusion(n, self.m), final_inclusion(n, self.m)
        by_image: Dict[Simplex, List[Simplex]] = {}
        for x in self.g.source.simplices(n):
            by_image.setdefault(self.g(n, x), []).append(x)
        found: List[Simplex] = []
        for w in Z.simplices(n + 1 + self.m):
            if Z.act(back, w) != self.z:
                continue
            for x in by_image.get(Z.act(front, w), []):
                found.append(SliceSimplex(x, w))
        return found

    def _act(self, theta: SimplexMap, s: Simplex) -> Simplex:
        assert isinstance(s, SliceSimplex)
        shifted = theta.concat(SimplexMap.identity(self.m))
        return SliceSimplex(self.g.source.act(theta, s.x), self.g.target.act(shifted, s.z))


def opposite_map(g: SimplicialMap) -> SimplicialMap:
    """g^op: X^op → Z^op, the same function on simplices."""
    return SimplicialMap(op_dual(g.source), op_dual(g.target), g.function, name=f"{g.name}^op")


def slice_under(g: SimplicialMap, z: Simplex, m: int, cap: Optional[int] = None) -> SliceUnder:
    """
    Raises:
        AdcInputError: if z is not an m-simplex of the base.
        CapExceededError: if the base is not truncated high enough.
    """
    return SliceUnder(g, z, m, cap)


def slice_over(g: SimplicialMap, z: Simplex, m: int, cap: Optional[int] = None, via_op: bool = True) -> SimplicialObject:
    """X\\z, by default as (X^op/z)^op; via_op=False builds it directly."""
    if not via_op:
        return SliceOver(g, z, m, cap)
    dual = op_dual(SliceUnder(opposite_map(g), z, m, cap))
    dual.name = f"{g.source.name}\\{z!r}"
    return dual


def slice_map(f: SimplicialMap, over_source: SimplicialMap, over_target: SimplicialMap, z: Simplex, m: int) -> SimplicialMap:
    """
    (x, z′) ↦ (f(x), z′) from X/z to Y/z, for f: X → Y over Z.

    Raises:
        AdcInputError: if f does not commute with the two structure maps.
    """
    if f.source is not over_source.source or f.target is not over_target.source:
        raise AdcInputError(f"{f.name} does not connect the sources of the structure maps")
    cap = min(_slice_cap(over_source, m, None), _slice_cap(over_target, m, None))
    source = SliceUnder(over_source, z, m, cap)
    target = SliceUnder(over_target, z, m, cap)
    for n in range(cap + 1):
        for x in f.source.simplices(n):
            if over_target(n, f(n, x)) != over_source(n, x):
                raise AdcInputError(f"{f.name} is not a map over {over_source.target.name} at {x!r}")
    return SimplicialMap(
        source,
        target,
        lambda n, s: SliceSimplex(f(n, s.x), s.z),
        name=f"{f.name}/{z!r}",
    )


def forget_to_base(S: SliceUnder) -> SimplicialMap:
    """The canonical map X/z → X."""
    return SimplicialMap(S, S.g.source, lambda n, s: s.x, name="forget")


def check_pullback_identity(g: SimplicialMap, z: Simplex, m: int, cap: Optional[int] = None) -> ValidationReport:
    """
    Compare X/z with (Z/z) ×_Z X element-wise: (x, z′) ↔ ((g(x), z′), x)
    must be a bijection at every level that commutes with the operators.
    """
    Z = g.target
    X_over = SliceUnder(g, z, m, cap)
    Z_over = SliceUnder(identity_map(Z), z, m, X_over.cap)
    P = pullback(forget_to_base(Z_over), g)
    report = ValidationReport(subject=f"pullback identity for {X_over.name}")
    report.passed("bijective")
    report.passed("commutes")
    comparison = SimplicialMap(
        X_over,
        P,
        lambda n, s: (SliceSimplex(g(n, s.x), s.z), s.x),
        name="compare",
    )
    for n in range(X_over.cap + 1):
        images = [comparison(n, s) for s in X_over.simplices(n)]
        if len(set(images)) != len(images) or set(images) != set(P.simplices(n)):
            report.fail("bijective", f"level {n}", f"{len(images)} slice simplices, {len(P.simplices(n))} in the pullback")
    mapped = validate_simplicial_map(comparison)
    if not mapped.ok:
        report.fail("commutes", str(mapped.violations[0]))
    return report


def check_fiber_decomposition(g: SimplicialMap, m: int, n_cap: int) -> ValidationReport:
    """
    (Z↓g)_{m,•} = ⨿_{z ∈ Z_m} X/z: each column of the comma splits by its
    first component into exactly the under-slices, disjointly and
    exhaustively, with matching vertical operators.
    """
    Z = g.target
    comma: CommaBisimplicial = comma_bisimplicial(identity_map(Z), g, (m, n_cap))
    report = ValidationReport(subject=f"fiber decomposition of ({Z.name}↓{g.name})_{m}")
    report.passed("partition")
    report.passed("operators")
    slices = {z: SliceUnder(g, z, m, n_cap) for z in Z.simplices(m)}
    for n in range(n_cap + 1):
        fibers: Dict[Simplex, List[Simplex]] = {z: [] for z in slices}
        for s in comma.simplices(m, n):
            assert isinstance(s, CommaSimplex)
            fibers[s.x].append(SliceSimplex(s.y, s.z))
        for z, members in fibers.items():
            expected = set(slices[z].simplices(n))
            if len(set(members)) != len(members) or set(members) != expected:
                report.fail("partition", f"fiber over {z!r} at level {n}")
        if n == 0:
            continue
        for s in comma.simplices(m, n):
            assert isinstance(s, CommaSimplex)
            for i in range(n + 1):
                face = comma.vertical(SimplexMap.face(n, i), s)
                assert isinstance(face, CommaSimplex)
                if SliceSimplex(face.y, face.z) != slices[s.x].face(n, i, SliceSimplex(s.y, s.z)):
                    report.fail("operators", f"d{i} of {s!r}")
    logger.info(f"fiber decomposition over {Z.name} at level {m}: {'ok' if report.ok else 'failed'}")
    return report


def compare_over_slices(g: SimplicialMap, z: Simplex, m: int, cap: Optional[int] = None) -> ValidationReport:
    """The explicit over-slice and (X^op/z)^op must agree on simplices and operators."""
    direct = slice_over(g, z, m, cap, via_op=False)
    dual = slice_over(g, z, m, direct.cap)
    report = ValidationReport(subject=f"over-slice {direct.name}, direct against dual")
    report.passed("simplices")
    report.passed("operators")
    for n in range(direct.cap + 1):
        if set(direct.simplices(n)) != set(dual.simplices(n)):
            report.fail("simplices", f"level {n}")
            continue
        for k in range(direct.cap + 1):
            for theta in SimplexMap.all_maps(k, n):
                for s in direct.simplices(n):
                    if direct.act(theta, s) != dual.act(theta, s):
                        report.fail("operators", f"{theta} on {s!r}")
    return report


def check_slice_naturality(
    f: SimplicialMap,
    f_next: SimplicialMap,
    structure: SimplicialMap,
    structure_mid: SimplicialMap,
    structure_end: SimplicialMap,
    z: Simplex,
    m: int,
) -> ValidationReport:
    """slice_map(f′ ∘ f) = slice_map(f′) ∘ slice_map(f) for X → Y → W over Z."""
    report = ValidationReport(subject=f"slice naturality along {f.name} and {f_next.name}")
    report.passed("composition")
    first = slice_map(f, structure, structure_mid, z, m)
    second = slice_map(f_next, structure_mid, structure_end, z, m)
    composite = slice_map(f_next.compose(f), structure, structure_end, z, m)
    witness = maps_agree(composite, second.compose(first), levels=min(first.source.cap, second.source.cap))
    if witness is not None:
        report.fail("composition", witness)
    return report
