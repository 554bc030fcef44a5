"""
Morphisms of ADCs, antihomotopies between them and retract structures.

An antihomotopy H of shift s between graded maps a, b of shift s - 1 must
satisfy, on every basis element x of degree i,

    d(H(x)) - H(d(x)) = (-1)^i (b(x) - a(x)),   with H(d(x)) = 0 when i = 0.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Optional, Union

from adc_toolkit.complexes import leN_preorder
from adc_toolkit.errors import AdcInputError
from adc_toolkit.models import (
    AdcComplex,
    AdcMorphism,
    Antihomotopy,
    BasisId,
    ChainElement,
    GradedMap,
    RetractStructure,
    ValidationReport,
)

logger = logging.getLogger(__name__)


def identity_morphism(K: AdcComplex) -> AdcMorphism:
    return AdcMorphism(K, K, {ident: K.generator(ident) for ident in K.all_ids}, name=f"id_{K.name}")


def compose(g: AdcMorphism, f: AdcMorphism, name: str = "") -> AdcMorphism:
    """g after f."""
    if f.target.name != g.source.name:
        raise AdcInputError(f"cannot compose {f!r} with {g!r}")
    action = {ident: g.apply(f.image(ident)) for ident in f.source.all_ids}
    return AdcMorphism(f.source, g.target, action, name=name or f"{g.name}∘{f.name}")


def same_action(a: GradedMap, b: GradedMap) -> bool:
    """Two graded maps agree on every source basis element."""
    if a.source.name != b.source.name or a.target.name != b.target.name or a.shift != b.shift:
        return False
    return all(a.image(ident) == b.image(ident) for ident in a.source.all_ids)


def first_difference(a: GradedMap, b: GradedMap) -> Optional[BasisId]:
    for ident in a.source.all_ids:
        if a.image(ident) != b.image(ident):
            return ident
    return None


def validate_morphism(f: AdcMorphism) -> ValidationReport:
    """Check d-commutation, e-preservation and positivity of basis images."""
    report = ValidationReport(subject=f"morphism {f.name or f.source.name + '->' + f.target.name}")
    K, L = f.source, f.target
    for ident in sorted(f.action):
        if not K.has(ident):
            report.input_error(f"action[{ident!r}]: not a basis element of {K.name}")
            continue
        image = f.action[ident]
        if image.degree != K.degree_of(ident):
            report.input_error(f"action[{ident!r}]: image of degree {image.degree}, expected {K.degree_of(ident)}")
            continue
        try:
            L.check_chain(image, f"action[{ident!r}]")
        except AdcInputError as exc:
            report.input_error(str(exc))
    if report.input_errors:
        return report

    for check in ("commutes_with_d", "preserves_e", "positive"):
        report.passed(check)
    for ident in K.all_ids:
        image = f.image(ident)
        if not image.is_positive():
            report.fail("positive", ident, f"f({ident}) = {image}")
        degree = K.degree_of(ident)
        if degree == 0:
            if L.augment(image) != K.augmentation_of(ident):
                report.fail("preserves_e", ident, f"e(f({ident})) = {L.augment(image)}")
        else:
            lhs = f.apply(K.boundary_of(ident))
            rhs = L.boundary(image)
            if lhs != rhs:
                report.fail("commutes_with_d", ident, f"f(d x) = {lhs}, d(f x) = {rhs}")
    return report


@dataclass(frozen=True)
class RigidityResult:
    rigid: bool
    counterexample: str = ""

    def __bool__(self) -> bool:
        return self.rigid


def is_rigid_ordered_inclusion(f: AdcMorphism) -> RigidityResult:
    """Injective on bases, basis to basis, and x <=_N y iff f(x) <=_N f(y)."""
    images: Dict[BasisId, BasisId] = {}
    for ident in f.source.all_ids:
        image = f.image(ident)
        if len(image.terms) != 1 or image.terms[0][1] != 1:
            return RigidityResult(False, f"{ident} maps to {image}, not a basis element")
        images[ident] = image.terms[0][0]
    seen: Dict[BasisId, BasisId] = {}
    for ident, image_id in images.items():
        if image_id in seen:
            return RigidityResult(False, f"{seen[image_id]} and {ident} both map to {image_id}")
        seen[image_id] = ident
    source_order = leN_preorder(f.source)
    target_order = leN_preorder(f.target)
    for x in f.source.all_ids:
        for y in f.source.all_ids:
            if source_order.leq(x, y) != target_order.leq(images[x], images[y]):
                return RigidityResult(False, f"order not reflected on ({x}, {y})")
    return RigidityResult(True)


def zero_antihomotopy(f: GradedMap, name: str = "") -> Antihomotopy:
    """id_f: the zero antihomotopy from f to itself."""
    return Antihomotopy(f, f, {}, shift=f.shift + 1, name=name or f"id_{f.name}")


def validate_antihomotopy(h: Antihomotopy, check_positivity: bool = True) -> ValidationReport:
    """
    Verify the shifted identity degree by degree and positivity of images.

    The identity is symmetric: h from a to b passes it exactly when -h from
    b to a does. Positivity is not, so compare the two with
    check_positivity=False.
    """
    report = ValidationReport(subject=f"antihomotopy {h.name}")
    a, b = h.source_map, h.target_map
    if a.source.name != b.source.name or a.target.name != b.target.name:
        raise AdcInputError(f"endpoints of {h.name} do not share source and target")
    if a.shift != h.shift - 1 or b.shift != h.shift - 1:
        raise AdcInputError(f"endpoints of {h.name} must have shift {h.shift - 1}")
    K, L = h.source, h.target
    for ident in sorted(h.action):
        if not K.has(ident):
            report.input_error(f"action[{ident!r}]: not a basis element of {K.name}")
            continue
        image = h.action[ident]
        if image.degree != K.degree_of(ident) + h.shift:
            report.input_error(f"action[{ident!r}]: wrong degree {image.degree}")
            continue
        try:
            L.check_chain(image, f"action[{ident!r}]")
        except AdcInputError as exc:
            report.input_error(str(exc))
    if report.input_errors:
        return report

    report.passed("identity")
    if check_positivity:
        report.passed("positive")
    for ident in K.all_ids:
        degree = K.degree_of(ident)
        image = h.image(ident)
        if check_positivity and not image.is_positive():
            report.fail("positive", ident, f"h({ident}) = {image}")
        lhs = L.boundary(image)
        if degree > 0:
            lhs = lhs - h.apply(K.boundary_of(ident))
        rhs = (b.image(ident) - a.image(ident)).scaled(-1 if degree % 2 else 1)
        if lhs != rhs:
            report.fail("identity", ident, f"degree {degree}: lhs {lhs}, rhs {rhs}")
    return report


def _compose_graded(outer: Optional[AdcMorphism], inner: GradedMap, after: Optional[AdcMorphism]) -> GradedMap:
    """outer ∘ inner ∘ after, recursing into antihomotopy endpoints."""
    if isinstance(inner, AdcMorphism):
        result = inner
        if after is not None:
            result = compose(result, after)
        if outer is not None:
            result = compose(outer, result)
        return result
    source = after.source if after is not None else inner.source
    action: Dict[BasisId, ChainElement] = {}
    for ident in source.all_ids:
        chain = after.image(ident) if after is not None else source.generator(ident)
        image = inner.apply(chain)
        if outer is not None:
            image = outer.apply(image)
        action[ident] = image
    return Antihomotopy(
        _compose_graded(outer, inner.source_map, after),
        _compose_graded(outer, inner.target_map, after),
        action,
        shift=inner.shift,
        name=inner.name,
    )


def antihomotopy_algebra(op: str, *args: Union[AdcMorphism, Antihomotopy]) -> Antihomotopy:
    """
    Combine antihomotopies.

    Args:
        op: 'precompose' (h, f) -> h f; 'postcompose' (g, h) -> g h;
            'add' (h, k) with h: a -> b and k: b -> c gives h + k: a -> c.

    Raises:
        AdcInputError: on unknown op or incompatible arguments.
    """
    if op == "precompose":
        h, f = args
        if not isinstance(h, Antihomotopy) or not isinstance(f, AdcMorphism):
            raise AdcInputError("precompose expects (antihomotopy, morphism)")
        if f.target.name != h.source.name:
            raise AdcInputError(f"cannot precompose {h!r} with {f!r}")
        result = _compose_graded(None, h, f)
    elif op == "postcompose":
        g, h = args
        if not isinstance(h, Antihomotopy) or not isinstance(g, AdcMorphism):
            raise AdcInputError("postcompose expects (morphism, antihomotopy)")
        if h.target.name != g.source.name:
            raise AdcInputError(f"cannot postcompose {h!r} with {g!r}")
        result = _compose_graded(g, h, None)
    elif op == "add":
        h, k = args
        if not isinstance(h, Antihomotopy) or not isinstance(k, Antihomotopy):
            raise AdcInputError("add expects two antihomotopies")
        if h.shift != k.shift or not same_action(h.target_map, k.source_map):
            raise AdcInputError(f"{h.name} does not end where {k.name} starts")
        action = {ident: h.image(ident) + k.image(ident) for ident in h.source.all_ids}
        return Antihomotopy(h.source_map, k.target_map, action, shift=h.shift, name=f"{h.name}+{k.name}")
    else:
        raise AdcInputError(f"unknown antihomotopy operation {op!r}")
    assert isinstance(result, Antihomotopy)
    return result


def validate_retract_structure(s: RetractStructure) -> ValidationReport:
    """Check r i = id and each declared flag (strong, over_base, square_zero)."""
    i, r, h = s.inclusion, s.retraction, s.homotopy
    K, L = i.source, i.target
    report = ValidationReport(subject=f"retract {K.name} -> {L.name}")
    report.extend(validate_antihomotopy(h), prefix="homotopy.")
    if not same_action(h.source_map, identity_morphism(L)):
        report.fail("endpoints", "source", "homotopy does not start at the identity")
    elif not same_action(h.target_map, compose(i, r)):
        report.fail("endpoints", "target", "homotopy does not end at i r")
    else:
        report.passed("endpoints")

    report.passed("retraction")
    for ident in K.all_ids:
        back = r.apply(i.image(ident))
        if back != K.generator(ident):
            report.fail("retraction", ident, f"r(i({ident})) = {back}")
    if s.strong:
        report.passed("strong")
        for ident in K.all_ids:
            value = h.apply(i.image(ident))
            if not value.is_zero():
                report.fail("strong", ident, f"h(i({ident})) = {value}")
    if s.over_base:
        report.passed("over_base")
        for ident in L.all_ids:
            value = r.apply(h.image(ident))
            if not value.is_zero():
                report.fail("over_base", ident, f"r(h({ident})) = {value}")
    if s.square_zero:
        report.passed("square_zero")
        for ident in L.all_ids:
            value = h.apply(h.image(ident))
            if not value.is_zero():
                report.fail("square_zero", ident, f"h(h({ident})) = {value}")
    if not report.ok:
        logger.error(f"retract structure on {L.name} failed: {report.failed_checks()}")
    return report


def morphism_from_images(
    source: AdcComplex,
    target: AdcComplex,
    images: Dict[BasisId, Dict[BasisId, int]],
    name: str = "",
) -> AdcMorphism:
    """Build a morphism from {source id: {target id: coef}}; missing ids map to 0."""
    action: Dict[BasisId, ChainElement] = {}
    for ident, coefficients in images.items():
        action[ident] = ChainElement.of(source.degree_of(ident), coefficients)
    return AdcMorphism(source, target, action, name=name)

