"""
The acceptance battery: eleven property checks, each producing a
ValidationReport, gathered into one Verdict by run_acceptance.
"""

import logging
import time
from typing import Callable, Dict, List, Optional, Sequence

from adc_toolkit.aw_uniqueness import aw_uniqueness_oracle
from adc_toolkit.bisimplicial import comma_bisimplicial, diagonal
from adc_toolkit.complexes import atom, classify_basis, validate_complex
from adc_toolkit.enumeration import enumerate_cells, enumerate_morphisms, nerve
from adc_toolkit.errors import AdcInputError, InternalConsistencyError
from adc_toolkit.homology import reduced_homology_vanishes
from adc_toolkit.models import AdcComplex, EnumerationBudget, SimplexMap, ValidationReport, Verdict
from adc_toolkit.monoidal import disk_complex, join_complex, tensor_complex
from adc_toolkit.morphisms import validate_morphism, validate_retract_structure
from adc_toolkit.orientals import (
    SIDES,
    check_aw_coalgebra,
    check_g_phi_naturality,
    cosimplicial_image,
    g_phi,
    oriental_complex,
    standard_oriental,
    vertex_retraction,
)
from adc_toolkit.simplicial import (
    SimplicialMap,
    SimplicialObject,
    boundary_simplex,
    identity_map,
    inclusion_map,
    op_dual,
    product_with_interval,
    simplex_inclusion,
    std_simplex,
)
from adc_toolkit.slice_transfer import (
    check_aw_section,
    check_chi_phi,
    check_cone_endpoints,
    check_triangle_composition,
    chi,
    commutative_triangle,
    oriental_cone,
    psi,
    retraction_triangle,
    slice_sdr_suite,
)
from adc_toolkit.slices import (
    check_fiber_decomposition,
    check_pullback_identity,
    compare_over_slices,
    slice_over,
    slice_under,
)

logger = logging.getLogger(__name__)

Criterion = Callable[[EnumerationBudget, int], ValidationReport]


def _basis_size(K: AdcComplex) -> int:
    return len(K.all_ids)


def steiner_validation(budget: EnumerationBudget, jobs: int) -> ValidationReport:
    report = ValidationReport(subject="orientals are Steiner-strong")
    report.passed("steiner_strong")
    for n in range(7):
        C = oriental_complex(n)
        report.extend(validate_complex(C), prefix=f"c{n}.")
        if not classify_basis(C).steiner_strong:
            report.fail("steiner_strong", C.name)
    return report


def monoidal_closure(budget: EnumerationBudget, jobs: int) -> ValidationReport:
    report = ValidationReport(subject="tensor and join of orientals")
    for check in ("steiner_strong", "basis_count"):
        report.passed(check)
    for i in range(6):
        for j in range(6 - i):
            K, L = oriental_complex(i), oriental_complex(j)
            bk, bl = _basis_size(K), _basis_size(L)
            for product, expected in (
                (tensor_complex(K, L), bk * bl),
                (join_complex(K, L), bk + bl + bk * bl),
            ):
                report.extend(validate_complex(product), prefix="valid.")
                if not classify_basis(product).steiner_strong:
                    report.fail("steiner_strong", product.name)
                if _basis_size(product) != expected:
                    report.fail("basis_count", product.name, f"{_basis_size(product)} != {expected}")
    return report


def retraction_identities(budget: EnumerationBudget, jobs: int) -> ValidationReport:
    report = ValidationReport(subject="vertex retractions of orientals")
    for m in range(7):
        report.extend(validate_retract_structure(vertex_retraction(m)), prefix=f"m{m}.")
    return report


def aw_coalgebra(budget: EnumerationBudget, jobs: int) -> ValidationReport:
    report = ValidationReport(subject="Alexander-Whitney coalgebra and g_φ tables")
    for n in range(6):
        report.extend(check_aw_coalgebra(n), prefix=f"n{n}.")
    report.passed("g_phi_table")
    for side in SIDES:
        for n in range(5):
            for phi in SimplexMap.all_maps(n, 1):
                try:
                    report.extend(validate_morphism(g_phi(phi, side)), prefix="g_phi.")
                except InternalConsistencyError as exc:
                    report.fail("g_phi_table", f"{side} φ={phi.values}", str(exc))
        for n in range(4):
            report.extend(check_g_phi_naturality(n, side), prefix=f"{side}.")
    return report


def section_property(budget: EnumerationBudget, jobs: int) -> ValidationReport:
    report = ValidationReport(subject="AW section of the nerve projection")
    D1 = disk_complex(1)
    for K in (standard_oriental(1), standard_oriental(2), tensor_complex(D1, D1)):
        report.extend(check_aw_section(K, 3, budget), prefix=f"{K.name}.")
    return report


def uniqueness_oracle(budget: EnumerationBudget, jobs: int) -> ValidationReport:
    return aw_uniqueness_oracle(2).report


def enumeration_cross_checks(budget: EnumerationBudget, jobs: int) -> ValidationReport:
    report = ValidationReport(subject="cell and morphism enumeration")
    for check in ("zero_cells", "one_cells", "hom_agrees", "atoms", "complete"):
        report.passed(check)
    C2 = standard_oriental(2)
    capped = EnumerationBudget(3)
    zero = enumerate_cells(C2, 0, capped)
    one = enumerate_cells(C2, 1, capped)
    hom = enumerate_morphisms(standard_oriental(1), C2, capped, jobs=jobs)
    if len(zero) != 3:
        report.fail("zero_cells", C2.name, f"{len(zero)} cells")
    if len(one) != 7:
        report.fail("one_cells", C2.name, f"{len(one)} cells")
    if len(hom) != len(one):
        report.fail("hom_agrees", C2.name, f"{len(hom)} morphisms, {len(one)} one-cells")
    if not (zero.budget.complete and one.budget.complete and hom.budget.complete):
        report.fail("complete", C2.name, "search hit the coefficient cap")
    D1 = disk_complex(1)
    for K in (C2, tensor_complex(D1, D1)):
        by_dimension: Dict[int, List[object]] = {}
        for ident in K.all_ids:
            degree = K.degree_of(ident)
            if degree not in by_dimension:
                by_dimension[degree] = list(enumerate_cells(K, degree, capped).items)
            if atom(K, ident).cell not in by_dimension[degree]:
                report.fail("atoms", f"{K.name}:{ident}")
    return report


def transfer_morphisms(budget: EnumerationBudget, jobs: int) -> ValidationReport:
    report = ValidationReport(subject="ψ, χ and χ_φ on orientals")
    for m in range(4):
        cone = oriental_cone(m)
        for n in range(4):
            T = standard_oriental(n)
            prefix = f"m{m}n{n}."
            report.extend(validate_morphism(psi(retraction_triangle(m), T)), prefix=f"{prefix}psi.")
            report.extend(validate_morphism(chi(cone, T)), prefix=f"{prefix}chi.")
            report.extend(check_cone_endpoints(cone, T), prefix=f"{prefix}cone.")
            for phi in SimplexMap.all_maps(n, 1):
                report.extend(check_chi_phi(m, phi), prefix=f"{prefix}chi_phi.")
            for first, second in (
                (commutative_triangle(m), retraction_triangle(m)),
                (cone.front, cone.back),
            ):
                report.extend(check_triangle_composition(first, second, T), prefix=f"{prefix}compose.")
    return report


def sdr_witness(budget: EnumerationBudget, jobs: int) -> ValidationReport:
    report = ValidationReport(subject="slice deformation retracts")
    face = cosimplicial_image(SimplexMap.face(3, 0))
    cases = (
        (1, standard_oriental(1), None),
        (2, standard_oriental(2), None),
        (2, standard_oriental(3), face),
    )
    for m, L, anchor in cases:
        chosen = anchor if anchor is not None else cosimplicial_image(SimplexMap.identity(m))
        suite = slice_sdr_suite(m, 3, L, chosen, budget, jobs)
        report.extend(suite.report, prefix=f"m{m}.{L.name}.")
    return report


def _delta2_battery(cap: int) -> List[SimplicialMap]:
    Z = std_simplex(2, cap)
    edge = simplex_inclusion(SimplexMap.face(2, 0), cap)
    return [
        identity_map(Z),
        inclusion_map(boundary_simplex(2, cap), Z),
        SimplicialMap(edge.source, Z, edge.function, name=edge.name),
    ]


def simplicial_layer(budget: EnumerationBudget, jobs: int) -> ValidationReport:
    report = ValidationReport(subject="simplicial identities, slices and commas")
    battery = _delta2_battery(4)
    Z = battery[0].target
    objects: List[SimplicialObject] = [
        Z,
        boundary_simplex(2, 4),
        op_dual(Z),
        product_with_interval(Z),
        nerve(standard_oriental(1), 2, budget, jobs),
    ]
    for g in battery:
        for m in range(2):
            for z in Z.simplices(m):
                report.extend(check_pullback_identity(g, z, m), prefix=f"pullback.{g.name}.")
                report.extend(compare_over_slices(g, z, m), prefix=f"over.{g.name}.")
                objects.append(slice_over(g, z, m))
            report.extend(check_fiber_decomposition(g, m, 4 - m - 1), prefix=f"fiber.{g.name}.")
        comma = comma_bisimplicial(identity_map(Z), g, (1, 2))
        report.extend(comma.audit(), prefix=f"comma.{g.name}.")
        objects.append(diagonal(comma))
    for X in objects:
        report.extend(X.audit(), prefix=f"audit.{X.name}.")
    return report


def homology_proxy(budget: EnumerationBudget, jobs: int) -> ValidationReport:
    report = ValidationReport(subject="reduced homology of nerves and slices")
    report.passed("acyclic")
    for m in range(4):
        X = nerve(standard_oriental(m), m + 2, budget, jobs)
        vanishes, groups = reduced_homology_vanishes(X, m + 1)
        if not vanishes:
            report.fail("acyclic", X.name, ", ".join(str(g) for g in groups))
    Z = std_simplex(2, 5)
    for m in range(3):
        for z in Z.simplices(m):
            for S in (slice_over(identity_map(Z), z, m), slice_under(identity_map(Z), z, m)):
                vanishes, groups = reduced_homology_vanishes(S)
                if not vanishes:
                    report.fail("acyclic", S.name, ", ".join(str(g) for g in groups))
    return report


CRITERIA: Dict[int, Criterion] = {
    1: steiner_validation,
    2: monoidal_closure,
    3: retraction_identities,
    4: aw_coalgebra,
    5: section_property,
    6: uniqueness_oracle,
    7: enumeration_cross_checks,
    8: transfer_morphisms,
    9: sdr_witness,
    10: simplicial_layer,
    11: homology_proxy,
}


def run_acceptance(
    selected: Optional[Sequence[int]] = None,
    budget: Optional[EnumerationBudget] = None,
    jobs: int = 1,
) -> Verdict:
    """
    Run the chosen criteria (all by default) and merge them into one verdict.

    Raises:
        AdcInputError: on an unknown criterion number.
    """
    numbers = sorted(CRITERIA) if not selected else sorted(set(selected))
    unknown = [k for k in numbers if k not in CRITERIA]
    if unknown:
        raise AdcInputError(f"unknown criteria {unknown}; choose from 1..{len(CRITERIA)}", "criteria")
    budget = budget or EnumerationBudget()
    verdict = Verdict("acceptance")
    started = time.perf_counter()
    seconds: Dict[str, float] = {}
    for k in numbers:
        criterion = CRITERIA[k]
        begin = time.perf_counter()
        report = criterion(budget, jobs)
        seconds[str(k)] = round(time.perf_counter() - begin, 3)
        first = report.violations[0] if report.violations else None
        verdict.record(f"{k:02d}.{criterion.__name__}", report.ok, str(first) if first else None)
        verdict.absorb(report, prefix=f"{k:02d}.")
        logger.info(f"criterion {k} ({criterion.__name__}): {'pass' if report.ok else 'FAIL'} in {seconds[str(k)]}s")
    verdict.metadata = {"criteria": numbers, "coeff_cap": budget.coeff_cap}
    verdict.timing_seconds = time.perf_counter() - started
    return verdict
