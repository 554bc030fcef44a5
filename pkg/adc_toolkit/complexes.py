"""
Structural checks on based augmented directed complexes.

Covers validation of d and e, the positive/negative split of chains, the
preorder <=_N on the basis, atoms and the Steiner conditions (unital,
strongly loop-free).
"""

import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Mapping, NamedTuple, Optional, Sequence, Set, Tuple, Union

import networkx as nx

from adc_toolkit.errors import AdcInputError
from adc_toolkit.models import (
    AdcComplex,
    BasisId,
    ChainElement,
    NuCell,
    ValidationReport,
)

logger = logging.getLogger(__name__)

ChainSpec = Union[ChainElement, Mapping[BasisId, int]]


def build_complex(
    name: str,
    basis: Sequence[Sequence[BasisId]],
    differential: Mapping[BasisId, ChainSpec],
    augmentation: Mapping[BasisId, int],
    max_degree: Optional[int] = None,
) -> AdcComplex:
    """
    Assemble an AdcComplex from plain mappings.

    Differential values may be given as {id: coef} mappings; their degree is
    inferred from the element they are attached to.
    """
    basis_tuple = tuple(tuple(ids) for ids in basis)
    degrees: Dict[BasisId, int] = {}
    for degree, ids in enumerate(basis_tuple):
        for ident in ids:
            degrees.setdefault(ident, degree)
    chains: Dict[BasisId, ChainElement] = {}
    for ident, value in differential.items():
        if ident not in degrees:
            raise AdcInputError(f"differential given for unknown element {ident!r}", f"d[{ident!r}]")
        if isinstance(value, ChainElement):
            chains[ident] = value
        else:
            chains[ident] = ChainElement.of(degrees[ident] - 1, value)
    return AdcComplex(
        name=name,
        max_degree=max(len(basis_tuple) - 1, 0) if max_degree is None else max_degree,
        basis=basis_tuple,
        differential=chains,
        augmentation={k: int(v) for k, v in augmentation.items()},
    )


def _structural_errors(K: AdcComplex) -> List[str]:
    errors: List[str] = []
    if len(K.basis) > K.max_degree + 1:
        errors.append(f"basis lists {len(K.basis)} degrees but max_degree is {K.max_degree}")
    for ident, chain in sorted(K.differential.items()):
        path = f"d[{ident!r}]"
        if not K.has(ident):
            errors.append(f"{path}: unknown basis element")
            continue
        degree = K.degree_of(ident)
        if degree == 0:
            errors.append(f"{path}: differential given in degree 0")
            continue
        if chain.degree != degree - 1:
            errors.append(f"{path}: chain of degree {chain.degree}, expected {degree - 1}")
            continue
        try:
            K.check_chain(chain, path)
        except AdcInputError as exc:
            errors.append(str(exc))
    for ident in sorted(K.augmentation):
        path = f"e[{ident!r}]"
        if not K.has(ident):
            errors.append(f"{path}: unknown basis element")
        elif K.degree_of(ident) != 0:
            errors.append(f"{path}: augmentation given in degree {K.degree_of(ident)}")
    return errors


def validate_complex(K: AdcComplex) -> ValidationReport:
    """Check identifier uniqueness, d∘d = 0 and e∘d = 0 on every basis element."""
    report = ValidationReport(subject=f"complex {K.name}")
    for message in _structural_errors(K):
        report.input_error(message)
    if report.input_errors:
        logger.warning(f"{K.name}: {len(report.input_errors)} structural errors, skipping algebra")
        return report

    report.passed("unique_ids")
    for degree, ids in enumerate(K.basis):
        seen: Set[BasisId] = set()
        for ident in ids:
            if ident in seen:
                report.fail("unique_ids", ident, f"repeated in degree {degree}")
            seen.add(ident)

    report.passed("d_squared")
    report.passed("augmentation")
    for degree in range(1, len(K.basis)):
        for ident in K.basis[degree]:
            boundary = K.boundary_of(ident)
            if degree == 1:
                value = K.augment(boundary)
                if value != 0:
                    report.fail("augmentation", ident, f"e(d({ident})) = {value}")
            else:
                twice = K.boundary(boundary)
                if not twice.is_zero():
                    report.fail("d_squared", ident, f"d(d({ident})) = {twice}")
    logger.debug(f"validated {K.name}: ok={report.ok}")
    return report


class PositiveParts(NamedTuple):
    support: FrozenSet[BasisId]
    plus: ChainElement
    minus: ChainElement


def positive_parts(K: AdcComplex, x: ChainElement) -> PositiveParts:
    """Split x = x_plus - x_minus into positive chains with disjoint supports."""
    K.check_chain(x)
    plus = {ident: coef for ident, coef in x.terms if coef > 0}
    minus = {ident: -coef for ident, coef in x.terms if coef < 0}
    return PositiveParts(
        support=x.support(),
        plus=ChainElement.from_dict(x.degree, plus),
        minus=ChainElement.from_dict(x.degree, minus),
    )


class BasisPreorder:
    """
    The preorder <=_N on a basis: least preorder with y <= x for y in the
    negative part of d(x) and x <= z for z in the positive part.
    """

    def __init__(self, K: AdcComplex):
        self.complex = K
        self.generating: nx.DiGraph = nx.DiGraph()
        self.generating.add_nodes_from(K.all_ids)
        for degree in range(1, len(K.basis)):
            for ident in K.basis[degree]:
                parts = positive_parts(K, K.boundary_of(ident))
                for lower, _ in parts.minus.terms:
                    self.generating.add_edge(lower, ident)
                for upper, _ in parts.plus.terms:
                    self.generating.add_edge(ident, upper)
        self.closure: nx.DiGraph = nx.transitive_closure(self.generating, reflexive=None)
        self.closure.add_edges_from((node, node) for node in K.all_ids)

    def leq(self, lower: BasisId, upper: BasisId) -> bool:
        return bool(self.closure.has_edge(lower, upper))

    def generating_edges(self) -> Set[Tuple[BasisId, BasisId]]:
        return set(self.generating.edges())

    def pairs(self) -> Set[Tuple[BasisId, BasisId]]:
        return set(self.closure.edges())

    def loop_witness(self) -> Optional[List[BasisId]]:
        """A strongly connected component with more than one element, if any."""
        for component in nx.strongly_connected_components(self.generating):
            if len(component) > 1:
                return sorted(component)
        return None

    def is_antisymmetric(self) -> bool:
        return self.loop_witness() is None


def leN_preorder(K: AdcComplex) -> BasisPreorder:
    return BasisPreorder(K)


@dataclass(frozen=True)
class Atom:
    """The atom <x> of a basis element and whether its bottom row has e = 1."""
    element: BasisId
    cell: NuCell
    unital: bool


def atom(K: AdcComplex, x: BasisId) -> Atom:
    """Build <x> by descending through negative/positive parts of differentials."""
    degree = K.degree_of(x)
    top = K.generator(x)
    sources: List[ChainElement] = [top]
    targets: List[ChainElement] = [top]
    for _ in range(degree, 0, -1):
        sources.append(positive_parts(K, K.boundary(sources[-1])).minus)
        targets.append(positive_parts(K, K.boundary(targets[-1])).plus)
    sources.reverse()
    targets.reverse()
    unital = K.augment(sources[0]) == 1 and K.augment(targets[0]) == 1
    return Atom(x, NuCell(degree, tuple(sources), tuple(targets)), unital)


def check_cell(K: AdcComplex, cell: NuCell) -> ValidationReport:
    """The four conditions on a table (x^e_k) for it to be a cell of nu(K)."""
    report = ValidationReport(subject=f"cell of {K.name}")
    for check in ("positive", "boundaries", "unit", "top"):
        report.passed(check)
    if len(cell.sources) != cell.dimension + 1 or len(cell.targets) != cell.dimension + 1:
        report.input_error(f"table of dimension {cell.dimension} has wrong number of rows")
        return report
    for k in range(cell.dimension + 1):
        for eps, x in ((0, cell.sources[k]), (1, cell.targets[k])):
            if x.degree != k:
                report.input_error(f"x^{eps}_{k} has degree {x.degree}")
                continue
            try:
                K.check_chain(x, f"x^{eps}_{k}")
            except AdcInputError as exc:
                report.input_error(str(exc))
    if report.input_errors:
        return report
    for k in range(cell.dimension + 1):
        for eps, x in ((0, cell.sources[k]), (1, cell.targets[k])):
            if not x.is_positive():
                report.fail("positive", f"x^{eps}_{k}", str(x))
            if k > 0:
                expected = cell.targets[k - 1] - cell.sources[k - 1]
                if K.boundary(x) != expected:
                    report.fail("boundaries", f"x^{eps}_{k}", f"d = {K.boundary(x)}, expected {expected}")
    for eps, x in ((0, cell.sources[0]), (1, cell.targets[0])):
        if x.degree == 0 and K.augment(x) != 1:
            report.fail("unit", f"x^{eps}_0", f"e = {K.augment(x)}")
    if cell.sources[cell.dimension] != cell.targets[cell.dimension]:
        report.fail("top", f"row {cell.dimension}", "top rows differ")
    return report


@dataclass(frozen=True)
class BasisClassification:
    unital: bool
    strongly_loop_free: bool
    steiner_strong: bool
    non_unital_atoms: Tuple[BasisId, ...] = ()
    loop: Tuple[BasisId, ...] = ()


def classify_basis(K: AdcComplex) -> BasisClassification:
    """Decide whether the basis is unital, strongly loop-free, or both."""
    failing = tuple(ident for ident in K.all_ids if not atom(K, ident).unital)
    loop = leN_preorder(K).loop_witness()
    unital = not failing
    loop_free = loop is None
    if failing:
        logger.info(f"{K.name}: atoms without unit bottom row: {list(failing)}")
    if loop:
        logger.info(f"{K.name}: <=_N has a loop through {loop}")
    return BasisClassification(
        unital=unital,
        strongly_loop_free=loop_free,
        steiner_strong=unital and loop_free,
        non_unital_atoms=failing,
        loop=tuple(loop or ()),
    )
