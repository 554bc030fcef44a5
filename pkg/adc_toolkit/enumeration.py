"""
Bounded enumeration of cells of ν(K), of ADC morphisms, and of truncated
Street nerves.

Every search reduces to finding positive chains x with a prescribed
boundary (or augmentation) and coefficients at most a cap. The solver is
memoised and also decides, branch by branch, whether the cap actually cut
anything: a coefficient is provably bounded when some constraint row is
single-signed on the variables still open.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Mapping, NamedTuple, Optional, Sequence, Tuple, Union

from adc_toolkit.complexes import classify_basis
from adc_toolkit.config import get_limits_config
from adc_toolkit.errors import AdcInputError, CapExceededError
from adc_toolkit.models import (
    AdcComplex,
    AdcMorphism,
    BasisId,
    ChainElement,
    Enumeration,
    EnumerationBudget,
    NuCell,
    SimplexMap,
)
from adc_toolkit.morphisms import compose
from adc_toolkit.orientals import cosimplicial_image, standard_oriental
from adc_toolkit.simplicial import Simplex, SimplicialObject

logger = logging.getLogger(__name__)

AUGMENTATION_ROW = "<e>"


class PreimageSearch(NamedTuple):
    solutions: Tuple[ChainElement, ...]
    complete: bool


def _default_budget(budget: Optional[EnumerationBudget]) -> EnumerationBudget:
    if budget is None:
        budget = EnumerationBudget(coeff_cap=get_limits_config().coeff_cap)
    if budget.coeff_cap < 1:
        raise AdcInputError(f"coefficient cap must be >= 1, got {budget.coeff_cap}", "coeff_cap")
    return budget


@lru_cache(maxsize=65536)
def _solve(L: AdcComplex, degree: int, target: Tuple[Tuple[BasisId, int], ...], cap: int) -> PreimageSearch:
    columns = L.basis_in(degree)
    entries: List[Dict[BasisId, int]] = []
    rows = set(ident for ident, _ in target)
    for ident in columns:
        if degree == 0:
            column = {AUGMENTATION_ROW: L.augmentation_of(ident)} if L.augmentation_of(ident) else {}
        else:
            column = dict(L.boundary_of(ident).terms)
        entries.append(column)
        rows.update(column)

    count = len(columns)
    row_list = sorted(rows)
    lo = {r: [0] * (count + 1) for r in row_list}
    hi = {r: [0] * (count + 1) for r in row_list}
    for r in row_list:
        for i in range(count - 1, -1, -1):
            c = entries[i].get(r, 0)
            lo[r][i] = lo[r][i + 1] + (cap * c if c < 0 else 0)
            hi[r][i] = hi[r][i + 1] + (cap * c if c > 0 else 0)
    residual = {r: 0 for r in row_list}
    residual.update(dict(target))

    solutions: List[ChainElement] = []
    values = [0] * count
    complete = True

    def feasible(i: int) -> bool:
        return all(lo[r][i] <= residual[r] <= hi[r][i] for r in row_list)

    def bound(i: int) -> Optional[int]:
        """A cap-independent upper bound for variable i, if some row provides one."""
        best: Optional[int] = None
        for r, c in entries[i].items():
            if c > 0 and lo[r][i] == 0:
                candidate = residual[r] // c
            elif c < 0 and hi[r][i] == 0:
                candidate = residual[r] // c
            else:
                continue
            best = candidate if best is None else min(best, candidate)
        return best

    def descend(i: int) -> None:
        nonlocal complete
        if not feasible(i):
            return
        if i == count:
            solutions.append(ChainElement.of(degree, zip(columns, values)))
            return
        proven = bound(i)
        if proven is None or proven > cap:
            complete = False
        upper = cap if proven is None else max(-1, min(cap, proven))
        column = entries[i]
        for value in range(upper + 1):
            values[i] = value
            for r, c in column.items():
                residual[r] -= c * value
            descend(i + 1)
            for r, c in column.items():
                residual[r] += c * value
        values[i] = 0

    descend(0)
    solutions.sort(key=lambda x: x.terms)
    return PreimageSearch(tuple(solutions), complete)


def positive_preimages(
    L: AdcComplex,
    degree: int,
    target: Union[ChainElement, int],
    cap: int,
) -> PreimageSearch:
    """
    All positive x in degree `degree` with coefficients <= cap and d(x) = target,
    or e(x) = target when degree is 0.

    Raises:
        AdcInputError: if the target does not live in degree - 1 of L.
    """
    if degree == 0:
        if not isinstance(target, int):
            raise AdcInputError("degree-0 preimages take an integer augmentation target")
        key: Tuple[Tuple[BasisId, int], ...] = ((AUGMENTATION_ROW, target),) if target else ()
    else:
        if not isinstance(target, ChainElement) or target.degree != degree - 1:
            raise AdcInputError(f"boundary target must be a chain of degree {degree - 1}")
        L.check_chain(target)
        key = target.terms
    return _solve(L, degree, key, cap)


def enumerate_cells(K: AdcComplex, dim: int, budget: Optional[EnumerationBudget] = None) -> Enumeration[NuCell]:
    """
    All cells of ν(K) of dimension `dim` with coefficients bounded by the budget.

    Raises:
        AdcInputError: if the coefficient cap is below 1.
    """
    budget = _default_budget(budget)
    cap = budget.coeff_cap
    if not classify_basis(K).steiner_strong:
        logger.warning(f"enumerating cells of {K.name}, which is not Steiner-strong")
    vertices = positive_preimages(K, 0, 1, cap)
    complete = vertices.complete
    cells: List[NuCell] = []

    def extend(sources: List[ChainElement], targets: List[ChainElement]) -> None:
        nonlocal complete
        k = len(sources)
        search = positive_preimages(K, k, targets[-1] - sources[-1], cap)
        complete = complete and search.complete
        if k == dim:
            for x in search.solutions:
                cells.append(NuCell(dim, tuple(sources + [x]), tuple(targets + [x])))
            return
        for a in search.solutions:
            for b in search.solutions:
                extend(sources + [a], targets + [b])

    if dim == 0:
        cells = [NuCell(0, (x,), (x,)) for x in vertices.solutions]
    else:
        for a in vertices.solutions:
            for b in vertices.solutions:
                extend([a], [b])
    cells.sort(key=lambda cell: cell.sort_key())
    if not complete:
        logger.warning(f"cells of {K.name} in dimension {dim}: coefficient cap {cap} may have cut solutions")
    return Enumeration(cells, EnumerationBudget(cap, complete))


@dataclass(frozen=True)
class _MorphismProblem:
    source: AdcComplex
    target: AdcComplex
    order: Tuple[BasisId, ...]
    pinned: Mapping[BasisId, ChainElement]
    cap: int


def _assignment_order(K: AdcComplex, pinned: Mapping[BasisId, ChainElement]) -> Tuple[BasisId, ...]:
    """
    Pinned elements as soon as possible; otherwise one vertex at a time, each
    followed by every element whose boundary support is already placed.
    """
    placed: List[BasisId] = []
    done = set()
    remaining = list(K.all_ids)

    def eligible(x: BasisId) -> bool:
        return K.degree_of(x) == 0 or K.boundary_of(x).support() <= done

    while remaining:
        pick = next((x for x in remaining if x in pinned and eligible(x)), None)
        if pick is None:
            pick = next((x for x in remaining if K.degree_of(x) > 0 and eligible(x)), None)
        if pick is None:
            pick = next(x for x in remaining if K.degree_of(x) == 0)
        remaining.remove(pick)
        placed.append(pick)
        done.add(pick)
    return tuple(placed)


def _required(problem: _MorphismProblem, x: BasisId, assignment: Mapping[BasisId, ChainElement]) -> Union[ChainElement, int]:
    K = problem.source
    degree = K.degree_of(x)
    if degree == 0:
        return K.augmentation_of(x)
    acc: Dict[BasisId, int] = {}
    for face, coef in K.boundary_of(x).terms:
        for ident, value in assignment[face].terms:
            acc[ident] = acc.get(ident, 0) + coef * value
    return ChainElement.from_dict(degree - 1, acc)


def _pinned_consistent(problem: _MorphismProblem, x: BasisId, assignment: Mapping[BasisId, ChainElement]) -> bool:
    image = problem.pinned[x]
    required = _required(problem, x, assignment)
    if isinstance(required, int):
        return problem.target.augment(image) == required
    return problem.target.boundary(image) == required


def _dfs(problem: _MorphismProblem, index: int, assignment: Dict[BasisId, ChainElement]) -> Tuple[List[Dict[BasisId, ChainElement]], bool]:
    if index == len(problem.order):
        return [dict(assignment)], True
    x = problem.order[index]
    results: List[Dict[BasisId, ChainElement]] = []
    complete = True
    if x in problem.pinned:
        candidates: Sequence[ChainElement] = (problem.pinned[x],) if _pinned_consistent(problem, x, assignment) else ()
    else:
        search = positive_preimages(problem.target, problem.source.degree_of(x), _required(problem, x, assignment), problem.cap)
        candidates = search.solutions
        complete = search.complete
    for y in candidates:
        assignment[x] = y
        found, branch_complete = _dfs(problem, index + 1, assignment)
        results.extend(found)
        complete = complete and branch_complete
        del assignment[x]
    return results, complete


def _run_branch(problem: _MorphismProblem, index: int, assignment: Dict[BasisId, ChainElement]) -> Tuple[List[Dict[BasisId, ChainElement]], bool]:
    return _dfs(problem, index, assignment)


def _check_constraint(K: AdcComplex, L: AdcComplex, constraint: Mapping[BasisId, ChainElement]) -> None:
    for x, image in constraint.items():
        path = f"constraint[{x!r}]"
        if not K.has(x):
            raise AdcInputError("not a basis element of the source", path)
        if image.degree != K.degree_of(x):
            raise AdcInputError(f"image of degree {image.degree}, expected {K.degree_of(x)}", path)
        L.check_chain(image, path)
        if not image.is_positive():
            raise AdcInputError("pinned image is not positive", path)
        if image.degree == 0:
            if L.augment(image) != K.augmentation_of(x):
                raise AdcInputError("pinned image does not preserve e", path)
        elif K.boundary_of(x).support() <= set(constraint):
            expected = ChainElement.zero(image.degree - 1)
            for face, coef in K.boundary_of(x).terms:
                expected = expected + constraint[face].scaled(coef)
            if L.boundary(image) != expected:
                raise AdcInputError("inconsistent constraint: pinned images do not commute with d", path)


def enumerate_morphisms(
    K: AdcComplex,
    L: AdcComplex,
    budget: Optional[EnumerationBudget] = None,
    constraint: Optional[Mapping[BasisId, ChainElement]] = None,
    jobs: Optional[int] = None,
) -> Enumeration[AdcMorphism]:
    """
    All ADC morphisms K → L with image coefficients <= cap that agree with
    `constraint` on the pinned basis elements.

    With jobs > 1 the branches below the first free basis element are
    searched in worker processes; the result order does not depend on it.

    Raises:
        AdcInputError: on a malformed or inconsistent constraint.
    """
    budget = _default_budget(budget)
    pinned = dict(constraint or {})
    _check_constraint(K, L, pinned)
    jobs = get_limits_config().jobs if jobs is None else jobs
    problem = _MorphismProblem(K, L, _assignment_order(K, pinned), pinned, budget.coeff_cap)

    if jobs > 1:
        actions, complete = _parallel_search(problem, jobs)
    else:
        actions, complete = _dfs(problem, 0, {})
    morphisms = sorted((AdcMorphism(K, L, action) for action in actions), key=lambda f: f.key)
    if not complete:
        logger.warning(f"Hom({K.name}, {L.name}): coefficient cap {budget.coeff_cap} may have cut solutions")
    logger.info(f"Hom({K.name}, {L.name}): {len(morphisms)} morphisms")
    return Enumeration(morphisms, EnumerationBudget(budget.coeff_cap, complete))


def _parallel_search(problem: _MorphismProblem, jobs: int) -> Tuple[List[Dict[BasisId, ChainElement]], bool]:
    """Walk the pinned prefix, then fan the first free element's candidates out."""
    assignment: Dict[BasisId, ChainElement] = {}
    index = 0
    while index < len(problem.order) and problem.order[index] in problem.pinned:
        x = problem.order[index]
        if not _pinned_consistent(problem, x, assignment):
            return [], True
        assignment[x] = problem.pinned[x]
        index += 1
    if index == len(problem.order):
        return [dict(assignment)], True
    x = problem.order[index]
    search = positive_preimages(problem.target, problem.source.degree_of(x), _required(problem, x, assignment), problem.cap)
    complete = search.complete
    results: List[Dict[BasisId, ChainElement]] = []
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [
            pool.submit(_run_branch, problem, index + 1, {**assignment, x: y})
            for y in search.solutions
        ]
        for future in futures:
            found, branch_complete = future.result()
            results.extend(found)
            complete = complete and branch_complete
    return results, complete


class NerveSet(SimplicialObject):
    """N(ν K) truncated at `cap`: n-simplices are morphisms c(Δn) → K."""

    def __init__(self, K: AdcComplex, cap: int, budget: Optional[EnumerationBudget] = None, jobs: Optional[int] = None):
        super().__init__(cap)
        self.complex = K
        self.budget = _default_budget(budget)
        self.jobs = jobs
        self.completeness: Dict[int, bool] = {}
        self.name = f"N({K.name})"

    def _compute_simplices(self, n: int) -> Sequence[Simplex]:
        found = enumerate_morphisms(standard_oriental(n), self.complex, self.budget, jobs=self.jobs)
        self.completeness[n] = found.budget.complete
        return found.items

    def _act(self, theta: SimplexMap, x: Simplex) -> Simplex:
        assert isinstance(x, AdcMorphism)
        return compose(x, cosimplicial_image(theta), name=x.name)

    @property
    def complete(self) -> bool:
        return all(self.completeness.get(n, True) for n in range(self.cap + 1))


def nerve(K: AdcComplex, trunc: int, budget: Optional[EnumerationBudget] = None, jobs: Optional[int] = None) -> NerveSet:
    """
    The Street nerve of ν(K) up to level `trunc`.

    Raises:
        CapExceededError: if trunc is above the configured truncation cap.
    """
    cap = get_limits_config().trunc_cap
    if trunc > cap:
        raise CapExceededError(f"truncation {trunc} above the cap {cap}", "trunc")
    return NerveSet(K, trunc, budget, jobs)
