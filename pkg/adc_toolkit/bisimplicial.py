"""
Truncated bisimplicial sets: the comma construction g↓h, the constant
pullbacks p₁*, p₂* and the diagonal δ*.

Simplices live in bidegrees (m, n) with m <= caps[0] and n <= caps[1].
Horizontal operators act on the first index, vertical ones on the second;
the audit checks both families of simplicial identities and that they
commute.
"""

import logging
from abc import ABC, abstractmethod
from typing import Callable, Dict, List, NamedTuple, Sequence, Tuple

from adc_toolkit.errors import AdcInputError, CapExceededError
from adc_toolkit.models import SimplexMap, ValidationReport, final_inclusion, initial_inclusion
from adc_toolkit.simplicial import Simplex, SimplicialMap, SimplicialObject

logger = logging.getLogger(__name__)

HORIZONTAL = 0
VERTICAL = 1


class BisimplicialObject(ABC):
    """A bisimplicial set truncated at caps = (horizontal, vertical)."""

    name: str = "B"

    def __init__(self, caps: Tuple[int, int]):
        if min(caps) < 0:
            raise AdcInputError(f"truncation must be non-negative, got {caps}")
        self.caps = caps
        self._levels: Dict[Tuple[int, int], Tuple[Simplex, ...]] = {}
        self._members: Dict[Tuple[int, int], frozenset] = {}

    @abstractmethod
    def _compute_simplices(self, m: int, n: int) -> Sequence[Simplex]:
        """Enumerate B_{m,n}."""

    @abstractmethod
    def _act(self, direction: int, theta: SimplexMap, x: Simplex) -> Simplex:
        """θ acting on the horizontal (0) or vertical (1) index."""

    def _check(self, m: int, n: int) -> None:
        if not (0 <= m <= self.caps[0] and 0 <= n <= self.caps[1]):
            raise CapExceededError(f"bidegree ({m}, {n}) outside the truncation {self.caps} of {self.name}")

    def simplices(self, m: int, n: int) -> Tuple[Simplex, ...]:
        self._check(m, n)
        if (m, n) not in self._levels:
            self._levels[(m, n)] = tuple(self._compute_simplices(m, n))
        return self._levels[(m, n)]

    def contains(self, m: int, n: int, x: Simplex) -> bool:
        if (m, n) not in self._members:
            self._members[(m, n)] = frozenset(self.simplices(m, n))
        return x in self._members[(m, n)]

    def act(self, direction: int, theta: SimplexMap, x: Simplex) -> Simplex:
        cap = self.caps[direction]
        if theta.source_dim > cap or theta.target_dim > cap:
            raise CapExceededError(f"{theta} outside the truncation {self.caps} of {self.name}")
        return self._act(direction, theta, x)

    def horizontal(self, theta: SimplexMap, x: Simplex) -> Simplex:
        return self.act(HORIZONTAL, theta, x)

    def vertical(self, theta: SimplexMap, x: Simplex) -> Simplex:
        return self.act(VERTICAL, theta, x)

    def audit(self) -> ValidationReport:
        """Closure, functoriality in each direction and commutation of the two."""
        report = ValidationReport(subject=f"bisimplicial identities of {self.name}")
        for check in ("closed", "functorial", "commute"):
            report.passed(check)
        for m in range(self.caps[0] + 1):
            for n in range(self.caps[1] + 1):
                for x in self.simplices(m, n):
                    self._audit_simplex(report, m, n, x)
        if not report.ok:
            logger.error(f"{self.name} failed its audit: {report.failed_checks()}")
        return report

    def _generators(self, direction: int, level: int) -> List[SimplexMap]:
        maps = [SimplexMap.face(level, i) for i in range(level + 1)] if level > 0 else []
        if level < self.caps[direction]:
            maps += [SimplexMap.degeneracy(level, i) for i in range(level + 1)]
        return maps

    def _audit_simplex(self, report: ValidationReport, m: int, n: int, x: Simplex) -> None:
        horizontals = self._generators(HORIZONTAL, m)
        verticals = self._generators(VERTICAL, n)
        for theta in horizontals:
            y = self.horizontal(theta, x)
            if not self.contains(theta.source_dim, n, y):
                report.fail("closed", f"{theta} on {x!r}", "horizontal image outside B")
            for eta in verticals:
                lhs = self.vertical(eta, y)
                rhs = self.horizontal(theta, self.vertical(eta, x))
                if lhs != rhs:
                    report.fail("commute", f"{x!r}", f"{theta} and {eta}")
        for eta in verticals:
            if not self.contains(m, eta.source_dim, self.vertical(eta, x)):
                report.fail("closed", f"{eta} on {x!r}", "vertical image outside B")
        for direction, level in ((HORIZONTAL, m), (VERTICAL, n)):
            for first in self._generators(direction, level):
                for second in self._generators(direction, first.source_dim):
                    lhs = self.act(direction, second, self.act(direction, first, x))
                    rhs = self.act(direction, first.compose(second), x)
                    if lhs != rhs:
                        report.fail("functorial", f"{x!r}", f"{second} then {first}")


class CommaSimplex(NamedTuple):
    """A simplex (x, y, z) of g↓h in bidegree (m, n)."""
    x: Simplex
    y: Simplex
    z: Simplex
    m: int
    n: int


class CommaBisimplicial(BisimplicialObject):
    """
    g↓h for g: X → Z and h: Y → Z.

    An (m, n)-simplex is a triple (x, y, z) with x ∈ X_m, y ∈ Y_n and
    z ∈ Z_{m+1+n} restricting to g(x) on the first m + 1 vertices and to
    h(y) on the last n + 1.
    """

    def __init__(self, g: SimplicialMap, h: SimplicialMap, caps: Tuple[int, int]):
        if g.target is not h.target:
            raise AdcInputError(f"{g.name} and {h.name} have different targets")
        Z = g.target
        if caps[0] > g.source.cap or caps[1] > h.source.cap:
            raise CapExceededError(f"comma truncation {caps} above the truncation of its sources")
        if caps[0] + 1 + caps[1] > Z.cap:
            raise CapExceededError(
                f"{Z.name} is truncated at {Z.cap}; bidegree {caps} needs level {caps[0] + 1 + caps[1]}"
            )
        super().__init__(caps)
        self.g, self.h = g, h
        self.name = f"{g.name}↓{h.name}"

    def _compute_simplices(self, m: int, n: int) -> Sequence[Simplex]:
        Z = self.g.target
        front, back = initial_inclusion(m, n), final_inclusion(m, n)
        by_front: Dict[Simplex, List[Simplex]] = {}
        for x in self.g.source.simplices(m):
            by_front.setdefault(self.g(m, x), []).append(x)
        by_back: Dict[Simplex, List[Simplex]] = {}
        for y in self.h.source.simplices(n):
            by_back.setdefault(self.h(n, y), []).append(y)
        found: List[Simplex] = []
        for z in Z.simplices(m + 1 + n):
            for x in by_front.get(Z.act(front, z), []):
                for y in by_back.get(Z.act(back, z), []):
                    found.append(CommaSimplex(x, y, z, m, n))
        return found

    def _act(self, direction: int, theta: SimplexMap, s: Simplex) -> Simplex:
        assert isinstance(s, CommaSimplex)
        Z = self.g.target
        if direction == HORIZONTAL:
            shifted = theta.concat(SimplexMap.identity(s.n))
            return CommaSimplex(self.g.source.act(theta, s.x), s.y, Z.act(shifted, s.z), theta.source_dim, s.n)
        shifted = SimplexMap.identity(s.m).concat(theta)
        return CommaSimplex(s.x, self.h.source.act(theta, s.y), Z.act(shifted, s.z), s.m, theta.source_dim)


def comma_bisimplicial(g: SimplicialMap, h: SimplicialMap, caps: Tuple[int, int]) -> CommaBisimplicial:
    """
    Raises:
        CapExceededError: if Z is not truncated high enough for the restrictions.
    """
    return CommaBisimplicial(g, h, caps)


class ConstantPullback(BisimplicialObject):
    """p₁*(X) (X_m in every column) or p₂*(X) (X_n in every row)."""

    def __init__(self, X: SimplicialObject, direction: int, caps: Tuple[int, int]):
        if caps[direction] > X.cap:
            raise CapExceededError(f"{X.name} is truncated at {X.cap}, below {caps}")
        super().__init__(caps)
        self.base = X
        self.direction = direction
        self.name = f"p{direction + 1}*({X.name})"

    def _compute_simplices(self, m: int, n: int) -> Sequence[Simplex]:
        return self.base.simplices(m if self.direction == HORIZONTAL else n)

    def _act(self, direction: int, theta: SimplexMap, x: Simplex) -> Simplex:
        if direction != self.direction:
            return x
        return self.base.act(theta, x)


def p1_star(X: SimplicialObject, caps: Tuple[int, int]) -> ConstantPullback:
    return ConstantPullback(X, HORIZONTAL, caps)


def p2_star(X: SimplicialObject, caps: Tuple[int, int]) -> ConstantPullback:
    return ConstantPullback(X, VERTICAL, caps)


class DiagonalSet(SimplicialObject):
    """δ*(B)_m = B_{m,m}, θ acting in both directions."""

    def __init__(self, B: BisimplicialObject):
        super().__init__(min(B.caps))
        self.bisimplicial = B
        self.name = f"δ*({B.name})"

    def _compute_simplices(self, n: int) -> Sequence[Simplex]:
        return self.bisimplicial.simplices(n, n)

    def _act(self, theta: SimplexMap, x: Simplex) -> Simplex:
        return self.bisimplicial.vertical(theta, self.bisimplicial.horizontal(theta, x))


def diagonal(B: BisimplicialObject) -> DiagonalSet:
    return DiagonalSet(B)


class BisimplicialMap:
    """A bidegree-wise function between bisimplicial objects."""

    def __init__(
        self,
        source: BisimplicialObject,
        target: BisimplicialObject,
        function: Callable[[int, int, Simplex], Simplex],
        name: str = "f",
    ):
        self.source = source
        self.target = target
        self.function = function
        self.name = name

    def __call__(self, m: int, n: int, x: Simplex) -> Simplex:
        return self.function(m, n, x)


def comma_legs(B: CommaBisimplicial) -> Tuple[BisimplicialMap, BisimplicialMap]:
    """The canonical legs g↓h → p₁*(X) and g↓h → p₂*(Y)."""
    first = BisimplicialMap(B, p1_star(B.g.source, B.caps), lambda m, n, s: s.x, name="pr_X")  # type: ignore[attr-defined]
    second = BisimplicialMap(B, p2_star(B.h.source, B.caps), lambda m, n, s: s.y, name="pr_Y")  # type: ignore[attr-defined]
    return first, second


def validate_bisimplicial_map(f: BisimplicialMap) -> ValidationReport:
    """Check that f lands in its target and commutes with both operator families."""
    report = ValidationReport(subject=f"bisimplicial map {f.name}")
    report.passed("lands_in_target")
    report.passed("commutes")
    B = f.source
    for m in range(B.caps[0] + 1):
        for n in range(B.caps[1] + 1):
            for x in B.simplices(m, n):
                y = f(m, n, x)
                if not f.target.contains(m, n, y):
                    report.fail("lands_in_target", f"{x!r}")
                    continue
                for direction, level in ((HORIZONTAL, m), (VERTICAL, n)):
                    for theta in B._generators(direction, level):
                        moved = B.act(direction, theta, x)
                        mm, nn = (theta.source_dim, n) if direction == HORIZONTAL else (m, theta.source_dim)
                        if f(mm, nn, moved) != f.target.act(direction, theta, y):
                            report.fail("commutes", f"{theta} on {x!r}")
    return report
