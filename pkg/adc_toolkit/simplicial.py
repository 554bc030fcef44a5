"""
Truncated simplicial sets, maps and homotopies.

Every simplicial object knows its truncation cap, lists its n-simplices for
n <= cap, and acts by arbitrary monotone maps θ: [k] → [n]. Tabled sets act
through faces and degeneracies; lazy ones compute the action directly.
"""

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Callable, Dict, Hashable, List, Optional, Sequence, Tuple

from adc_toolkit.errors import AdcInputError, CapExceededError
from adc_toolkit.models import SimplexMap, ValidationReport

logger = logging.getLogger(__name__)

Simplex = Hashable

AUDIT_FACTORIZATION_LEVEL = 3


class SimplicialObject(ABC):
    """A simplicial set truncated at `cap`."""

    name: str = "X"

    def __init__(self, cap: int):
        if cap < 0:
            raise AdcInputError(f"truncation must be non-negative, got {cap}")
        self.cap = cap
        self._levels: Dict[int, Tuple[Simplex, ...]] = {}
        self._members: Dict[int, frozenset] = {}

    @abstractmethod
    def _compute_simplices(self, n: int) -> Sequence[Simplex]:
        """Enumerate X_n for 0 <= n <= cap."""

    @abstractmethod
    def _act(self, theta: SimplexMap, x: Simplex) -> Simplex:
        """θ*(x) for x in X_{θ.target_dim}."""

    def _check_level(self, n: int) -> None:
        if n < 0 or n > self.cap:
            raise CapExceededError(f"level {n} outside the truncation 0..{self.cap} of {self.name}")

    def simplices(self, n: int) -> Tuple[Simplex, ...]:
        self._check_level(n)
        if n not in self._levels:
            self._levels[n] = tuple(self._compute_simplices(n))
            logger.debug(f"{self.name}: {len(self._levels[n])} simplices at level {n}")
        return self._levels[n]

    def contains(self, n: int, x: Simplex) -> bool:
        if n not in self._members:
            self._members[n] = frozenset(self.simplices(n))
        return x in self._members[n]

    def act(self, theta: SimplexMap, x: Simplex) -> Simplex:
        self._check_level(theta.source_dim)
        self._check_level(theta.target_dim)
        return self._act(theta, x)

    def face(self, n: int, i: int, x: Simplex) -> Simplex:
        return self.act(SimplexMap.face(n, i), x)

    def degeneracy(self, n: int, i: int, x: Simplex) -> Simplex:
        return self.act(SimplexMap.degeneracy(n, i), x)

    def is_degenerate(self, n: int, x: Simplex) -> bool:
        """x is degenerate iff x = s_i(d_i x) for some i."""
        if n == 0:
            return False
        return any(self.degeneracy(n - 1, i, self.face(n, i, x)) == x for i in range(n))

    def nondegenerate(self, n: int) -> List[Simplex]:
        return [x for x in self.simplices(n) if not self.is_degenerate(n, x)]

    def counts(self) -> List[int]:
        return [len(self.simplices(n)) for n in range(self.cap + 1)]

    def audit(self) -> ValidationReport:
        """Check closure and the simplicial identities on every simplex."""
        report = ValidationReport(subject=f"simplicial identities of {self.name}")
        for check in ("closed", "face_face", "degeneracy_degeneracy", "face_degeneracy"):
            report.passed(check)
        for n in range(self.cap + 1):
            for x in self.simplices(n):
                self._audit_simplex(report, n, x)
        if self.cap >= 1:
            report.passed("factorization")
            for n in range(min(self.cap, AUDIT_FACTORIZATION_LEVEL) + 1):
                for x in self.simplices(n):
                    self._audit_factorization(report, n, x)
        if not report.ok:
            logger.error(f"{self.name} failed its audit: {report.failed_checks()}")
        return report

    def _audit_simplex(self, report: ValidationReport, n: int, x: Simplex) -> None:
        faces = [self.face(n, i, x) for i in range(n + 1)] if n > 0 else []
        for i, y in enumerate(faces):
            if not self.contains(n - 1, y):
                report.fail("closed", f"d{i} of {x!r}", "face outside X")
        for i in range(n + 1):
            for j in range(i + 1, n + 1):
                if n >= 2 and self.face(n - 1, i, faces[j]) != self.face(n - 1, j - 1, faces[i]):
                    report.fail("face_face", f"{x!r}", f"d{i} d{j} != d{j - 1} d{i}")
        if n + 1 > self.cap:
            return
        degens = [self.degeneracy(n, j, x) for j in range(n + 1)]
        for j, y in enumerate(degens):
            if not self.contains(n + 1, y):
                report.fail("closed", f"s{j} of {x!r}", "degeneracy outside X")
        if n + 2 <= self.cap:
            for i in range(n + 1):
                for j in range(i, n + 1):
                    if self.degeneracy(n + 1, i, degens[j]) != self.degeneracy(n + 1, j + 1, degens[i]):
                        report.fail("degeneracy_degeneracy", f"{x!r}", f"s{i} s{j} != s{j + 1} s{i}")
        for j, y in enumerate(degens):
            for i in range(n + 2):
                lhs = self.face(n + 1, i, y)
                if i in (j, j + 1):
                    expected = x
                elif i < j:
                    expected = self.degeneracy(n - 1, j - 1, faces[i])
                else:
                    expected = self.degeneracy(n - 1, j, faces[i - 1])
                if lhs != expected:
                    report.fail("face_degeneracy", f"{x!r}", f"d{i} s{j}")

    def _audit_factorization(self, report: ValidationReport, n: int, x: Simplex) -> None:
        for k in range(min(self.cap, AUDIT_FACTORIZATION_LEVEL) + 1):
            for theta in SimplexMap.all_maps(k, n):
                if self.act(theta, x) != act_by_generators(self, theta, x):
                    report.fail("factorization", f"{theta} on {x!r}")


def act_by_generators(X: SimplicialObject, theta: SimplexMap, x: Simplex) -> Simplex:
    """
    θ*(x) through the epi-mono factorization: faces for the missing values in
    descending order, then degeneracies at the repeat positions ascending.
    """
    y = x
    level = theta.target_dim
    for j in reversed(theta.missing()):
        y = X.face(level, j, y)
        level -= 1
    for t in theta.repeats():
        y = X.degeneracy(level, t, y)
        level += 1
    return y


class TruncatedSimplicialSet(SimplicialObject):
    """A tabled simplicial set: labelled simplices plus face and degeneracy tables."""

    def __init__(
        self,
        levels: Sequence[Sequence[str]],
        faces: Dict[Tuple[int, int, str], str],
        degeneracies: Dict[Tuple[int, int, str], str],
        name: str = "X",
    ):
        super().__init__(len(levels) - 1)
        self.name = name
        self.levels = [list(level) for level in levels]
        self.faces = dict(faces)
        self.degeneracies = dict(degeneracies)

    def _compute_simplices(self, n: int) -> Sequence[Simplex]:
        return self.levels[n]

    def _generator(self, table: Dict[Tuple[int, int, str], str], kind: str, n: int, i: int, x: str) -> str:
        try:
            return table[(n, i, x)]
        except KeyError:
            raise AdcInputError(f"{kind}[{n}][{i}][{x!r}] missing from {self.name}")

    def face(self, n: int, i: int, x: Simplex) -> Simplex:
        return self._generator(self.faces, "faces", n, i, str(x))

    def degeneracy(self, n: int, i: int, x: Simplex) -> Simplex:
        self._check_level(n + 1)
        return self._generator(self.degeneracies, "degeneracies", n, i, str(x))

    def _act(self, theta: SimplexMap, x: Simplex) -> Simplex:
        return act_by_generators(self, theta, x)


def tabulate(X: SimplicialObject, name: Optional[str] = None) -> TruncatedSimplicialSet:
    """Freeze any simplicial object into face/degeneracy tables with string labels."""
    labels: Dict[Tuple[int, Simplex], str] = {}
    levels: List[List[str]] = []
    for n in range(X.cap + 1):
        level = []
        for index, x in enumerate(X.simplices(n)):
            label = f"{n}:{index}"
            labels[(n, x)] = label
            level.append(label)
        levels.append(level)
    faces: Dict[Tuple[int, int, str], str] = {}
    degeneracies: Dict[Tuple[int, int, str], str] = {}
    for n in range(X.cap + 1):
        for x in X.simplices(n):
            for i in range(n + 1):
                if n > 0:
                    faces[(n, i, labels[(n, x)])] = labels[(n - 1, X.face(n, i, x))]
                if n < X.cap:
                    degeneracies[(n, i, labels[(n, x)])] = labels[(n + 1, X.degeneracy(n, i, x))]
    return TruncatedSimplicialSet(levels, faces, degeneracies, name=name or X.name)


class StandardSimplex(SimplicialObject):
    """Δ^m: n-simplices are the monotone maps [n] → [m]."""

    def __init__(self, m: int, cap: int):
        super().__init__(cap)
        self.m = m
        self.name = f"Δ{m}"

    def _compute_simplices(self, n: int) -> Sequence[Simplex]:
        return SimplexMap.all_maps(n, self.m)

    def _act(self, theta: SimplexMap, x: Simplex) -> Simplex:
        assert isinstance(x, SimplexMap)
        return x.compose(theta)


class SimplexBoundary(StandardSimplex):
    """∂Δ^m: the non-surjective maps [n] → [m]."""

    def __init__(self, m: int, cap: int):
        super().__init__(m, cap)
        self.name = f"∂Δ{m}"

    def _compute_simplices(self, n: int) -> Sequence[Simplex]:
        return [x for x in SimplexMap.all_maps(n, self.m) if not x.is_surjective()]


def std_simplex(m: int, cap: int) -> StandardSimplex:
    return StandardSimplex(m, cap)


def boundary_simplex(m: int, cap: int) -> SimplexBoundary:
    return SimplexBoundary(m, cap)


class OppositeSet(SimplicialObject):
    """X^op: the same simplices, θ acting through the reversal D(θ)."""

    def __init__(self, X: SimplicialObject):
        super().__init__(X.cap)
        self.base = X
        self.name = f"{X.name}^op"

    def _compute_simplices(self, n: int) -> Sequence[Simplex]:
        return self.base.simplices(n)

    def _act(self, theta: SimplexMap, x: Simplex) -> Simplex:
        return self.base.act(theta.dual(), x)


def op_dual(X: SimplicialObject) -> SimplicialObject:
    """X^op, unwrapping a double dual."""
    if isinstance(X, OppositeSet):
        return X.base
    return OppositeSet(X)


class ProductSet(SimplicialObject):
    def __init__(self, X: SimplicialObject, Y: SimplicialObject):
        super().__init__(min(X.cap, Y.cap))
        self.left, self.right = X, Y
        self.name = f"{X.name}×{Y.name}"

    def _compute_simplices(self, n: int) -> Sequence[Simplex]:
        return [(x, y) for x in self.left.simplices(n) for y in self.right.simplices(n)]

    def _act(self, theta: SimplexMap, pair: Simplex) -> Simplex:
        x, y = pair  # type: ignore[misc]
        return (self.left.act(theta, x), self.right.act(theta, y))


def product_with_interval(X: SimplicialObject) -> ProductSet:
    """Δ¹ × X, simplices written (φ, x) with φ: [n] → [1]."""
    return ProductSet(StandardSimplex(1, X.cap), X)


class SimplicialMap:
    """A level-wise function between simplicial objects."""

    def __init__(
        self,
        source: SimplicialObject,
        target: SimplicialObject,
        function: Callable[[int, Simplex], Simplex],
        name: str = "f",
    ):
        self.source = source
        self.target = target
        self.function = function
        self.name = name
        self._cache: Dict[Tuple[int, Simplex], Simplex] = {}

    def __call__(self, n: int, x: Simplex) -> Simplex:
        key = (n, x)
        if key not in self._cache:
            self._cache[key] = self.function(n, x)
        return self._cache[key]

    def compose(self, other: "SimplicialMap") -> "SimplicialMap":
        """self after other."""
        return SimplicialMap(
            other.source,
            self.target,
            lambda n, x: self(n, other(n, x)),
            name=f"{self.name}∘{other.name}",
        )


def identity_map(X: SimplicialObject) -> SimplicialMap:
    return SimplicialMap(X, X, lambda n, x: x, name=f"id_{X.name}")


def inclusion_map(A: SimplicialObject, X: SimplicialObject, name: str = "") -> SimplicialMap:
    """A ⊂ X with A sharing the labels of X."""
    return SimplicialMap(A, X, lambda n, x: x, name=name or f"{A.name}⊂{X.name}")


def simplex_inclusion(theta: SimplexMap, cap: int) -> SimplicialMap:
    """Δ^k → Δ^n, x ↦ θ ∘ x."""

    def apply(n: int, x: Simplex) -> Simplex:
        assert isinstance(x, SimplexMap)
        return theta.compose(x)

    return SimplicialMap(
        StandardSimplex(theta.source_dim, cap),
        StandardSimplex(theta.target_dim, cap),
        apply,
        name=f"Δ{theta.values}",
    )


def validate_simplicial_map(f: SimplicialMap, levels: Optional[int] = None) -> ValidationReport:
    """Check that f lands in its target and commutes with faces and degeneracies."""
    report = ValidationReport(subject=f"simplicial map {f.name}")
    report.passed("lands_in_target")
    report.passed("commutes")
    top = min(f.source.cap, f.target.cap) if levels is None else levels
    for n in range(top + 1):
        for x in f.source.simplices(n):
            y = f(n, x)
            if not f.target.contains(n, y):
                report.fail("lands_in_target", f"{x!r}", f"image {y!r} not in {f.target.name}")
                continue
            for i in range(n + 1):
                if n > 0 and f(n - 1, f.source.face(n, i, x)) != f.target.face(n, i, y):
                    report.fail("commutes", f"d{i} of {x!r}")
                if n < top and f(n + 1, f.source.degeneracy(n, i, x)) != f.target.degeneracy(n, i, y):
                    report.fail("commutes", f"s{i} of {x!r}")
    return report


def maps_agree(f: SimplicialMap, g: SimplicialMap, levels: Optional[int] = None) -> Optional[str]:
    """The first simplex where f and g differ, or None."""
    top = min(f.source.cap, f.target.cap) if levels is None else levels
    for n in range(top + 1):
        for x in f.source.simplices(n):
            if f(n, x) != g(n, x):
                return f"level {n}: {x!r}"
    return None


@dataclass
class SimplicialHomotopy:
    """h: Δ¹ × X → Y from `source_map` (at the vertex 0) to `target_map` (at 1)."""
    homotopy: SimplicialMap
    source_map: SimplicialMap
    target_map: SimplicialMap


def constant_homotopy(f: SimplicialMap) -> SimplicialHomotopy:
    cylinder = product_with_interval(f.source)
    h = SimplicialMap(cylinder, f.target, lambda n, pair: f(n, pair[1]), name=f"const_{f.name}")
    return SimplicialHomotopy(h, f, f)


def validate_homotopy(h: SimplicialHomotopy, levels: Optional[int] = None) -> ValidationReport:
    """
    Check that h is simplicial and restricts to its declared endpoints.

    Endpoint mismatches name the offending simplex.
    """
    report = ValidationReport(subject=f"homotopy {h.homotopy.name}")
    report.extend(validate_simplicial_map(h.homotopy, levels), prefix="map.")
    X = h.source_map.source
    top = min(X.cap, h.homotopy.target.cap) if levels is None else levels
    report.passed("source_endpoint")
    report.passed("target_endpoint")
    for n in range(top + 1):
        for x in X.simplices(n):
            at_zero = h.homotopy(n, (SimplexMap.constant(n, 1, 0), x))
            at_one = h.homotopy(n, (SimplexMap.constant(n, 1, 1), x))
            if at_zero != h.source_map(n, x):
                report.fail("source_endpoint", f"level {n}: {x!r}")
            if at_one != h.target_map(n, x):
                report.fail("target_endpoint", f"level {n}: {x!r}")
    return report


class PullbackSet(SimplicialObject):
    """X ×_Z Y for f: X → Z and g: Y → Z, simplices (x, y) with f(x) = g(y)."""

    def __init__(self, f: SimplicialMap, g: SimplicialMap):
        super().__init__(min(f.source.cap, g.source.cap))
        self.f, self.g = f, g
        self.name = f"{f.source.name}×[{f.target.name}]{g.source.name}"

    def _compute_simplices(self, n: int) -> Sequence[Simplex]:
        by_image: Dict[Simplex, List[Simplex]] = {}
        for y in self.g.source.simplices(n):
            by_image.setdefault(self.g(n, y), []).append(y)
        return [(x, y) for x in self.f.source.simplices(n) for y in by_image.get(self.f(n, x), [])]

    def _act(self, theta: SimplexMap, pair: Simplex) -> Simplex:
        x, y = pair  # type: ignore[misc]
        return (self.f.source.act(theta, x), self.g.source.act(theta, y))


def pullback(f: SimplicialMap, g: SimplicialMap) -> PullbackSet:
    return PullbackSet(f, g)


def projection(P: SimplicialObject, index: int) -> SimplicialMap:
    """The index-th leg of a product or pullback."""
    if isinstance(P, ProductSet):
        target = P.left if index == 0 else P.right
    elif isinstance(P, PullbackSet):
        target = P.f.source if index == 0 else P.g.source
    else:
        raise AdcInputError(f"{P.name} has no projections")
    return SimplicialMap(P, target, lambda n, pair: pair[index], name=f"pr{index + 1}")
