"""
Strongly typed models for augmented directed complexes and their maps.

Chains, complexes, morphisms, antihomotopies and simplex maps are immutable
values. Reports and verdicts are plain mutable dataclasses filled in by the
checking functions.
"""

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import (
    Any,
    Dict,
    FrozenSet,
    Generic,
    Iterable,
    Iterator,
    List,
    Mapping,
    Optional,
    Tuple,
    TypeVar,
    Union,
)

from adc_toolkit.errors import AdcInputError, CapExceededError

BasisId = str
Terms = Tuple[Tuple[BasisId, int], ...]

COEFFICIENT_GUARD: int = 2 ** 63

T = TypeVar("T")


@dataclass(frozen=True)
class ChainElement:
    """An integer combination of basis elements of one degree."""
    degree: int
    terms: Terms = ()

    @classmethod
    def of(
        cls,
        degree: int,
        coefficients: Union[Mapping[BasisId, int], Iterable[Tuple[BasisId, int]]],
    ) -> "ChainElement":
        """Build a normalized chain, summing repeated identifiers."""
        items = coefficients.items() if isinstance(coefficients, Mapping) else coefficients
        acc: Dict[BasisId, int] = {}
        for ident, coef in items:
            acc[ident] = acc.get(ident, 0) + int(coef)
        return cls.from_dict(degree, acc)

    @classmethod
    def from_dict(cls, degree: int, acc: Mapping[BasisId, int]) -> "ChainElement":
        terms = tuple(sorted((k, v) for k, v in acc.items() if v != 0))
        for ident, coef in terms:
            if abs(coef) >= COEFFICIENT_GUARD:
                raise CapExceededError(f"coefficient of {ident} overflows the guard: {coef}")
        return cls(degree, terms)

    @classmethod
    def generator(cls, degree: int, ident: BasisId, coef: int = 1) -> "ChainElement":
        return cls.from_dict(degree, {ident: coef})

    @classmethod
    def zero(cls, degree: int) -> "ChainElement":
        return cls(degree, ())

    def as_dict(self) -> Dict[BasisId, int]:
        return dict(self.terms)

    def coefficient(self, ident: BasisId) -> int:
        for key, coef in self.terms:
            if key == ident:
                return coef
        return 0

    def support(self) -> FrozenSet[BasisId]:
        return frozenset(ident for ident, _ in self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_positive(self) -> bool:
        """True when every coefficient is non-negative (zero is positive)."""
        return all(coef > 0 for _, coef in self.terms)

    def _check_degree(self, other: "ChainElement") -> None:
        if self.degree != other.degree:
            raise AdcInputError(
                f"cannot combine chains of degree {self.degree} and {other.degree}"
            )

    def __add__(self, other: "ChainElement") -> "ChainElement":
        self._check_degree(other)
        acc = dict(self.terms)
        for ident, coef in other.terms:
            acc[ident] = acc.get(ident, 0) + coef
        return ChainElement.from_dict(self.degree, acc)

    def __sub__(self, other: "ChainElement") -> "ChainElement":
        return self + (-other)

    def __neg__(self) -> "ChainElement":
        return ChainElement(self.degree, tuple((k, -v) for k, v in self.terms))

    def scaled(self, factor: int) -> "ChainElement":
        if factor == 0:
            return ChainElement.zero(self.degree)
        return ChainElement.from_dict(self.degree, {k: v * factor for k, v in self.terms})

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts: List[str] = []
        for index, (ident, coef) in enumerate(self.terms):
            sign = "-" if coef < 0 else "+"
            magnitude = abs(coef)
            body = f"[{ident}]" if magnitude == 1 else f"{magnitude}[{ident}]"
            if index == 0:
                parts.append(body if coef > 0 else f"-{body}")
            else:
                parts.append(f"{sign} {body}")
        return " ".join(parts)


@dataclass(frozen=True, eq=False)
class AdcComplex:
    """
    An augmented directed complex with a chosen basis.

    The positivity submonoid in each degree is the non-negative span of the
    basis. Differentials and augmentations that are not listed are zero.
    """
    name: str
    max_degree: int
    basis: Tuple[Tuple[BasisId, ...], ...]
    differential: Mapping[BasisId, ChainElement]
    augmentation: Mapping[BasisId, int]

    @cached_property
    def _degrees(self) -> Dict[BasisId, int]:
        degrees: Dict[BasisId, int] = {}
        for degree, ids in enumerate(self.basis):
            for ident in ids:
                degrees.setdefault(ident, degree)
        return degrees

    @cached_property
    def all_ids(self) -> Tuple[BasisId, ...]:
        return tuple(ident for ids in self.basis for ident in ids)

    @property
    def size(self) -> int:
        return len(self.all_ids)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AdcComplex):
            return NotImplemented
        return (
            self.name == other.name
            and self.max_degree == other.max_degree
            and tuple(self.basis) == tuple(other.basis)
            and dict(self.differential) == dict(other.differential)
            and dict(self.augmentation) == dict(other.augmentation)
        )

    def __hash__(self) -> int:
        return hash((self.name, self.max_degree, tuple(self.basis)))

    def has(self, ident: BasisId) -> bool:
        return ident in self._degrees

    def degree_of(self, ident: BasisId) -> int:
        try:
            return self._degrees[ident]
        except KeyError:
            raise AdcInputError(f"unknown basis element {ident!r} in {self.name}")

    def basis_in(self, degree: int) -> Tuple[BasisId, ...]:
        if 0 <= degree < len(self.basis):
            return self.basis[degree]
        return ()

    def generator(self, ident: BasisId, coef: int = 1) -> ChainElement:
        return ChainElement.generator(self.degree_of(ident), ident, coef)

    def zero(self, degree: int) -> ChainElement:
        return ChainElement.zero(degree)

    def boundary_of(self, ident: BasisId) -> ChainElement:
        degree = self.degree_of(ident)
        if degree == 0:
            raise AdcInputError(f"{ident!r} has degree 0; use augmentation_of")
        return self.differential.get(ident, ChainElement.zero(degree - 1))

    def augmentation_of(self, ident: BasisId) -> int:
        return int(self.augmentation.get(ident, 0))

    def boundary(self, x: ChainElement) -> ChainElement:
        """Apply d to a chain of degree >= 1."""
        if x.degree < 1:
            raise AdcInputError(f"d is not defined on degree {x.degree} in {self.name}")
        acc: Dict[BasisId, int] = {}
        for ident, coef in x.terms:
            for face, face_coef in self.boundary_of(ident).terms:
                acc[face] = acc.get(face, 0) + coef * face_coef
        return ChainElement.from_dict(x.degree - 1, acc)

    def augment(self, x: ChainElement) -> int:
        """Apply e to a chain of degree 0."""
        if x.degree != 0:
            raise AdcInputError(f"e is only defined in degree 0, got degree {x.degree}")
        return sum(coef * self.augmentation_of(ident) for ident, coef in x.terms)

    def check_chain(self, x: ChainElement, field_path: Optional[str] = None) -> None:
        """Raise AdcInputError unless every term of x lives in the stated degree."""
        if x.degree < 0:
            raise AdcInputError(f"negative degree {x.degree}", field_path)
        if x.degree > self.max_degree and not x.is_zero():
            raise CapExceededError(
                f"non-zero chain of degree {x.degree} above max_degree {self.max_degree}",
                field_path,
            )
        for ident, _ in x.terms:
            if ident not in self._degrees:
                raise AdcInputError(f"unknown basis element {ident!r}", field_path)
            if self._degrees[ident] != x.degree:
                raise AdcInputError(
                    f"{ident!r} has degree {self._degrees[ident]}, expected {x.degree}",
                    field_path,
                )


@dataclass(frozen=True, eq=False)
class AdcMorphism:
    """A morphism of ADCs given by the images of the source basis."""
    source: AdcComplex
    target: AdcComplex
    action: Mapping[BasisId, ChainElement]
    name: str = ""

    shift = 0

    def image(self, ident: BasisId) -> ChainElement:
        found = self.action.get(ident)
        if found is not None:
            return found
        return ChainElement.zero(self.source.degree_of(ident) + self.shift)

    def apply(self, x: ChainElement) -> ChainElement:
        acc: Dict[BasisId, int] = {}
        for ident, coef in x.terms:
            for target_id, target_coef in self.image(ident).terms:
                acc[target_id] = acc.get(target_id, 0) + coef * target_coef
        return ChainElement.from_dict(x.degree + self.shift, acc)

    @cached_property
    def key(self) -> Tuple[Tuple[BasisId, Terms], ...]:
        return tuple((ident, self.image(ident).terms) for ident in self.source.all_ids)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AdcMorphism):
            return NotImplemented
        return (
            self.source.name == other.source.name
            and self.target.name == other.target.name
            and self.key == other.key
        )

    def __hash__(self) -> int:
        return hash((self.source.name, self.target.name, self.key))

    def __repr__(self) -> str:
        label = self.name or "morphism"
        return f"<{label}: {self.source.name} -> {self.target.name}>"


GradedMap = Union[AdcMorphism, "Antihomotopy"]


@dataclass(frozen=True, eq=False)
class Antihomotopy:
    """
    A positive graded map of degree +shift between the endpoints' complexes.

    For shift 1 the endpoints are morphisms f, g; for shift 2 they are
    antihomotopies h, k between morphisms.
    """
    source_map: GradedMap
    target_map: GradedMap
    action: Mapping[BasisId, ChainElement]
    shift: int = 1
    name: str = ""

    @property
    def source(self) -> AdcComplex:
        return self.source_map.source

    @property
    def target(self) -> AdcComplex:
        return self.source_map.target

    def image(self, ident: BasisId) -> ChainElement:
        found = self.action.get(ident)
        if found is not None:
            return found
        return ChainElement.zero(self.source.degree_of(ident) + self.shift)

    def apply(self, x: ChainElement) -> ChainElement:
        acc: Dict[BasisId, int] = {}
        for ident, coef in x.terms:
            for target_id, target_coef in self.image(ident).terms:
                acc[target_id] = acc.get(target_id, 0) + coef * target_coef
        return ChainElement.from_dict(x.degree + self.shift, acc)

    @cached_property
    def key(self) -> Tuple[Tuple[BasisId, Terms], ...]:
        return tuple((ident, self.image(ident).terms) for ident in self.source.all_ids)

    def is_zero(self) -> bool:
        return all(not terms for _, terms in self.key)

    def __repr__(self) -> str:
        label = self.name or "antihomotopy"
        return f"<{label} (shift {self.shift}): {self.source.name} -> {self.target.name}>"


@dataclass(frozen=True)
class RetractStructure:
    """Inclusion i: K -> L, retraction r: L -> K and h: id_L => i r."""
    inclusion: AdcMorphism
    retraction: AdcMorphism
    homotopy: Antihomotopy
    over_base: bool = False
    square_zero: bool = False
    strong: bool = False


@dataclass(frozen=True)
class NuCell:
    """A table (x^e_k) representing a cell of nu(K); rows indexed by k."""
    dimension: int
    sources: Tuple[ChainElement, ...]
    targets: Tuple[ChainElement, ...]

    def row(self, k: int) -> Tuple[ChainElement, ChainElement]:
        return self.sources[k], self.targets[k]

    @property
    def top(self) -> ChainElement:
        return self.sources[self.dimension]

    def sort_key(self) -> Tuple[Any, ...]:
        return tuple((s.terms, t.terms) for s, t in zip(self.sources, self.targets))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "dimension": self.dimension,
            "rows": [
                {"k": k, "source": str(s), "target": str(t)}
                for k, (s, t) in enumerate(zip(self.sources, self.targets))
            ],
        }


@dataclass(frozen=True)
class EnumerationBudget:
    """Coefficient cap of a bounded search and whether it provably exhausted."""
    coeff_cap: int = 3
    complete: bool = False


@dataclass
class Enumeration(Generic[T]):
    """Deterministically ordered search results plus their budget metadata."""
    items: List[T]
    budget: EnumerationBudget

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self) -> Iterator[T]:
        return iter(self.items)

    def __getitem__(self, index: int) -> T:
        return self.items[index]


@dataclass
class Violation:
    """One failed equation together with the element that witnesses it."""
    check: str
    witness: str
    detail: str = ""

    def __str__(self) -> str:
        suffix = f" ({self.detail})" if self.detail else ""
        return f"{self.check} at {self.witness}{suffix}"


@dataclass
class ValidationReport:
    """Outcome of a validation: per-check flags, violations and input errors."""
    subject: str
    violations: List[Violation] = field(default_factory=list)
    input_errors: List[str] = field(default_factory=list)
    checks: Dict[str, bool] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations and not self.input_errors

    def passed(self, check: str) -> None:
        self.checks.setdefault(check, True)

    def fail(self, check: str, witness: str, detail: str = "") -> None:
        self.checks[check] = False
        self.violations.append(Violation(check, witness, detail))

    def input_error(self, message: str) -> None:
        self.input_errors.append(message)

    def failed_checks(self) -> List[str]:
        return sorted(name for name, value in self.checks.items() if not value)

    def witness(self, check: str) -> Optional[Violation]:
        for violation in self.violations:
            if violation.check == check:
                return violation
        return None

    def extend(self, other: "ValidationReport", prefix: str = "") -> None:
        for name, value in other.checks.items():
            key = f"{prefix}{name}"
            self.checks[key] = self.checks.get(key, True) and value
        for violation in other.violations:
            self.violations.append(
                Violation(f"{prefix}{violation.check}", violation.witness, violation.detail)
            )
        self.input_errors.extend(other.input_errors)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "subject": self.subject,
            "ok": self.ok,
            "checks": dict(sorted(self.checks.items())),
            "violations": [
                {"check": v.check, "witness": v.witness, "detail": v.detail}
                for v in self.violations
            ],
            "input_errors": list(self.input_errors),
        }


@dataclass(frozen=True)
class SimplexMap:
    """A weakly increasing map [source_dim] -> [target_dim]."""
    source_dim: int
    target_dim: int
    values: Tuple[int, ...]

    def __post_init__(self) -> None:
        if self.source_dim < -1 or self.target_dim < -1:
            raise AdcInputError(f"invalid simplex dimensions {self.source_dim}, {self.target_dim}")
        if len(self.values) != self.source_dim + 1:
            raise AdcInputError(
                f"expected {self.source_dim + 1} values, got {len(self.values)}"
            )
        for index, value in enumerate(self.values):
            if not 0 <= value <= self.target_dim:
                raise AdcInputError(f"value {value} at {index} outside [0, {self.target_dim}]")
        for left, right in zip(self.values, self.values[1:]):
            if left > right:
                raise AdcInputError(f"simplex map {self.values} is not monotone")

    @classmethod
    def from_values(cls, values: Iterable[int], target_dim: int) -> "SimplexMap":
        vals = tuple(int(v) for v in values)
        return cls(len(vals) - 1, target_dim, vals)

    @classmethod
    def identity(cls, n: int) -> "SimplexMap":
        return cls(n, n, tuple(range(n + 1)))

    @classmethod
    def face(cls, n: int, i: int) -> "SimplexMap":
        """The coface delta_i: [n-1] -> [n] skipping i."""
        if not 0 <= i <= n:
            raise AdcInputError(f"face index {i} out of range for [{n}]")
        return cls(n - 1, n, tuple(j if j < i else j + 1 for j in range(n)))

    @classmethod
    def degeneracy(cls, n: int, i: int) -> "SimplexMap":
        """The codegeneracy sigma_i: [n+1] -> [n] hitting i twice."""
        if not 0 <= i <= n:
            raise AdcInputError(f"degeneracy index {i} out of range for [{n}]")
        return cls(n + 1, n, tuple(j if j <= i else j - 1 for j in range(n + 2)))

    @classmethod
    def constant(cls, m: int, n: int, value: int) -> "SimplexMap":
        return cls(m, n, (value,) * (m + 1))

    @staticmethod
    def all_maps(m: int, n: int) -> List["SimplexMap"]:
        """All monotone maps [m] -> [n] in lexicographic order."""
        return [
            SimplexMap(m, n, combo)
            for combo in itertools.combinations_with_replacement(range(n + 1), m + 1)
        ]

    def __call__(self, i: int) -> int:
        return self.values[i]

    def compose(self, other: "SimplexMap") -> "SimplexMap":
        """self after other."""
        if other.target_dim != self.source_dim:
            raise AdcInputError(
                f"cannot compose [{other.source_dim}]->[{other.target_dim}] "
                f"with [{self.source_dim}]->[{self.target_dim}]"
            )
        return SimplexMap(other.source_dim, self.target_dim, tuple(self.values[v] for v in other.values))

    def dual(self) -> "SimplexMap":
        """D(f)(i) = n - f(m - i)."""
        m, n = self.source_dim, self.target_dim
        return SimplexMap(m, n, tuple(n - self.values[m - i] for i in range(m + 1)))

    def concat(self, other: "SimplexMap") -> "SimplexMap":
        """The join of maps: [m+1+m'] -> [n+1+n']."""
        offset = self.target_dim + 1
        return SimplexMap(
            self.source_dim + 1 + other.source_dim,
            self.target_dim + 1 + other.target_dim,
            self.values + tuple(offset + v for v in other.values),
        )

    def is_injective(self) -> bool:
        return len(set(self.values)) == len(self.values)

    def is_surjective(self) -> bool:
        return set(self.values) == set(range(self.target_dim + 1))

    def missing(self) -> Tuple[int, ...]:
        """Targets not hit, ascending."""
        hit = set(self.values)
        return tuple(j for j in range(self.target_dim + 1) if j not in hit)

    def repeats(self) -> Tuple[int, ...]:
        """Positions t with values[t] == values[t + 1], ascending."""
        return tuple(t for t in range(self.source_dim) if self.values[t] == self.values[t + 1])

    def __str__(self) -> str:
        return "(" + ",".join(str(v) for v in self.values) + f")->[{self.target_dim}]"


def initial_inclusion(m: int, n: int) -> SimplexMap:
    """[m] -> [m+1+n] as the initial segment."""
    return SimplexMap(m, m + 1 + n, tuple(range(m + 1)))


def final_inclusion(m: int, n: int) -> SimplexMap:
    """[n] -> [m+1+n], j -> m+1+j."""
    return SimplexMap(n, m + 1 + n, tuple(m + 1 + j for j in range(n + 1)))


@dataclass
class CommandRequest:
    """A parsed CLI invocation."""
    command: str
    inputs: List[str] = field(default_factory=list)
    trunc: Optional[int] = None
    coeff_cap: Optional[int] = None
    jobs: Optional[int] = None
    output: Optional[str] = None
    pretty: bool = False
    options: Dict[str, Any] = field(default_factory=dict)


@dataclass
class Verdict:
    """Per-check outcomes of one command; exit code 0 iff everything passed."""
    command: str
    checks: Dict[str, bool] = field(default_factory=dict)
    witnesses: Dict[str, str] = field(default_factory=dict)
    metadata: Dict[str, Any] = field(default_factory=dict)
    timing_seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1

    def record(self, check: str, passed: bool, witness: Optional[str] = None) -> None:
        self.checks[check] = self.checks.get(check, True) and bool(passed)
        if not passed and witness and check not in self.witnesses:
            self.witnesses[check] = witness

    def absorb(self, report: ValidationReport, prefix: str = "") -> None:
        if not report.checks and report.ok:
            self.record(f"{prefix}{report.subject}", True)
        for name, value in report.checks.items():
            self.record(f"{prefix}{name}", value)
        for violation in report.violations:
            self.witnesses.setdefault(f"{prefix}{violation.check}", str(violation))
        for message in report.input_errors:
            self.record(f"{prefix}input", False, message)

    def to_dict(self, include_timing: bool = True) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "command": self.command,
            "passed": self.passed,
            "checks": dict(sorted(self.checks.items())),
            "witnesses": dict(sorted(self.witnesses.items())),
            "metadata": self.metadata,
        }
        if include_timing:
            data["timing_seconds"] = round(self.timing_seconds, 6)
        return data
