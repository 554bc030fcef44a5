"""
Integral homology of truncated simplicial sets.

Chains are normalized: one generator per non-degenerate simplex, degenerate
faces dropped. Boundary matrices are first reduced by sparse elimination on
unit pivots; what is left goes to sympy's Smith normal form.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import invariant_factors

from adc_toolkit.errors import CapExceededError
from adc_toolkit.simplicial import Simplex, SimplicialObject

logger = logging.getLogger(__name__)

SparseRows = Dict[int, Dict[int, int]]


@dataclass(frozen=True)
class HomologyGroup:
    """Z^rank ⊕ ⨁ Z/t for t in torsion."""
    degree: int
    rank: int
    torsion: Tuple[int, ...] = ()

    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = ["Z" if self.rank == 1 else f"Z^{self.rank}"] if self.rank else []
        parts += [f"Z/{t}" for t in self.torsion]
        return " ⊕ ".join(parts) or "0"

    def to_dict(self) -> Dict[str, object]:
        return {"degree": self.degree, "rank": self.rank, "torsion": list(self.torsion)}


@dataclass
class _Reduction:
    rank: int = 0
    torsion: List[int] = field(default_factory=list)


def _eliminate_units(rows: SparseRows) -> Tuple[int, SparseRows]:
    """Remove ±1 pivots one at a time; the Smith invariants are unchanged."""
    columns: Dict[int, set] = {}
    for r, row in rows.items():
        for c in row:
            columns.setdefault(c, set()).add(r)
    pivots = 0
    progress = True
    while progress:
        progress = False
        for r in list(rows):
            row = rows.get(r)
            if row is None:
                continue
            pivot_col = next((c for c, v in row.items() if abs(v) == 1), None)
            if pivot_col is None:
                continue
            unit = row[pivot_col]
            del rows[r]
            for c in row:
                columns[c].discard(r)
            for other in list(columns.get(pivot_col, ())):
                target = rows[other]
                factor = target[pivot_col] * unit
                for c, v in row.items():
                    updated = target.get(c, 0) - factor * v
                    if updated:
                        if c not in target:
                            columns.setdefault(c, set()).add(other)
                        target[c] = updated
                    elif c in target:
                        del target[c]
                        columns[c].discard(other)
                if not target:
                    del rows[other]
            columns.pop(pivot_col, None)
            pivots += 1
            progress = True
    return pivots, rows


def _smith(rows: SparseRows) -> _Reduction:
    pivots, rest = _eliminate_units({r: dict(row) for r, row in rows.items() if row})
    result = _Reduction(rank=pivots)
    if not rest:
        return result
    row_ids = sorted(rest)
    col_ids = sorted({c for row in rest.values() for c in row})
    index = {c: i for i, c in enumerate(col_ids)}
    dense = [[ZZ(0)] * len(col_ids) for _ in row_ids]
    for i, r in enumerate(row_ids):
        for c, v in rest[r].items():
            dense[i][index[c]] = ZZ(v)
    logger.debug(f"Smith normal form on a residual {len(row_ids)}x{len(col_ids)} block")
    for factor in invariant_factors(DomainMatrix(dense, (len(row_ids), len(col_ids)), ZZ)):
        value = abs(int(factor))
        if value:
            result.rank += 1
            if value > 1:
                result.torsion.append(value)
    return result


def _boundary_rows(X: SimplicialObject, n: int, cells: Dict[int, Dict[Simplex, int]]) -> SparseRows:
    """∂_n as rows indexed by n-cells, columns by (n-1)-cells."""
    rows: SparseRows = {}
    for x, r in cells[n].items():
        row: Dict[int, int] = {}
        for i in range(n + 1):
            face = X.face(n, i, x)
            c = cells[n - 1].get(face)
            if c is None:
                continue
            row[c] = row.get(c, 0) + (-1 if i % 2 else 1)
        rows[r] = {c: v for c, v in row.items() if v}
    return rows


def homology(X: SimplicialObject, up_to: Optional[int] = None, reduced: bool = False) -> List[HomologyGroup]:
    """
    H_0 .. H_up_to of the normalized chains of X.

    Only degrees below the truncation are meaningful, since H_k needs the
    (k+1)-simplices.

    Raises:
        CapExceededError: if up_to is not below the truncation of X.
    """
    top = X.cap - 1 if up_to is None else up_to
    if top > X.cap - 1 or top < 0:
        raise CapExceededError(f"homology of {X.name} is valid in degrees 0..{X.cap - 1}, asked for {top}")
    cells: Dict[int, Dict[Simplex, int]] = {}
    for n in range(top + 2):
        cells[n] = {x: i for i, x in enumerate(X.nondegenerate(n))}
    ranks: Dict[int, _Reduction] = {0: _Reduction()}
    for n in range(1, top + 2):
        ranks[n] = _smith(_boundary_rows(X, n, cells))
    groups: List[HomologyGroup] = []
    for k in range(top + 1):
        rank = len(cells[k]) - ranks[k].rank - ranks[k + 1].rank
        if reduced and k == 0 and cells[0]:
            rank -= 1
        groups.append(HomologyGroup(k, rank, tuple(sorted(ranks[k + 1].torsion))))
    logger.info(f"homology of {X.name}: {', '.join(str(g) for g in groups)}")
    return groups


def reduced_homology_vanishes(X: SimplicialObject, up_to: Optional[int] = None) -> Tuple[bool, List[HomologyGroup]]:
    groups = homology(X, up_to, reduced=True)
    return all(g.is_trivial() for g in groups), groups
