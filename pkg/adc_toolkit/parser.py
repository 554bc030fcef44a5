"""
Parser for converting JSON files to strongly typed complexes, morphisms and
simplicial sets, and back.

Every dump uses sorted keys, two-space indentation and a trailing newline, so
serializing the same object twice gives the same bytes.
"""

import json
import logging
import re
from typing import Any, Dict, List, Mapping, Optional, Tuple

from adc_toolkit.bisimplicial import HORIZONTAL, VERTICAL, BisimplicialObject
from adc_toolkit.complexes import build_complex
from adc_toolkit.errors import AdcInputError
from adc_toolkit.models import AdcComplex, AdcMorphism, Antihomotopy, BasisId, ChainElement, SimplexMap
from adc_toolkit.monoidal import disk_complex
from adc_toolkit.orientals import oriental_complex
from adc_toolkit.simplicial import SimplicialObject, TruncatedSimplicialSet, tabulate

logger = logging.getLogger(__name__)

_ORIENTAL_NAME = re.compile(r"^c\((?:Δ|delta)(\d+)\)$")
_DISK_NAME = re.compile(r"^D(\d+)$")


def dumps(data: Any) -> str:
    """Canonical JSON text for reports and artifacts."""
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def load_json(path: str) -> Any:
    """
    Read a JSON document.

    Raises:
        AdcInputError: if the file cannot be read or is not valid JSON; the
            message carries the line and column of a syntax error.
    """
    try:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise AdcInputError(f"cannot read file: {exc.strerror}", path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise AdcInputError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}", path)


def _located(exc: AdcInputError, path: str) -> AdcInputError:
    return AdcInputError(f"{exc.detail} (in {path})", exc.field_path)


def write_json(path: str, data: Any) -> None:
    """
    Raises:
        AdcInputError: if the file cannot be written.
    """
    try:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(dumps(data))
    except OSError as exc:
        raise AdcInputError(f"cannot write file: {exc.strerror}", path)
    logger.info(f"wrote {path}")


def _terms(x: ChainElement) -> List[List[Any]]:
    return [[coef, ident] for ident, coef in x.terms]


def _require(data: Mapping[str, Any], key: str, kind: type, path: str) -> Any:
    if key not in data:
        raise AdcInputError("missing field", f"{path}{key}")
    value = data[key]
    if kind is int and isinstance(value, bool) or not isinstance(value, kind):
        raise AdcInputError(f"expected {kind.__name__}, got {type(value).__name__}", f"{path}{key}")
    return value


def _parse_terms(raw: Any, path: str) -> List[Tuple[BasisId, int]]:
    if not isinstance(raw, list):
        raise AdcInputError("expected a list of [coef, id] pairs", path)
    pairs: List[Tuple[BasisId, int]] = []
    for index, item in enumerate(raw):
        item_path = f"{path}[{index}]"
        if not isinstance(item, list) or len(item) != 2:
            raise AdcInputError("expected a [coef, id] pair", item_path)
        coef, ident = item
        if isinstance(coef, bool) or not isinstance(coef, int):
            raise AdcInputError("coefficient must be an integer", f"{item_path}[0]")
        if not isinstance(ident, str):
            raise AdcInputError("basis id must be a string", f"{item_path}[1]")
        pairs.append((ident, coef))
    return pairs


def _check_terms(pairs: List[Tuple[BasisId, int]], degrees: Mapping[BasisId, int], degree: int, path: str) -> None:
    for index, (ident, _) in enumerate(pairs):
        if ident not in degrees:
            raise AdcInputError(f"unknown basis element {ident!r}", f"{path}[{index}][1]")
        if degrees[ident] != degree:
            raise AdcInputError(f"{ident!r} has degree {degrees[ident]}, expected {degree}", f"{path}[{index}][1]")


def serialize_complex(K: AdcComplex) -> Dict[str, Any]:
    return {
        "name": K.name,
        "max_degree": K.max_degree,
        "basis": [list(ids) for ids in K.basis],
        "d": {ident: _terms(chain) for ident, chain in sorted(K.differential.items()) if not chain.is_zero()},
        "e": {ident: K.augmentation_of(ident) for ident in sorted(K.augmentation) if K.augmentation_of(ident)},
    }


def parse_complex(data: Any) -> AdcComplex:
    """
    Parse {"name", "max_degree", "basis", "d", "e"} into an AdcComplex.

    References are checked (every id in d and e exists, in the right degree);
    the algebra is not, so a complex with d∘d ≠ 0 parses and fails later in
    validate_complex.
    """
    if not isinstance(data, dict):
        raise AdcInputError("expected a JSON object", "$")
    name = _require(data, "name", str, "")
    basis_raw = _require(data, "basis", list, "")
    basis: List[List[BasisId]] = []
    degrees: Dict[BasisId, int] = {}
    for degree, ids in enumerate(basis_raw):
        if not isinstance(ids, list):
            raise AdcInputError("expected a list of ids", f"basis[{degree}]")
        for index, ident in enumerate(ids):
            if not isinstance(ident, str):
                raise AdcInputError("basis id must be a string", f"basis[{degree}][{index}]")
            degrees.setdefault(ident, degree)
        basis.append(list(ids))
    max_degree = data.get("max_degree", max(len(basis) - 1, 0))
    if isinstance(max_degree, bool) or not isinstance(max_degree, int):
        raise AdcInputError("expected int", "max_degree")
    if max_degree < len(basis) - 1:
        raise AdcInputError(f"basis has {len(basis)} degrees but max_degree is {max_degree}", "max_degree")

    differential: Dict[BasisId, Dict[BasisId, int]] = {}
    d_raw = data.get("d", {})
    if not isinstance(d_raw, dict):
        raise AdcInputError("expected an object", "d")
    for ident, raw in d_raw.items():
        path = f"d[{json.dumps(ident, ensure_ascii=False)}]"
        if ident not in degrees:
            raise AdcInputError(f"differential given for unknown element {ident!r}", path)
        if degrees[ident] == 0:
            raise AdcInputError("differential given in degree 0", path)
        pairs = _parse_terms(raw, path)
        _check_terms(pairs, degrees, degrees[ident] - 1, path)
        acc: Dict[BasisId, int] = {}
        for face, coef in pairs:
            acc[face] = acc.get(face, 0) + coef
        differential[ident] = acc

    e_raw = data.get("e", {})
    if not isinstance(e_raw, dict):
        raise AdcInputError("expected an object", "e")
    augmentation: Dict[BasisId, int] = {}
    for ident, value in e_raw.items():
        path = f"e[{json.dumps(ident, ensure_ascii=False)}]"
        if ident not in degrees:
            raise AdcInputError(f"unknown basis element {ident!r}", path)
        if degrees[ident] != 0:
            raise AdcInputError(f"augmentation given in degree {degrees[ident]}", path)
        if isinstance(value, bool) or not isinstance(value, int):
            raise AdcInputError("augmentation must be an integer", path)
        augmentation[ident] = value
    return build_complex(name, basis, differential, augmentation, max_degree)


def parse_adc_file(path: str) -> AdcComplex:
    """Load and parse an ADC file; field paths in errors are prefixed with the file name."""
    data = load_json(path)
    try:
        K = parse_complex(data)
    except AdcInputError as exc:
        raise _located(exc, path) from exc
    logger.info(f"parsed {K.name} from {path}: {K.size} basis elements")
    return K


def builtin_complex(name: str) -> Optional[AdcComplex]:
    """c(Δn) and Dn are known by name and need no file."""
    found = _ORIENTAL_NAME.match(name)
    if found:
        return oriental_complex(int(found.group(1)))
    found = _DISK_NAME.match(name)
    if found:
        return disk_complex(int(found.group(1)))
    return None


def resolve_complex(name: str, known: Mapping[str, AdcComplex], path: str) -> AdcComplex:
    if name in known:
        return known[name]
    found = builtin_complex(name)
    if found is None:
        raise AdcInputError(f"complex {name!r} is neither loaded nor built in", path)
    return found


def _action(f: Any) -> Dict[str, List[List[Any]]]:
    return {ident: _terms(f.image(ident)) for ident in f.source.all_ids if not f.image(ident).is_zero()}


def serialize_morphism(f: AdcMorphism) -> Dict[str, Any]:
    return {"name": f.name, "source": f.source.name, "target": f.target.name, "action": _action(f)}


def serialize_antihomotopy(h: Antihomotopy) -> Dict[str, Any]:
    return {
        "name": h.name,
        "source": h.source.name,
        "target": h.target.name,
        "shift": h.shift,
        "from": h.source_map.name,
        "to": h.target_map.name,
        "action": _action(h),
    }


def parse_morphism(data: Any, known: Mapping[str, AdcComplex]) -> AdcMorphism:
    """
    Parse {"source", "target", "action"}; source and target are complex names
    resolved against `known` and the built-in orientals and disks.
    """
    if not isinstance(data, dict):
        raise AdcInputError("expected a JSON object", "$")
    source = resolve_complex(_require(data, "source", str, ""), known, "source")
    target = resolve_complex(_require(data, "target", str, ""), known, "target")
    action_raw = _require(data, "action", dict, "")
    target_degrees = {ident: target.degree_of(ident) for ident in target.all_ids}
    action: Dict[BasisId, ChainElement] = {}
    for ident, raw in action_raw.items():
        path = f"action[{json.dumps(ident, ensure_ascii=False)}]"
        if not source.has(ident):
            raise AdcInputError(f"unknown basis element {ident!r} of {source.name}", path)
        degree = source.degree_of(ident)
        pairs = _parse_terms(raw, path)
        _check_terms(pairs, target_degrees, degree, path)
        action[ident] = ChainElement.of(degree, pairs)
    name = data.get("name", "")
    return AdcMorphism(source, target, action, name=name if isinstance(name, str) else "")


def parse_morphism_file(path: str, known: Mapping[str, AdcComplex]) -> AdcMorphism:
    data = load_json(path)
    try:
        return parse_morphism(data, known)
    except AdcInputError as exc:
        raise _located(exc, path) from exc


def serialize_simplicial_set(X: SimplicialObject) -> Dict[str, Any]:
    """{"name", "cap", "levels", "faces", "degeneracies"} with faces[n][i][label]."""
    table = X if isinstance(X, TruncatedSimplicialSet) else tabulate(X)
    faces: Dict[str, Dict[str, Dict[str, str]]] = {}
    for (n, i, x), y in table.faces.items():
        faces.setdefault(str(n), {}).setdefault(str(i), {})[x] = y
    degeneracies: Dict[str, Dict[str, Dict[str, str]]] = {}
    for (n, i, x), y in table.degeneracies.items():
        degeneracies.setdefault(str(n), {}).setdefault(str(i), {})[x] = y
    return {
        "name": table.name,
        "cap": table.cap,
        "levels": [list(level) for level in table.levels],
        "faces": faces,
        "degeneracies": degeneracies,
    }


def _parse_operator_table(
    raw: Any,
    kind: str,
    levels: List[List[str]],
    offset: int,
) -> Dict[Tuple[int, int, str], str]:
    if not isinstance(raw, dict):
        raise AdcInputError("expected an object", kind)
    members = [set(level) for level in levels]
    table: Dict[Tuple[int, int, str], str] = {}
    for n_key, by_index in raw.items():
        path = f"{kind}[{n_key!r}]"
        if not n_key.isdigit() or not isinstance(by_index, dict):
            raise AdcInputError("expected a level index mapping to an object", path)
        n = int(n_key)
        if n >= len(levels) or not 0 <= n + offset < len(levels):
            raise AdcInputError(f"level {n} outside the table", path)
        for i_key, assignments in by_index.items():
            i_path = f"{path}[{i_key!r}]"
            if not i_key.isdigit() or int(i_key) > n or not isinstance(assignments, dict):
                raise AdcInputError("expected an operator index mapping to an object", i_path)
            for x, y in assignments.items():
                if x not in members[n]:
                    raise AdcInputError(f"unknown {n}-simplex {x!r}", f"{i_path}[{x!r}]")
                if not isinstance(y, str) or y not in members[n + offset]:
                    raise AdcInputError(f"unknown {n + offset}-simplex {y!r}", f"{i_path}[{x!r}]")
                table[(n, int(i_key), x)] = y
    return table


def parse_simplicial_set(data: Any) -> TruncatedSimplicialSet:
    if not isinstance(data, dict):
        raise AdcInputError("expected a JSON object", "$")
    levels_raw = _require(data, "levels", list, "")
    levels: List[List[str]] = []
    for n, level in enumerate(levels_raw):
        if not isinstance(level, list) or not all(isinstance(x, str) for x in level):
            raise AdcInputError("expected a list of string labels", f"levels[{n}]")
        levels.append(list(level))
    if not levels:
        raise AdcInputError("at least level 0 is required", "levels")
    cap = data.get("cap", len(levels) - 1)
    if cap != len(levels) - 1:
        raise AdcInputError(f"cap {cap} does not match {len(levels)} levels", "cap")
    faces = _parse_operator_table(data.get("faces", {}), "faces", levels, -1)
    degeneracies = _parse_operator_table(data.get("degeneracies", {}), "degeneracies", levels, 1)
    name = data.get("name", "X")
    return TruncatedSimplicialSet(levels, faces, degeneracies, name=name if isinstance(name, str) else "X")


def parse_simplicial_file(path: str) -> TruncatedSimplicialSet:
    data = load_json(path)
    try:
        return parse_simplicial_set(data)
    except AdcInputError as exc:
        raise _located(exc, path) from exc


def serialize_bisimplicial(B: BisimplicialObject) -> Dict[str, Any]:
    """Labels "m,n:k" per bidegree plus one face table per direction."""
    labels: Dict[Tuple[int, int, Any], str] = {}
    levels: Dict[str, List[str]] = {}
    for m in range(B.caps[0] + 1):
        for n in range(B.caps[1] + 1):
            names = []
            for k, x in enumerate(B.simplices(m, n)):
                labels[(m, n, x)] = f"{m},{n}:{k}"
                names.append(labels[(m, n, x)])
            levels[f"{m},{n}"] = names
    tables: Dict[str, Dict[str, Dict[str, str]]] = {"horizontal": {}, "vertical": {}}
    for m in range(B.caps[0] + 1):
        for n in range(B.caps[1] + 1):
            for x in B.simplices(m, n):
                label = labels[(m, n, x)]
                for direction, key, level in ((HORIZONTAL, "horizontal", m), (VERTICAL, "vertical", n)):
                    if level == 0:
                        continue
                    for i in range(level + 1):
                        y = B.act(direction, SimplexMap.face(level, i), x)
                        mm, nn = (m - 1, n) if direction == HORIZONTAL else (m, n - 1)
                        tables[key].setdefault(label, {})[str(i)] = labels[(mm, nn, y)]
    return {"name": B.name, "caps": list(B.caps), "levels": levels, **tables}
