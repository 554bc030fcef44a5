"""
Command-line front end.

Every command builds or loads its objects, runs the relevant checks and
prints a Verdict as JSON on stdout (text with --pretty). Artifacts go to
--output. Exit codes: 0 all checks pass, 1 a check failed, 2 bad input.
"""

import argparse
import logging
import re
import sys
import time
from typing import Any, Callable, Dict, List, NoReturn, Optional, Sequence, Tuple

from adc_toolkit.acceptance import CRITERIA, run_acceptance
from adc_toolkit.aw_uniqueness import aw_uniqueness_oracle
from adc_toolkit.bisimplicial import comma_bisimplicial
from adc_toolkit.complexes import atom, classify_basis, validate_complex
from adc_toolkit.config import LimitsConfig, get_limits_config
from adc_toolkit.enumeration import enumerate_cells, enumerate_morphisms, nerve
from adc_toolkit.errors import AdcError, AdcInputError, InternalConsistencyError
from adc_toolkit.homology import homology
from adc_toolkit.models import AdcComplex, CommandRequest, EnumerationBudget, SimplexMap, Verdict
from adc_toolkit.monoidal import disk_complex, join_complex, pushout_along_rigid_inclusion, tensor_complex
from adc_toolkit.morphisms import validate_morphism, validate_retract_structure
from adc_toolkit.orientals import SIDES, aw_diagonal, check_aw_coalgebra, g_phi, oriental_complex, vertex_retraction
from adc_toolkit.parser import (
    builtin_complex,
    dumps,
    parse_adc_file,
    parse_morphism_file,
    parse_simplicial_file,
    serialize_antihomotopy,
    serialize_bisimplicial,
    serialize_complex,
    serialize_morphism,
    serialize_simplicial_set,
    write_json,
)
from adc_toolkit.simplicial import (
    Simplex,
    SimplicialObject,
    StandardSimplex,
    boundary_simplex,
    identity_map,
    std_simplex,
)
from adc_toolkit.slice_transfer import slice_sdr_suite
from adc_toolkit.slices import check_fiber_decomposition, slice_over, slice_under

logger = logging.getLogger(__name__)

DEFAULT_TRUNC = 3

_SIMPLEX_NAME = re.compile(r"^(Δ|delta)(\d+)$")
_BOUNDARY_NAME = re.compile(r"^(∂Δ|boundary)(\d+)$")

Handler = Callable[[CommandRequest, LimitsConfig], Tuple[Verdict, Any]]


class _ArgumentParser(argparse.ArgumentParser):
    """Usage errors become AdcInputError so main() maps them to exit code 2."""

    def error(self, message: str) -> NoReturn:
        raise AdcInputError(message, "argv")


def _budget(req: CommandRequest, config: LimitsConfig) -> EnumerationBudget:
    cap = config.coeff_cap if req.coeff_cap is None else req.coeff_cap
    if cap < 1:
        raise AdcInputError(f"coefficient cap must be >= 1, got {cap}", "--coeff-cap")
    return EnumerationBudget(cap)


def _trunc(req: CommandRequest, config: LimitsConfig) -> int:
    trunc = min(DEFAULT_TRUNC, config.trunc_cap) if req.trunc is None else req.trunc
    if trunc < 0 or trunc > config.trunc_cap:
        raise AdcInputError(f"truncation must be in 0..{config.trunc_cap}, got {trunc}", "--trunc")
    return trunc


def _jobs(req: CommandRequest, config: LimitsConfig) -> int:
    jobs = config.jobs if req.jobs is None else req.jobs
    if jobs < 1:
        raise AdcInputError(f"jobs must be >= 1, got {jobs}", "--jobs")
    return jobs


def _complex_arg(text: str) -> AdcComplex:
    """A complex file, or a built-in name such as c(Δ2) or D1."""
    return builtin_complex(text) or parse_adc_file(text)


def _simplicial_arg(text: str, cap: int) -> SimplicialObject:
    found = _SIMPLEX_NAME.match(text)
    if found:
        return std_simplex(int(found.group(2)), cap)
    found = _BOUNDARY_NAME.match(text)
    if found:
        return boundary_simplex(int(found.group(2)), cap)
    return parse_simplicial_file(text)


def _simplex_arg(X: SimplicialObject, level: int, text: str) -> Simplex:
    if isinstance(X, StandardSimplex):
        try:
            values = tuple(int(v) for v in text.split(","))
        except ValueError:
            raise AdcInputError(f"expected comma-separated vertices, got {text!r}", "simplex")
        z: Simplex = SimplexMap(level, X.m, values)
    else:
        z = text
    if not X.contains(level, z):
        raise AdcInputError(f"{text!r} is not a {level}-simplex of {X.name}", "simplex")
    return z


def _phi_arg(text: str, n: int) -> SimplexMap:
    try:
        values = tuple(int(v) for v in text.replace(",", ""))
    except ValueError:
        raise AdcInputError(f"expected a word in 0 and 1 such as 001, got {text!r}", "phi")
    if len(values) != n + 1:
        raise AdcInputError(f"φ needs {n + 1} values, got {len(values)}", "phi")
    return SimplexMap(n, 1, values)


def cmd_validate(req: CommandRequest, config: LimitsConfig) -> Tuple[Verdict, Any]:
    verdict = Verdict("validate")
    source, target = req.options.get("source"), req.options.get("target")
    if source or target:
        if not (source and target):
            raise AdcInputError("a morphism needs both --source and --target", "--source")
        K, L = _complex_arg(source), _complex_arg(target)
        f = parse_morphism_file(req.inputs[0], {K.name: K, L.name: L})
        verdict.absorb(validate_morphism(f))
        verdict.metadata = {"morphism": f"{f.source.name} -> {f.target.name}"}
        return verdict, serialize_morphism(f)
    K = _complex_arg(req.inputs[0])
    verdict.absorb(validate_complex(K))
    verdict.metadata = {"complex": K.name, "basis_size": K.size}
    return verdict, serialize_complex(K)


def cmd_classify(req: CommandRequest, config: LimitsConfig) -> Tuple[Verdict, Any]:
    K = _complex_arg(req.inputs[0])
    verdict = Verdict("classify")
    verdict.absorb(validate_complex(K), prefix="valid.")
    found = classify_basis(K)
    verdict.record("unital", found.unital, ", ".join(found.non_unital_atoms) or None)
    verdict.record("strongly_loop_free", found.strongly_loop_free, " <= ".join(found.loop) or None)
    verdict.record("steiner_strong", found.steiner_strong)
    verdict.metadata = {"complex": K.name}
    return verdict, None


def _product(kind: str) -> Handler:
    def handler(req: CommandRequest, config: LimitsConfig) -> Tuple[Verdict, Any]:
        K, L = _complex_arg(req.inputs[0]), _complex_arg(req.inputs[1])
        P: AdcComplex = tensor_complex(K, L) if kind == "tensor" else join_complex(K, L)
        verdict = Verdict(kind)
        verdict.absorb(validate_complex(P))
        verdict.record("steiner_strong", classify_basis(P).steiner_strong)
        verdict.metadata = {"complex": P.name, "basis_size": P.size}
        return verdict, serialize_complex(P)

    return handler


def cmd_disk(req: CommandRequest, config: LimitsConfig) -> Tuple[Verdict, Any]:
    D = disk_complex(req.options["dimension"])
    verdict = Verdict("disk")
    verdict.absorb(validate_complex(D))
    verdict.metadata = {"complex": D.name, "basis_size": D.size}
    return verdict, serialize_complex(D)


def cmd_oriental(req: CommandRequest, config: LimitsConfig) -> Tuple[Verdict, Any]:
    C = oriental_complex(req.options["dimension"])
    verdict = Verdict("oriental")
    verdict.absorb(validate_complex(C))
    verdict.record("steiner_strong", classify_basis(C).steiner_strong)
    verdict.metadata = {"complex": C.name, "basis_size": C.size}
    return verdict, serialize_complex(C)


def cmd_aw(req: CommandRequest, config: LimitsConfig) -> Tuple[Verdict, Any]:
    n, side = req.options["dimension"], req.options["side"]
    nabla = aw_diagonal(n, side)
    verdict = Verdict("aw")
    if req.options.get("check"):
        verdict.absorb(check_aw_coalgebra(n, side))
    else:
        verdict.absorb(validate_morphism(nabla))
    verdict.metadata = {"side": side, "n": n}
    return verdict, serialize_morphism(nabla)


def cmd_gphi(req: CommandRequest, config: LimitsConfig) -> Tuple[Verdict, Any]:
    n, side = req.options["dimension"], req.options["side"]
    phi = _phi_arg(req.options["phi"], n)
    verdict = Verdict("gphi")
    try:
        g = g_phi(phi, side)
    except InternalConsistencyError as exc:
        verdict.record("table_matches_composite", False, str(exc))
        verdict.metadata = {"side": side, "phi": list(phi.values)}
        return verdict, None
    verdict.record("table_matches_composite", True)
    verdict.absorb(validate_morphism(g))
    verdict.metadata = {"side": side, "phi": list(phi.values)}
    return verdict, serialize_morphism(g)


def cmd_retraction(req: CommandRequest, config: LimitsConfig) -> Tuple[Verdict, Any]:
    structure = vertex_retraction(req.options["dimension"])
    verdict = Verdict("retraction")
    verdict.absorb(validate_retract_structure(structure))
    artifact = {
        "inclusion": serialize_morphism(structure.inclusion),
        "retraction": serialize_morphism(structure.retraction),
        "homotopy": serialize_antihomotopy(structure.homotopy),
    }
    return verdict, artifact


def cmd_atom(req: CommandRequest, config: LimitsConfig) -> Tuple[Verdict, Any]:
    K = _complex_arg(req.inputs[0])
    found = atom(K, req.options["element"])
    verdict = Verdict("atom")
    verdict.record("unital", found.unital, found.element)
    verdict.metadata = {"complex": K.name, "atom": found.cell.to_dict()}
    return verdict, None


def cmd_pushout(req: CommandRequest, config: LimitsConfig) -> Tuple[Verdict, Any]:
    known = {K.name: K for K in (_complex_arg(path) for path in req.options.get("complex") or [])}
    g_prime = parse_morphism_file(req.inputs[0], known)
    u = parse_morphism_file(req.inputs[1], known)
    po = pushout_along_rigid_inclusion(g_prime, u)
    verdict = Verdict("pushout")
    verdict.absorb(validate_complex(po.complex), prefix="complex.")
    verdict.absorb(validate_morphism(po.left_leg), prefix="j_L.")
    verdict.absorb(validate_morphism(po.right_leg), prefix="j_M.")
    verdict.metadata = {"complex": po.complex.name, "basis_size": po.complex.size}
    return verdict, serialize_complex(po.complex)


def cmd_cells(req: CommandRequest, config: LimitsConfig) -> Tuple[Verdict, Any]:
    K = _complex_arg(req.inputs[0])
    found = enumerate_cells(K, req.options["dimension"], _budget(req, config))
    verdict = Verdict("cells")
    verdict.record("complete", found.budget.complete, f"coefficient cap {found.budget.coeff_cap}")
    verdict.metadata = {
        "complex": K.name,
        "count": len(found),
        "coeff_cap": found.budget.coeff_cap,
        "complete": found.budget.complete,
    }
    return verdict, [cell.to_dict() for cell in found]


def cmd_hom(req: CommandRequest, config: LimitsConfig) -> Tuple[Verdict, Any]:
    K, L = _complex_arg(req.inputs[0]), _complex_arg(req.inputs[1])
    found = enumerate_morphisms(K, L, _budget(req, config), jobs=_jobs(req, config))
    verdict = Verdict("hom")
    verdict.record("complete", found.budget.complete, f"coefficient cap {found.budget.coeff_cap}")
    verdict.metadata = {
        "source": K.name,
        "target": L.name,
        "count": len(found),
        "coeff_cap": found.budget.coeff_cap,
        "complete": found.budget.complete,
    }
    return verdict, [serialize_morphism(f) for f in found]


def cmd_nerve(req: CommandRequest, config: LimitsConfig) -> Tuple[Verdict, Any]:
    K = _complex_arg(req.inputs[0])
    X = nerve(K, _trunc(req, config), _budget(req, config), _jobs(req, config))
    verdict = Verdict("nerve")
    verdict.absorb(X.audit())
    verdict.metadata = {"counts": X.counts(), "complete": X.complete, "coeff_cap": X.budget.coeff_cap}
    return verdict, serialize_simplicial_set(X)


def cmd_comma(req: CommandRequest, config: LimitsConfig) -> Tuple[Verdict, Any]:
    Z = _simplicial_arg(req.inputs[0], _trunc(req, config))
    top = Z.cap - 1
    caps = (top // 2, top - top // 2)
    if top < 0:
        raise AdcInputError(f"{Z.name} is truncated too low for a comma", "--trunc")
    B = comma_bisimplicial(identity_map(Z), identity_map(Z), caps)
    verdict = Verdict("comma")
    verdict.absorb(B.audit(), prefix="audit.")
    for m in range(caps[0] + 1):
        verdict.absorb(check_fiber_decomposition(identity_map(Z), m, Z.cap - m - 1), prefix=f"fiber{m}.")
    verdict.metadata = {"caps": list(caps), "base": Z.name}
    return verdict, serialize_bisimplicial(B)


def cmd_slice(req: CommandRequest, config: LimitsConfig) -> Tuple[Verdict, Any]:
    Z = _simplicial_arg(req.inputs[0], _trunc(req, config))
    level = req.options["level"]
    z = _simplex_arg(Z, level, req.options["simplex"])
    g = identity_map(Z)
    S = slice_over(g, z, level) if req.options.get("over") else slice_under(g, z, level)
    verdict = Verdict("slice")
    verdict.absorb(S.audit())
    verdict.metadata = {"slice": S.name, "counts": S.counts()}
    return verdict, serialize_simplicial_set(S)


def cmd_homology(req: CommandRequest, config: LimitsConfig) -> Tuple[Verdict, Any]:
    trunc = _trunc(req, config)
    if req.options.get("nerve"):
        X: SimplicialObject = nerve(_complex_arg(req.inputs[0]), trunc, _budget(req, config), _jobs(req, config))
    else:
        X = _simplicial_arg(req.inputs[0], trunc)
    reduced = bool(req.options.get("reduced"))
    groups = homology(X, reduced=reduced)
    verdict = Verdict("homology")
    verdict.absorb(X.audit(), prefix="audit.")
    if req.options.get("expect_acyclic"):
        nontrivial = [str(g.degree) for g in groups if not g.is_trivial()]
        verdict.record("acyclic", not nontrivial, ", ".join(nontrivial) or None)
    verdict.metadata = {"space": X.name, "reduced": reduced, "groups": [g.to_dict() for g in groups]}
    return verdict, None


def cmd_sdr_demo(req: CommandRequest, config: LimitsConfig) -> Tuple[Verdict, Any]:
    m = req.options["m"]
    trunc = req.options["n"]
    if trunc < 0 or trunc > config.trunc_cap:
        raise AdcInputError(f"truncation must be in 0..{config.trunc_cap}, got {trunc}", "n")
    L = _complex_arg(req.options["target"])
    base = oriental_complex(m)
    anchor = parse_morphism_file(req.options["anchor"], {L.name: L, base.name: base})
    suite = slice_sdr_suite(m, trunc, L, anchor, _budget(req, config), _jobs(req, config))
    summary = suite.to_dict()
    verdict = Verdict("sdr-demo")
    for check in ("r_section", "homotopy", "strong", "over_base"):
        verdict.record(check, bool(summary[check]))
    verdict.absorb(suite.report, prefix="detail.")
    verdict.metadata = {"counts": summary["counts"], "complete": summary["complete"]}
    return verdict, None


def cmd_aw_uniq(req: CommandRequest, config: LimitsConfig) -> Tuple[Verdict, Any]:
    result = aw_uniqueness_oracle(req.options["level"])
    verdict = Verdict("aw-uniq")
    verdict.absorb(result.report)
    data = result.to_dict()
    verdict.metadata = {
        "families_per_level": data["families_per_level"],
        "level_one_candidates": data["level_one_candidates"],
    }
    return verdict, None


def cmd_acceptance(req: CommandRequest, config: LimitsConfig) -> Tuple[Verdict, Any]:
    return run_acceptance(req.options.get("criteria"), _budget(req, config), _jobs(req, config)), None


COMMANDS: Dict[str, Handler] = {
    "validate": cmd_validate,
    "classify": cmd_classify,
    "tensor": _product("tensor"),
    "join": _product("join"),
    "disk": cmd_disk,
    "oriental": cmd_oriental,
    "aw": cmd_aw,
    "gphi": cmd_gphi,
    "retraction": cmd_retraction,
    "atom": cmd_atom,
    "pushout": cmd_pushout,
    "cells": cmd_cells,
    "hom": cmd_hom,
    "nerve": cmd_nerve,
    "comma": cmd_comma,
    "slice": cmd_slice,
    "homology": cmd_homology,
    "sdr-demo": cmd_sdr_demo,
    "aw-uniq": cmd_aw_uniq,
    "acceptance": cmd_acceptance,
}


def build_parser() -> argparse.ArgumentParser:
    common = _ArgumentParser(add_help=False)
    common.add_argument("--output", "-o", help="write the artifact (complex, morphisms, simplicial set) here")
    common.add_argument("--pretty", action="store_true", help="human-readable verdict instead of JSON")
    common.add_argument("--trunc", type=int, help="simplicial truncation level")
    common.add_argument("--coeff-cap", type=int, help="enumeration coefficient cap")
    common.add_argument("--jobs", type=int, help="worker processes for enumeration")
    common.add_argument("-v", "--verbose", action="count", default=0, help="INFO, or DEBUG when repeated")
    common.add_argument("-q", "--quiet", action="store_true", help="only log errors")

    parser = _ArgumentParser(prog="adc-toolkit", description="Augmented directed complexes: constructions and checks.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_ArgumentParser)
    sub.required = True

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        return sub.add_parser(name, parents=[common], help=help_text)

    p = add("validate", "validate a complex, or a morphism with --source/--target")
    p.add_argument("file")
    p.add_argument("--source")
    p.add_argument("--target")
    add("classify", "unital / strongly loop-free / Steiner-strong").add_argument("file")
    for name in ("tensor", "join"):
        p = add(name, f"{name} product of two complexes")
        p.add_argument("left")
        p.add_argument("right")
    add("disk", "the disk complex D_i").add_argument("dimension", type=int)
    add("oriental", "the oriental c(Δn)").add_argument("dimension", type=int)
    p = add("aw", "the Alexander-Whitney diagonal on c(Δn)")
    p.add_argument("dimension", type=int)
    p.add_argument("--check", action="store_true", help="chain map, coassociativity, counit, naturality")
    p.add_argument("--side", choices=SIDES, default="oplax")
    p = add("gphi", "g_φ: c(Δn) → c(Δ1) ⊗ c(Δn) for φ given as a 0/1 word")
    p.add_argument("dimension", type=int)
    p.add_argument("phi")
    p.add_argument("--side", choices=SIDES, default="oplax")
    add("retraction", "the vertex retraction (m, r′, h′) of c(Δm)").add_argument("dimension", type=int)
    p = add("atom", "the atom of a basis element")
    p.add_argument("file")
    p.add_argument("element")
    p = add("pushout", "pushout along a rigid ordered inclusion")
    p.add_argument("inclusion", help="morphism file for g′")
    p.add_argument("along", help="morphism file for u")
    p.add_argument("--complex", action="append", help="complex file referenced by the morphisms")
    p = add("cells", "cells of ν(K) of one dimension")
    p.add_argument("file")
    p.add_argument("dimension", type=int)
    p = add("hom", "morphisms K → L")
    p.add_argument("source")
    p.add_argument("target")
    add("nerve", "truncated Street nerve of ν(K)").add_argument("file")
    add("comma", "the comma Z↓Z of a simplicial set, audited").add_argument("space")
    p = add("slice", "the slice of a simplicial set under (or over) a simplex")
    p.add_argument("space", help="simplicial set file, Δn or ∂Δn")
    p.add_argument("simplex", help="simplex label, or vertices like 0,2 for Δn")
    p.add_argument("--level", type=int, default=0)
    p.add_argument("--over", action="store_true")
    p = add("homology", "integral homology within the truncation")
    p.add_argument("space", help="simplicial set file, Δn or ∂Δn, or a complex with --nerve")
    p.add_argument("--nerve", action="store_true")
    p.add_argument("--reduced", action="store_true")
    p.add_argument("--expect-acyclic", action="store_true")
    p = add("sdr-demo", "slice deformation retract for an anchor c(Δm) → L")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int, help="truncation of the slices")
    p.add_argument("--target", required=True)
    p.add_argument("--anchor", required=True)
    p = add("aw-uniq", "uniqueness oracle for the g_φ family")
    p.add_argument("--level", type=int, default=2)
    p = add("acceptance", "the full acceptance battery")
    p.add_argument("--criteria", type=int, nargs="*", choices=sorted(CRITERIA))
    return parser


_POSITIONAL = ("file", "left", "right", "inclusion", "along", "source", "target", "space")
_FLAGS = ("output", "pretty", "trunc", "coeff_cap", "jobs", "verbose", "quiet", "command")


def request_from_args(args: argparse.Namespace) -> CommandRequest:
    values = vars(args)
    inputs: List[str] = []
    for key in _POSITIONAL:
        if key in ("source", "target") and args.command in ("validate", "sdr-demo"):
            continue
        if values.get(key) is not None:
            inputs.append(values[key])
    options = {k: v for k, v in values.items() if k not in _FLAGS and k not in _POSITIONAL}
    if args.command in ("validate", "sdr-demo"):
        options["source"] = values.get("source")
        options["target"] = values.get("target")
    return CommandRequest(
        command=args.command,
        inputs=inputs,
        trunc=args.trunc,
        coeff_cap=args.coeff_cap,
        jobs=args.jobs,
        output=args.output,
        pretty=args.pretty,
        options=options,
    )


def dispatch(req: CommandRequest, config: Optional[LimitsConfig] = None) -> Verdict:
    """
    Run one command and write its artifact when --output is set.

    Raises:
        AdcInputError: unknown command, bad flags or unreadable input.
        InternalConsistencyError: two computations of the same object disagree.
    """
    config = config or get_limits_config()
    handler = COMMANDS.get(req.command)
    if handler is None:
        raise AdcInputError(f"unknown command {req.command!r}", "command")
    started = time.perf_counter()
    verdict, artifact = handler(req, config)
    verdict.timing_seconds = time.perf_counter() - started
    if req.output:
        if artifact is None:
            logger.warning(f"{req.command} produces no artifact; {req.output} not written")
        else:
            write_json(req.output, artifact)
    if not verdict.passed:
        logger.error(f"{req.command}: failed checks {sorted(k for k, v in verdict.checks.items() if not v)}")
    return verdict


def render(verdict: Verdict, pretty: bool) -> str:
    if not pretty:
        return dumps(verdict.to_dict())
    lines = [f"{verdict.command}: {'PASS' if verdict.passed else 'FAIL'}"]
    for check, passed in sorted(verdict.checks.items()):
        if passed:
            lines.append(f"  ok    {check}")
        else:
            witness = verdict.witnesses.get(check)
            lines.append(f"  FAIL  {check}" + (f"  [{witness}]" if witness else ""))
    for key, value in sorted(verdict.metadata.items()):
        lines.append(f"  {key}: {value}")
    return "\n".join(lines) + "\n"


def _configure_logging(args: Optional[argparse.Namespace], config: Optional[LimitsConfig]) -> None:
    level = config.numeric_log_level if config else logging.WARNING
    if args is not None and getattr(args, "quiet", False):
        level = logging.ERROR
    elif args is not None and getattr(args, "verbose", 0):
        level = logging.INFO if args.verbose == 1 else logging.DEBUG
    logging.basicConfig(
        level=level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    args: Optional[argparse.Namespace] = None
    config: Optional[LimitsConfig] = None
    try:
        config = get_limits_config()
        args = build_parser().parse_args(argv)
        _configure_logging(args, config)
        verdict = dispatch(request_from_args(args), config)
    except AdcInputError as exc:
        _configure_logging(args, config)
        logger.error(f"input error: {exc}")
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except InternalConsistencyError as exc:
        logger.error(f"internal consistency error: {exc}")
        sys.stderr.write(f"internal error: {exc}\n")
        return 1
    except AdcError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    sys.stdout.write(render(verdict, args.pretty))
    return verdict.exit_code


if __name__ == "__main__":
    sys.exit(main())
