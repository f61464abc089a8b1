"""Command-line surface: analyze, dfs, and verify subcommands.

Problem files are a flat TOML subset: `factors`, `generators` (element
strings, each a single unit-phase blade), optional `coeffs` (symbol-or-value
strings aligned to the closed basis), optional `state` (element string,
implicitly pushed into the ideal), optional `table = "dual-numbers"`, and an
`[options]` section for tolerances and caps.  Output is a fixed-order JSON
object (authoritative) or an equivalent plain-text table.

Exit codes: 0 ok, 1 parse error, 2 mathematical failure, 3 oracle mismatch.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

import numpy as np

from . import dfs as dfs_mod
from . import linalg, reptheory, structure
from .algebra import Multivector, into_ideal
from .parsing import ParseError, parse_element, parse_scalar, parse_single_blade, render_element
from .scalars import GaussianRational, format_scalar
from .structure import CapExceededError, NotSemisimpleError, SubalgebraTable

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_MATH = 2
EXIT_ORACLE = 3

DEFAULT_TOLERANCE = 1e-9
UNITARIZE_TOL = 1e-8
BUILTIN_NAMES = ("gamma1", "gamma2", "gamma3", "dual-numbers", "cl3")


class MathFailure(Exception):
    """Pipeline-level mathematical failure (exit code 2)."""


@dataclass
class ProblemSpec:
    factors: Optional[int]
    generators: list[str]
    coeffs: Optional[list[str]]
    state: Optional[str]
    table_kind: str  # "blades" or "dual-numbers"
    tolerance: Optional[float]
    max_factors: Optional[int]
    basis_cap: int


def _fixture_path(name: str) -> Path:
    return Path(__file__).parent / "fixtures" / f"{name}.toml"


def resolve_spec_path(spec: str) -> Path:
    path = Path(spec)
    if path.exists():
        return path
    if spec in BUILTIN_NAMES:
        return _fixture_path(spec)
    raise FileNotFoundError(f"no such spec file or builtin: {spec}")


def load_problem_spec(path: Path) -> ProblemSpec:
    try:
        data = tomllib.loads(path.read_text(encoding="utf-8"))
    except tomllib.TOMLDecodeError as exc:
        raise ParseError(f"spec file: {exc}", "", 0) from exc

    table_kind = data.get("table", "blades")
    if table_kind not in ("blades", "dual-numbers"):
        raise ParseError(f"spec file: unknown table kind {table_kind!r}", "", 0)
    factors = data.get("factors")
    if table_kind == "blades":
        if not isinstance(factors, int) or factors < 1:
            raise ParseError("spec file: 'factors' must be an integer >= 1", "", 0)
    generators = data.get("generators", [])
    if not isinstance(generators, list) or not all(
        isinstance(g, str) for g in generators
    ):
        raise ParseError("spec file: 'generators' must be an array of strings", "", 0)
    coeffs = data.get("coeffs")
    if coeffs is not None and (
        not isinstance(coeffs, list) or not all(isinstance(c, str) for c in coeffs)
    ):
        raise ParseError("spec file: 'coeffs' must be an array of strings", "", 0)
    state = data.get("state")
    if state is not None and not isinstance(state, str):
        raise ParseError("spec file: 'state' must be a string", "", 0)
    options = data.get("options", {})
    return ProblemSpec(
        factors=factors,
        generators=list(generators),
        coeffs=list(coeffs) if coeffs is not None else None,
        state=state,
        table_kind=table_kind,
        tolerance=options.get("tolerance"),
        max_factors=options.get("max_factors"),
        basis_cap=options.get("basis_cap", structure.DEFAULT_BASIS_CAP),
    )


def build_table(spec: ProblemSpec) -> SubalgebraTable:
    if spec.table_kind == "dual-numbers":
        return structure.dual_numbers_table()
    generators = []
    for text in spec.generators:
        coeff, blade = parse_single_blade(text)
        generators.append(Multivector.from_blade(blade, coeff))
    return structure.close_generators(generators, spec.factors, cap=spec.basis_cap)


def parse_coeff_slots(raw: Sequence[str]) -> list[dfs_mod.CoeffSlot]:
    slots: list[dfs_mod.CoeffSlot] = []
    for item in raw:
        try:
            slots.append(parse_scalar(item))
        except ParseError:
            slots.append(item)
    return slots


# -- report assembly ---------------------------------------------------------


def analyze_report(table: SubalgebraTable) -> tuple[dict, Optional[str]]:
    """Builds the analyze JSON object; returns (report, failure message)."""
    report: dict = {
        "basis": list(table.labels()),
        "semisimple": None,
        "determinant": None,
        "center": [i + 1 for i in structure.center_basis(table)],
        "irreps": None,
        "characters": None,
        "projectors": None,
    }
    verdict = structure.is_semisimple(table)
    report["semisimple"] = verdict.semisimple
    report["determinant"] = format_scalar(verdict.determinant)
    if not verdict.semisimple:
        return report, "algebra is not semisimple (trace-form determinant is 0)"
    profile = structure.irrep_profile(table)
    report["irreps"] = {
        "count": profile.count_k,
        "dims": list(profile.dims),
        "ambiguous": profile.ambiguous,
    }
    if profile.ambiguous:
        report["irreps"]["solutions"] = [list(sol) for sol in profile.solutions]
        return report, "dimension equation has multiple solutions"
    try:
        ct = reptheory.character_table_abelian(table)
    except ValueError:
        return report, None  # non-abelian sector: no character table, still ok
    report["characters"] = [
        [format_scalar(value) for value in row] for row in ct.rows
    ]
    projectors = dfs_mod.build_projectors(ct) if table.is_blade_backed else None
    if projectors is not None:
        report["projectors"] = [render_element(p.element) for p in projectors]
    return report, None


def dfs_report_entries(
    report: dfs_mod.DfsReport,
    coeffs: Sequence[dfs_mod.CoeffSlot],
    tolerance: float,
    max_factors: int,
) -> tuple[list[dict], Optional[str]]:
    """Per-irrep JSON entries plus an oracle failure message, if any."""
    entries = []
    failure = None
    concrete = all(isinstance(slot, GaussianRational) for slot in coeffs)
    m = report.table.num_factors
    for comp in report.components:
        residual = None
        if concrete and m is not None and m <= max_factors and not comp.ideal_zero:
            residual, vacuous = dfs_mod.matrix_oracle_check(
                report.character_table, comp.label, comp.component, coeffs
            )
            if not vacuous and residual > tolerance:
                failure = (
                    f"oracle residual {residual:.3e} above tolerance for irrep"
                    f" {comp.label}"
                )
        entries.append(
            {
                "irrep": comp.label,
                "component": render_element(comp.component),
                "zero": comp.zero,
                "ideal_zero": comp.ideal_zero,
                "eigenvalue": comp.eigenvalue.render() if comp.eigenvalue else None,
                "oracle_residual": residual,
            }
        )
    return entries, failure


# -- rendering ---------------------------------------------------------------


def emit(report: dict, fmt: str, out: Optional[str]):
    if fmt == "json":
        text = json.dumps(report, indent=2) + "\n"
    else:
        text = render_table(report)
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def render_table(report: dict) -> str:
    lines = []
    if "basis" in report:
        lines.append("basis:")
        for i, label in enumerate(report["basis"], start=1):
            lines.append(f"  {i:>3}  {label}")
        det = report.get("determinant")
        lines.append(f"semisimple: {report.get('semisimple')} (determinant {det})")
        lines.append("center: " + " ".join(str(i) for i in report.get("center", [])))
        irreps = report.get("irreps")
        if irreps:
            dims = ",".join(str(n) for n in irreps["dims"])
            flag = " ambiguous" if irreps["ambiguous"] else ""
            lines.append(f"irreps: count={irreps['count']} dims=({dims}){flag}")
        if report.get("characters"):
            lines.append("characters:")
            for j, row in enumerate(report["characters"], start=1):
                lines.append(f"  R{j} | " + " ".join(f"{v:>2}" for v in row))
        if report.get("projectors"):
            lines.append("projectors:")
            for j, text in enumerate(report["projectors"], start=1):
                lines.append(f"  P{j} = {text}")
    if report.get("dfs") is not None:
        lines.append("dfs components:")
        for entry in report["dfs"]:
            flags = []
            if entry["zero"]:
                flags.append("zero")
            if entry["ideal_zero"]:
                flags.append("ideal-zero")
            suffix = f" [{','.join(flags)}]" if flags else ""
            lines.append(f"  psi^{entry['irrep']}{suffix}: {entry['component']}")
            if entry["eigenvalue"] is not None:
                lines.append(f"    eigenvalue: {entry['eigenvalue']}")
            if entry["oracle_residual"] is not None:
                lines.append(f"    oracle residual: {entry['oracle_residual']:.3e}")
    for key in ("theorem", "passed", "details"):
        if key in report:
            lines.append(f"{key}: {report[key]}")
    return "\n".join(lines) + "\n"


# -- subcommands -------------------------------------------------------------


def cmd_analyze(args) -> int:
    spec = load_problem_spec(resolve_spec_path(args.spec))
    table = build_table(spec)
    report, failure = analyze_report(table)
    emit(report, args.format, args.out)
    if failure:
        print(f"error: {failure}", file=sys.stderr)
        return EXIT_MATH
    return EXIT_OK


def cmd_dfs(args) -> int:
    spec = load_problem_spec(resolve_spec_path(args.spec))
    if spec.state is None:
        raise MathFailure("dfs needs a 'state' entry in the spec file")
    table = build_table(spec)
    if not table.is_blade_backed:
        raise MathFailure("dfs needs a blade-backed table")
    report, failure = analyze_report(table)
    if failure or report["characters"] is None:
        report["dfs"] = None
        emit(report, args.format, args.out)
        message = failure or "table is not abelian with one-dimensional irreps"
        print(f"error: {message}", file=sys.stderr)
        return EXIT_MATH

    state = into_ideal(parse_element(spec.state))
    if state.num_factors != table.num_factors:
        raise MathFailure("state factor count does not match the table")
    coeffs = (
        parse_coeff_slots(spec.coeffs)
        if spec.coeffs is not None
        else list(dfs_mod.default_symbols(table.dimension))
    )
    if len(coeffs) != table.dimension:
        raise MathFailure(
            f"coeffs has {len(coeffs)} entries, basis has {table.dimension}"
        )
    tolerance = args.tolerance if args.tolerance is not None else (
        spec.tolerance if spec.tolerance is not None else DEFAULT_TOLERANCE
    )
    max_factors = args.max_factors if args.max_factors is not None else (
        spec.max_factors if spec.max_factors is not None else 4
    )
    result = dfs_mod.dfs_analyze(table, state, coeffs)
    entries, oracle_failure = dfs_report_entries(result, coeffs, tolerance, max_factors)
    report["dfs"] = entries
    emit(report, args.format, args.out)
    if oracle_failure:
        print(f"error: {oracle_failure}", file=sys.stderr)
        return EXIT_ORACLE
    return EXIT_OK


def _verify_gram(table, tolerance):
    gram = structure.gram_matrix(table)
    symmetric = all(
        gram[i, j] == gram[j, i] for i in range(gram.rows) for j in range(gram.cols)
    )
    verdict = structure.is_semisimple(table)
    details = {
        "symmetric": symmetric,
        "determinant": format_scalar(verdict.determinant),
        "semisimple": verdict.semisimple,
    }
    return verdict.semisimple and symmetric, details


def _orthogonality_reps(table):
    if table.is_blade_backed and table.dimension == 8 ** table.num_factors:
        return [
            reptheory.sign_rep_matrices(s, table)
            for s in reptheory.all_sign_reps(table.num_factors)
        ]
    ct = reptheory.character_table_abelian(table)
    return [reptheory.rep_from_characters(ct, j) for j in range(ct.count)]


def _verify_orthogonality(table, tolerance):
    try:
        reps = _orthogonality_reps(table)
    except ValueError as exc:
        raise MathFailure(f"orthogonality battery: {exc}") from exc
    worst = 0.0
    for a in range(len(reps)):
        for b in range(a, len(reps)):
            worst = max(
                worst, reptheory.verify_grand_orthogonality(reps[a], reps[b])
            )
    details = {"representations": len(reps), "max_residual": worst}
    return worst <= tolerance, details


def _verify_characters(table, tolerance):
    try:
        ct = reptheory.character_table_abelian(table)
    except ValueError as exc:
        raise MathFailure(f"character battery: {exc}") from exc
    orthogonal = reptheory.character_orthogonality_exact(ct)
    multiplicative = True
    d = table.dimension
    for row in ct.rows:
        for x in range(d):
            for y in range(d):
                phase, z = table.product(x, y)
                if row[x] * row[y] != phase * row[z]:
                    multiplicative = False
    details = {"rows": ct.count, "orthogonal": orthogonal, "multiplicative": multiplicative}
    return orthogonal and multiplicative, details


def _verify_unitarize(table, tolerance):
    if not table.is_blade_backed:
        raise MathFailure("unitarize battery needs a blade-backed table")
    m = table.num_factors
    if m > reptheory.SIGN_REP_MAX_FACTORS:
        raise MathFailure("unitarize battery: factor count above the matrix cap")
    rep = reptheory.sign_rep_matrices(reptheory.SignRep((1,) * m), table)
    shear = np.array([[1, 1], [0, 1]], dtype=complex)
    skew = shear
    for _ in range(m - 1):
        skew = np.kron(skew, shear)
    crooked = reptheory.conjugate_rep(rep, skew, label="sheared")
    result = reptheory.unitarize(crooked)
    eye = np.eye(rep.dim)
    worst = max(
        linalg.max_norm(image @ image.conj().T - eye)
        for image in result.unitary_images
    )
    details = {"max_unitarity_residual": worst}
    return worst <= UNITARIZE_TOL, details


def _verify_tensor(table, tolerance, seed):
    product = structure.tensor_tables(table, table)
    base = structure.is_semisimple(table).semisimple
    both = structure.is_semisimple(product).semisimple
    center_a = len(structure.center_basis(table))
    center_t = len(structure.center_basis(product))
    ok = (both == base) and (center_t == center_a * center_a)
    details = {
        "semisimple_multiplicative": both == base,
        "center": center_t,
        "center_expected": center_a * center_a,
    }
    if base:
        profile = structure.irrep_profile(product)
        details["irrep_count"] = profile.count_k
        ok = ok and profile.count_k == center_t
    rng = random.Random(seed)
    d_a, d_t = table.dimension, product.dimension
    spot_ok = True
    for _ in range(min(200, d_t * d_t)):
        x, y = rng.randrange(d_t), rng.randrange(d_t)
        expected = _tensor_entry(table, x, y, d_a)
        if product.product(x, y) != expected:
            spot_ok = False
    details["structure_constants_spot_check"] = spot_ok
    return ok and spot_ok, details


def _tensor_entry(table, x, y, d_a):
    xa, xb = divmod(x, d_a)
    ya, yb = divmod(y, d_a)
    ea = table.product(xa, ya)
    eb = table.product(xb, yb)
    if ea is None or eb is None:
        return None
    return ea[0] * eb[0], ea[1] * d_a + eb[1]


VERIFY_BATTERIES = {
    "gram": lambda table, tol, seed: _verify_gram(table, tol),
    "orthogonality": lambda table, tol, seed: _verify_orthogonality(table, tol),
    "characters": lambda table, tol, seed: _verify_characters(table, tol),
    "unitarize": lambda table, tol, seed: _verify_unitarize(table, tol),
    "tensor": _verify_tensor,
}


def cmd_verify(args) -> int:
    spec = load_problem_spec(resolve_spec_path(args.spec))
    table = build_table(spec)
    tolerance = args.tolerance if args.tolerance is not None else (
        spec.tolerance if spec.tolerance is not None else DEFAULT_TOLERANCE
    )
    passed, details = VERIFY_BATTERIES[args.theorem](table, tolerance, args.seed)
    report = {"theorem": args.theorem, "passed": passed, "details": details}
    emit(report, args.format, args.out)
    if not passed:
        print(f"error: verification battery '{args.theorem}' failed", file=sys.stderr)
        return EXIT_MATH
    return EXIT_OK


# -- entry point -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cliffdfs",
        description="exact decoherence-free-subspace toolkit for multi-qubit noise algebras",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("spec", help="spec file path or builtin name "
                       f"({', '.join(BUILTIN_NAMES)})")
        p.add_argument("--format", choices=("table", "json"), default="json")
        p.add_argument("--out", default=None, help="write the report to a file")
        p.add_argument("--tolerance", type=float, default=None,
                       help="float comparison tolerance (default 1e-9)")
        p.add_argument("--max-factors", type=int, default=None, dest="max_factors",
                       help="largest m for matrix-oracle paths (default 4)")
        p.add_argument("--seed", type=int, default=0,
                       help="seed for randomized verification sweeps")

    p_analyze = sub.add_parser("analyze", help="basis, semisimplicity, characters")
    common(p_analyze)
    p_analyze.set_defaults(func=cmd_analyze)

    p_dfs = sub.add_parser("dfs", help="project a state and report DFS components")
    common(p_dfs)
    p_dfs.set_defaults(func=cmd_dfs)

    p_verify = sub.add_parser("verify", help="run a named verification battery")
    common(p_verify)
    p_verify.add_argument(
        "--theorem",
        required=True,
        choices=sorted(VERIFY_BATTERIES),
        help="which battery to run",
    )
    p_verify.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (MathFailure, CapExceededError, NotSemisimpleError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MATH
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MATH


if __name__ == "__main__":
    sys.exit(main())
