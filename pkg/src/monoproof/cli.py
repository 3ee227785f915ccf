"""monoproof command line: verify certificate tables, run proofs, count
equilibria, enumerate systems, and check hull extremality.

Exit codes: 0 success/proven, 1 verification mismatch or exhausted proof,
2 usage or input error.  Every report is accompanied by a run manifest
(command, arguments, seed, dataset checksums, artifact version): `verify`
prints it as its final stdout line, `prove --out FILE` writes it next to the
report as FILE.manifest.json so the report body itself stays byte-stable.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path
from typing import Optional

from monoproof import __version__
from monoproof.equilibria import (
    FaceConfig,
    PointConfig,
    count_stable,
    count_unstable,
    face_shadow_matrix,
    is_hull_vertex,
    load_config,
    vertex_shadow_matrix,
)
from monoproof.expansion import enumerate_systems, free_var_count
from monoproof.prover import SearchConfig, prove_unsolvable, verify_certificate
from monoproof.ratcore import format_rational
from monoproof.tables import (
    BUNDLED_VERTEX_COUNTS,
    ChecksumMismatch,
    ParseError,
    bundled_table_path,
    parse_certificate_table,
    table_checksum,
    verify_bundled_checksum,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def _manifest(command: str, arguments: dict, seed: Optional[int] = None,
              checksums: Optional[dict] = None) -> str:
    doc = {
        "command": command,
        "arguments": arguments,
        "seed": seed,
        "dataset_checksums": checksums or {},
        "artifact_version": __version__,
    }
    return json.dumps(doc, sort_keys=True)


def _fail_usage(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return EXIT_USAGE


def _resolve_table(name: str) -> tuple[Path, str]:
    """Table argument resolution: an existing path wins; otherwise a bundled
    dataset name (appendix_v4.csv .. appendix_v7.csv) is loaded from the
    package, with its checksum enforced against the recorded manifest."""
    candidate = Path(name)
    if candidate.exists():
        return candidate, table_checksum(candidate)
    for V in BUNDLED_VERTEX_COUNTS:
        if name == f"appendix_v{V}.csv":
            digest = verify_bundled_checksum(V)  # ChecksumMismatch propagates
            return bundled_table_path(V), digest
    raise FileNotFoundError(f"table {name!r}: no such file or bundled dataset")


def cmd_verify(ns: argparse.Namespace) -> int:
    try:
        path, digest = _resolve_table(ns.table)
    except ChecksumMismatch as exc:
        print(f"error: refusing modified bundled dataset: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        return _fail_usage(str(exc))
    try:
        table = parse_certificate_table(path)
    except ParseError as exc:
        return _fail_usage(f"{path}: {exc}")
    verified = 0
    for row in table.rows:
        result = verify_certificate(table.V, row.system, row.coeffs)
        ok = result.hessian_pd and result.positive and result.min_value == row.min_f
        j = ",".join(str(v) for v in row.system.choices)
        if not ok:
            computed = (
                format_rational(result.min_value)
                if result.min_value is not None
                else "n/a (Hessian not positive definite)"
            )
            print(f"system #{row.system.system_id} j=({j}): MISMATCH "
                  f"expected {format_rational(row.min_f)}, computed {computed}")
            print(f"{verified}/{len(table)} verified before first mismatch")
            print(_manifest("verify", {"table": ns.table}, checksums={path.name: digest}))
            return EXIT_FAIL
        verified += 1
        print(f"system #{row.system.system_id} j=({j}): "
              f"ok, min = {format_rational(row.min_f)}")
    print(f"{verified}/{len(table)} verified")
    print(_manifest("verify", {"table": ns.table}, checksums={path.name: digest}))
    return EXIT_OK


def cmd_prove(ns: argparse.Namespace) -> int:
    if ns.vertices < 4:
        return _fail_usage("--vertices must be at least 4")
    try:
        cfg = SearchConfig(
            coeff_min=ns.coeff_min,
            coeff_max=ns.coeff_max,
            max_trials=ns.max_trials,
            base_seed=ns.seed,
        )
    except ValueError as exc:
        return _fail_usage(str(exc))
    report = prove_unsolvable(ns.vertices, cfg, jobs=ns.jobs)
    body = json.dumps(report.to_json(), indent=2) + "\n"
    manifest = _manifest(
        "prove",
        {
            "vertices": ns.vertices,
            "coeff_min": ns.coeff_min,
            "coeff_max": ns.coeff_max,
            "max_trials": ns.max_trials,
            "jobs": ns.jobs,
            "out": ns.out,
        },
        seed=ns.seed,
    )
    if ns.out:
        out = Path(ns.out)
        out.write_text(body)
        Path(str(out) + ".manifest.json").write_text(manifest + "\n")
        print(f"{report.certified_count}/{len(report.systems)} systems certified; "
              f"verdict: {report.verdict}; report written to {out}")
    else:
        sys.stdout.write(body)
        print(manifest, file=sys.stderr)
    return EXIT_OK if report.all_certified else EXIT_FAIL


def _describe_row(matrix, i: int, noun: str) -> str:
    row = matrix[i]
    if all(v == 1 for j, v in enumerate(row) if j != i):
        return "equilibrium"
    shadowing = [str(j + 1) for j, v in enumerate(row) if v == -1]
    degenerate = [str(j + 1) for j, v in enumerate(row) if v == 0 and j != i]
    parts = []
    if shadowing:
        parts.append(f"shadowed by {noun} {', '.join(shadowing)}")
    if degenerate:
        parts.append(f"degenerate contact with {noun} {', '.join(degenerate)}")
    return "; ".join(parts)


def cmd_count(ns: argparse.Namespace) -> int:
    try:
        cfg = load_config(ns.input)
    except (OSError, ValueError) as exc:
        return _fail_usage(f"{ns.input}: {exc}")
    if ns.faces:
        if not isinstance(cfg, FaceConfig):
            return _fail_usage("--faces needs a face-vector input (kind: 'faces')")
        matrix = face_shadow_matrix(cfg)
        print(f"S = {count_stable(cfg)}")
        for i in range(cfg.F):
            status = _describe_row(matrix, i, "face")
            print(f"face {i + 1}: {status}")
        return EXIT_OK
    if not isinstance(cfg, PointConfig):
        return _fail_usage("vertex input required (kind: 'vertices'); "
                           "pass --faces for face configurations")
    if not cfg.is_generic:
        print("warning: squared vertex norms are not pairwise distinct; "
              "degenerate contacts possible", file=sys.stderr)
    matrix = vertex_shadow_matrix(cfg)
    print(f"U = {count_unstable(cfg)}")
    for i in range(cfg.V):
        status = _describe_row(matrix, i, "vertex")
        print(f"vertex {i + 1}: {status}")
    return EXIT_OK


def cmd_systems(ns: argparse.Namespace) -> int:
    if ns.vertices < 3:
        return _fail_usage("--vertices must be at least 3")
    count = math.factorial(ns.vertices - 1)
    print(f"V = {ns.vertices}: {count} shadowing systems, "
          f"{free_var_count(ns.vertices)} free variables each")
    if ns.list:
        for system in enumerate_systems(ns.vertices):
            j = ",".join(str(v) for v in system.j)
            print(f"#{system.system_id} j=({j})")
    return EXIT_OK


def cmd_check_hull(ns: argparse.Namespace) -> int:
    try:
        cfg = load_config(ns.input)
    except (OSError, ValueError) as exc:
        return _fail_usage(f"{ns.input}: {exc}")
    if not isinstance(cfg, PointConfig):
        return _fail_usage("check-hull needs a vertex input (kind: 'vertices')")
    interior = 0
    for i in range(cfg.V):
        if is_hull_vertex(cfg, i):
            print(f"vertex {i + 1}: hull vertex")
        else:
            interior += 1
            print(f"vertex {i + 1}: NOT a hull vertex "
                  "(convex combination of the others)")
    if interior:
        print(f"{cfg.V - interior}/{cfg.V} points are hull vertices")
        return EXIT_FAIL
    print(f"{cfg.V}/{cfg.V} points are hull vertices")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="monoproof",
        description="Equilibrium counting and unsolvability certificates "
                    "for mono-unstable 0-skeletons.",
    )
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="recompute and check a certificate table")
    p.add_argument("--table", required=True,
                   help="CSV path, or a bundled name like appendix_v5.csv")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("prove", help="search certificates for all systems of one V")
    p.add_argument("--vertices", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--coeff-min", type=int, default=1)
    p.add_argument("--coeff-max", type=int, default=101)
    p.add_argument("--max-trials", type=int, default=100_000)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", default=None, help="report file (default: stdout)")
    p.set_defaults(func=cmd_prove)

    p = sub.add_parser("count", help="count equilibria of a configuration")
    p.add_argument("--input", required=True, help="JSON configuration file")
    p.add_argument("--faces", action="store_true",
                   help="treat input as face vectors and count stable equilibria")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("systems", help="enumerate shadowing systems")
    p.add_argument("--vertices", type=int, required=True)
    p.add_argument("--list", action="store_true", help="print every system")
    p.set_defaults(func=cmd_systems)

    p = sub.add_parser("check-hull", help="test each point for hull extremality")
    p.add_argument("--input", required=True, help="JSON vertex configuration")
    p.set_defaults(func=cmd_check_hull)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    ns = build_parser().parse_args(argv)
    return ns.func(ns)


if __name__ == "__main__":
    sys.exit(main())
