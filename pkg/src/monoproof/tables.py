"""Certificate tables: the bundled coefficient datasets and their CSV format.

A table holds, for every shadowing system of a given vertex count in
canonical order, the positive integer coefficients c_2..c_V and the exact
minimum of the weighted inequality sum.  The wire format is CSV with header
``j_3,...,j_V,c_2,...,c_V,min_f`` and minima written as "p/q".

Four such tables ship inside the package (appendix_v4.csv .. appendix_v7.csv,
6 + 24 + 120 + 720 rows); their sha256 digests live in data/checksums.json so
a silently modified copy is refused rather than verified.
"""

from __future__ import annotations

import csv
import hashlib
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Optional, Union

from monoproof.expansion import ShadowSystem
from monoproof.ratcore import format_rational, parse_rational

PathLike = Union[str, Path]

BUNDLED_VERTEX_COUNTS = (4, 5, 6, 7)


class ParseError(ValueError):
    """Malformed table contents; carries the offending 1-based line number."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")


class RangeError(ParseError):
    """A j(i) entry outside 1..i-1."""


class ChecksumMismatch(RuntimeError):
    """A bundled dataset differs from its recorded checksum."""


@dataclass(frozen=True)
class TableRow:
    system: ShadowSystem
    coeffs: tuple[int, ...]
    min_f: Fraction

    def __post_init__(self):
        if len(self.coeffs) != self.system.V - 1:
            raise ValueError("expected one coefficient per inequality (c_2..c_V)")
        if any(c < 1 for c in self.coeffs):
            raise ValueError("coefficients must be positive integers")


@dataclass(frozen=True)
class CertificateTable:
    """All (V-1)! rows for one vertex count, in canonical system order."""

    V: int
    rows: tuple[TableRow, ...]

    def __post_init__(self):
        expected = math.factorial(self.V - 1)
        if len(self.rows) != expected:
            raise ValueError(
                f"table for V={self.V} must have {expected} rows, got {len(self.rows)}"
            )
        for pos, row in enumerate(self.rows):
            if row.system.V != self.V:
                raise ValueError("row vertex count differs from table vertex count")
            if row.system.system_id != pos:
                raise ValueError(
                    f"rows out of canonical order at position {pos}: "
                    f"got system {row.system.system_id} (duplicate or misordered)"
                )

    def __len__(self) -> int:
        return len(self.rows)


def _expected_header(V: int) -> list[str]:
    return (
        [f"j_{i}" for i in range(3, V + 1)]
        + [f"c_{i}" for i in range(2, V + 1)]
        + ["min_f"]
    )


def _parse_int(text: str, what: str, line: int) -> int:
    try:
        return int(text)
    except ValueError:
        raise ParseError(f"{what} must be an integer, got {text!r}", line) from None


def parse_certificate_table(path: PathLike) -> CertificateTable:
    """Read and validate a certificate table from a CSV file.

    The vertex count is inferred from the header width.  Rows must appear in
    canonical order and cover every system exactly once; out-of-range j
    entries raise RangeError, everything else malformed raises ParseError,
    both with the 1-based line number.
    """
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError("empty file", 1) from None
        width = len(header)
        if width < 6 or width % 2 != 0:
            raise ParseError(f"header has {width} columns, expected 2V-2", 1)
        V = (width + 2) // 2
        if header != _expected_header(V):
            raise ParseError(
                f"bad header for V={V}: expected {','.join(_expected_header(V))}", 1
            )
        rows: list[TableRow] = []
        for line, record in enumerate(reader, start=2):
            if not record:
                continue
            if len(record) != width:
                raise ParseError(
                    f"expected {width} fields, got {len(record)}", line
                )
            j_part = record[: V - 2]
            c_part = record[V - 2 : 2 * V - 3]
            choices = []
            for offset, text in enumerate(j_part):
                i = offset + 3
                value = _parse_int(text, f"j_{i}", line)
                if not 1 <= value <= i - 1:
                    raise RangeError(f"j_{i} = {value} out of range 1..{i - 1}", line)
                choices.append(value)
            coeffs = []
            for offset, text in enumerate(c_part):
                i = offset + 2
                value = _parse_int(text, f"c_{i}", line)
                if value < 1:
                    raise ParseError(f"c_{i} = {value} must be positive", line)
                coeffs.append(value)
            try:
                min_f = parse_rational(record[-1])
            except ValueError as exc:
                raise ParseError(f"bad min_f: {exc}", line) from None
            system = ShadowSystem.from_choices(V, choices)
            if system.system_id != len(rows):
                raise ParseError(
                    f"system {tuple(choices)} out of canonical order "
                    f"(duplicate, missing, or misordered rows)",
                    line,
                )
            rows.append(TableRow(system=system, coeffs=tuple(coeffs), min_f=min_f))
    expected = math.factorial(V - 1)
    if len(rows) != expected:
        raise ParseError(f"expected {expected} rows for V={V}, found {len(rows)}")
    return CertificateTable(V=V, rows=tuple(rows))


def serialize_certificate_table(table: CertificateTable) -> str:
    """Render a table back to its CSV wire format (parse round-trips)."""
    lines = [",".join(_expected_header(table.V))]
    for row in table.rows:
        fields = (
            [str(j) for j in row.system.choices]
            + [str(c) for c in row.coeffs]
            + [format_rational(row.min_f)]
        )
        lines.append(",".join(fields))
    return "\n".join(lines) + "\n"


def bundled_table_path(V: int) -> Path:
    """Filesystem path of the packaged table for one of V = 4..7."""
    if V not in BUNDLED_VERTEX_COUNTS:
        raise ValueError(f"no bundled table for V={V} (have {BUNDLED_VERTEX_COUNTS})")
    return Path(str(resources.files("monoproof").joinpath("data", f"appendix_v{V}.csv")))


def table_checksum(path: PathLike) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def bundled_checksums() -> dict[str, str]:
    text = resources.files("monoproof").joinpath("data", "checksums.json").read_text("utf-8")
    return dict(json.loads(text))


def verify_bundled_checksum(V: int) -> str:
    """Checksum the bundled table for V and compare against the manifest.

    Returns the hex digest; raises ChecksumMismatch when the shipped file no
    longer matches its recorded sha256.
    """
    path = bundled_table_path(V)
    digest = table_checksum(path)
    recorded = bundled_checksums().get(path.name)
    if recorded != digest:
        raise ChecksumMismatch(
            f"{path.name}: recorded sha256 {recorded} != actual {digest}"
        )
    return digest
