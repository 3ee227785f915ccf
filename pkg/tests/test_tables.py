import math
from fractions import Fraction

import pytest

from monoproof.expansion import ShadowSystem
from monoproof.prover import verify_certificate
from monoproof.tables import (
    BUNDLED_VERTEX_COUNTS,
    CertificateTable,
    ChecksumMismatch,
    ParseError,
    RangeError,
    TableRow,
    bundled_checksums,
    bundled_table_path,
    parse_certificate_table,
    serialize_certificate_table,
    table_checksum,
    verify_bundled_checksum,
)


def bundled_lines(V=4):
    return bundled_table_path(V).read_text("utf-8").splitlines()


def write_table(tmp_path, lines, name="table.csv"):
    path = tmp_path / name
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


@pytest.mark.parametrize("V", BUNDLED_VERTEX_COUNTS)
def test_bundled_tables_parse(V):
    table = parse_certificate_table(bundled_table_path(V))
    assert table.V == V
    assert len(table) == math.factorial(V - 1)


@pytest.mark.parametrize("V", BUNDLED_VERTEX_COUNTS)
def test_serialize_reproduces_bundled_bytes(V):
    table = parse_certificate_table(bundled_table_path(V))
    assert serialize_certificate_table(table) == bundled_table_path(V).read_text("utf-8")


def test_round_trip(tmp_path):
    table = parse_certificate_table(bundled_table_path(4))
    path = write_table(tmp_path, serialize_certificate_table(table).splitlines())
    assert parse_certificate_table(path) == table


def test_bundled_v4_rows_verify_exactly():
    # cheap end-to-end tie-in; the full sweep lives in the acceptance suite
    table = parse_certificate_table(bundled_table_path(4))
    for row in table.rows:
        result = verify_certificate(4, row.system, row.coeffs)
        assert result.positive
        assert result.min_value == row.min_f


def test_first_v4_row_contents():
    table = parse_certificate_table(bundled_table_path(4))
    first = table.rows[0]
    assert first.system == ShadowSystem(4, (1, 1, 1))
    assert len(first.coeffs) == 3
    assert first.min_f > 0


def test_blank_lines_are_skipped(tmp_path):
    lines = bundled_lines()
    lines.insert(3, "")
    path = write_table(tmp_path, lines)
    assert len(parse_certificate_table(path)) == 6


def test_empty_file(tmp_path):
    path = tmp_path / "empty.csv"
    path.write_text("", encoding="utf-8")
    with pytest.raises(ParseError, match="empty file") as info:
        parse_certificate_table(path)
    assert info.value.line == 1


def test_header_name_mismatch(tmp_path):
    lines = bundled_lines()
    lines[0] = lines[0].replace("min_f", "minimum")
    path = write_table(tmp_path, lines)
    with pytest.raises(ParseError, match="bad header") as info:
        parse_certificate_table(path)
    assert info.value.line == 1


def test_header_odd_width(tmp_path):
    path = write_table(tmp_path, ["j_3,j_4,c_2,c_3,c_4"])
    with pytest.raises(ParseError, match="columns"):
        parse_certificate_table(path)


def test_row_with_wrong_field_count(tmp_path):
    lines = bundled_lines()
    lines[2] += ",9"
    path = write_table(tmp_path, lines)
    with pytest.raises(ParseError, match="fields") as info:
        parse_certificate_table(path)
    assert info.value.line == 3


def test_j_out_of_range(tmp_path):
    lines = bundled_lines()
    parts = lines[1].split(",")
    parts[0] = "3"  # j_3 may only be 1 or 2
    lines[1] = ",".join(parts)
    path = write_table(tmp_path, lines)
    with pytest.raises(RangeError, match="j_3 = 3") as info:
        parse_certificate_table(path)
    assert info.value.line == 2


def test_non_integer_j(tmp_path):
    lines = bundled_lines()
    lines[1] = "x" + lines[1][1:]
    path = write_table(tmp_path, lines)
    with pytest.raises(ParseError, match="j_3 must be an integer"):
        parse_certificate_table(path)


def test_non_positive_coefficient(tmp_path):
    lines = bundled_lines()
    parts = lines[1].split(",")
    parts[2] = "0"  # c_2
    lines[1] = ",".join(parts)
    path = write_table(tmp_path, lines)
    with pytest.raises(ParseError, match="c_2 = 0 must be positive"):
        parse_certificate_table(path)


@pytest.mark.parametrize("bad", ["1.5", "7/0", "", "3 / 4"])
def test_bad_minimum_field(tmp_path, bad):
    lines = bundled_lines()
    parts = lines[1].split(",")
    parts[-1] = bad
    lines[1] = ",".join(parts)
    path = write_table(tmp_path, lines)
    with pytest.raises(ParseError, match="bad min_f"):
        parse_certificate_table(path)


def test_swapped_rows_rejected(tmp_path):
    lines = bundled_lines()
    lines[2], lines[3] = lines[3], lines[2]
    path = write_table(tmp_path, lines)
    with pytest.raises(ParseError, match="canonical order") as info:
        parse_certificate_table(path)
    assert info.value.line == 2 + 1  # first offending row


def test_duplicated_row_rejected(tmp_path):
    lines = bundled_lines()
    lines[2] = lines[1]
    path = write_table(tmp_path, lines)
    with pytest.raises(ParseError, match="canonical order"):
        parse_certificate_table(path)


def test_missing_row_rejected(tmp_path):
    path = write_table(tmp_path, bundled_lines()[:-1])
    with pytest.raises(ParseError, match="expected 6 rows"):
        parse_certificate_table(path)


def test_table_row_validation():
    system = ShadowSystem(4, (1, 1, 1))
    with pytest.raises(ValueError, match="one coefficient per inequality"):
        TableRow(system=system, coeffs=(1, 2), min_f=Fraction(1))
    with pytest.raises(ValueError, match="positive"):
        TableRow(system=system, coeffs=(1, 0, 2), min_f=Fraction(1))


def test_certificate_table_validation():
    table = parse_certificate_table(bundled_table_path(4))
    with pytest.raises(ValueError, match="must have 6 rows"):
        CertificateTable(V=4, rows=table.rows[:3])
    shuffled = (table.rows[1], table.rows[0]) + table.rows[2:]
    with pytest.raises(ValueError, match="canonical order"):
        CertificateTable(V=4, rows=shuffled)


def test_bundled_path_unknown_vertex_count():
    with pytest.raises(ValueError, match="no bundled table"):
        bundled_table_path(8)


def test_checksums_cover_all_bundled_tables():
    recorded = bundled_checksums()
    for V in BUNDLED_VERTEX_COUNTS:
        path = bundled_table_path(V)
        assert recorded[path.name] == table_checksum(path)
        digest = verify_bundled_checksum(V)
        assert digest == recorded[path.name]
        assert len(digest) == 64


def test_checksum_mismatch_raised(tmp_path, monkeypatch):
    import monoproof.tables as tables

    lines = bundled_lines()
    parts = lines[1].split(",")
    parts[2] = str(int(parts[2]) + 1)
    lines[1] = ",".join(parts)
    tampered = write_table(tmp_path, lines, name="appendix_v4.csv")
    monkeypatch.setattr(tables, "bundled_table_path", lambda V: tampered)
    with pytest.raises(ChecksumMismatch, match="appendix_v4.csv"):
        verify_bundled_checksum(4)
