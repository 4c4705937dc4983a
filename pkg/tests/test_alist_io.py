import pytest

from models.errors import AlistFormatError
from services.alist_io import load_alist, read_alist_file, save_alist, write_alist_file

HAMMING_ALIST = """7 3
3 4
2 2 2 3 1 1 1
4 4 4
1 2
1 3
2 3
1 2 3
1
2
3
1 2 4 5
1 3 4 6
2 3 4 7
"""


def test_load_shipped_code(hamming, hamming_alist_path) -> None:
    assert read_alist_file(hamming_alist_path) == hamming


def test_save_matches_reference_text(hamming) -> None:
    assert save_alist(hamming) == HAMMING_ALIST


def test_write_then_read(tmp_path, small_peg) -> None:
    path = tmp_path / 'nested' / 'peg.alist'
    write_alist_file(small_peg, path)
    assert read_alist_file(path) == small_peg


def test_zero_padding_and_blank_lines_ignored(hamming) -> None:
    padded = """7 3

3 4
2 2 2 3 1 1 1
4 4 4
1 2 0
1 3 0
2 3 0
1 2 3
1 0 0
2 0 0
3 0 0
1 2 4 5
1 3 4 6
2 3 4 7
"""
    assert load_alist(padded) == hamming


def test_wrong_max_degrees_only_warn(hamming, caplog) -> None:
    text = HAMMING_ALIST.replace("3 4\n", "5 5\n", 1)
    assert load_alist(text) == hamming
    assert "disagrees" in caplog.text


def _with_line(text: str, line_no: int, replacement: str) -> str:
    lines = text.splitlines()
    lines[line_no - 1] = replacement
    return "\n".join(lines) + "\n"


@pytest.mark.parametrize('line_no, replacement, expected_line, message', [
    (1, "7", 1, "malformed header"),
    (1, "7 x", 1, "header"),
    (3, "2 2 2 3 1 1", 3, "expected 7 column degrees"),
    (4, "4 4", 4, "expected 3 row degrees"),
    (5, "1 9", 5, "out-of-range index 9"),
    (5, "1 1", 5, "duplicate edge"),
    (8, "1 2", 8, "column 4 lists 2 checks"),
    (12, "1 2 4 9", 12, "out-of-range index 9"),
])
def test_malformed_documents_report_line(line_no, replacement, expected_line, message) -> None:
    with pytest.raises(AlistFormatError, match=message) as excinfo:
        load_alist(_with_line(HAMMING_ALIST, line_no, replacement))
    assert excinfo.value.line == expected_line
    assert str(excinfo.value).startswith(f"line {expected_line}: ")


def test_row_and_column_sections_disagree() -> None:
    # Column 5 claims check 2, row 1 still lists variable 5
    text = _with_line(HAMMING_ALIST, 9, "2")
    with pytest.raises(AlistFormatError, match="adjacency inconsistency") as excinfo:
        load_alist(text)
    assert excinfo.value.line == 12


def test_truncated_document() -> None:
    truncated = "\n".join(HAMMING_ALIST.splitlines()[:11]) + "\n"
    with pytest.raises(AlistFormatError, match="unexpected end of file, expected adjacency of row 1") as excinfo:
        load_alist(truncated)
    assert excinfo.value.line == 12


def test_missing_file(tmp_path) -> None:
    with pytest.raises(OSError):
        read_alist_file(tmp_path / 'absent.alist')
