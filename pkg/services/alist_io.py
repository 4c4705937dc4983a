import logging
from pathlib import Path
from typing import Iterator, List, Set, Tuple

from models.code_graph import CodeGraph
from models.errors import AlistFormatError

logger = logging.getLogger(__name__)


def _numbered_lines(text: str) -> Iterator[Tuple[int, List[str]]]:
    """Yield (1-based line number, tokens) for every non-blank line"""
    for number, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split()
        if tokens:
            yield number, tokens


def _ints(line_no: int, tokens: List[str], what: str) -> List[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise AlistFormatError(line_no, f"non-integer token in {what}")


def _next(lines: Iterator[Tuple[int, List[str]]], last_line: int, what: str) -> Tuple[int, List[str]]:
    try:
        return next(lines)
    except StopIteration:
        raise AlistFormatError(last_line + 1, f"unexpected end of file, expected {what}")


def load_alist(text: str) -> CodeGraph:
    """
    Parse an alist document into a CodeGraph.

    Zero entries in the adjacency sections are padding and are skipped. The
    row and column sections must describe the same edge set.
    """
    lines = _numbered_lines(text)

    line_no, tokens = _next(lines, 0, "header 'N M'")
    header = _ints(line_no, tokens, "header")
    if len(header) != 2 or header[0] < 1 or header[1] < 1:
        raise AlistFormatError(line_no, "malformed header, expected two positive integers 'N M'")
    n_variables, n_checks = header

    line_no, tokens = _next(lines, line_no, "max degrees")
    max_degrees = _ints(line_no, tokens, "max degrees")
    if len(max_degrees) != 2:
        raise AlistFormatError(line_no, "malformed max degree line, expected 'max_col_deg max_row_deg'")

    line_no, tokens = _next(lines, line_no, "column degrees")
    col_degrees = _ints(line_no, tokens, "column degrees")
    if len(col_degrees) != n_variables:
        raise AlistFormatError(line_no, f"expected {n_variables} column degrees, got {len(col_degrees)}")

    line_no, tokens = _next(lines, line_no, "row degrees")
    row_degrees = _ints(line_no, tokens, "row degrees")
    if len(row_degrees) != n_checks:
        raise AlistFormatError(line_no, f"expected {n_checks} row degrees, got {len(row_degrees)}")

    if max(col_degrees) != max_degrees[0] or max(row_degrees) != max_degrees[1]:
        logger.warning(
            f"Alist max degree line ({max_degrees[0]} {max_degrees[1]}) disagrees with "
            f"degree lists ({max(col_degrees)} {max(row_degrees)}), using the lists"
        )

    column_edges: Set[Tuple[int, int]] = set()
    for v in range(n_variables):
        line_no, tokens = _next(lines, line_no, f"adjacency of column {v + 1}")
        entries = [i for i in _ints(line_no, tokens, "column adjacency") if i != 0]
        if len(entries) != col_degrees[v]:
            raise AlistFormatError(
                line_no, f"column {v + 1} lists {len(entries)} checks, degree says {col_degrees[v]}"
            )
        for c in entries:
            if not 1 <= c <= n_checks:
                raise AlistFormatError(line_no, f"out-of-range index {c} in column {v + 1} (M={n_checks})")
            if (c - 1, v) in column_edges:
                raise AlistFormatError(line_no, f"duplicate edge ({c}, {v + 1})")
            column_edges.add((c - 1, v))

    rows: List[Tuple[int, ...]] = []
    row_lines: List[int] = []
    for c in range(n_checks):
        line_no, tokens = _next(lines, line_no, f"adjacency of row {c + 1}")
        entries = [i for i in _ints(line_no, tokens, "row adjacency") if i != 0]
        if len(entries) != row_degrees[c]:
            raise AlistFormatError(
                line_no, f"row {c + 1} lists {len(entries)} variables, degree says {row_degrees[c]}"
            )
        for v in entries:
            if not 1 <= v <= n_variables:
                raise AlistFormatError(line_no, f"out-of-range index {v} in row {c + 1} (N={n_variables})")
        if len(set(entries)) != len(entries):
            raise AlistFormatError(line_no, f"duplicate edge in row {c + 1}")
        rows.append(tuple(v - 1 for v in entries))
        row_lines.append(line_no)

    row_edges = {(c, v) for c, row in enumerate(rows) for v in row}
    if row_edges != column_edges:
        missing = sorted(row_edges ^ column_edges)[0]
        c = missing[0]
        raise AlistFormatError(
            row_lines[c],
            f"adjacency inconsistency: edge ({c + 1}, {missing[1] + 1}) appears in only one of the row and column sections",
        )

    try:
        graph = CodeGraph(n_variables=n_variables, n_checks=n_checks, check_adjacency=tuple(rows))
    except ValueError as e:
        raise AlistFormatError(line_no, str(e))

    logger.debug(f"Loaded alist graph N={graph.n_variables} M={graph.n_checks} E={graph.n_edges}")
    return graph


def save_alist(graph: CodeGraph) -> str:
    """Serialize without zero padding; indices are 1-based"""
    out = [
        f"{graph.n_variables} {graph.n_checks}",
        f"{graph.max_variable_degree} {graph.max_check_degree}",
        " ".join(str(d) for d in graph.variable_degrees),
        " ".join(str(d) for d in graph.check_degrees),
    ]
    out.extend(" ".join(str(c + 1) for c in col) for col in graph.variable_adjacency)
    out.extend(" ".join(str(v + 1) for v in row) for row in graph.check_adjacency)
    return "\n".join(out) + "\n"


def read_alist_file(path) -> CodeGraph:
    text = Path(path).read_text()
    graph = load_alist(text)
    logger.info(f"Loaded code from {path}: N={graph.n_variables}, M={graph.n_checks}, E={graph.n_edges}")
    return graph


def write_alist_file(graph: CodeGraph, path) -> None:
    target = Path(path)
    if target.parent and not target.parent.exists():
        target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(save_alist(graph))
    logger.info(f"Wrote alist to {path}")
