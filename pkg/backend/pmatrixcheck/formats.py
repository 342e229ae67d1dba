"""
Text formats for matrices, graphs and matrix intervals

Matrix:    first line "rows cols", then rows*cols whitespace-separated entries,
           each "p" or "p/q" with q > 0.
Graph:     first line "n m", then m lines "u v" with 1 <= u < v <= n.
Interval:  a "center" header line followed by a matrix and a "radius" header
           line followed by a matrix, or the same with "lower" / "upper".
"""

from fractions import Fraction
from pathlib import Path
from typing import List, Tuple, Union

import networkx as nx

from pmatrixcheck.core.exact_linalg import RationalMatrix, format_rational, to_rational
from pmatrixcheck.core.graph_maxcut import GraphError, build_graph
from pmatrixcheck.core.interval import MatrixInterval

PathLike = Union[str, Path]


class FormatError(ValueError):
    """Malformed input text"""


def parse_rational(token: str) -> Fraction:
    try:
        return to_rational(token)
    except ValueError as e:
        raise FormatError(str(e)) from e


def _tokens(text: str) -> List[str]:
    return text.split()


def _parse_matrix_tokens(tokens: List[str], what: str = "matrix") -> Tuple[RationalMatrix, List[str]]:
    if len(tokens) < 2:
        raise FormatError(f"{what}: missing 'rows cols' header")
    try:
        rows, cols = int(tokens[0]), int(tokens[1])
    except ValueError:
        raise FormatError(f"{what}: header must be two integers, got {tokens[:2]}")
    if rows < 0 or cols < 0:
        raise FormatError(f"{what}: negative dimensions {rows}x{cols}")
    count = rows * cols
    body = tokens[2 : 2 + count]
    if len(body) < count:
        raise FormatError(f"{what}: expected {count} entries, found {len(body)}")
    entries = tuple(parse_rational(token) for token in body)
    return RationalMatrix(rows, cols, entries), tokens[2 + count :]


def parse_matrix(text: str) -> RationalMatrix:
    matrix, rest = _parse_matrix_tokens(_tokens(text))
    if rest:
        raise FormatError(f"matrix: {len(rest)} unexpected trailing tokens")
    return matrix


def format_matrix(M: RationalMatrix) -> str:
    lines = [f"{M.rows} {M.cols}"]
    lines.extend(
        " ".join(format_rational(x) for x in M.row(i)) for i in range(M.rows)
    )
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> nx.Graph:
    lines = [line.split() for line in text.splitlines() if line.strip()]
    if not lines or len(lines[0]) != 2:
        raise FormatError("graph: missing 'n m' header")
    try:
        n, m = int(lines[0][0]), int(lines[0][1])
        edges = [(int(u), int(v)) for u, v in lines[1:]]
    except ValueError:
        raise FormatError("graph: every line must hold exactly two integers")
    if len(edges) != m:
        raise FormatError(f"graph: header announces {m} edges, found {len(edges)}")
    for u, v in edges:
        if not u < v:
            raise FormatError(f"graph: edge '{u} {v}' must be listed with u < v")
    try:
        return build_graph(n, edges)
    except GraphError as e:
        raise FormatError(f"graph: {e}") from e


def parse_interval(text: str) -> MatrixInterval:
    tokens = _tokens(text)
    tagged = {}
    while tokens:
        tag = tokens[0].lower()
        if tag not in ("center", "radius", "lower", "upper"):
            raise FormatError(f"interval: expected a center/radius/lower/upper tag, got {tokens[0]!r}")
        if tag in tagged:
            raise FormatError(f"interval: duplicate '{tag}' block")
        tagged[tag], tokens = _parse_matrix_tokens(tokens[1:], what=tag)

    try:
        if set(tagged) == {"center", "radius"}:
            return MatrixInterval(tagged["center"], tagged["radius"])
        if set(tagged) == {"lower", "upper"}:
            return MatrixInterval.from_bounds(tagged["lower"], tagged["upper"])
    except ValueError as e:
        raise FormatError(f"interval: {e}") from e
    raise FormatError("interval: need 'center' and 'radius', or 'lower' and 'upper'")


def format_interval(iv: MatrixInterval) -> str:
    return "center\n" + format_matrix(iv.center) + "radius\n" + format_matrix(iv.radius)


def read_text(path: PathLike) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise FormatError(f"Cannot read {path}: {e.strerror or e}") from e
