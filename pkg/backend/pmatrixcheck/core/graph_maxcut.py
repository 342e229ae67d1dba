"""
SIMPLE MAX CUT instances, the brute-force cut oracle, and the reduction to
MATRIX R-NORM.

Graphs are ``networkx.Graph`` objects on the vertex set 1..n.
"""

import itertools
import logging
from fractions import Fraction
from typing import Iterable, Iterator, NamedTuple, Optional, Sequence, Tuple

import networkx as nx

from pmatrixcheck.core.exact_linalg import (
    RationalMatrix,
    is_strictly_diagonally_dominant,
)
from pmatrixcheck.schemas import CutCertificate
from pmatrixcheck.utils.sweep import get_sweep_executor

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]


class GraphError(ValueError):
    """Invalid vertex, edge or graph"""


class RnormInstance(NamedTuple):
    matrix: RationalMatrix
    threshold: Fraction
    ell: int


def build_graph(n: int, edges: Iterable[Sequence[int]]) -> nx.Graph:
    """
    Build a simple undirected graph on vertices 1..n.

    Raises:
        GraphError: on self-loops, duplicate edges or vertices outside 1..n
    """
    if n < 0:
        raise GraphError(f"Vertex count must be non-negative, got {n}")
    G = nx.Graph()
    G.add_nodes_from(range(1, n + 1))
    for edge in edges:
        u, v = edge
        if u == v:
            raise GraphError(f"Self-loop at vertex {u}")
        if not (1 <= u <= n and 1 <= v <= n):
            raise GraphError(f"Edge {{{u},{v}}} has a vertex outside 1..{n}")
        if G.has_edge(u, v):
            raise GraphError(f"Duplicate edge {{{u},{v}}}")
        G.add_edge(u, v)
    return G


def sorted_edges(G: nx.Graph) -> Tuple[Edge, ...]:
    """Edges as (u, v) with u < v, sorted"""
    return tuple(sorted(tuple(sorted(e)) for e in G.edges()))


def all_graphs(n: int) -> Iterator[nx.Graph]:
    """Every simple graph on the labelled vertices 1..n"""
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    for mask in range(2 ** len(pairs)):
        yield build_graph(n, [pair for bit, pair in enumerate(pairs) if mask >> bit & 1])


def cut_size(G: nx.Graph, S: Iterable[int]) -> int:
    """
    Number of edges with exactly one end in S.

    Raises:
        GraphError: if S contains a vertex outside the graph
    """
    S = set(S)
    outside = S - set(G.nodes)
    if outside:
        raise GraphError(f"Vertices {sorted(outside)} are not in the graph")
    return int(nx.cut_size(G, S))


def _cut_of_sides(edges: Sequence[Edge], side: Sequence[int]) -> int:
    return sum(1 for u, v in edges if side[u - 1] != side[v - 1])


def _side_vector(n: int, index: int) -> Tuple[int, ...]:
    """The index-th side vector with vertex 1 fixed on side 1"""
    tail = tuple(
        2 if index >> (n - 2 - position) & 1 else 1 for position in range(n - 1)
    )
    return (1,) + tail


def _best_cut_in_chunk(
    n: int, edges: Tuple[Edge, ...], start: int, stop: int
) -> Tuple[int, Optional[Tuple[int, ...]]]:
    best_value, best_side = -1, None
    for index in range(start, stop):
        side = _side_vector(n, index)
        value = _cut_of_sides(edges, side)
        if value > best_value:
            best_value, best_side = value, side
    return best_value, best_side


def max_cut_bruteforce(G: nx.Graph) -> CutCertificate:
    """
    Maximum cut over all 2^(n-1) bipartitions.

    Vertex 1 is always on side 1. Among maximum cuts the lexicographically
    smallest side vector is returned.
    """
    n = G.number_of_nodes()
    if n < 1:
        raise GraphError("Max cut needs at least one vertex")
    edges = sorted_edges(G)

    chunk_results = get_sweep_executor().map_chunks(
        _best_cut_in_chunk, 2 ** (n - 1), n, edges
    )
    # Chunks come back in enumeration order; strict > keeps the earliest maximizer
    best_value, best_side = -1, None
    for value, side in chunk_results:
        if value > best_value:
            best_value, best_side = value, side

    logger.debug(f"Max cut of graph with n={n}, |E|={len(edges)}: {best_value}")
    return CutCertificate(side=list(best_side), cut_size=best_value)


def decide_max_cut(G: nx.Graph, K: int) -> Tuple[bool, Optional[CutCertificate]]:
    """Is there a cut of size at least K? K <= 0 is trivially true"""
    if G.number_of_nodes() == 0:
        return K <= 0, None
    certificate = max_cut_bruteforce(G)
    return certificate.cut_size >= K, certificate


def verify_cut_certificate(
    G: nx.Graph, certificate: CutCertificate, K: Optional[Fraction] = None
) -> Tuple[bool, str]:
    """Recount the cut edges; with K given the cut must also reach K"""
    n = G.number_of_nodes()
    if len(certificate.side) != n:
        return False, f"side has {len(certificate.side)} labels, graph has {n} vertices"
    actual = _cut_of_sides(sorted_edges(G), certificate.side)
    if actual != certificate.cut_size:
        return False, f"partition cuts {actual} edges, certificate claims {certificate.cut_size}"
    if K is not None and actual < K:
        return False, f"cut of size {actual} is below K = {K}"
    return True, f"partition cuts {actual} edges"


def adjacency_matrix(G: nx.Graph) -> RationalMatrix:
    n = G.number_of_nodes()
    rows = [[0] * n for _ in range(n)]
    for u, v in G.edges():
        rows[u - 1][v - 1] = rows[v - 1][u - 1] = 1
    return RationalMatrix.from_rows(rows, cols=n)


def graph_to_rnorm_instance(G: nx.Graph, K: int) -> RnormInstance:
    """
    Reduce (G, K) to (A, threshold) with max cut >= K  <=>  r(A) >= threshold.

    A = l*I - A(G) with l = 2|E| + 1, and threshold = n*l - 2|E| + 4K.

    Raises:
        ValueError: if K < 1
    """
    if K < 1:
        raise ValueError(f"The reduction needs a positive integer K, got {K}")
    n = G.number_of_nodes()
    m = G.number_of_edges()
    ell = 2 * m + 1
    A = RationalMatrix.identity(n).scale(ell) - adjacency_matrix(G)
    threshold = Fraction(n * ell - 2 * m + 4 * K)

    if not is_strictly_diagonally_dominant(A):
        # l > max degree always holds, so this is a programming error
        raise AssertionError("Reduction matrix lost strict diagonal dominance")

    logger.debug(f"MAX CUT -> R-NORM: n={n}, |E|={m}, l={ell}, threshold={threshold}")
    return RnormInstance(matrix=A, threshold=threshold, ell=ell)


def quadratic_value(A: RationalMatrix, y: Sequence[int]) -> Fraction:
    """y^T A y"""
    Ay = A.apply(y)
    return sum((Fraction(yi) * v for yi, v in zip(y, Ay)), Fraction(0))
