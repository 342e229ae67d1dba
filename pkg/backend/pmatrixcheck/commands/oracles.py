"""
Decision and reduction commands for the single problems of the chain:
maxcut, rnorm, interval-sing, pmatrix and the three reduce-* commands.
"""

import logging
from pathlib import Path
from typing import Optional, Union

from pmatrixcheck.commands import ExitCode
from pmatrixcheck.core.exact_linalg import format_rational
from pmatrixcheck.core.graph_maxcut import decide_max_cut, graph_to_rnorm_instance
from pmatrixcheck.core.interval import is_singular_vertex_sign
from pmatrixcheck.core.pmatrix import (
    interval_to_pmatrix_instance,
    is_p_matrix,
    is_singular_psi,
)
from pmatrixcheck.core.rnorm import r_norm, rnorm_to_interval_instance
from pmatrixcheck.formats import (
    FormatError,
    format_interval,
    format_matrix,
    parse_graph,
    parse_interval,
    parse_matrix,
    parse_rational,
    read_text,
)
from pmatrixcheck.schemas import dump_certificate

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def verdict_line(answer: bool) -> str:
    return "YES" if answer else "NO"


def signs_text(signs) -> str:
    return " ".join(f"{s:+d}" for s in signs)


def write_text(path: PathLike, text: str) -> None:
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as e:
        raise FormatError(f"Cannot write {path}: {e.strerror or e}") from e
    logger.info(f"Wrote {path}")


def write_certificate(path: Optional[PathLike], certificate) -> None:
    if path is None or certificate is None:
        return
    write_text(path, dump_certificate(certificate) + "\n")


def _emit_instance(text: str, out: Optional[PathLike]) -> None:
    if out is None:
        print(text, end="")
    else:
        write_text(out, text)


def cmd_maxcut(graph_file: PathLike, K: int, cert_out: Optional[PathLike] = None) -> int:
    """Is there a cut of size at least K?"""
    G = parse_graph(read_text(graph_file))
    logger.info(f"maxcut: n={G.number_of_nodes()}, |E|={G.number_of_edges()}, K={K}")

    answer, certificate = decide_max_cut(G, K)
    print(verdict_line(answer))
    if certificate is not None:
        print(f"max_cut={certificate.cut_size}")
        print("side=" + " ".join(str(label) for label in certificate.side))
        write_certificate(cert_out, certificate)
    return ExitCode.OK if answer else ExitCode.NO


def cmd_rnorm(matrix_file: PathLike, K: str, cert_out: Optional[PathLike] = None) -> int:
    """Is r(A) >= K? The witness attaining r(A) is printed either way"""
    A = parse_matrix(read_text(matrix_file))
    threshold = parse_rational(K)
    logger.info(f"rnorm: {A.rows}x{A.cols} matrix, K={threshold}")

    witness = r_norm(A)
    answer = witness.value >= threshold
    print(verdict_line(answer))
    print(f"r={format_rational(witness.value)}")
    print(f"y={signs_text(witness.y)}")
    print(f"z={signs_text(witness.z)}")
    if answer:
        write_certificate(cert_out, witness)
    return ExitCode.OK if answer else ExitCode.NO


def cmd_interval_sing(
    interval_file: PathLike, cert_out: Optional[PathLike] = None, method: str = "vertex"
) -> int:
    """Does the interval contain a singular matrix? method is vertex or psi"""
    iv = parse_interval(read_text(interval_file))
    logger.info(f"interval-sing: order {iv.n}, method={method}")

    decide = is_singular_psi if method == "psi" else is_singular_vertex_sign
    decision = decide(iv)
    print(verdict_line(decision.answer))
    if decision.certificate is not None:
        print("singular matrix inside the interval:")
        print(format_matrix(decision.certificate.matrix()), end="")
        write_certificate(cert_out, decision.certificate)
    return ExitCode.OK if decision.answer else ExitCode.NO


def cmd_pmatrix(matrix_file: PathLike, cert_out: Optional[PathLike] = None) -> int:
    """Is the matrix a P-matrix?"""
    M = parse_matrix(read_text(matrix_file))
    logger.info(f"pmatrix: {M.rows}x{M.cols} matrix")

    decision = is_p_matrix(M)
    print(verdict_line(decision.answer))
    if decision.certificate is not None:
        print(decision.certificate.to_text())
        write_certificate(cert_out, decision.certificate)
    return ExitCode.OK if decision.answer else ExitCode.NO


def cmd_reduce_maxcut(graph_file: PathLike, K: int, out: Optional[PathLike] = None) -> int:
    """(G, K) -> (A, threshold); the threshold goes on the last stdout line"""
    G = parse_graph(read_text(graph_file))
    instance = graph_to_rnorm_instance(G, K)
    _emit_instance(format_matrix(instance.matrix), out)
    print(f"threshold={format_rational(instance.threshold)} ell={instance.ell}")
    return ExitCode.OK


def cmd_reduce_rnorm(matrix_file: PathLike, K: str, out: Optional[PathLike] = None) -> int:
    """(A, K) -> [A^-1 - J/K, A^-1 + J/K]"""
    A = parse_matrix(read_text(matrix_file))
    iv = rnorm_to_interval_instance(A, parse_rational(K))
    _emit_instance(format_interval(iv), out)
    return ExitCode.OK


def cmd_reduce_interval(interval_file: PathLike, out: Optional[PathLike] = None) -> int:
    """Interval -> matrix that is a P-matrix iff the interval is nonsingular"""
    iv = parse_interval(read_text(interval_file))
    M = interval_to_pmatrix_instance(iv)
    _emit_instance(format_matrix(M), out)
    return ExitCode.OK
