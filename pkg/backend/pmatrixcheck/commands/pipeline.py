"""
End-to-end check of the reduction chain

    MAX CUT (G, K)  ->  R-NORM (A, threshold)  ->  INTERVAL [A^-1 - J/t, A^-1 + J/t]
                    ->  P-MATRIX (Coxson matrix of the interval)

Each stage asks its own oracle the question the reduction maps the previous
one to, so for a correct chain all verdicts are equal.
"""

import logging
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Union

import networkx as nx

from pmatrixcheck.commands import ExitCode
from pmatrixcheck.commands.oracles import verdict_line, write_text
from pmatrixcheck.config import config
from pmatrixcheck.core.exact_linalg import format_rational, rank
from pmatrixcheck.core.graph_maxcut import decide_max_cut, graph_to_rnorm_instance
from pmatrixcheck.core.interval import is_singular_rank1, is_singular_vertex_sign
from pmatrixcheck.core.pmatrix import interval_to_pmatrix_instance, is_p_matrix
from pmatrixcheck.core.rnorm import r_norm, rnorm_to_interval_instance
from pmatrixcheck.formats import format_interval, format_matrix, parse_graph, read_text
from pmatrixcheck.schemas import PipelineReport, StageReport

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def _maxcut_stage(G: nx.Graph, K: int) -> StageReport:
    answer, certificate = decide_max_cut(G, K)
    details = {}
    if certificate is not None:
        details["max_cut"] = str(certificate.cut_size)
        details["first_side"] = ",".join(str(v) for v in certificate.first_side)
    return StageReport(
        name="maxcut",
        problem=f"max cut >= {K}?",
        instance=f"graph n={G.number_of_nodes()} |E|={G.number_of_edges()}",
        verdict=answer,
        certificate=certificate,
        details=details,
    )


def run_pipeline(G: nx.Graph, K: int, max_n: Optional[int] = None) -> PipelineReport:
    """
    Run all four oracles on (G, K) and its reductions.

    The P-matrix stage is skipped when n exceeds max_n (default from config);
    its Coxson matrix has order n^2.

    Raises:
        ValueError: if K < 1
    """
    if K < 1:
        raise ValueError(f"The pipeline needs K >= 1, got {K}")
    max_n = config.PIPELINE_MAX_N if max_n is None else max_n
    n = G.number_of_nodes()
    logger.info(f"Pipeline: n={n}, |E|={G.number_of_edges()}, K={K}, max_n={max_n}")

    stages: List[StageReport] = [_maxcut_stage(G, K)]

    # MAX CUT -> R-NORM
    rnorm_instance = graph_to_rnorm_instance(G, K)
    A, threshold = rnorm_instance.matrix, rnorm_instance.threshold
    witness = r_norm(A)
    stages[0] = stages[0].model_copy(
        update={
            "reduction_output": format_matrix(A) + f"threshold={format_rational(threshold)}\n"
        }
    )
    rnorm_answer = witness.value >= threshold
    stages.append(
        StageReport(
            name="rnorm",
            problem=f"r(A) >= {format_rational(threshold)}?",
            instance=f"A = {rnorm_instance.ell}I - A(G), {n}x{n}",
            verdict=rnorm_answer,
            certificate=witness if rnorm_answer else None,
            details={
                "ell": str(rnorm_instance.ell),
                "threshold": format_rational(threshold),
                "r": format_rational(witness.value),
            },
        )
    )

    # R-NORM -> INTERVAL
    iv = rnorm_to_interval_instance(A, threshold)
    stages[1] = stages[1].model_copy(update={"reduction_output": format_interval(iv)})
    decision = is_singular_vertex_sign(iv)
    rank1_answer = is_singular_rank1(A, 1 / Fraction(threshold))
    stages.append(
        StageReport(
            name="interval",
            problem="interval contains a singular matrix?",
            instance=f"[A^-1 - J/{format_rational(threshold)}, A^-1 + J/{format_rational(threshold)}]",
            verdict=decision.answer,
            certificate=decision.certificate,
            details={
                "radius_rank": str(rank(iv.radius)),
                "rank1_closed_form": verdict_line(rank1_answer),
            },
        )
    )

    # INTERVAL -> P-MATRIX
    if n > max_n:
        logger.warning(
            f"Skipping the P-matrix stage: n={n} exceeds max_n={max_n} "
            f"(Coxson matrix would be {n * n}x{n * n})"
        )
        stages.append(
            StageReport(
                name="pmatrix",
                problem="Coxson matrix is not a P-matrix?",
                instance=f"order {n * n}",
                status="skipped",
            )
        )
    else:
        M = interval_to_pmatrix_instance(iv)
        stages[2] = stages[2].model_copy(update={"reduction_output": format_matrix(M)})
        p_decision = is_p_matrix(M)
        stages.append(
            StageReport(
                name="pmatrix",
                problem="Coxson matrix is not a P-matrix?",
                instance=f"M of order {M.rows}",
                verdict=not p_decision.answer,
                certificate=p_decision.certificate,
            )
        )

    disagreement = _first_disagreement(stages)
    if disagreement is None and rank1_answer != decision.answer:
        disagreement = (
            f"interval vertex oracle says {verdict_line(decision.answer)}, "
            f"rank-one closed form says {verdict_line(rank1_answer)}"
        )
    if disagreement:
        logger.error(f"Pipeline inconsistency: {disagreement}")

    return PipelineReport(
        vertices=n,
        edges=G.number_of_edges(),
        K=K,
        stages=stages,
        consistent=disagreement is None,
        disagreement=disagreement,
    )


def _first_disagreement(stages: List[StageReport]) -> Optional[str]:
    evaluated = [stage for stage in stages if stage.status == "ok"]
    for previous, current in zip(evaluated, evaluated[1:]):
        if previous.verdict != current.verdict:
            return (
                f"{previous.name} says {verdict_line(previous.verdict)}, "
                f"{current.name} says {verdict_line(current.verdict)}"
            )
    return None


def format_report(report: PipelineReport) -> str:
    lines = [f"pipeline n={report.vertices} |E|={report.edges} K={report.K}"]
    for stage in report.stages:
        verdict = "SKIPPED" if stage.status == "skipped" else verdict_line(stage.verdict)
        extra = " ".join(f"{key}={value}" for key, value in stage.details.items())
        lines.append(f"  {stage.name:<9} {verdict:<7} {stage.problem}  {extra}".rstrip())
    lines.append("CONSISTENT" if report.consistent else f"INCONSISTENT: {report.disagreement}")
    return "\n".join(lines) + "\n"


def cmd_pipeline(
    graph_file: PathLike,
    K: int,
    max_n: Optional[int] = None,
    cert_out: Optional[PathLike] = None,
) -> int:
    """Run the chain on a graph file; exit code 2 on any disagreement"""
    G = parse_graph(read_text(graph_file))
    report = run_pipeline(G, K, max_n=max_n)
    print(format_report(report), end="")
    if cert_out is not None:
        write_text(cert_out, report.model_dump_json(indent=2) + "\n")
    return ExitCode.OK if report.consistent else ExitCode.INCONSISTENT
