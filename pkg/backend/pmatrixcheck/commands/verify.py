"""
Independent certificate checking

A certificate is re-checked against its instance with exact arithmetic:
cut sizes are recounted, z^T A y is recomputed, det(B) and interval
containment are re-evaluated, and the claimed principal minor is recomputed.
"""

import logging
from pathlib import Path
from typing import Optional, Tuple, Union

from pydantic import ValidationError

from pmatrixcheck.commands import ExitCode
from pmatrixcheck.core.graph_maxcut import verify_cut_certificate
from pmatrixcheck.core.interval import verify_singular_certificate
from pmatrixcheck.core.pmatrix import verify_non_p_certificate
from pmatrixcheck.core.rnorm import verify_norm_witness
from pmatrixcheck.formats import (
    parse_graph,
    parse_interval,
    parse_matrix,
    parse_rational,
    read_text,
)
from pmatrixcheck.schemas import CERTIFICATE_KINDS, load_certificate
from pmatrixcheck.utils.error_formatter import create_certificate_error_message

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def verify_certificate(
    kind: str, instance_text: str, certificate_text: str, K: Optional[str] = None
) -> Tuple[bool, str]:
    """
    Check a certificate of the given kind against an instance.

    The instance text is a graph for "cut", a matrix for "norm-witness" and
    "non-p-minor", and an interval for "singular-matrix". K, when given,
    is the decision threshold for "cut" and "norm-witness".
    The certificate text may also be a pipeline report written by
    `pipeline --cert-out`; its stage certificate of the given kind is used.

    Returns:
        (valid, reason)

    Raises:
        FormatError: if the instance text is malformed
        ValueError: if kind is unknown
    """
    if kind not in CERTIFICATE_KINDS:
        raise ValueError(f"Unknown certificate kind {kind!r}; expected one of {', '.join(CERTIFICATE_KINDS)}")

    try:
        certificate = load_certificate(certificate_text, kind)
    except ValidationError as e:
        return False, create_certificate_error_message(e)
    except ValueError as e:
        return False, f"malformed certificate: {e}"

    if certificate.kind != kind:
        return False, f"certificate is of kind {certificate.kind!r}, not {kind!r}"

    threshold = parse_rational(K) if K is not None else None
    if kind == "cut":
        return verify_cut_certificate(parse_graph(instance_text), certificate, threshold)
    if kind == "norm-witness":
        return verify_norm_witness(parse_matrix(instance_text), certificate, threshold)
    if kind == "singular-matrix":
        return verify_singular_certificate(parse_interval(instance_text), certificate)
    return verify_non_p_certificate(parse_matrix(instance_text), certificate)


def cmd_verify_certificate(
    kind: str, instance_file: PathLike, cert_file: PathLike, K: Optional[str] = None
) -> int:
    valid, reason = verify_certificate(kind, read_text(instance_file), read_text(cert_file), K)
    logger.info(f"verify {kind}: {'valid' if valid else 'invalid'}")
    print(f"VALID: {reason}" if valid else f"INVALID: {reason}")
    return ExitCode.OK if valid else ExitCode.NO
