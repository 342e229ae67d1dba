"""
P-matrix recognition and the reduction from interval singularity to P-MATRIX

For a nonsingular A and Δ >= 0, write Δ = R S^T with one rank-one column pair
per nonzero entry of Δ. The interval [A, A + Δ] is singular iff
psi(p) = det(I + A^-1 R D(p) S^T) <= 0 at some p in {0,1}^m, and psi(p) for
p != 0 is the principal minor of M = I + S^T A^-1 R on the support of p.
So the interval is singular iff M is not a P-matrix.
"""

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import List, NamedTuple, Optional, Sequence, Tuple

from pmatrixcheck.core.exact_linalg import (
    RationalLike,
    RationalMatrix,
    ShapeError,
    det,
    inverse,
    principal_minor,
    to_rational,
)
from pmatrixcheck.core.interval import (
    MatrixInterval,
    NegativeRadiusError,
    SingularityDecision,
    diag_of,
)
from pmatrixcheck.schemas import NonPCertificate, SingularityCertificate
from pmatrixcheck.utils.sweep import get_sweep_executor

logger = logging.getLogger(__name__)

# Emitted for intervals whose lower corner is already singular
NON_P_SENTINEL = RationalMatrix.from_rows([[-1]])


class PMatrixDecision(NamedTuple):
    answer: bool
    certificate: Optional[NonPCertificate]


@dataclass(frozen=True)
class RSFactorization:
    """Δ = R S^T with column k of R equal to Δ_ij e_i and column k of S equal to e_j"""

    R: RationalMatrix
    S: RationalMatrix
    column_map: Tuple[Tuple[int, int], ...]  # 1-based (i, j) per column

    @property
    def m(self) -> int:
        return len(self.column_map)


def is_p_matrix(M: RationalMatrix) -> PMatrixDecision:
    """
    Are all principal minors of M positive?

    Index sets are tried by size, then lexicographically; the first
    non-positive minor found is returned as the certificate.

    Raises:
        ShapeError: if M is not square
    """
    if not M.is_square:
        raise ShapeError(f"P-matrix test needs a square matrix, got {M.rows}x{M.cols}")
    n = M.rows
    executor = get_sweep_executor()

    for size in range(1, n + 1):
        total = comb(n, size)
        for found in executor.map_chunks(_first_nonpositive_minor, total, M, size):
            if found is not None:
                indices, value = found
                logger.debug(f"Principal minor on {list(indices)} is {value}")
                return PMatrixDecision(
                    False, NonPCertificate(index_set=list(indices), minor_value=value)
                )

    return PMatrixDecision(True, None)


def _first_nonpositive_minor(
    M: RationalMatrix, size: int, start: int, stop: int
) -> Optional[Tuple[Tuple[int, ...], Fraction]]:
    subsets = itertools.islice(itertools.combinations(range(1, M.rows + 1), size), start, stop)
    for indices in subsets:
        value = principal_minor(M, indices)
        if value <= 0:
            return indices, value
    return None


def verify_non_p_certificate(
    M: RationalMatrix, certificate: NonPCertificate
) -> Tuple[bool, str]:
    """Recompute the claimed minor and check that it is not positive"""
    try:
        value = principal_minor(M, certificate.index_set)
    except ValueError as e:
        return False, str(e)
    if value != certificate.minor_value:
        return False, f"minor is {value}, certificate claims {certificate.minor_value}"
    if value > 0:
        return False, f"minor {value} is positive"
    return True, f"principal minor on {certificate.index_set} is {value} <= 0"


def build_rs(delta: RationalMatrix, prune: bool = True) -> RSFactorization:
    """
    Rank-one slices of Δ in row-major (i, j) order.

    With prune=True (the default) entries Δ_ij = 0 get no column: their slice
    is the zero matrix, which adds an identity row and column to the Coxson
    matrix and does not change its P-matrix verdict.

    Raises:
        NegativeRadiusError: if Δ has a negative entry
    """
    if not delta.is_square:
        raise ShapeError(f"Δ must be square, got {delta.rows}x{delta.cols}")
    if not delta.is_nonnegative():
        raise NegativeRadiusError("Δ has a negative entry")
    n = delta.rows

    column_map = tuple(
        (i + 1, j + 1)
        for i in range(n)
        for j in range(n)
        if not prune or delta[i, j] != 0
    )
    m = len(column_map)
    zero, one = Fraction(0), Fraction(1)
    R_rows: List[List[Fraction]] = [[zero] * m for _ in range(n)]
    S_rows: List[List[Fraction]] = [[zero] * m for _ in range(n)]
    for k, (i, j) in enumerate(column_map):
        R_rows[i - 1][k] = delta[i - 1, j - 1]
        S_rows[j - 1][k] = one

    return RSFactorization(
        R=RationalMatrix.from_rows(R_rows, cols=m),
        S=RationalMatrix.from_rows(S_rows, cols=m),
        column_map=column_map,
    )


def coxson_matrix(
    A: RationalMatrix, delta: RationalMatrix, prune: bool = True
) -> RationalMatrix:
    """
    M = I_m + S^T A^-1 R.

    [A, A + Δ] is singular iff M is not a P-matrix.

    Raises:
        SingularMatrixError: if A is singular
        NegativeRadiusError: if Δ has a negative entry
    """
    if A.shape != delta.shape:
        raise ShapeError(f"A {A.shape} and Δ {delta.shape} differ in shape")
    rs = build_rs(delta, prune=prune)
    A_inverse = inverse(A)
    return RationalMatrix.identity(rs.m) + rs.S.T @ A_inverse @ rs.R


def psi(
    A: RationalMatrix,
    rs: RSFactorization,
    p: Sequence[RationalLike],
    A_inverse: Optional[RationalMatrix] = None,
) -> Fraction:
    """
    det(I_n + A^-1 R D(p) S^T), for p in [0,1]^m.

    Always evaluated on the n x n side, as det(I_n + F S^T) with
    F = A^-1 R D(p).

    Args:
        A: nonsingular n x n matrix
        rs: factorization of Δ
        p: one weight per factorization column
        A_inverse: precomputed inverse of A, for repeated calls

    Raises:
        ShapeError: if p has the wrong length
        ValueError: if some p_k is outside [0, 1]
    """
    if len(p) != rs.m:
        raise ShapeError(f"p has length {len(p)}, factorization has {rs.m} columns")
    weights = [to_rational(v) for v in p]
    if any(w < 0 or w > 1 for w in weights):
        raise ValueError("Every p_k must lie in [0, 1]")
    if A_inverse is None:
        A_inverse = inverse(A)
    F = A_inverse @ rs.R @ diag_of(weights)
    return det(RationalMatrix.identity(A.rows) + F @ rs.S.T)


def find_nonpositive_vertex(
    A: RationalMatrix, rs: RSFactorization
) -> Optional[Tuple[Tuple[int, ...], Fraction]]:
    """
    First p in {0,1}^m (by support size, then lexicographic support) with psi(p) <= 0.

    Returns None when psi is positive at every vertex, i.e. when [A, A + Δ]
    is nonsingular.
    """
    A_inverse = inverse(A)
    m = rs.m
    for size in range(1, m + 1):
        for support in itertools.combinations(range(m), size):
            p = tuple(1 if k in support else 0 for k in range(m))
            value = psi(A, rs, p, A_inverse=A_inverse)
            if value <= 0:
                return p, value
    return None


def corner_form(iv: MatrixInterval) -> Tuple[RationalMatrix, RationalMatrix]:
    """[C - Δ, C + Δ] as [A', A' + Δ'] with A' = C - Δ and Δ' = 2Δ"""
    return iv.lower, iv.radius.scale(2)


def is_singular_psi(iv: MatrixInterval) -> SingularityDecision:
    """
    Decide interval singularity from the signs of psi at the vertices of [0,1]^m.

    Works on the corner form [A', A' + Δ']. When the first vertex p with
    psi(p) <= 0 is found, dropping its last support column q gives a smaller
    support, checked earlier, with psi > 0. psi is affine in p_q, so the root
    on that edge is exact and A' + R D(p) S^T there is a singular member of
    the interval.

    Raises:
        NegativeRadiusError: if the radius has a negative entry
    """
    corner, width = corner_form(iv)
    rs = build_rs(width)
    if det(corner) == 0:
        return SingularityDecision(True, SingularityCertificate.from_matrix(corner))

    A_inverse = inverse(corner)
    found = find_nonpositive_vertex(corner, rs)
    if found is None:
        logger.debug(f"psi is positive at all {2**rs.m} vertices")
        return SingularityDecision(False, None)

    p, value = found
    q = max(k for k, bit in enumerate(p) if bit)
    base = tuple(0 if k == q else bit for k, bit in enumerate(p))
    start = psi(corner, rs, base, A_inverse=A_inverse)
    root = start / (start - value)
    point = tuple(root if k == q else Fraction(bit) for k, bit in enumerate(p))
    logger.debug(f"psi{p} = {value}; root p_{q + 1} = {root} on the edge from {base}")

    B = corner + rs.R @ diag_of(point) @ rs.S.T
    return SingularityDecision(True, SingularityCertificate.from_matrix(B))


def interval_to_pmatrix_instance(iv: MatrixInterval) -> RationalMatrix:
    """
    A matrix that is a P-matrix iff the interval is nonsingular.

    A singular lower corner already makes the interval singular; the fixed
    non-P matrix [[-1]] is returned for it.
    """
    corner, width = corner_form(iv)
    if det(corner) == 0:
        logger.info("Interval corner is singular; emitting the 1x1 non-P matrix")
        return NON_P_SENTINEL
    M = coxson_matrix(corner, width)
    logger.debug(f"INTERVAL -> P-MATRIX: {iv.n}x{iv.n} interval gives a {M.rows}x{M.rows} matrix")
    return M
