"""
The r-norm r(A) = max z^T A y over sign vectors y, z, and the reduction
from MATRIX R-NORM to interval singularity.
"""

import logging
from fractions import Fraction
from typing import Optional, Tuple

from pmatrixcheck.core.exact_linalg import (
    RationalLike,
    RationalMatrix,
    ShapeError,
    SingularMatrixError,
    bilinear,
    det,
    inverse,
    sign_vector_at,
    sign_vectors,
    to_rational,
)
from pmatrixcheck.core.interval import MatrixInterval
from pmatrixcheck.schemas import NormWitness
from pmatrixcheck.utils.sweep import get_sweep_executor

logger = logging.getLogger(__name__)


def _best_y(A: RationalMatrix, z: Tuple[int, ...]) -> Tuple[Tuple[int, ...], Fraction]:
    """For fixed z the best y takes the sign of each entry of z^T A (0 -> +1)"""
    n = A.rows
    column_sums = [
        sum((z[i] * A[i, j] for i in range(n)), Fraction(0)) for j in range(n)
    ]
    y = tuple(1 if s >= 0 else -1 for s in column_sums)
    return y, sum((abs(s) for s in column_sums), Fraction(0))


def _best_in_chunk(
    A: RationalMatrix, start: int, stop: int
) -> Optional[Tuple[Fraction, Tuple[int, ...], Tuple[int, ...]]]:
    best = None
    for index in range(start, stop):
        z = sign_vector_at(A.rows, index)
        y, value = _best_y(A, z)
        if best is None or value > best[0]:
            best = (value, y, z)
    return best


def r_norm(A: RationalMatrix) -> NormWitness:
    """
    r(A) with a witness pair.

    Only z is enumerated (2^n vectors); the inner maximum over y is taken
    coordinatewise. The witness is the first maximizer in z order.

    Raises:
        ShapeError: if A is not square
    """
    if not A.is_square:
        raise ShapeError(f"r-norm needs a square matrix, got {A.rows}x{A.cols}")
    n = A.rows
    if n == 0:
        return NormWitness(y=[], z=[], value=Fraction(0))

    chunks = get_sweep_executor().map_chunks(_best_in_chunk, 2**n, A)
    best = None
    for result in chunks:
        if result is not None and (best is None or result[0] > best[0]):
            best = result

    value, y, z = best
    logger.debug(f"r-norm of {n}x{n} matrix: {value}")
    return NormWitness(y=list(y), z=list(z), value=value)


def r_norm_exhaustive(A: RationalMatrix) -> Fraction:
    """r(A) by the full 4^n enumeration of (y, z)"""
    if not A.is_square:
        raise ShapeError(f"r-norm needs a square matrix, got {A.rows}x{A.cols}")
    n = A.rows
    return max(
        (bilinear(A, z, y) for z in sign_vectors(n) for y in sign_vectors(n)),
        default=Fraction(0),
    )


def decide_r_norm(
    A: RationalMatrix, K: RationalLike
) -> Tuple[bool, Optional[NormWitness]]:
    """Is r(A) >= K? The witness is returned only on a YES answer"""
    witness = r_norm(A)
    if witness.value >= to_rational(K):
        return True, witness
    return False, None


def verify_norm_witness(
    A: RationalMatrix, witness: NormWitness, K: Optional[RationalLike] = None
) -> Tuple[bool, str]:
    """
    Recompute z^T A y for the witness.

    With K given, the witness must also show r(A) >= K.
    """
    if not A.is_square:
        return False, f"A is {A.rows}x{A.cols}, not square"
    if len(witness.y) != A.rows:
        return False, f"witness has length {len(witness.y)}, A is {A.rows}x{A.rows}"
    value = bilinear(A, witness.z, witness.y)
    if value != witness.value:
        return False, f"z^T A y = {value}, witness claims {witness.value}"
    if K is not None and value < to_rational(K):
        return False, f"z^T A y = {value} is below K = {to_rational(K)}"
    return True, f"z^T A y = {value}"


def rnorm_to_interval_instance(A: RationalMatrix, K: RationalLike) -> MatrixInterval:
    """
    [A^-1 - J/K, A^-1 + J/K], singular iff r(A) >= K.

    Raises:
        SingularMatrixError: if A is singular
        ValueError: if K <= 0
    """
    K = to_rational(K)
    if K <= 0:
        raise ValueError(f"The reduction needs K > 0, got {K}")
    if not A.is_square:
        raise ShapeError(f"Need a square matrix, got {A.rows}x{A.cols}")
    if det(A) == 0:
        raise SingularMatrixError("R-NORM -> INTERVAL needs a nonsingular matrix")

    n = A.rows
    radius = RationalMatrix.ones(n).scale(1 / K)
    logger.debug(f"R-NORM -> INTERVAL: n={n}, radius entries 1/K = {1 / K}")
    return MatrixInterval(inverse(A), radius)
