"""
Matrix intervals and their exact singularity oracle

An interval [C - Δ, C + Δ] is singular exactly when the determinants of its
vertex matrices C - D(y) Δ D(z), y, z in {-1,+1}^n, include a zero or take
both signs. The determinant is affine in each single row scaling y_i and in
each single column scaling z_j, so a sign change along one hypercube edge
has an exact rational root, which gives the singular-matrix certificate.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, NamedTuple, Optional, Sequence, Tuple

from pmatrixcheck.core.exact_linalg import (
    RationalLike,
    RationalMatrix,
    ShapeError,
    det,
    sign_vector_at,
    sign_vectors,
    to_rational,
)
from pmatrixcheck.schemas import SingularityCertificate
from pmatrixcheck.utils.sweep import get_sweep_executor

logger = logging.getLogger(__name__)


class NegativeRadiusError(ValueError):
    """A radius (or Δ) has a negative entry"""


class NotSingularError(ValueError):
    """A singular-matrix certificate was requested for a nonsingular interval"""


@dataclass(frozen=True)
class MatrixInterval:
    """The set of matrices B with center - radius <= B <= center + radius"""

    center: RationalMatrix
    radius: RationalMatrix

    def __post_init__(self):
        if not self.center.is_square:
            raise ShapeError(f"Interval center must be square, got {self.center.shape}")
        if self.center.shape != self.radius.shape:
            raise ShapeError(
                f"Center {self.center.shape} and radius {self.radius.shape} differ in shape"
            )
        if not self.radius.is_nonnegative():
            raise NegativeRadiusError("Interval radius has a negative entry")

    @classmethod
    def from_bounds(cls, lower: RationalMatrix, upper: RationalMatrix) -> "MatrixInterval":
        """[lower, upper] with lower <= upper entrywise"""
        if lower.shape != upper.shape:
            raise ShapeError(f"Bounds {lower.shape} and {upper.shape} differ in shape")
        if not lower.entrywise_le(upper):
            raise NegativeRadiusError("Lower bound exceeds upper bound somewhere")
        half = Fraction(1, 2)
        return cls((lower + upper).scale(half), (upper - lower).scale(half))

    @property
    def n(self) -> int:
        return self.center.rows

    @property
    def lower(self) -> RationalMatrix:
        return self.center - self.radius

    @property
    def upper(self) -> RationalMatrix:
        return self.center + self.radius

    def contains(self, B: RationalMatrix) -> bool:
        if B.shape != self.center.shape:
            return False
        return self.lower.entrywise_le(B) and B.entrywise_le(self.upper)


class SingularityDecision(NamedTuple):
    answer: bool
    certificate: Optional[SingularityCertificate]


def diag_of(v: Sequence[RationalLike]) -> RationalMatrix:
    """D(v): the diagonal matrix with diagonal v"""
    return RationalMatrix.diagonal(v)


def vertex_matrix(
    iv: MatrixInterval, y: Sequence[RationalLike], z: Sequence[RationalLike]
) -> RationalMatrix:
    """
    C - D(y) Δ D(z).

    With y, z in {-1,+1}^n this is a vertex of the interval; any y, z with
    entries in [-1, 1] give a matrix inside it.
    """
    n = iv.n
    if len(y) != n or len(z) != n:
        raise ShapeError(f"Scaling vectors must have length {n}")
    return iv.center - diag_of(y) @ iv.radius @ diag_of(z)


def _sign(value: Fraction) -> int:
    return (value > 0) - (value < 0)


def _vertex_count(n: int) -> int:
    # (y, z) and (-y, -z) give the same vertex; the z with z_1 = +1 come first
    return 4**n // 2


def _vertex_signs(n: int, index: int) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """z is the outer loop and y the inner one, both in sign_vectors order"""
    z_index, y_index = divmod(index, 2**n)
    return sign_vector_at(n, y_index), sign_vector_at(n, z_index)


def _scan_vertex_chunk(
    iv: MatrixInterval, start: int, stop: int
) -> Tuple[Optional[int], Optional[int], Optional[int], Optional[Fraction]]:
    """First zero, first positive and first negative vertex index in the chunk"""
    first_zero = first_positive = first_negative = None
    first_det = None
    for index in range(start, stop):
        y, z = _vertex_signs(iv.n, index)
        value = det(vertex_matrix(iv, y, z))
        if first_det is None:
            first_det = value
        sign = _sign(value)
        if sign == 0:
            first_zero = index
            break
        if sign > 0 and first_positive is None:
            first_positive = index
        elif sign < 0 and first_negative is None:
            first_negative = index
        if first_positive is not None and first_negative is not None:
            break
    return first_zero, first_positive, first_negative, first_det


def _singularity_evidence(iv: MatrixInterval) -> Optional[Tuple[int, Optional[int]]]:
    """
    Earliest evidence in sweep order.

    Returns (index, None) for a zero vertex, (seed, index) for a vertex whose
    determinant sign differs from the seed vertex 0, or None if every vertex
    determinant has the same nonzero sign.
    """
    n = iv.n
    chunks = get_sweep_executor().map_chunks(_scan_vertex_chunk, _vertex_count(n), iv)

    first_zero = first_positive = first_negative = None
    for zero, positive, negative, _ in chunks:
        if first_zero is None:
            first_zero = zero
        if first_positive is None:
            first_positive = positive
        if first_negative is None:
            first_negative = negative

    seed_det = chunks[0][3]
    if _sign(seed_det) == 0:
        return 0, None
    opposite = first_negative if seed_det > 0 else first_positive

    candidates = [i for i in (first_zero, opposite) if i is not None]
    if not candidates:
        return None
    earliest = min(candidates)
    if earliest == first_zero:
        return first_zero, None
    return 0, earliest


def is_singular_vertex_sign(iv: MatrixInterval) -> SingularityDecision:
    """
    Decide whether the interval contains a singular matrix.

    Enumerates the vertex matrices (4^n sign pairs, half of them distinct);
    singular iff some vertex determinant is zero or two have opposite signs.
    On a singular interval the decision carries an exact certificate.

    Raises:
        NegativeRadiusError: if the radius has a negative entry
    """
    if not iv.radius.is_nonnegative():
        raise NegativeRadiusError("Interval radius has a negative entry")
    if iv.n == 0:
        # The 0x0 matrix has determinant 1
        return SingularityDecision(False, None)

    evidence = _singularity_evidence(iv)
    if evidence is None:
        logger.debug(f"Interval of order {iv.n}: all vertex determinants share a sign")
        return SingularityDecision(False, None)

    certificate = _certificate_from_evidence(iv, evidence)
    logger.debug(f"Interval of order {iv.n} is singular")
    return SingularityDecision(True, certificate)


def _edge_root(
    iv: MatrixInterval,
    y: List[Fraction],
    z: List[Fraction],
    coordinate: Tuple[str, int],
    start_value: int,
    start_det: Fraction,
    end_det: Fraction,
) -> SingularityCertificate:
    """Solve det = 0 along the edge that moves one coordinate from start_value to its negation"""
    # det is affine in the moving coordinate s: det(s) = start_det + (s - start)/(end - start) * (end_det - start_det)
    end_value = -start_value
    s = start_value + (end_value - start_value) * start_det / (start_det - end_det)
    y, z = list(y), list(z)
    which, position = coordinate
    if which == "y":
        y[position] = s
    else:
        z[position] = s
    B = vertex_matrix(iv, y, z)
    if det(B) != 0:
        raise ArithmeticError("Edge root does not give a singular matrix")
    return SingularityCertificate.from_matrix(B, y, z)


def _certificate_from_evidence(
    iv: MatrixInterval, evidence: Tuple[int, Optional[int]]
) -> SingularityCertificate:
    n = iv.n
    first, second = evidence
    y, z = _vertex_signs(n, first)
    y, z = [Fraction(v) for v in y], [Fraction(v) for v in z]
    current_det = det(vertex_matrix(iv, y, z))

    if second is None:
        return SingularityCertificate.from_matrix(vertex_matrix(iv, y, z), y, z)

    # Walk from the seed vertex to the opposite-sign vertex one coordinate at a time
    target_y, target_z = _vertex_signs(n, second)
    steps = [("y", i) for i in range(n) if y[i] != target_y[i]]
    steps += [("z", j) for j in range(n) if z[j] != target_z[j]]

    for which, position in steps:
        vector = y if which == "y" else z
        start_value = int(vector[position])
        next_y, next_z = list(y), list(z)
        (next_y if which == "y" else next_z)[position] = Fraction(-start_value)
        next_det = det(vertex_matrix(iv, next_y, next_z))

        if next_det == 0:
            return SingularityCertificate.from_matrix(
                vertex_matrix(iv, next_y, next_z), next_y, next_z
            )
        if _sign(next_det) != _sign(current_det):
            return _edge_root(
                iv, y, z, (which, position), start_value, current_det, next_det
            )
        y, z, current_det = next_y, next_z, next_det

    raise ArithmeticError("No sign change found between opposite-sign vertices")


def singular_certificate(iv: MatrixInterval) -> SingularityCertificate:
    """
    Exact singular matrix inside a singular interval.

    Raises:
        NotSingularError: if the interval is nonsingular
    """
    decision = is_singular_vertex_sign(iv)
    if not decision.answer:
        raise NotSingularError("Interval is nonsingular; no singular matrix exists")
    return decision.certificate


def verify_singular_certificate(
    iv: MatrixInterval, certificate: SingularityCertificate
) -> Tuple[bool, str]:
    """Check det(B) = 0 and center - radius <= B <= center + radius"""
    B = certificate.matrix()
    if B.shape != iv.center.shape:
        return False, f"B is {B.rows}x{B.cols}, interval is {iv.n}x{iv.n}"
    if not iv.contains(B):
        return False, "B is not inside the interval"
    value = det(B)
    if value != 0:
        return False, f"det(B) = {value}, not 0"
    return True, "det(B) = 0 and B lies in the interval"


def rho0_rank1(
    A: RationalMatrix,
    y: Sequence[int],
    z: Sequence[int],
    alpha: RationalLike,
) -> Fraction:
    """
    Largest absolute real eigenvalue of A D(y) (alpha J) D(z).

    The product is alpha * (A y) z^T, of rank at most one, whose only nonzero
    eigenvalue is alpha * z^T A y.

    Raises:
        ValueError: if alpha <= 0
    """
    alpha = to_rational(alpha)
    if alpha <= 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    Ay = A.apply(y)
    return alpha * abs(sum((Fraction(zi) * v for zi, v in zip(z, Ay)), Fraction(0)))


def max_rho0_rank1(A: RationalMatrix, alpha: RationalLike) -> Fraction:
    """Maximum of rho0_rank1 over all y, z in {-1,+1}^n"""
    if not A.is_square:
        raise ShapeError(f"Need a square matrix, got {A.rows}x{A.cols}")
    n = A.rows
    return max(
        (rho0_rank1(A, y, z, alpha) for z in sign_vectors(n) for y in sign_vectors(n)),
        default=Fraction(0),
    )


def is_singular_rank1(A: RationalMatrix, alpha: RationalLike) -> bool:
    """
    Closed-form oracle for [A^-1 - alpha J, A^-1 + alpha J]: singular iff
    some rank-one product has a real eigenvalue of modulus at least one.
    """
    return max_rho0_rank1(A, alpha) >= 1
