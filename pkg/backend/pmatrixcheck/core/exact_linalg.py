"""
Exact rational dense linear algebra

All scalars are ``fractions.Fraction`` values, which are kept in lowest terms
with a positive denominator after every operation. Matrices are immutable,
row-major ``RationalMatrix`` values, so they can be shared freely between
sweep workers.

Determinants use Bareiss fraction-free elimination: each row is first scaled
to integers by the lcm of its denominators, the integer determinant is
computed with exact divisions, and the row scalings are divided back out.
"""

import itertools
import logging
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple, Union

logger = logging.getLogger(__name__)

Rational = Fraction
RationalLike = Union[int, Fraction, str]

_RATIONAL_PATTERN = re.compile(r"^([+-]?\d+)(?:/(\d+))?$")


class ShapeError(ValueError):
    """Matrix shapes do not fit the requested operation"""


class SingularMatrixError(ValueError):
    """A nonsingular matrix was required but the determinant is zero"""


class IndexSetError(ValueError):
    """A principal-minor index set is empty, repeated or out of range"""


def to_rational(value: RationalLike) -> Fraction:
    """
    Convert an int, Fraction or "p" / "p/q" string to a canonical Fraction.

    Floats and decimal strings are rejected so that no inexact value can enter
    a computation.
    """
    if isinstance(value, bool):
        raise TypeError("Booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        match = _RATIONAL_PATTERN.match(value.strip())
        if not match:
            raise ValueError(f"Not an exact rational: {value!r}")
        numerator = int(match.group(1))
        denominator = int(match.group(2)) if match.group(2) is not None else 1
        if denominator == 0:
            raise ValueError(f"Zero denominator in {value!r}")
        return Fraction(numerator, denominator)
    raise TypeError(f"Cannot use {type(value).__name__} as an exact rational")


def format_rational(value: Fraction) -> str:
    """Render as "p" for integers and "p/q" otherwise"""
    return str(value)


@dataclass(frozen=True)
class RationalMatrix:
    """Dense row-major matrix of Fractions"""

    rows: int
    cols: int
    entries: Tuple[Fraction, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ShapeError(f"Negative shape {self.rows}x{self.cols}")
        if len(self.entries) != self.rows * self.cols:
            raise ShapeError(
                f"{len(self.entries)} entries do not fill a {self.rows}x{self.cols} matrix"
            )
        if not all(type(x) is Fraction for x in self.entries):
            object.__setattr__(
                self, "entries", tuple(to_rational(x) for x in self.entries)
            )

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_rows(
        cls, rows: Sequence[Sequence[RationalLike]], cols: Optional[int] = None
    ) -> "RationalMatrix":
        """Build from a list of rows; cols is needed only for 0-row matrices"""
        n_rows = len(rows)
        n_cols = len(rows[0]) if n_rows else (cols or 0)
        for row in rows:
            if len(row) != n_cols:
                raise ShapeError("Every row must have the same number of entries")
        return cls(n_rows, n_cols, tuple(to_rational(x) for row in rows for x in row))

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        one, zero = Fraction(1), Fraction(0)
        return cls(
            n, n, tuple(one if i == j else zero for i in range(n) for j in range(n))
        )

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def ones(cls, rows: int, cols: Optional[int] = None) -> "RationalMatrix":
        """The all-ones matrix J"""
        cols = rows if cols is None else cols
        return cls(rows, cols, (Fraction(1),) * (rows * cols))

    @classmethod
    def diagonal(cls, values: Sequence[RationalLike]) -> "RationalMatrix":
        values = [to_rational(v) for v in values]
        n = len(values)
        zero = Fraction(0)
        return cls(
            n,
            n,
            tuple(values[i] if i == j else zero for i in range(n) for j in range(n)),
        )

    # -- access -------------------------------------------------------------

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, index: Tuple[int, int]) -> Fraction:
        i, j = index
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"Entry ({i}, {j}) outside {self.rows}x{self.cols}")
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Tuple[Fraction, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def column(self, j: int) -> Tuple[Fraction, ...]:
        return self.entries[j :: self.cols] if self.cols else ()

    def to_rows(self) -> List[List[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def submatrix(
        self, row_indices: Sequence[int], col_indices: Sequence[int]
    ) -> "RationalMatrix":
        """Select rows and columns by 0-based index"""
        return RationalMatrix(
            len(row_indices),
            len(col_indices),
            tuple(self[i, j] for i in row_indices for j in col_indices),
        )

    # -- arithmetic ---------------------------------------------------------

    def _check_same_shape(self, other: "RationalMatrix", op: str):
        if self.shape != other.shape:
            raise ShapeError(f"Cannot {op} {self.rows}x{self.cols} and {other.rows}x{other.cols}")

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        self._check_same_shape(other, "add")
        return RationalMatrix(
            self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries))
        )

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        self._check_same_shape(other, "subtract")
        return RationalMatrix(
            self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries))
        )

    def __neg__(self) -> "RationalMatrix":
        return RationalMatrix(self.rows, self.cols, tuple(-a for a in self.entries))

    def scale(self, k: RationalLike) -> "RationalMatrix":
        k = to_rational(k)
        return RationalMatrix(self.rows, self.cols, tuple(k * a for a in self.entries))

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ShapeError(
                f"Cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        other_cols = [other.column(j) for j in range(other.cols)]
        return RationalMatrix(
            self.rows,
            other.cols,
            tuple(
                sum((a * b for a, b in zip(self.row(i), col)), Fraction(0))
                for i in range(self.rows)
                for col in other_cols
            ),
        )

    def apply(self, vector: Sequence[RationalLike]) -> Tuple[Fraction, ...]:
        """Matrix-vector product"""
        if len(vector) != self.cols:
            raise ShapeError(f"Vector of length {len(vector)} for {self.cols} columns")
        vector = [to_rational(v) for v in vector]
        return tuple(
            sum((a * b for a, b in zip(self.row(i), vector)), Fraction(0))
            for i in range(self.rows)
        )

    @property
    def T(self) -> "RationalMatrix":
        return RationalMatrix(
            self.cols,
            self.rows,
            tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)),
        )

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.entries)

    def is_nonnegative(self) -> bool:
        return all(a >= 0 for a in self.entries)

    def entrywise_le(self, other: "RationalMatrix") -> bool:
        self._check_same_shape(other, "compare")
        return all(a <= b for a, b in zip(self.entries, other.entries))


def _require_square(M: RationalMatrix, op: str):
    if not M.is_square:
        raise ShapeError(f"{op} needs a square matrix, got {M.rows}x{M.cols}")


def _integer_rows(M: RationalMatrix) -> Tuple[List[List[int]], int]:
    """Scale every row to integers; returns the rows and the product of scalings"""
    int_rows = []
    scaling = 1
    for i in range(M.rows):
        row = M.row(i)
        lcm = math.lcm(*(x.denominator for x in row)) if row else 1
        int_rows.append([x.numerator * (lcm // x.denominator) for x in row])
        scaling *= lcm
    return int_rows, scaling


def _bareiss_det(a: List[List[int]]) -> int:
    """Fraction-free determinant of an integer matrix (mutates a)"""
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    previous_pivot = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pivot = a[k][k]
        row_k = a[k]
        for i in range(k + 1, n):
            row_i = a[i]
            factor = row_i[k]
            for j in range(k + 1, n):
                # Exact: Sylvester's identity guarantees divisibility
                row_i[j] = (row_i[j] * pivot - factor * row_k[j]) // previous_pivot
            row_i[k] = 0
        previous_pivot = pivot
    return sign * a[n - 1][n - 1]


def det(M: RationalMatrix) -> Fraction:
    """
    Exact determinant by Bareiss elimination.

    Args:
        M: square matrix (0x0 has determinant 1)

    Returns:
        det(M) as a canonical Fraction

    Raises:
        ShapeError: if M is not square
    """
    _require_square(M, "det")
    int_rows, scaling = _integer_rows(M)
    return Fraction(_bareiss_det(int_rows), scaling)


def inverse(M: RationalMatrix) -> RationalMatrix:
    """
    Exact inverse by Gauss-Jordan elimination over the rationals.

    Raises:
        ShapeError: if M is not square
        SingularMatrixError: if det(M) = 0
    """
    _require_square(M, "inverse")
    n = M.rows
    work = [list(M.row(i)) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]

    for k in range(n):
        pivot_row = next((i for i in range(k, n) if work[i][k] != 0), None)
        if pivot_row is None:
            raise SingularMatrixError("Matrix is singular and has no inverse")
        work[k], work[pivot_row] = work[pivot_row], work[k]
        pivot = work[k][k]
        work[k] = [x / pivot for x in work[k]]
        for i in range(n):
            if i != k and work[i][k] != 0:
                factor = work[i][k]
                work[i] = [a - factor * b for a, b in zip(work[i], work[k])]

    return RationalMatrix(n, n, tuple(x for row in work for x in row[n:]))


def rank(M: RationalMatrix) -> int:
    """Exact rank by row reduction"""
    work = M.to_rows()
    rank_found = 0
    for col in range(M.cols):
        pivot_row = next(
            (i for i in range(rank_found, M.rows) if work[i][col] != 0), None
        )
        if pivot_row is None:
            continue
        work[rank_found], work[pivot_row] = work[pivot_row], work[rank_found]
        pivot = work[rank_found][col]
        for i in range(rank_found + 1, M.rows):
            if work[i][col] != 0:
                factor = work[i][col] / pivot
                work[i] = [a - factor * b for a, b in zip(work[i], work[rank_found])]
        rank_found += 1
        if rank_found == M.rows:
            break
    return rank_found


def index_set(indices: Iterable[int], n: int) -> Tuple[int, ...]:
    """
    Canonical 1-based index set: sorted, distinct, non-empty, within 1..n.

    The listing order of ``indices`` does not matter.
    """
    listed = list(indices)
    if not listed:
        raise IndexSetError("Index set must be non-empty")
    canonical = tuple(sorted(set(listed)))
    if len(canonical) != len(listed):
        raise IndexSetError(f"Index set has repeated entries: {listed}")
    if canonical[0] < 1 or canonical[-1] > n:
        raise IndexSetError(f"Index set {list(canonical)} is outside 1..{n}")
    return canonical


def principal_minor(M: RationalMatrix, alpha: Iterable[int]) -> Fraction:
    """
    Determinant of the submatrix of M on the rows and columns in alpha.

    Args:
        M: square matrix
        alpha: 1-based indices, in any order

    Raises:
        ShapeError: if M is not square
        IndexSetError: if alpha is empty, repeated or out of range
    """
    _require_square(M, "principal_minor")
    selected = [i - 1 for i in index_set(alpha, M.rows)]
    return det(M.submatrix(selected, selected))


def det_identity_plus_product(F: RationalMatrix, G: RationalMatrix) -> Fraction:
    """
    det(I_k + FG) for F (k x n) and G (n x k).

    Evaluated on the smaller side: when n < k the equal value det(I_n + GF)
    is computed instead.

    Raises:
        ShapeError: if the shapes do not chain
    """
    k, n = F.shape
    if G.shape != (n, k):
        raise ShapeError(
            f"F is {k}x{n}, so G must be {n}x{k}; got {G.rows}x{G.cols}"
        )
    if k <= n:
        return det(RationalMatrix.identity(k) + F @ G)
    logger.debug(f"det(I + FG): evaluating on the {n}x{n} side instead of {k}x{k}")
    return det(RationalMatrix.identity(n) + G @ F)


def block_row_update(A: RationalMatrix, m1: int, X: RationalMatrix) -> RationalMatrix:
    """
    Add X times the lower block row to the upper block row.

    With A split after row m1, returns [[A11 + X A21, A12 + X A22], [A21, A22]];
    X is m1 x (m - m1).
    """
    m = A.rows
    if not 0 <= m1 <= m or X.shape != (m1, m - m1):
        raise ShapeError(f"X must be {m1}x{m - m1} to update a {m}-row matrix")
    all_cols = list(range(A.cols))
    top = A.submatrix(list(range(m1)), all_cols)
    bottom = A.submatrix(list(range(m1, m)), all_cols)
    updated = top + X @ bottom
    return RationalMatrix(A.rows, A.cols, updated.entries + bottom.entries)


def block_column_update(
    A: RationalMatrix, n1: int, Y: RationalMatrix
) -> RationalMatrix:
    """
    Add the left block column times Y to the right block column.

    With A split after column n1, returns [[A11, A12 + A11 Y], [A21, A22 + A21 Y]];
    Y is n1 x (n - n1).
    """
    n = A.cols
    if not 0 <= n1 <= n or Y.shape != (n1, n - n1):
        raise ShapeError(f"Y must be {n1}x{n - n1} to update a {n}-column matrix")
    all_rows = list(range(A.rows))
    left = A.submatrix(all_rows, list(range(n1)))
    right = A.submatrix(all_rows, list(range(n1, n))) + left @ Y
    return RationalMatrix(
        A.rows, A.cols, tuple(x for i in all_rows for x in left.row(i) + right.row(i))
    )


def is_strictly_diagonally_dominant(M: RationalMatrix) -> bool:
    """|M_ii| > sum of |M_ij| over j != i, for every row"""
    _require_square(M, "is_strictly_diagonally_dominant")
    for i in range(M.rows):
        row = M.row(i)
        off_diagonal = sum((abs(x) for j, x in enumerate(row) if j != i), Fraction(0))
        if abs(row[i]) <= off_diagonal:
            return False
    return True


def sign_vectors(n: int) -> Iterator[Tuple[int, ...]]:
    """All vectors in {-1,+1}^n, lexicographic with +1 ranked before -1"""
    return itertools.product((1, -1), repeat=n)


def sign_vector_at(n: int, index: int) -> Tuple[int, ...]:
    """The index-th vector of sign_vectors(n)"""
    return tuple(
        -1 if index >> (n - 1 - position) & 1 else 1 for position in range(n)
    )


def bilinear(A: RationalMatrix, z: Sequence[RationalLike], y: Sequence[RationalLike]) -> Fraction:
    """z^T A y"""
    if len(z) != A.rows:
        raise ShapeError(f"z has length {len(z)}, A has {A.rows} rows")
    Ay = A.apply(y)
    return sum((to_rational(zi) * v for zi, v in zip(z, Ay)), Fraction(0))
