"""
Seeded randomized equivalence suites

Each suite draws small random rational instances and checks one exact
identity or equivalence the reduction chain relies on. Every suite uses its
own generator seeded from (seed, suite name), so suites are reproducible
individually and in any combination.
"""

import itertools
import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence

from pmatrixcheck.commands import ExitCode
from pmatrixcheck.config import config
from pmatrixcheck.core.exact_linalg import (
    RationalMatrix,
    block_column_update,
    block_row_update,
    det,
    det_identity_plus_product,
    principal_minor,
)
from pmatrixcheck.core.interval import (
    MatrixInterval,
    is_singular_rank1,
    is_singular_vertex_sign,
    max_rho0_rank1,
    verify_singular_certificate,
)
from pmatrixcheck.core.pmatrix import (
    build_rs,
    coxson_matrix,
    is_p_matrix,
    psi,
    verify_non_p_certificate,
)
from pmatrixcheck.core.rnorm import (
    decide_r_norm,
    r_norm,
    r_norm_exhaustive,
    rnorm_to_interval_instance,
)

logger = logging.getLogger(__name__)

DEFAULT_COUNTS = {
    "det_identity": 200,
    "rank1": 50,
    "coxson": 100,
    "norm_axioms": 100,
    "block": 100,
    "rnorm_reduction": 100,
}


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, condition: bool, message: str) -> None:
        self.checked += 1
        if not condition:
            self.failures.append(message)


# -- random instances -------------------------------------------------------


def random_rational(rng: random.Random, bound: int = 4, max_denominator: int = 3) -> Fraction:
    """p/q with q <= max_denominator and |p/q| <= bound"""
    denominator = rng.randint(1, max_denominator)
    return Fraction(rng.randint(-bound * denominator, bound * denominator), denominator)


def random_matrix(
    rng: random.Random, rows: int, cols: Optional[int] = None, **kwargs
) -> RationalMatrix:
    cols = rows if cols is None else cols
    return RationalMatrix(
        rows, cols, tuple(random_rational(rng, **kwargs) for _ in range(rows * cols))
    )


def random_small_matrix(rng: random.Random, rows: int, cols: int, limit: int = 10) -> RationalMatrix:
    """Entries p/q with |p| <= limit and 1 <= q <= limit"""
    return RationalMatrix(
        rows,
        cols,
        tuple(Fraction(rng.randint(-limit, limit), rng.randint(1, limit)) for _ in range(rows * cols)),
    )


def random_nonsingular(rng: random.Random, n: int) -> RationalMatrix:
    while True:
        A = random_matrix(rng, n)
        if det(A) != 0:
            return A


def random_radius(rng: random.Random, n: int, density: float = 0.5) -> RationalMatrix:
    """Nonnegative Δ with roughly the given share of nonzero entries"""
    entries = tuple(
        abs(random_rational(rng, bound=2)) if rng.random() < density else Fraction(0)
        for _ in range(n * n)
    )
    return RationalMatrix(n, n, entries)


def random_positive(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(1, 12), rng.randint(1, 4))


# -- suites -----------------------------------------------------------------


def det_identity_suite(rng: random.Random, count: int) -> SuiteResult:
    """det(I_k + FG) = det(I_n + GF)"""
    result = SuiteResult("det_identity")
    for trial in range(count):
        k, n = rng.randint(1, 5), rng.randint(1, 5)
        F, G = random_small_matrix(rng, k, n), random_small_matrix(rng, n, k)
        left = det(RationalMatrix.identity(k) + F @ G)
        right = det(RationalMatrix.identity(n) + G @ F)
        result.check(left == right, f"trial {trial}: k={k} n={n}: {left} != {right}")
        smaller = det_identity_plus_product(F, G)
        result.check(
            smaller == left, f"trial {trial}: smaller-side determinant {smaller} != {left}"
        )
    return result


def rank1_suite(rng: random.Random, count: int) -> SuiteResult:
    """max over y, z of the rank-one rho_0 equals alpha * r(A), and agrees with the vertex oracle"""
    result = SuiteResult("rank1")
    for trial in range(count):
        n = rng.randint(1, 3)
        A = random_nonsingular(rng, n)
        alpha = random_positive(rng) / 8
        r = r_norm(A).value
        closed_form = max_rho0_rank1(A, alpha)
        result.check(
            closed_form == alpha * r,
            f"trial {trial}: max rho_0 = {closed_form}, alpha * r(A) = {alpha * r}",
        )
        iv = rnorm_to_interval_instance(A, 1 / alpha)
        vertex = is_singular_vertex_sign(iv).answer
        result.check(
            is_singular_rank1(A, alpha) == vertex,
            f"trial {trial}: closed form and vertex oracle disagree (vertex says {vertex})",
        )
    return result


def coxson_suite(rng: random.Random, count: int) -> SuiteResult:
    """[A, A + Δ] singular iff I + S^T A^-1 R is not a P-matrix; psi matches the minors"""
    result = SuiteResult("coxson")
    for trial in range(count):
        n = rng.randint(1, 3)
        A = random_nonsingular(rng, n)
        delta = random_radius(rng, n, density=0.4 if n == 3 else 0.6)
        iv = MatrixInterval.from_bounds(A, A + delta)

        decision = is_singular_vertex_sign(iv)
        if decision.certificate is not None:
            valid, reason = verify_singular_certificate(iv, decision.certificate)
            result.check(valid, f"trial {trial}: singular certificate rejected: {reason}")

        M = coxson_matrix(A, delta)
        p_decision = is_p_matrix(M)
        result.check(
            decision.answer == (not p_decision.answer),
            f"trial {trial}: singular={decision.answer}, P-matrix={p_decision.answer}",
        )
        if p_decision.certificate is not None:
            valid, reason = verify_non_p_certificate(M, p_decision.certificate)
            result.check(valid, f"trial {trial}: non-P certificate rejected: {reason}")

        rs = build_rs(delta)
        for p in itertools.product((0, 1), repeat=rs.m):
            if not any(p):
                continue
            support = [k + 1 for k, bit in enumerate(p) if bit]
            value, minor = psi(A, rs, p), principal_minor(M, support)
            result.check(
                value == minor,
                f"trial {trial}: psi{p} = {value}, minor on {support} = {minor}",
            )
    return result


def norm_axioms_suite(rng: random.Random, count: int) -> SuiteResult:
    """r is a matrix norm, and the 2^n z-sweep equals the full 4^n enumeration"""
    result = SuiteResult("norm_axioms")
    for trial in range(count):
        n = rng.randint(1, 4)
        A, B = random_matrix(rng, n), random_matrix(rng, n)
        k = random_rational(rng)
        rA, rB = r_norm(A).value, r_norm(B).value

        result.check(rA >= 0, f"trial {trial}: r(A) = {rA} < 0")
        if not A.is_zero():
            result.check(rA > 0, f"trial {trial}: r(A) = 0 for nonzero A")
        rkA = r_norm(A.scale(k)).value
        result.check(rkA == abs(k) * rA, f"trial {trial}: r(kA) = {rkA}, |k| r(A) = {abs(k) * rA}")
        rAB = r_norm(A + B).value
        result.check(rAB <= rA + rB, f"trial {trial}: r(A+B) = {rAB} > {rA + rB}")
        exhaustive = r_norm_exhaustive(A)
        result.check(rA == exhaustive, f"trial {trial}: z-sweep {rA}, full sweep {exhaustive}")
    return result


def block_suite(rng: random.Random, count: int) -> SuiteResult:
    """Adding multiples of block rows or block columns keeps the determinant"""
    result = SuiteResult("block")
    for trial in range(count):
        m = rng.randint(2, 5)
        split = rng.randint(1, m - 1)
        A = random_matrix(rng, m)
        before = det(A)
        by_rows = block_row_update(A, split, random_matrix(rng, split, m - split))
        by_cols = block_column_update(A, split, random_matrix(rng, split, m - split))
        result.check(det(by_rows) == before, f"trial {trial}: row update changed det")
        result.check(det(by_cols) == before, f"trial {trial}: column update changed det")
    return result


def rnorm_reduction_suite(rng: random.Random, count: int) -> SuiteResult:
    """r(A) >= K iff [A^-1 - J/K, A^-1 + J/K] is singular"""
    result = SuiteResult("rnorm_reduction")
    for trial in range(count):
        n = rng.randint(1, 3)
        A = random_nonsingular(rng, n)
        r = r_norm(A).value
        # Thresholds around r(A), including r(A) itself
        K = r + Fraction(rng.randint(-3, 3), rng.randint(1, 4))
        if K <= 0:
            K = r
        answer, _ = decide_r_norm(A, K)
        singular = is_singular_vertex_sign(rnorm_to_interval_instance(A, K)).answer
        result.check(
            answer == singular,
            f"trial {trial}: r(A) = {r}, K = {K}: r-norm says {answer}, interval says {singular}",
        )
    return result


SUITES: Dict[str, Callable[[random.Random, int], SuiteResult]] = {
    "det_identity": det_identity_suite,
    "rank1": rank1_suite,
    "coxson": coxson_suite,
    "norm_axioms": norm_axioms_suite,
    "block": block_suite,
    "rnorm_reduction": rnorm_reduction_suite,
}


def run_suites(
    names: Optional[Sequence[str]] = None,
    seed: Optional[int] = None,
    count: Optional[int] = None,
) -> List[SuiteResult]:
    """
    Run the named suites (all by default).

    Args:
        names: suite names, keys of SUITES
        seed: base seed, config suites.seed by default
        count: instances per suite, overriding the configured counts

    Raises:
        ValueError: on an unknown suite name
    """
    names = list(names) if names else list(SUITES)
    unknown = [name for name in names if name not in SUITES]
    if unknown:
        raise ValueError(f"Unknown suite(s) {', '.join(unknown)}; available: {', '.join(SUITES)}")
    seed = config.DEFAULT_SEED if seed is None else seed
    counts = {**DEFAULT_COUNTS, **config.SUITE_COUNTS}

    results = []
    for name in names:
        instances = counts[name] if count is None else count
        logger.info(f"Suite {name}: {instances} instances, seed {seed}")
        rng = random.Random(f"{seed}:{name}")
        results.append(SUITES[name](rng, instances))
    return results


def cmd_suite(
    names: Optional[Sequence[str]] = None,
    seed: Optional[int] = None,
    count: Optional[int] = None,
) -> int:
    results = run_suites(names, seed, count)
    for result in results:
        status = "PASS" if result.passed else "FAIL"
        print(f"{result.name:<16} {status}  {result.checked - len(result.failures)}/{result.checked} checks")
        for failure in result.failures[:5]:
            print(f"    {failure}")
    return ExitCode.OK if all(r.passed for r in results) else ExitCode.INCONSISTENT
