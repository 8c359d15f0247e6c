"""Independent rank oracle for the fiber cone's Hilbert function.

The degree-t graded piece of the subalgebra generated by the 2x2 minors is
spanned by the products of t minors; its dimension is the rank of the
coefficient matrix of those products, computed exactly over a prime field
(default) or over the rationals.  Nothing here looks at facets or colon
ideals, so agreement with the face-count Hilbert function is a genuine
cross-check of the combinatorial pipeline.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import CapacityError, PreconditionError, UnsupportedRegimeError
from .invariants import _face_counts_cached, _hf_from_counts
from .scroll_model import EntryName, ScrollSpec, minor

DEFAULT_MODULUS = (1 << 31) - 1
DEFAULT_ROW_CAPACITY = 100_000

# Dense elimination allocates rows x columns int64 cells; this bounds the
# allocation to roughly 800 MB.
DEFAULT_CELL_CAPACITY = 100_000_000

# Rational confirmation of a suspicious modular rank is only attempted below
# this row count; larger problems report the suspicion unresolved.
RATIONAL_SPOT_CHECK_ROWS = 2_500

# A degree-2t monomial in the matrix entries: sorted tuple of variable ids.
Monomial = tuple[int, ...]


@dataclass(frozen=True, slots=True, eq=False)
class ExpandedPolynomial:
    """A fully expanded product of minors: monomial -> nonzero coefficient."""

    terms: dict[Monomial, int]

    @property
    def degree(self) -> int:
        return len(next(iter(self.terms)))


@dataclass(frozen=True, slots=True, eq=False)
class RankProblem:
    """Coefficient matrix of all degree-t products of the minors."""

    spec: ScrollSpec
    degree: int
    variables: tuple[EntryName, ...]
    rows: tuple[ExpandedPolynomial, ...]
    monomial_index: dict[Monomial, int]

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), len(self.monomial_index))


@lru_cache(maxsize=None)
def _generators(spec: ScrollSpec) -> tuple[tuple[EntryName, ...], tuple[dict[Monomial, int], ...]]:
    """The C(c,2) expanded minors over an id-indexed variable alphabet."""
    c = spec.c
    variables = tuple(
        sorted((i, j) for i in range(1, spec.d + 1) for j in range(spec.n[i - 1] + 1))
    )
    vid = {entry: i for i, entry in enumerate(variables)}
    gens: list[dict[Monomial, int]] = []
    for a in range(1, c + 1):
        for b in range(a + 1, c + 1):
            terms: dict[Monomial, int] = {}
            for coeff, expo in minor(spec, a, b).terms:
                mono: list[int] = []
                for entry, power in expo:
                    mono.extend([vid[entry]] * power)
                terms[tuple(sorted(mono))] = coeff
            gens.append(terms)
    return variables, tuple(gens)


def _product(t1: dict[Monomial, int], t2: dict[Monomial, int]) -> dict[Monomial, int]:
    out: dict[Monomial, int] = {}
    for m1, c1 in t1.items():
        for m2, c2 in t2.items():
            mono = tuple(sorted(m1 + m2))
            value = out.get(mono, 0) + c1 * c2
            if value:
                out[mono] = value
            elif mono in out:
                del out[mono]
    return out


def build_rank_problem(
    spec: ScrollSpec, t: int, *, capacity: int = DEFAULT_ROW_CAPACITY
) -> RankProblem:
    """Expand every multiset of t minors into a coefficient-matrix row.

    Rows run over combinations with repetition in lexicographic order and
    share memoized prefix products; columns are the occurring monomials in
    sorted order, so the matrix is fully deterministic.
    """
    if t < 1:
        raise PreconditionError(f"rank problems need degree >= 1, got {t}")
    variables, gens = _generators(spec)
    n_gens = len(gens)
    row_count = math.comb(n_gens + t - 1, t)
    if row_count > capacity:
        raise CapacityError(
            f"degree {t} needs {row_count} product rows (> {capacity}); "
            "lower the degree or raise the row capacity"
        )

    prefixes: dict[tuple[int, ...], dict[Monomial, int]] = {(): {(): 1}}

    def prefix_product(combo: tuple[int, ...]) -> dict[Monomial, int]:
        known = prefixes.get(combo)
        if known is None:
            known = _product(prefix_product(combo[:-1]), gens[combo[-1]])
            prefixes[combo] = known
        return known

    rows = tuple(
        ExpandedPolynomial(terms=_product(prefix_product(combo[:-1]), gens[combo[-1]]))
        for combo in itertools.combinations_with_replacement(range(n_gens), t)
    )
    monomials = sorted({mono for row in rows for mono in row.terms})
    return RankProblem(
        spec=spec,
        degree=t,
        variables=variables,
        rows=rows,
        monomial_index={mono: i for i, mono in enumerate(monomials)},
    )


def rank_mod_prime(
    problem: RankProblem, p: int, *, cell_capacity: int = DEFAULT_CELL_CAPACITY
) -> int:
    """Gaussian elimination over GF(p) on the dense int64 matrix.

    Args:
        problem: the coefficient matrix to reduce.
        p: prime modulus, at most 2**31 - 1 so products stay inside int64.
        cell_capacity: refuse matrices with more cells than this.

    Returns:
        The matrix rank over GF(p).
    """
    if not 2 <= p <= DEFAULT_MODULUS:
        raise PreconditionError(f"modulus must lie in [2, 2^31 - 1], got {p}")
    n_rows, n_cols = problem.shape
    if n_rows * n_cols > cell_capacity:
        raise CapacityError(
            f"dense matrix of {n_rows} x {n_cols} exceeds the {cell_capacity}-cell "
            "budget; lower the degree or use a smaller scroll"
        )
    matrix = np.zeros((n_rows, n_cols), dtype=np.int64)
    index = problem.monomial_index
    for i, row in enumerate(problem.rows):
        for mono, coeff in row.terms.items():
            matrix[i, index[mono]] = coeff % p

    rank = 0
    for col in range(n_cols):
        if rank == n_rows:
            break
        pivots = np.flatnonzero(matrix[rank:, col])
        if pivots.size == 0:
            continue
        pivot_row = rank + pivots[0]
        if pivot_row != rank:
            matrix[[rank, pivot_row]] = matrix[[pivot_row, rank]]
        inverse = pow(int(matrix[rank, col]), p - 2, p)
        below = rank + 1 + np.flatnonzero(matrix[rank + 1 :, col])
        if below.size:
            factors = (matrix[below, col] * inverse) % p
            matrix[below] = (matrix[below] - factors[:, None] * matrix[rank][None, :]) % p
        rank += 1
    return rank


def rank_rational(problem: RankProblem) -> int:
    """Exact rank over the rationals via sparse fraction elimination."""
    index = problem.monomial_index
    echelon: dict[int, dict[int, Fraction]] = {}
    for row in problem.rows:
        work = {index[mono]: Fraction(coeff) for mono, coeff in row.terms.items()}
        while work:
            lead = min(work)
            pivot = echelon.get(lead)
            if pivot is None:
                echelon[lead] = work
                break
            factor = work[lead] / pivot[lead]
            for col, value in pivot.items():
                updated = work.get(col, Fraction(0)) - factor * value
                if updated:
                    work[col] = updated
                elif col in work:
                    del work[col]
    return len(echelon)


@lru_cache(maxsize=None)
def _fiber_hf(spec: ScrollSpec, t: int, modulus: int | str, capacity: int) -> int:
    if t == 0:
        return 1
    problem = build_rank_problem(spec, t, capacity=capacity)
    if modulus == "rational":
        return rank_rational(problem)
    return rank_mod_prime(problem, int(modulus))


def fiber_hilbert_function(
    spec: ScrollSpec,
    t: int,
    *,
    modulus: int | str = DEFAULT_MODULUS,
    capacity: int = DEFAULT_ROW_CAPACITY,
) -> int:
    """Dimension of the degree-t graded piece of the minor subalgebra."""
    if t < 0:
        raise PreconditionError(f"degree must be non-negative, got {t}")
    if modulus != "rational" and not 2 <= int(modulus) <= DEFAULT_MODULUS:
        raise PreconditionError(f"modulus must be 'rational' or a prime <= 2^31 - 1: {modulus}")
    return _fiber_hf(spec, t, modulus, capacity)


@dataclass(frozen=True, slots=True)
class CrossCheckRow:
    t: int
    fiber_rank: int
    face_count: int
    equal: bool


@dataclass(frozen=True, slots=True)
class CrossCheckResult:
    spec: ScrollSpec
    t_max: int
    modulus: int | str
    rows: tuple[CrossCheckRow, ...]
    passed: bool
    notes: tuple[str, ...]


def cross_check(
    spec: ScrollSpec,
    t_max: int,
    *,
    modulus: int | str = DEFAULT_MODULUS,
    capacity: int = DEFAULT_ROW_CAPACITY,
) -> CrossCheckResult:
    """Compare the rank oracle against the face-count Hilbert function.

    A mismatch under a prime modulus is re-checked rationally when the
    problem is small enough: a genuinely modular discrepancy is flagged as a
    suspected modulus collision instead of a mathematical failure.
    """
    if spec.c < spec.d + 4:
        raise UnsupportedRegimeError(
            f"cross-check needs the facet complex: c={spec.c} < d+4={spec.d + 4}"
        )
    if t_max < 0:
        raise PreconditionError(f"t_max must be non-negative, got {t_max}")

    faces = _face_counts_cached(spec, max(t_max, 1))
    rows: list[CrossCheckRow] = []
    notes: list[str] = []
    for t in range(t_max + 1):
        fiber = fiber_hilbert_function(spec, t, modulus=modulus, capacity=capacity)
        expected = _hf_from_counts(faces, t)
        if fiber != expected and modulus != "rational" and t >= 1:
            problem = build_rank_problem(spec, t, capacity=capacity)
            if len(problem.rows) <= RATIONAL_SPOT_CHECK_ROWS:
                exact = rank_rational(problem)
                if exact != fiber:
                    notes.append(
                        f"degree {t}: modular rank {fiber} != rational rank {exact}; "
                        "suspected modulus collision, using the rational value"
                    )
                    fiber = exact
            else:
                notes.append(f"degree {t}: mismatch not rationally re-checked (too large)")
        rows.append(CrossCheckRow(t=t, fiber_rank=fiber, face_count=expected, equal=fiber == expected))
    return CrossCheckResult(
        spec=spec,
        t_max=t_max,
        modulus=modulus,
        rows=tuple(rows),
        passed=all(r.equal for r in rows),
        notes=tuple(notes),
    )
