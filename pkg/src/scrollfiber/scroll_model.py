"""Scroll matrix arrangement, leaf profiles, and 2x2 minor generators.

A scroll of type ``n = (n_1 <= ... <= n_d)`` is presented by a 2 x c matrix
(``c = sum(n)``) whose columns are consecutive-entry pairs ``x[i,j], x[i,j+1]``
drawn from d catalecticant blocks.  The engine works with a fixed
rearrangement of those columns: first all non-last block columns taken
round-robin (first columns of every block in increasing block order, then
second columns, and so on, skipping blocks that have run out), then the last
column of every block in decreasing block order.

All objects are immutable and all functions are pure, so everything here is
safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import InternalError, InvalidVertexError, PreconditionError

# The variable x[block, index]; blocks are 1-based, indices run 0..n_block.
EntryName = tuple[int, int]

# A matrix column: (top entry, bottom entry) with bottom index = top index + 1.
Column = tuple[EntryName, EntryName]


@dataclass(frozen=True, slots=True)
class ScrollSpec:
    """A scroll type: the block degrees ``n``, sorted non-decreasingly."""

    n: tuple[int, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.n, tuple):
            object.__setattr__(self, "n", tuple(self.n))
        if not self.n:
            raise PreconditionError("scroll type must have at least one block")
        if any(not isinstance(v, int) or v < 1 for v in self.n):
            raise PreconditionError(f"block degrees must be positive integers: {self.n}")
        if any(a > b for a, b in zip(self.n, self.n[1:])):
            raise PreconditionError(f"block degrees must be sorted non-decreasingly: {self.n}")

    @property
    def c(self) -> int:
        return sum(self.n)

    @property
    def d(self) -> int:
        return len(self.n)

    def __str__(self) -> str:
        return "(" + ",".join(str(v) for v in self.n) + ")"


@dataclass(frozen=True, slots=True)
class ScrollMatrix:
    """The rearranged 2 x c column matrix of a scroll."""

    spec: ScrollSpec
    columns: tuple[Column, ...]

    def block_of_column(self, index: int) -> int:
        """Block containing the entries of the 1-based column ``index``."""
        return self.columns[index - 1][0][0]


@dataclass(frozen=True, slots=True)
class LeavesProfile:
    """Leaf data attached to a window position ``alpha``.

    ``gamma[i]`` is the least 1-based column index >= alpha + 2 whose entries
    come from block i.  Those d indices always split into a run starting at
    alpha + 2 and a run ending at c; ``ell`` is the split parameter, and
    ``leaves`` is the induced set of d + 2 unit intervals.
    """

    alpha: int
    gamma: dict[int, int]
    ell: int
    leaves: frozenset[tuple[int, int]]


@dataclass(frozen=True, slots=True)
class MinorPolynomial:
    """A 2x2 minor, expanded: terms are (coefficient, exponent map) pairs.

    The exponent map is a sorted tuple of (entry, power) with total degree 2.
    """

    terms: tuple[tuple[int, tuple[tuple[EntryName, int], ...]], ...]

    def as_dict(self) -> dict[tuple[tuple[EntryName, int], ...], int]:
        return {expo: coeff for coeff, expo in self.terms}

    def total_degrees(self) -> set[int]:
        return {sum(p for _, p in expo) for _, expo in self.terms}


@lru_cache(maxsize=None)
def build_matrix(spec: ScrollSpec) -> ScrollMatrix:
    """Arrange the block columns of ``spec`` into the rearranged matrix.

    Columns 1..c-d are the non-last block columns, round-robin by column
    position then block; columns c-d+1..c are the last block columns in
    decreasing block order.  Blocks of degree 1 have no non-last columns and
    only appear in the final segment.
    """
    n = spec.n
    d = spec.d
    columns: list[Column] = []
    for j in range(max(n) - 1):
        for i in range(1, d + 1):
            if n[i - 1] >= j + 2:
                columns.append(((i, j), (i, j + 1)))
    for i in range(d, 0, -1):
        last = n[i - 1] - 1
        columns.append(((i, last), (i, last + 1)))
    if len(columns) != spec.c:
        raise InternalError(f"arranged {len(columns)} columns for c={spec.c}")
    return ScrollMatrix(spec=spec, columns=tuple(columns))


@lru_cache(maxsize=None)
def leaves_profile(spec: ScrollSpec, alpha: int) -> LeavesProfile:
    """Compute gamma, ell, and the leaf set for a window position alpha.

    Requires c >= d + 4 and 1 <= alpha <= c - d - 2.  The split parameter is
    found by solving the defining set equation exactly; failure to find one
    would mean the column arrangement is broken and raises ``InternalError``.
    """
    c, d = spec.c, spec.d
    if c < d + 4:
        raise PreconditionError(f"leaf profiles need c >= d + 4, got c={c}, d={d}")
    if not 1 <= alpha <= c - d - 2:
        raise PreconditionError(f"alpha must lie in [1, {c - d - 2}], got {alpha}")

    matrix = build_matrix(spec)
    gamma: dict[int, int] = {}
    for col in range(alpha + 2, c + 1):
        block = matrix.block_of_column(col)
        if block not in gamma:
            gamma[block] = col
        if len(gamma) == d:
            break
    if len(gamma) != d:
        raise InternalError(f"no column >= alpha+2 for some block: {gamma}")

    gamma_set = set(gamma.values())
    ell = None
    for candidate in range(2, d + 2):
        low = set(range(alpha + 2, alpha + candidate + 1))
        high = set(range(c - d + candidate, c + 1))
        if gamma_set == low | high and not low & high:
            ell = candidate
            break
    if ell is None:
        raise InternalError(f"gamma set {sorted(gamma_set)} admits no split parameter")

    betas = set(range(alpha, alpha + ell + 1)) | set(range(c - d + ell - 1, c))
    leaves = frozenset((b, b + 1) for b in betas)
    if len(leaves) != d + 2:
        raise InternalError(f"leaf set has {len(leaves)} elements, expected {d + 2}")
    return LeavesProfile(alpha=alpha, gamma=dict(sorted(gamma.items())), ell=ell, leaves=leaves)


def minor(spec: ScrollSpec, a: int, b: int) -> MinorPolynomial:
    """Determinant of the 2x2 submatrix on columns ``a < b``.

    Expanded as top(a)*bottom(b) - top(b)*bottom(a) with like monomials
    combined.  The result is never zero for distinct columns.
    """
    c = spec.c
    if not (1 <= a < b <= c):
        raise InvalidVertexError(f"need 1 <= a < b <= {c}, got ({a}, {b})")
    columns = build_matrix(spec).columns
    top_a, bot_a = columns[a - 1]
    top_b, bot_b = columns[b - 1]

    acc: dict[tuple[tuple[EntryName, int], ...], int] = {}
    for coeff, pair in ((1, (top_a, bot_b)), (-1, (top_b, bot_a))):
        expo: dict[EntryName, int] = {}
        for entry in pair:
            expo[entry] = expo.get(entry, 0) + 1
        key = tuple(sorted(expo.items()))
        acc[key] = acc.get(key, 0) + coeff
    terms = tuple(sorted((coeff, expo) for expo, coeff in acc.items() if coeff))
    if not terms:
        raise InternalError(f"columns {a} and {b} produced a zero minor")
    return MinorPolynomial(terms=terms)
