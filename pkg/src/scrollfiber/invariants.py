"""Numerical invariants of the fiber cone via the certified facet order.

The h-vector is read off the certified quotient degrees and cross-checked
against an independent face count of the complex: the number of degree-t
monomials supported on faces must match the h-polynomial expansion in every
window degree, otherwise the computation refuses to report.  Regularity is
the h-degree, dimension is the facet size, the a-invariant their difference,
the reduction number equals the regularity, and Gorensteinness is decided by
palindromicity of the h-vector, all compared against closed forms in c and d.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .dual_quotients import ColonReport, _verified
from .errors import CapacityError, InternalError, PreconditionError, VerificationError
from .facet_complex import Facet, _enumerated, vertex_set
from .scroll_model import ScrollSpec

DEFAULT_FACE_NODE_CAPACITY = 20_000_000


@dataclass(frozen=True, slots=True)
class HVector:
    """Shelling h-vector: h[k] counts facets of quotient degree k."""

    h: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.h) - 1

    @property
    def total(self) -> int:
        return sum(self.h)

    @property
    def is_palindromic(self) -> bool:
        return self.h == self.h[::-1]


@dataclass(frozen=True, slots=True, eq=False)
class HilbertData:
    """Hilbert function window of the face ring, with its h-polynomial."""

    dim: int
    h_polynomial: HVector
    hf: dict[int, int]


@dataclass(frozen=True, slots=True)
class InvariantReport:
    c: int
    d: int
    facet_count: int | None
    h_vector: tuple[int, ...] | None
    dim: int
    reg: int
    a_invariant: int
    reduction_number: int
    gorenstein: bool
    closed_form_match: bool
    mode: str


def h_vector_from_quotients(reports: Sequence[ColonReport]) -> HVector:
    """h[k] = number of facets with exactly k (singleton) colon generators.

    Refuses to compute from a non-linear certification.
    """
    counts: dict[int, int] = {}
    for report in reports:
        if not report.linear:
            raise VerificationError("non-linear colon report present; h-vector undefined")
        k = len(report.computed_generators)
        counts[k] = counts.get(k, 0) + 1
    top = max(counts)
    h = [counts.get(k, 0) for k in range(top + 1)]
    while len(h) > 1 and h[-1] == 0:
        h.pop()
    return HVector(h=tuple(h))


def face_counts(
    facets: Sequence[Facet],
    max_size: int,
    *,
    capacity: int = DEFAULT_FACE_NODE_CAPACITY,
) -> tuple[int, ...]:
    """Count distinct faces of each size 1..max_size below the given facets.

    Faces are generated once each by a lexicographic depth-first walk: a face
    extends only by vertices above its largest one, and the covering facets
    are narrowed along the way, so no dedup set is needed.

    Returns:
        f where f[k-1] is the number of faces with k vertices.

    Raises:
        CapacityError: more than ``capacity`` faces would be visited.
    """
    if not facets:
        return (0,) * max_size
    spec = facets[0].spec
    ids = {v: i for i, v in enumerate(vertex_set(spec))}
    nv = len(ids)
    incidence = np.zeros((len(facets), nv), dtype=bool)
    for row, facet in enumerate(facets):
        for v in facet.vertices:
            incidence[row, ids[v]] = True

    counts = [0] * (max_size + 1)
    visited = 0

    def walk(last: int, cover: np.ndarray, size: int) -> None:
        nonlocal visited
        sub = incidence[cover]
        present = sub[:, last + 1 :].any(axis=0)
        for w in np.flatnonzero(present) + last + 1:
            visited += 1
            if visited > capacity:
                raise CapacityError(
                    f"face walk exceeded {capacity} nodes; raise the capacity to proceed"
                )
            counts[size + 1] += 1
            if size + 1 < max_size:
                walk(int(w), cover[sub[:, w]], size + 1)

    walk(-1, np.arange(len(facets), dtype=np.int32), 0)
    return tuple(counts[1:])


def _hf_from_counts(f: Sequence[int], t: int) -> int:
    if t == 0:
        return 1
    if t > len(f):
        raise PreconditionError(f"face counts only go up to size {len(f)}, need {t}")
    return sum(f[k - 1] * math.comb(t - 1, k - 1) for k in range(1, t + 1))


def hilbert_function_by_faces(
    spec: ScrollSpec,
    facets: Sequence[Facet],
    t: int,
    *,
    capacity: int = DEFAULT_FACE_NODE_CAPACITY,
) -> int:
    """Number of degree-t monomials whose support is a face of the complex."""
    if t < 0:
        raise PreconditionError(f"degree must be non-negative, got {t}")
    if t == 0:
        return 1
    return _hf_from_counts(face_counts(facets, t, capacity=capacity), t)


def hilbert_function_from_h(h: Sequence[int], dim: int, t: int) -> int:
    """Expand the Hilbert series numerator h over (1-t)^dim at degree t."""
    return sum(
        h[j] * math.comb(t - j + dim - 1, dim - 1) for j in range(min(t, len(h) - 1) + 1)
    )


def numerator_from_face_counts(f: Sequence[int], dim: int) -> tuple[int, ...]:
    """Clear (1-t)^dim from the face-count Hilbert series; needs the full
    f-vector (all sizes up to dim)."""
    full = (1,) + tuple(f)
    coeffs = [
        sum(
            full[j] * (-1) ** (k - j) * math.comb(dim - j, k - j)
            for j in range(0, min(k, len(full) - 1) + 1)
        )
        for k in range(dim + 1)
    ]
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


@lru_cache(maxsize=None)
def _face_counts_cached(
    spec: ScrollSpec, max_size: int, capacity: int = DEFAULT_FACE_NODE_CAPACITY
) -> tuple[int, ...]:
    return face_counts(_enumerated(spec), max_size, capacity=capacity)


def closed_form(c: int, d: int) -> InvariantReport:
    """Predicted invariants from c and d alone.

    Regularity is ceil((c+d-1)/2) for c >= d+4 and c-3 for 2 < c < d+4;
    dimension is c+d, respectively 2c-3.  The degenerate c = 2 scroll maps
    onto a polynomial ring in one variable, so its regularity is 0.
    """
    if c < 2 or d < 1:
        raise PreconditionError(f"need c >= 2 and d >= 1, got c={c}, d={d}")
    if c >= d + 4:
        reg = (c + d) // 2  # = ceil((c + d - 1) / 2)
        dim = c + d
    else:
        reg = c - 3 if c > 2 else 0
        dim = 2 * c - 3
    gorenstein = c in {2, 3, 2 + d, 3 + d, 4 + d}
    return InvariantReport(
        c=c,
        d=d,
        facet_count=None,
        h_vector=None,
        dim=dim,
        reg=reg,
        a_invariant=reg - dim,
        reduction_number=reg,
        gorenstein=gorenstein,
        closed_form_match=True,
        mode="prediction-only",
    )


@lru_cache(maxsize=None)
def _hilbert_data(spec: ScrollSpec, window: int, face_capacity: int) -> HilbertData:
    result = _verified(spec)
    if not result.passed:
        raise VerificationError(f"linear-quotients certification failed for {spec}")
    hv = h_vector_from_quotients(result.reports)
    dim = spec.c + spec.d
    f = _face_counts_cached(spec, window, face_capacity)
    hf: dict[int, int] = {}
    for t in range(window + 1):
        by_faces = _hf_from_counts(f, t)
        by_h = hilbert_function_from_h(hv.h, dim, t)
        if by_faces != by_h:
            raise VerificationError(
                f"Hilbert paths disagree for {spec} at degree {t}: "
                f"faces give {by_faces}, h-polynomial gives {by_h}"
            )
        hf[t] = by_faces
    return HilbertData(dim=dim, h_polynomial=hv, hf=hf)


def hilbert_data(
    spec: ScrollSpec,
    *,
    window: int = 5,
    face_capacity: int = DEFAULT_FACE_NODE_CAPACITY,
) -> HilbertData:
    """Hilbert window computed two independent ways; the face count is the
    authority and any disagreement with the h-expansion is a hard failure."""
    return _hilbert_data(spec, window, face_capacity)


def full_report(
    spec: ScrollSpec,
    *,
    hilbert_window: int = 5,
    face_capacity: int = DEFAULT_FACE_NODE_CAPACITY,
) -> InvariantReport:
    """Computed invariants for ``spec``, checked against the closed forms.

    For c < d + 4 no complex is built and the closed-form predictions are
    returned as-is, flagged prediction-only.  Verification failures and
    Hilbert-path disagreements propagate as ``VerificationError``.
    """
    c, d = spec.c, spec.d
    predicted = closed_form(c, d)
    if c < d + 4:
        return predicted

    data = hilbert_data(spec, window=hilbert_window, face_capacity=face_capacity)
    facets = _enumerated(spec)
    if any(len(f.vertices) != c + d for f in facets):
        raise InternalError(f"facet of size != {c + d} enumerated for {spec}")

    hv = data.h_polynomial
    reg = hv.degree
    dim = c + d
    gorenstein = hv.is_palindromic
    matches = (
        reg == predicted.reg
        and dim == predicted.dim
        and reg - dim == predicted.a_invariant
        and reg == predicted.reduction_number
        and gorenstein == predicted.gorenstein
    )
    return InvariantReport(
        c=c,
        d=d,
        facet_count=len(facets),
        h_vector=hv.h,
        dim=dim,
        reg=reg,
        a_invariant=reg - dim,
        reduction_number=reg,
        gorenstein=gorenstein,
        closed_form_match=matches,
        mode="computed",
    )
