"""Facet ordering, colon ideals of the dual generators, and their certification.

Every facet F corresponds to the squarefree monomial on its complement
V \\ F.  Facets are ordered greatest-first: larger window position alpha
wins, and within a group the complements are compared lexicographically
under the variable order in which T[a,b] beats T[a',b'] when a < a', or
a = a' and b < b'.  Successive colon ideals of the ordered dual generators
are generated by the inclusion-minimal difference sets F \\ F' over earlier
facets F'; the certification checks that these are all singletons and match
the combinatorial prediction read off the facet tree.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import DomainError, PreconditionError, UnsupportedRegimeError
from .facet_complex import (
    Facet,
    Vertex,
    _enumerated,
    facet_tree,
    first_facet,
    vertex_set,
)
from .scroll_model import ScrollSpec

#: Named rule mutations for mutation-testing the checker.  Only for
#: diagnostics; production verification uses ``mutation=None``.
MUTATIONS: dict[str, str] = {
    "c2": "predict the leftmost leaf as a generator even in the greatest group",
    "b2": "ignore the two-children clause for middle column entries",
    "swap-groups": "transpose the two greatest groups in the facet order",
}


@dataclass(frozen=True, slots=True)
class ColonReport:
    """Colon-ideal data for one facet.

    ``computed_generators`` holds the inclusion-minimal difference sets
    against all earlier facets; the quotient is linear when every one of
    them is a singleton, and matches the prediction when those singletons
    are exactly ``predicted_LG``.
    """

    facet: Facet
    computed_generators: frozenset[frozenset[Vertex]]
    predicted_LG: frozenset[Vertex]
    linear: bool
    matches_prediction: bool


@dataclass(frozen=True, slots=True)
class VerificationResult:
    spec: ScrollSpec
    reports: tuple[ColonReport, ...]
    passed: bool
    mode: str = "indexed"
    mutation: str | None = None

    def failures(self) -> tuple[ColonReport, ...]:
        return tuple(r for r in self.reports if not (r.linear and r.matches_prediction))


@lru_cache(maxsize=None)
def _vertex_ids(spec: ScrollSpec) -> dict[Vertex, int]:
    # Ascending (a, b) order is exactly descending variable order.
    return {v: i for i, v in enumerate(vertex_set(spec))}


def dual_support(facet: Facet) -> tuple[Vertex, ...]:
    """Complement V \\ F listed from the greatest variable downwards."""
    vs = facet.vertices
    return tuple(v for v in vertex_set(facet.spec) if v not in vs)


def descending_order_key(facet: Facet):
    """Sort key that lists facets greatest-first.

    Within a group the dual supports, read from the greatest variable down,
    are compared position by position with the greater variable winning;
    on ascending-id tuples this is plain tuple order.
    """
    vid = _vertex_ids(facet.spec)
    comp = tuple(vid[v] for v in dual_support(facet))
    return (-facet.alpha, comp)


def _swapped_groups_key(facet: Facet):
    top = facet.spec.c - facet.spec.d - 2
    alpha = facet.alpha
    if alpha == top:
        alpha = top - 1
    elif alpha == top - 1:
        alpha = top
    vid = _vertex_ids(facet.spec)
    return (-alpha, tuple(vid[v] for v in dual_support(facet)))


def precedes(f: Facet, g: Facet) -> bool:
    """Whether f strictly precedes g (f is greater in the facet order)."""
    if f.spec != g.spec:
        raise DomainError(f"cannot compare facets of {f.spec} and {g.spec}")
    if f.alpha != g.alpha:
        return f.alpha > g.alpha
    sym = (f.vertices - g.vertices) | (g.vertices - f.vertices)
    if not sym:
        return False
    # The first variable on which the dual monomials differ is the one with
    # the smallest (a, b); the facet missing it has the greater dual.
    return min(sym) in g.vertices


def _check_mutation(mutation: str | None) -> None:
    if mutation is not None and mutation not in MUTATIONS:
        raise PreconditionError(
            f"unknown mutation {mutation!r}; available: {', '.join(sorted(MUTATIONS))}"
        )


def predict_LG(facet: Facet, *, mutation: str | None = None) -> frozenset[Vertex]:
    """Predicted linear colon generators of a facet, read off its tree.

    Within the column of vertices sharing a left endpoint b, sorted by right
    endpoint: the topmost entry never generates; a middle entry generates
    exactly when its node has a right sibling or two children; the bottom
    entry of a column of size >= 2 always generates when it is not a unit,
    and when it is the unit (b, b+1) it generates exactly for b = alpha in
    every group but the greatest.
    """
    _check_mutation(mutation)
    tree = facet_tree(facet)
    spec = facet.spec
    top_group = spec.c - spec.d - 2

    columns: dict[int, list[Vertex]] = {}
    for v in facet.vertices:
        columns.setdefault(v[0], []).append(v)

    out: set[Vertex] = set()
    for b, column in columns.items():
        column.sort()
        k = len(column)
        for j, v in enumerate(column, start=1):
            if j == k:
                continue
            if j > 1:
                include = tree.has_right_sibling(v) or len(tree.children[v]) == 2
                if mutation == "b2":
                    include = tree.has_right_sibling(v)
            elif v[1] == b + 1:
                include = b == facet.alpha and facet.alpha != top_group
                if mutation == "c2":
                    include = b == facet.alpha
            else:
                include = True
            if include:
                out.add(v)
    return frozenset(out)


def _minimal_sets(sets: Iterable[frozenset[Vertex]]) -> frozenset[frozenset[Vertex]]:
    kept: list[frozenset[Vertex]] = []
    for s in sorted(set(sets), key=len):
        if not any(k <= s for k in kept):
            kept.append(s)
    return frozenset(kept)


def _minimal_diffs(facet: Facet, earlier: Iterable[Facet]) -> frozenset[frozenset[Vertex]]:
    return _minimal_sets(facet.vertices - g.vertices for g in earlier)


def colon_generators(facet: Facet, all_facets: Sequence[Facet]) -> frozenset[frozenset[Vertex]]:
    """Inclusion-minimal difference sets of ``facet`` against all greater
    facets in ``all_facets`` -- the full quadratic scan.

    This is the audit path; ``verify_linear_quotients`` reaches the same
    sets through an inverted index.  The list must contain the globally
    greatest facet, otherwise it cannot be complete.
    """
    spec = facet.spec
    greatest = first_facet(spec, spec.c - spec.d - 2)
    if not any(f.vertices == greatest.vertices for f in all_facets):
        raise DomainError("facet list is missing the greatest facet; incomplete input")
    return _minimal_diffs(facet, (g for g in all_facets if precedes(g, facet)))


def _report_for(
    facet: Facet,
    computed: frozenset[frozenset[Vertex]],
    mutation: str | None,
) -> ColonReport:
    predicted = predict_LG(facet, mutation=mutation)
    linear = all(len(s) == 1 for s in computed)
    singletons = frozenset(next(iter(s)) for s in computed if len(s) == 1)
    return ColonReport(
        facet=facet,
        computed_generators=computed,
        predicted_LG=predicted,
        linear=linear,
        matches_prediction=linear and singletons == predicted,
    )


def _indexed_reports(
    facets: Sequence[Facet], spec: ScrollSpec, mutation: str | None
) -> list[ColonReport]:
    """One pass over the ordered facets with an inverted vertex index.

    For each facet F and member v, the facets among the already-seen
    (greater) ones containing F minus v are read off bitmask intersections;
    any hit makes v a singleton generator.  A minimal generator of higher
    degree exists exactly when some earlier facet contains every singleton
    generator; only such rare facets fall back to the quadratic scan.
    """
    vid = _vertex_ids(spec)
    vindex = [0] * len(vid)
    for rank, f in enumerate(facets):
        bit = 1 << rank
        for v in f.vertices:
            vindex[vid[v]] |= bit

    id_to_vertex = {i: v for v, i in vid.items()}
    reports: list[ColonReport] = []
    seen = 0
    for rank, f in enumerate(facets):
        ids = sorted(vid[v] for v in f.vertices)
        k = len(ids)
        prefix = [-1] * (k + 1)
        for i, u in enumerate(ids):
            prefix[i + 1] = prefix[i] & vindex[u]
        suffix = [-1] * (k + 1)
        for i in range(k - 1, -1, -1):
            suffix[i] = suffix[i + 1] & vindex[ids[i]]

        gens = [ids[i] for i in range(k) if seen & prefix[i] & suffix[i + 1]]
        witness = seen
        for g in gens:
            witness &= vindex[g]
        if witness:
            computed = _minimal_diffs(f, facets[:rank])
        else:
            computed = frozenset(frozenset((id_to_vertex[g],)) for g in gens)
        reports.append(_report_for(f, computed, mutation))
        seen |= 1 << rank
    return reports


def verify_linear_quotients(
    spec: ScrollSpec,
    *,
    mode: str = "indexed",
    mutation: str | None = None,
) -> VerificationResult:
    """Certify that the ordered dual generators have linear quotients.

    Every facet's minimal colon generators must be singletons equal to its
    prediction; the greatest facet's colon must be empty.  ``mode="full"``
    forces the quadratic audit scan on every facet.
    """
    if spec.c < spec.d + 4:
        raise UnsupportedRegimeError(f"no facet complex for c={spec.c} < d+4={spec.d + 4}")
    _check_mutation(mutation)
    if mode not in ("indexed", "full"):
        raise PreconditionError(f"mode must be 'indexed' or 'full', got {mode!r}")

    facets = list(_enumerated(spec))
    if mutation == "swap-groups":
        facets.sort(key=_swapped_groups_key)

    if mode == "full":
        reports = [
            _report_for(f, _minimal_diffs(f, facets[:rank]), mutation)
            for rank, f in enumerate(facets)
        ]
    else:
        reports = _indexed_reports(facets, spec, mutation)

    passed = all(r.linear and r.matches_prediction for r in reports)
    return VerificationResult(
        spec=spec, reports=tuple(reports), passed=passed, mode=mode, mutation=mutation
    )


@lru_cache(maxsize=None)
def _verified(spec: ScrollSpec) -> VerificationResult:
    """Cached default-mode verification, shared by the invariant pipeline."""
    return verify_linear_quotients(spec)
