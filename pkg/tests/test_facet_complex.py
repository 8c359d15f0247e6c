"""Facet recognition, trees, and enumeration against the exhaustive filter."""

from __future__ import annotations

import pytest
from conftest import brute_force_facets, crossing

from scrollfiber import (
    Facet,
    ScrollSpec,
    StructuralError,
    UnsupportedRegimeError,
    enumerate_facets,
    facet_tree,
    first_facet,
    is_facet,
    leaves_profile,
    precedes,
)

SPEC_2244 = ScrollSpec((2, 2, 4, 4))
LEAVES_2244_A2 = frozenset({(2, 3), (3, 4), (4, 5), (5, 6), (10, 11), (11, 12)})
FIRST_2244_A2 = frozenset((k, 12) for k in range(1, 11)) | LEAVES_2244_A2

SPEC_245 = ScrollSpec((2, 4, 5))
EXAMPLE_245 = frozenset(
    {
        (1, 2), (1, 3), (1, 4), (1, 6), (1, 7), (1, 8), (1, 9), (1, 11),
        (2, 3), (3, 4), (4, 5), (4, 6), (9, 11), (10, 11),
    }
)


class TestIsFacet:
    def test_first_facet_2244_recognized(self):
        assert is_facet(SPEC_2244, FIRST_2244_A2)

    def test_dropping_a_vertex_breaks_it(self):
        assert not is_facet(SPEC_2244, FIRST_2244_A2 - {(10, 12)})

    def test_worked_245_example(self):
        assert is_facet(SPEC_245, EXAMPLE_245)

    def test_small_scroll_rejected(self):
        with pytest.raises(UnsupportedRegimeError):
            is_facet(ScrollSpec((1, 1, 1)), {(1, 3)})

    def test_removing_any_vertex_never_gives_a_facet(self):
        for facet in enumerate_facets(ScrollSpec((6,)))[:8]:
            for v in sorted(facet.vertices)[:3]:
                assert not is_facet(facet.spec, facet.vertices - {v})


class TestFacetTree:
    def test_tree_of_first_facet_2244(self):
        tree = facet_tree(Facet(FIRST_2244_A2, alpha=2, spec=SPEC_2244))
        assert tree.root == (1, 12)
        assert tree.children[(1, 12)] == ((2, 12),)
        assert tree.children[(2, 12)] == ((2, 3), (3, 12))
        assert tree.children[(5, 12)] == ((5, 6), (6, 12))
        assert tree.children[(6, 12)] == ((7, 12),)
        assert tree.children[(10, 12)] == ((10, 11), (11, 12))
        assert tree.parent[(10, 11)] == (10, 12)

    def test_roots_and_leaf_counts(self):
        for n in [(5,), (2, 4), (2, 2, 2, 2)]:
            spec = ScrollSpec(n)
            for facet in enumerate_facets(spec):
                tree = facet_tree(facet)
                assert tree.root == (1, spec.c)
                assert len(tree.leaves()) == spec.d + 2

    def test_non_facet_raises(self):
        broken = Facet(FIRST_2244_A2 - {(10, 12)}, alpha=2, spec=SPEC_2244)
        with pytest.raises(StructuralError):
            facet_tree(broken)


class TestEnumeration:
    def test_matches_exhaustive_filter_smallest(self):
        spec = ScrollSpec((5,))
        assert {f.vertices for f in enumerate_facets(spec)} == brute_force_facets(spec)

    def test_first_facet_is_enumerated(self):
        vertex_sets = {f.vertices for f in enumerate_facets(SPEC_2244)}
        assert FIRST_2244_A2 in vertex_sets

    def test_facet_sizes(self):
        for n in [(6,), (1, 5), (2, 2, 2, 2)]:
            spec = ScrollSpec(n)
            assert all(len(f.vertices) == spec.c + spec.d for f in enumerate_facets(spec))

    def test_deterministic_output(self):
        spec = ScrollSpec((7,))
        once = [(f.alpha, f.vertices) for f in enumerate_facets(spec)]
        again = [(f.alpha, f.vertices) for f in enumerate_facets(spec)]
        assert once == again

    def test_groups_are_disjoint(self):
        # A facet's leaf set pins down its group: unit intervals identify alpha.
        for facet in enumerate_facets(ScrollSpec((2, 2, 2, 2))):
            units = {v for v in facet.vertices if v[1] - v[0] == 1}
            assert units == leaves_profile(facet.spec, facet.alpha).leaves

    def test_count_depends_only_on_c_and_d(self):
        counts = {n: len(enumerate_facets(ScrollSpec(n))) for n in [(1, 5), (2, 4), (3, 3)]}
        assert len(set(counts.values())) == 1
        big = {n: len(enumerate_facets(ScrollSpec(n))) for n in [(1, 2, 2, 4), (2, 2, 2, 3)]}
        assert len(set(big.values())) == 1
        wide = {n: len(enumerate_facets(ScrollSpec(n))) for n in [(1, 1, 1, 5), (2, 2, 2, 2)]}
        assert len(set(wide.values())) == 1

    def test_structural_conditions_hold(self):
        for facet in enumerate_facets(ScrollSpec((1, 2, 2, 4))):
            vertices = sorted(facet.vertices)
            assert not any(
                crossing(u, v) for i, u in enumerate(vertices) for v in vertices[i + 1 :]
            )

    def test_small_scroll_rejected(self):
        with pytest.raises(UnsupportedRegimeError):
            enumerate_facets(ScrollSpec((2, 2, 2)))


class TestFirstFacet:
    def test_explicit_form_2244(self):
        assert first_facet(SPEC_2244, 2).vertices == FIRST_2244_A2

    def test_always_a_facet(self):
        for n in [(5,), (6,), (1, 5), (2, 2, 2, 2), (1, 2, 2, 4)]:
            spec = ScrollSpec(n)
            for alpha in range(1, spec.c - spec.d - 1):
                facet = first_facet(spec, alpha)
                assert is_facet(spec, facet.vertices)
                assert facet.alpha == alpha

    def test_greatest_in_its_group(self):
        for n in [(6,), (2, 4), (2, 2, 2, 2)]:
            spec = ScrollSpec(n)
            for alpha in range(1, spec.c - spec.d - 1):
                first = first_facet(spec, alpha)
                group = [f for f in enumerate_facets(spec) if f.alpha == alpha]
                assert all(
                    precedes(first, other)
                    for other in group
                    if other.vertices != first.vertices
                )
