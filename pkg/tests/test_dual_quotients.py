"""Facet order, colon generators, predictions, and the certification."""

from __future__ import annotations

import pytest

from scrollfiber import (
    DomainError,
    Facet,
    ScrollSpec,
    UnsupportedRegimeError,
    colon_generators,
    dual_support,
    enumerate_facets,
    first_facet,
    precedes,
    predict_LG,
    verify_linear_quotients,
)

SPEC_245 = ScrollSpec((2, 4, 5))
EXAMPLE_245 = Facet(
    vertices=frozenset(
        {
            (1, 2), (1, 3), (1, 4), (1, 6), (1, 7), (1, 8), (1, 9), (1, 11),
            (2, 3), (3, 4), (4, 5), (4, 6), (9, 11), (10, 11),
        }
    ),
    alpha=1,
    spec=SPEC_245,
)


class TestOrder:
    def test_higher_group_precedes(self):
        facets = enumerate_facets(ScrollSpec((7,)))
        in_three = next(f for f in facets if f.alpha == 3)
        in_two = next(f for f in facets if f.alpha == 2)
        assert precedes(in_three, in_two)
        assert not precedes(in_two, in_three)

    def test_irreflexive(self):
        facet = enumerate_facets(ScrollSpec((5,)))[0]
        assert not precedes(facet, facet)

    def test_total_on_distinct_facets(self):
        facets = enumerate_facets(ScrollSpec((6,)))
        for i, f in enumerate(facets):
            for g in facets[i + 1 :]:
                assert precedes(f, g) != precedes(g, f)

    def test_enumeration_is_descending(self):
        facets = enumerate_facets(ScrollSpec((1, 5)))
        assert all(precedes(f, g) for f, g in zip(facets, facets[1:]))

    def test_cross_spec_comparison_rejected(self):
        f = enumerate_facets(ScrollSpec((5,)))[0]
        g = enumerate_facets(ScrollSpec((6,)))[0]
        with pytest.raises(DomainError):
            precedes(f, g)

    def test_dual_support_is_the_complement(self):
        facet = enumerate_facets(ScrollSpec((5,)))[0]
        support = dual_support(facet)
        assert len(support) == 10 - (5 + 1)
        assert set(support).isdisjoint(facet.vertices)
        assert list(support) == sorted(support)


class TestColonGenerators:
    def test_greatest_facet_has_empty_colon(self):
        spec = ScrollSpec((6,))
        facets = enumerate_facets(spec)
        greatest = first_facet(spec, spec.c - spec.d - 2)
        assert facets[0].vertices == greatest.vertices
        assert colon_generators(facets[0], facets) == frozenset()

    def test_group_first_facets_have_principal_colon(self):
        for n in [(6,), (7,), (2, 4), (2, 2, 2, 2)]:
            spec = ScrollSpec(n)
            facets = enumerate_facets(spec)
            for alpha in range(1, spec.c - spec.d - 2):
                gens = colon_generators(first_facet(spec, alpha), facets)
                assert gens == frozenset({frozenset({(alpha, alpha + 1)})})

    def test_incomplete_list_detected(self):
        spec = ScrollSpec((5,))
        facets = enumerate_facets(spec)
        with pytest.raises(DomainError):
            colon_generators(facets[1], facets[1:])

    def test_worked_245_equality(self):
        gens = colon_generators(EXAMPLE_245, enumerate_facets(SPEC_245))
        expected = frozenset({(1, 2), (1, 3), (1, 4), (1, 6), (1, 9)})
        assert gens == frozenset(frozenset({v}) for v in expected)


class TestPredictLG:
    def test_worked_245_column_one(self):
        predicted = predict_LG(EXAMPLE_245)
        column_one = {v for v in predicted if v[0] == 1}
        assert column_one == {(1, 2), (1, 3), (1, 4), (1, 6), (1, 9)}
        assert predicted == column_one

    def test_first_facets(self):
        for n in [(6,), (1, 5), (2, 2, 2, 2), (2, 2, 4, 4)]:
            spec = ScrollSpec(n)
            top = spec.c - spec.d - 2
            assert predict_LG(first_facet(spec, top)) == frozenset()
            for alpha in range(1, top):
                assert predict_LG(first_facet(spec, alpha)) == {(alpha, alpha + 1)}

    def test_prediction_stays_inside_the_facet(self):
        for facet in enumerate_facets(ScrollSpec((2, 2, 2, 2))):
            predicted = predict_LG(facet)
            assert predicted <= facet.vertices
            for b in {v[0] for v in facet.vertices}:
                top = max(v for v in facet.vertices if v[0] == b)
                assert top not in predicted

    def test_max_prediction_size_matches_regularity(self):
        for n in [(5,), (6,), (2, 4), (2, 2, 2, 2)]:
            spec = ScrollSpec(n)
            biggest = max(len(predict_LG(f)) for f in enumerate_facets(spec))
            assert biggest == (spec.c + spec.d) // 2


class TestVerification:
    @pytest.mark.parametrize("n", [(5,), (6,), (1, 5), (2, 4), (3, 3), (2, 2, 2, 2)])
    def test_desk_specs_certify(self, n):
        result = verify_linear_quotients(ScrollSpec(n))
        assert result.passed
        assert all(r.linear and r.matches_prediction for r in result.reports)
        assert result.reports[0].computed_generators == frozenset()

    @pytest.mark.parametrize("n", [(5,), (6,), (1, 5), (2, 2, 2, 2)])
    def test_indexed_engine_agrees_with_full_scan(self, n):
        indexed = verify_linear_quotients(ScrollSpec(n), mode="indexed")
        full = verify_linear_quotients(ScrollSpec(n), mode="full")
        assert [r.facet.vertices for r in indexed.reports] == [
            r.facet.vertices for r in full.reports
        ]
        assert [r.computed_generators for r in indexed.reports] == [
            r.computed_generators for r in full.reports
        ]

    def test_small_scroll_rejected(self):
        with pytest.raises(UnsupportedRegimeError):
            verify_linear_quotients(ScrollSpec((2, 2, 2)))

    def test_mutated_leftmost_leaf_rule_fails(self):
        result = verify_linear_quotients(ScrollSpec((2, 4)), mutation="c2")
        assert not result.passed
        assert result.failures()
        # the mutation only disturbs predictions, never the computed colons
        assert all(r.linear for r in result.reports)

    def test_mutated_sibling_rule_fails(self):
        result = verify_linear_quotients(ScrollSpec((6,)), mutation="b2")
        assert not result.passed

    def test_swapped_group_order_is_a_diagnostic(self):
        result = verify_linear_quotients(ScrollSpec((5,)), mutation="swap-groups")
        default = verify_linear_quotients(ScrollSpec((5,)))
        assert isinstance(result.passed, bool)
        assert [r.facet.alpha for r in result.reports] != [
            r.facet.alpha for r in default.reports
        ]

    @pytest.mark.parametrize("n", [(5,), (6,), (1, 5)])
    def test_indexed_engine_agrees_with_full_scan_under_mutated_order(self, n):
        # The index logic is order-agnostic; it must reproduce the quadratic
        # scan even when the order no longer yields linear quotients.
        indexed = verify_linear_quotients(ScrollSpec(n), mutation="swap-groups")
        full = verify_linear_quotients(ScrollSpec(n), mode="full", mutation="swap-groups")
        assert [r.computed_generators for r in indexed.reports] == [
            r.computed_generators for r in full.reports
        ]
        assert indexed.passed == full.passed
