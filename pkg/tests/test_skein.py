import pytest
from hypothesis import given, strategies as st

from tanglekit.coloring import determinant
from tanglekit.diagram import LinkDiagram, parse_pd, resolve
from tanglekit.skein import (
    AlignedWords,
    FareyPair,
    ScanReport,
    TangleTemplate,
    TemplateError,
    aligned_words,
    compatible_classes_for_slot,
    farey_neighbor,
    figure8_template,
    fit_coefficients,
    fitted,
    insertion_det,
    mediant,
    oriented_triple,
    orientation_compatible,
    partner,
    reduced_fractions,
    splice,
    two_slot_scan,
    unoriented_triple,
    zero_locus,
)
from tanglekit.tangle import (
    AB_CD,
    AC_BD,
    AD_BC,
    ANTIPARALLEL,
    PARALLEL,
    TangleFraction,
    connectivity,
)

F = TangleFraction.parse


def farey_ok(f1, f2) -> bool:
    return abs(f1.p * f2.q - f1.q * f2.p) == 1


class TestFareyNeighbor:
    def test_examples(self):
        assert farey_neighbor(F("1/0")) == F("0/1")
        assert farey_neighbor(F("5/7")) == F("2/3")
        # brute force over q' <= 5 confirms 1/3 is a valid canonical choice
        assert farey_neighbor(F("2/5")) in (F("1/2"), F("1/3"))

    def test_identity_holds_everywhere(self):
        for f in reduced_fractions(25):
            g = farey_neighbor(f)
            assert farey_ok(f, g), (f, g)

    def test_neighbors_of_trivials(self):
        assert farey_neighbor(F("0/1")) == F("1/0")


class TestMediant:
    def test_examples(self):
        assert mediant(FareyPair(F("0/1"), F("1/0"))) == F("1/1")
        assert mediant(FareyPair(F("1/2"), F("1/3"))) == F("2/5")

    def test_integer_neighbor_family(self):
        # (v+1)/1 with (vd+d-1)/d are neighbors; their mediant follows suit
        for v in range(6):
            for d in range(1, 6):
                a = F(f"{v + 1}/1")
                c = TangleFraction.make(v * d + d - 1, d)
                pair = FareyPair(a, c)
                m = mediant(pair)
                assert m == TangleFraction.make(v + 1 + c.p, 1 + c.q)

    def test_rejects_non_neighbors(self):
        with pytest.raises(ValueError):
            FareyPair(F("1/3"), F("1/5"))

    def test_mediant_is_reduced_automatically(self):
        for f in reduced_fractions(12):
            g = farey_neighbor(f)
            m = mediant(FareyPair(f, g))
            from math import gcd

            assert gcd(abs(m.p), m.q) == 1

    @given(st.integers(-40, 40), st.integers(0, 40))
    def test_triple_classes_pairwise_distinct(self, p, q):
        if p == 0 and q == 0:
            return
        f = TangleFraction.make(p, q)
        g = farey_neighbor(f)
        m = mediant(FareyPair(f, g))
        assert len({f.parity(), g.parity(), m.parity()}) == 3


class TestFigure8Template:
    def test_fit_is_det_q(self):
        t = TangleTemplate(parse_pd("T[1,2,1,2]"))
        assert fit_coefficients(t) == (1, 0)
        assert fitted(t).coeffs == ((1, 0),)

    def test_insertions(self):
        t = figure8_template()
        assert determinant(splice(t, 0, F("0/1"))) == 1  # unknot
        assert determinant(splice(t, 0, F("1/0"))) == 0  # split pair
        assert determinant(splice(t, 0, F("1/2"))) == 2  # Hopf link
        assert determinant(splice(t, 0, F("1/3"))) == 3  # trefoil

    def test_closure_det_is_abs_q(self):
        t = figure8_template()
        for f in reduced_fractions(8):
            assert determinant(splice(t, 0, f)) == f.q, f

    def test_zero_locus(self):
        assert zero_locus(figure8_template()) == F("1/0")

    def test_zero_locus_examples(self):
        t = TangleTemplate(parse_pd("T[1,2,1,2]"), ((3, 2),))
        assert zero_locus(t) == F("3/2")
        t = TangleTemplate(parse_pd("T[1,2,1,2]"), ((1, 1),))
        assert zero_locus(t) == F("1/1")

    def test_zero_locus_rejects_null_model(self):
        t = TangleTemplate(parse_pd("T[1,2,1,2]"), ((0, 0),))
        with pytest.raises(TemplateError):
            zero_locus(t)

    def test_insertion_det_against_splice(self):
        t = figure8_template()
        for f in reduced_fractions(6):
            assert insertion_det(t, 0, f) == determinant(splice(t, 0, f))


class TestOrientation:
    def test_compatible_classes_parallel(self):
        t = figure8_template(PARALLEL)
        assert compatible_classes_for_slot(t, 0) == frozenset({AD_BC, AC_BD})

    def test_compatible_classes_antiparallel(self):
        t = figure8_template(ANTIPARALLEL)
        assert compatible_classes_for_slot(t, 0) == frozenset({AB_CD, AC_BD})

    def test_even_denominator_compatible_both_ways(self):
        for tag in (PARALLEL, ANTIPARALLEL):
            t = figure8_template(tag)
            assert orientation_compatible(t, 0, F("1/2"))
            assert orientation_compatible(t, 0, F("3/4"))

    def test_one_one_only_parallel(self):
        assert orientation_compatible(figure8_template(PARALLEL), 0, F("1/1"))
        assert not orientation_compatible(
            figure8_template(ANTIPARALLEL), 0, F("1/1")
        )

    def test_requires_oriented_template(self):
        with pytest.raises(TemplateError):
            orientation_compatible(figure8_template(), 0, F("1/1"))

    def test_oriented_splice_rejects_incompatible(self):
        t = figure8_template(ANTIPARALLEL)
        with pytest.raises(TemplateError):
            splice(t, 0, F("1/1"))
        out = splice(t, 0, F("2/3"))
        assert isinstance(out, LinkDiagram)
        assert out.is_oriented


class TestOrientedTriple:
    def test_base_pair(self):
        pair = FareyPair(F("0/1"), F("1/0"))
        tri = oriented_triple(pair, figure8_template(PARALLEL), 0)
        assert tri.mediant == F("1/1")
        assert tri.partner == F("-1/1")
        assert tri.resolution == F("1/0")

    def test_ladder_pair(self):
        pair = FareyPair(F("1/4"), F("0/1"))
        tri_p = oriented_triple(pair, figure8_template(PARALLEL), 0)
        assert tri_p.mediant == F("1/5")
        assert tri_p.partner == F("1/3")
        assert tri_p.resolution == F("1/4")

    def test_antiparallel_selection(self):
        pair = FareyPair(F("1/2"), F("1/3"))
        tri = oriented_triple(pair, figure8_template(ANTIPARALLEL), 0)
        assert tri.mediant == F("2/5")
        assert tri.partner == F("0/1")
        assert tri.resolution == F("1/2")

    def test_incompatible_mediant_rejected(self):
        pair = FareyPair(F("1/1"), F("0/1"))  # mediant 1/2? no: 1/2 e1 fine
        # choose a pair with odd/odd mediant and an antiparallel template
        pair = FareyPair(F("1/2"), F("0/1"))  # mediant 1/3, class AD|BC
        with pytest.raises(TemplateError):
            oriented_triple(pair, figure8_template(ANTIPARALLEL), 0)


class TestAlignedWords:
    def test_base_case(self):
        aw = aligned_words(FareyPair(F("0/1"), F("1/0")))
        assert aw.res_block_fraction == F("0/1")
        assert aw.res_trivial_fraction == F("1/0")
        assert len(aw.mediant.crossings) == 1

    def test_fractions_and_flip(self):
        pair = FareyPair(F("1/2"), F("1/3"))
        aw = aligned_words(pair)
        assert {aw.res_block_fraction, aw.res_trivial_fraction} == {F("1/2"), F("1/3")}
        assert aw.partner_fraction == F("0/1")
        # flipped compilation differs from the mediant's in exactly one tuple
        diff = [
            i
            for i, (x, y) in enumerate(
                zip(aw.mediant.crossings, aw.partner_flipped.crossings)
            )
            if x != y
        ]
        assert diff == [aw.distinguished]

    def test_mediant_witness_small(self):
        # spliced resolutions of the distinguished crossing carry the
        # determinants |q| of the two pair members; the flipped diagram
        # carries the partner's
        t = figure8_template()
        for f1, f2 in [(F("1/2"), F("1/3")), (F("2/3"), F("1/2")), (F("3/4"), F("2/3"))]:
            pair = FareyPair(f1, f2)
            aw = aligned_words(pair)
            d_med = splice(t, 0, aw.mediant)
            dets = {determinant(resolve(d_med, aw.distinguished, w)) for w in (0, 1)}
            assert dets == {f1.q, f2.q}
            d_part = splice(t, 0, aw.partner_flipped)
            assert determinant(d_part) == aw.partner_fraction.q


class TestTwoSlotScan:
    def test_necklace_at_most_one_zero(self):
        t = TangleTemplate(parse_pd("T[1,2,3,4] T[2,1,4,3]"))
        report = two_slot_scan(t, 0, 1, 4)
        assert report.max_zero_count <= 1

    def test_bound_zero_empty(self):
        t = TangleTemplate(parse_pd("T[1,2,3,4] T[2,1,4,3]"))
        report = two_slot_scan(t, 0, 1, 0)
        assert report.records == ()

    def test_knot_forming_companions_have_odd_nonzero_det(self):
        from tanglekit.diagram import components

        t = TangleTemplate(parse_pd("T[1,2,3,4] T[2,1,4,3]"))
        seen_knot = False
        for x in reduced_fractions(3):
            filled = t and splice(t, 0, x)
            for y in reduced_fractions(3):
                out = splice(filled, 0, y)
                if components(out) == 1:
                    seen_knot = True
                    d = determinant(out)
                    assert d % 2 == 1 and d != 0, (x, y)
        assert seen_knot

    def test_report_lines_format(self):
        t = TangleTemplate(parse_pd("T[1,2,3,4] T[2,1,4,3]"))
        report = two_slot_scan(t, 0, 1, 1)
        for line in report.lines():
            assert line.count("|") == 2

    def test_slot_order_does_not_change_the_law(self):
        t = TangleTemplate(parse_pd("T[1,2,3,4] T[3,4,1,2]"))
        fwd = two_slot_scan(t, 0, 1, 3)
        rev = two_slot_scan(t, 1, 0, 3)
        assert fwd.max_zero_count <= 1 and rev.max_zero_count <= 1
        assert len(fwd.records) == len(rev.records)


class TestPartnerNormalization:
    def test_negative_denominator_normalized(self):
        assert partner(FareyPair(F("1/2"), F("1/3"))) == F("0/1")
        assert partner(FareyPair(F("0/1"), F("1/0"))) == F("-1/1")

    def test_unoriented_triple(self):
        tri = unoriented_triple(FareyPair(F("1/2"), F("1/3")))
        assert tri.mediant == F("2/5")
        assert tri.kind == "unoriented"
