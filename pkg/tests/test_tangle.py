import pytest
from hypothesis import given, strategies as st

from tanglekit.tangle import (
    AB_CD,
    AC_BD,
    AD_BC,
    ANTIPARALLEL,
    PARALLEL,
    ContinuedFraction,
    TangleFraction,
    TangleWord,
    cf_to_fraction,
    cf_to_word,
    compile_word,
    connectivity,
    fraction_to_cf,
    fraction_word,
    orientation_class,
    trace_connectivity,
    word_fraction,
)


def all_reduced(bound: int, include_infinity: bool = True):
    """All reduced p/q with |p|, q <= bound, plus 1/0."""
    out = []
    if include_infinity:
        out.append(TangleFraction(1, 0))
    for q in range(1, bound + 1):
        for p in range(-bound, bound + 1):
            from math import gcd

            if gcd(abs(p), q) == 1:
                out.append(TangleFraction(p, q))
    return out


class TestFraction:
    def test_normalization(self):
        assert TangleFraction.make(2, 4) == TangleFraction(1, 2)
        assert TangleFraction.make(-2, -4) == TangleFraction(1, 2)
        assert TangleFraction.make(2, -4) == TangleFraction(-1, 2)
        assert TangleFraction.make(-3, 0) == TangleFraction(1, 0)
        assert TangleFraction.make(0, -5) == TangleFraction(0, 1)

    def test_rejects_zero_over_zero(self):
        with pytest.raises(ValueError):
            TangleFraction.make(0, 0)

    def test_parse_and_str(self):
        assert TangleFraction.parse("9/7") == TangleFraction(9, 7)
        assert TangleFraction.parse("-3/2") == TangleFraction(-3, 2)
        assert TangleFraction.parse("4") == TangleFraction(4, 1)
        assert str(TangleFraction(1, 0)) == "1/0"


class TestContinuedFraction:
    def test_trivial_values(self):
        assert cf_to_fraction(ContinuedFraction((None,))) == TangleFraction(1, 0)
        assert cf_to_fraction(ContinuedFraction((0,))) == TangleFraction(0, 1)

    def test_hand_evaluated_example(self):
        # 1 + 1/(3 + 1/2) = 9/7
        assert cf_to_fraction(ContinuedFraction((2, 3, 1))) == TangleFraction(9, 7)

    def test_negative_terms(self):
        # 3 + 1/(-2 + 1/2) = 3 - 2/3 = 7/3
        assert cf_to_fraction(ContinuedFraction((2, -2, 3))) == TangleFraction(7, 3)

    def test_infinity_roundtrip(self):
        assert fraction_to_cf(TangleFraction(1, 0)) == ContinuedFraction((None,))

    def test_odd_length_enforced(self):
        with pytest.raises(ValueError):
            ContinuedFraction((1, 2))
        with pytest.raises(ValueError):
            ContinuedFraction(())

    def test_interior_zero_rejected(self):
        with pytest.raises(ValueError):
            ContinuedFraction((1, 0, 1))

    def test_parse(self):
        assert ContinuedFraction.parse("(2,3,1)") == ContinuedFraction((2, 3, 1))
        assert ContinuedFraction.parse("inf") == ContinuedFraction((None,))

    def test_roundtrip_exhaustive_small(self):
        for f in all_reduced(30):
            cf = fraction_to_cf(f)
            assert len(cf.terms) % 2 == 1
            assert cf_to_fraction(cf) == f

    @given(st.integers(-500, 500), st.integers(0, 500))
    def test_roundtrip_property(self, p, q):
        if p == 0 and q == 0:
            return
        f = TangleFraction.make(p, q)
        assert cf_to_fraction(fraction_to_cf(f)) == f


class TestWord:
    def test_zero_cf_is_empty_word(self):
        w = cf_to_word(ContinuedFraction((0,)))
        assert w == TangleWord("h", ())
        assert w.crossing_count == 0

    def test_three_horizontal_twists(self):
        w = cf_to_word(ContinuedFraction((3,)))
        assert w == TangleWord("h", (("h", 3),))
        assert w.crossing_count == 3

    def test_crossing_count_is_term_sum(self):
        w = cf_to_word(ContinuedFraction((2, 3, 1)))
        assert w.crossing_count == 6

    def test_word_fraction_matches_cf(self):
        for f in all_reduced(12):
            w = fraction_word(f)
            assert word_fraction(w) == f

    def test_compiled_edges_occur_at_most_twice(self):
        for f in all_reduced(8):
            t = compile_word(fraction_word(f))
            seen: dict[int, int] = {}
            for tup in t.crossings:
                for e in tup:
                    seen[e] = seen.get(e, 0) + 1
            for stub in t.stubs:
                seen[stub] = seen.get(stub, 0) + 1
            assert all(v == 2 for v in seen.values())


class TestConnectivity:
    def test_trivial_tangle_classes(self):
        assert connectivity(TangleFraction(0, 1)) == AB_CD
        assert connectivity(TangleFraction(1, 0)) == AC_BD
        assert connectivity(TangleFraction(1, 1)) == AD_BC

    def test_parity_rule_matches_strand_tracing(self):
        for f in all_reduced(30):
            compiled = compile_word(fraction_word(f))
            assert trace_connectivity(compiled) == connectivity(f), f


class TestOrientationClass:
    def test_forced_classes(self):
        assert orientation_class(TangleFraction(1, 3)) == PARALLEL
        assert orientation_class(TangleFraction(2, 3)) == ANTIPARALLEL

    def test_even_denominator_unconstrained(self):
        assert orientation_class(TangleFraction(1, 2)) is None
