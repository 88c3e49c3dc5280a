import pytest
import sympy

from tanglekit.coloring import (
    bareiss_determinant,
    coloring_matrix,
    determinant,
    n_colorable,
)
from tanglekit.diagram import (
    PDError,
    connected_sum,
    crossing_change,
    disjoint_union,
    parse_pd,
    resolve,
)

UNKNOT_KINK = parse_pd("X[1,2,2,1]")
UNKNOT_0 = parse_pd("U")
HOPF = parse_pd("X[1,4,2,3] X[3,2,4,1]")
TREFOIL = parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]")
# standard figure-eight knot diagram
FIG8_KNOT = parse_pd("X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]")


def det_oracle(d) -> int:
    """Independent determinant: sympy minor of an independently built matrix."""
    n = d.arc_count
    parent = list(range(n + 1))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for _, b, _, dd in d.crossings:
        ra, rb = find(b), find(dd)
        if ra != rb:
            parent[ra] = rb
    arcs = sorted({find(e) for e in range(1, n + 1)})
    col = {r: i for i, r in enumerate(arcs)}
    if not d.crossings:
        return 1 if d.loops == 1 else 0
    if d.loops or len(arcs) != len(d.crossings):
        return 0
    rows = []
    for a, b, c, _ in d.crossings:
        row = [0] * len(arcs)
        row[col[find(b)]] += 2
        row[col[find(a)]] -= 1
        row[col[find(c)]] -= 1
        rows.append(row)
    m = sympy.Matrix(rows)
    return abs(m.minor_submatrix(0, 0).det())


class TestBareiss:
    def test_empty_is_one(self):
        assert bareiss_determinant([]) == 1

    def test_small_matrices(self):
        assert bareiss_determinant([[7]]) == 7
        assert bareiss_determinant([[1, 2], [3, 4]]) == -2
        assert bareiss_determinant([[0, 1], [1, 0]]) == -1

    def test_singular(self):
        assert bareiss_determinant([[1, 2], [2, 4]]) == 0

    @pytest.mark.parametrize("n", [3, 4, 5, 6, 8, 10])
    def test_matches_sympy(self, n):
        import random

        rng = random.Random(n)
        m = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
        assert bareiss_determinant(m) == sympy.Matrix(m).det()

    def test_rank_deficient_with_pivot_swaps(self):
        # leading zeros force row swaps; duplicated rows force a zero result
        m = [[0, 2, 1], [0, 0, 3], [0, 2, 1]]
        assert bareiss_determinant(m) == 0
        m2 = [[0, 1, 0], [1, 0, 0], [0, 0, 5]]
        assert bareiss_determinant(m2) == -5


class TestColoringMatrix:
    def test_kink_collapses_to_zero_row(self):
        cm = coloring_matrix(UNKNOT_KINK)
        assert cm.entries == ((0,),)

    def test_hopf_hand_built(self):
        cm = coloring_matrix(HOPF)
        assert sorted(cm.entries) == [(-2, 2), (2, -2)]

    def test_trefoil_rows_are_two_minus_one_minus_one(self):
        cm = coloring_matrix(TREFOIL)
        for row in cm.entries:
            assert sorted(row) == [-1, -1, 2]
            assert sum(row) == 0

    def test_columns_sum_to_zero(self):
        for d in (HOPF, TREFOIL, FIG8_KNOT):
            cm = coloring_matrix(d)
            for j in range(cm.cols):
                assert sum(row[j] for row in cm.entries) == 0

    def test_full_matrix_is_singular(self):
        cm = coloring_matrix(TREFOIL)
        assert bareiss_determinant([list(r) for r in cm.entries]) == 0

    def test_needs_a_crossing(self):
        with pytest.raises(PDError):
            coloring_matrix(UNKNOT_0)


class TestDeterminant:
    def test_unknots(self):
        assert determinant(UNKNOT_0) == 1
        assert determinant(UNKNOT_KINK) == 1

    def test_standard_values(self):
        assert determinant(HOPF) == 2
        assert determinant(TREFOIL) == 3
        assert determinant(FIG8_KNOT) == 5

    def test_matches_oracle(self):
        for d in (UNKNOT_KINK, HOPF, TREFOIL, FIG8_KNOT):
            assert determinant(d) == det_oracle(d)

    def test_disjoint_unions_vanish(self):
        assert determinant(disjoint_union(UNKNOT_0, UNKNOT_0)) == 0
        assert determinant(disjoint_union(TREFOIL, HOPF)) == 0
        assert determinant(disjoint_union(TREFOIL, UNKNOT_KINK)) == 0

    def test_minor_independence(self):
        for d in (HOPF, TREFOIL, FIG8_KNOT):
            cm = coloring_matrix(d)
            k = cm.rows
            vals = set()
            for i in range(k):
                for j in range(k):
                    minor = [
                        [v for jj, v in enumerate(row) if jj != j]
                        for ii, row in enumerate(cm.entries)
                        if ii != i
                    ]
                    vals.add(abs(bareiss_determinant(minor)))
            assert vals == {determinant(d)}

    def test_connected_sum_multiplicative(self):
        assert determinant(connected_sum(TREFOIL, 1, TREFOIL, 1)) == 9
        assert determinant(connected_sum(TREFOIL, 2, FIG8_KNOT, 3)) == 15
        assert determinant(connected_sum(HOPF, 1, TREFOIL, 1)) == 6

    def test_sum_with_unknot_preserves(self):
        for d in (HOPF, TREFOIL):
            s = connected_sum(d, 1, UNKNOT_KINK, 1)
            assert determinant(s) == determinant(d)

    def test_crossing_change_examples(self):
        # unknotting the trefoil
        changed = {determinant(crossing_change(TREFOIL, s)) for s in range(3)}
        assert changed == {1}
        # unlinking the Hopf link
        assert determinant(crossing_change(HOPF, 0)) == 0

    def test_trefoil_smoothings_give_hopf_and_unknot(self):
        dets = sorted(determinant(resolve(TREFOIL, 0, w)) for w in (0, 1))
        assert dets == [1, 2]


class TestColorability:
    def test_trefoil(self):
        assert n_colorable(TREFOIL, 3) is True
        assert n_colorable(TREFOIL, 5) is False

    def test_knots_never_two_colorable(self):
        for d in (UNKNOT_KINK, TREFOIL, FIG8_KNOT):
            assert n_colorable(d, 2) is False

    def test_links_two_colorable(self):
        assert n_colorable(HOPF, 2) is True
        assert n_colorable(disjoint_union(TREFOIL, TREFOIL), 2) is True

    def test_figure_eight(self):
        assert n_colorable(FIG8_KNOT, 5) is True
        assert n_colorable(FIG8_KNOT, 3) is False

    def test_requires_prime(self):
        with pytest.raises(ValueError):
            n_colorable(TREFOIL, 6)

    def test_explicit_trefoil_coloring(self):
        # the coloring (0,1,2) mod 3 satisfies every crossing relation
        cm = coloring_matrix(TREFOIL)
        for colors in [(0, 1, 2), (1, 2, 0)]:
            assert all(
                sum(c * x for c, x in zip(row, colors)) % 3 == 0
                for row in cm.entries
            )

    def test_divisibility_matches_rank_over_corpus_primes(self):
        for d in (UNKNOT_0, UNKNOT_KINK, HOPF, TREFOIL, FIG8_KNOT):
            det = determinant(d)
            for p in (2, 3, 5, 7, 11, 13):
                assert n_colorable(d, p) == (det % p == 0)
