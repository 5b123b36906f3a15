import itertools

import pytest

from schubertcalc.permutations import (
    IDENTITY,
    InvalidCode,
    NotAPermutation,
    Permutation,
    RootPair,
    TooManyWords,
    all_permutations,
    all_reduced_words,
    bruhat_leq,
    canonical_reduced_word,
    descents,
    from_lehmer_code,
    inverse,
    inversion_pairs,
    lehmer_code,
    length,
    longest_element,
    make_permutation,
    noninversion_pairs,
    parse_permutation,
    simple_reflection,
    tau,
    word_to_permutation,
)
from schubertcalc.polynomials import t, y

S1 = simple_reflection(1)
S2 = simple_reflection(2)


class TestConstruction:
    def test_trailing_fixed_points_trimmed(self):
        assert make_permutation([2, 1, 3]).window == (2, 1)

    def test_identity_is_empty_window(self):
        assert make_permutation([1, 2, 3]) == IDENTITY
        assert IDENTITY.one_line() == (1,)

    def test_no_trimming_possible(self):
        assert make_permutation([3, 4, 1, 2]).window == (3, 4, 1, 2)

    @pytest.mark.parametrize("bad", [[1, 1], [2, 3], [0, 1], [1, 2, 2]])
    def test_rejects_non_permutations(self, bad):
        with pytest.raises(NotAPermutation):
            make_permutation(bad)


class TestGroupLaw:
    def test_simple_product(self):
        assert (S1 * S2).window == (2, 3, 1)

    def test_inverse_cancels(self):
        u = make_permutation([3, 1, 2])
        assert u * inverse(u) == IDENTITY
        assert inverse(u).window == (2, 3, 1)

    def test_values_beyond_window_fixed(self):
        u = make_permutation([2, 1])
        assert u(5) == 5


class TestLengthCodeDescents:
    def test_longest_element_s3(self):
        w0 = make_permutation([3, 2, 1])
        assert length(w0) == 3
        assert lehmer_code(w0) == (2, 1, 0)

    def test_identity(self):
        assert lehmer_code(IDENTITY) == ()
        assert length(IDENTITY) == 0

    def test_descents(self):
        assert descents(make_permutation([2, 3, 1])) == {2}

    def test_from_lehmer_rejects_bad_code(self):
        with pytest.raises(InvalidCode):
            from_lehmer_code([3, 0, 0])

    def test_code_roundtrip_s4(self):
        for w in all_permutations(4):
            code = list(lehmer_code(w))
            padded = code + [0] * (4 - len(code))
            assert from_lehmer_code(padded) == w
            assert length(w) == sum(code) == len(inversion_pairs(w, 4))


class TestReducedWords:
    def test_all_words_longest_s3(self):
        assert all_reduced_words(make_permutation([3, 2, 1])) == {(1, 2, 1), (2, 1, 2)}

    def test_identity_word(self):
        assert all_reduced_words(IDENTITY) == {()}
        assert canonical_reduced_word(IDENTITY) == ()

    def test_canonical_word_leftmost_peeling(self):
        assert canonical_reduced_word(make_permutation([2, 3, 1])) == (1, 2)

    def test_limit_enforced(self):
        with pytest.raises(TooManyWords):
            all_reduced_words(longest_element(4), limit=3)

    def test_every_word_multiplies_back_s4(self):
        for w in all_permutations(4):
            for word in all_reduced_words(w):
                assert word_to_permutation(word) == w
                assert len(word) == length(w)


class TestBruhat:
    def test_w0_dominates(self):
        assert bruhat_leq(S1, make_permutation([3, 2, 1]))

    def test_incomparable(self):
        assert not bruhat_leq(make_permutation([2, 1, 3]), make_permutation([1, 3, 2]))

    def test_identity_below_everything(self):
        for w in all_permutations(3):
            assert bruhat_leq(IDENTITY, w)

    def test_order_axioms_s4(self):
        s4 = all_permutations(4)
        for u in s4:
            assert bruhat_leq(u, u)
            for v in s4:
                if bruhat_leq(u, v):
                    assert length(u) <= length(v)
                    if bruhat_leq(v, u):
                        assert u == v


class TestRoots:
    def test_inversions_longest_s3(self):
        expected = {RootPair(1, 2), RootPair(1, 3), RootPair(2, 3)}
        assert inversion_pairs(make_permutation([3, 2, 1]), 3) == expected

    def test_identity_has_none(self):
        assert inversion_pairs(IDENTITY, 3) == set()

    def test_noninversions_are_complement(self):
        for w in all_permutations(4):
            union = inversion_pairs(w, 4) | noninversion_pairs(w, 4)
            assert union == {
                RootPair(i, j) for i, j in itertools.combinations(range(1, 5), 2)
            }

    def test_noninversions_via_longest_element(self):
        for w in all_permutations(4):
            assert noninversion_pairs(w, 4) == inversion_pairs(w * longest_element(4), 4)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_tau_inversions_render_as_y_minus_t(self, n):
        rename = {("t", n + j): ("y", j) for j in range(1, n + 1)}
        rendered = {
            (t(rp.j) - t(rp.i)).rename(rename) for rp in inversion_pairs(tau(n))
        }
        assert rendered == {
            y(j) - t(i) for i in range(1, n + 1) for j in range(1, n + 1)
        }

    def test_tau_window(self):
        assert tau(1) == make_permutation([2, 1])
        assert tau(2) == make_permutation([3, 4, 1, 2])
        assert length(tau(2)) == 4

    def test_longest_element(self):
        assert longest_element(3) == make_permutation([3, 2, 1])


class TestTextSyntax:
    def test_one_line(self):
        assert parse_permutation("3,1,2") == make_permutation([3, 1, 2])

    def test_word_syntax(self):
        assert parse_permutation("s1 s2") == make_permutation([2, 3, 1])

    def test_rejects_garbage(self):
        with pytest.raises(NotAPermutation):
            parse_permutation("nope")
