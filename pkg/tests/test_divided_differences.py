import random

import pytest

from schubertcalc.divided_differences import (
    apply_perm_x,
    partial_i,
    partial_w,
    partial_word,
    pi_i,
    pi_w,
    skew_partial,
)
from schubertcalc.permutations import (
    IDENTITY,
    all_permutations,
    all_reduced_words,
    bruhat_leq,
    make_permutation,
    simple_reflection,
)
from schubertcalc.polynomials import (
    LocalizedElement,
    Polynomial,
    beta,
    exact_divide,
    t,
    x,
    y,
)
from .test_polynomials import random_poly

S1 = simple_reflection(1)
S2 = simple_reflection(2)


class TestPermAction:
    def test_swap(self):
        assert apply_perm_x(S1, x(1)) == x(2)

    def test_symmetric_invariant(self):
        assert apply_perm_x(S1, x(1) + x(2)) == x(1) + x(2)

    def test_three_cycle(self):
        w = make_permutation([2, 3, 1])
        assert apply_perm_x(w, x(1) * x(2) ** 2) == x(2) * x(3) ** 2

    def test_scalars_untouched(self):
        p = y(1) * t(2) + beta()
        assert apply_perm_x(S1, p) == p


class TestPartialI:
    def test_basic(self):
        assert partial_i(1, x(1)) == Polynomial.integer(1)

    def test_invariant_kills(self):
        assert partial_i(2, x(1)).is_zero()

    def test_worked_product(self):
        f = (x(1) - y(1)) * (x(1) - t(1))
        assert partial_i(1, f) == x(1) + x(2) - y(1) - t(1)

    def test_agrees_with_division_route(self):
        rng = random.Random(1001)
        for _ in range(200):
            f = random_poly(rng, nvars=4)
            i = rng.randint(1, 3)
            numerator = f - apply_perm_x(simple_reflection(i), f)
            if numerator.is_zero():
                assert partial_i(i, f).is_zero()
            else:
                assert partial_i(i, f) == exact_divide(numerator, x(i) - x(i + 1))

    def test_nilpotent_and_braid(self):
        rng = random.Random(2002)
        for _ in range(100):
            f = random_poly(rng, nvars=4)
            i = rng.randint(1, 3)
            assert partial_i(i, partial_i(i, f)).is_zero()
            assert partial_i(i, partial_i(i + 1, partial_i(i, f))) == partial_i(
                i + 1, partial_i(i, partial_i(i + 1, f))
            )


class TestPartialW:
    def test_worked_composite(self):
        f = (x(1) - y(1)) * (x(1) - t(1))
        assert partial_w(make_permutation([3, 1, 2]), f) == Polynomial.integer(1)

    def test_identity_operator(self):
        f = x(1) * y(2)
        assert partial_w(IDENTITY, f) == f

    def test_top_class_normalization(self):
        assert partial_w(make_permutation([3, 2, 1]), x(1) ** 2 * x(2)) == Polynomial.integer(1)

    def test_reduced_word_independence_s4(self):
        rng = random.Random(3003)
        for w in all_permutations(4):
            f = random_poly(rng, nvars=4)
            images = {
                tuple(sorted(partial_word(word, f).terms()))
                for word in all_reduced_words(w)
            }
            assert len(images) == 1


class TestPi:
    def test_top_class_to_one(self):
        from schubertcalc.grothendieck import ominus

        assert pi_i(1, ominus(x(1), y(1))) == LocalizedElement(1)

    def test_pi_of_one(self):
        assert pi_i(1, LocalizedElement(1)) == LocalizedElement(-beta())

    def test_beta_zero_degenerates(self):
        rng = random.Random(4004)
        for _ in range(100):
            f = LocalizedElement(random_poly(rng, nvars=4), {1: rng.randint(0, 1)}, {})
            i = rng.randint(1, 3)
            assert pi_i(i, f).beta_zero() == partial_i(i, f.beta_zero())

    def test_quadratic_relation(self):
        rng = random.Random(5005)
        for _ in range(100):
            f = LocalizedElement(
                random_poly(rng, nvars=4), {1: rng.randint(0, 1)}, {2: rng.randint(0, 1)}
            )
            i = rng.randint(1, 3)
            assert pi_i(i, pi_i(i, f)) == LocalizedElement(-beta()) * pi_i(i, f)


class TestSkew:
    def test_base_case_full(self):
        assert skew_partial(S1, S1, x(1)) == x(2)

    def test_base_case_identity(self):
        f = (x(1) - y(1)) * (x(1) - t(1))
        assert skew_partial(S1, IDENTITY, f) == partial_i(1, f)

    def test_worked_two_step(self):
        w = make_permutation([2, 3, 1])
        v = make_permutation([1, 3, 2])
        assert skew_partial(w, v, x(2)).is_zero()
        f = random_poly(random.Random(11), nvars=3)
        assert skew_partial(w, v, f) == partial_i(1, apply_perm_x(S2, f))

    def test_vanishes_unless_below(self):
        rng = random.Random(6006)
        for w in all_permutations(3):
            for v in all_permutations(3):
                if not bruhat_leq(v, w):
                    assert skew_partial(w, v, random_poly(rng, nvars=3)).is_zero()

    def test_boundary_identities(self):
        rng = random.Random(7007)
        for w in all_permutations(3):
            f = random_poly(rng, nvars=3)
            assert skew_partial(w, IDENTITY, f) == partial_w(w, f)
            assert skew_partial(w, w, f) == apply_perm_x(w, f)

    def test_leibniz_identity_s3(self):
        rng = random.Random(8008)
        s3 = all_permutations(3)
        for w in s3:
            for _ in range(200 // len(s3) + 1):
                f = random_poly(rng, nvars=3)
                g = random_poly(rng, nvars=3)
                lhs = partial_w(w, f * g)
                rhs = Polynomial.zero()
                for v in s3:
                    if bruhat_leq(v, w):
                        rhs = rhs + skew_partial(w, v, f) * partial_w(v, g)
                assert lhs == rhs
