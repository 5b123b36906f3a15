import random

import pytest
from hypothesis import given, settings, strategies as st

from schubertcalc.polynomials import (
    LocalizedElement,
    NotDivisible,
    NotInvertible,
    ParseError,
    Polynomial,
    beta,
    beta_zero,
    exact_divide,
    exact_divide_localized,
    frac_reduce,
    invert_unit,
    parse,
    render,
    render_localized,
    substitute,
    t,
    x,
    y,
)


def random_poly(rng: random.Random, use_beta=True, nvars=3, nterms=4) -> Polynomial:
    total = Polynomial.zero()
    families = ["x", "y", "t"] + (["b"] if use_beta else [])
    for _ in range(rng.randint(0, nterms)):
        term = Polynomial.integer(rng.randint(-5, 5))
        for _ in range(rng.randint(0, 3)):
            family = rng.choice(families)
            index = 0 if family == "b" else rng.randint(1, nvars)
            term = term * Polynomial.variable((family, index))
        total = total + term
    return total


@st.composite
def polynomials(draw):
    rng = random.Random(draw(st.integers(min_value=0, max_value=2**32)))
    return random_poly(rng)


class TestArithmetic:
    def test_telescoping_sum(self):
        assert (x(1) - y(1)) + (y(1) - t(1)) == x(1) - t(1)

    def test_product_expansion(self):
        product = (x(1) - y(1)) * (x(1) - t(1))
        expected = x(1) ** 2 - (y(1) + t(1)) * x(1) + y(1) * t(1)
        assert product == expected

    def test_additive_inverse(self):
        p = 3 * beta() * x(1) * t(2)
        assert (p + (-p)).is_zero()

    def test_ring_axioms_randomized(self):
        rng = random.Random(4242)
        one = Polynomial.integer(1)
        for _ in range(1000):
            a, b, c = (random_poly(rng) for _ in range(3))
            assert (a + b) + c == a + (b + c)
            assert a + b == b + a
            assert a * b == b * a
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c
            assert a * one == a

    def test_zero_degree_sentinel(self):
        assert Polynomial.zero().degree() is None
        assert Polynomial.integer(5).degree() == 0


class TestSubstitution:
    def test_localization_step(self):
        assert substitute(x(1) - t(1), {("x", 1): t(2)}) == t(2) - t(1)

    def test_y_zero_specialization(self):
        assert substitute(x(1) - y(1), {("y", 1): 0}) == x(1)

    def test_rename_t_to_y(self):
        assert (t(3) - t(1)).rename({("t", 3): ("y", 1)}) == y(1) - t(1)

    def test_substitute_polynomial_value(self):
        p = x(1) ** 2
        image = substitute(p, {("x", 1): x(2) + y(1)})
        assert image == (x(2) + y(1)) ** 2


class TestExactDivide:
    def test_difference_of_squares(self):
        assert exact_divide(x(1) ** 2 - x(2) ** 2, x(1) - x(2)) == x(1) + x(2)

    def test_cancel_single_factor(self):
        product = (x(1) - t(1)) * (x(1) - t(2))
        assert exact_divide(product, x(1) - t(2)) == x(1) - t(1)

    def test_not_divisible(self):
        with pytest.raises(NotDivisible):
            exact_divide(x(1) - y(1), x(1) - x(2))

    def test_divide_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            exact_divide(x(1), Polynomial.zero())

    def test_roundtrip_randomized(self):
        rng = random.Random(777)
        for _ in range(300):
            p = random_poly(rng)
            q = random_poly(rng)
            if q.is_zero():
                continue
            assert exact_divide(p * q, q) == p

    def test_beta_unit_fast_path(self):
        unit = Polynomial.integer(1) + beta() * y(2)
        p = random_poly(random.Random(5))
        assert exact_divide(p * unit, unit) == p


class TestParseRender:
    def test_square_example(self):
        assert parse("x1*x1 - 2*x1*t1 + t1^2") == (x(1) - t(1)) ** 2

    def test_render_zero(self):
        assert render(Polynomial.zero()) == "0"

    def test_beta_term(self):
        assert parse("b*x1 + x1") == beta() * x(1) + x(1)

    def test_pinned_renders(self):
        assert render(x(1) - y(1)) == "x1 - y1"
        assert render(t(2) - y(1)) == "t2 - y1"
        assert render(t(2) - t(1)) == "t2 - t1"

    def test_parse_error_position(self):
        with pytest.raises(ParseError) as info:
            parse("x1 + @")
        assert info.value.position == 5

    def test_trailing_garbage(self):
        with pytest.raises(ParseError):
            parse("x1 x2")

    @given(polynomials())
    @settings(max_examples=200, deadline=None)
    def test_roundtrip(self, p):
        assert parse(render(p)) == p

    def test_whitespace_insignificant(self):
        assert parse(" x1+ y2 *  t1 ") == x(1) + y(2) * t(1)

    def test_negative_factor(self):
        assert parse("-3*x1") == -3 * x(1)


class TestLocalized:
    def test_common_denominator_addition(self):
        a = LocalizedElement(t(1) - y(1), {1: 1}, {})
        b = LocalizedElement(x(1) - t(1))
        total = a + b
        unit = Polynomial.integer(1) + beta() * y(1)
        assert total.num == (t(1) - y(1)) + (x(1) - t(1)) * unit
        assert total.den_y == {1: 1}

    def test_reduction_cancels(self):
        unit = Polynomial.integer(1) + beta() * y(1)
        elem = LocalizedElement(unit * (x(1) - y(1)), {1: 2}, {})
        assert elem == LocalizedElement(x(1) - y(1), {1: 1}, {})

    def test_beta_zero(self):
        elem = LocalizedElement(t(1) - y(1), {1: 1}, {})
        assert beta_zero(elem) == t(1) - y(1)

    def test_frac_reduce_idempotent(self):
        rng = random.Random(909)
        for _ in range(100):
            elem = LocalizedElement(random_poly(rng), {1: rng.randint(0, 2)}, {2: rng.randint(0, 1)})
            assert frac_reduce(elem) == elem

    def test_agrees_with_polynomial_arithmetic_when_trivial(self):
        rng = random.Random(31)
        for _ in range(100):
            p, q = random_poly(rng), random_poly(rng)
            assert (LocalizedElement(p) + LocalizedElement(q)).num == p + q
            assert (LocalizedElement(p) * LocalizedElement(q)).num == p * q

    def test_beta_zero_is_ring_homomorphism(self):
        rng = random.Random(88)
        for _ in range(200):
            a = LocalizedElement(random_poly(rng), {1: rng.randint(0, 2)}, {})
            b = LocalizedElement(random_poly(rng), {2: rng.randint(0, 1)}, {1: rng.randint(0, 1)})
            assert beta_zero(a + b) == beta_zero(a) + beta_zero(b)
            assert beta_zero(a * b) == beta_zero(a) * beta_zero(b)

    def test_zero_clears_denominators(self):
        elem = LocalizedElement(Polynomial.zero(), {1: 3}, {2: 1})
        assert elem.den_y == {} and elem.den_t == {}

    def test_render_localized_format(self):
        elem = LocalizedElement(x(1) - y(1), {1: 2}, {3: 1})
        assert render_localized(elem) == "x1 - y1 / ((1+b*y1)^2*(1+b*t3))"

    def test_invert_unit(self):
        unit = LocalizedElement(Polynomial.integer(1) + beta() * y(1))
        inv = invert_unit(unit)
        assert unit * inv == LocalizedElement(1)

    def test_invert_unit_rejects_nonunit(self):
        with pytest.raises(NotInvertible):
            invert_unit(LocalizedElement(t(1) - y(1)))

    def test_exact_divide_localized(self):
        a = LocalizedElement((t(2) - t(1)) * (t(1) - y(1)), {1: 1}, {})
        d = LocalizedElement(t(2) - t(1), {}, {1: 1})
        quotient = exact_divide_localized(a, d)
        assert quotient * d == a
