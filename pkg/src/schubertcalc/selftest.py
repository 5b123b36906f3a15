"""
Self-contained invariant suites, one per module, runnable without pytest.

These are the fast desk-scale versions of the package's property tests;
the CLI `selftest` command runs them all and exits 0 only if every suite
passes.
"""
from __future__ import annotations

import itertools
import random

from .divided_differences import (
    apply_perm_x,
    partial_i,
    partial_w,
    partial_word,
    pi_i,
    skew_partial,
)
from .grothendieck import (
    double_grothendieck,
    expansion_K,
    grothendieck_t,
    ominus,
    oplus,
    triple_coefficient_K,
)
from .permutations import (
    IDENTITY,
    Permutation,
    RootPair,
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
    simple_reflection,
    tau,
    word_to_permutation,
)
from .polynomials import (
    LocalizedElement,
    Polynomial,
    beta,
    exact_divide,
    parse,
    render,
    t,
    x,
    y,
)
from .positivity import (
    Certificate,
    CertificateTerm,
    certify_billey,
    certify_grothendieck,
    certify_schubert,
    quick_screen,
    verify_certificate,
)
from .schubert import (
    coefficient_by_divided_difference,
    double_schubert,
    double_schubert_chain,
    double_schubert_t,
    expand_in_t_basis,
    expansion,
    localize,
    billey,
    pipe_dream_polynomial,
    product_polynomial,
    triple_coefficient,
)


def _random_polynomial(rng: random.Random, nvars: int = 3, nterms: int = 4, use_beta: bool = False) -> Polynomial:
    total = Polynomial.zero()
    families = ["x", "y", "t"] + (["b"] if use_beta else [])
    for _ in range(rng.randint(0, nterms)):
        term = Polynomial.integer(rng.randint(-4, 4))
        for _ in range(rng.randint(0, 3)):
            family = rng.choice(families)
            index = 0 if family == "b" else rng.randint(1, nvars)
            term = term * Polynomial.variable((family, index))
        total = total + term
    return total


def suite_permutations() -> None:
    s4 = all_permutations(4)
    assert len(s4) == 24
    for w in s4:
        assert from_lehmer_code(list(lehmer_code(w)) + [0] * (4 - len(w.window))) == w
        assert length(w) == sum(lehmer_code(w)) == len(inversion_pairs(w, 4))
        for word in all_reduced_words(w):
            assert word_to_permutation(word) == w and len(word) == length(w)
        assert bruhat_leq(w, w)
        for v in s4:
            if bruhat_leq(w, v) and bruhat_leq(v, w):
                assert w == v
            if bruhat_leq(w, v):
                assert length(w) <= length(v)
        m = 4
        invs = inversion_pairs(w, m)
        noninvs = noninversion_pairs(w, m)
        assert invs | noninvs == {RootPair(i, j) for i, j in itertools.combinations(range(1, m + 1), 2)}
        assert noninvs == inversion_pairs(w * longest_element(m), m)
    for n in (1, 2, 3):
        rendered = {(t(rp.j) - t(rp.i)).rename({("t", n + j): ("y", j) for j in range(1, n + 1)})
                    for rp in inversion_pairs(tau(n))}
        expected = {y(j) - t(i) for i in range(1, n + 1) for j in range(1, n + 1)}
        assert rendered == expected, f"tau({n}) inversion rendering"


def suite_polynomials() -> None:
    rng = random.Random(101)
    one = Polynomial.integer(1)
    for _ in range(300):
        a = _random_polynomial(rng, use_beta=True)
        b = _random_polynomial(rng, use_beta=True)
        c = _random_polynomial(rng, use_beta=True)
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a * one == a
        assert (a + (-a)).is_zero()
    for _ in range(200):
        p = _random_polynomial(rng, use_beta=True)
        assert parse(render(p)) == p
        q = _random_polynomial(rng, use_beta=True)
        if not q.is_zero():
            assert exact_divide(p * q, q) == p


def suite_localized() -> None:
    rng = random.Random(202)
    for _ in range(100):
        ay = {j: rng.randint(0, 2) for j in (1, 2)}
        at = {i: rng.randint(0, 1) for i in (1,)}
        a = LocalizedElement(_random_polynomial(rng, use_beta=True), ay, at)
        b = LocalizedElement(_random_polynomial(rng, use_beta=True), {1: rng.randint(0, 2)}, {})
        assert (a + b).beta_zero() == a.beta_zero() + b.beta_zero()
        assert (a * b).beta_zero() == a.beta_zero() * b.beta_zero()
        again = LocalizedElement(a.num, a.den_y, a.den_t)
        assert again == a
    e = ominus(t(1), y(1))
    assert e + LocalizedElement(x(1)) - LocalizedElement(x(1)) == e
    assert (oplus(ominus(x(1), t(1)), ominus(t(1), y(1)))) == ominus(x(1), y(1))


def suite_divided_differences() -> None:
    rng = random.Random(303)
    for _ in range(60):
        f = _random_polynomial(rng, nvars=4)
        i = rng.randint(1, 3)
        assert partial_i(i, partial_i(i, f)).is_zero()
        assert partial_i(i, partial_i(i + 1, partial_i(i, f))) == partial_i(
            i + 1, partial_i(i, partial_i(i + 1, f))
        )
        si = simple_reflection(i)
        quotient = exact_divide(f - apply_perm_x(si, f), x(i) - x(i + 1)) if f != apply_perm_x(si, f) else Polynomial.zero()
        assert partial_i(i, f) == quotient
    for w in all_permutations(4):
        words = sorted(all_reduced_words(w))[:4]
        f = _random_polynomial(rng, nvars=4)
        results = {render(partial_word(word, f)) for word in words}
        assert len(results) == 1, f"word dependence at {w}"
    for w in all_permutations(3):
        for _ in range(25):
            f = _random_polynomial(rng, nvars=3)
            g = _random_polynomial(rng, nvars=3)
            lhs = partial_w(w, f * g)
            rhs = Polynomial.zero()
            for v in all_permutations(3):
                if bruhat_leq(v, w):
                    rhs = rhs + skew_partial(w, v, f) * partial_w(v, g)
            assert lhs == rhs, f"Leibniz fails at {w}"
        f = _random_polynomial(rng, nvars=3)
        assert skew_partial(w, IDENTITY, f) == partial_w(w, f)
        assert skew_partial(w, w, f) == apply_perm_x(w, f)
    for _ in range(40):
        i = rng.randint(1, 3)
        f = LocalizedElement(_random_polynomial(rng, nvars=4, use_beta=True), {1: rng.randint(0, 1)}, {})
        lhs = pi_i(i, pi_i(i, f))
        rhs = LocalizedElement(-beta()) * pi_i(i, f)
        assert lhs == rhs, "pi_i . pi_i == -beta pi_i"
        assert pi_i(i, f).beta_zero() == partial_i(i, f.beta_zero())


def suite_schubert() -> None:
    for w in all_permutations(4):
        assert pipe_dream_polynomial(w, 4) == double_schubert(w, 4), f"oracle at {w}"
        assert double_schubert_chain(w, 4) == double_schubert(w, 4)
        for i in range(1, 4):
            ws = w * simple_reflection(i)
            image = partial_i(i, double_schubert(w, 4))
            if length(ws) < length(w):
                assert image == double_schubert(ws, 4)
            else:
                assert image.is_zero()
        st = double_schubert_t(w)
        diag = st.rename({("x", i): ("t", i) for i in range(1, 5)})
        assert diag == (Polynomial.integer(1) if w.is_identity() else Polynomial.zero())
    s3 = all_permutations(3)
    for u in s3:
        for w in s3:
            expected = localize(u, w, 3)
            for word in all_reduced_words(w):
                assert billey(u, w, word) == expected
            if not bruhat_leq(u, w):
                assert expected.is_zero()
    # worked example and extraction identity
    s1 = simple_reflection(1)
    P = product_polynomial(s1, s1)
    coeffs = expand_in_t_basis(P, 3)
    assert coeffs[make_permutation([3, 1, 2])] == Polynomial.integer(1)
    assert coeffs[s1] == t(2) - y(1)
    for w, coeff in coeffs.items():
        assert coefficient_by_divided_difference(P, w) == coeff
    for u in s3:
        for v in s3:
            result = expansion(u, v)
            total = Polynomial.zero()
            for w, coeff in result.coefficients.items():
                total = total + coeff * double_schubert_t(w)
            assert total == product_polynomial(u, v), f"reconstruction at {u}, {v}"


def suite_grothendieck() -> None:
    s3 = all_permutations(3)
    for w in s3:
        assert double_grothendieck(w, 3).beta_zero() == double_schubert(w, 3)
        assert double_grothendieck(w, 4).beta_zero() == double_schubert(w, 4)
    for w in s3:
        for v in s3:
            g_at = grothendieck_t(w)
            num = g_at.num.rename({("x", i): ("t", v(i)) for i in range(1, 4)})
            value = LocalizedElement(num, g_at.den_y, g_at.den_t)
            if not bruhat_leq(w, v):
                assert value.is_zero(), f"K vanishing at {w}, {v}"
    s1 = simple_reflection(1)
    expect_id = ominus(t(1), y(1))
    expect_s1 = LocalizedElement(1) + LocalizedElement(beta()) * expect_id
    assert triple_coefficient_K(s1, IDENTITY, IDENTITY) == expect_id
    assert triple_coefficient_K(s1, IDENTITY, s1) == expect_s1
    for u in all_permutations(2):
        for v in all_permutations(2):
            k = expansion_K(u, v)
            s = expansion(u, v)
            for w in set(k.coefficients) | set(s.coefficients):
                lhs = k.coefficients.get(w, LocalizedElement(0)).beta_zero()
                rhs = s.coefficients.get(w, Polynomial.zero())
                assert lhs == rhs, f"beta=0 compatibility at {u}, {v}, {w}"


def suite_positivity() -> None:
    s1 = simple_reflection(1)
    c = triple_coefficient(s1, s1, make_permutation([2, 1, 3]))
    outcome = certify_schubert(c, 2)
    assert outcome.is_certified and verify_certificate(outcome.certificate, c)
    tampered = Certificate(
        outcome.certificate.mode,
        outcome.certificate.target,
        tuple(
            CertificateTerm(term.pairs, term.beta_power, term.multiplicity + 1)
            for term in outcome.certificate.terms
        ),
    )
    assert not verify_certificate(tampered, c)
    assert certify_schubert(y(1) - t(1), 1).status == "infeasible_complete"
    loc = localize(s1, s1, 2)
    assert certify_billey(loc, inversion_pairs(s1)).is_certified
    ck = triple_coefficient_K(s1, IDENTITY, s1)
    assert certify_grothendieck(ck, 1).is_certified
    assert quick_screen(t(2) - y(1), 2)
    assert not quick_screen(y(1) - t(1), 1)
    s3 = all_permutations(3)
    for u in s3:
        for v in s3:
            for w, coeff in expansion(u, v).coefficients.items():
                if not quick_screen(coeff, 4, samples=16):
                    raise AssertionError(f"screen rejected genuine coefficient at {u},{v},{w}")


SUITES = [
    ("permutations", suite_permutations),
    ("polynomials", suite_polynomials),
    ("localized-ring", suite_localized),
    ("divided-differences", suite_divided_differences),
    ("schubert", suite_schubert),
    ("grothendieck", suite_grothendieck),
    ("positivity", suite_positivity),
]


def run(print_fn=print) -> int:
    failures = 0
    for name, suite in SUITES:
        try:
            suite()
        except Exception as exc:  # pragma: no cover - failure path
            failures += 1
            print_fn(f"[FAIL] {name}: {exc}")
        else:
            print_fn(f"[ ok ] {name}")
    if failures:
        print_fn(f"{failures} suite(s) failed")
    return 1 if failures else 0
