"""
Divided difference operators acting on polynomials in the x family.

partial_i sends f to (f - s_i f)/(x_i - x_{i+1}); the quotient is always
exact and is computed monomial by monomial through the closed form
partial_i(x_i^a x_{i+1}^b) = sum_{k} x_i^{a-1-k} x_{i+1}^{b+k} (a > b),
which agrees with the division route (asserted in the test suite).
partial_w composes simple operators along the canonical reduced word,
rightmost letter first. The isobaric variant pi_i(f) = partial_i((1 +
b*x_{i+1}) f) acts on the localized ring, where denominators are x-free
and pass through untouched. Skew operators follow the Leibniz recursion
peeling the leftmost letter of the canonical word.

Operators touch x only; y, t and b are scalars.
"""
from __future__ import annotations

from .permutations import (
    Permutation,
    canonical_reduced_word,
    left_descents,
    length,
    simple_reflection,
)
from .polynomials import (
    LocalizedElement,
    Monomial,
    Polynomial,
    beta,
    make_monomial,
    x,
)


def apply_perm_x(w: Permutation, f: Polynomial) -> Polynomial:
    """Substitute x_i -> x_{w(i)}; y, t, b untouched."""
    var_map = {
        ("x", i): ("x", w(i))
        for i in range(1, len(w.window) + 1)
        if w(i) != i
    }
    return f.rename(var_map) if var_map else f


def _partial_monomial(a: int, b: int) -> list[tuple[int, int, int]]:
    """(exp_i, exp_{i+1}, sign) triples of partial_i applied to x_i^a x_{i+1}^b."""
    if a > b:
        return [(a - 1 - k, b + k, 1) for k in range(a - b)]
    if a < b:
        return [(b - 1 - k, a + k, -1) for k in range(b - a)]
    return []


def partial_i(i: int, f: Polynomial) -> Polynomial:
    if i < 1:
        raise ValueError("divided difference index must be >= 1")
    vi, vj = ("x", i), ("x", i + 1)
    data: dict[Monomial, int] = {}
    for mono, coeff in f.terms():
        exps = dict(mono)
        a = exps.pop(vi, 0)
        b = exps.pop(vj, 0)
        for ea, eb, sign in _partial_monomial(a, b):
            entries = dict(exps)
            entries[vi] = ea
            entries[vj] = eb
            key = make_monomial(entries)
            new = data.get(key, 0) + sign * coeff
            if new:
                data[key] = new
            else:
                del data[key]
    return Polynomial(data)


def partial_w(w: Permutation, f: Polynomial) -> Polynomial:
    """Composite along the canonical reduced word, rightmost letter applied first."""
    for i in reversed(canonical_reduced_word(w)):
        f = partial_i(i, f)
    return f


def partial_word(letters, f: Polynomial) -> Polynomial:
    """Composite along an explicit word; used to check word independence."""
    for i in reversed(tuple(letters)):
        f = partial_i(i, f)
    return f


def pi_i(i: int, f: LocalizedElement | Polynomial) -> LocalizedElement:
    """Isobaric operator pi_i(f) = partial_i((1 + b*x_{i+1}) f)."""
    if isinstance(f, Polynomial):
        f = LocalizedElement(f)
    operand = (Polynomial.integer(1) + beta() * x(i + 1)) * f.num
    return LocalizedElement(partial_i(i, operand), f.den_y, f.den_t)


def pi_w(w: Permutation, f: LocalizedElement | Polynomial) -> LocalizedElement:
    if isinstance(f, Polynomial):
        f = LocalizedElement(f)
    for i in reversed(canonical_reduced_word(w)):
        f = pi_i(i, f)
    return f


def skew_partial(w: Permutation, v: Permutation, f: Polynomial) -> Polynomial:
    """Skew operator from the Leibniz expansion of partial_w(fg).

    Recursion on w = s_i * w' with i the smallest left descent:
    partial_{w/v} = partial_i . partial_{w'/v}
                    + [length(s_i v) < length(v)] s_i . partial_{w'/s_i v}.
    """
    if w.is_identity():
        return f if v.is_identity() else Polynomial.zero()
    i = min(left_descents(w))
    s = simple_reflection(i)
    rest = s * w
    result = partial_i(i, skew_partial(rest, v, f))
    if length(s * v) < length(v):
        result = result + apply_perm_x(s, skew_partial(rest, s * v, f))
    return result
