"""
Double Grothendieck polynomials in the beta convention and the
K-theoretic coefficient extraction.

The pinned convention: the top class of S_n is prod_{i+j<=n} (x_i (-) y_j)
with a (-) b = (a-b)/(1+b*b), and descents apply the isobaric operator
pi_i(f) = partial_i((1+b*x_{i+1}) f). Two checks pin it down: everything
degenerates to the Schubert convention at beta = 0, and pi_1 sends the
n = 2 top class to 1.

Extraction works by Bruhat-increasing localization elimination: walking
S_ambient by length, the residue of P at the point v*t divided by
G_v(v*t;t) is the coefficient of G_v(x;t). Divisors are products of
pairwise t-differences and denominator units, so only exact polynomial
division is ever needed. The terminal full reconstruction check is
mandatory because K supports can exceed the naive degree bound.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .divided_differences import pi_i
from .permutations import (
    Permutation,
    all_permutations,
    inverse,
    length,
    longest_element,
    simple_reflection,
)
from .polynomials import (
    LocalizedElement,
    NotInvertible,
    Polynomial,
    beta,
    exact_divide_localized,
    invert_unit,
    x,
    y,
)
from .schubert import AmbientTooSmall, ResidualNonzero, _require_fits


class DenominatorShapeViolation(ArithmeticError):
    """A K coefficient's denominator left the allowed factor set."""


def _coerce(a) -> LocalizedElement:
    if isinstance(a, (int, Polynomial)):
        return LocalizedElement(a)
    return a


def ominus(a, b) -> LocalizedElement:
    """a (-) b = (a - b) / (1 + beta*b); 1 + beta*b must be a unit."""
    a, b = _coerce(a), _coerce(b)
    diff = a - b
    if diff.is_zero():
        return diff
    denom = LocalizedElement(Polynomial.integer(1)) + LocalizedElement(beta()) * b
    return diff * invert_unit(denom)


def oplus(a, b) -> LocalizedElement:
    """a (+) b = a + b + beta*a*b."""
    a, b = _coerce(a), _coerce(b)
    return a + b + LocalizedElement(beta()) * a * b


_GROTH: dict[tuple[tuple[int, ...], int], LocalizedElement] = {}


def grothendieck_top(n: int) -> LocalizedElement:
    total = LocalizedElement(1)
    for i in range(1, n):
        for j in range(1, n - i + 1):
            total = total * ominus(x(i), y(j))
    return total


def double_grothendieck(w: Permutation, n: int) -> LocalizedElement:
    """G_w(x;y) for w in S_n, by isobaric descents from the top class."""
    _require_fits(w, n, "permutation")
    key = (w.window, n)
    cached = _GROTH.get(key)
    if cached is not None:
        return cached
    if w == longest_element(n) or n == 1:
        result = grothendieck_top(n)
    else:
        i = next(i for i in range(1, n) if w(i) < w(i + 1))
        result = pi_i(i, double_grothendieck(w * simple_reflection(i), n))
    _GROTH[key] = result
    return result


_GROTH_T: dict[tuple[int, ...], LocalizedElement] = {}


def grothendieck_t(w: Permutation) -> LocalizedElement:
    """G_w(x;t): the stable polynomial with y renamed to t."""
    cached = _GROTH_T.get(w.window)
    if cached is None:
        g = double_grothendieck(w, w.size())
        width = w.size()
        num = g.num.rename({("y", j): ("t", j) for j in range(1, width + 1)})
        den_t = dict(g.den_t)
        for j, e in g.den_y.items():
            den_t[j] = den_t.get(j, 0) + e
        cached = LocalizedElement(num, {}, den_t)
        _GROTH_T[w.window] = cached
    return cached


def localize_element(P: LocalizedElement, v: Permutation) -> LocalizedElement:
    """Substitute x_i -> t_{v(i)}; denominators carry no x and pass through."""
    width = max((i for (f, i) in P.num.variables() if f == "x"), default=0)
    num = P.num.rename({("x", i): ("t", v(i)) for i in range(1, width + 1)})
    return LocalizedElement(num, P.den_y, P.den_t)


@lru_cache(maxsize=65536)
def _localized_basis_value(w_window: tuple[int, ...], v_window: tuple[int, ...]) -> LocalizedElement:
    w = Permutation(w_window) if w_window else Permutation([])
    v = Permutation(v_window) if v_window else Permutation([])
    return localize_element(grothendieck_t(w), v)


def grothendieck_at_point(w: Permutation, v: Permutation) -> LocalizedElement:
    """G_w(v t; t), the localization of the basis element at the point v."""
    return _localized_basis_value(w.window, v.window)


def expand_in_t_basis_K(
    P: LocalizedElement, ambient: int
) -> dict[Permutation, LocalizedElement]:
    """Coefficients of P over the G_w(x;t) basis for w in S_ambient."""
    coeffs: dict[Permutation, LocalizedElement] = {}
    for v in all_permutations(ambient):
        residue = localize_element(P, v)
        for w, cw in coeffs.items():
            residue = residue - cw * grothendieck_at_point(w, v)
        if residue.is_zero():
            continue
        divisor = grothendieck_at_point(v, v)
        coeffs[v] = exact_divide_localized(residue, divisor)
    total = LocalizedElement(0)
    for w, cw in coeffs.items():
        total = total + cw * grothendieck_t(w)
    if total != P:
        raise ResidualNonzero(f"K support exceeds S_{ambient}")
    return coeffs


@dataclass(frozen=True)
class KExpansionResult:
    u: Permutation
    v: Permutation
    ambient: int
    coefficients: dict[Permutation, LocalizedElement]


def product_polynomial_K(u: Permutation, v: Permutation) -> LocalizedElement:
    """G_u(x;y) * G_v(x;t)."""
    return double_grothendieck(u, u.size()) * grothendieck_t(v)


@lru_cache(maxsize=4096)
def expansion_K(u: Permutation, v: Permutation) -> KExpansionResult:
    m = max(u.size(), v.size())
    P = product_polynomial_K(u, v)
    last: ResidualNonzero | None = None
    for ambient in range(m + 1, m + 5):
        try:
            coeffs = expand_in_t_basis_K(P, ambient)
            return KExpansionResult(u, v, ambient, coeffs)
        except ResidualNonzero as exc:
            last = exc
    raise ResidualNonzero(f"ambient policy exhausted at S_{m + 4}: {last}")


def triple_coefficient_K(u: Permutation, v: Permutation, w: Permutation) -> LocalizedElement:
    """Coefficient of G_w(x;t) in G_u(x;y) * G_v(x;t)."""
    return expansion_K(u, v).coefficients.get(w, LocalizedElement(0))
