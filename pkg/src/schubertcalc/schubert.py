"""
Double Schubert polynomials and the expansion engine for the triple
product coefficients.

S_w(x;y) is assembled from single Schubert polynomials through the
factorization S_w(x;y) = sum over length-additive w = v^{-1} u of
(-1)^{length(v)} S_u(x) S_v(y); singles come from divided-difference
chains off the staircase monomial, so nothing ever materializes the full
staircase product for large windows. The definitional route (staircase
top class followed by a descending chain of partial_i) is kept alongside
and pinned to the fast route by the test suite, as is the pipe-dream
oracle.

Expansion in the S_w(x;t) basis peels leading x-monomials: the largest
x-monomial of a partial residue is x^{code(w)} for a unique w, its
coefficient is c_w, and subtracting c_w S_w(x;t) strictly lowers the
leading monomial, so termination with zero residue proves the
reconstruction identity exactly.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .divided_differences import apply_perm_x, partial_i, partial_w, skew_partial
from .permutations import (
    IDENTITY,
    Permutation,
    all_permutations,
    code_to_permutation,
    length,
    longest_element,
    inverse,
    simple_reflection,
    word_to_permutation,
)
from .polynomials import Monomial, Polynomial, make_monomial, t, x, y

PIPE_DREAM_BOUND = 6


class AmbientTooSmall(ValueError):
    """Permutation does not fit in the requested S_n."""


class NotReduced(ValueError):
    """Word is not a reduced word of the target permutation."""


class ResidualNonzero(ArithmeticError):
    """Expansion support exceeds the allowed ambient; retry larger."""


class InternalMismatch(AssertionError):
    """Two independent routes to the same coefficient disagree (bug trap)."""


def _require_fits(w: Permutation, n: int, who: str) -> None:
    if w.size() > n:
        raise AmbientTooSmall(f"{who} {w} does not lie in S_{n}")


# -- single Schubert polynomials ----------------------------------------

_SINGLE: dict[tuple[int, ...], Polynomial] = {}
_SINGLE_Y: dict[tuple[int, ...], Polynomial] = {}


def single_schubert(w: Permutation) -> Polynomial:
    """S_w(x), by ascending to the staircase monomial and dividing back down."""
    cached = _SINGLE.get(w.window)
    if cached is not None:
        return cached
    m = w.size()
    if w == longest_element(m):
        mono = make_monomial({("x", i): m - i for i in range(1, m)})
        result = Polynomial({mono: 1})
    else:
        i = next(i for i in range(1, m) if w(i) < w(i + 1))
        result = partial_i(i, single_schubert(w * simple_reflection(i)))
    _SINGLE[w.window] = result
    return result


def _single_schubert_y(w: Permutation) -> Polynomial:
    cached = _SINGLE_Y.get(w.window)
    if cached is None:
        p = single_schubert(w)
        cached = p.rename({("x", i): ("y", i) for i in range(1, w.size() + 1)})
        _SINGLE_Y[w.window] = cached
    return cached


@lru_cache(maxsize=None)
def _group_table(m: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    """All windows of S_m (untrimmed, length m) with their lengths."""
    out = []
    for p in itertools.permutations(range(1, m + 1)):
        ln = sum(1 for a in range(m) for b in range(a + 1, m) if p[a] > p[b])
        out.append((p, ln))
    return tuple(out)


@lru_cache(maxsize=None)
def _length_index(m: int) -> dict[tuple[int, ...], int]:
    return dict(_group_table(m))


# -- double Schubert polynomials ----------------------------------------

_DOUBLE: dict[tuple[int, ...], Polynomial] = {}
_DOUBLE_T: dict[tuple[int, ...], Polynomial] = {}


def _double_schubert_stable(w: Permutation) -> Polynomial:
    cached = _DOUBLE.get(w.window)
    if cached is not None:
        return cached
    m = w.size()
    w_ext = tuple(w(i) for i in range(1, m + 1))
    lengths = _length_index(m)
    lw = length(w)
    total = Polynomial.zero()
    for v_win, lv in _group_table(m):
        if lv > lw:
            continue
        u_win = tuple(v_win[w_ext[i] - 1] for i in range(m))
        if lengths[u_win] != lw - lv:
            continue
        term = single_schubert(Permutation(u_win)) * _single_schubert_y(Permutation(v_win))
        total = total + (term if lv % 2 == 0 else -term)
    _DOUBLE[w.window] = total
    return total


def double_schubert(w: Permutation, n: int) -> Polynomial:
    """S_w(x;y) for w in S_n; the polynomial itself is stable in n."""
    _require_fits(w, n, "permutation")
    return _double_schubert_stable(w)


def double_schubert_t(w: Permutation) -> Polynomial:
    """S_w(x;t), the basis element of the expansion."""
    cached = _DOUBLE_T.get(w.window)
    if cached is None:
        p = _double_schubert_stable(w)
        cached = p.rename({("y", j): ("t", j) for j in range(1, w.size() + 1)})
        _DOUBLE_T[w.window] = cached
    return cached


def staircase_top(n: int) -> Polynomial:
    """prod_{i+j<=n} (x_i - y_j), the top class S_{w_0^{(n)}}(x;y)."""
    result = Polynomial.integer(1)
    for i in range(1, n):
        for j in range(1, n - i + 1):
            result = result * (x(i) - y(j))
    return result


def double_schubert_chain(w: Permutation, n: int) -> Polynomial:
    """Definitional route: descending divided differences from the top class."""
    _require_fits(w, n, "permutation")
    chain = inverse(w) * longest_element(n)
    return partial_w(chain, staircase_top(n))


# -- pipe dreams ---------------------------------------------------------


def _staircase_cells(n: int) -> list[tuple[int, int]]:
    # reading order: rows top to bottom, right to left within a row
    return [(i, j) for i in range(1, n) for j in range(n - i, 0, -1)]


def pipe_dreams(w: Permutation, n: int) -> list[frozenset[tuple[int, int]]]:
    """All reduced pipe dreams of w inside the staircase of S_n."""
    _require_fits(w, n, "permutation")
    if n > PIPE_DREAM_BOUND:
        raise ValueError(f"pipe-dream enumeration capped at n = {PIPE_DREAM_BOUND}")
    cells = _staircase_cells(n)
    lw = length(w)
    found = []
    for chosen in itertools.combinations(cells, lw):
        prod = IDENTITY
        reduced = True
        for i, j in chosen:
            a = i + j - 1
            if prod(a) > prod(a + 1):
                reduced = False
                break
            prod = prod * simple_reflection(a)
        if reduced and prod == w:
            found.append(frozenset(chosen))
    return found


def pipe_dream_polynomial(w: Permutation, n: int) -> Polynomial:
    """Independent oracle: sum over reduced pipe dreams of prod (x_i - y_j)."""
    total = Polynomial.zero()
    for dream in pipe_dreams(w, n):
        weight = Polynomial.integer(1)
        for i, j in sorted(dream):
            weight = weight * (x(i) - y(j))
        total = total + weight
    return total


# -- localization and Billey's formula ------------------------------------


def localize(u: Permutation, w: Permutation, n: int) -> Polynomial:
    """Restriction [X_u]|_w: substitute x_i -> t_{w(i)} into S_u(x;t)."""
    _require_fits(u, n, "u")
    _require_fits(w, n, "w")
    p = double_schubert(u, n)
    var_map: dict = {("y", j): ("t", j) for j in range(1, n + 1)}
    var_map.update({("x", i): ("t", w(i)) for i in range(1, n + 1)})
    return p.rename(var_map)


def billey(u: Permutation, w: Permutation, word: tuple[int, ...] | None = None) -> Polynomial:
    """Billey's formula for [X_u]|_w as a sum over reduced subwords."""
    from .permutations import canonical_reduced_word

    if word is None:
        word = canonical_reduced_word(w)
    word = tuple(word)
    if word_to_permutation(word) != w or len(word) != length(w):
        raise NotReduced(f"{word} is not a reduced word for {w}")
    lu = length(u)
    prefixes = [IDENTITY]
    for a in word:
        prefixes.append(prefixes[-1] * simple_reflection(a))
    roots = [
        t(prefixes[k](word[k] + 1)) - t(prefixes[k](word[k]))
        for k in range(len(word))
    ]
    total = Polynomial.zero()
    for positions in itertools.combinations(range(len(word)), lu):
        prod = IDENTITY
        reduced = True
        for k in positions:
            a = word[k]
            if prod(a) > prod(a + 1):
                reduced = False
                break
            prod = prod * simple_reflection(a)
        if reduced and prod == u:
            weight = Polynomial.integer(1)
            for k in positions:
                weight = weight * roots[k]
            total = total + weight
    return total


# -- expansion in the S_w(x;t) basis --------------------------------------


def _split_x(mono: Monomial) -> tuple[tuple[tuple[int, int], ...], Monomial]:
    xpart = tuple((i, e) for (f, i), e in mono if f == "x")
    rest = tuple((v, e) for v, e in mono if v[0] != "x")
    return xpart, rest


def _xpart_key(xpart: tuple[tuple[int, int], ...]):
    return (sum(e for _, e in xpart), tuple(sorted(xpart, reverse=True)))


def expand_in_t_basis(P: Polynomial, ambient: int) -> dict[Permutation, Polynomial]:
    """Coefficients of P in the S_w(x;t) basis; support must fit in S_ambient.

    Termination with zero residue is itself the exact reconstruction of P
    as sum of coefficient * S_w(x;t).
    """
    if any(v[0] == "b" for v in P.variables()):
        raise ValueError("Schubert expansion does not accept beta terms")
    coeffs: dict[Permutation, Polynomial] = {}
    rest = P
    while not rest.is_zero():
        best = None
        best_key = None
        for mono, _ in rest.terms():
            xpart, _ = _split_x(mono)
            key = _xpart_key(xpart)
            if best_key is None or key > best_key:
                best_key = key
                best = xpart
        exps = dict(best)
        width = max(exps, default=0)
        code = [exps.get(i, 0) for i in range(1, width + 1)]
        w = code_to_permutation(code)
        if w.size() > ambient:
            raise ResidualNonzero(f"support needs S_{w.size()}, ambient is {ambient}")
        gamma_terms: dict[Monomial, int] = {}
        for mono, coeff in rest.terms():
            xpart, remainder = _split_x(mono)
            if xpart == best:
                gamma_terms[remainder] = coeff
        gamma = Polynomial(gamma_terms)
        coeffs[w] = gamma
        rest = rest - gamma * double_schubert_t(w)
    return coeffs


def coefficient_by_divided_difference(P: Polynomial, w: Permutation) -> Polynomial:
    """Contract route for a single coefficient: [partial_w P] at x = t."""
    q = partial_w(w, P)
    width = max((i for (f, i) in q.variables() if f == "x"), default=0)
    return q.rename({("x", i): ("t", i) for i in range(1, width + 1)})


@dataclass(frozen=True)
class ExpansionResult:
    u: Permutation
    v: Permutation
    ambient: int
    coefficients: dict[Permutation, Polynomial]


def product_polynomial(u: Permutation, v: Permutation) -> Polynomial:
    """S_u(x;y) * S_v(x;t), the left side of the expansion identity."""
    su = double_schubert(u, u.size())
    sv = double_schubert_t(v)
    return su * sv


@lru_cache(maxsize=4096)
def expansion(u: Permutation, v: Permutation) -> ExpansionResult:
    """Full coefficient extraction with the adaptive ambient policy."""
    m = max(u.size(), v.size())
    P = product_polynomial(u, v)
    last: ResidualNonzero | None = None
    for ambient in range(m + 1, m + 5):
        try:
            coeffs = expand_in_t_basis(P, ambient)
            return ExpansionResult(u, v, ambient, coeffs)
        except ResidualNonzero as exc:
            last = exc
    raise ResidualNonzero(f"ambient policy exhausted at S_{m + 4}: {last}")


def triple_coefficient(u: Permutation, v: Permutation, w: Permutation) -> Polynomial:
    """c_{u,v}^w(y,t), computed two independent ways which must agree."""
    coeff = expansion(u, v).coefficients.get(w, Polynomial.zero())
    skew = skew_partial(w, v, double_schubert(u, u.size()))
    width = max((i for (f, i) in skew.variables() if f == "x"), default=0)
    via_skew = skew.rename({("x", i): ("t", i) for i in range(1, width + 1)})
    if via_skew != coeff:
        raise InternalMismatch(
            f"expansion and skew routes disagree for ({u}, {v}, {w}): "
            f"{coeff} vs {via_skew}"
        )
    return coeff
