"""
Graham-positivity certification.

A certificate writes a target coefficient as a nonnegative-integer
combination of monomials in prescribed differences: t_i - y_j for the
cohomology theorem, roots t_j - t_i restricted to an inversion set for
localization positivity, and beta^k times products of t_i (-) y_j for
the K-theory conjecture. Homogeneity makes the first two searches
exhaustive at the target degree, so "infeasible" there is a proof of
non-membership; the K search is bounded and can only ever answer
"inconclusive at these bounds".

The solver is deliberately library-free: exact rational Gaussian
elimination for affine solvability, a Bland-rule phase-1 simplex over
Fraction for LP feasibility, and depth-first branch and bound with the
lowest fractional column branched first (floor side first). Identical
inputs always produce byte-identical certificates.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .grothendieck import ominus
from .permutations import RootPair
from .polynomials import (
    LocalizedElement,
    Polynomial,
    beta,
    order_key,
    render,
    t,
    y,
)

DEFAULT_SEARCH_CAP = 10**6
DEFAULT_NODE_BUDGET = 10**5
DEFAULT_MAX_BETA = 6


class NotHomogeneous(ValueError):
    """Certification requires a homogeneous target."""


class SearchSpaceTooLarge(RuntimeError):
    """Monomial enumeration exceeds the configured cap."""


class BudgetExceeded(RuntimeError):
    """Branch-and-bound node budget exhausted."""

    def __init__(self, message: str, nodes: int, log: list[str]):
        super().__init__(message)
        self.nodes = nodes
        self.log = log


@dataclass(frozen=True, order=True)
class DifferencePair:
    """mode 'schubert': t_i - y_j; 'ktheory': t_i (-) y_j; 'root': t_j - t_i."""

    mode: str
    i: int
    j: int

    def __post_init__(self):
        if self.mode not in ("schubert", "ktheory", "root"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.i < 1 or self.j < 1:
            raise ValueError("indices must be positive")
        if self.mode == "root" and not self.i < self.j:
            raise ValueError("root mode requires i < j")

    def polynomial(self) -> Polynomial:
        if self.mode == "schubert":
            return t(self.i) - y(self.j)
        if self.mode == "root":
            return t(self.j) - t(self.i)
        raise ValueError("ktheory pairs expand to localized elements")

    def localized(self) -> LocalizedElement:
        if self.mode == "ktheory":
            return ominus(t(self.i), y(self.j))
        return LocalizedElement(self.polynomial())


def enumerate_difference_monomials(
    degree: int,
    allowed: Iterable[DifferencePair],
    cap: int = DEFAULT_SEARCH_CAP,
) -> list[tuple[DifferencePair, ...]]:
    """All multisets of size `degree` over `allowed`, deterministically ordered."""
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    pairs = sorted(set(allowed))
    count = math.comb(len(pairs) + degree - 1, degree) if pairs else (1 if degree == 0 else 0)
    if count > cap:
        raise SearchSpaceTooLarge(f"{count} monomials exceeds cap {cap}")
    return list(itertools.combinations_with_replacement(pairs, degree))


# -- exact nonnegative integer solver -------------------------------------


def _sparse_gauss(columns: list[dict[int, int]], rhs: dict[int, int], nrows: int, ncols: int):
    """Row-reduce [A | b] over Q.

    Returns ('inconsistent', None, None), ('unique', sol, None) or
    ('underdetermined', None, reduced) where `reduced` is an equivalent
    integer row system [(col -> coef, rhs), ...] of full row rank.
    """
    rows: list[dict[int, Fraction]] = [dict() for _ in range(nrows)]
    for c, col in enumerate(columns):
        for r, val in col.items():
            rows[r][c] = Fraction(val)
    B = ncols  # index of the augmented column
    for r, val in rhs.items():
        if val:
            rows[r][B] = Fraction(val)
    pivots: dict[int, int] = {}
    row_order = list(range(nrows))
    for col in range(ncols):
        pivot_row = None
        for r in row_order:
            if rows[r].get(col):
                pivot_row = r
                break
        if pivot_row is None:
            continue
        row_order.remove(pivot_row)
        prow = rows[pivot_row]
        inv = 1 / prow[col]
        prow = {c: v * inv for c, v in prow.items()}
        rows[pivot_row] = prow
        pivots[col] = pivot_row
        for r in row_order:
            factor = rows[r].get(col)
            if factor:
                target = rows[r]
                for c, v in prow.items():
                    new = target.get(c, Fraction(0)) - factor * v
                    if new:
                        target[c] = new
                    else:
                        target.pop(c, None)
    for r in row_order:
        if rows[r].get(B):
            return ("inconsistent", None, None)
    if len(pivots) == ncols:
        # back-substitute: rows are echelon but not fully reduced
        sol = [Fraction(0)] * ncols
        for col in sorted(pivots, reverse=True):
            row = rows[pivots[col]]
            value = row.get(B, Fraction(0))
            for c, v in row.items():
                if c != col and c != B:
                    value -= v * sol[c]
            sol[col] = value
        return ("unique", sol, None)
    reduced: list[tuple[dict[int, int], int]] = []
    for col in sorted(pivots):
        row = rows[pivots[col]]
        scale = math.lcm(*(v.denominator for v in row.values())) if row else 1
        ints = {c: int(v * scale) for c, v in row.items() if c != B and v}
        reduced.append((ints, int(row.get(B, Fraction(0)) * scale)))
    return ("underdetermined", None, reduced)


_OVERFLOW_GUARD = 1 << 62


def _normalize_row(row: list[int]) -> list[int]:
    biggest = max((abs(v) for v in row), default=0)
    if biggest > _OVERFLOW_GUARD:
        g = 0
        for v in row:
            g = math.gcd(g, v)
            if g == 1:
                return row
        if g > 1:
            return [v // g for v in row]
    return row


def _phase1_simplex(
    eq_rows: list[tuple[dict[int, int], int]],
    ncols: int,
    lower: list[int],
    upper: list[int | None],
) -> list[Fraction] | None:
    """Feasible point of {rows . x = rhs, lower <= x <= upper}, or None.

    Tableau rows are integer vectors kept exact under pivoting via
    row' = pivot * row - row[j] * pivot_row; every test (Bland entering,
    ratio comparison, artificial feasibility) only needs signs and
    cross-products, which row scaling preserves.
    """
    # shift x = lower + mu with mu >= 0; finite upper bounds become slack rows
    caps = []
    for c in range(ncols):
        if upper[c] is not None:
            cap = upper[c] - lower[c]
            if cap < 0:
                return None
            caps.append((c, cap))
    nrows = len(eq_rows)
    nslack = len(caps)
    total_rows = nrows + nslack
    width = ncols + nslack + nrows + 1  # real, slack, artificial, rhs
    tableau: list[list[int]] = []
    basis: list[int] = []
    for r, (row_map, rhs_val) in enumerate(eq_rows):
        row = [0] * width
        shift = rhs_val
        for c, v in row_map.items():
            row[c] = v
            if lower[c]:
                shift -= v * lower[c]
        if shift < 0:
            row = [-v for v in row]
            shift = -shift
        row[ncols + nslack + r] = 1
        row[-1] = shift
        tableau.append(row)
        basis.append(ncols + nslack + r)
    for k, (c, cap) in enumerate(caps):
        row = [0] * width
        row[c] = 1
        row[ncols + k] = 1
        row[-1] = cap
        tableau.append(row)
        basis.append(ncols + k)  # slack is basic; no artificial needed
    zrow = [0] * width
    for j in range(width):
        zrow[j] = -sum(tableau[r][j] for r in range(nrows))
    for r in range(nrows):
        zrow[ncols + nslack + r] = 0
    enterable = ncols + nslack
    while True:
        entering = None
        for j in range(enterable):
            if zrow[j] < 0:
                entering = j
                break
        if entering is None:
            break
        leaving = None
        num_best = den_best = None
        for r in range(total_rows):
            a = tableau[r][entering]
            if a > 0:
                num, den = tableau[r][-1], a
                if leaving is None:
                    better = True
                else:
                    lhs = num * den_best
                    rhs = num_best * den
                    better = lhs < rhs or (lhs == rhs and basis[r] < basis[leaving])
                if better:
                    num_best, den_best = num, den
                    leaving = r
        if leaving is None:
            break  # cannot happen: phase-1 objective is bounded below
        prow = tableau[leaving]
        pivot = prow[entering]
        for r in range(total_rows):
            if r != leaving:
                factor = tableau[r][entering]
                if factor:
                    tableau[r] = _normalize_row(
                        [pivot * a - factor * p for a, p in zip(tableau[r], prow)]
                    )
        factor = zrow[entering]
        if factor:
            zrow = _normalize_row([pivot * a - factor * p for a, p in zip(zrow, prow)])
        basis[leaving] = entering
    for r in range(total_rows):
        if basis[r] >= ncols + nslack and tableau[r][-1] != 0:
            return None
    values = [Fraction(0)] * (ncols + nslack)
    for r, var in enumerate(basis):
        if var < ncols + nslack:
            values[var] = Fraction(tableau[r][-1], tableau[r][var])
    return [values[c] + lower[c] for c in range(ncols)]


def solve_nonneg_integer(
    columns: Sequence[Polynomial],
    target: Polynomial,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> list[int] | None:
    """lambda in N^k with sum(lambda_c * column_c) == target, else None.

    Deterministic: Bland pivoting, DFS branching on the lowest fractional
    column, floor branch explored first.
    """
    monos = sorted(
        {m for col in columns for m, _ in col.terms()} | {m for m, _ in target.terms()},
        key=order_key,
    )
    row_index = {m: r for r, m in enumerate(monos)}
    ncols = len(columns)
    sparse_cols = [
        {row_index[m]: c for m, c in col.terms()} for col in columns
    ]
    rhs_sparse = {row_index[m]: c for m, c in target.terms()}
    if ncols == 0:
        return [] if target.is_zero() else None
    status, sol, reduced = _sparse_gauss(sparse_cols, rhs_sparse, len(monos), ncols)
    if status == "inconsistent":
        return None
    if status == "unique":
        if all(v.denominator == 1 and v >= 0 for v in sol):
            return [int(v) for v in sol]
        return None
    stack: list[tuple[tuple[int, ...], tuple[int | None, ...]]] = [
        (tuple([0] * ncols), tuple([None] * ncols))
    ]
    nodes = 0
    log: list[str] = []
    while stack:
        lower, upper = stack.pop()
        nodes += 1
        if nodes > node_budget:
            raise BudgetExceeded(
                f"node budget {node_budget} exhausted", nodes, log[-20:]
            )
        point = _phase1_simplex(reduced, ncols, list(lower), list(upper))
        if point is None:
            log.append(f"prune bounds={lower}/{upper}")
            continue
        frac = next((c for c, v in enumerate(point) if v.denominator != 1), None)
        if frac is None:
            return [int(v) for v in point]
        floor_v = point[frac].numerator // point[frac].denominator
        log.append(f"branch col={frac} at {point[frac]}")
        up_branch = (
            tuple(lower[:frac] + (floor_v + 1,) + lower[frac + 1 :]),
            upper,
        )
        down_branch = (
            lower,
            tuple(upper[:frac] + (floor_v,) + upper[frac + 1 :]),
        )
        stack.append(up_branch)
        stack.append(down_branch)  # popped first: floor side first
    return None


# -- certificates ----------------------------------------------------------


@dataclass(frozen=True)
class CertificateTerm:
    pairs: tuple[DifferencePair, ...]
    beta_power: int
    multiplicity: int


@dataclass(frozen=True)
class Certificate:
    mode: str
    target: dict
    terms: tuple[CertificateTerm, ...]

    def to_json_dict(self) -> dict:
        return {
            "mode": self.mode,
            "target": self.target,
            "terms": [
                {
                    "pairs": [[p.i, p.j] for p in term.pairs],
                    "beta": term.beta_power,
                    "lambda": term.multiplicity,
                }
                for term in self.terms
            ],
        }


CERTIFIED = "certified"
INFEASIBLE_COMPLETE = "infeasible_complete"
INCONCLUSIVE_AT_BOUNDS = "inconclusive_at_bounds"
DENOMINATOR_SHAPE_VIOLATION = "denominator_shape_violation"


@dataclass(frozen=True)
class CertifyOutcome:
    status: str
    certificate: Certificate | None = None
    bounds: tuple[int, int] | None = None
    reason: str | None = None

    @property
    def is_certified(self) -> bool:
        return self.status == CERTIFIED


def verify_certificate(cert: Certificate, target) -> bool:
    """Re-expand the certificate with plain ring arithmetic and compare."""
    if cert.mode == "ktheory":
        total = LocalizedElement(0)
        for term in cert.terms:
            value = LocalizedElement(term.multiplicity) * LocalizedElement(beta()) ** term.beta_power
            for pair in term.pairs:
                value = value * pair.localized()
            total = total + value
        if isinstance(target, Polynomial):
            target = LocalizedElement(target)
        return total == target
    total = Polynomial.zero()
    for term in cert.terms:
        value = Polynomial.integer(term.multiplicity) * beta() ** term.beta_power
        for pair in term.pairs:
            value = value * pair.polynomial()
        total = total + value
    if isinstance(target, LocalizedElement):
        return LocalizedElement(total) == target
    return total == target


def _require_families(p: Polynomial, allowed: set[str], what: str) -> None:
    families = {f for f, _ in p.variables()}
    if not families <= allowed:
        raise NotHomogeneous(f"{what} may only involve {sorted(allowed)}, got {sorted(families)}")


def _homogeneous_degree(p: Polynomial, what: str) -> int:
    degrees = {sum(e for _, e in mono) for mono, _ in p.terms()}
    if len(degrees) > 1:
        raise NotHomogeneous(f"{what} is not homogeneous: degrees {sorted(degrees)}")
    return degrees.pop() if degrees else 0


def _certify_homogeneous(
    target: Polynomial,
    allowed: list[DifferencePair],
    mode: str,
    target_desc: dict,
    cap: int,
    node_budget: int,
) -> CertifyOutcome:
    if target.is_zero():
        cert = Certificate(mode, target_desc, ())
        return CertifyOutcome(CERTIFIED, cert)
    degree = _homogeneous_degree(target, "certification target")
    monomials = enumerate_difference_monomials(degree, allowed, cap)
    columns = []
    for pairs in monomials:
        col = Polynomial.integer(1)
        for pair in pairs:
            col = col * pair.polynomial()
        columns.append(col)
    solution = solve_nonneg_integer(columns, target, node_budget)
    if solution is None:
        return CertifyOutcome(
            INFEASIBLE_COMPLETE,
            reason=f"exhaustive at degree {degree} over {len(allowed)} pairs",
        )
    terms = tuple(
        CertificateTerm(pairs, 0, lam)
        for pairs, lam in zip(monomials, solution)
        if lam > 0
    )
    cert = Certificate(mode, target_desc, terms)
    if not verify_certificate(cert, target):
        raise AssertionError("certificate failed re-verification (solver bug)")
    return CertifyOutcome(CERTIFIED, cert)


def certify_schubert(
    c: Polynomial,
    ambient: int,
    target_desc: dict | None = None,
    cap: int = DEFAULT_SEARCH_CAP,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> CertifyOutcome:
    """Certificate of membership in N[t_i - y_j] with i, j <= ambient.

    Homogeneity forces any representation to use exactly degree-d
    monomials, so an infeasible answer is complete at this ambient.
    """
    _require_families(c, {"y", "t"}, "Schubert coefficient")
    allowed = [
        DifferencePair("schubert", i, j)
        for i in range(1, ambient + 1)
        for j in range(1, ambient + 1)
    ]
    desc = target_desc if target_desc is not None else {"expr": render(c)}
    return _certify_homogeneous(c, allowed, "schubert", desc, cap, node_budget)


def certify_billey(
    loc: Polynomial,
    inv: Iterable[RootPair],
    target_desc: dict | None = None,
    cap: int = DEFAULT_SEARCH_CAP,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> CertifyOutcome:
    """Certificate for a localization over the roots of the inversion set."""
    _require_families(loc, {"t"}, "localization")
    allowed = [DifferencePair("root", rp.i, rp.j) for rp in inv]
    desc = target_desc if target_desc is not None else {"expr": render(loc)}
    return _certify_homogeneous(loc, allowed, "root", desc, cap, node_budget)


def _beta_graded_degree(p: Polynomial, what: str) -> int | None:
    """Degree under deg(y) = deg(t) = 1, deg(beta) = -1; None if mixed."""
    degrees = set()
    for mono, _ in p.terms():
        d = 0
        for (family, _i), e in mono:
            d += -e if family == "b" else e
        degrees.add(d)
    if len(degrees) > 1:
        return None
    return degrees.pop() if degrees else 0


def certify_grothendieck(
    c: LocalizedElement,
    ambient: int,
    bounds: tuple[int, int] | None = None,
    target_desc: dict | None = None,
    cap: int = DEFAULT_SEARCH_CAP,
    node_budget: int = DEFAULT_NODE_BUDGET,
    allowed: list[DifferencePair] | None = None,
) -> CertifyOutcome:
    """Search for c as sum of lambda * beta^k * prod (t_i (-) y_j).

    Bounds (maxZDegree, maxBetaPower) cannot exhaust N[beta][t(-)y], so
    failure is only ever InconclusiveAtBounds. Bounds are doubled once
    before giving up.
    """
    if c.den_t:
        return CertifyOutcome(
            DENOMINATOR_SHAPE_VIOLATION,
            reason=f"denominator carries t factors: {sorted(c.den_t)}",
        )
    desc = target_desc if target_desc is not None else {"expr": str(c)}
    if c.is_zero():
        return CertifyOutcome(CERTIFIED, Certificate("ktheory", desc, ()))
    _require_families(c.num, {"y", "t", "b"}, "K coefficient")
    graded = _beta_graded_degree(c.num, "K coefficient")
    if bounds is None:
        base = max(graded if graded is not None else 0, 0)
        bounds = (base + 4, DEFAULT_MAX_BETA)
    if allowed is None:
        allowed = [
            DifferencePair("ktheory", i, j)
            for i in range(1, ambient + 1)
            for j in range(1, ambient + 1)
        ]
    attempt_bounds = [bounds, (bounds[0] * 2, bounds[1] * 2)]
    for max_z, max_beta in attempt_bounds:
        outcome = _try_grothendieck_bounds(
            c, allowed, desc, graded, max_z, max_beta, cap, node_budget
        )
        if outcome is not None:
            return outcome
    return CertifyOutcome(INCONCLUSIVE_AT_BOUNDS, bounds=attempt_bounds[-1])


def _try_grothendieck_bounds(
    c: LocalizedElement,
    allowed: list[DifferencePair],
    desc: dict,
    graded: int | None,
    max_z: int,
    max_beta: int,
    cap: int,
    node_budget: int,
) -> CertifyOutcome | None:
    """Certified outcome if some deepening level succeeds, else None."""
    start = max(graded, 0) if graded is not None else 0
    for level in range(start, max_z + 1):
        labels: list[tuple[tuple[DifferencePair, ...], int]] = []
        cols: list[LocalizedElement] = []
        for z in range(0, level + 1):
            if graded is not None:
                ks: Iterable[int] = (z - graded,)
            else:
                ks = range(0, max_beta + 1)
            valid_ks = [k for k in ks if 0 <= k <= max_beta]
            if not valid_ks:
                continue
            for pairs in enumerate_difference_monomials(z, allowed, cap):
                base = LocalizedElement(1)
                for pair in pairs:
                    base = base * pair.localized()
                for k in valid_ks:
                    labels.append((pairs, k))
                    cols.append(LocalizedElement(beta()) ** k * base)
        den_exp: dict[int, int] = dict(c.den_y)
        for col in cols:
            for j, e in col.den_y.items():
                den_exp[j] = max(den_exp.get(j, 0), e)

        def cleared(elem: LocalizedElement) -> Polynomial:
            scale = Polynomial.integer(1)
            for j, e in den_exp.items():
                extra = e - elem.den_y.get(j, 0)
                if extra:
                    scale = scale * (Polynomial.integer(1) + beta() * y(j)) ** extra
            return elem.num * scale

        target_poly = cleared(c)
        column_polys = [cleared(col) for col in cols]
        solution = solve_nonneg_integer(column_polys, target_poly, node_budget)
        if solution is not None:
            terms = tuple(
                CertificateTerm(pairs, k, lam)
                for (pairs, k), lam in zip(labels, solution)
                if lam > 0
            )
            cert = Certificate("ktheory", desc, terms)
            if not verify_certificate(cert, c):
                raise AssertionError("K certificate failed re-verification (solver bug)")
            return CertifyOutcome(CERTIFIED, cert)
    return None


def quick_screen(c: Polynomial, ambient: int, samples: int = 64) -> bool:
    """Necessary condition: c >= 0 wherever every t_i >= max_j y_j.

    False means definitely not certifiable; True proves nothing.
    """
    rng = random.Random(0x5EED)
    variables = set(c.variables())
    for family in ("y", "t"):
        for idx in range(1, ambient + 1):
            variables.add((family, idx))
    y_vars = sorted(v for v in variables if v[0] == "y")
    t_vars = sorted(v for v in variables if v[0] == "t")
    other = [v for v in variables if v[0] not in ("y", "t")]
    if other:
        raise ValueError(f"screen expects y,t variables only, got {other}")
    for _ in range(samples):
        point = {v: rng.randint(0, 6) for v in y_vars}
        floor_value = max(point.values(), default=0)
        point.update({v: floor_value + rng.randint(0, 6) for v in t_vars})
        if c.evaluate(point) < 0:
            return False
    return True
