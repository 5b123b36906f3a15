"""
Exact sparse multivariate polynomials over the integers in the variable
families x, y, t and the formal deformation symbol b (beta), plus the
localized ring whose denominators are products of (1+b*y_j) and (1+b*t_i).

Coefficients are Python ints, so arithmetic never overflows. A variable
is a pair (family, index) with family one of 'x', 'y', 't', 'b'; beta
carries index 0. A monomial is a tuple of (variable, exponent) pairs
sorted in storage order, and a polynomial is a mapping from monomials to
nonzero coefficients, so structural equality is semantic equality.

The canonical term order is graded lexicographic with significance
x1 > x2 > ... > t1 > t2 > ... > y1 > y2 > ... > b; rendering lists terms
in decreasing order, which is also the order used for leading terms in
exact division.
"""
from __future__ import annotations

from typing import Iterable, Iterator, Mapping, Sequence, Union

Var = tuple[str, int]
Monomial = tuple[tuple[Var, int], ...]

_FAMILIES = ("x", "y", "t", "b")
_STORAGE_RANK = {"x": 0, "y": 1, "t": 2, "b": 3}
_RENDER_RANK = {"b": 0, "x": 1, "y": 2, "t": 3}


def _significance(var: Var):
    """Total order on variables for the term order; smaller = more significant.

    Family significance is x, then t, then y, then b; within x and y the
    lower index is more significant, within t the higher index is, so
    positive roots t_j - t_i (i < j) render with their positive term first.
    """
    family, index = var
    if family == "x":
        return (0, index)
    if family == "t":
        return (1, -index)
    if family == "y":
        return (2, index)
    return (3, 0)


class NotDivisible(ArithmeticError):
    """Exact polynomial division left a nonzero remainder."""


class ParseError(ValueError):
    """Polynomial text does not conform to the grammar."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def _check_var(var: Var) -> Var:
    family, index = var
    if family not in _FAMILIES:
        raise ValueError(f"unknown variable family {family!r}")
    if family == "b":
        if index != 0:
            raise ValueError("beta carries no index")
    elif index < 1:
        raise ValueError(f"variable index must be >= 1, got {family}{index}")
    return var


def _storage_key(entry: tuple[Var, int]):
    (family, index), _ = entry
    return (_STORAGE_RANK[family], index)


def monomial_degree(mono: Monomial) -> int:
    return sum(e for _, e in mono)


def order_key(mono: Monomial):
    """Sort key: ascending order of keys = decreasing canonical term order."""
    sig = sorted(((_significance(v), -e) for v, e in mono))
    return (-monomial_degree(mono), sig)


def make_monomial(exps: Mapping[Var, int]) -> Monomial:
    """Canonical storage form; zero exponents are dropped."""
    return tuple(sorted(((v, e) for v, e in exps.items() if e), key=_storage_key))


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    exps: dict[Var, int] = dict(a)
    for var, e in b:
        exps[var] = exps.get(var, 0) + e
    return tuple(sorted(exps.items(), key=_storage_key))


def monomial_divide(a: Monomial, b: Monomial) -> Monomial | None:
    """a / b, or None when b does not divide a."""
    exps = dict(a)
    for var, e in b:
        have = exps.get(var, 0)
        if have < e:
            return None
        if have == e:
            del exps[var]
        else:
            exps[var] = have - e
    return tuple(sorted(exps.items(), key=_storage_key))


_COERCIBLE = Union["Polynomial", int]


class Polynomial:
    """Immutable sparse polynomial; zero is the empty term map."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Monomial, int] | None = None):
        data = {m: c for m, c in (terms or {}).items() if c != 0}
        object.__setattr__(self, "_terms", data)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero() -> "Polynomial":
        return _ZERO

    @staticmethod
    def integer(c: int) -> "Polynomial":
        return Polynomial({(): c}) if c else _ZERO

    @staticmethod
    def variable(var: Var) -> "Polynomial":
        _check_var(var)
        return Polynomial({((var, 1),): 1})

    # -- inspection ---------------------------------------------------

    def terms(self) -> Iterator[tuple[Monomial, int]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, mono: Monomial) -> int:
        return self._terms.get(mono, 0)

    def constant_term(self) -> int:
        return self._terms.get((), 0)

    def variables(self) -> set[Var]:
        return {var for mono in self._terms for var, _ in mono}

    def degree(self) -> int | None:
        """Total degree; None for the zero polynomial."""
        if not self._terms:
            return None
        return max(monomial_degree(m) for m in self._terms)

    def family_degree(self, family: str) -> int:
        best = 0
        for mono in self._terms:
            d = sum(e for (f, _), e in mono if f == family)
            best = max(best, d)
        return best

    def leading(self) -> tuple[Monomial, int]:
        mono = min(self._terms, key=order_key)
        return mono, self._terms[mono]

    def is_homogeneous(self) -> bool:
        degrees = {monomial_degree(m) for m in self._terms}
        return len(degrees) <= 1

    # -- arithmetic ---------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = Polynomial.integer(other)
        return isinstance(other, Polynomial) and self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: _COERCIBLE) -> "Polynomial":
        if isinstance(other, int):
            other = Polynomial.integer(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        data = dict(self._terms)
        for mono, c in other._terms.items():
            new = data.get(mono, 0) + c
            if new:
                data[mono] = new
            else:
                data.pop(mono, None)
        return Polynomial(data)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: _COERCIBLE) -> "Polynomial":
        if isinstance(other, int):
            other = Polynomial.integer(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: _COERCIBLE) -> "Polynomial":
        return (-self) + other

    def __mul__(self, other: _COERCIBLE) -> "Polynomial":
        if isinstance(other, int):
            if other == 0:
                return _ZERO
            return Polynomial({m: c * other for m, c in self._terms.items()})
        if not isinstance(other, Polynomial):
            return NotImplemented
        if len(other._terms) < len(self._terms):
            self, other = other, self
        data: dict[Monomial, int] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                mono = monomial_mul(m1, m2)
                new = data.get(mono, 0) + c1 * c2
                if new:
                    data[mono] = new
                else:
                    del data[mono]
        return Polynomial(data)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        result = Polynomial.integer(1)
        for _ in range(n):
            result = result * self
        return result

    # -- substitution -------------------------------------------------

    def substitute(self, mapping: Mapping[Var, _COERCIBLE]) -> "Polynomial":
        """Simultaneous substitution of polynomials for variables."""
        images = {
            _check_var(v): (Polynomial.integer(p) if isinstance(p, int) else p)
            for v, p in mapping.items()
        }
        total = _ZERO
        for mono, coeff in self._terms.items():
            term = Polynomial.integer(coeff)
            for var, e in mono:
                base = images.get(var)
                if base is None:
                    term = term * Polynomial({((var, e),): 1})
                else:
                    term = term * base**e
            total = total + term
        return total

    def rename(self, var_map: Mapping[Var, Var]) -> "Polynomial":
        """Variable-to-variable substitution (must stay a bijection on support)."""
        data: dict[Monomial, int] = {}
        for mono, coeff in self._terms.items():
            exps: dict[Var, int] = {}
            for var, e in mono:
                target = var_map.get(var, var)
                exps[target] = exps.get(target, 0) + e
            new = tuple(sorted(exps.items(), key=_storage_key))
            merged = data.get(new, 0) + coeff
            if merged:
                data[new] = merged
            else:
                del data[new]
        return Polynomial(data)

    def beta_zero(self) -> "Polynomial":
        return Polynomial(
            {m: c for m, c in self._terms.items() if all(f != "b" for (f, _), _e in m)}
        )

    def evaluate(self, point: Mapping[Var, int]) -> int:
        total = 0
        for mono, coeff in self._terms.items():
            value = coeff
            for var, e in mono:
                if var not in point:
                    raise KeyError(f"no value for {var}")
                value *= point[var] ** e
            total += value
        return total

    def __repr__(self) -> str:
        return f"Polynomial({render(self)!r})"

    def __str__(self) -> str:
        return render(self)


_ZERO = Polynomial({})


def x(i: int) -> Polynomial:
    return Polynomial.variable(("x", i))


def y(j: int) -> Polynomial:
    return Polynomial.variable(("y", j))


def t(i: int) -> Polynomial:
    return Polynomial.variable(("t", i))


def beta() -> Polynomial:
    return Polynomial.variable(("b", 0))


def substitute(p: Polynomial, mapping: Mapping[Var, _COERCIBLE]) -> Polynomial:
    return p.substitute(mapping)


# -- exact division ----------------------------------------------------


def _beta_levels(p: Polynomial) -> dict[int, Polynomial]:
    levels: dict[int, dict[Monomial, int]] = {}
    bvar = ("b", 0)
    for mono, c in p.terms():
        k = 0
        rest = []
        for var, e in mono:
            if var == bvar:
                k = e
            else:
                rest.append((var, e))
        levels.setdefault(k, {})[tuple(rest)] = c
    return {k: Polynomial(d) for k, d in levels.items()}


def _unit_plus_beta_var(q: Polynomial) -> Var | None:
    """Detect divisors of the exact form 1 + b*v for a variable v."""
    if len(q) != 2 or q.constant_term() != 1:
        return None
    for mono, c in q.terms():
        if mono == ():
            continue
        if c != 1 or len(mono) != 2:
            return None
        entries = dict(mono)
        if entries.get(("b", 0)) != 1:
            return None
        others = [(v, e) for v, e in entries.items() if v != ("b", 0)]
        if len(others) == 1 and others[0][1] == 1:
            return others[0][0]
    return None


def _divide_by_unit_plus_beta_var(p: Polynomial, v: Var) -> Polynomial:
    # Synthetic division by (1 + b*v), level by level in the beta degree.
    levels = _beta_levels(p)
    if not levels:
        return _ZERO
    top = max(levels)
    vpoly = Polynomial.variable(v)
    quotient_levels: dict[int, Polynomial] = {}
    prev = _ZERO
    for k in range(0, top):
        qk = levels.get(k, _ZERO) - vpoly * prev
        quotient_levels[k] = qk
        prev = qk
    if levels.get(top, _ZERO) != vpoly * prev:
        raise NotDivisible("remainder nonzero")
    b1 = beta()
    result = _ZERO
    for k, qk in quotient_levels.items():
        result = result + b1**k * qk
    return result


def exact_divide(p: Polynomial, q: Polynomial) -> Polynomial:
    """Quotient r with r*q == p exactly; raises NotDivisible otherwise."""
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if p.is_zero():
        return _ZERO
    special = _unit_plus_beta_var(q)
    if special is not None:
        return _divide_by_unit_plus_beta_var(p, special)
    lead_q, c_q = q.leading()
    quotient: dict[Monomial, int] = {}
    rest = p
    while not rest.is_zero():
        lead_r, c_r = rest.leading()
        mono = monomial_divide(lead_r, lead_q)
        if mono is None:
            raise NotDivisible(f"leading monomial mismatch: {rest.leading()}")
        c, remainder = divmod(c_r, c_q)
        if remainder != 0:
            raise NotDivisible("leading coefficient does not divide")
        quotient[mono] = c
        rest = rest - Polynomial({mono: c}) * q
    return Polynomial(quotient)


# -- parsing and rendering ---------------------------------------------

_VAR_RE_HEAD = frozenset("xyt")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str) -> ParseError:
        return ParseError(message, self.pos)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self) -> str:
        ch = self.peek()
        self.pos += 1
        return ch

    def read_int(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise self.error("expected an integer")
        return int(self.text[start : self.pos])

    def parse_factor(self) -> Polynomial:
        ch = self.peek()
        if ch == "(":
            self.take()
            inner = self.parse_expr()
            if self.peek() != ")":
                raise self.error("expected ')'")
            self.take()
            return inner
        if ch == "-":
            self.take()
            return Polynomial.integer(-self.read_int())
        if ch.isdigit():
            return Polynomial.integer(self.read_int())
        if ch == "b":
            self.take()
            base = beta()
        elif ch in _VAR_RE_HEAD:
            family = self.take()
            index = self.read_int()
            base = Polynomial.variable((family, index))
        else:
            raise self.error(f"expected a factor, found {ch!r}" if ch else "unexpected end of input")
        if self.peek() == "^":
            self.take()
            return base ** self.read_int()
        return base

    def parse_term(self) -> Polynomial:
        result = self.parse_factor()
        while self.peek() == "*":
            self.take()
            result = result * self.parse_factor()
        return result

    def parse_expr(self) -> Polynomial:
        negate = False
        if self.peek() == "-":
            # unary minus before a leading variable term (superset of the
            # written grammar; every conforming string parses identically)
            mark = self.pos
            self.take()
            if self.peek().isdigit():
                self.pos = mark
            else:
                negate = True
        result = self.parse_term()
        if negate:
            result = -result
        while True:
            ch = self.peek()
            if ch == "+":
                self.take()
                result = result + self.parse_term()
            elif ch == "-":
                self.take()
                result = result - self.parse_term()
            else:
                return result


def parse(text: str) -> Polynomial:
    parser = _Parser(text)
    result = parser.parse_expr()
    parser.skip_ws()
    if parser.pos != len(text):
        raise parser.error("trailing input")
    return result


def _render_key(entry: tuple[Var, int]):
    (family, index), _ = entry
    return (_RENDER_RANK[family], index)


def _render_monomial(mono: Monomial) -> str:
    parts = []
    for (family, index), e in sorted(mono, key=_render_key):
        name = "b" if family == "b" else f"{family}{index}"
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


def render(p: Polynomial) -> str:
    if p.is_zero():
        return "0"
    pieces = []
    for mono, coeff in sorted(p.terms(), key=lambda item: order_key(item[0])):
        sign = "-" if coeff < 0 else "+"
        mag = abs(coeff)
        if mono == ():
            body = str(mag)
        elif mag == 1:
            body = _render_monomial(mono)
        else:
            body = f"{mag}*{_render_monomial(mono)}"
        pieces.append((sign, body))
    first_sign, first_body = pieces[0]
    out = first_body if first_sign == "+" else f"-{first_body}"
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


# -- localized ring ----------------------------------------------------


class NotInvertible(ArithmeticError):
    """Element is not a unit of the localized ring."""


def _den_factor(family: str, index: int) -> Polynomial:
    return Polynomial.integer(1) + beta() * Polynomial.variable((family, index))


class LocalizedElement:
    """numerator / (prod_j (1+b*y_j)^{ey_j} * prod_i (1+b*t_i)^{et_i}), reduced."""

    __slots__ = ("num", "den_y", "den_t")

    def __init__(
        self,
        num: Polynomial | int,
        den_y: Mapping[int, int] | None = None,
        den_t: Mapping[int, int] | None = None,
    ):
        if isinstance(num, int):
            num = Polynomial.integer(num)
        dy = {j: e for j, e in (den_y or {}).items() if e > 0}
        dt = {i: e for i, e in (den_t or {}).items() if e > 0}
        if any(e < 0 for e in (den_y or {}).values()) or any(
            e < 0 for e in (den_t or {}).values()
        ):
            raise ValueError("denominator exponents must be nonnegative")
        if num.is_zero():
            dy, dt = {}, {}
        else:
            num, dy = _cancel(num, dy, "y")
            num, dt = _cancel(num, dt, "t")
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den_y", dy)
        object.__setattr__(self, "den_t", dt)

    def __setattr__(self, name, value):
        raise AttributeError("LocalizedElement is immutable")

    @staticmethod
    def from_polynomial(p: Polynomial | int) -> "LocalizedElement":
        return LocalizedElement(p)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return not self.den_y and not self.den_t

    def denominator(self) -> Polynomial:
        d = Polynomial.integer(1)
        for j, e in sorted(self.den_y.items()):
            d = d * _den_factor("y", j) ** e
        for i, e in sorted(self.den_t.items()):
            d = d * _den_factor("t", i) ** e
        return d

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Polynomial)):
            other = LocalizedElement(other)
        return (
            isinstance(other, LocalizedElement)
            and self.num == other.num
            and self.den_y == other.den_y
            and self.den_t == other.den_t
        )

    def __hash__(self) -> int:
        return hash(
            (self.num, tuple(sorted(self.den_y.items())), tuple(sorted(self.den_t.items())))
        )

    def _coerce(self, other) -> "LocalizedElement | None":
        if isinstance(other, (int, Polynomial)):
            return LocalizedElement(other)
        return other if isinstance(other, LocalizedElement) else None

    def __add__(self, other) -> "LocalizedElement":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        dy = {j: max(self.den_y.get(j, 0), other.den_y.get(j, 0)) for j in {*self.den_y, *other.den_y}}
        dt = {i: max(self.den_t.get(i, 0), other.den_t.get(i, 0)) for i in {*self.den_t, *other.den_t}}
        num = self.num * _scale_factor(dy, dt, self.den_y, self.den_t) + other.num * _scale_factor(
            dy, dt, other.den_y, other.den_t
        )
        return LocalizedElement(num, dy, dt)

    __radd__ = __add__

    def __neg__(self) -> "LocalizedElement":
        return LocalizedElement(-self.num, self.den_y, self.den_t)

    def __sub__(self, other) -> "LocalizedElement":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "LocalizedElement":
        return (-self) + other

    def __mul__(self, other) -> "LocalizedElement":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        dy = {j: self.den_y.get(j, 0) + other.den_y.get(j, 0) for j in {*self.den_y, *other.den_y}}
        dt = {i: self.den_t.get(i, 0) + other.den_t.get(i, 0) for i in {*self.den_t, *other.den_t}}
        return LocalizedElement(self.num * other.num, dy, dt)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LocalizedElement":
        if n < 0:
            raise ValueError("negative powers need invert_unit")
        result = LocalizedElement(1)
        for _ in range(n):
            result = result * self
        return result

    def beta_zero(self) -> Polynomial:
        return self.num.beta_zero()

    def __repr__(self) -> str:
        return f"LocalizedElement({render_localized(self)!r})"

    def __str__(self) -> str:
        return render_localized(self)


def _scale_factor(
    dy: Mapping[int, int],
    dt: Mapping[int, int],
    own_y: Mapping[int, int],
    own_t: Mapping[int, int],
) -> Polynomial:
    scale = Polynomial.integer(1)
    for j, e in dy.items():
        extra = e - own_y.get(j, 0)
        if extra:
            scale = scale * _den_factor("y", j) ** extra
    for i, e in dt.items():
        extra = e - own_t.get(i, 0)
        if extra:
            scale = scale * _den_factor("t", i) ** extra
    return scale


def _cancel(num: Polynomial, dens: dict[int, int], family: str) -> tuple[Polynomial, dict[int, int]]:
    out = dict(dens)
    for index in sorted(out):
        factor = _den_factor(family, index)
        while out[index] > 0:
            try:
                num = exact_divide(num, factor)
            except NotDivisible:
                break
            out[index] -= 1
        if out[index] == 0:
            del out[index]
    return num, out


def frac_reduce(a: LocalizedElement) -> LocalizedElement:
    """Canonical form; a no-op because construction already reduces."""
    return LocalizedElement(a.num, a.den_y, a.den_t)


def beta_zero(a: LocalizedElement | Polynomial) -> Polynomial:
    return a.beta_zero()


def invert_unit(a: LocalizedElement) -> LocalizedElement:
    """Inverse of a unit: numerator must be +-1 times allowed denominator factors."""
    num = a.num
    dy: dict[int, int] = {}
    dt: dict[int, int] = {}
    for family, store in (("y", dy), ("t", dt)):
        for _, index in sorted(v for v in num.variables() if v[0] == family):
            factor = _den_factor(family, index)
            while True:
                try:
                    num = exact_divide(num, factor)
                except NotDivisible:
                    break
                store[index] = store.get(index, 0) + 1
    unit = num.constant_term()
    if len(num) != 1 or unit not in (1, -1):
        raise NotInvertible(f"not a unit of the localized ring: {a}")
    inv_num = a.denominator() * unit
    return LocalizedElement(inv_num, dy, dt)


def exact_divide_localized(a: LocalizedElement, d: LocalizedElement) -> LocalizedElement:
    """a / d when the quotient exists in the localized ring (exact numerator division)."""
    if d.is_zero():
        raise ZeroDivisionError("division by zero")
    numerator = a.num * d.denominator()
    quotient = exact_divide(numerator, d.num)
    return LocalizedElement(quotient, a.den_y, a.den_t)


def render_localized(a: LocalizedElement) -> str:
    if a.is_polynomial():
        return render(a.num)
    factors = []
    for j, e in sorted(a.den_y.items()):
        base = f"(1+b*y{j})"
        factors.append(base if e == 1 else f"{base}^{e}")
    for i, e in sorted(a.den_t.items()):
        base = f"(1+b*t{i})"
        factors.append(base if e == 1 else f"{base}^{e}")
    return f"{render(a.num)} / ({'*'.join(factors)})"
