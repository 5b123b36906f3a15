"""
Permutations of {1, 2, ...} with finite support, in one-line notation.

A permutation is stored as its canonical window: the shortest prefix
[w(1), ..., w(m)] that determines it, with w(k) = k for all k > m.
Composition follows (u * v)(i) = u(v(i)), and all reduced-word and
operator conventions elsewhere in the package are stated relative to
that choice.

Positive roots of type A are index pairs (i, j) with i < j, rendered as
the linear polynomial t_j - t_i (so the simple root alpha_i is
t_{i+1} - t_i).
"""
from __future__ import annotations

import itertools
import re
from functools import total_ordering
from typing import Iterable, Iterator, Sequence


class NotAPermutation(ValueError):
    """Input sequence is not a rearrangement of 1..m."""


class InvalidCode(ValueError):
    """Sequence is not a valid Lehmer code."""


class TooManyWords(ValueError):
    """Reduced-word enumeration would exceed the requested limit."""


@total_ordering
class Permutation:
    """Element of S_infinity, canonicalized by trimming trailing fixed points."""

    __slots__ = ("window",)

    def __init__(self, one_line: Sequence[int]):
        window = list(one_line)
        m = len(window)
        if sorted(window) != list(range(1, m + 1)):
            raise NotAPermutation(f"not a rearrangement of 1..{m}: {one_line!r}")
        while window and window[-1] == len(window):
            window.pop()
        object.__setattr__(self, "window", tuple(window))

    def __setattr__(self, name, value):
        raise AttributeError("Permutation is immutable")

    def __call__(self, i: int) -> int:
        if i < 1:
            raise ValueError(f"permutations act on positive integers, got {i}")
        return self.window[i - 1] if i <= len(self.window) else i

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.window == other.window

    def __lt__(self, other: "Permutation") -> bool:
        # lexicographic on one-line notation; used only for deterministic sorting
        return self.one_line() < other.one_line()

    def __hash__(self) -> int:
        return hash(self.window)

    def __repr__(self) -> str:
        return f"Permutation({list(self.one_line())})"

    def __str__(self) -> str:
        return ",".join(str(v) for v in self.one_line())

    def __mul__(self, other: "Permutation") -> "Permutation":
        m = max(len(self.window), len(other.window))
        return Permutation([self(other(i)) for i in range(1, m + 1)])

    def one_line(self) -> tuple[int, ...]:
        """The window, padded so the identity prints as '1'."""
        return self.window if self.window else (1,)

    def is_identity(self) -> bool:
        return not self.window

    def size(self) -> int:
        """Smallest m with self in S_m (1 for the identity)."""
        return max(len(self.window), 1)


IDENTITY = Permutation([])


def make_permutation(one_line: Sequence[int]) -> Permutation:
    return Permutation(one_line)


def simple_reflection(i: int) -> Permutation:
    if i < 1:
        raise ValueError("simple reflection index must be >= 1")
    return Permutation(list(range(1, i)) + [i + 1, i])


def multiply(u: Permutation, v: Permutation) -> Permutation:
    return u * v


def inverse(u: Permutation) -> Permutation:
    window = u.window
    inv = [0] * len(window)
    for i, value in enumerate(window, start=1):
        inv[value - 1] = i
    return Permutation(inv)


def length(w: Permutation) -> int:
    """Number of inversions of w."""
    win = w.window
    return sum(
        1
        for i in range(len(win))
        for j in range(i + 1, len(win))
        if win[i] > win[j]
    )


def lehmer_code(w: Permutation) -> tuple[int, ...]:
    """code(w)_i = #{j > i : w(j) < w(i)} over the canonical window."""
    win = w.window
    return tuple(
        sum(1 for j in range(i + 1, len(win)) if win[j] < win[i])
        for i in range(len(win))
    )


def from_lehmer_code(code: Sequence[int]) -> Permutation:
    m = len(code)
    for i, c in enumerate(code):
        if c < 0 or c > m - 1 - i:
            raise InvalidCode(f"entry {c} at position {i + 1} exceeds {m - 1 - i}")
    available = list(range(1, m + 1))
    return Permutation([available.pop(c) for c in code])


def code_to_permutation(code: Sequence[int]) -> Permutation:
    """Permutation whose Lehmer code extends `code` by zeros (any entries allowed)."""
    code = list(code)
    while code and code[-1] == 0:
        code.pop()
    if not code:
        return IDENTITY
    m = max(i + 1 + c for i, c in enumerate(code))
    return from_lehmer_code(code + [0] * (m - len(code)))


def descents(w: Permutation) -> set[int]:
    """{i : w(i) > w(i+1)}."""
    win = w.window
    return {i + 1 for i in range(len(win) - 1) if win[i] > win[i + 1]}


def left_descents(w: Permutation) -> set[int]:
    """{i : length(s_i * w) < length(w)}, i.e. inverse(w)(i) > inverse(w)(i+1)."""
    return descents(inverse(w))


def canonical_reduced_word(w: Permutation) -> tuple[int, ...]:
    """Deterministic reduced word: repeatedly peel the smallest left descent.

    Letters multiply left to right, w = s_{i_1} * s_{i_2} * ... * s_{i_l}.
    """
    letters = []
    while not w.is_identity():
        i = min(left_descents(w))
        letters.append(i)
        w = simple_reflection(i) * w
    return tuple(letters)


def word_to_permutation(letters: Iterable[int]) -> Permutation:
    w = IDENTITY
    for i in letters:
        w = w * simple_reflection(i)
    return w


def is_reduced_word(letters: Sequence[int], w: Permutation | None = None) -> bool:
    prod = word_to_permutation(letters)
    if w is not None and prod != w:
        return False
    return length(prod) == len(letters)


def all_reduced_words(w: Permutation, limit: int = 10000) -> set[tuple[int, ...]]:
    """All reduced words of w; raises TooManyWords past `limit`."""
    words: set[tuple[int, ...]] = set()

    def extend(prefix: tuple[int, ...], rest: Permutation) -> None:
        if rest.is_identity():
            words.add(prefix)
            if len(words) > limit:
                raise TooManyWords(f"more than {limit} reduced words")
            return
        for i in sorted(left_descents(rest)):
            extend(prefix + (i,), simple_reflection(i) * rest)

    extend((), w)
    return words


def bruhat_leq(u: Permutation, v: Permutation) -> bool:
    """Subword criterion on the canonical reduced word of v."""
    if length(u) > length(v):
        return False
    reachable = {IDENTITY}
    for i in canonical_reduced_word(v):
        s = simple_reflection(i)
        grown = {x * s for x in reachable if length(x * s) > length(x)}
        reachable |= grown
        if u in reachable:
            return True
    return u in reachable


class RootPair:
    """Positive root of type A: pair i < j rendered as t_j - t_i."""

    __slots__ = ("i", "j")

    def __init__(self, i: int, j: int):
        if not (1 <= i < j):
            raise ValueError(f"root pair needs 1 <= i < j, got ({i}, {j})")
        object.__setattr__(self, "i", i)
        object.__setattr__(self, "j", j)

    def __setattr__(self, name, value):
        raise AttributeError("RootPair is immutable")

    def __eq__(self, other) -> bool:
        return isinstance(other, RootPair) and (self.i, self.j) == (other.i, other.j)

    def __hash__(self) -> int:
        return hash((self.i, self.j))

    def __repr__(self) -> str:
        return f"RootPair({self.i}, {self.j})"


def inversion_pairs(w: Permutation, m: int | None = None) -> set[RootPair]:
    """{(i, j) : i < j <= m, inverse(w)(i) > inverse(w)(j)}; |result| = length(w)."""
    if m is None:
        m = w.size()
    if m < len(w.window):
        raise ValueError(f"ambient {m} smaller than window of {w}")
    winv = inverse(w)
    return {
        RootPair(i, j)
        for i, j in itertools.combinations(range(1, m + 1), 2)
        if winv(i) > winv(j)
    }


def noninversion_pairs(w: Permutation, m: int | None = None) -> set[RootPair]:
    if m is None:
        m = w.size()
    return {
        RootPair(i, j)
        for i, j in itertools.combinations(range(1, m + 1), 2)
    } - inversion_pairs(w, m)


def longest_element(n: int) -> Permutation:
    if n < 1:
        raise ValueError("n must be >= 1")
    return Permutation(list(range(n, 0, -1)))


def tau(n: int) -> Permutation:
    """The block swap in S_2n: tau(i) = n+i and tau(n+i) = i for i in 1..n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return Permutation(list(range(n + 1, 2 * n + 1)) + list(range(1, n + 1)))


def all_permutations(n: int) -> list[Permutation]:
    """S_n sorted by (length, one-line notation) for deterministic sweeps."""
    perms = [Permutation(list(p)) for p in itertools.permutations(range(1, n + 1))]
    perms.sort(key=lambda w: (length(w), w.one_line()))
    return perms


_WORD_SYNTAX = re.compile(r"^\s*s\d+(\s+s\d+)*\s*$")


def parse_permutation(text: str) -> Permutation:
    """Accepts one-line notation '3,1,2' or word syntax 's1 s2'."""
    text = text.strip()
    if not text:
        raise NotAPermutation("empty permutation text")
    if _WORD_SYNTAX.match(text):
        letters = [int(tok[1:]) for tok in text.split()]
        if any(i < 1 for i in letters):
            raise NotAPermutation(f"bad generator index in {text!r}")
        return word_to_permutation(letters)
    try:
        values = [int(tok) for tok in text.split(",")]
    except ValueError as exc:
        raise NotAPermutation(f"cannot parse permutation {text!r}") from exc
    return Permutation(values)
