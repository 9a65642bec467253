"""Generator words and the three folklore sorting procedures.

A *word* is a list of ``(letter, exponent)`` pairs with exponent ``+1`` or
``-1``; it evaluates to the product of its letters left to right (so the
right-most letter acts first on vertices, and a shift sequence spelling the
word, applied to the identity placement, produces the evaluated permutation).

Symbolic words returned by the ``word_*`` functions use small keys (``"rho"``,
``"t"``, ``"s"`` or window indices) and live in a canonical labelling; the
solver binds the keys to :class:`Letter` objects.  Letters are either puzzle
shifts or derived from a word over other letters; expanding a derived letter
recursively yields puzzle moves.

Length constants (letters of the symbolic alphabet, checked by the test suite):

* ``word_sn_bubble``           <= K_BUBBLE * n**2
* ``word_an_ncycle_3cycle``    <= K_NCYCLE * n**2
* ``word_an_adjacent_3cycles`` <= K_ADJ * n**2
"""

from __future__ import annotations

from typing import Hashable, Iterable, Mapping, Sequence

from .perm import Perm, compose, from_cycles, inverse
from .puzzle import Puzzle, ShiftMove

__all__ = [
    "K_BUBBLE",
    "K_NCYCLE",
    "K_ADJ",
    "OddTarget",
    "Letter",
    "Word",
    "evaluate",
    "evaluate_symbolic",
    "bind",
    "expand",
    "expansion_map",
    "relabel",
    "window_word_adjacent_transpositions",
    "word_sn_bubble",
    "word_an_ncycle_3cycle",
    "word_an_adjacent_3cycles",
]

K_BUBBLE = 2
K_NCYCLE = 2
K_ADJ = 1


class OddTarget(ValueError):
    pass


class Letter:
    """A generator: a puzzle shift, or a word over other letters."""

    __slots__ = ("name", "perm", "body", "move", "_inv_perm", "_moves", "_power")

    def __init__(self, name: str, perm: Perm, body=None, move: ShiftMove | None = None):
        self.name = name
        self.perm = perm
        self.body: tuple[tuple["Letter", int], ...] | None = tuple(body) if body is not None else None
        self.move = move
        self._inv_perm = None
        self._moves: dict[int, tuple[ShiftMove, ...]] = {}
        self._power: dict[int, "Letter"] = {}

    def __repr__(self) -> str:
        return f"Letter({self.name}: {self.perm})"

    @classmethod
    def shift(cls, puzzle: Puzzle, index: int, name: str | None = None) -> "Letter":
        move = ShiftMove(index, True)
        return cls(name or f"C{index}", puzzle.shift_permutation(move), move=move)

    @classmethod
    def derived(cls, name: str, body: Sequence[tuple["Letter", int]]) -> "Letter":
        body = tuple(body)
        return cls(name, evaluate(body, _degree(body)), body=body)

    @classmethod
    def abstract(cls, name: str, perm: Perm) -> "Letter":
        """A letter with no expansion (for evaluating words on their own)."""
        return cls(name, perm)

    def perm_power(self, e: int) -> Perm:
        if e == 1:
            return self.perm
        if self._inv_perm is None:
            self._inv_perm = inverse(self.perm)
        return self._inv_perm

    def power(self, e: int) -> "Letter":
        """``self`` or a derived letter for its inverse."""
        if e == 1:
            return self
        if -1 not in self._power:
            self._power[-1] = Letter(f"{self.name}^-1", self.perm_power(-1), body=((self, -1),))
        return self._power[-1]

    def moves(self, e: int = 1) -> tuple[ShiftMove, ...]:
        cached = self._moves.get(e)
        if cached is not None:
            return cached
        if self.move is not None:
            out = (self.move if e == 1 else self.move.inverse(),)
        elif self.body is not None:
            if e == 1:
                out = tuple(m for letter, x in self.body for m in letter.moves(x))
            else:
                out = tuple(m.inverse() for m in reversed(self.moves(1)))
        else:
            raise ValueError(f"letter {self.name} has no expansion")
        self._moves[e] = out
        return out

    def cost(self) -> int:
        return len(self.moves(1))


Word = list[tuple[Letter, int]]


def _degree(word) -> int:
    if not word:
        raise ValueError("cannot infer the degree of an empty word")
    return word[0][0].perm.n


def evaluate(word: Iterable[tuple[Letter, int]], n: int) -> Perm:
    result = Perm.identity(n)
    for letter, e in word:
        result = compose(result, letter.perm_power(e))
    return result


def evaluate_symbolic(word: Iterable[tuple[Hashable, int]], alphabet: Mapping[Hashable, Perm], n: int) -> Perm:
    result = Perm.identity(n)
    inverses: dict = {}
    for key, e in word:
        p = alphabet[key]
        if e == -1:
            if key not in inverses:
                inverses[key] = inverse(p)
            p = inverses[key]
        result = compose(result, p)
    return result


def bind(word: Iterable[tuple[Hashable, int]], letters: Mapping[Hashable, Letter]) -> Word:
    return [(letters[k], e) for k, e in word]


def expand(word: Iterable[tuple[Letter, int]]) -> list[ShiftMove]:
    out: list[ShiftMove] = []
    for letter, e in word:
        out.extend(letter.moves(e))
    return out


def expansion_map(word: Iterable[tuple[Letter, int]]) -> dict[str, list[tuple[str, int]]]:
    """Every derived letter reachable from ``word``, mapped to its body."""
    out: dict[str, list[tuple[str, int]]] = {}
    stack = [letter for letter, _ in word]
    seen: set[int] = set()
    while stack:
        letter = stack.pop()
        if id(letter) in seen or letter.body is None:
            continue
        seen.add(id(letter))
        out[letter.name] = [(sub.name, e) for sub, e in letter.body]
        stack.extend(sub for sub, _ in letter.body)
    return out


def relabel(target: Perm, labels: Sequence[int]) -> Perm:
    """Restrict ``target`` to ``labels`` and rename ``labels[i]`` to ``i + 1``.

    Raises ValueError if ``target`` moves a point outside ``labels``.
    """
    index = {v: i for i, v in enumerate(labels, 1)}
    if len(index) != len(labels):
        raise ValueError("labels must be distinct")
    for v in range(1, target.n + 1):
        if v not in index and target(v) != v:
            raise ValueError(f"target moves {v}, outside the frame")
    return Perm([index[target(v)] for v in labels], check=False)


def _invert_record(record: list[tuple[Hashable, int]]) -> list[tuple[Hashable, int]]:
    # sorting applied f <- f o g_1 o ... o g_k and reached the identity,
    # so target = g_k^-1 ... g_1^-1
    return [(k, -e) for k, e in reversed(record)]


def window_word_adjacent_transpositions(target: Perm) -> list[tuple[int, int]]:
    """Word over windows ``j`` standing for ``(j j+1)``; insertion sort."""
    f = list(target.image)
    record = []
    for v in range(1, target.n):
        p = f.index(v) + 1
        while p > v:
            f[p - 2], f[p - 1] = f[p - 1], f[p - 2]
            record.append((p - 1, 1))
            p -= 1
    return [(j, 1) for j, _ in reversed(record)]


def word_an_adjacent_3cycles(target: Perm) -> list[tuple[int, int]]:
    """Word over windows ``j`` standing for the 3-cycle ``(j j+1 j+2)``.

    Each token is carried left two places at a time; a final single step uses
    the window starting at its destination.  The last two positions are then
    correct by parity.
    """
    n = target.n
    if not target.is_even():
        raise OddTarget("target is an odd permutation")
    if target.is_identity():
        return []
    if n < 3:
        raise ValueError("need at least 3 points")
    f = list(target.image)
    record: list[tuple[int, int]] = []

    def apply(j: int, e: int) -> None:
        a, b, c = f[j - 1], f[j], f[j + 1]
        if e == 1:  # f o (j j+1 j+2)
            f[j - 1], f[j], f[j + 1] = b, c, a
        else:
            f[j - 1], f[j], f[j + 1] = c, a, b
        record.append((j, e))

    for v in range(1, n - 1):
        p = f.index(v) + 1
        while p - v >= 2:
            apply(p - 2, -1)
            p -= 2
        if p - v == 1:
            apply(v, 1)
    assert f == list(range(1, n + 1)), "odd residue after 3-cycle sort"
    return _invert_record(record)


def _rho_power(k: int, n: int) -> list[tuple[str, int]]:
    k %= n
    if k > n // 2:
        k -= n
    return [("rho", 1 if k > 0 else -1)] * abs(k)


def _conjugate_windows(windows: list[tuple[int, int]], n: int, key: str) -> list[tuple[str, int]]:
    """Rewrite window letters ``w_j = rho^(j-1) x rho^-(j-1)`` over ``{rho, x}``."""
    out: list[tuple[str, int]] = []
    offset = 0
    for j, e in windows:
        out.extend(_rho_power(j - 1 - offset, n))
        out.append((key, e))
        offset = j - 1
    out.extend(_rho_power(-offset, n))
    return out


def _rho_shortcut(target: Perm) -> list[tuple[str, int]] | None:
    n = target.n
    k = target(1) - 1
    if all(target(v) == (v - 1 + k) % n + 1 for v in range(1, n + 1)):
        return _rho_power(k, n)
    return None


def word_sn_bubble(target: Perm) -> list[tuple[str, int]]:
    """Word over ``rho = (1 2 ... n)`` and ``t = (1 2)`` evaluating to ``target``."""
    n = target.n
    if n < 2:
        raise ValueError("need at least 2 points")
    short = _rho_shortcut(target)
    if short is not None:
        return short
    if target == from_cycles(n, [(1, 2)]):
        return [("t", 1)]
    return _conjugate_windows(window_word_adjacent_transpositions(target), n, "t")


def word_an_ncycle_3cycle(target: Perm) -> list[tuple[str, int]]:
    """Word over ``rho = (1 2 ... n)`` and ``s = (1 2 3)`` for an even ``target``."""
    n = target.n
    if not target.is_even():
        raise OddTarget("target is an odd permutation")
    if n < 3:
        if target.is_identity():
            return []
        raise ValueError("need at least 3 points")
    short = _rho_shortcut(target)
    if short is not None:
        return short
    s = from_cycles(n, [(1, 2, 3)])
    if target == s:
        return [("s", 1)]
    if target == inverse(s):
        return [("s", -1)]
    return _conjugate_windows(word_an_adjacent_3cycles(target), n, "s")
