"""Permutations of {1..n} with right-to-left composition.

A permutation is stored in one-line form: ``image[v - 1] == p(v)``.  The
product ``p * q`` is the function ``v -> p(q(v))``, i.e. the right factor is
applied first.  Starting from the identity placement and shifting along
``(1 2 3)`` and then ``(3 4 5)`` therefore yields ``(1 2 3) * (3 4 5)``, which
is ``[2 3 4 5 1]``.
"""

from __future__ import annotations

import re
from enum import Enum
from typing import Iterable, Sequence

__all__ = [
    "Perm",
    "Parity",
    "compose",
    "inverse",
    "parity",
    "cycle_decomposition",
    "from_cycles",
    "conjugate",
    "parse_perm",
    "format_cycles",
    "format_one_line",
]


class Parity(Enum):
    EVEN = "even"
    ODD = "odd"

    def __xor__(self, other: "Parity") -> "Parity":
        return Parity.EVEN if self is other else Parity.ODD


class Perm:
    """Immutable permutation of {1..n} in one-line form."""

    __slots__ = ("image", "_hash")

    def __init__(self, image: Iterable[int], *, check: bool = True):
        image = tuple(image)
        if check:
            n = len(image)
            if n < 1:
                raise ValueError("permutation degree must be positive")
            if sorted(image) != list(range(1, n + 1)):
                raise ValueError(f"not a permutation of 1..{n}: {list(image)}")
        self.image = image
        self._hash = None

    @classmethod
    def identity(cls, n: int) -> "Perm":
        return cls(range(1, n + 1), check=False)

    @classmethod
    def cycle(cls, n: int, *points: int) -> "Perm":
        """The single cycle ``(points[0] points[1] ...)`` of degree ``n``."""
        return from_cycles(n, [points]) if len(points) > 1 else cls.identity(n)

    @property
    def n(self) -> int:
        return len(self.image)

    def __call__(self, v: int) -> int:
        return self.image[v - 1]

    def __mul__(self, other: "Perm") -> "Perm":
        return compose(self, other)

    def __pow__(self, k: int) -> "Perm":
        base = self if k >= 0 else inverse(self)
        result = Perm.identity(self.n)
        for _ in range(abs(k)):
            result = compose(result, base)
        return result

    def __invert__(self) -> "Perm":
        return inverse(self)

    def __eq__(self, other) -> bool:
        return isinstance(other, Perm) and self.image == other.image

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.image)
        return self._hash

    def __repr__(self) -> str:
        return f"Perm({format_cycles(self)}, n={self.n})"

    def __str__(self) -> str:
        return format_cycles(self)

    def is_identity(self) -> bool:
        return all(x == i for i, x in enumerate(self.image, 1))

    def inverse(self) -> "Perm":
        return inverse(self)

    def parity(self) -> Parity:
        return parity(self)

    def is_even(self) -> bool:
        return parity(self) is Parity.EVEN

    def cycles(self) -> list[tuple[int, ...]]:
        return cycle_decomposition(self)

    def support(self) -> set[int]:
        return {i for i, x in enumerate(self.image, 1) if x != i}

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted(len(c) for c in cycle_decomposition(self)))


def _check_degree(p: Perm, q: Perm) -> None:
    if p.n != q.n:
        raise ValueError(f"degree mismatch: {p.n} != {q.n}")


def compose(p: Perm, q: Perm) -> Perm:
    """Return ``p * q``: apply ``q`` first, then ``p``."""
    _check_degree(p, q)
    pi = p.image
    return Perm([pi[x - 1] for x in q.image], check=False)


def inverse(p: Perm) -> Perm:
    out = [0] * p.n
    for i, x in enumerate(p.image, 1):
        out[x - 1] = i
    return Perm(out, check=False)


def parity(p: Perm) -> Parity:
    transpositions = sum(len(c) - 1 for c in cycle_decomposition(p))
    return Parity.EVEN if transpositions % 2 == 0 else Parity.ODD


def cycle_decomposition(p: Perm) -> list[tuple[int, ...]]:
    """Disjoint cycles of ``p``, each starting at its minimum, sorted by minimum."""
    seen = set()
    out = []
    for start in range(1, p.n + 1):
        if start in seen or p(start) == start:
            continue
        cyc = [start]
        seen.add(start)
        x = p(start)
        while x != start:
            cyc.append(x)
            seen.add(x)
            x = p(x)
        out.append(tuple(cyc))
    return out


def from_cycles(n: int, cycles: Iterable[Sequence[int]]) -> Perm:
    """Build a permutation from pairwise disjoint cycles."""
    image = list(range(1, n + 1))
    used: set[int] = set()
    for cyc in cycles:
        for v in cyc:
            if not 1 <= v <= n:
                raise ValueError(f"label {v} out of range 1..{n}")
            if v in used:
                raise ValueError(f"repeated label {v}")
            used.add(v)
        for i, v in enumerate(cyc):
            image[v - 1] = cyc[(i + 1) % len(cyc)]
    return Perm(image, check=False)


def conjugate(g: Perm, h: Perm) -> Perm:
    """The conjugate of ``g`` by ``h``, ``h^-1 g h``."""
    _check_degree(g, h)
    return compose(compose(inverse(h), g), h)


def format_cycles(p: Perm) -> str:
    cycles = cycle_decomposition(p)
    if not cycles:
        return "()"
    return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)


def format_one_line(p: Perm) -> str:
    return "[" + " ".join(map(str, p.image)) + "]"


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_perm(text: str, n: int | None = None) -> Perm:
    """Parse one-line ``[2 3 4 5 1]`` or cycle ``(1 2 3)(4 5)`` notation.

    Cycle notation needs ``n`` unless the largest label is the degree.
    Cycles in a product need not be disjoint; they are composed right to left.
    """
    s = text.strip()
    if s.startswith("["):
        if not s.endswith("]"):
            raise ValueError(f"unterminated one-line permutation: {text!r}")
        body = s[1:-1].replace(",", " ").split()
        p = Perm(int(x) for x in body)
        if n is not None and p.n != n:
            raise ValueError(f"expected degree {n}, got {p.n}")
        return p
    if not s or _CYCLE_RE.sub("", s).strip():
        raise ValueError(f"cannot parse permutation: {text!r}")
    cycles = [
        [int(x) for x in m.group(1).replace(",", " ").split()]
        for m in _CYCLE_RE.finditer(s)
    ]
    labels = [v for c in cycles for v in c]
    degree = n if n is not None else max(labels, default=1)
    result = Perm.identity(degree)
    for cyc in cycles:
        if len(set(cyc)) != len(cyc):
            raise ValueError(f"repeated label in cycle {cyc}")
        if cyc:
            result = compose(result, from_cycles(degree, [cyc]))
    return result
