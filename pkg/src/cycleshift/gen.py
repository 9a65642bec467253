"""Seeded corpus generation.

Randomness comes from SplitMix64 (Steele, Lea and Flood), a tiny portable
generator with fixed constants, so a seed yields the same corpus in any
implementation that follows the same draw order.  Bounded draws use rejection
sampling on the top bits, shuffles are Fisher-Yates from the last index down.
"""

from __future__ import annotations

from dataclasses import dataclass

from .classify import GroupKind, classify, detect_family
from .perm import Perm
from .puzzle import Instance, Puzzle, apply_sequence, identity_placement

__all__ = ["SplitMix64", "GenConfig", "pair_puzzle", "generalized_puzzle", "random_target", "generate"]

MASK64 = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, k: int) -> int:
        """Uniform integer in ``[0, k)``."""
        if k <= 0:
            raise ValueError("bound must be positive")
        bits = max(1, (k - 1).bit_length())
        while True:
            x = self.next_u64() >> (64 - bits)
            if x < k:
                return x

    def between(self, lo: int, hi: int) -> int:
        """Uniform integer in ``[lo, hi]``."""
        return lo + self.below(hi - lo + 1)

    def shuffle(self, items: list) -> list:
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]
        return items

    def coin(self) -> bool:
        return self.below(2) == 1


@dataclass
class GenConfig:
    family: str = "generalized"
    a: int = 3
    b: int = 4
    n: int = 9
    extra_cycles: int = 0
    colors: int | None = None
    count: int = 1
    seed: int = 0
    relabel: bool = True


def _relabel(puzzle: Puzzle, rng: SplitMix64) -> Puzzle:
    perm = rng.shuffle(list(range(1, puzzle.n + 1)))
    cycles = []
    for cyc in puzzle.cycles:
        cyc = [perm[v - 1] for v in cyc]
        if rng.coin():
            cyc.reverse()
        cycles.append(cyc)
    rng.shuffle(cycles)
    return Puzzle(puzzle.n, cycles)


def pair_puzzle(kind: str, a: int, b: int, rng: SplitMix64 | None = None) -> Puzzle:
    """A 1- or 2-connected (a, b) puzzle, optionally with shuffled labels."""
    if kind in ("1connected", "1"):
        p = Puzzle(a + b - 1, [range(1, a + 1), range(a, a + b)])
    elif kind in ("2connected", "2"):
        p = Puzzle(a + b - 2, [range(1, a + 1), range(a - 1, a + b - 1)])
    else:
        raise ValueError(f"unknown pair family {kind!r}")
    p.check()
    return _relabel(p, rng) if rng is not None else p


def generalized_puzzle(n: int, rng: SplitMix64, extra_cycles: int = 0, max_len: int = 6) -> Puzzle:
    """A tree of properly interconnected cycles covering ``1..n``, plus optional extra cycles."""
    if n < 4:
        raise ValueError("need at least 4 vertices")
    while True:
        first = min(n - 1, rng.between(2, max_len))
        cycles = [list(range(1, first + 1))]
        used = first
        while used < n:
            host = cycles[rng.below(len(cycles))]
            fresh = min(n - used, rng.between(1, max_len - 1))
            i = rng.below(len(host))
            new = list(range(used + 1, used + fresh + 1))
            if rng.coin():
                # two consecutive host vertices, kept consecutive in the new cycle
                cyc = [host[i], host[(i + 1) % len(host)]] + new
            else:
                cyc = [host[i]] + new
            cycles.append(cyc)
            used += fresh
        for _ in range(extra_cycles):
            k = rng.between(2, min(max_len, n))
            pts = rng.shuffle(list(range(1, n + 1)))[:k]
            cycles.append(pts)
        p = Puzzle(n, cycles)
        if len(cycles) >= 3 or n <= 6:
            fam = detect_family(p)
            if fam.kind.value == "generalized":
                return _relabel(p, rng)


def random_target(puzzle: Puzzle, rng: SplitMix64, colors: int | None = None) -> tuple[int, ...]:
    """A random placement reachable from the identity (or its coloring)."""
    n = puzzle.n
    group = classify(puzzle)
    if group.kind in (GroupKind.SYMMETRIC, GroupKind.ALTERNATING):
        image = rng.shuffle(list(range(1, n + 1)))
        if group.kind is GroupKind.ALTERNATING and not Perm(image).is_even():
            image[0], image[1] = image[1], image[0]
        target = tuple(image)
    else:
        moves = puzzle.moves()
        seq = [moves[rng.below(len(moves))] for _ in range(4 * n * n)]
        target = apply_sequence(identity_placement(n), puzzle, seq)
    if colors is not None:
        target = tuple(_color(v, n, colors) for v in target)
    return target


def _color(v: int, n: int, colors: int) -> int:
    # color classes are contiguous label blocks of near-equal size
    return (v - 1) * colors // n + 1


def generate(cfg: GenConfig) -> list[Instance]:
    rng = SplitMix64(cfg.seed)
    out = []
    for _ in range(cfg.count):
        if cfg.family in ("1connected", "2connected"):
            puzzle = pair_puzzle(cfg.family, cfg.a, cfg.b, rng if cfg.relabel else None)
        elif cfg.family == "generalized":
            puzzle = generalized_puzzle(cfg.n, rng, cfg.extra_cycles)
        else:
            raise ValueError(f"unknown family {cfg.family!r}")
        start = identity_placement(puzzle.n)
        if cfg.colors is not None:
            start = tuple(_color(v, puzzle.n, cfg.colors) for v in start)
        target = random_target(puzzle, rng, cfg.colors)
        out.append(Instance(puzzle, start, target, None))
    return out
