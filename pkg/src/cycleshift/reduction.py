"""Reduction from 3-dimensional matching to two-colored token shifting.

Vertex numbering is fixed: ``u = 1``, then the yellow vertices ``t[i][j]``
triplet by triplet, then the green vertices of X, Y and Z, then
``v_1 .. v_{3n-3m}``, then ``w``.  Colors: 1 = white, 2 = black.

Every shift in the witness sequences is a backward shift, which moves each
token to the next vertex in the listed order of its cycle.  A blue shift along
``(u, t1, t2, t3, x)`` therefore carries the black token on ``t3`` into ``x``;
a red shift along ``(t3, t2, t1, v_1, ..., w)`` carries the black on ``t1``
into ``v_1``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .puzzle import Instance, Puzzle, ShiftMove, apply_sequence

__all__ = [
    "WHITE",
    "BLACK",
    "TOKEN_DIRECTION",
    "ThreeDM",
    "ReductionOutput",
    "ParseError",
    "NotAMatching",
    "SequenceInvalid",
    "ExtractionFailed",
    "parse_3dm",
    "emit_3dm",
    "reduce",
    "unused_elements",
    "matching_to_sequence",
    "sequence_to_matching",
    "perfect_matchings",
    "distance_lower_bound",
    "bound_from_roles",
    "output_from_instance",
]

WHITE, BLACK = 1, 2
# backward shifts move tokens along the listed order of a cycle
TOKEN_DIRECTION = False


class ParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class NotAMatching(ValueError):
    pass


class SequenceInvalid(ValueError):
    pass


class ExtractionFailed(RuntimeError):
    pass


@dataclass(frozen=True)
class ThreeDM:
    m: int
    triplets: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "triplets", tuple(tuple(t) for t in self.triplets))
        problems = self.validate()
        if problems:
            raise ValueError("; ".join(problems))

    @property
    def n(self) -> int:
        return len(self.triplets)

    def validate(self) -> list[str]:
        out = []
        if self.m < 1:
            out.append("m must be at least 1")
        seen = set()
        for k, t in enumerate(self.triplets, 1):
            if len(t) != 3:
                out.append(f"triplet {k} does not have three entries")
                continue
            if any(not 1 <= c <= self.m for c in t):
                out.append(f"triplet {k} has an index outside 1..{self.m}")
            if t in seen:
                out.append(f"triplet {k} repeats {t}")
            seen.add(t)
        return out

    def is_perfect_matching(self, chosen) -> bool:
        chosen = list(chosen)
        if len(chosen) != self.m or len(set(chosen)) != self.m:
            return False
        if any(not 0 <= i < self.n for i in chosen):
            return False
        for axis in range(3):
            if {self.triplets[i][axis] for i in chosen} != set(range(1, self.m + 1)):
                return False
        return True


def parse_3dm(text: str) -> ThreeDM:
    lines = [(k, ln.split("#", 1)[0].strip()) for k, ln in enumerate(text.splitlines(), 1)]
    lines = [(k, ln) for k, ln in lines if ln]
    if not lines:
        raise ParseError(1, "empty input; expected 'm n'")
    k, head = lines[0]
    try:
        m, n = (int(x) for x in head.split())
    except ValueError:
        raise ParseError(k, f"expected 'm n', got {head!r}") from None
    if m < 1 or n < 0:
        raise ParseError(k, "m must be positive and n non-negative")
    body = lines[1:]
    if len(body) != n:
        raise ParseError(body[-1][0] if body else k, f"expected {n} triplet lines, found {len(body)}")
    triplets = []
    seen: dict[tuple, int] = {}
    for k, ln in body:
        parts = ln.split()
        if len(parts) != 3:
            raise ParseError(k, f"expected 'x y z', got {ln!r}")
        try:
            t = tuple(int(x) for x in parts)
        except ValueError:
            raise ParseError(k, f"non-integer entry in {ln!r}") from None
        for c in t:
            if not 1 <= c <= m:
                raise ParseError(k, f"index {c} outside 1..{m}")
        if t in seen:
            raise ParseError(k, f"duplicate triplet {t} (first on line {seen[t]})")
        seen[t] = k
        triplets.append(t)
    return ThreeDM(m, tuple(triplets))


def emit_3dm(inst: ThreeDM) -> str:
    lines = [f"{inst.m} {inst.n}"] + [f"{x} {y} {z}" for x, y, z in inst.triplets]
    return "\n".join(lines) + "\n"


@dataclass
class ReductionOutput:
    source: ThreeDM
    puzzle: Puzzle
    start: tuple[int, ...]
    target: tuple[int, ...]
    budget: int
    u: int
    w: int
    yellow: list[tuple[int, int, int]]
    green: dict[str, list[int]]
    v: list[int]
    blue: list[tuple[int, int, int]] = field(default_factory=list)
    red: list[int] = field(default_factory=list)

    def roles(self) -> dict:
        return {
            "u": self.u,
            "w": self.w,
            "yellow": [list(t) for t in self.yellow],
            "X": self.green["X"],
            "Y": self.green["Y"],
            "Z": self.green["Z"],
            "v": self.v,
            "blue": [list(b) for b in self.blue],
            "red": self.red,
            "source": {"m": self.source.m, "triplets": [list(t) for t in self.source.triplets]},
        }

    def instance(self) -> Instance:
        return Instance(self.puzzle, self.start, self.target, self.budget, self.roles())


def unused_elements(inst: ThreeDM) -> list[str]:
    """Elements of X, Y or Z that appear in no triplet, as ``"x2"``-style names."""
    out = []
    for axis, name in enumerate("xyz"):
        used = {t[axis] for t in inst.triplets}
        out += [f"{name}{k}" for k in range(1, inst.m + 1) if k not in used]
    return out


def reduce(inst: ThreeDM, allow_uncovered: bool = False) -> ReductionOutput:
    """Build the two-colored instance; distance <= 3n iff ``inst`` has a perfect matching.

    An element used by no triplet leaves its green vertex on no cycle, which a
    puzzle may not have; such inputs are rejected unless ``allow_uncovered``,
    in which case the puzzle is built anyway (its target is unreachable).
    """
    m, n = inst.m, inst.n
    if n < m:
        raise ValueError(f"{n} triplets cannot cover {m} elements; the construction needs n >= m")
    unused = unused_elements(inst)
    if unused and not allow_uncovered:
        raise ValueError(f"elements {', '.join(unused)} appear in no triplet, so no perfect matching exists")
    u = 1
    yellow = [(2 + 3 * i, 3 + 3 * i, 4 + 3 * i) for i in range(n)]
    base = 2 + 3 * n
    green = {
        "X": list(range(base, base + m)),
        "Y": list(range(base + m, base + 2 * m)),
        "Z": list(range(base + 2 * m, base + 3 * m)),
    }
    vbase = base + 3 * m
    v = list(range(vbase, vbase + 3 * n - 3 * m))
    w = vbase + len(v)
    size = w
    cycles = []
    blue = []
    red = []
    for i, (x, y, z) in enumerate(inst.triplets):
        t1, t2, t3 = yellow[i]
        ids = []
        for axis, c in zip("XYZ", (x, y, z)):
            ids.append(len(cycles))
            cycles.append((u, t1, t2, t3, green[axis][c - 1]))
        blue.append(tuple(ids))
    for i in range(n):
        t1, t2, t3 = yellow[i]
        red.append(len(cycles))
        cycles.append((t3, t2, t1, *v, w))
    puzzle = Puzzle(size, cycles)
    yellow_set = {t for tri in yellow for t in tri}
    start = tuple(BLACK if vert in yellow_set else WHITE for vert in range(1, size + 1))
    black_end = set(green["X"] + green["Y"] + green["Z"] + v)
    target = tuple(BLACK if vert in black_end else WHITE for vert in range(1, size + 1))
    return ReductionOutput(inst, puzzle, start, target, 3 * n, u, w, yellow, green, v, blue, red)


def matching_to_sequence(out: ReductionOutput, matching) -> list[ShiftMove]:
    """Three blue shifts per matched triplet, then three red shifts per unmatched one."""
    chosen = sorted(set(matching))
    if not out.source.is_perfect_matching(chosen):
        raise NotAMatching(f"{chosen} is not a perfect matching")
    seq = []
    for i in chosen:
        seq += [ShiftMove(c, TOKEN_DIRECTION) for c in out.blue[i]]
    for i in range(out.source.n):
        if i not in chosen:
            seq += [ShiftMove(out.red[i], TOKEN_DIRECTION)] * 3
    return seq


def sequence_to_matching(out: ReductionOutput, seq) -> set[int]:
    """Triplets whose yellow tokens end on green vertices; a perfect matching."""
    seq = list(seq)
    if len(seq) > out.budget:
        raise SequenceInvalid(f"sequence has {len(seq)} shifts, budget is {out.budget}")
    try:
        final = apply_sequence(out.start, out.puzzle, seq)
    except IndexError as exc:
        raise SequenceInvalid(str(exc)) from None
    if final != out.target:
        raise SequenceInvalid("sequence does not reach the target placement")
    # follow token identities: origin[v - 1] is the vertex whose token ends on v
    origin = apply_sequence(tuple(range(1, out.puzzle.n + 1)), out.puzzle, seq)
    triplet_of = {t: i for i, tri in enumerate(out.yellow) for t in tri}
    chosen = set()
    for g in out.green["X"] + out.green["Y"] + out.green["Z"]:
        src = origin[g - 1]
        if src not in triplet_of:
            raise ExtractionFailed(f"green vertex {g} holds a token not from a yellow vertex")
        chosen.add(triplet_of[src])
    if not out.source.is_perfect_matching(chosen):
        raise ExtractionFailed(f"extracted triplets {sorted(chosen)} do not form a perfect matching")
    return chosen


def perfect_matchings(inst: ThreeDM):
    """Brute force: every perfect matching as a sorted tuple of triplet indices."""
    for combo in itertools.combinations(range(inst.n), inst.m):
        if inst.is_perfect_matching(combo):
            yield combo


def _bound(yellow, u: int, w: int):
    yellow_idx = [t - 1 for tri in yellow for t in tri]
    u, w = u - 1, w - 1

    def bound(f) -> int:
        extra = (f[u] == BLACK) + (f[w] == BLACK)
        return sum(1 for k in yellow_idx if f[k] == BLACK) + extra

    return bound


def distance_lower_bound(out: ReductionOutput):
    """Admissible bound on the remaining distance to the target placement.

    Every shift carries at most one black token off the yellow vertices.  A
    black token on ``u`` (or ``w``) must eventually leave, and the shift that
    empties ``u`` (or ``w``) of black carries no black off a yellow vertex, so
    each adds one more shift.  No cycle contains both ``u`` and ``w``.
    """
    return _bound(out.yellow, out.u, out.w)


def bound_from_roles(roles: dict):
    """The same bound for a serialized reduction instance."""
    return _bound(roles["yellow"], roles["u"], roles["w"])


def output_from_instance(inst: Instance) -> ReductionOutput:
    """Rebuild a reduction from its serialized instance (the roles carry the source)."""
    roles = inst.roles or {}
    if "source" not in roles:
        raise ValueError("instance has no reduction roles")
    src = roles["source"]
    out = reduce(ThreeDM(int(src["m"]), tuple(tuple(t) for t in src["triplets"])))
    if out.puzzle != inst.puzzle or out.start != tuple(inst.start) or out.target != tuple(inst.target):
        raise ValueError("instance does not match the reduction of its recorded source")
    return out
