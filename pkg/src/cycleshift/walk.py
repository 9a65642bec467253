"""Covering walks over relevant cycles and 3-cycle generation along them.

:func:`build_walk` produces a vertex sequence ``W`` over the relevant cycles of
a generalized puzzle: it loops fully around each cycle before handing over to
a neighbouring cycle at a shared vertex, and skips back over a leaf 2-cycle
instead of returning through it.  :class:`WalkLemma` generates arbitrary
3-cycles from the window 3-cycles ``(w[i-1] w[i] w[i+1])`` by induction on
first-occurrence order, and arbitrary even permutations from those.
"""

from __future__ import annotations

from collections import defaultdict, deque
from itertools import combinations
from typing import Sequence

from .classify import InterconnectionGraph, interconnection_graph
from .perm import Perm, from_cycles, inverse
from .puzzle import Puzzle
from .words import OddTarget, relabel, word_an_adjacent_3cycles

__all__ = ["MalformedWalk", "build_walk", "walk_violations", "WalkLemma"]


class MalformedWalk(ValueError):
    pass


class _Windows:
    """Local admissibility of consecutive triples for a fixed relevant set."""

    def __init__(self, puzzle: Puzzle, relevant: Sequence[int], graph: InterconnectionGraph):
        rel = set(relevant)
        self.member: dict[int, set[int]] = defaultdict(set)
        for i in rel:
            for v in puzzle.cycles[i]:
                self.member[v].add(i)
        linked = {(e.i, e.j) for e in graph.edges if e.i in rel and e.j in rel}
        self.linked = linked | {(j, i) for i, j in linked}

    def same(self, x: int, y: int) -> bool:
        return bool(self.member[x] & self.member[y])

    def near(self, x: int, y: int) -> bool:
        if self.same(x, y):
            return True
        return any((c, d) in self.linked for c in self.member[x] for d in self.member[y])

    def in_pair(self, a: int, b: int, c: int) -> bool:
        return any(all(i in self.member[v] or j in self.member[v] for v in (a, b, c)) for i, j in self.linked)

    def problem(self, a: int, b: int, c: int) -> str | None:
        if len({a, b, c}) < 3:
            return "repeated vertex"
        if not (self.same(a, b) or self.same(b, c)):
            return "no consecutive pair in a relevant cycle"
        if not self.near(a, c):
            return "ends not in the same or interconnected cycles"
        if not self.in_pair(a, b, c):
            return "not inside one interconnected pair of relevant cycles"
        return None


def walk_violations(
    puzzle: Puzzle, relevant: Sequence[int], walk: Sequence[int], graph: InterconnectionGraph | None = None
) -> list[str]:
    """Coverage and local conditions on every window; empty when the walk is admissible."""
    graph = graph or interconnection_graph(puzzle)
    windows = _Windows(puzzle, relevant, graph)
    out = []
    missing = set(range(1, puzzle.n + 1)) - set(walk)
    if missing:
        out.append(f"walk misses vertices {sorted(missing)}")
    for i in range(1, len(walk) - 1):
        triple = walk[i - 1], walk[i], walk[i + 1]
        why = windows.problem(*triple)
        if why:
            out.append(f"window {i + 1} {triple}: {why}")
    return out


class _NoWalk(Exception):
    pass


def _rotate(cyc: Sequence[int], start: int) -> list[int]:
    k = list(cyc).index(start)
    return list(cyc[k:]) + list(cyc[:k])


def _spanning_tree(puzzle: Puzzle, graph: InterconnectionGraph, relevant: list[int], root: int):
    rel = set(relevant)
    parent = {root: None}
    attach: dict[int, int] = {}
    order = [root]
    queue = deque([root])
    while queue:
        c = queue.popleft()
        for d in graph.neighbors(c):
            if d in rel and d not in parent:
                parent[d] = c
                shared = [v for v in puzzle.cycles[c] if v in set(puzzle.cycles[d])]
                entry = attach.get(c)
                # hand over away from the vertex we entered the parent by
                preferred = [v for v in shared if v != entry] or shared
                attach[d] = preferred[0]
                order.append(d)
                queue.append(d)
    if len(order) != len(rel):
        return None
    children = defaultdict(list)
    for d in order[1:]:
        children[parent[d]].append(d)
    # drop leaves that bring no new vertex
    changed = True
    while changed:
        changed = False
        for d in list(order[1:]):
            if children[d]:
                continue
            others = {v for c in order if c != d for v in puzzle.cycles[c]}
            if set(puzzle.cycles[d]) <= others:
                order.remove(d)
                children[parent[d]].remove(d)
                changed = True
    return children, attach


def _loop_walk(puzzle, graph, relevant, root, flip=frozenset()) -> list[int] | None:
    """Whole loops around each cycle of a spanning tree, handing over at shared vertices."""
    tree = _spanning_tree(puzzle, graph, relevant, root)
    if tree is None:
        return None
    children, attach = tree
    cycles = puzzle.cycles

    def child_seq(d: int, s: int, before, after) -> list[int]:
        """Vertices visited after arriving at ``s``, ending back at ``s`` unless skipped."""
        cyc = cycles[d]
        if len(cyc) == 2:
            u = cyc[1] if cyc[0] == s else cyc[0]
            kids = children[d]
            if not kids:
                return [u]  # leaf 2-cycle: continue from u directly
            seq = [u]
            prev = s
            for k in kids:
                if attach[k] != u:
                    raise _NoWalk
                seq += child_seq(k, u, prev, s)
                prev = seq[-2]
            return seq + [s]
        return loop_seq(d, s, before, after, is_root=False)

    def loop_seq(c: int, entry: int, before, after, is_root: bool) -> list[int]:
        cyc = _rotate(cycles[c], entry)
        options = [cyc, [cyc[0]] + cyc[1:][::-1]]
        if c in flip:
            options.reverse()
        x = options[0]
        for opt in options:
            if (before is None or opt[1] != before) and (after is None or opt[-1] != after):
                x = opt
                break
        L = len(x)
        at = defaultdict(list)
        for d in children[c]:
            at[attach[d]].append(d)
        loops = max([1] + [len(at[v]) for v in x[1:]])
        if at[x[0]]:
            loops = max(loops, len(at[x[0]]) + (0 if is_root else 1))
        seq: list[int] = []
        for r in range(loops):
            for j in range(1, L):
                seq.append(x[j])
                if r < len(at[x[j]]):
                    seq += child_seq(at[x[j]][r], x[j], x[j - 1], x[(j + 1) % L])
            seq.append(x[0])
            if r < len(at[x[0]]):
                nxt = after if r == loops - 1 else x[1]
                seq += child_seq(at[x[0]][r], x[0], x[L - 1], nxt)
        return seq

    try:
        entry = cycles[root][0]
        if len(cycles[root]) == 2:
            u = cycles[root][1]
            seq = [entry, u]
            prev = entry
            for k in children[root]:
                if attach[k] != u:
                    return None
                seq += child_seq(k, u, prev, None)
                prev = seq[-2]
            return seq
        return [entry] + loop_seq(root, entry, None, None, is_root=True)
    except _NoWalk:
        return None


def _pair_graph_walk(puzzle: Puzzle, relevant: Sequence[int], graph: InterconnectionGraph) -> list[int] | None:
    """Covering walk found by search over ordered vertex pairs.

    A state is the last two walk entries; a transition appends one vertex when
    the resulting window is admissible.  From a start state the walk repeatedly
    extends along a shortest path to a state ending at an unvisited vertex.
    """
    windows = _Windows(puzzle, relevant, graph)
    n = puzzle.n
    verts = range(1, n + 1)
    succ: dict[tuple[int, int], list[int]] = {}

    def nexts(state):
        hit = succ.get(state)
        if hit is None:
            a, b = state
            hit = succ[state] = [c for c in verts if windows.problem(a, b, c) is None]
        return hit

    starts = []
    for i in sorted(relevant):
        cyc = puzzle.cycles[i]
        for k in range(len(cyc)):
            starts.append((cyc[k], cyc[(k + 1) % len(cyc)]))
    for start in starts:
        walk = list(start)
        seen = set(start)
        state = start
        while len(seen) < n:
            parent = {state: None}
            queue = deque([state])
            goal = None
            while queue and goal is None:
                st = queue.popleft()
                for c in nexts(st):
                    nst = (st[1], c)
                    if nst in parent:
                        continue
                    parent[nst] = st
                    if c not in seen:
                        goal = nst
                        break
                    queue.append(nst)
            if goal is None:
                break
            path = []
            st = goal
            while parent[st] is not None:
                path.append(st[1])
                st = parent[st]
            path.reverse()
            walk += path
            seen.update(path)
            state = goal
        if len(seen) == n:
            return walk
    return None


def build_walk(puzzle: Puzzle, relevant: Sequence[int]) -> list[int]:
    relevant = sorted(relevant)
    if len(relevant) < 2:
        raise MalformedWalk("a covering walk needs at least two relevant cycles")
    graph = interconnection_graph(puzzle)
    roots = [i for i in relevant if len(puzzle.cycles[i]) >= 3]
    roots += [i for i in relevant if len(puzzle.cycles[i]) == 2]
    # orientation choices: none flipped, then single and paired flips, then all
    flips = [frozenset()]
    flips += [frozenset(c) for k in (1, 2) for c in combinations(relevant, k)]
    flips.append(frozenset(relevant))
    for root in roots:
        for flip in flips:
            walk = _loop_walk(puzzle, graph, relevant, root, flip)
            if walk is not None and not walk_violations(puzzle, relevant, walk, graph):
                return walk
    walk = _pair_graph_walk(puzzle, relevant, graph)
    if walk is not None and not walk_violations(puzzle, relevant, walk, graph):
        return walk
    raise MalformedWalk("no admissible covering walk over the relevant cycles")


SymWord = list[tuple[int, int]]


def _invert(word: SymWord) -> SymWord:
    return [(k, -e) for k, e in reversed(word)]


class WalkLemma:
    """Generate even permutations from the window 3-cycles of a walk.

    Letters are keyed by the 1-based middle index ``i`` of the window
    ``(w[i-1] w[i] w[i+1])``.  Any 3-cycle costs at most ``3 * n`` letters.
    """

    def __init__(self, walk: Sequence[int], n: int | None = None):
        walk = list(walk)
        n = n if n is not None else max(walk)
        if set(walk) != set(range(1, n + 1)):
            raise MalformedWalk("walk must visit every vertex of 1..n")
        for i in range(1, len(walk) - 1):
            if len({walk[i - 1], walk[i], walk[i + 1]}) < 3:
                raise MalformedWalk(f"window at {i + 1} repeats a vertex")
        if n < 3:
            raise MalformedWalk("need at least 3 vertices")
        self.walk = walk
        self.n = n
        self.mu: dict[int, int] = {}
        for i, v in enumerate(walk, 1):
            self.mu.setdefault(v, i)
        self.order = sorted(self.mu, key=self.mu.get)
        self.rank = {v: r for r, v in enumerate(self.order, 1)}
        self.letters = {
            i: from_cycles(n, [(walk[i - 2], walk[i - 1], walk[i])]) for i in range(2, len(walk))
        }
        self._memo: dict[Perm, SymWord] = {}

    def window(self, i: int) -> tuple[int, int, int]:
        return self.walk[i - 2], self.walk[i - 1], self.walk[i]

    def cycle_word(self, sigma: Perm) -> SymWord:
        """Word for a single 3-cycle ``sigma``."""
        hit = self._memo.get(sigma)
        if hit is not None:
            return hit
        support = sigma.support()
        if len(support) != 3:
            raise ValueError(f"{sigma} is not a 3-cycle")
        z = max(support, key=self.rank.get)
        key = self.mu[z] - 1 if self.rank[z] > 3 else 2
        sigma2 = self.letters[key]
        if sigma == sigma2:
            word = [(key, 1)]
        elif sigma == inverse(sigma2):
            word = [(key, -1)]
        else:
            best = None
            for e in (1, -1):
                g = sigma2 if e == 1 else inverse(sigma2)
                g_inv = inverse(g)
                # sigma = g^-1 sigma3 g
                conj = g * sigma * g_inv
                if conj(z) == z:
                    cand = [(key, -e)] + self.cycle_word(conj) + [(key, e)]
                    if best is None or len(cand) < len(best):
                        best = cand
                # sigma = sigma3 g
                head = sigma * g_inv
                if head(z) == z and len(head.support()) == 3:
                    cand = self.cycle_word(head) + [(key, e)]
                    if best is None or len(cand) < len(best):
                        best = cand
            if best is None:
                raise AssertionError(f"no reduction for {sigma} via window {key}")
            word = best
        self._memo[sigma] = word
        return word

    def word(self, target: Perm) -> SymWord:
        if target.n != self.n:
            raise ValueError("degree mismatch")
        if not target.is_even():
            raise OddTarget("target is an odd permutation")
        out: SymWord = []
        order = self.order
        for j, e in word_an_adjacent_3cycles(relabel(target, order)):
            w = self.cycle_word(from_cycles(self.n, [(order[j - 1], order[j], order[j + 1])]))
            out.extend(w if e == 1 else _invert(w))
        return out


def word_walk_3cycles(walk: Sequence[int], target: Perm) -> SymWord:
    return WalkLemma(walk, target.n).word(target)
