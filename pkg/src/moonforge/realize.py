"""Construct tournaments realizing feasible integer score sequences.

The reference path builds a four-layer flow network (source, one node per
unordered vertex pair, one node per vertex, sink) and computes an integral
maximum flow with the level-graph / blocking-flow method. Feasibility
guarantees the flow saturates every source arc, and the endpoint that
receives a pair's unit wins that pair. A deterministic greedy warm start
seeds the flow; the level-graph phases then drive it to provable
optimality, so the saturation check is a genuine max-flow certificate.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Optional

from .core import (
    Infeasible,
    InternalError,
    ScoreInput,
    Tournament,
    as_scores,
    binom2,
    integer_scores,
    validate_scores,
)
from .feasibility import check_fast

BACKTRACK_CAP = 8


class FlowNetwork:
    """Orientation network for an integer score sequence.

    Nodes: 0 = source, 1..P = pair nodes in lexicographic pair order,
    P+1..P+n = vertices, P+n+1 = sink. Source->pair and pair->endpoint
    arcs have capacity 1; vertex->sink arcs carry the target scores.
    Arcs are stored as flat to/cap arrays with reverse arcs at id^1, and
    adjacency lists are built in insertion order so augmentation is
    deterministic.
    """

    def __init__(self, targets: Iterable[int]):
        self.targets = tuple(int(t) for t in targets)
        n = len(self.targets)
        self.n = n
        self.pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        p = len(self.pairs)
        self.source = 0
        self.sink = 1 + p + n
        self.num_nodes = self.sink + 1
        self.to: list[int] = []
        self.cap: list[int] = []
        self.adj: list[list[int]] = [[] for _ in range(self.num_nodes)]
        for k, (u, v) in enumerate(self.pairs):
            self._add_arc(self.source, 1 + k, 1)
            self._add_arc(1 + k, self._vnode(u), 1)
            self._add_arc(1 + k, self._vnode(v), 1)
        for u in range(n):
            self._add_arc(self._vnode(u), self.sink, self.targets[u])
        self._init_cap = tuple(self.cap)
        self._maxed = False

    def _vnode(self, u: int) -> int:
        return 1 + len(self.pairs) + u

    def _add_arc(self, a: int, b: int, capacity: int) -> None:
        self.adj[a].append(len(self.to))
        self.to.append(b)
        self.cap.append(capacity)
        self.adj[b].append(len(self.to))
        self.to.append(a)
        self.cap.append(0)

    # Arc ids by construction order: pair k owns arcs 6k (source->pair),
    # 6k+2 (pair->u), 6k+4 (pair->v); vertex u owns 6P + 2u (vertex->sink).

    def _seed_greedy(self) -> int:
        """Deterministic capacity-respecting warm start.

        Each pair is awarded to the endpoint with the larger remaining
        score (ties to the lower index) when one is available; pairs left
        unassigned are picked up by the augmentation phases.
        """
        cap = self.cap
        residual = list(self.targets)
        placed = 0
        for k, (u, v) in enumerate(self.pairs):
            ru, rv = residual[u], residual[v]
            if ru <= 0 and rv <= 0:
                continue
            w = u if ru >= rv else v
            residual[w] -= 1
            base = 6 * k
            endpoint_arc = base + 2 if w == u else base + 4
            for arc in (base, endpoint_arc, 6 * len(self.pairs) + 2 * w):
                cap[arc] -= 1
                cap[arc ^ 1] += 1
            placed += 1
        return placed

    def _bfs_levels(self) -> Optional[list[int]]:
        level = [-1] * self.num_nodes
        level[self.source] = 0
        queue = deque([self.source])
        to, cap, adj = self.to, self.cap, self.adj
        while queue:
            a = queue.popleft()
            for arc in adj[a]:
                b = to[arc]
                if cap[arc] > 0 and level[b] < 0:
                    level[b] = level[a] + 1
                    queue.append(b)
        return level if level[self.sink] >= 0 else None

    def _blocking_flow(self, level: list[int]) -> int:
        to, cap, adj = self.to, self.cap, self.adj
        source, sink = self.source, self.sink
        it = [0] * self.num_nodes
        path: list[int] = []
        pushed = 0
        node = source
        while True:
            if node == sink:
                aug = min(cap[arc] for arc in path)
                pushed += aug
                cut = 0
                for idx, arc in enumerate(path):
                    cap[arc] -= aug
                    cap[arc ^ 1] += aug
                    if cap[arc] == 0 and cut == 0:
                        cut = idx + 1
                # retreat to the tail of the first saturated arc
                node = to[path[cut - 1] ^ 1]
                del path[cut - 1 :]
                continue
            advanced = False
            while it[node] < len(adj[node]):
                arc = adj[node][it[node]]
                nxt = to[arc]
                if cap[arc] > 0 and level[nxt] == level[node] + 1:
                    path.append(arc)
                    node = nxt
                    advanced = True
                    break
                it[node] += 1
            if not advanced:
                if node == source:
                    break
                level[node] = -1  # dead end for the rest of this phase
                arc = path.pop()
                node = to[arc ^ 1]
                it[node] += 1
        return pushed

    def max_flow(self, warm_start: bool = True) -> int:
        """Total source->sink flow after running to optimality."""
        value = self._seed_greedy() if warm_start else 0
        while True:
            level = self._bfs_levels()
            if level is None:
                break
            value += self._blocking_flow(level)
        self._maxed = True
        return value

    def flow_on(self, arc: int) -> int:
        return self._init_cap[arc] - self.cap[arc]

    def orientation(self) -> list[int]:
        """Adjacency bit-rows read off the saturating flow."""
        if not self._maxed:
            raise InternalError("orientation requested before max_flow")
        rows = [0] * self.n
        for k, (u, v) in enumerate(self.pairs):
            if self.cap[6 * k + 2] == 0:  # pair's unit went to u
                rows[u] |= 1 << v
            else:
                rows[v] |= 1 << u
        return rows


def scores_of(t: Tournament) -> tuple[int, ...]:
    """Outdegree of every vertex, via row popcounts."""
    return t.scores()


def realize_integer(seq: Iterable[ScoreInput], greedy: bool = False) -> Tournament:
    """Build a tournament whose score vector equals `seq` exactly.

    Raises Infeasible when the sequence fails the realizability check.
    With `greedy=True` a heuristic orientation is tried first and kept
    only if its recomputed scores match; any mismatch silently falls back
    to the flow path, so the result is always exact.
    """
    scores = as_scores(seq)
    validate_scores(scores)
    targets = integer_scores(scores)
    verdict = check_fast(scores)
    if not verdict.feasible:
        raise Infeasible(verdict.witness)
    n = len(targets)

    if greedy:
        rows = _greedy_orientation(targets)
        if tuple(r.bit_count() for r in rows) == targets:
            return Tournament(n, rows)

    net = FlowNetwork(targets)
    value = net.max_flow()
    if value != binom2(n):
        raise InternalError(
            f"max flow {value} != {binom2(n)} on a feasible sequence"
        )
    return Tournament(n, net.orientation())


def _greedy_orientation(targets: tuple[int, ...]) -> list[int]:
    """Award each pair to the endpoint with the larger remaining score."""
    n = len(targets)
    residual = list(targets)
    rows = [0] * n
    for u in range(n):
        for v in range(u + 1, n):
            w, l = (u, v) if residual[u] >= residual[v] else (v, u)
            residual[w] -= 1
            rows[w] |= 1 << l
    return rows


def realize_backtrack(
    seq: Iterable[ScoreInput], cap: int = BACKTRACK_CAP
) -> Optional[Tournament]:
    """Exhaustive search over pair orientations; None if no realization.

    Independent of the flow machinery on purpose: it serves as the oracle
    the flow path is checked against. Residual-score pruning (a vertex can
    never owe more wins than it has pairs left) keeps the search tractable
    for n <= 8.
    """
    scores = as_scores(seq)
    validate_scores(scores)
    targets = integer_scores(scores)
    n = len(targets)
    if n > cap:
        raise ValueError(f"backtracking realizer capped at n <= {cap}, got {n}")
    if sum(targets) != binom2(n):
        return None

    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    # remaining[k][u]: pairs at positions >= k that involve u
    remaining = [[0] * n for _ in range(len(pairs) + 1)]
    for k in range(len(pairs) - 1, -1, -1):
        u, v = pairs[k]
        for w in range(n):
            remaining[k][w] = remaining[k + 1][w] + (w == u or w == v)

    residual = list(targets)
    rows = [0] * n

    def search(k: int) -> bool:
        if k == len(pairs):
            return True
        u, v = pairs[k]
        nxt = remaining[k + 1]
        for w, l in ((u, v), (v, u)):
            if residual[w] == 0:
                continue
            residual[w] -= 1
            if residual[u] <= nxt[u] and residual[v] <= nxt[v]:
                rows[w] |= 1 << l
                if search(k + 1):
                    return True
                rows[w] &= ~(1 << l)
            residual[w] += 1
        return False

    if any(residual[w] > remaining[0][w] for w in range(n)):
        return None
    if not search(0):
        return None
    return Tournament(n, rows)
