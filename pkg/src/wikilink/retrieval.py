"""The four retrieval algorithms.

Explore (general/specific) runs one full single-source Dijkstra pass in
the kernel backend and filters by minimum step and optional cost cutoff.
Search Path (basic/professional) enumerates up to pool_size k-shortest
loopless paths under additive -ln(value) cost (deviation search with a
hop-bounded Dijkstra subroutine), then re-ranks the pool by the mode's
path mean.  All tie-breaking is total, so outputs are reproducible.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

import numpy as np

from . import _core, weighting
from .graph import ConceptNode, SemanticNetwork
from .ingest import title_key

DEFAULT_EXPLORE_K = 10
DEFAULT_PATH_K = 3
DEFAULT_MAX_HOPS = 10
DEFAULT_POOL_SIZE = 100


def explore_mode_kind(name: str) -> str:
    """Accept both the short CLI spelling and the full mode name."""
    kind = name if name.startswith("explore_") else f"explore_{name}"
    if kind not in ("explore_general", "explore_specific"):
        raise ValueError(f"unknown explore mode {name!r}")
    return kind


def path_mode_kind(name: str) -> str:
    kind = name if name.startswith("path_") else f"path_{name}"
    if kind not in ("path_basic", "path_professional"):
        raise ValueError(f"unknown path mode {name!r}")
    return kind


@dataclass(frozen=True)
class ExploreQuery:
    term: str
    mode: str = "explore_general"
    min_step: int = 1
    k: int | None = DEFAULT_EXPLORE_K
    max_cost: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "mode", explore_mode_kind(self.mode))
        if self.min_step < 1:
            raise ValueError("min_step must be >= 1")
        if self.k is not None and self.k < 1:
            raise ValueError("k must be >= 1")
        if self.max_cost is not None and self.max_cost < 0:
            raise ValueError("max_cost must be >= 0")


@dataclass(frozen=True)
class ExploreHit:
    concept: ConceptNode
    distance: float
    hops: int
    witness_path: tuple[str, ...]


@dataclass(frozen=True)
class PathQuery:
    from_term: str
    to_term: str
    mode: str = "path_basic"
    k: int = DEFAULT_PATH_K
    max_hops: int = DEFAULT_MAX_HOPS
    pool_size: int = DEFAULT_POOL_SIZE

    def __post_init__(self):
        object.__setattr__(self, "mode", path_mode_kind(self.mode))
        if title_key(self.from_term) == title_key(self.to_term):
            raise ValueError("path terminals must differ after normalization")
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.max_hops < 1:
            raise ValueError("max_hops must be >= 1")
        if self.pool_size < 1:
            raise ValueError("pool_size must be >= 1")


@dataclass(frozen=True)
class PathResult:
    nodes: tuple[str, ...]
    strengths: tuple[float, ...]
    aggregate: float

    @property
    def hops(self) -> int:
        return len(self.nodes) - 1


def explore(network: SemanticNetwork, query: ExploreQuery, *,
            alpha_general: float = weighting.DEFAULT_ALPHA_GENERAL,
            alpha_specific: float = weighting.DEFAULT_ALPHA_SPECIFIC,
            weight_formula: str = "strength") -> list[ExploreHit]:
    """Ranked reachable concepts around a term.

    Runs Dijkstra from the term's node under the mode's edge costs,
    drops hits whose witness path is shorter than min_step or farther
    than max_cost, and returns the k nearest sorted by (distance, id).
    """
    m = weighting.mode(query.mode, alpha_general, alpha_specific)
    source = network.resolve(query.term)
    indptr, indices, _, _ = network.csr
    values = network.arc_values(m, weight_formula)
    costs = weighting.cost_array(values, weight_formula)

    n = network.node_count
    dist = np.empty(n, dtype=np.float64)
    pred = np.empty(n, dtype=np.int64)
    hops = np.empty(n, dtype=np.int64)
    _core.dijkstra_csr(indptr, indices, costs, source.id, dist, pred, hops)

    reached = [
        v for v in range(n)
        if v != source.id and np.isfinite(dist[v]) and hops[v] >= query.min_step
        and (query.max_cost is None or dist[v] <= query.max_cost)
    ]
    reached.sort(key=lambda v: (dist[v], v))
    if query.k is not None:
        reached = reached[:query.k]

    hits = []
    for v in reached:
        path = []
        node = v
        while node != -1:
            path.append(network.node(int(node)).title)
            node = int(pred[node]) if node != source.id else -1
        hits.append(ExploreHit(concept=network.node(v), distance=float(dist[v]),
                               hops=int(hops[v]), witness_path=tuple(reversed(path))))
    return hits


def _arc_of(indptr, indices, u: int, v: int) -> int:
    row_start = int(indptr[u])
    row = indices[row_start:int(indptr[u + 1])]
    pos = int(np.searchsorted(row, v))
    if pos >= len(row) or int(row[pos]) != v:
        raise ValueError(f"no arc {u} -> {v}")
    return row_start + pos


def _hop_dijkstra(indptr, indices, costs, source: int, target: int, max_hops: int,
                  banned: frozenset[int], banned_first: frozenset[int]):
    """Cheapest path source->target using at most max_hops edges.

    State space is (node, hops used); heap order (dist, node, hops) makes
    the result deterministic.  Returns (node tuple, cost) or None.
    Infinite-cost arcs (zero value) are not traversable.  The source is
    never re-entered: a walk that loops back through it could exit via a
    banned first hop, and dropping such walks later would silently cut
    off whole deviation branches.
    """
    best: dict[tuple[int, int], float] = {(source, 0): 0.0}
    pred: dict[tuple[int, int], tuple[int, int]] = {}
    done: set[tuple[int, int]] = set()
    heap: list[tuple[float, int, int]] = [(0.0, source, 0)]
    while heap:
        d, u, h = heapq.heappop(heap)
        state = (u, h)
        if state in done:
            continue
        done.add(state)
        if u == target:
            path = [u]
            while state in pred:
                state = pred[state]
                path.append(state[0])
            return tuple(reversed(path)), d
        if h == max_hops:
            continue
        for a in range(int(indptr[u]), int(indptr[u + 1])):
            v = int(indices[a])
            if v == source or v in banned or (h == 0 and v in banned_first):
                continue
            c = float(costs[a])
            if not np.isfinite(c):
                continue
            nd = d + c
            nstate = (v, h + 1)
            if nstate not in done and nd < best.get(nstate, np.inf):
                best[nstate] = nd
                pred[nstate] = (u, h)
                heapq.heappush(heap, (nd, v, h + 1))
    return None


def search_path(network: SemanticNetwork, query: PathQuery, *,
                alpha_general: float = weighting.DEFAULT_ALPHA_GENERAL,
                alpha_specific: float = weighting.DEFAULT_ALPHA_SPECIFIC,
                weight_formula: str = "strength") -> list[PathResult]:
    """Top-k implicit-association paths between two terms.

    Generates up to pool_size loopless candidates in ascending -ln(value)
    cost, scores each by the mode's mean of per-edge values, and returns
    the k best by descending aggregate (ties: fewer hops, then node ids).
    """
    m = weighting.mode(query.mode, alpha_general, alpha_specific)
    src = network.resolve(query.from_term)
    dst = network.resolve(query.to_term)
    indptr, indices, _, _ = network.csr
    values = network.arc_values(m, weight_formula)
    with np.errstate(divide="ignore"):
        costs = -np.log(values)

    first = _hop_dijkstra(indptr, indices, costs, src.id, dst.id,
                          query.max_hops, frozenset(), frozenset())
    if first is None:
        return []
    accepted: list[tuple[int, ...]] = [first[0]]
    candidates: list[tuple[float, tuple[int, ...]]] = []
    enqueued: set[tuple[int, ...]] = {first[0]}

    while len(accepted) < query.pool_size:
        prev = accepted[-1]
        for i in range(len(prev) - 1):
            root = prev[:i + 1]
            spur = prev[i]
            banned_first = frozenset(
                p[i + 1] for p in accepted if len(p) > i + 1 and p[:i + 1] == root)
            banned = frozenset(root[:-1])
            res = _hop_dijkstra(indptr, indices, costs, spur, dst.id,
                                query.max_hops - i, banned, banned_first)
            if res is None:
                continue
            spur_path, spur_cost = res
            path = root[:-1] + spur_path
            if len(set(path)) != len(path) or path in enqueued:
                continue
            root_cost = 0.0
            for j in range(i):
                root_cost += float(costs[_arc_of(indptr, indices, prev[j], prev[j + 1])])
            enqueued.add(path)
            heapq.heappush(candidates, (root_cost + spur_cost, path))
        if not candidates:
            break
        _, path = heapq.heappop(candidates)
        accepted.append(path)

    results = []
    for path in accepted:
        strengths = tuple(
            float(values[_arc_of(indptr, indices, path[j], path[j + 1])])
            for j in range(len(path) - 1))
        aggregate = weighting.aggregate_path(list(strengths), m)
        results.append((path, strengths, aggregate))
    results.sort(key=lambda r: (-r[2], len(r[0]), r[0]))

    out = []
    for path, strengths, aggregate in results[:query.k]:
        titles = tuple(network.node(v).title for v in path)
        out.append(PathResult(nodes=titles, strengths=strengths, aggregate=aggregate))
    return out
