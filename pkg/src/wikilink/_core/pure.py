"""Pure-Python twins of the compiled kernels.

Kept in algorithmic lockstep with ``_speedups.pyx``: identical pair
keying, identical heap ordering, identical relaxation tie rules, and
identical floating-point evaluation order, so the two backends produce
bitwise-equal results and either can back the test suite.
"""

from __future__ import annotations

import heapq

import numpy as np

_MAX_ID = 1 << 32

BACKEND_NAME = "pure"


class PairAccumulator:
    """Raw co-occurrence counts keyed by packed (min_id << 32) | max_id."""

    __slots__ = ("_counts",)

    def __init__(self):
        self._counts: dict[int, int] = {}

    def __len__(self) -> int:
        return len(self._counts)

    def add_article(self, ids, boosted) -> None:
        """Add one article's pair increments.

        `ids` are distinct concept ids; `boosted[i]` is nonzero when
        ids[i] is the title or a see-also entry.  Every unordered pair
        gets +9 when both endpoints are boosted, else +1.
        """
        ids = np.ascontiguousarray(ids, dtype=np.int64)
        boosted = np.ascontiguousarray(boosted, dtype=np.uint8)
        if ids.shape != boosted.shape:
            raise ValueError("ids and boosted must have equal length")
        n = len(ids)
        counts = self._counts
        for i in range(n):
            a = int(ids[i])
            if not 0 <= a < _MAX_ID:
                raise ValueError(f"node id {a} out of packable range")
            ab = bool(boosted[i])
            for j in range(i + 1, n):
                b = int(ids[j])
                if a == b:
                    raise ValueError("duplicate id within one article")
                w = 9 if (ab and boosted[j]) else 1
                key = (a << 32) | b if a < b else (b << 32) | a
                counts[key] = counts.get(key, 0) + w

    def items_arrays(self):
        """Edges as (u, v, weight) arrays sorted ascending by (u, v)."""
        keys = sorted(self._counts)
        m = len(keys)
        u = np.empty(m, dtype=np.int64)
        v = np.empty(m, dtype=np.int64)
        w = np.empty(m, dtype=np.int64)
        for i, key in enumerate(keys):
            u[i] = key >> 32
            v[i] = key & 0xFFFFFFFF
            w[i] = self._counts[key]
        return u, v, w


def dijkstra_csr(indptr, indices, costs, source, dist, pred, hops) -> None:
    """Single-source Dijkstra over a directed CSR graph, filling out-arrays.

    dist gets the minimum left-to-right float accumulation of edge costs;
    pred/hops describe one witness path per reached node.  Ties on equal
    distance keep the fewer-hop witness, then the smaller predecessor id.
    Heap order is (distance, node id), so results are fully deterministic.
    """
    n = len(indptr) - 1
    if not 0 <= source < n:
        raise ValueError(f"source {source} out of range")
    dist[:] = np.inf
    pred[:] = -1
    hops[:] = -1
    dist[source] = 0.0
    hops[source] = 0
    done = np.zeros(n, dtype=bool)
    heap = [(0.0, int(source))]
    while heap:
        d, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        hu = int(hops[u])
        for e in range(int(indptr[u]), int(indptr[u + 1])):
            v = int(indices[e])
            if done[v]:
                continue
            nd = d + float(costs[e])
            if nd < dist[v]:
                dist[v] = nd
                pred[v] = u
                hops[v] = hu + 1
                heapq.heappush(heap, (nd, v))
            elif nd == dist[v]:
                nh = hu + 1
                if nh < hops[v] or (nh == hops[v] and u < pred[v]):
                    pred[v] = u
                    hops[v] = nh
