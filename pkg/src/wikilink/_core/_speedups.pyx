# distutils: language = c++
# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled twins of the kernels in pure.py.

The contract (pair keying, heap order, tie rules, float evaluation
order) is documented there; this file must match it operation for
operation so both backends return bitwise-identical results.  The C++
min-heap is emulated with a max-heap over negated keys, which preserves
the exact (distance, node id) ordering of Python's heapq tuples.
"""

from libc.math cimport INFINITY
from libcpp.algorithm cimport sort
from libcpp.pair cimport pair
from libcpp.queue cimport priority_queue
from libcpp.unordered_map cimport unordered_map
from libcpp.vector cimport vector

import numpy as np

BACKEND_NAME = "cython"

ctypedef long long i64
ctypedef pair[double, i64] dnode
ctypedef pair[i64, i64] edge_count

cdef i64 _MAX_ID = (<i64>1) << 32


cdef class PairAccumulator:
    """Raw co-occurrence counts keyed by packed (min_id << 32) | max_id."""

    cdef unordered_map[i64, i64] _counts

    def __len__(self):
        return <Py_ssize_t>self._counts.size()

    def add_article(self, ids, boosted):
        cdef const i64[::1] idv = np.ascontiguousarray(ids, dtype=np.int64)
        cdef const unsigned char[::1] bv = np.ascontiguousarray(boosted, dtype=np.uint8)
        if idv.shape[0] != bv.shape[0]:
            raise ValueError("ids and boosted must have equal length")
        cdef Py_ssize_t i, j, n = idv.shape[0]
        cdef i64 a, b, key, w
        cdef bint ab
        for i in range(n):
            a = idv[i]
            if a < 0 or a >= _MAX_ID:
                raise ValueError(f"node id {a} out of packable range")
            ab = bv[i] != 0
            for j in range(i + 1, n):
                b = idv[j]
                if a == b:
                    raise ValueError("duplicate id within one article")
                w = 9 if (ab and bv[j] != 0) else 1
                key = (a << 32) | b if a < b else (b << 32) | a
                self._counts[key] = self._counts[key] + w

    def items_arrays(self):
        cdef vector[i64] keys
        keys.reserve(self._counts.size())
        cdef edge_count item
        for item in self._counts:
            keys.push_back(item.first)
        sort(keys.begin(), keys.end())
        cdef Py_ssize_t m = <Py_ssize_t>keys.size(), i
        u = np.empty(m, dtype=np.int64)
        v = np.empty(m, dtype=np.int64)
        w = np.empty(m, dtype=np.int64)
        cdef i64[::1] uv = u, vv = v, wv = w
        cdef i64 key
        for i in range(m):
            key = keys[i]
            uv[i] = key >> 32
            vv[i] = key & 0xFFFFFFFF
            wv[i] = self._counts[key]
        return u, v, w


def dijkstra_csr(indptr, indices, costs, source, dist, pred, hops):
    """Single-source Dijkstra; see pure.dijkstra_csr for the contract."""
    cdef const i64[::1] ip = indptr
    cdef const i64[::1] ix = indices
    cdef const double[::1] cs = costs
    cdef double[::1] dv = dist
    cdef i64[::1] pv = pred
    cdef i64[::1] hv = hops
    cdef Py_ssize_t n = ip.shape[0] - 1
    cdef i64 src = source
    if src < 0 or src >= n:
        raise ValueError(f"source {source} out of range")
    cdef Py_ssize_t i
    for i in range(n):
        dv[i] = INFINITY
        pv[i] = -1
        hv[i] = -1
    dv[src] = 0.0
    hv[src] = 0
    cdef vector[char] done = vector[char](n, 0)
    # max-heap over (-dist, -node) == min-heap over (dist, node)
    cdef priority_queue[dnode] heap
    heap.push(dnode(0.0, -src))
    cdef dnode top
    cdef i64 u, v_, e, hu, nh
    cdef double d, nd
    while not heap.empty():
        top = heap.top()
        heap.pop()
        d = -top.first
        u = -top.second
        if done[u]:
            continue
        done[u] = 1
        hu = hv[u]
        for e in range(ip[u], ip[u + 1]):
            v_ = ix[e]
            if done[v_]:
                continue
            nd = d + cs[e]
            if nd < dv[v_]:
                dv[v_] = nd
                pv[v_] = u
                hv[v_] = hu + 1
                heap.push(dnode(-nd, -v_))
            elif nd == dv[v_]:
                nh = hu + 1
                if nh < hv[v_] or (nh == hv[v_] and u < pv[v_]):
                    pv[v_] = u
                    hv[v_] = nh
