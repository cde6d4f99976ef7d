"""Exhaustive-enumeration oracles for the retrieval algorithms.

Works from a plain (u, v, raw, sem) edge list, recomputing normalization
stats, per-arc values, and all simple paths by brute force.  Float
accumulation is strictly left-to-right along each path, matching what a
relaxation-based shortest-path computation produces, so comparisons
against the package can be exact rather than approximate.
"""

from __future__ import annotations

import math


def build_arcs(edge_list):
    """Directed arc table {(u, v): (raw, sem)} plus degree sums and extremes."""
    arcs = {}
    strength = {}
    raws = []
    for u, v, raw, sem in edge_list:
        if (u, v) in arcs:
            raise ValueError("duplicate edge in oracle input")
        arcs[(u, v)] = (raw, sem)
        arcs[(v, u)] = (raw, sem)
        strength[u] = strength.get(u, 0) + raw
        strength[v] = strength.get(v, 0) + raw
        raws.append(raw)
    return arcs, strength, min(raws), max(raws)


def arc_value(raw, sem, s_exit, w_min, w_max, mode_kind, alpha, formula):
    if mode_kind.endswith("general") or mode_kind.endswith("basic"):
        norm = 1.0 if w_max == w_min else (raw - w_min) / (w_max - w_min)
    else:
        norm = raw / s_exit
    if formula == "strength":
        return alpha * sem + (1.0 - alpha) * norm
    return alpha * (1.0 - sem) + (1.0 - alpha) * norm


def value_table(edge_list, mode_kind, alpha, formula):
    """{(u, v): value} for both directions of every edge."""
    arcs, strength, w_min, w_max = build_arcs(edge_list)
    return {
        (u, v): arc_value(raw, sem, strength[u], w_min, w_max,
                          mode_kind, alpha, formula)
        for (u, v), (raw, sem) in arcs.items()
    }


def _adjacency(values):
    adj = {}
    for (u, v) in values:
        adj.setdefault(u, []).append(v)
    for vs in adj.values():
        vs.sort()
    return adj


def explore_oracle(edge_list, node_count, source, mode_kind, alpha,
                   formula="strength", min_step=1, k=None, max_cost=None):
    """Explore results [(node, dist, hops)] by enumerating all simple paths."""
    values = value_table(edge_list, mode_kind, alpha, formula)
    if formula == "strength":
        costs = {a: 1.0 - v for a, v in values.items()}
    else:
        costs = dict(values)
    adj = _adjacency(values)

    best = {source: 0.0}

    def dfs(u, acc, visited):
        for v in adj.get(u, ()):
            if v in visited:
                continue
            d = acc + costs[(u, v)]  # left-to-right accumulation
            if d <= best.get(v, math.inf):
                best[v] = d
            visited.add(v)
            dfs(v, d, visited)
            visited.remove(v)

    dfs(source, 0.0, {source})

    # witness hop counts: minimal hops over the optimal-predecessor DAG
    hops = {source: 0}

    def hop_of(v):
        if v in hops:
            return hops[v]
        options = []
        for u in adj.get(v, ()):
            if u in best and best[u] + costs[(u, v)] == best[v]:
                options.append(hop_of(u) + 1)
        hops[v] = min(options)
        return hops[v]

    reached = [
        v for v in sorted(best)
        if v != source and hop_of(v) >= min_step
        and (max_cost is None or best[v] <= max_cost)
    ]
    reached.sort(key=lambda v: (best[v], v))
    if k is not None:
        reached = reached[:k]
    return [(v, best[v], hops[v]) for v in reached]


def enumerate_simple_paths(values, source, target, max_hops):
    """Every simple source->target path with at most max_hops edges."""
    adj = _adjacency(values)
    out = []

    def dfs(u, path):
        if u == target:
            out.append(tuple(path))
            return
        if len(path) - 1 == max_hops:
            return
        for v in adj.get(u, ()):
            if v in path:
                continue
            path.append(v)
            dfs(v, path)
            path.pop()

    dfs(source, [source])
    return out


def path_oracle(edge_list, source, target, mode_kind, alpha,
                formula="strength", k=3, max_hops=10):
    """(top-k results, total path count) by full enumeration and re-rank."""
    values = value_table(edge_list, mode_kind, alpha, formula)
    paths = enumerate_simple_paths(values, source, target, max_hops)
    scored = []
    for path in paths:
        strengths = [values[(path[i], path[i + 1])] for i in range(len(path) - 1)]
        if mode_kind == "path_basic":
            if any(s == 0.0 for s in strengths):
                agg = 0.0
            else:
                agg = math.exp(sum(math.log(s) for s in strengths) / len(strengths))
        else:
            if any(s == 0.0 for s in strengths):
                agg = 0.0
            else:
                agg = len(strengths) / sum(1.0 / s for s in strengths)
        scored.append((path, tuple(strengths), agg))
    scored.sort(key=lambda r: (-r[2], len(r[0]), r[0]))
    return scored[:k], len(scored)
