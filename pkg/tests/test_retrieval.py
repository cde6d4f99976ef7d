"""Explore and Search Path behavior on small hand-built networks."""

import math
import random

import pytest

from wikilink import weighting
from wikilink.errors import TermNotFoundError
from wikilink.graph import SemanticNetwork
from wikilink.retrieval import (
    ExploreQuery,
    PathQuery,
    explore,
    search_path,
)

from graph_fixtures import DIAMOND_EDGES, STAR_EDGES, WEB_EDGES
from oracles.shortest_oracle import explore_oracle, path_oracle


@pytest.fixture(scope="module")
def star():
    return SemanticNetwork.from_edges(
        STAR_EDGES, categories={"Lonely": ["mathematics"]})


@pytest.fixture(scope="module")
def web():
    return SemanticNetwork.from_edges(WEB_EDGES)


def ids_of(hits):
    return [h.concept.id for h in hits]


def titles_of(hits):
    return [h.concept.title for h in hits]


# ---------------------------------------------------------------- queries


class TestQueryValidation:
    def test_mode_shorthand(self):
        assert ExploreQuery("x", mode="general").mode == "explore_general"
        assert ExploreQuery("x", mode="explore_specific").mode == "explore_specific"
        assert PathQuery("a", "b", mode="professional").mode == "path_professional"
        assert PathQuery("a", "b", mode="path_basic").mode == "path_basic"

    def test_unknown_modes(self):
        with pytest.raises(ValueError, match="unknown explore mode"):
            ExploreQuery("x", mode="basic")
        with pytest.raises(ValueError, match="unknown path mode"):
            PathQuery("a", "b", mode="general")

    @pytest.mark.parametrize("kwargs", [
        {"min_step": 0},
        {"min_step": -3},
        {"k": 0},
        {"max_cost": -0.1},
    ])
    def test_explore_bounds(self, kwargs):
        with pytest.raises(ValueError):
            ExploreQuery("x", **kwargs)

    @pytest.mark.parametrize("kwargs", [
        {"k": 0},
        {"max_hops": 0},
        {"pool_size": 0},
    ])
    def test_path_bounds(self, kwargs):
        with pytest.raises(ValueError):
            PathQuery("a", "b", **kwargs)

    def test_identical_terminals_rejected(self):
        with pytest.raises(ValueError, match="terminals must differ"):
            PathQuery("Word Embedding", "word_embedding")

    def test_unknown_term(self, star):
        with pytest.raises(TermNotFoundError):
            explore(star, ExploreQuery("nonexistent"))
        with pytest.raises(TermNotFoundError):
            search_path(star, PathQuery("Hub", "nonexistent"))


# ---------------------------------------------------------------- explore


class TestExplore:
    def test_star_nearest_neighbors(self, star):
        # alpha=0.3 over sem/global-norm: A 0.97, D 0.81, B 0.5, E 0.1925, C 0.03
        hits = explore(star, ExploreQuery("Hub", mode="general", k=3))
        assert titles_of(hits) == ["A", "D", "B"]
        assert hits[0].distance == pytest.approx(1 - 0.97)
        assert [h.hops for h in hits] == [1, 1, 1]
        assert hits[0].witness_path == ("Hub", "A")

    def test_distances_ascend(self, star):
        hits = explore(star, ExploreQuery("Hub", k=None))
        dists = [h.distance for h in hits]
        assert dists == sorted(dists)
        assert len(hits) == 5

    def test_isolated_node_reaches_nothing(self, star):
        assert explore(star, ExploreQuery("Lonely")) == []

    def test_min_step_skips_direct_neighbors(self, star):
        hits = explore(star, ExploreQuery("A", min_step=2, k=None))
        assert "Hub" not in titles_of(hits)
        assert sorted(titles_of(hits)) == ["B", "C", "D", "E"]
        assert all(h.hops == 2 for h in hits)
        assert all(h.witness_path[1] == "Hub" for h in hits)

    def test_max_cost_cutoff(self, star):
        hits = explore(star, ExploreQuery("Hub", max_cost=0.2, k=None))
        assert titles_of(hits) == ["A", "D"]

    def test_k_truncates(self, web):
        full = explore(web, ExploreQuery("N0", k=None))
        assert len(full) == 9
        assert explore(web, ExploreQuery("N0", k=4)) == full[:4]

    def test_witness_paths_walk_real_edges(self, web):
        for hit in explore(web, ExploreQuery("N0", k=None, mode="specific")):
            path = hit.witness_path
            assert path[0] == "N0" and path[-1] == hit.concept.title
            assert hit.hops == len(path) - 1
            assert len(set(path)) == len(path)
            for a, b in zip(path, path[1:]):
                assert web.has_edge(web.resolve(a).id, web.resolve(b).id)

    @pytest.mark.parametrize("mode", ["general", "specific"])
    @pytest.mark.parametrize("formula", ["strength", "literal"])
    def test_matches_exhaustive_enumeration(self, web, mode, formula):
        kind = f"explore_{mode}"
        alpha = (weighting.DEFAULT_ALPHA_GENERAL if mode == "general"
                 else weighting.DEFAULT_ALPHA_SPECIFIC)
        edge_ids = [(web.resolve(a).id, web.resolve(b).id, r, s)
                    for a, b, r, s in WEB_EDGES]
        for term in ("N0", "N5", "N9"):
            want = explore_oracle(edge_ids, web.node_count, web.resolve(term).id,
                                  kind, alpha, formula=formula, k=None)
            hits = explore(web, ExploreQuery(term, mode=mode, k=None),
                           weight_formula=formula)
            got = [(h.concept.id, h.distance, h.hops) for h in hits]
            assert got == want  # float equality intended: same arithmetic

    def test_min_step_monotone_on_random_graphs(self):
        rng = random.Random(20260814)
        for _ in range(8):
            net, _ = _random_network(rng)
            prev = None
            for step in (1, 2, 3, 4):
                hits = explore(net, ExploreQuery("T0", min_step=step, k=None))
                nodes = {h.concept.id for h in hits}
                if prev is not None:
                    assert nodes <= prev
                prev = nodes


def _random_network(rng):
    n = rng.randint(4, 9)
    titles = [f"T{i}" for i in range(n)]
    edges = []
    seen = set()
    for i in range(1, n):  # random spanning tree keeps it connected
        j = rng.randrange(i)
        seen.add((j, i))
    extra = rng.randint(0, n)
    while extra:
        a, b = rng.randrange(n), rng.randrange(n)
        if a == b:
            continue
        key = (min(a, b), max(a, b))
        if key in seen:
            continue
        seen.add(key)
        extra -= 1
    for a, b in sorted(seen):
        edges.append((titles[a], titles[b], rng.randint(1, 9),
                      round(rng.uniform(0.05, 0.95), 6)))
    return SemanticNetwork.from_edges(edges), edges


# ------------------------------------------------------------ search path


class TestSearchPath:
    def test_single_edge_path(self, star):
        results = search_path(star, PathQuery("A", "Hub", k=3))
        assert len(results) == 1
        (r,) = results
        assert r.nodes == ("A", "Hub")
        assert r.hops == 1
        assert r.aggregate == pytest.approx(0.97, rel=1e-12)
        assert r.strengths == (r.aggregate,)

    def test_no_route_within_hop_budget(self, star):
        assert search_path(star, PathQuery("A", "B", max_hops=1)) == []

    def test_diamond_prefers_balanced_route(self):
        # pure-statistical weights (alpha 0): strengths {0.9, 0.9} vs {0.4, 1.0}
        net = SemanticNetwork.from_edges(DIAMOND_EDGES)
        results = search_path(net, PathQuery("S", "T", k=2), alpha_general=0.0)
        assert [r.nodes for r in results] == [("S", "X", "T"), ("S", "Y", "T")]
        assert results[0].strengths == (0.9, 0.9)
        assert results[0].aggregate == pytest.approx(0.9, rel=1e-12)
        assert results[1].aggregate == pytest.approx(math.sqrt(0.4), rel=1e-12)

    def test_paths_simple_and_hop_capped(self, web):
        # the two terminals sit five hops apart
        assert search_path(web, PathQuery("N0", "N9", max_hops=4)) == []
        for mode in ("basic", "professional"):
            for max_hops in (5, 6, 8):
                results = search_path(
                    web, PathQuery("N0", "N9", mode=mode, k=10, max_hops=max_hops))
                assert results
                for r in results:
                    assert len(set(r.nodes)) == len(r.nodes)
                    assert r.hops <= max_hops
                    assert len(r.strengths) == r.hops

    def test_results_sorted_by_aggregate(self, web):
        results = search_path(web, PathQuery("N0", "N9", k=10))
        aggs = [r.aggregate for r in results]
        assert aggs == sorted(aggs, reverse=True)

    def test_basic_is_symmetric(self, web):
        for a, b in (("N0", "N9"), ("N1", "N8"), ("N2", "N7")):
            fwd = search_path(web, PathQuery(a, b, k=5))
            rev = search_path(web, PathQuery(b, a, k=5))
            assert [r.nodes for r in rev] == [tuple(reversed(r.nodes)) for r in fwd]
            # per-edge values are symmetric; only the summation order flips
            for rf, rr in zip(fwd, rev):
                assert rr.strengths == tuple(reversed(rf.strengths))
                assert rr.aggregate == pytest.approx(rf.aggregate, rel=1e-12)

    def test_professional_is_directional(self, star):
        # exit-node normalization: leaving A spends its whole strength sum,
        # leaving Hub only a fraction, so the two directions score apart
        fwd = search_path(star, PathQuery("A", "Hub", mode="professional"))
        rev = search_path(star, PathQuery("Hub", "A", mode="professional"))
        assert fwd[0].aggregate == pytest.approx(0.2 * 0.9 + 0.8 * 1.0)
        assert rev[0].aggregate == pytest.approx(0.2 * 0.9 + 0.8 * (9 / 24))
        assert fwd[0].aggregate != rev[0].aggregate

    @pytest.mark.parametrize("mode", ["basic", "professional"])
    def test_matches_full_enumeration(self, web, mode):
        kind = f"path_{mode}"
        alpha = (weighting.DEFAULT_ALPHA_GENERAL if mode == "basic"
                 else weighting.DEFAULT_ALPHA_SPECIFIC)
        edge_ids = [(web.resolve(a).id, web.resolve(b).id, r, s)
                    for a, b, r, s in WEB_EDGES]
        src, dst = web.resolve("N0").id, web.resolve("N9").id
        want, total = path_oracle(edge_ids, src, dst, kind, alpha,
                                  k=5, max_hops=6)
        assert total <= 400  # pool below must cover every candidate
        results = search_path(
            web, PathQuery("N0", "N9", mode=mode, k=5, max_hops=6, pool_size=400))
        got = [(tuple(web.resolve(t).id for t in r.nodes), r.strengths, r.aggregate)
               for r in results]
        assert got == [(p, s, a) for p, s, a in want]

    def test_pool_size_one_still_returns_shortest(self, web):
        results = search_path(web, PathQuery("N0", "N9", k=3, pool_size=1))
        assert len(results) == 1
