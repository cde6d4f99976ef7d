"""Coverage metrics, rank statistics, and the ratings report."""

import numpy as np
import pytest
import scipy.stats
from hypothesis import given, strategies as st

from wikilink import weighting
from wikilink.errors import NetworkStateError
from wikilink.evaluation import (
    SPEARMAN_CRITICAL_05_ONE_TAIL,
    GoldenConceptSet,
    GoldenRelationSet,
    RatingsMatrix,
    category_distribution,
    concept_coverage,
    cronbach_alpha,
    load_golden_concepts,
    load_golden_relations,
    load_ratings,
    pair_strength,
    ratings_report,
    relationship_coverage,
    significance_decision,
    spearman_rho,
)
from wikilink.graph import SemanticNetwork
from wikilink.ingest import RawPage, build_category_index


# ---------------------------------------------------------------- loaders


class TestLoaders:
    def test_golden_concepts(self, fixtures_dir):
        golden = load_golden_concepts(fixtures_dir / "golden_concepts.tsv")
        assert golden.n_total == 10
        assert golden.entries[0] == ("technology", "3D printing")
        assert golden.entries[-1] == ("natural", "Giant")

    def test_golden_relations(self, fixtures_dir):
        golden = load_golden_relations(fixtures_dir / "golden_relations.tsv")
        assert len(golden.pairs) == 8
        assert golden.pairs[0] == ("FastText", "Word2vec")

    def test_ratings(self, fixtures_dir):
        ratings = load_ratings(fixtures_dir / "ratings.csv")
        assert ratings.raters == ("anna", "ben", "chloe")
        assert ratings.cells.shape == (10, 3)
        assert ratings.groups.count("experts") == 5
        assert ratings.pairs[0] == "Word2vec -- GloVe"
        assert ratings.cells[0].tolist() == [5, 5, 4]

    def test_concepts_bad_column_count(self, tmp_path):
        p = tmp_path / "bad.tsv"
        p.write_text("a\tb\tc\n")
        with pytest.raises(ValueError, match="bad.tsv:1"):
            load_golden_concepts(p)

    def test_concepts_blank_lines_skipped(self, tmp_path):
        p = tmp_path / "ok.tsv"
        p.write_text("cat\tA\n\n\ncat\tB\n")
        assert load_golden_concepts(p).n_total == 2

    def test_duplicate_concepts_rejected(self):
        with pytest.raises(ValueError, match="unique"):
            GoldenConceptSet((("x", "A"), ("y", "A")))

    def test_empty_concepts_rejected(self):
        with pytest.raises(ValueError, match="empty"):
            GoldenConceptSet(())

    def test_degenerate_relation_rejected(self):
        with pytest.raises(ValueError, match="degenerate"):
            GoldenRelationSet((("Brain", "brain"),))

    def test_duplicate_relation_rejected(self):
        with pytest.raises(ValueError, match="duplicate"):
            GoldenRelationSet((("A", "B"), ("b", "a")))

    def test_ratings_header_required(self, tmp_path):
        p = tmp_path / "r.csv"
        p.write_text("pair,anna,ben\nx -- y,1,2\n")
        with pytest.raises(ValueError, match="header"):
            load_ratings(p)

    def test_ratings_non_integer(self, tmp_path):
        p = tmp_path / "r.csv"
        p.write_text("pair,group,anna,ben\nx -- y,g,1,hi\n")
        with pytest.raises(ValueError, match="r.csv:2"):
            load_ratings(p)

    def test_ratings_ragged_row(self, tmp_path):
        p = tmp_path / "r.csv"
        p.write_text("pair,group,anna,ben\nx -- y,g,1\n")
        with pytest.raises(ValueError, match="expected 4 columns"):
            load_ratings(p)

    def test_ratings_scale_enforced(self):
        with pytest.raises(ValueError, match="1..5 scale"):
            RatingsMatrix(("p",), ("g",), ("r1", "r2"),
                          np.array([[1, 6]], dtype=np.int64))


# --------------------------------------------------------------- coverage


class TestCoverage:
    def test_concept_coverage_rate(self, mini_net, fixtures_dir):
        golden = load_golden_concepts(fixtures_dir / "golden_concepts.tsv")
        cov = concept_coverage(mini_net, golden)
        assert cov.n_total == 10
        assert cov.n_c == 7
        assert cov.c_r == 0.7
        assert cov.per_category["technology"] == (2, 3, pytest.approx(2 / 3))
        assert cov.per_category["mathematics"] == (1, 2, 0.5)
        assert cov.per_category["human"] == (1, 2, 0.5)
        assert cov.per_category["cultural"] == (1, 1, 1.0)

    def test_relationship_coverage_rate(self, mini_net, fixtures_dir):
        golden = load_golden_relations(fixtures_dir / "golden_relations.tsv")
        cov = relationship_coverage(mini_net, golden)
        assert (cov.retrieved, cov.total) == (6, 8)
        assert cov.r == 0.75

    def test_relation_direction_irrelevant(self, mini_net):
        flipped = GoldenRelationSet((("Artificial intelligence", "machine learning"),))
        assert relationship_coverage(mini_net, flipped).r == 1.0

    def test_category_distribution(self, mini_net):
        dist = category_distribution(mini_net)
        assert dist["technology"] == 10
        assert dist["mathematics"] == 2
        assert dist["uncategorized"] == 13
        assert sum(dist.values()) == mini_net.node_count
        assert dist["health"] == 0

    def test_category_distribution_multi_membership(self):
        pages = [
            RawPage("Category:Games", "[[Category:Cultural]]\n[[Category:Technology]]",
                    namespace_hint="Category"),
        ]
        index = build_category_index(pages, depth=3)
        net = SemanticNetwork.from_edges(
            [("Chess", "Go", 2, 0.5)], categories={"Chess": ["Games"]})
        net.category_index = index
        dist = category_distribution(net)
        assert dist["cultural"] == 1 and dist["technology"] == 1
        assert dist["uncategorized"] == 1  # Go carries no categories
        assert sum(dist.values()) == 3  # one node counted under two mains

    def test_category_distribution_needs_index(self):
        net = SemanticNetwork.from_edges([("A", "B", 1, 0.5)])
        with pytest.raises(NetworkStateError, match="category index"):
            category_distribution(net)


# ------------------------------------------------------------- statistics


class TestSpearman:
    def test_worked_example(self):
        # d^2 = (1,1,1,1) -> 1 - 6*4/(5*24) = 0.8
        assert spearman_rho([1, 2, 3, 4, 5], [2, 1, 4, 3, 5]) == pytest.approx(
            0.8, abs=1e-12)

    def test_perfect_and_inverse(self):
        assert spearman_rho([1, 2, 3], [10, 20, 30]) == pytest.approx(1.0)
        assert spearman_rho([1, 2, 3], [3, 1, 0]) == pytest.approx(-1.0)

    def test_tied_ranks_match_scipy(self):
        x = [1.0, 1.0, 2.0, 3.0, 3.0, 3.0, 4.0]
        y = [2.0, 1.0, 2.0, 5.0, 4.0, 4.0, 6.0]
        want = scipy.stats.spearmanr(x, y).statistic
        assert spearman_rho(x, y) == pytest.approx(want, abs=1e-12)

    @given(st.lists(st.integers(min_value=0, max_value=6), min_size=4, max_size=25),
           st.randoms(use_true_random=False))
    def test_matches_scipy_on_random_data(self, x, rnd):
        y = [rnd.randint(0, 6) for _ in x]
        if len(set(x)) < 2 or len(set(y)) < 2:
            return
        want = scipy.stats.spearmanr(x, y).statistic
        assert spearman_rho(x, y) == pytest.approx(want, abs=1e-12)

    def test_length_mismatch(self):
        with pytest.raises(ValueError, match="equal length"):
            spearman_rho([1, 2, 3], [1, 2])

    def test_too_short(self):
        with pytest.raises(ValueError, match="at least 3"):
            spearman_rho([1, 2], [2, 1])

    def test_constant_input(self):
        with pytest.raises(ValueError, match="zero rank variance"):
            spearman_rho([1, 1, 1], [1, 2, 3])


class TestCronbach:
    def test_hand_example(self):
        ratings = RatingsMatrix(
            ("p1", "p2", "p3"), ("g", "g", "g"), ("r1", "r2"),
            np.array([[1, 2], [2, 4], [3, 5]], dtype=np.int64))
        assert cronbach_alpha(ratings) == pytest.approx(18 / 19, rel=1e-12)

    def test_covariance_identity(self, fixtures_dir):
        # alpha can equivalently be written from the rater covariance matrix
        ratings = load_ratings(fixtures_dir / "ratings.csv")
        cells = ratings.cells.astype(float)
        cov = np.cov(cells, rowvar=False, ddof=1)
        k = cells.shape[1]
        want = k / (k - 1) * (1 - np.trace(cov) / cov.sum())
        assert cronbach_alpha(ratings) == pytest.approx(want, rel=1e-12)

    def test_needs_two_raters(self):
        ratings = RatingsMatrix(("p1", "p2"), ("g", "g"), ("solo",),
                                np.array([[1], [2]], dtype=np.int64))
        with pytest.raises(ValueError, match="2 raters"):
            cronbach_alpha(ratings)

    def test_needs_two_items(self):
        ratings = RatingsMatrix(("p1",), ("g",), ("r1", "r2"),
                                np.array([[1, 2]], dtype=np.int64))
        with pytest.raises(ValueError, match="2 items"):
            cronbach_alpha(ratings)

    def test_zero_total_variance(self):
        ratings = RatingsMatrix(("p1", "p2"), ("g", "g"), ("r1", "r2"),
                                np.array([[1, 2], [2, 1]], dtype=np.int64))
        with pytest.raises(ValueError, match="zero total variance"):
            cronbach_alpha(ratings)


class TestSignificance:
    def test_boundary_is_strict(self):
        assert significance_decision(0.564, 10) == "fail_to_reject"
        assert significance_decision(0.5641, 10) == "reject"

    def test_explicit_critical_all_reject(self):
        for rho in (0.82, 0.74, 0.66):
            assert significance_decision(rho, 12, critical=0.57) == "reject"
        assert significance_decision(0.56, 12, critical=0.57) == "fail_to_reject"

    def test_table_bounds(self):
        assert SPEARMAN_CRITICAL_05_ONE_TAIL[5] == 0.900
        with pytest.raises(ValueError, match="outside"):
            significance_decision(0.5, 31)
        with pytest.raises(ValueError, match="at least 3"):
            significance_decision(0.5, 2)


# ----------------------------------------------------------- pair strength


class TestPairStrength:
    def test_known_edge(self, mini_net):
        node = mini_net.resolve("machine learning")
        ai = mini_net.resolve("artificial intelligence")
        edge = next(e for nb, e in mini_net.neighbors(node.id) if nb.id == ai.id)
        want = 0.3 * edge.semantic_weight + 0.7 * ((9 - 1) / (18 - 1))
        assert pair_strength(mini_net, "Machine learning",
                             "Artificial intelligence") == pytest.approx(want)

    def test_symmetric(self, mini_net):
        ab = pair_strength(mini_net, "FastText", "Word2vec")
        ba = pair_strength(mini_net, "Word2vec", "FastText")
        assert ab == ba > 0

    def test_absent_pair_and_unknown_term(self, mini_net):
        assert pair_strength(mini_net, "FastText", "Brain") == 0.0
        assert pair_strength(mini_net, "FastText", "no such page") == 0.0


# ----------------------------------------------------------------- report


class TestRatingsReport:
    def test_fixture_report(self, mini_net, fixtures_dir):
        ratings = load_ratings(fixtures_dir / "ratings.csv")
        alpha, groups = ratings_report(mini_net, ratings)
        assert alpha == pytest.approx(cronbach_alpha(ratings), rel=1e-12)
        assert [g.group for g in groups] == ["experts", "students"]
        assert all(g.n == 5 for g in groups)
        assert all(g.critical == 0.900 for g in groups)
        for g in groups:
            assert g.decision == ("reject" if g.rho > g.critical else "fail_to_reject")

    def test_rho_recomputed_by_hand(self, mini_net, fixtures_dir):
        ratings = load_ratings(fixtures_dir / "ratings.csv")
        _, groups = ratings_report(mini_net, ratings)
        rows = [i for i, g in enumerate(ratings.groups) if g == "experts"]
        means = [float(ratings.cells[i].mean()) for i in rows]
        strengths = []
        for i in rows:
            a, b = ratings.pairs[i].split(" -- ")
            strengths.append(pair_strength(mini_net, a, b))
        assert groups[0].rho == pytest.approx(spearman_rho(means, strengths))

    def test_explicit_critical_override(self, mini_net, fixtures_dir):
        ratings = load_ratings(fixtures_dir / "ratings.csv")
        _, groups = ratings_report(mini_net, ratings, critical=0.57)
        assert all(g.critical == 0.57 for g in groups)

    def test_malformed_pair_label(self, mini_net):
        ratings = RatingsMatrix(
            ("a - b", "c -- d", "e -- f"), ("g", "g", "g"), ("r1", "r2"),
            np.array([[1, 2], [2, 3], [3, 4]], dtype=np.int64))
        with pytest.raises(ValueError, match="not 'a -- b'"):
            ratings_report(mini_net, ratings)


def test_alpha_override_flows_through(mini_net):
    base = pair_strength(mini_net, "Tiny", "Giant")
    stats_only = pair_strength(mini_net, "Tiny", "Giant", alpha_general=0.0)
    node = mini_net.resolve("tiny")
    edge = next(e for nb, e in mini_net.neighbors(node.id) if nb.title == "Giant")
    norm = (edge.raw_weight - 1) / (18 - 1)
    assert stats_only == pytest.approx(norm)
    assert base == pytest.approx(0.3 * edge.semantic_weight + 0.7 * norm, abs=1e-12)
