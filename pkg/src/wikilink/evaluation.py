"""Evaluation harness: coverage rates, category distribution, rater stats.

Inputs are three small text formats (golden_concepts.tsv,
golden_relations.tsv, ratings.csv); outputs are plain dataclasses that
the CLI serializes.  The statistics are implemented directly from their
definitions (average-rank Spearman, sample-variance Cronbach) rather
than delegated, so they can be cross-checked against scipy in tests.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .errors import NetworkStateError
from .graph import SemanticNetwork
from .ingest import MAIN_CATEGORIES
from . import weighting

# One-tail alpha=0.05 critical values for Spearman's rho, keyed by n.
SPEARMAN_CRITICAL_05_ONE_TAIL: dict[int, float] = {
    4: 1.000, 5: 0.900, 6: 0.829, 7: 0.714, 8: 0.643, 9: 0.600,
    10: 0.564, 11: 0.536, 12: 0.503, 13: 0.484, 14: 0.464, 15: 0.446,
    16: 0.429, 17: 0.414, 18: 0.401, 19: 0.391, 20: 0.380, 21: 0.370,
    22: 0.361, 23: 0.353, 24: 0.344, 25: 0.337, 26: 0.331, 27: 0.324,
    28: 0.317, 29: 0.312, 30: 0.306,
}


@dataclass(frozen=True)
class GoldenConceptSet:
    entries: tuple[tuple[str, str], ...]  # (category, concept)

    def __post_init__(self):
        if not self.entries:
            raise ValueError("golden concept set is empty")
        concepts = [c for _, c in self.entries]
        if len(set(concepts)) != len(concepts):
            raise ValueError("golden concepts must be unique")

    @property
    def n_total(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class GoldenRelationSet:
    pairs: tuple[tuple[str, str], ...]

    def __post_init__(self):
        if not self.pairs:
            raise ValueError("golden relation set is empty")
        seen = set()
        for a, b in self.pairs:
            key = frozenset((a.casefold(), b.casefold()))
            if len(key) != 2:
                raise ValueError(f"degenerate pair {a!r} - {b!r}")
            if key in seen:
                raise ValueError(f"duplicate pair {a!r} - {b!r}")
            seen.add(key)


@dataclass(frozen=True)
class RatingsMatrix:
    pairs: tuple[str, ...]
    groups: tuple[str, ...]
    raters: tuple[str, ...]
    cells: np.ndarray  # items x raters, integers 1..5

    def __post_init__(self):
        if self.cells.shape != (len(self.pairs), len(self.raters)):
            raise ValueError("ratings matrix is not rectangular")
        if np.any(self.cells < 1) or np.any(self.cells > 5):
            raise ValueError("ratings must lie on the 1..5 scale")


def load_golden_concepts(path) -> GoldenConceptSet:
    entries = []
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            parts = line.rstrip("\n").split("\t")
            if len(parts) != 2:
                raise ValueError(f"{path}:{line_no}: expected 'category<TAB>concept'")
            entries.append((parts[0], parts[1]))
    return GoldenConceptSet(tuple(entries))


def load_golden_relations(path) -> GoldenRelationSet:
    pairs = []
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            parts = line.rstrip("\n").split("\t")
            if len(parts) != 2:
                raise ValueError(f"{path}:{line_no}: expected 'concept_a<TAB>concept_b'")
            pairs.append((parts[0], parts[1]))
    return GoldenRelationSet(tuple(pairs))


def load_ratings(path) -> RatingsMatrix:
    with open(path, encoding="utf-8", newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or len(rows[0]) < 4 or rows[0][:2] != ["pair", "group"]:
        raise ValueError(f"{path}: expected header 'pair,group,rater1,...'")
    raters = tuple(rows[0][2:])
    pairs, groups, cells = [], [], []
    for line_no, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != len(rows[0]):
            raise ValueError(f"{path}:{line_no}: expected {len(rows[0])} columns")
        pairs.append(row[0])
        groups.append(row[1])
        try:
            cells.append([int(x) for x in row[2:]])
        except ValueError:
            raise ValueError(f"{path}:{line_no}: ratings must be integers")
    return RatingsMatrix(tuple(pairs), tuple(groups), raters,
                         np.array(cells, dtype=np.int64))


@dataclass(frozen=True)
class ConceptCoverage:
    c_r: float
    n_c: int
    n_total: int
    per_category: dict[str, tuple[int, int, float]]  # category -> (found, total, rate)


def concept_coverage(network: SemanticNetwork, golden: GoldenConceptSet) -> ConceptCoverage:
    """Fraction of golden concepts resolvable in the network (Eq.-style ratio)."""
    found_total = 0
    per: dict[str, list[int]] = {}
    for category, concept in golden.entries:
        counts = per.setdefault(category, [0, 0])
        counts[1] += 1
        if network.lookup(concept) is not None:
            counts[0] += 1
            found_total += 1
    per_category = {cat: (f, t, f / t) for cat, (f, t) in sorted(per.items())}
    return ConceptCoverage(
        c_r=found_total / golden.n_total,
        n_c=found_total,
        n_total=golden.n_total,
        per_category=per_category,
    )


@dataclass(frozen=True)
class RelationCoverage:
    r: float
    retrieved: int
    total: int


def relationship_coverage(network: SemanticNetwork,
                          golden: GoldenRelationSet) -> RelationCoverage:
    """Fraction of golden pairs that exist as network edges (unordered)."""
    retrieved = 0
    for a, b in golden.pairs:
        na = network.lookup(a)
        nb = network.lookup(b)
        if na is not None and nb is not None and network.has_edge(na.id, nb.id):
            retrieved += 1
    return RelationCoverage(r=retrieved / len(golden.pairs),
                            retrieved=retrieved, total=len(golden.pairs))


def category_distribution(network: SemanticNetwork) -> dict[str, int]:
    """Node counts per main category; multi-membership counts once per main.

    Nodes whose categories reach no main land under "uncategorized".
    """
    index = network.category_index
    if index is None:
        raise NetworkStateError("network has no category index attached")
    counts = {main: 0 for main in MAIN_CATEGORIES}
    counts["uncategorized"] = 0
    for node_id in range(network.node_count):
        node = network.node(node_id)
        mains: set[str] = set()
        for category in node.categories:
            mains |= index.origins_of(category)
        if not mains:
            counts["uncategorized"] += 1
        else:
            for main in mains:
                counts[main] += 1
    return counts


def _average_ranks(values) -> np.ndarray:
    """Ranks 1..n with ties sharing the average of their positions."""
    arr = np.asarray(values, dtype=np.float64)
    order = np.argsort(arr, kind="stable")
    ranks = np.empty(len(arr), dtype=np.float64)
    i = 0
    while i < len(arr):
        j = i
        while j + 1 < len(arr) and arr[order[j + 1]] == arr[order[i]]:
            j += 1
        # positions i..j (0-based) share rank mean of (i+1 .. j+1)
        ranks[order[i:j + 1]] = (i + j) / 2.0 + 1.0
        i = j + 1
    return ranks


def spearman_rho(x, y) -> float:
    """Rank both lists (average ranks on ties), return Pearson of the ranks."""
    x = list(x)
    y = list(y)
    if len(x) != len(y):
        raise ValueError("inputs must have equal length")
    if len(x) < 3:
        raise ValueError("need at least 3 observations")
    rx = _average_ranks(x)
    ry = _average_ranks(y)
    dx = rx - rx.mean()
    dy = ry - ry.mean()
    sx = float(np.sqrt(np.sum(dx * dx)))
    sy = float(np.sqrt(np.sum(dy * dy)))
    if sx == 0.0 or sy == 0.0:
        raise ValueError("correlation undefined: zero rank variance")
    return float(np.sum(dx * dy)) / (sx * sy)


def cronbach_alpha(ratings: RatingsMatrix) -> float:
    """K/(K-1) * (1 - sum of rater variances / variance of row sums)."""
    cells = ratings.cells.astype(np.float64)
    n_items, k = cells.shape
    if k < 2:
        raise ValueError("need at least 2 raters")
    if n_items < 2:
        raise ValueError("need at least 2 items")
    rater_var = cells.var(axis=0, ddof=1)
    total_var = cells.sum(axis=1).var(ddof=1)
    if total_var == 0.0:
        raise ValueError("alpha undefined: zero total variance")
    return float(k / (k - 1) * (1.0 - rater_var.sum() / total_var))


def significance_decision(rho: float, n: int, critical: float | None = None) -> str:
    """'reject' (the no-correlation null) iff rho exceeds the critical value.

    Without an explicit critical value, the bundled one-tail alpha=0.05
    table supplies it (strict inequality at the boundary).
    """
    if n < 3:
        raise ValueError("need at least 3 observations")
    if critical is None:
        if n not in SPEARMAN_CRITICAL_05_ONE_TAIL:
            raise ValueError(f"n={n} outside the bundled critical-value table")
        critical = SPEARMAN_CRITICAL_05_ONE_TAIL[n]
    return "reject" if rho > critical else "fail_to_reject"


def pair_strength(network: SemanticNetwork, a: str, b: str,
                  alpha_general: float = weighting.DEFAULT_ALPHA_GENERAL) -> float:
    """Symmetric combined strength of the (a, b) edge; 0.0 when absent.

    Uses the general mode (global normalization), the only direction-free
    reading, so a pair has one value regardless of orientation.
    """
    na = network.lookup(a)
    nb = network.lookup(b)
    if na is None or nb is None or not network.has_edge(na.id, nb.id):
        return 0.0
    edge = next(e for neighbor, e in network.neighbors(na.id) if neighbor.id == nb.id)
    m = weighting.mode("explore_general", alpha_general=alpha_general)
    norm = weighting.global_normalize(edge.raw_weight, network.stats.w_min,
                                      network.stats.w_max)
    return weighting.combined_strength(edge.semantic_weight, norm, m).value


@dataclass(frozen=True)
class GroupAgreement:
    group: str
    n: int
    rho: float
    critical: float
    decision: str


def ratings_report(network: SemanticNetwork, ratings: RatingsMatrix,
                   critical: float | None = None):
    """Cronbach alpha plus per-group Spearman of mean rating vs edge strength.

    Each row's pair is 'a -- b'; the network-side variable is
    pair_strength.  Returns (alpha, list of GroupAgreement in first-seen
    group order).
    """
    alpha = cronbach_alpha(ratings)
    mean_ratings = ratings.cells.mean(axis=1)
    group_order: list[str] = []
    rows_by_group: dict[str, list[int]] = {}
    for i, group in enumerate(ratings.groups):
        if group not in rows_by_group:
            group_order.append(group)
            rows_by_group[group] = []
        rows_by_group[group].append(i)

    reports = []
    for group in group_order:
        rows = rows_by_group[group]
        x = [float(mean_ratings[i]) for i in rows]
        y = []
        for i in rows:
            parts = ratings.pairs[i].split(" -- ")
            if len(parts) != 2:
                raise ValueError(f"pair {ratings.pairs[i]!r} is not 'a -- b'")
            y.append(pair_strength(network, parts[0], parts[1]))
        rho = spearman_rho(x, y)
        crit = critical
        if crit is None:
            if len(rows) not in SPEARMAN_CRITICAL_05_ONE_TAIL:
                raise ValueError(f"group {group!r}: n={len(rows)} outside critical table")
            crit = SPEARMAN_CRITICAL_05_ONE_TAIL[len(rows)]
        reports.append(GroupAgreement(
            group=group, n=len(rows), rho=rho, critical=crit,
            decision=significance_decision(rho, len(rows), crit)))
    return alpha, reports
