"""The semantic network: nodes, weighted edges, queries, persistence.

A network has two phases.  During the build phase articles are
accumulated into raw pair counts (the O(L²) inner loop runs in the
selected kernel backend).  ``finalize`` computes stats and the CSR
adjacency, attaches semantic weights, and freezes the network; after
that everything is read-only and safe for concurrent queries.

Persistence is a directory of three sorted UTF-8/LF files (nodes.tsv,
edges.tsv, meta.json) plus an optional category_index.tsv; saving is
byte-deterministic and meta.json carries sha256 checksums of the rest.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field

import numpy as np

from . import _core, weighting
from .errors import (
    ChecksumMismatchError,
    MissingNetworkFileError,
    NetworkStateError,
    PersistenceError,
    TermNotFoundError,
    VersionMismatchError,
)
from .ingest import ArticleRecord, CategoryIndex, IngestPolicy, normalize_title, title_key

FORMAT_VERSION = 1

NODES_FILE = "nodes.tsv"
EDGES_FILE = "edges.tsv"
META_FILE = "meta.json"
CATEGORY_INDEX_FILE = "category_index.tsv"

# Semantic weights are quantized to 6 decimals at finalize so the %.6f
# text form in edges.tsv round-trips bitwise.
SEM_DECIMALS = 6


@dataclass(frozen=True)
class ConceptNode:
    id: int
    title: str
    categories: tuple[str, ...] = ()


@dataclass(frozen=True)
class EdgeRecord:
    u: int
    v: int
    raw_weight: int
    semantic_weight: float


@dataclass(frozen=True)
class NetworkStats:
    w_min: int
    w_max: int
    node_count: int
    edge_count: int
    strength_sums: np.ndarray = field(repr=False, compare=False)


class SemanticNetwork:
    """Build-then-query container for the concept graph."""

    def __init__(self, policy: IngestPolicy | None = None):
        self.policy = policy or IngestPolicy()
        self.manifest: dict = {"policy": _policy_dict(self.policy), "source_digests": {}}
        self.category_index: CategoryIndex | None = None
        self._titles: list[str] = []
        self._cats: list[tuple[str, ...]] = []
        self._canonical: list[bool] = []
        self._key_to_id: dict[str, int] = {}
        self._acc = _core.PairAccumulator()
        self._finalized = False
        self._stats: NetworkStats | None = None
        self._arc_cache: dict[tuple, np.ndarray] = {}

    # ------------------------------------------------------------------ build

    def intern(self, title: str, categories=None, canonical: bool = False) -> int:
        """Id for a title, creating the node on first sight.

        An article's own title claims the display form and categories;
        plain link targets never override an earlier canonical claim.
        """
        if self._finalized:
            raise NetworkStateError("network is finalized; no new nodes")
        name = normalize_title(title)
        key = name.casefold()
        node_id = self._key_to_id.get(key)
        if node_id is None:
            node_id = len(self._titles)
            self._key_to_id[key] = node_id
            self._titles.append(name)
            self._cats.append(tuple(categories or ()))
            self._canonical.append(canonical)
        elif canonical and not self._canonical[node_id]:
            self._titles[node_id] = name
            self._cats[node_id] = tuple(categories or ())
            self._canonical[node_id] = True
        return node_id

    def accumulate(self, record: ArticleRecord) -> None:
        """Apply one admitted article's pair increments."""
        if self._finalized:
            raise NetworkStateError("network is finalized; accumulate is not allowed")
        title_id = self.intern(record.title, record.categories, canonical=True)
        boosted_ids = {title_id}
        ids = [title_id]
        seen = {title_id}
        for name in record.see_also:
            nid = self.intern(name)
            if nid not in seen:
                seen.add(nid)
                ids.append(nid)
            boosted_ids.add(nid)
        for name in record.main_links:
            nid = self.intern(name)
            if nid not in seen:
                seen.add(nid)
                ids.append(nid)
        if len(ids) < 2:
            return
        id_arr = np.array(ids, dtype=np.int64)
        boosted = np.array([1 if i in boosted_ids else 0 for i in ids], dtype=np.uint8)
        self._acc.add_article(id_arr, boosted)

    def finalize(self, semantic=None) -> NetworkStats:
        """Freeze the network: stats, semantic weights, CSR adjacency.

        `semantic` is an optional callable (title_a, title_b) -> [0,1];
        missing callable stores 0.0 everywhere.
        """
        if self._finalized:
            raise NetworkStateError("network already finalized")
        if len(self._acc) == 0:
            raise NetworkStateError("nothing to finalize: the network has no edges")
        u, v, raw = self._acc.items_arrays()
        sem = np.zeros(len(u), dtype=np.float64)
        if semantic is not None:
            for i in range(len(u)):
                sem[i] = semantic(self._titles[int(u[i])], self._titles[int(v[i])])
        return self._finalize_arrays(u, v, raw, sem)

    @classmethod
    def from_edges(cls, edge_list, categories=None, policy=None) -> "SemanticNetwork":
        """Construct a finalized network straight from edge tuples.

        `edge_list` holds (title_a, title_b, raw_weight, semantic_weight)
        tuples; `categories` maps titles to category lists.  Mainly for
        fixtures and tests.
        """
        net = cls(policy=policy)
        categories = categories or {}
        pairs: dict[tuple[int, int], tuple[int, float]] = {}
        for ta, tb, raw, sem in edge_list:
            a = net.intern(ta, categories.get(ta), canonical=ta in categories)
            b = net.intern(tb, categories.get(tb), canonical=tb in categories)
            if a == b:
                raise ValueError(f"self-edge on {ta!r}")
            key = (a, b) if a < b else (b, a)
            if key in pairs:
                raise ValueError(f"duplicate edge {ta!r} - {tb!r}")
            pairs[key] = (int(raw), float(sem))
        for title, cats in categories.items():
            net.intern(title, cats, canonical=True)
        if not pairs:
            raise NetworkStateError("nothing to finalize: the network has no edges")
        keys = sorted(pairs)
        u = np.array([k[0] for k in keys], dtype=np.int64)
        v = np.array([k[1] for k in keys], dtype=np.int64)
        raw = np.array([pairs[k][0] for k in keys], dtype=np.int64)
        sem = np.array([pairs[k][1] for k in keys], dtype=np.float64)
        net._finalize_arrays(u, v, raw, sem)
        return net

    def _finalize_arrays(self, u, v, raw, sem) -> NetworkStats:
        if np.any(raw < 1):
            raise ValueError("raw weights must be >= 1")
        if np.any(sem < 0.0) or np.any(sem > 1.0):
            raise ValueError("semantic weights must lie in [0,1]")
        n = len(self._titles)
        self._eu = u
        self._ev = v
        self._eraw = raw
        self._esem = np.round(sem, SEM_DECIMALS)
        strength = np.zeros(n, dtype=np.float64)
        np.add.at(strength, u, raw)
        np.add.at(strength, v, raw)
        self._stats = NetworkStats(
            w_min=int(raw.min()),
            w_max=int(raw.max()),
            node_count=n,
            edge_count=len(raw),
            strength_sums=strength,
        )
        self._build_csr()
        self._finalized = True
        self._acc = None
        return self._stats

    def _build_csr(self) -> None:
        m = len(self._eu)
        n = len(self._titles)
        src = np.concatenate([self._eu, self._ev])
        dst = np.concatenate([self._ev, self._eu])
        eidx = np.concatenate([np.arange(m, dtype=np.int64)] * 2)
        order = np.lexsort((dst, src))
        self._arc_src = src[order]
        self._indices = dst[order]
        self._arc_eidx = eidx[order]
        counts = np.bincount(self._arc_src, minlength=n)
        self._indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(counts, out=self._indptr[1:])

    # ------------------------------------------------------------------ query

    def _require_finalized(self) -> None:
        if not self._finalized:
            raise NetworkStateError("network is not finalized yet")

    @property
    def stats(self) -> NetworkStats:
        self._require_finalized()
        return self._stats

    @property
    def node_count(self) -> int:
        return len(self._titles)

    @property
    def edge_count(self) -> int:
        self._require_finalized()
        return len(self._eraw)

    @property
    def csr(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """(indptr, indices, arc_src, arc_eidx) of the directed adjacency."""
        self._require_finalized()
        return self._indptr, self._indices, self._arc_src, self._arc_eidx

    def node(self, node_id: int) -> ConceptNode:
        if not 0 <= node_id < len(self._titles):
            raise ValueError(f"node id {node_id} out of range")
        return ConceptNode(node_id, self._titles[node_id], self._cats[node_id])

    def lookup(self, title: str) -> ConceptNode | None:
        self._require_finalized()
        node_id = self._key_to_id.get(title_key(title))
        return None if node_id is None else self.node(node_id)

    def resolve(self, title: str) -> ConceptNode:
        """lookup() that raises TermNotFoundError with prefix suggestions."""
        found = self.lookup(title)
        if found is None:
            raise TermNotFoundError(normalize_title(title), self.suggest(title))
        return found

    def suggest(self, term: str, limit: int = 5) -> list[str]:
        """Up to `limit` stored titles whose lookup key starts with the term's."""
        prefix = title_key(term)
        if not prefix:
            return []
        hits = [self._titles[i] for k, i in self._key_to_id.items() if k.startswith(prefix)]
        hits.sort()
        return hits[:limit]

    def neighbors(self, node_id: int) -> list[tuple[ConceptNode, EdgeRecord]]:
        """Incident edges in ascending neighbor-id order."""
        self._require_finalized()
        if not 0 <= node_id < len(self._titles):
            raise ValueError(f"node id {node_id} out of range")
        out = []
        for a in range(int(self._indptr[node_id]), int(self._indptr[node_id + 1])):
            e = int(self._arc_eidx[a])
            out.append((self.node(int(self._indices[a])),
                        EdgeRecord(int(self._eu[e]), int(self._ev[e]),
                                   int(self._eraw[e]), float(self._esem[e]))))
        return out

    def has_edge(self, a: int, b: int) -> bool:
        self._require_finalized()
        if a == b:
            return False
        row = self._indices[self._indptr[a]:self._indptr[a + 1]]
        pos = int(np.searchsorted(row, b))
        return pos < len(row) and int(row[pos]) == b

    def edges(self):
        """Iterate EdgeRecords ascending by (u, v)."""
        self._require_finalized()
        for e in range(len(self._eraw)):
            yield EdgeRecord(int(self._eu[e]), int(self._ev[e]),
                             int(self._eraw[e]), float(self._esem[e]))

    def arc_values(self, m: weighting.Mode, weight_formula: str = "strength") -> np.ndarray:
        """Per-arc fused value under a mode; cached per (normalization, alpha, formula).

        Arc order matches `csr`; local normalization divides by the arc's
        source-node strength sum (the node being exited).
        """
        self._require_finalized()
        if weight_formula not in weighting.WEIGHT_FORMULAS:
            raise ValueError(f"unknown weight formula {weight_formula!r}")
        key = (m.normalization, m.alpha, weight_formula)
        cached = self._arc_cache.get(key)
        if cached is not None:
            return cached
        raw = self._eraw[self._arc_eidx]
        sem = self._esem[self._arc_eidx]
        if m.normalization == "global":
            if self._stats.w_max == self._stats.w_min:
                norm = np.ones(len(raw), dtype=np.float64)
            else:
                norm = (raw - self._stats.w_min) / (self._stats.w_max - self._stats.w_min)
        else:
            norm = raw / self._stats.strength_sums[self._arc_src]
        values = weighting.value_array(sem, norm, m.alpha, weight_formula)
        values.setflags(write=False)
        self._arc_cache[key] = values
        return values

    def average_node_degree(self, node_ids, kind: str = "raw",
                            m: weighting.Mode | None = None,
                            weight_formula: str = "strength") -> float:
        """Mean over nodes of the summed incident edge weights.

        kind="raw" sums raw weights (the node's strength sum);
        kind="combined" sums the fused per-arc values under `m`.
        """
        self._require_finalized()
        ids = list(node_ids)
        if not ids:
            raise ValueError("average_node_degree needs at least one node")
        if kind == "raw":
            return float(np.mean([self._stats.strength_sums[i] for i in ids]))
        if kind != "combined":
            raise ValueError(f"unknown weight kind {kind!r}")
        if m is None:
            raise ValueError("combined degree needs a mode")
        values = self.arc_values(m, weight_formula)
        sums = [float(values[self._indptr[i]:self._indptr[i + 1]].sum()) for i in ids]
        return float(np.mean(sums))

    # ------------------------------------------------------------ persistence

    def save(self, directory) -> None:
        self._require_finalized()
        os.makedirs(directory, exist_ok=True)
        nodes_path = os.path.join(directory, NODES_FILE)
        edges_path = os.path.join(directory, EDGES_FILE)

        lines = []
        for i, title in enumerate(self._titles):
            lines.append(f"{i}\t{title}\t{'|'.join(self._cats[i])}\n")
        _write_bytes(nodes_path, "".join(lines).encode("utf-8"))

        lines = []
        for e in range(len(self._eraw)):
            lines.append(f"{int(self._eu[e])}\t{int(self._ev[e])}\t"
                         f"{int(self._eraw[e])}\t{float(self._esem[e]):.6f}\n")
        _write_bytes(edges_path, "".join(lines).encode("utf-8"))

        checksums = {
            NODES_FILE: _sha256_file(nodes_path),
            EDGES_FILE: _sha256_file(edges_path),
        }
        if self.category_index is not None:
            ci_path = os.path.join(directory, CATEGORY_INDEX_FILE)
            _write_bytes(ci_path, _category_index_bytes(self.category_index))
            checksums[CATEGORY_INDEX_FILE] = _sha256_file(ci_path)

        meta = {
            "format_version": FORMAT_VERSION,
            "w_min": self._stats.w_min,
            "w_max": self._stats.w_max,
            "node_count": self._stats.node_count,
            "edge_count": self._stats.edge_count,
            "policy": _policy_dict(self.policy),
            "source_digests": dict(self.manifest.get("source_digests", {})),
            "checksums": checksums,
        }
        payload = json.dumps(meta, ensure_ascii=False, indent=2, sort_keys=True) + "\n"
        _write_bytes(os.path.join(directory, META_FILE), payload.encode("utf-8"))

    @classmethod
    def load(cls, directory) -> "SemanticNetwork":
        meta_path = os.path.join(directory, META_FILE)
        if not os.path.exists(meta_path):
            raise MissingNetworkFileError(f"missing {META_FILE} in {directory}")
        with open(meta_path, encoding="utf-8") as fh:
            meta = json.load(fh)
        version = meta.get("format_version")
        if version != FORMAT_VERSION:
            raise VersionMismatchError(
                f"network format {version!r} unsupported (expected {FORMAT_VERSION})")
        for name, expected in meta["checksums"].items():
            path = os.path.join(directory, name)
            if not os.path.exists(path):
                raise MissingNetworkFileError(f"missing {name} in {directory}")
            actual = _sha256_file(path)
            if actual != expected:
                raise ChecksumMismatchError(f"{name}: stored {expected}, computed {actual}")

        policy = IngestPolicy(**meta["policy"])
        net = cls(policy=policy)
        net.manifest = {"policy": _policy_dict(policy),
                        "source_digests": dict(meta.get("source_digests", {}))}

        with open(os.path.join(directory, NODES_FILE), encoding="utf-8") as fh:
            for line in fh:
                parts = line.rstrip("\n").split("\t")
                if len(parts) != 3:
                    raise PersistenceError(f"malformed node row: {line!r}")
                node_id, title, cats = int(parts[0]), parts[1], parts[2]
                if node_id != len(net._titles):
                    raise PersistenceError(f"non-dense node id {node_id}")
                net._titles.append(title)
                net._cats.append(tuple(cats.split("|")) if cats else ())
                net._canonical.append(bool(net._cats[-1]))
                net._key_to_id[title.casefold()] = node_id

        us, vs, raws, sems = [], [], [], []
        with open(os.path.join(directory, EDGES_FILE), encoding="utf-8") as fh:
            for line in fh:
                parts = line.rstrip("\n").split("\t")
                if len(parts) != 4:
                    raise PersistenceError(f"malformed edge row: {line!r}")
                us.append(int(parts[0]))
                vs.append(int(parts[1]))
                raws.append(int(parts[2]))
                sems.append(float(parts[3]))
        if not us:
            raise PersistenceError("edges.tsv has no rows")
        if max(max(us), max(vs)) >= len(net._titles):
            raise PersistenceError("edges.tsv references a node id beyond nodes.tsv")

        stats = net._finalize_arrays(
            np.array(us, dtype=np.int64), np.array(vs, dtype=np.int64),
            np.array(raws, dtype=np.int64), np.array(sems, dtype=np.float64))
        for name, value in (("w_min", stats.w_min), ("w_max", stats.w_max),
                            ("node_count", stats.node_count),
                            ("edge_count", stats.edge_count)):
            if meta[name] != value:
                raise PersistenceError(
                    f"meta.json {name}={meta[name]} but recomputation gives {value}")

        ci_path = os.path.join(directory, CATEGORY_INDEX_FILE)
        if CATEGORY_INDEX_FILE in meta["checksums"]:
            net.category_index = _load_category_index(ci_path, policy.category_depth)
        return net


def _policy_dict(policy: IngestPolicy) -> dict:
    return {
        "category_depth": policy.category_depth,
        "max_links_per_article": policy.max_links_per_article,
        "exclude_colon_titles": policy.exclude_colon_titles,
    }


def _write_bytes(path, data: bytes) -> None:
    with open(path, "wb") as fh:
        fh.write(data)


def _sha256_file(path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            digest.update(chunk)
    return digest.hexdigest()


def _category_index_bytes(index: CategoryIndex) -> bytes:
    rows = []
    for name in sorted(index.admitted, key=title_key):
        mains = "|".join(sorted(index.origins_of(name)))
        rows.append(f"{name}\t{mains}\n")
    return "".join(rows).encode("utf-8")


def _load_category_index(path, depth: int) -> CategoryIndex:
    admitted: list[str] = []
    origins: dict[str, frozenset[str]] = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            parts = line.rstrip("\n").split("\t")
            if len(parts) != 2:
                raise PersistenceError(f"malformed category row: {line!r}")
            name, mains = parts
            admitted.append(name)
            origins[title_key(name)] = frozenset(mains.split("|")) if mains else frozenset()
    return CategoryIndex(depth_limit=depth, admitted=frozenset(admitted),
                         origins=origins, _keys=frozenset(title_key(n) for n in admitted))
