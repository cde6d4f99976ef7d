"""Canonical JSON payloads shared by the CLI and the HTTP API.

Both interfaces must emit byte-identical JSON for the same query, so
every payload is built here and rendered with one dumps configuration
(sorted keys, compact separators, raw UTF-8).
"""

from __future__ import annotations

import json

from . import weighting
from .evaluation import category_distribution
from .graph import ConceptNode, SemanticNetwork
from .retrieval import ExploreHit, PathResult
from ._core import BACKEND

SCHEMA_VERSION = 1

NEIGHBOR_CAP = 50


def dumps(payload: dict) -> str:
    return json.dumps(payload, ensure_ascii=False, sort_keys=True,
                      separators=(",", ":"))


def _concept(node: ConceptNode) -> dict:
    return {"id": node.id, "title": node.title, "categories": list(node.categories)}


def explore_payload(hits: list[ExploreHit]) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "hits": [
            {
                "concept": _concept(h.concept),
                "distance": h.distance,
                "hops": h.hops,
                "witness_path": list(h.witness_path),
            }
            for h in hits
        ],
    }


def path_payload(results: list[PathResult]) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "paths": [
            {
                "nodes": list(p.nodes),
                "strengths": list(p.strengths),
                "aggregate": p.aggregate,
                "hops": p.hops,
            }
            for p in results
        ],
    }


def concept_payload(network: SemanticNetwork, node: ConceptNode) -> dict:
    """A node plus its strongest neighbors under the general mode."""
    m = weighting.mode("explore_general")
    stats = network.stats
    entries = []
    for neighbor, edge in network.neighbors(node.id):
        norm = weighting.global_normalize(edge.raw_weight, stats.w_min, stats.w_max)
        strength = weighting.combined_strength(edge.semantic_weight, norm, m).value
        entries.append((strength, neighbor, edge))
    entries.sort(key=lambda t: (-t[0], t[1].id))
    return {
        "schema_version": SCHEMA_VERSION,
        "concept": _concept(node),
        "neighbors": [
            {
                "concept": _concept(neighbor),
                "raw_weight": edge.raw_weight,
                "semantic_weight": edge.semantic_weight,
                "strength": strength,
            }
            for strength, neighbor, edge in entries[:NEIGHBOR_CAP]
        ],
    }


def stats_payload(network: SemanticNetwork) -> dict:
    stats = network.stats
    counts = None
    if network.category_index is not None:
        counts = category_distribution(network)
    return {
        "schema_version": SCHEMA_VERSION,
        "node_count": stats.node_count,
        "edge_count": stats.edge_count,
        "w_min": stats.w_min,
        "w_max": stats.w_max,
        "category_counts": counts,
    }


def health_payload(network: SemanticNetwork) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "status": "ok",
        "backend": BACKEND,
        "node_count": network.stats.node_count,
        "edge_count": network.stats.edge_count,
    }


def error_payload(message: str, code: str, suggestions: list[str] | None = None) -> dict:
    payload = {"schema_version": SCHEMA_VERSION, "error": message, "code": code}
    if suggestions is not None:
        payload["suggestions"] = suggestions
    return payload
