"""End-to-end network construction from a dump file.

Two passes over the XML keep memory bounded: the first collects the
redirect map and the category pages, the second parses articles,
rewrites link targets through resolved redirect chains, applies the
admission policy, and accumulates pair counts.  Semantic weights are
attached at finalize from the vector table, with one cached vector per
distinct title.
"""

from __future__ import annotations

import hashlib
import logging

from . import embeddings
from .graph import SemanticNetwork
from .ingest import (
    IngestPolicy,
    RawPage,
    ArticleRecord,
    build_category_index,
    normalize_title,
    parse_article,
    parse_dump,
    admit_article,
    title_key,
)

logger = logging.getLogger(__name__)

_REDIRECT_CHAIN_LIMIT = 16


def _sha256(path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            digest.update(chunk)
    return digest.hexdigest()


def resolve_redirects(redirects: dict[str, str]) -> dict[str, str]:
    """Collapse redirect chains to their final display-form target.

    `redirects` maps title_key -> raw target.  Chains longer than the
    limit and cycles keep the first hop (logged), never dangle.
    """
    resolved: dict[str, str] = {}
    for start_key, first_target in redirects.items():
        target = normalize_title(first_target)
        seen = {start_key}
        hops = 0
        while hops < _REDIRECT_CHAIN_LIMIT:
            key = title_key(target)
            if key in seen:  # cycle: keep the immediate target
                target = normalize_title(first_target)
                break
            if key not in redirects:
                break
            seen.add(key)
            target = normalize_title(redirects[key])
            hops += 1
        else:
            logger.warning("redirect chain from %r too long; keeping %r",
                           start_key, target)
        resolved[start_key] = target
    return resolved


def _rewrite_links(names, redirect_map: dict[str, str], own_key: str) -> tuple[str, ...]:
    """Map link targets through redirects; re-dedup; drop self and colon hits."""
    out: list[str] = []
    seen: set[str] = set()
    for name in names:
        target = redirect_map.get(title_key(name), name)
        key = title_key(target)
        if key == own_key or ":" in target or key in seen:
            continue
        seen.add(key)
        out.append(target)
    return tuple(out)


def _semantic_provider(table: embeddings.EmbeddingTable):
    cache: dict[str, embeddings.TermVector] = {}

    def vector(title: str) -> embeddings.TermVector:
        tv = cache.get(title)
        if tv is None:
            tv = embeddings.term_vector(table, title)
            cache[title] = tv
        return tv

    def weight(a: str, b: str) -> float:
        return embeddings.vector_cosine(vector(a), vector(b))

    return weight


def build_network(dump_path, vectors_path=None,
                  policy: IngestPolicy | None = None) -> SemanticNetwork:
    """Ingest a dump (and optional vector file) into a finalized network."""
    policy = policy or IngestPolicy()

    redirects: dict[str, str] = {}
    category_pages: list[RawPage] = []
    for page in parse_dump(dump_path):
        target = page.redirect_target
        if target is not None:
            redirects[title_key(page.title)] = target
        elif page.namespace_hint.casefold() == "category":
            category_pages.append(page)
    redirect_map = resolve_redirects(redirects)
    index = build_category_index(category_pages, policy.category_depth)

    network = SemanticNetwork(policy=policy)
    network.category_index = index
    admitted = 0
    for page in parse_dump(dump_path):
        if page.is_redirect or page.namespace_hint.casefold() == "category":
            continue
        record = parse_article(page)
        own_key = title_key(record.title)
        record = ArticleRecord(
            title=record.title,
            main_links=_rewrite_links(record.main_links, redirect_map, own_key),
            see_also=_rewrite_links(record.see_also, redirect_map, own_key),
            categories=record.categories,
        )
        decision = admit_article(record, index, policy)
        if not decision.admitted:
            logger.debug("rejected %r: %s", record.title, decision.reason)
            continue
        network.accumulate(decision.record)
        admitted += 1
    logger.info("accumulated %d articles", admitted)

    digests = {"dump": _sha256(dump_path)}
    semantic = None
    if vectors_path is not None:
        table = embeddings.load_vectors(vectors_path)
        semantic = _semantic_provider(table)
        digests["vectors"] = _sha256(vectors_path)
    network.manifest["source_digests"] = digests

    network.finalize(semantic=semantic)
    return network
