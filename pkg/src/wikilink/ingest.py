"""Streaming MediaWiki dump ingestion.

Turns a pages-articles XML export into a stream of RawPage items, parses
wikitext into ArticleRecords (main-text links, see-also links, category
tags), builds the category admission index by bounded BFS from the main
categories, and applies the admission policy (colon titles out, category
depth, per-article link cap).

Parsing is deliberately shallow: templates are stripped without
expansion, tables/infoboxes are not interpreted, and only ``[[...]]``
link syntax is resolved.
"""

from __future__ import annotations

import logging
import os
import re
import xml.etree.ElementTree as ET
from collections import deque
from dataclasses import dataclass, field

from .errors import DumpParseError

logger = logging.getLogger(__name__)

# The 13 top-level categories used for admission and for category
# distribution reporting.
MAIN_CATEGORIES: tuple[str, ...] = (
    "cultural", "geography", "health", "history", "human", "mathematics",
    "natural", "people", "philosophy", "religion", "society", "technology",
    "reference",
)

DEFAULT_CATEGORY_DEPTH = 3
DEFAULT_MAX_LINKS = 500

_CHUNK_SIZE = 64 * 1024

_REDIRECT_RE = re.compile(r"^\s*#REDIRECT\s*:?\s*\[\[([^\]\|#]+)", re.IGNORECASE)
_COMMENT_RE = re.compile(r"<!--.*?-->", re.DOTALL)
_HEADING_RE = re.compile(r"^(={2,5})\s*(.*?)\s*\1\s*$")


def normalize_title(raw: str) -> str:
    """Display form of a title: underscores to spaces, whitespace collapsed."""
    return " ".join(raw.replace("_", " ").split())


def title_key(raw: str) -> str:
    """Case-insensitive lookup key for a title."""
    return normalize_title(raw).casefold()


@dataclass(frozen=True)
class RawPage:
    title: str
    wikitext: str
    namespace_hint: str = ""

    @property
    def redirect_target(self) -> str | None:
        m = _REDIRECT_RE.match(self.wikitext)
        return m.group(1).strip() if m else None

    @property
    def is_redirect(self) -> bool:
        return self.redirect_target is not None


@dataclass(frozen=True)
class ArticleRecord:
    title: str
    main_links: tuple[str, ...]
    see_also: tuple[str, ...]
    categories: tuple[str, ...]


@dataclass(frozen=True)
class IngestPolicy:
    category_depth: int = DEFAULT_CATEGORY_DEPTH
    max_links_per_article: int = DEFAULT_MAX_LINKS
    exclude_colon_titles: bool = True

    def __post_init__(self):
        if self.category_depth < 0:
            raise ValueError("category_depth must be >= 0")
        if self.max_links_per_article < 2:
            raise ValueError("max_links_per_article must be >= 2")


@dataclass(frozen=True)
class AdmissionDecision:
    admitted: bool
    reason: str | None = None
    record: ArticleRecord | None = None


def _local_tag(tag: str) -> str:
    return tag.rsplit("}", 1)[-1]


def _child(elem: ET.Element, name: str) -> ET.Element | None:
    for node in elem:
        if _local_tag(node.tag) == name:
            return node
    return None


def _extract_page(elem: ET.Element) -> RawPage | None:
    title_el = _child(elem, "title")
    title = (title_el.text or "").strip() if title_el is not None else ""
    if not title:
        logger.warning("skipping <page> without a usable title")
        return None
    text = ""
    revision = _child(elem, "revision")
    if revision is not None:
        text_el = _child(revision, "text")
        if text_el is not None and text_el.text:
            text = text_el.text
    redirect_el = _child(elem, "redirect")
    if redirect_el is not None and not _REDIRECT_RE.match(text):
        target = redirect_el.get("title", "").strip()
        if target:
            text = f"#REDIRECT [[{target}]]\n" + text
    hint = title.split(":", 1)[0] if ":" in title else ""
    return RawPage(title=title, wikitext=text, namespace_hint=hint)


def parse_dump(source):
    """Yield one RawPage per <page> element, streaming with bounded memory.

    `source` is a path or a binary file object.  Malformed XML raises
    DumpParseError carrying the byte offset; pages without a usable title
    are skipped with a warning.
    """
    fh = open(source, "rb") if isinstance(source, (str, bytes, os.PathLike)) else source
    owns = fh is not source
    try:
        yield from _parse_dump_stream(fh)
    finally:
        if owns:
            fh.close()


def _parse_dump_stream(fh):
    parser = ET.XMLPullParser(events=("start", "end"))
    root: ET.Element | None = None
    bytes_before = 0   # bytes fed in completed chunks
    lines_before = 0   # newlines seen in completed chunks
    chunk = b""
    while True:
        chunk = fh.read(_CHUNK_SIZE)
        try:
            if chunk:
                parser.feed(chunk)
            else:
                parser.close()
            # feed errors are deferred into the event queue, so the
            # consumption loop needs the same wrapping
            for event, elem in parser.read_events():
                if event == "start":
                    if root is None:
                        root = elem
                    continue
                if _local_tag(elem.tag) == "page":
                    page = _extract_page(elem)
                    elem.clear()
                    if root is not None:
                        root.clear()  # drop finished children; keeps memory flat
                    if page is not None:
                        yield page
        except ET.ParseError as exc:
            raise DumpParseError(
                str(exc),
                byte_offset=_error_offset(exc, chunk, bytes_before, lines_before),
                line=exc.position[0],
            ) from exc
        if not chunk:
            return
        bytes_before += len(chunk)
        lines_before += chunk.count(b"\n")


def _error_offset(exc: ET.ParseError, chunk: bytes,
                  bytes_before: int, lines_before: int) -> int:
    # expat reports an absolute (line, column); recover the byte offset by
    # locating that line inside the chunk being fed when it failed.  The
    # result never exceeds the total bytes fed (close-time errors point
    # at end-of-input).
    fed = bytes_before + len(chunk)
    err_line, err_col = exc.position
    newlines_into_chunk = err_line - 1 - lines_before
    if newlines_into_chunk < 0 or not chunk:
        return min(bytes_before + max(err_col, 0), fed)
    pos = 0
    for _ in range(newlines_into_chunk):
        nl = chunk.find(b"\n", pos)
        if nl == -1:
            return fed
        pos = nl + 1
    return min(bytes_before + pos + err_col, fed)


def _strip_markup(text: str) -> str:
    """Remove HTML comments and {{...}} templates (no expansion)."""
    text = _COMMENT_RE.sub("", text)
    if "<!--" in text:  # unterminated comment swallows the rest
        text = text.split("<!--", 1)[0]
    if "{{" not in text:
        return text
    out: list[str] = []
    depth = 0
    i = 0
    n = len(text)
    while i < n:
        if text.startswith("{{", i):
            depth += 1
            i += 2
        elif text.startswith("}}", i) and depth > 0:
            depth -= 1
            i += 2
        else:
            if depth == 0:
                out.append(text[i])
            i += 1
    if depth > 0:
        logger.warning("unbalanced '{{' — dropping trailing template text")
    return "".join(out)


def _line_links(line: str) -> list[str]:
    """Raw inner texts of [[...]] occurrences on one line.

    An unclosed ``[[`` is salvaged by closing at end-of-line.
    """
    inners: list[str] = []
    pos = 0
    while True:
        start = line.find("[[", pos)
        if start == -1:
            return inners
        end = line.find("]]", start + 2)
        if end == -1:
            logger.warning("unbalanced [[ salvaged at end of line: %r", line[start:start + 40])
            inners.append(line[start + 2:])
            return inners
        inners.append(line[start + 2:end])
        pos = end + 2


def parse_article(page: RawPage) -> ArticleRecord:
    """Resolve a page's wikitext into links, see-also links, and categories."""
    if page.is_redirect:
        raise ValueError(f"redirect page {page.title!r} cannot be parsed as an article")
    title = normalize_title(page.title)
    own_key = title_key(title)

    main: list[str] = []
    see: list[str] = []
    cats: list[str] = []
    seen_main: set[str] = set()
    seen_see: set[str] = set()
    seen_cats: set[str] = set()

    in_see_also = False
    see_also_level = 0
    for line in _strip_markup(page.wikitext).split("\n"):
        heading = _HEADING_RE.match(line)
        if heading:
            level = len(heading.group(1))
            if heading.group(2).strip().casefold() == "see also":
                in_see_also = True
                see_also_level = level
            elif in_see_also and level <= see_also_level:
                in_see_also = False
            continue
        for inner in _line_links(line):
            target = inner.split("|", 1)[0]
            head = target.split("#", 1)[0]
            if ":" in head:
                ns, _, rest = head.partition(":")
                if ns.strip().casefold() == "category":
                    cat = normalize_title(rest)
                    if cat and title_key(cat) not in seen_cats:
                        seen_cats.add(title_key(cat))
                        cats.append(cat)
                continue  # non-article namespace link
            name = normalize_title(head)
            if not name:
                continue
            key = title_key(name)
            if key == own_key:
                continue
            if in_see_also:
                if key not in seen_see:
                    seen_see.add(key)
                    see.append(name)
            elif key not in seen_main:
                seen_main.add(key)
                main.append(name)
    return ArticleRecord(title=title, main_links=tuple(main),
                         see_also=tuple(see), categories=tuple(cats))


@dataclass(frozen=True)
class CategoryIndex:
    depth_limit: int
    admitted: frozenset[str]                    # display names
    origins: dict[str, frozenset[str]] = field(default_factory=dict, repr=False)
    _keys: frozenset[str] = frozenset()

    def contains(self, category: str) -> bool:
        return title_key(category) in self._keys

    def origins_of(self, category: str) -> frozenset[str]:
        return self.origins.get(title_key(category), frozenset())

    def __len__(self) -> int:
        return len(self._keys)


def build_category_index(pages, depth: int = DEFAULT_CATEGORY_DEPTH) -> CategoryIndex:
    """BFS the category tree from the 13 main categories, depth-bounded.

    `pages` is any iterable of RawPage; only pages in the Category
    namespace contribute.  A category page's own [[Category:X]] tags name
    its parents, so edges run parent -> child.  Cycles are ignored via
    the per-source visited set.  Mains that never appear in the dump are
    still admitted (zero-hop members) with a warning.
    """
    if depth < 0:
        raise ValueError("depth must be >= 0")
    children: dict[str, list[str]] = {}
    display: dict[str, str] = {}
    page_keys: set[str] = set()
    for page in pages:
        if page.namespace_hint.casefold() != "category" or page.is_redirect:
            continue
        name = normalize_title(page.title.split(":", 1)[1])
        if not name:
            continue
        key = title_key(name)
        page_keys.add(key)
        display[key] = name  # the category's own page wins the display form
        record_links = parse_article(RawPage(title=page.title, wikitext=page.wikitext))
        for parent in record_links.categories:
            pkey = title_key(parent)
            display.setdefault(pkey, parent)
            children.setdefault(pkey, []).append(key)

    admitted_keys: set[str] = set()
    origins: dict[str, set[str]] = {}
    for main in MAIN_CATEGORIES:
        mkey = title_key(main)
        if mkey not in page_keys and mkey not in children:
            logger.warning("main category %r absent from dump", main)
        display.setdefault(mkey, main)
        visited = {mkey}
        frontier = deque([(mkey, 0)])
        while frontier:
            key, dist = frontier.popleft()
            admitted_keys.add(key)
            origins.setdefault(key, set()).add(main)
            if dist == depth:
                continue
            for child in children.get(key, ()):
                if child not in visited:
                    visited.add(child)
                    frontier.append((child, dist + 1))
    return CategoryIndex(
        depth_limit=depth,
        admitted=frozenset(display[k] for k in admitted_keys),
        origins={k: frozenset(v) for k, v in origins.items()},
        _keys=frozenset(admitted_keys),
    )


def admit_article(record: ArticleRecord, index: CategoryIndex,
                  policy: IngestPolicy) -> AdmissionDecision:
    """Apply the admission policy; pure function of its inputs."""
    if policy.exclude_colon_titles and ":" in record.title:
        return AdmissionDecision(False, reason="colon in title")
    if not any(index.contains(c) for c in record.categories):
        return AdmissionDecision(False, reason="no admitted category")

    see_keys = {title_key(t) for t in record.see_also}
    union = set(see_keys)
    cap = policy.max_links_per_article
    kept = len(record.main_links)
    for i, name in enumerate(record.main_links):
        key = title_key(name)
        if key not in union and len(union) >= cap:
            kept = i  # longest prefix whose union with see-also fits the cap
            break
        union.add(key)
    if kept < len(record.main_links):
        record = ArticleRecord(title=record.title,
                               main_links=record.main_links[:kept],
                               see_also=record.see_also,
                               categories=record.categories)
    return AdmissionDecision(True, record=record)
