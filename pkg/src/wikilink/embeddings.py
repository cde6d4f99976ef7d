"""Word vectors with subword composition for out-of-vocabulary terms.

Vectors are loaded from a plain-text file (``<count> <dim>`` header, one
``<token> <floats...>`` line per entry).  A token containing a boundary
marker (``<`` or ``>``) is stored as a character n-gram vector, anything
else as a word vector; n-grams without a marker cannot be expressed in
the file format and would load as words, so files should carry the
prefix/suffix grams.  In-memory tables may hold arbitrary n-gram keys.

Unknown words are composed by summing the vectors of their character
n-grams (the word is wrapped in the markers first), and multi-word terms
average their word vectors.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import VectorFormatError

logger = logging.getLogger(__name__)

DEFAULT_NGRAM_MIN = 3
DEFAULT_NGRAM_MAX = 6


@dataclass
class EmbeddingTable:
    """Immutable-by-convention store of word and n-gram vectors."""

    dim: int
    word_vectors: dict[str, np.ndarray] = field(default_factory=dict)
    ngram_vectors: dict[str, np.ndarray] = field(default_factory=dict)
    nmin: int = DEFAULT_NGRAM_MIN
    nmax: int = DEFAULT_NGRAM_MAX

    def __post_init__(self):
        if self.nmin > self.nmax:
            raise ValueError(f"nmin {self.nmin} > nmax {self.nmax}")

    def __len__(self) -> int:
        return len(self.word_vectors) + len(self.ngram_vectors)


@dataclass(frozen=True)
class TermVector:
    """A term's vector and where it came from."""

    values: np.ndarray
    provenance: str  # "stored" | "composed" | "absent"

    @property
    def is_absent(self) -> bool:
        return self.provenance == "absent"


def load_vectors(path, nmin: int = DEFAULT_NGRAM_MIN,
                 nmax: int = DEFAULT_NGRAM_MAX) -> EmbeddingTable:
    """Parse a text vector file into an EmbeddingTable.

    Duplicate tokens keep the last occurrence (with a warning).  Header
    or per-line arity violations raise VectorFormatError naming the line.
    """
    words: dict[str, np.ndarray] = {}
    ngrams: dict[str, np.ndarray] = {}
    with open(path, encoding="utf-8") as fh:
        header = fh.readline()
        if not header.strip():
            raise VectorFormatError("missing '<count> <dim>' header", line_no=1)
        parts = header.split()
        if len(parts) != 2:
            raise VectorFormatError(f"bad header {header.strip()!r}", line_no=1)
        try:
            count, dim = int(parts[0]), int(parts[1])
        except ValueError:
            raise VectorFormatError(f"non-integer header {header.strip()!r}", line_no=1)
        if count < 0 or dim <= 0:
            raise VectorFormatError(f"invalid header values {header.strip()!r}", line_no=1)

        n_lines = 0
        for line_no, line in enumerate(fh, start=2):
            if not line.strip():
                continue
            n_lines += 1
            fields = line.rstrip("\n").split(" ")
            if len(fields) != dim + 1:
                raise VectorFormatError(
                    f"expected {dim} floats after the token, got {len(fields) - 1}",
                    line_no=line_no)
            token = fields[0].casefold()
            try:
                vec = np.array([float(x) for x in fields[1:]], dtype=np.float64)
            except ValueError:
                raise VectorFormatError("non-numeric vector component", line_no=line_no)
            target = ngrams if ("<" in token or ">" in token) else words
            if token in target:
                logger.warning("duplicate token %r at line %d; last wins", token, line_no)
            target[token] = vec

    if n_lines != count:
        raise VectorFormatError(
            f"header declares {count} entries but file has {n_lines}")
    return EmbeddingTable(dim=dim, word_vectors=words, ngram_vectors=ngrams,
                          nmin=nmin, nmax=nmax)


def char_ngrams(term: str, nmin: int, nmax: int) -> list[str]:
    """All length nmin..nmax windows of the boundary-wrapped term, in order."""
    if not term:
        raise ValueError("term must be non-empty")
    wrapped = "<" + term + ">"
    out: list[str] = []
    for n in range(nmin, nmax + 1):
        for i in range(len(wrapped) - n + 1):
            out.append(wrapped[i:i + n])
    return out


def _word_vector(table: EmbeddingTable, word: str) -> tuple[np.ndarray | None, bool]:
    """Vector for one word; returns (vector | None, used_composition)."""
    stored = table.word_vectors.get(word)
    if stored is not None:
        return stored, False
    acc = None
    for gram in char_ngrams(word, table.nmin, table.nmax):
        vec = table.ngram_vectors.get(gram)
        if vec is None:
            continue
        acc = vec.copy() if acc is None else acc + vec
    return acc, True


def term_vector(table: EmbeddingTable, term: str) -> TermVector:
    """Vector for a (possibly multi-word) term.

    Words are case-folded, looked up directly, and composed from n-grams
    when unknown.  A multi-word term averages its word vectors; words
    with no stored vector and no known n-grams contribute zeros.  The
    result is "absent" (a zero vector) only when nothing was known.
    """
    words = [w for w in term.casefold().split(" ") if w]
    if not words:
        raise ValueError("term must be non-empty")
    total = np.zeros(table.dim, dtype=np.float64)
    any_known = False
    any_composed = False
    for word in words:
        vec, composed = _word_vector(table, word)
        if vec is None:
            continue
        if len(vec) != table.dim:
            raise ValueError(f"vector for {word!r} has length {len(vec)}, expected {table.dim}")
        total += vec
        any_known = True
        any_composed = any_composed or composed
    if not any_known:
        return TermVector(np.zeros(table.dim), "absent")
    return TermVector(total / len(words), "composed" if any_composed else "stored")


def vector_cosine(va: TermVector, vb: TermVector) -> float:
    """Cosine of two term vectors, clamped to [0, 1].

    Absent or zero-norm vectors give 0.0 rather than an error.
    """
    if va.is_absent or vb.is_absent:
        return 0.0
    na2 = float(np.dot(va.values, va.values))
    nb2 = float(np.dot(vb.values, vb.values))
    if na2 == 0.0 or nb2 == 0.0:
        return 0.0
    # sqrt of the product keeps cos(v, v) at exactly 1.0
    cos = float(np.dot(va.values, vb.values)) / math.sqrt(na2 * nb2)
    return min(1.0, max(0.0, cos))


def semantic_weight(table: EmbeddingTable, a: str, b: str) -> float:
    """Clamped cosine similarity of two terms' vectors."""
    return vector_cosine(term_vector(table, a), term_vector(table, b))
