"""wikilink: an encyclopedia-derived semantic network for ideation retrieval.

Concepts are article titles; edges fuse co-occurrence counts (+1 main
text, +9 see-also) with semantic cosine similarity.  Four retrieval
modes (explore general/specific, path basic/professional) rank
neighborhoods and implicit-association paths over the network.
"""

from ._core import BACKEND
from .graph import ConceptNode, EdgeRecord, NetworkStats, SemanticNetwork
from .ingest import ArticleRecord, CategoryIndex, IngestPolicy, RawPage
from .retrieval import ExploreHit, ExploreQuery, PathQuery, PathResult, explore, search_path

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "ArticleRecord",
    "CategoryIndex",
    "ConceptNode",
    "EdgeRecord",
    "ExploreHit",
    "ExploreQuery",
    "IngestPolicy",
    "NetworkStats",
    "PathQuery",
    "PathResult",
    "RawPage",
    "SemanticNetwork",
    "explore",
    "search_path",
    "__version__",
]
