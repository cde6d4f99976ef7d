"""HTTP JSON API over a loaded network.

Thin FastAPI layer: every payload comes from serialize so responses are
byte-identical to the CLI's --json output.  The network is loaded once
at startup and never mutated; all handlers are read-only.
"""

from __future__ import annotations

from dataclasses import dataclass

from fastapi import FastAPI, Query, Request, Response
from fastapi.exceptions import RequestValidationError

from . import retrieval, serialize
from .errors import TermNotFoundError
from .graph import SemanticNetwork


@dataclass(frozen=True)
class ServiceConfig:
    network_dir: str
    host: str = "127.0.0.1"
    port: int = 8800
    alpha_general: float = 0.3
    alpha_specific: float = 0.2
    weight_formula: str = "strength"
    default_k: int = retrieval.DEFAULT_EXPLORE_K
    default_min_step: int = 1
    default_max_hops: int = retrieval.DEFAULT_MAX_HOPS
    ui_dir: str | None = None

    def __post_init__(self):
        if not 1 <= self.port <= 65535:
            raise ValueError(f"port {self.port} outside [1, 65535]")


def _json(payload: dict, status: int = 200) -> Response:
    return Response(content=serialize.dumps(payload),
                    media_type="application/json", status_code=status)


def _not_found(exc: TermNotFoundError) -> Response:
    return _json(serialize.error_payload(str(exc), "not_found",
                                         suggestions=exc.suggestions), 404)


def _bad_request(message: str) -> Response:
    return _json(serialize.error_payload(message, "bad_request"), 400)


def create_app(config: ServiceConfig) -> FastAPI:
    network = SemanticNetwork.load(config.network_dir)
    app = FastAPI(title="wikilink", docs_url=None, redoc_url=None)

    @app.exception_handler(RequestValidationError)
    async def _on_validation(request: Request, exc: RequestValidationError):
        return _bad_request(str(exc))

    @app.exception_handler(Exception)
    async def _on_internal(request: Request, exc: Exception):
        return _json(serialize.error_payload(f"internal error: {exc}", "internal"), 500)

    @app.get("/api/explore")
    def api_explore(term: str,
                    mode: str = "general",
                    min_step: int = Query(default=config.default_min_step),
                    k: int = Query(default=config.default_k),
                    max_cost: float | None = None):
        try:
            query = retrieval.ExploreQuery(term=term, mode=mode, min_step=min_step,
                                           k=k, max_cost=max_cost)
        except ValueError as exc:
            return _bad_request(str(exc))
        try:
            hits = retrieval.explore(network, query,
                                     alpha_general=config.alpha_general,
                                     alpha_specific=config.alpha_specific,
                                     weight_formula=config.weight_formula)
        except TermNotFoundError as exc:
            return _not_found(exc)
        return _json(serialize.explore_payload(hits))

    @app.get("/api/path")
    def api_path(from_term: str = Query(alias="from"),
                 to_term: str = Query(alias="to"),
                 mode: str = "basic",
                 k: int = Query(default=retrieval.DEFAULT_PATH_K),
                 max_hops: int = Query(default=config.default_max_hops),
                 pool_size: int = Query(default=retrieval.DEFAULT_POOL_SIZE)):
        try:
            query = retrieval.PathQuery(from_term=from_term, to_term=to_term,
                                        mode=mode, k=k, max_hops=max_hops,
                                        pool_size=pool_size)
        except ValueError as exc:
            return _bad_request(str(exc))
        try:
            results = retrieval.search_path(network, query,
                                            alpha_general=config.alpha_general,
                                            alpha_specific=config.alpha_specific,
                                            weight_formula=config.weight_formula)
        except TermNotFoundError as exc:
            return _not_found(exc)
        return _json(serialize.path_payload(results))

    @app.get("/api/concept/{title}")
    def api_concept(title: str):
        try:
            node = network.resolve(title)
        except TermNotFoundError as exc:
            return _not_found(exc)
        return _json(serialize.concept_payload(network, node))

    @app.get("/api/stats")
    def api_stats():
        return _json(serialize.stats_payload(network))

    @app.get("/api/health")
    def api_health():
        return _json(serialize.health_payload(network))

    if config.ui_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=config.ui_dir, html=True), name="ui")

    return app


def serve(config: ServiceConfig) -> None:  # pragma: no cover - thin wrapper
    """Run the API with uvicorn (blocking)."""
    import uvicorn

    uvicorn.run(create_app(config), host=config.host, port=config.port)
