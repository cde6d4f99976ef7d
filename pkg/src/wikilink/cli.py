"""Command-line driver: build, explore, path, eval, serve.

Exit codes: 0 success, 1 user error (bad flags, unknown terms, missing
files), 2 internal error.  `--json` prints the same canonical payloads
the HTTP API serves.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys

from . import evaluation, retrieval, serialize
from .build import build_network
from .errors import WikiLinkError
from .graph import SemanticNetwork
from .ingest import IngestPolicy

logger = logging.getLogger(__name__)

ENV_NETWORK = "WIKILINK_NETWORK"


def _add_network_arg(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--network", default=os.environ.get(ENV_NETWORK),
                        help=f"network directory (default: ${ENV_NETWORK})")


def _add_weight_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--alpha-general", type=float, default=0.3,
                        help="semantic coefficient for general/basic modes")
    parser.add_argument("--alpha-specific", type=float, default=0.2,
                        help="semantic coefficient for specific/professional modes")
    parser.add_argument("--weight-formula", choices=["strength", "literal"],
                        default="strength",
                        help="fusion formula (literal reproduces the printed form)")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wikilink",
                                     description="Encyclopedia-derived semantic network")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="ingest a dump into a network directory")
    p.add_argument("--dump", required=True, help="MediaWiki XML export")
    p.add_argument("--vectors", help="word-vector file for semantic weights")
    p.add_argument("--out", required=True, help="output network directory")
    p.add_argument("--category-depth", type=int, default=3)
    p.add_argument("--max-links", type=int, default=500)
    p.set_defaults(func=_cmd_build)

    p = sub.add_parser("explore", help="ranked neighborhood of a concept")
    p.add_argument("term")
    p.add_argument("--mode", choices=["general", "specific"], default="general")
    p.add_argument("--min-step", type=int, default=1)
    p.add_argument("--k", type=int, default=retrieval.DEFAULT_EXPLORE_K)
    p.add_argument("--max-cost", type=float, default=None)
    p.add_argument("--json", action="store_true")
    _add_network_arg(p)
    _add_weight_args(p)
    p.set_defaults(func=_cmd_explore)

    p = sub.add_parser("path", help="implicit-association paths between two concepts")
    p.add_argument("from_term", metavar="from")
    p.add_argument("to_term", metavar="to")
    p.add_argument("--mode", choices=["basic", "professional"], default="basic")
    p.add_argument("--k", type=int, default=retrieval.DEFAULT_PATH_K)
    p.add_argument("--max-hops", type=int, default=retrieval.DEFAULT_MAX_HOPS)
    p.add_argument("--pool-size", type=int, default=retrieval.DEFAULT_POOL_SIZE)
    p.add_argument("--json", action="store_true")
    _add_network_arg(p)
    _add_weight_args(p)
    p.set_defaults(func=_cmd_path)

    p = sub.add_parser("eval", help="evaluation harness")
    esub = p.add_subparsers(dest="eval_command", required=True)

    e = esub.add_parser("concepts", help="golden concept coverage")
    e.add_argument("--golden", required=True, help="golden_concepts.tsv")
    e.add_argument("--json", action="store_true")
    _add_network_arg(e)
    e.set_defaults(func=_cmd_eval_concepts)

    e = esub.add_parser("relations", help="golden relationship coverage")
    e.add_argument("--golden", required=True, help="golden_relations.tsv")
    e.add_argument("--json", action="store_true")
    _add_network_arg(e)
    e.set_defaults(func=_cmd_eval_relations)

    e = esub.add_parser("categories", help="main-category node distribution")
    e.add_argument("--json", action="store_true")
    _add_network_arg(e)
    e.set_defaults(func=_cmd_eval_categories)

    e = esub.add_parser("ratings", help="rater agreement statistics")
    e.add_argument("--ratings", required=True, help="ratings.csv")
    e.add_argument("--critical", type=float, default=None,
                   help="override the bundled critical value")
    e.add_argument("--json", action="store_true")
    _add_network_arg(e)
    e.set_defaults(func=_cmd_eval_ratings)

    p = sub.add_parser("serve", help="serve the HTTP JSON API")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8800)
    p.add_argument("--ui", default=None, help="directory of static UI files to mount at /")
    _add_network_arg(p)
    _add_weight_args(p)
    p.set_defaults(func=_cmd_serve)

    return parser


def _load_network(args) -> SemanticNetwork:
    if not args.network:
        raise WikiLinkError(
            f"no network directory: pass --network or set ${ENV_NETWORK}")
    return SemanticNetwork.load(args.network)


def _cmd_build(args) -> int:
    policy = IngestPolicy(category_depth=args.category_depth,
                          max_links_per_article=args.max_links)
    network = build_network(args.dump, vectors_path=args.vectors, policy=policy)
    network.save(args.out)
    stats = network.stats
    print(f"built {stats.node_count} nodes, {stats.edge_count} edges "
          f"(w_min={stats.w_min}, w_max={stats.w_max}) -> {args.out}")
    return 0


def _cmd_explore(args) -> int:
    network = _load_network(args)
    query = retrieval.ExploreQuery(term=args.term, mode=args.mode,
                                   min_step=args.min_step, k=args.k,
                                   max_cost=args.max_cost)
    hits = retrieval.explore(network, query,
                             alpha_general=args.alpha_general,
                             alpha_specific=args.alpha_specific,
                             weight_formula=args.weight_formula)
    if args.json:
        print(serialize.dumps(serialize.explore_payload(hits)))
        return 0
    if not hits:
        print("no results")
        return 0
    width = max(len(h.concept.title) for h in hits)
    for rank, h in enumerate(hits, start=1):
        print(f"{rank:>3}  {h.concept.title:<{width}}  "
              f"dist={h.distance:.6f}  hops={h.hops}")
    return 0


def _cmd_path(args) -> int:
    network = _load_network(args)
    query = retrieval.PathQuery(from_term=args.from_term, to_term=args.to_term,
                                mode=args.mode, k=args.k, max_hops=args.max_hops,
                                pool_size=args.pool_size)
    results = retrieval.search_path(network, query,
                                    alpha_general=args.alpha_general,
                                    alpha_specific=args.alpha_specific,
                                    weight_formula=args.weight_formula)
    if args.json:
        print(serialize.dumps(serialize.path_payload(results)))
        return 0
    if not results:
        print(f"no path within {args.max_hops} hops")
        return 0
    for rank, p in enumerate(results, start=1):
        chain = " -> ".join(p.nodes)
        print(f"{rank:>3}  score={p.aggregate:.6f}  hops={p.hops}  {chain}")
    return 0


def _cmd_eval_concepts(args) -> int:
    network = _load_network(args)
    golden = evaluation.load_golden_concepts(args.golden)
    report = evaluation.concept_coverage(network, golden)
    payload = {
        "schema_version": serialize.SCHEMA_VERSION,
        "C_R": report.c_r,
        "n_C": report.n_c,
        "N_C": report.n_total,
        "per_category": {
            cat: {"found": f, "total": t, "rate": rate}
            for cat, (f, t, rate) in report.per_category.items()
        },
    }
    if args.json:
        print(serialize.dumps(payload))
        return 0
    print(f"concept coverage: {report.n_c}/{report.n_total} = {report.c_r:.4f}")
    for cat, (f, t, rate) in report.per_category.items():
        print(f"  {cat}: {f}/{t} = {rate:.4f}")
    return 0


def _cmd_eval_relations(args) -> int:
    network = _load_network(args)
    golden = evaluation.load_golden_relations(args.golden)
    report = evaluation.relationship_coverage(network, golden)
    payload = {
        "schema_version": serialize.SCHEMA_VERSION,
        "R": report.r,
        "retrieved": report.retrieved,
        "total": report.total,
    }
    if args.json:
        print(serialize.dumps(payload))
        return 0
    print(f"relationship coverage: {report.retrieved}/{report.total} = {report.r:.4f}")
    return 0


def _cmd_eval_categories(args) -> int:
    network = _load_network(args)
    counts = evaluation.category_distribution(network)
    payload = {"schema_version": serialize.SCHEMA_VERSION, "category_counts": counts}
    if args.json:
        print(serialize.dumps(payload))
        return 0
    for name, count in counts.items():
        print(f"{name}: {count}")
    return 0


def _cmd_eval_ratings(args) -> int:
    network = _load_network(args)
    ratings = evaluation.load_ratings(args.ratings)
    alpha, groups = evaluation.ratings_report(network, ratings, critical=args.critical)
    payload = {
        "schema_version": serialize.SCHEMA_VERSION,
        "cronbach_alpha": alpha,
        "groups": [
            {"group": g.group, "n": g.n, "rho": g.rho,
             "critical": g.critical, "decision": g.decision}
            for g in groups
        ],
    }
    if args.json:
        print(serialize.dumps(payload))
        return 0
    print(f"cronbach alpha: {alpha:.4f}")
    for g in groups:
        print(f"  group {g.group}: n={g.n} rho={g.rho:.4f} "
              f"critical={g.critical} -> {g.decision}")
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .api import ServiceConfig, create_app

    config = ServiceConfig(network_dir=args.network or "",
                           host=args.host, port=args.port,
                           alpha_general=args.alpha_general,
                           alpha_specific=args.alpha_specific,
                           weight_formula=args.weight_formula,
                           ui_dir=args.ui)
    if not config.network_dir:
        raise WikiLinkError(
            f"no network directory: pass --network or set ${ENV_NETWORK}")
    app = create_app(config)
    uvicorn.run(app, host=config.host, port=config.port, log_level="info")
    return 0


def main(argv=None) -> int:
    logging.basicConfig(level=os.environ.get("WIKILINK_LOG", "WARNING"))
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    try:
        return args.func(args)
    except (WikiLinkError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # pragma: no cover - internal failures
        logger.exception("internal error")
        print(f"internal error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
