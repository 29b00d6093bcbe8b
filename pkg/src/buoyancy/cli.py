"""Command line driver: replay, digest, validate, serve.

Exit codes: 0 success, 2 parse/validation failure, 3 runtime event failure.
"""

import argparse
import json
import sys

from .errors import EngineError, ReplayError, TraceError
from .graph import load_graph
from .trace import EngineConfig, export_series, parse_trace, replay


def _load(graph_path, config_path, trace_path):
    with open(graph_path) as fh:
        graph = load_graph(fh.read())
    with open(config_path) as fh:
        config = EngineConfig.from_json(fh.read())
    with open(trace_path) as fh:
        events = parse_trace(fh.read(), graph)
    return graph, config, events


def main(argv=None):
    parser = argparse.ArgumentParser(prog="buoyancy",
                                     description="memory buoyancy engine driver")
    sub = parser.add_subparsers(dest="command", required=True)

    for name in ("replay", "digest", "validate"):
        p = sub.add_parser(name)
        p.add_argument("--graph", required=True)
        p.add_argument("--config", required=True)
        p.add_argument("--trace", required=True)
        if name == "replay":
            p.add_argument("--series-out", help="write probe rows as CSV")

    p_serve = sub.add_parser("serve")
    p_serve.add_argument("--graph")
    p_serve.add_argument("--config")
    p_serve.add_argument("--trace", help="optional trace to replay before serving")
    p_serve.add_argument("--port", type=int, default=7350)
    p_serve.add_argument("--host", default="127.0.0.1")

    args = parser.parse_args(argv)

    try:
        if args.command == "validate":
            graph, config, events = _load(args.graph, args.config, args.trace)
            for warning in graph.validate():
                print(f"warning: {warning}", file=sys.stderr)
            print(f"ok: {len(graph.things)} things, {len(graph.contexts)} contexts, "
                  f"{len(events)} events")
            return 0

        if args.command in ("replay", "digest"):
            graph, config, events = _load(args.graph, args.config, args.trace)
            digest, records = replay(graph, config, events)
            if args.command == "digest":
                print(digest)
            else:
                for rec in records:
                    print(json.dumps(rec))
                if args.series_out:
                    export_series(records, args.series_out)
                print(f"digest: {digest}", file=sys.stderr)
            return 0

        if args.command == "serve":
            from .graph import SemanticGraph
            from .service import create_app
            import uvicorn
            if args.graph:
                with open(args.graph) as fh:
                    graph = load_graph(fh.read())
            else:
                graph = SemanticGraph()
            if args.config:
                with open(args.config) as fh:
                    config = EngineConfig.from_json(fh.read())
            else:
                config = EngineConfig.from_dict({})
            engine = config.build_engine(graph)
            if args.trace:
                with open(args.trace) as fh:
                    events = parse_trace(fh.read(), graph)
                replay(graph, config, events, engine=engine)
            uvicorn.run(create_app(engine), host=args.host, port=args.port)
            return 0
    except (TraceError, json.JSONDecodeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ReplayError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except EngineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
