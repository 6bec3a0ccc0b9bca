"""Thin command-line client for the workbench service.

Every subcommand serializes its arguments into a service request and prints
the response; without --server the requests run in-process against the same
application a deployed server would mount.  Exit codes: 0 success, 1 check
failures, 2 usage or schema errors.
"""

from __future__ import annotations

import argparse
import json
import sys


def _client(server: str | None):
    if server:
        import httpx

        return httpx.Client(base_url=server, timeout=None)
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        from fastapi.testclient import TestClient

    from .service import create_app

    return TestClient(create_app())


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        print(f"error: no such file {path!r}", file=sys.stderr)
        raise SystemExit(2)
    except json.JSONDecodeError as exc:
        print(f"error: {path}: invalid JSON: {exc}", file=sys.stderr)
        raise SystemExit(2)


def _parse_kv(pairs):
    args = {}
    for pair in pairs:
        if "=" not in pair:
            print(f"error: argument {pair!r} is not key=value", file=sys.stderr)
            raise SystemExit(2)
        key, raw = pair.split("=", 1)
        if raw.startswith("@"):
            args[key] = _load_json(raw[1:])
        else:
            try:
                args[key] = json.loads(raw)
            except json.JSONDecodeError:
                args[key] = raw
    return args


def _fail_response(response):
    try:
        payload = response.json()
    except ValueError:
        payload = {"error": {"message": response.text}}
    print(json.dumps(payload, indent=2, sort_keys=True), file=sys.stderr)
    raise SystemExit(2)


def _post(client, path, payload):
    response = client.post(path, json=payload)
    if response.status_code >= 400:
        _fail_response(response)
    return response.json()


def cmd_validate(args) -> int:
    doc = _load_json(args.file)
    with _client(args.server) as client:
        out = _post(client, "/validate", {"document": doc})
    print(json.dumps(out, indent=2, sort_keys=True))
    return 0


def cmd_construct(args) -> int:
    with _client(args.server) as client:
        out = _post(client, "/construct", {"op": args.op, "args": _parse_kv(args.args)})
    print(json.dumps(out["result"], indent=2, sort_keys=True))
    return 0


def cmd_check(args) -> int:
    payload = {
        "filter": args.filter,
        "seed": args.seed,
        "max_ji": args.max_ji,
        "max_universe": args.max_universe,
        "samples": args.samples,
    }
    failed = 0
    with _client(args.server) as client:
        with client.stream("POST", "/check", json=payload) as response:
            if response.status_code >= 400:
                response.read()
                _fail_response(response)
            for line in response.iter_lines():
                if not line:
                    continue
                print(line)
                record = json.loads(line)
                if "summary" in record:
                    failed = record["summary"]["failed"]
    return 1 if failed else 0


def cmd_gen(args) -> int:
    params = _parse_kv(args.params)
    if args.exhaustive:
        params["exhaustive"] = True
    if args.max_ji is not None:
        params["max_ji"] = args.max_ji
    if args.max_universe is not None:
        params["max_universe"] = args.max_universe
    payload = {"kind": args.kind, "seed": args.seed, "count": args.count, "params": params}
    with _client(args.server) as client:
        out = _post(client, "/gen", payload)
    for instance in out["instances"]:
        print(json.dumps(instance, sort_keys=True))
    return 0


def cmd_render(args) -> int:
    doc = _load_json(args.dot)
    with _client(args.server) as client:
        out = _post(client, "/render", {"document": doc})
    print(out["dot"], end="")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pfw", description=__doc__)
    parser.add_argument("--server", help="base URL of a running workbench service")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate an instance document")
    p.add_argument("file")
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("construct", help="run a construction operation")
    p.add_argument("op")
    p.add_argument(
        "args",
        nargs="*",
        help="key=value arguments; @file.json values load JSON documents",
    )
    p.set_defaults(fn=cmd_construct)

    p = sub.add_parser("check", help="run the property-check suite")
    p.add_argument("--filter", default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-ji", type=int, default=None, dest="max_ji")
    p.add_argument("--max-universe", type=int, default=None, dest="max_universe")
    p.add_argument("--samples", type=int, default=None)
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("gen", help="generate instances")
    p.add_argument("kind", choices=["poset", "frame", "pervin", "frith", "quni"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--max-ji", type=int, default=None, dest="max_ji")
    p.add_argument("--max-universe", type=int, default=None, dest="max_universe")
    p.add_argument("params", nargs="*", help="extra key=value generator parameters")
    p.set_defaults(fn=cmd_gen)

    p = sub.add_parser("render", help="render a frame as a Hasse-diagram DOT file")
    p.add_argument("--dot", required=True, metavar="FILE")
    p.set_defaults(fn=cmd_render)

    p = sub.add_parser("serve", help="run the workbench service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(fn=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    except BrokenPipeError:
        return 0


if __name__ == "__main__":
    sys.exit(main())
