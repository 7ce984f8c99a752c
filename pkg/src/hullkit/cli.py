"""Command line front end.

Every subcommand is a thin client of the HTTP service: the payload goes
through the same request models whether the app runs in-process (the
default, via the ASGI transport) or behind --server URL. Exit codes:
0 ok, 1 bad usage or bad input data, 2 violated invariants, 3 refused size.
"""
from __future__ import annotations

import argparse
import asyncio
import json
import sys

import httpx


class _CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2; we use 1
        self.print_usage(sys.stderr)
        sys.stderr.write("hullkit: error: %s\n" % message)
        raise SystemExit(1)


def _read_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise _CliError(1, "cannot read %s: %s" % (path, exc))
    except json.JSONDecodeError as exc:
        raise _CliError(
            1, "%s: bad JSON at line %d column %d" % (path, exc.lineno, exc.colno)
        )


def _parse_int_list(raw, what):
    try:
        return [int(x) for x in raw.split(",")]
    except ValueError:
        raise _CliError(1, "%s must be comma-separated integers" % what)


def _config_payload(args) -> dict | None:
    cfg = {}
    if getattr(args, "bound", None) is not None:
        cfg["enumeration_bound"] = args.bound
    if getattr(args, "seed", None) is not None:
        cfg["seed"] = args.seed
    return cfg or None


def _ideal_payload(args, payload: dict):
    spec = args.ideal
    if spec.startswith("@"):
        d = _read_json(spec[1:])
        if not isinstance(d, dict) or "elements" not in d:
            raise _CliError(1, "%s: an ideal file needs carrier maps" % spec[1:])
        payload["ideal_elements"] = d["elements"]
    else:
        payload["ideal"] = spec


def _request(method: str, path: str, payload, server):
    if server:
        try:
            with httpx.Client(base_url=server, timeout=600.0) as client:
                return client.request(method, path, json=payload)
        except httpx.HTTPError as exc:
            raise _CliError(1, "cannot reach %s: %s" % (server, exc))

    async def go():
        from .service.app import app

        transport = httpx.ASGITransport(app=app)
        async with httpx.AsyncClient(
            transport=transport, base_url="http://service.internal", timeout=600.0
        ) as client:
            return await client.request(method, path, json=payload)

    return asyncio.run(go())


def _flat_lines(d, prefix=""):
    for key in sorted(d):
        label = prefix + str(key)
        value = d[key]
        if isinstance(value, dict):
            yield from _flat_lines(value, label + ".")
        elif isinstance(value, str):
            yield "%s: %s" % (label, value)
        else:
            yield "%s: %s" % (label, json.dumps(value))


def _emit(args, body: dict) -> None:
    dot = body.pop("dot", None)
    if dot is not None and getattr(args, "dot", None):
        with open(args.dot, "w") as fh:
            fh.write(dot)
    if args.format == "json":
        print(json.dumps(body, indent=2, sort_keys=True))
    else:
        for line in _flat_lines(body):
            print(line)


def _dispatch(args, path: str, payload: dict) -> int:
    resp = _request("POST", path, payload, args.server)
    try:
        body = resp.json()
    except ValueError:
        raise _CliError(2, "malformed response (status %d)" % resp.status_code)
    if resp.status_code == 200:
        _emit(args, body)
        return 0
    if "detail" in body:  # request-model validation
        message = json.dumps(body["detail"])
        kind = "ValidationError"
    else:
        message, kind = body.get("error", resp.text), body.get("kind", "Error")
    sys.stderr.write("hullkit: %s: %s\n" % (kind, message))
    if resp.status_code in (400, 422):
        return 1
    if resp.status_code == 413:
        return 3
    return 2


def cmd_end(args) -> int:
    payload = {
        "algebra": _read_json(args.algebra),
        "gens": args.gens,
        "dot": bool(args.dot),
        "config": _config_payload(args),
    }
    return _dispatch(args, "/end", payload)


def _ideal_request(args) -> dict:
    payload = {
        "algebra": _read_json(args.algebra),
        "gens": args.gens,
        "config": _config_payload(args),
    }
    _ideal_payload(args, payload)
    return payload


def cmd_hull(args) -> int:
    return _dispatch(args, "/hull", _ideal_request(args))


def cmd_quotient(args) -> int:
    return _dispatch(args, "/quotient", _ideal_request(args))


def cmd_check(args) -> int:
    payload = _ideal_request(args)
    payload["properties"] = [p for p in args.properties.split(",") if p]
    return _dispatch(args, "/check", payload)


def cmd_sn(args) -> int:
    payload = {
        "n": args.n,
        "which": args.which,
        "allow_irregular": args.allow_irregular,
        "dot": bool(args.dot),
        "config": _config_payload(args),
    }
    return _dispatch(args, "/sn", payload)


def cmd_semiring(args) -> int:
    payload = {"semiring": _read_json(args.semiring), "config": _config_payload(args)}
    if args.ideal.startswith("gens:"):
        payload["ideal_gens"] = _parse_int_list(args.ideal[5:], "ideal generators")
    else:
        payload["ideal"] = _parse_int_list(args.ideal, "ideal positions")
    if args.idems is not None:
        payload["idems"] = _parse_int_list(args.idems, "idempotent positions")
    return _dispatch(args, "/semiring", payload)


def cmd_serve(args) -> int:
    import uvicorn

    from .service.app import app

    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--server", metavar="URL", help="remote service base URL")
    common.add_argument("--bound", type=int, help="override the enumeration bound")
    common.add_argument("--seed", type=int, help="seed for sampled checks")

    parser = _Parser(prog="hullkit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("end", parents=[common], help="endomorphism monoid summary")
    p.add_argument("algebra", help="algebra JSON file")
    p.add_argument("--gens", nargs="+", type=int, metavar="POS",
                   help="generator positions in the carrier")
    p.add_argument("--dot", metavar="FILE", help="write the egg-box diagram here")
    p.set_defaults(run=cmd_end)

    for name, run, extra in (
        ("hull", cmd_hull, "translational hull report"),
        ("quotient", cmd_quotient, "separable quotient pipeline"),
        ("check", cmd_check, "structural condition verdicts"),
    ):
        p = sub.add_parser(name, parents=[common], help=extra)
        p.add_argument("algebra", help="algebra JSON file")
        p.add_argument(
            "--ideal",
            required=True,
            help="rank:k | non-units | gens:i,j,... | @mapfile",
        )
        p.add_argument("--gens", nargs="+", type=int, metavar="POS")
        if name == "check":
            p.add_argument(
                "--properties",
                default="rep,sep,reductive,balanced",
                help="comma list from rep,sep,reductive,balanced",
            )
        p.set_defaults(run=run)

    p = sub.add_parser(
        "sn", parents=[common], help="endomorphism monoid of a symmetric group"
    )
    p.add_argument("n", type=int)
    p.add_argument("--which", choices=("full", "non_aut", "even_generated"))
    p.add_argument("--allow-irregular", action="store_true")
    p.add_argument("--dot", metavar="FILE")
    p.set_defaults(run=cmd_sn)

    p = sub.add_parser("semiring", parents=[common], help="semiring hull checks")
    p.add_argument("semiring", help="semiring JSON file")
    p.add_argument("--ideal", required=True, help="gens:i,j,... or i,j,...")
    p.add_argument("--idems", help="orthogonal idempotents for the refined check")
    p.set_defaults(run=cmd_semiring)

    p = sub.add_parser("serve", parents=[common], help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(run=cmd_serve)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except _CliError as exc:
        sys.stderr.write("hullkit: %s\n" % exc)
        return exc.code


if __name__ == "__main__":
    raise SystemExit(main())
