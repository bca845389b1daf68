"""Command-line client for the solver service.

Every subcommand talks to the HTTP service: by default an in-process
instance of the app (no network, nothing to start), or a remote instance
via --server.  This module therefore only reads files, shapes requests,
formats responses, and maps error kinds to exit codes:

    0 success/ok   1 usage   2 parse or validation   3 certificate
    violation   4 oracle guard

Arena files may carry rational "p/q" weight strings; they are scaled to
integers through the service before the real request, and the factor is
reported on standard error when it is not 1.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

_KIND_EXIT = {"parse": 2, "validation": 2, "certificate": 3, "guard": 4}

VARIANTS = ("limsup-strict", "limsup-weak", "liminf-strict", "liminf-weak")


class _Parser(argparse.ArgumentParser):
    # usage problems exit 1, not argparse's default 2 (2 means bad input data here)
    def error(self, message):
        self.exit(1, f"{self.prog}: error: {message}\n")


class ClientError(RuntimeError):
    """Transport-level failure talking to the service."""


class Client:
    """Minimal POST wrapper over either transport."""

    def __init__(self, server: str | None):
        if server is None:
            import warnings

            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                from fastapi.testclient import TestClient

            from .service.app import app

            self._http = TestClient(app, raise_server_exceptions=False)
        else:
            import httpx

            self._http = httpx.Client(base_url=server, timeout=600.0)

    def post(self, path: str, payload: dict) -> tuple[int, object]:
        try:
            resp = self._http.post(path, json=payload)
        except Exception as exc:
            raise ClientError(str(exc)) from exc
        try:
            body = resp.json()
        except ValueError:
            body = {"detail": {"kind": "parse", "message": resp.text}}
        return resp.status_code, body


def _fail(status: int, body: object) -> int:
    detail = body.get("detail") if isinstance(body, dict) else None
    if isinstance(detail, dict) and "kind" in detail:
        print(f"error: {detail.get('message', '')}", file=sys.stderr)
        return _KIND_EXIT.get(detail["kind"], 2)
    # request-shape rejection or unexpected server answer
    print(f"error: HTTP {status}: {json.dumps(body, sort_keys=True)}", file=sys.stderr)
    return 2


def _dumps(obj: object) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _read_json(path: str, what: str) -> tuple[int, object | None]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        print(f"error: cannot read {what} {path!r}: {exc}", file=sys.stderr)
        return 2, None
    try:
        return 0, json.loads(text)
    except json.JSONDecodeError as exc:
        print(f"error: {what} {path!r} is not valid JSON: {exc}", file=sys.stderr)
        return 2, None


def _load_arena(client: Client, path: str) -> tuple[int, object | None]:
    """Read an arena file and scale rational weights away via the service."""
    code, obj = _read_json(path, "arena")
    if code:
        return code, None
    status, body = client.post("/scale", {"arena": obj})
    if status != 200:
        return _fail(status, body), None
    if body["factor"] != 1:
        print(f"scaled weights by factor {body['factor']}", file=sys.stderr)
    return 0, body["arena"]


def _int_list(text: str) -> list[int]:
    if not text:
        return []
    return [int(part) for part in text.split(",")]


def _cmd_u_edge(args, client: Client) -> int:
    payload = {
        "m_src": args.m,
        "t_src": args.t,
        "weight": args.w,
        "m_dst": args.m2,
        "t_dst": args.t2,
    }
    status, body = client.post("/u-edge", payload)
    if status != 200:
        return _fail(status, body)
    print("true" if body["edge"] else "false")
    return 0


def _cmd_mp_eval(args, client: Client) -> int:
    try:
        prefix = _int_list(args.prefix)
        cycle = _int_list(args.cycle)
    except ValueError:
        print("error: --prefix/--cycle must be comma-separated integers", file=sys.stderr)
        return 1
    status, body = client.post(
        "/mp-eval", {"prefix": prefix, "cycle": cycle, "variant": args.variant}
    )
    if status != 200:
        return _fail(status, body)
    print(f"{body['value']} {'true' if body['satisfied'] else 'false'}")
    return 0


def _cmd_solve(args, client: Client) -> int:
    code, arena = _load_arena(client, args.arena)
    if code:
        return code
    status, body = client.post("/solve", {"arena": arena})
    if status != 200:
        return _fail(status, body)
    text = _dumps(body)
    print(text)
    if args.emit_cert:
        Path(args.emit_cert).write_text(text + "\n")
    return 0


def _cmd_check_cert(args, client: Client) -> int:
    code, arena = _load_arena(client, args.arena)
    if code:
        return code
    code, cert = _read_json(args.cert, "certificate")
    if code:
        return code
    status, body = client.post("/check-cert", {"arena": arena, "certificate": cert})
    if status != 200:
        return _fail(status, body)
    print(_dumps(body))
    return 0 if body["ok"] else 3


def _cmd_value(args, client: Client) -> int:
    code, arena = _load_arena(client, args.arena)
    if code:
        return code
    status, body = client.post("/value", {"arena": arena, "vertex": args.vertex})
    if status != 200:
        return _fail(status, body)
    print(body["value"])
    return 0


def _cmd_simulate(args, client: Client) -> int:
    code, arena = _load_arena(client, args.arena)
    if code:
        return code
    code, cert = _read_json(args.cert, "certificate")
    if code:
        return code
    payload = {
        "arena": arena,
        "certificate": cert,
        "start": args.start,
        "steps": args.steps,
        "seed": args.seed,
    }
    status, body = client.post("/simulate", payload)
    if status != 200:
        return _fail(status, body)
    for s in body["steps"]:
        print(
            f"step {s['step']}: {s['src']} -({s['weight']})-> {s['dst']}"
            f" edge={s['edge']} sum={s['prefix_sum']}"
            f" ok={'true' if s['within_bound'] else 'false'}"
        )
    all_ok = body["all_within_bound"]
    print(f"bound m*sum <= f0 - length: {'true' if all_ok else 'false'}")
    return 0 if all_ok else 3


def _cmd_morphism(args, client: Client) -> int:
    code, arena = _load_arena(client, args.arena)
    if code:
        return code
    status, body = client.post("/morphism", {"arena": arena, "root": args.root})
    if status != 200:
        return _fail(status, body)
    print(_dumps(body))
    return 0


def _cmd_oracle(args, client: Client) -> int:
    code, arena = _load_arena(client, args.arena)
    if code:
        return code
    status, body = client.post("/oracle", {"arena": arena})
    if status != 200:
        return _fail(status, body)
    print(_dumps(body))
    return 0


def _cmd_gen(args, client: Client) -> int:
    status, body = client.post(
        "/gen", {"n": args.n, "d": args.d, "wmax": args.wmax, "seed": args.seed}
    )
    if status != 200:
        return _fail(status, body)
    text = _dumps(body) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_selftest(args, client: Client) -> int:
    status, body = client.post("/selftest", {"quick": args.quick})
    if status != 200:
        return _fail(status, body)
    for line in body["report"]:
        print(line)
    if body["ok"]:
        print("all suites passed")
        return 0
    print("selftest FAILED", file=sys.stderr)
    return 2


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return n


def _nonnegative(text: str) -> int:
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return n


def _build_parser() -> _Parser:
    p = _Parser(prog="mpg", description="mean-payoff game toolkit (service client)")
    p.add_argument("--server", help="base URL of a running service (default: in-process)")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("u-edge", help="evaluate the universal-graph edge predicate")
    s.add_argument("m", type=int)
    s.add_argument("t", type=int)
    s.add_argument("w", type=int)
    s.add_argument("m2", type=int, metavar="m'")
    s.add_argument("t2", type=int, metavar="t'")
    s.set_defaults(fn=_cmd_u_edge)

    s = sub.add_parser("mp-eval", help="evaluate an ultimately periodic word")
    s.add_argument("--prefix", default="", help="comma-separated integers")
    s.add_argument("--cycle", required=True, help="comma-separated integers, nonempty")
    s.add_argument("--variant", choices=VARIANTS, default="limsup-strict")
    s.set_defaults(fn=_cmd_mp_eval)

    s = sub.add_parser("solve", help="compute winning regions, measure, strategy")
    s.add_argument("arena")
    s.add_argument("--emit-cert", metavar="FILE")
    s.set_defaults(fn=_cmd_solve)

    s = sub.add_parser("check-cert", help="verify a certificate against an arena")
    s.add_argument("arena")
    s.add_argument("cert")
    s.set_defaults(fn=_cmd_check_cert)

    s = sub.add_parser("value", help="exact game value at a vertex")
    s.add_argument("arena")
    s.add_argument("--vertex", required=True)
    s.set_defaults(fn=_cmd_value)

    s = sub.add_parser("simulate", help="play a certified strategy against random moves")
    s.add_argument("arena")
    s.add_argument("cert")
    s.add_argument("--from", dest="start", required=True)
    s.add_argument("--steps", type=_positive, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(fn=_cmd_simulate)

    s = sub.add_parser("morphism", help="build a label map into the universal graph")
    s.add_argument("arena")
    s.add_argument("--root", required=True)
    s.set_defaults(fn=_cmd_morphism)

    s = sub.add_parser("oracle", help="brute-force winning set (small arenas)")
    s.add_argument("arena")
    s.set_defaults(fn=_cmd_oracle)

    s = sub.add_parser("gen", help="generate a seeded random arena")
    s.add_argument("-n", type=_positive, required=True, help="vertex count")
    s.add_argument("-d", type=_positive, required=True, help="max out-degree")
    s.add_argument("-w", dest="wmax", type=_nonnegative, required=True, help="weight bound")
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("-o", dest="out", metavar="FILE")
    s.set_defaults(fn=_cmd_gen)

    s = sub.add_parser("selftest", help="run the seeded invariant suites")
    s.add_argument("--quick", action="store_true")
    s.set_defaults(fn=_cmd_selftest)

    return p


def _glue_list_flags(argv: list[str]) -> list[str]:
    # let "--cycle -1,0" through: weight lists may start with a minus sign,
    # which argparse would otherwise read as an option
    out: list[str] = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in ("--cycle", "--prefix") and i + 1 < len(argv):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    if argv is None:
        argv = sys.argv[1:]
    argv = _glue_list_flags(list(argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (None, 0) else 1
    client = Client(args.server)
    try:
        return args.fn(args, client)
    except ClientError as exc:
        print(f"error: cannot reach server: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
