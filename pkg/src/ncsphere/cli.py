"""Command-line front end: report, iso, congruence, serve.

The first three subcommands run in process by default and become thin
HTTP clients when --server is given; both paths produce the same bytes
for the same input. Exit codes: 0 success, 2 invalid input (with a
diagnostic naming the first violated rule), 3 enumeration-guard breach.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

import httpx

from .errors import EnumerationGuardError, InvalidMatrixError
from .faces import DEFAULT_MAX_BITS
from .parsing import (
    matrix_from_entry_grid,
    matrix_from_inline,
    parse_rational,
    payload_from_json_text,
)
from .report import (
    FACE_MODES,
    InvariantReport,
    build_report,
    congruence_payload,
    iso_payload,
    render_congruence_text,
    render_iso_text,
    render_report_text,
)
from .theta import SkewRationalMatrix

__all__ = ["main", "entry"]

# accepts "-1/3" style angles as positionals, which argparse would
# otherwise read as option strings
_NEGATIVE_VALUE = re.compile(r"^-\d+(/\d+)?$")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ncsphere",
        description="Exact invariants of rational noncommutative tori and spheres.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    rep = sub.add_parser("report", help="full invariant report for one matrix")
    rep.add_argument("input", nargs="?", default=None, metavar="INPUT",
                     help="JSON file path, or - for stdin")
    rep.add_argument("--matrix", default=None, metavar="ROWS",
                     help="inline matrix, rows split by ';', cells by ','")
    rep.add_argument("--kind", choices=("sphere", "torus"), default=None)
    rep.add_argument("--n-tensor", type=int, default=None, metavar="N")
    rep.add_argument("--faces", choices=FACE_MODES, default="all")
    rep.add_argument("--oracle", action="store_true")
    rep.add_argument("--max-bits", type=int, default=DEFAULT_MAX_BITS, metavar="B")
    rep.add_argument("--format", choices=("json", "text"), default="json")
    rep.add_argument("--server", default=None, metavar="URL")

    iso = sub.add_parser("iso", help="isomorphism decision for the angle families")
    iso._negative_number_matcher = _NEGATIVE_VALUE
    iso.add_argument("kind", choices=("sphere3", "torus2"))
    iso.add_argument("theta")
    iso.add_argument("n", type=int)
    iso.add_argument("theta_prime", metavar="theta'")
    iso.add_argument("n_prime", type=int, metavar="n'")
    iso.add_argument("--format", choices=("json", "text"), default="text")
    iso.add_argument("--server", default=None, metavar="URL")

    cong = sub.add_parser("congruence", help="integral congruence decision")
    cong._negative_number_matcher = _NEGATIVE_VALUE
    cong.add_argument("first", metavar="THETA",
                      help="inline matrix (contains ';' or ','), file path, or -")
    cong.add_argument("second", metavar="THETA'")
    cong.add_argument("--format", choices=("json", "text"), default="text")
    cong.add_argument("--server", default=None, metavar="URL")

    srv = sub.add_parser("serve", help="run the HTTP service")
    srv.add_argument("--host", default="127.0.0.1")
    srv.add_argument("--port", type=int, default=8000)
    return parser


def _read_source(path: str, stdin_used: list[bool]) -> str:
    if path == "-":
        if stdin_used[0]:
            raise InvalidMatrixError("stdin may be used for at most one input")
        stdin_used[0] = True
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InvalidMatrixError(f"cannot read input file {path!r}: {exc}") from exc


def _report_request(args: argparse.Namespace, stdin_used: list[bool]) -> dict:
    if (args.input is None) == (args.matrix is None):
        raise InvalidMatrixError("provide exactly one of INPUT or --matrix")
    if args.matrix is not None:
        theta = matrix_from_inline(args.matrix)
        entries = [[str(x) for x in row] for row in theta.entries]
        n = theta.n
        kind = args.kind or "sphere"
        n_tensor = args.n_tensor if args.n_tensor is not None else 1
    else:
        payload = payload_from_json_text(_read_source(args.input, stdin_used))
        entries = payload["entries"]
        n = payload["n"]
        kind = args.kind or payload["kind"]
        n_tensor = args.n_tensor if args.n_tensor is not None else payload["n_tensor"]
    if n_tensor < 1:
        raise InvalidMatrixError("'n_tensor' must be a positive integer")
    if args.max_bits < 1:
        raise InvalidMatrixError("--max-bits must be a positive integer")
    return {
        "entries": entries,
        "n": n,
        "n_tensor": n_tensor,
        "kind": kind,
        "faces": args.faces,
        "oracle": args.oracle,
        "max_bits": args.max_bits,
    }


def _matrix_source(text: str, stdin_used: list[bool]) -> SkewRationalMatrix:
    if ";" in text or "," in text:
        return matrix_from_inline(text)
    payload = payload_from_json_text(_read_source(text, stdin_used))
    return matrix_from_entry_grid(payload["entries"], payload["n"])


def _remote(server: str, endpoint: str, body: dict) -> dict:
    resp = httpx.post(server.rstrip("/") + endpoint, json=body, timeout=120.0)
    if resp.status_code in (400, 422):
        detail = resp.json().get("detail", resp.text)
        raise InvalidMatrixError(f"server rejected input: {detail}")
    if resp.status_code == 413:
        detail = resp.json().get("detail", resp.text)
        raise EnumerationGuardError(f"server guard: {detail}")
    resp.raise_for_status()
    return resp.json()


def _emit(payload: dict, fmt: str, renderer) -> None:
    if fmt == "json":
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    else:
        sys.stdout.write(renderer(payload))


def _cmd_report(args: argparse.Namespace) -> int:
    stdin_used = [False]
    request = _report_request(args, stdin_used)
    if args.server:
        data = _remote(args.server, "/report", request)
    else:
        theta = matrix_from_entry_grid(request["entries"], request["n"])
        data = build_report(
            theta,
            kind=request["kind"],
            n_tensor=request["n_tensor"],
            faces_mode=request["faces"],
            with_oracle=request["oracle"],
            max_bits=request["max_bits"],
        ).to_dict()
    _emit(data, args.format, lambda d: render_report_text(InvariantReport.from_dict(d)))
    return 0


def _cmd_iso(args: argparse.Namespace) -> int:
    theta = parse_rational(args.theta)
    theta_prime = parse_rational(args.theta_prime)
    if args.server:
        data = _remote(
            args.server,
            "/iso",
            {
                "kind": args.kind,
                "theta": str(theta),
                "n": args.n,
                "theta_prime": str(theta_prime),
                "n_prime": args.n_prime,
            },
        )
    else:
        data = iso_payload(args.kind, theta, args.n, theta_prime, args.n_prime)
    _emit(data, args.format, render_iso_text)
    return 0


def _cmd_congruence(args: argparse.Namespace) -> int:
    stdin_used = [False]
    a = _matrix_source(args.first, stdin_used)
    b = _matrix_source(args.second, stdin_used)
    if args.server:
        data = _remote(
            args.server,
            "/congruence",
            {
                "entries": [[str(x) for x in row] for row in a.entries],
                "entries_prime": [[str(x) for x in row] for row in b.entries],
            },
        )
    else:
        data = congruence_payload(a, b)
    _emit(data, args.format, render_congruence_text)
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "report":
            return _cmd_report(args)
        if args.command == "iso":
            return _cmd_iso(args)
        if args.command == "congruence":
            return _cmd_congruence(args)
        return _cmd_serve(args)
    except InvalidMatrixError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except EnumerationGuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def entry() -> None:
    sys.exit(main(sys.argv[1:]))
