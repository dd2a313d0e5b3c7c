"""Command-line verification harness.

A thin client of the HTTP service: subcommands build a request, send it
to the FastAPI app (in-process by default, or a remote base URL via
--server), and emit one JSON report per check on stdout. A short human
summary goes to stderr unless --json is given.

Exit codes: 0 all requested checks pass, 1 a check failed or was
inconclusive, 2 usage error, 3 internal inconsistency.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from typing import Any

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3


def _client(server: str | None):
    if server:
        import httpx

        return httpx.Client(base_url=server, timeout=600.0)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        from fastapi.testclient import TestClient

        from .service.app import app

    return TestClient(app)


def _parse_c(text: str | None) -> list[str] | None:
    if text is None:
        return None
    return [part.strip() for part in text.split(",") if part.strip()]


def _emit(report: dict, as_json: bool) -> str:
    sys.stdout.write(json.dumps(report, default=str) + "\n")
    if not as_json:
        status = report.get("status", "?").upper()
        check = report.get("check", "?")
        ms = report.get("wall_time_ms", 0)
        sys.stderr.write(f"{status:12s} {check}  ({ms:.0f} ms)\n")
    return report.get("status", "fail")


def _run_request(args: argparse.Namespace, path: str, payload: dict[str, Any]) -> int:
    client = _client(args.server)
    try:
        response = client.post(path, json=payload)
    except Exception as exc:  # connection-level problems
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INTERNAL
    if response.status_code in (400, 422):
        sys.stderr.write(f"usage error: {response.text}\n")
        return EXIT_USAGE
    if response.status_code >= 500:
        sys.stderr.write(f"internal inconsistency: {response.text}\n")
        return EXIT_INTERNAL
    body = response.json()
    reports = body if isinstance(body, list) else [body]
    statuses = [_emit(rep, args.json) for rep in reports]
    return EXIT_PASS if all(s == "pass" for s in statuses) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cherednik",
        description="Exact verification of Dunkl/PBW/monodromy/Hecke claims",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--server", help="base URL of a running service (default: in-process)")
    common.add_argument(
        "--json", action="store_true", help="machine output only (suppress stderr summary)"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def leaf(group_sub, name: str, help_text: str):
        return group_sub.add_parser(name, help=help_text, parents=[common])

    verify = sub.add_parser("verify", help="algebraic verification checks")
    vsub = verify.add_subparsers(dest="verify_command", required=True)

    p = leaf(vsub, "dunkl", "commutativity of the deformed direction operators")
    p.add_argument("--group", default="S3")
    p.add_argument("--deg", type=int, default=6)

    p = leaf(vsub, "pbw", "normal-form span dimension count")
    p.add_argument("--group", default="Z2")
    p.add_argument("--deg", type=int, default=3)

    p = leaf(vsub, "euler", "grading element commutation relations")
    p.add_argument("--group", default="Z2")

    p = leaf(vsub, "satake", "center vs spherical truncation at t=0")
    p.add_argument("--group", default="Z2")
    p.add_argument("--deg", type=int, default=4)

    p = leaf(vsub, "consistency", "product vs representation on random words")
    p.add_argument("--group", default="Z2")
    p.add_argument("--pairs", type=int, default=100)
    p.add_argument("--max-len", type=int, default=4)
    p.add_argument("--deg", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)

    p = leaf(vsub, "quasi", "rank-1 quasiinvariant closure and series")
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--deg", type=int, default=12)

    p = leaf(vsub, "all", "the whole verification suite")
    p.add_argument("--quick", action="store_true", help="reduce randomized sampling counts")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--steps", type=int, default=4096)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--workers", type=int, default=4)

    kz = sub.add_parser("kz", help="rank-1 local monodromy model")
    ksub = kz.add_subparsers(dest="kz_command", required=True)

    p = leaf(ksub, "monodromy", "numeric vs exact loop eigenvalues")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--c", help="comma-separated values, e.g. 0.1 or 1/10,2/10")
    p.add_argument("--eta", default="0")
    p.add_argument("--steps", type=int, default=4096)
    p.add_argument("--tol", type=float, default=1e-8)

    p = leaf(ksub, "tau", "parameter transform and exact round-trip")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--c")
    p.add_argument("--eta", default="0")

    p = leaf(ksub, "roots", "symbolic character/root multiset identity")
    p.add_argument("--n", type=int, default=2)

    hecke = sub.add_parser("hecke", help="orbifold group deformations")
    hsub = hecke.add_subparsers(dest="hecke_command", required=True)

    p = leaf(hsub, "dim", "rank of the truncated deformation")
    p.add_argument("--kind", choices=["cyclic", "a2"], default="cyclic")
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--trunc", type=int, default=2)

    p = leaf(hsub, "obstruction", "sphere determinant constraint")
    p.add_argument("--signature", default="g=0;2,3,3")

    p = leaf(hsub, "group", "coset enumeration of the orbifold group")
    p.add_argument("--signature", default="g=0;2,3,3")
    p.add_argument("--max-cosets", type=int, default=10_000)

    p = leaf(hsub, "verdict", "expected flatness classification")
    p.add_argument("--signature", default="g=0;2,3,5")
    p.add_argument("--max-cosets", type=int, default=10_000)

    p = sub.add_parser("serve", help="run the HTTP service", parents=[common])
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_PASS

    if args.command == "serve":
        import uvicorn

        from .service.app import app

        uvicorn.run(app, host=args.host, port=args.port)
        return EXIT_PASS

    if args.command == "verify":
        cmd = args.verify_command
        if cmd == "dunkl":
            return _run_request(args, "/verify/dunkl", {"group": args.group, "deg": args.deg})
        if cmd == "pbw":
            return _run_request(args, "/verify/pbw", {"group": args.group, "deg": args.deg})
        if cmd == "euler":
            return _run_request(args, "/verify/euler", {"group": args.group})
        if cmd == "satake":
            return _run_request(args, "/verify/satake", {"group": args.group, "deg": args.deg})
        if cmd == "consistency":
            return _run_request(
                args,
                "/verify/consistency",
                {
                    "group": args.group,
                    "pairs": args.pairs,
                    "max_len": args.max_len,
                    "deg": args.deg,
                    "seed": args.seed,
                },
            )
        if cmd == "quasi":
            return _run_request(args, "/verify/quasi", {"m": args.m, "deg": args.deg})
        if cmd == "all":
            return _run_request(
                args,
                "/verify/all",
                {
                    "quick": args.quick,
                    "seed": args.seed,
                    "steps": args.steps,
                    "tol": args.tol,
                    "workers": args.workers,
                },
            )

    if args.command == "kz":
        cmd = args.kz_command
        if cmd == "monodromy":
            return _run_request(
                args,
                "/kz/monodromy",
                {
                    "n": args.n,
                    "c": _parse_c(args.c),
                    "eta": args.eta,
                    "steps": args.steps,
                    "tol": args.tol,
                },
            )
        if cmd == "tau":
            return _run_request(
                args, "/kz/tau", {"n": args.n, "c": _parse_c(args.c), "eta": args.eta}
            )
        if cmd == "roots":
            return _run_request(args, "/kz/roots", {"n": args.n})

    if args.command == "hecke":
        cmd = args.hecke_command
        if cmd == "dim":
            return _run_request(
                args, "/hecke/dim", {"kind": args.kind, "n": args.n, "trunc": args.trunc}
            )
        if cmd == "obstruction":
            return _run_request(args, "/hecke/obstruction", {"signature": args.signature})
        if cmd == "group":
            return _run_request(
                args,
                "/hecke/group",
                {"signature": args.signature, "max_cosets": args.max_cosets},
            )
        if cmd == "verdict":
            return _run_request(
                args,
                "/hecke/verdict",
                {"signature": args.signature, "max_cosets": args.max_cosets},
            )

    parser.error(f"unhandled command {args.command!r}")
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
