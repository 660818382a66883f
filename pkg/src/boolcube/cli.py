"""Command-line client for the analysis service.

Every subcommand speaks the service's HTTP API.  With ``--url`` it
targets a running server; otherwise the service app is mounted
in-process, so batch usage needs no daemon and produces byte-identical
output either way.

Exit codes: 0 success, 1 at least one check failed, 2 usage or input
error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from typing import Optional

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2


def canonical_json(obj) -> str:
    """Stable rendering: sorted keys, compact separators, one newline."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def _make_client(url: Optional[str]):
    import httpx

    if url:
        return httpx.Client(base_url=url, timeout=None)
    import warnings

    with warnings.catch_warnings():
        # the in-process transport import warns about its own http pins
        warnings.simplefilter("ignore")
        from fastapi.testclient import TestClient

    from .service.app import create_app

    return TestClient(create_app())


def _post(client, path: str, payload: dict) -> dict:
    resp = client.post(path, json=payload)
    if resp.status_code != 200:
        try:
            detail = resp.json().get("detail", resp.text)
        except ValueError:
            detail = resp.text
        raise SystemExit(_usage_error(f"{path}: {detail}"))
    return resp.json()


def _usage_error(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return EXIT_USAGE


def _write_text(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="ascii") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _write_csv(rows, header, out: Optional[str]) -> None:
    if out:
        with open(out, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh)
            w.writerow(header)
            w.writerows(rows)
    else:
        w = csv.writer(sys.stdout)
        w.writerow(header)
        w.writerows(rows)


def _add_source_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--file", help="BFN1 file holding the function")
    _add_family_args(p)


def _add_family_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", help="family name (and, or, parity, dictator, "
                                    "majority, tribes, example-h, compose, "
                                    "iterate, random)")
    p.add_argument("--n", type=int, help="dimension")
    p.add_argument("--m", type=int, help="tribe width")
    p.add_argument("--tribes", type=int,
                   help="tribe count (default balances the mean)")
    p.add_argument("--k", type=int, help="coordinate index (dictator)")
    p.add_argument("--mask", type=int, help="coordinate mask (parity)")
    p.add_argument("--depth", type=int, help="iteration depth (iterate)")
    p.add_argument("--outer", help="BFN1 file for the outer function (compose)")
    p.add_argument("--inner", help="BFN1 file for the inner function "
                                   "(compose, iterate)")


def _family_spec(args) -> dict:
    spec = {"family": args.family}
    for key in ("n", "m", "k", "mask", "depth"):
        value = getattr(args, key, None)
        if value is not None:
            spec[key] = value
    if getattr(args, "tribes", None) is not None:
        spec["count"] = args.tribes
    seed = getattr(args, "seed", None)
    if seed is not None and args.family == "random":
        spec["seed"] = seed
    if getattr(args, "outer", None):
        spec["outer_bfn1"] = open(args.outer, encoding="ascii").read()
    if getattr(args, "inner", None):
        spec["inner_bfn1"] = open(args.inner, encoding="ascii").read()
    return spec


def _source_payload(args) -> dict:
    if getattr(args, "file", None):
        if getattr(args, "family", None):
            raise SystemExit(_usage_error("give either --file or --family"))
        return {"bfn1": open(args.file, encoding="ascii").read()}
    if getattr(args, "family", None):
        return {"family": _family_spec(args)}
    raise SystemExit(_usage_error("need --file or --family"))


def _split_checks(text: str) -> list:
    return [c.strip() for c in text.split(",") if c.strip()]


def _split_floats(text: str) -> list:
    return [float(x) for x in text.split(",") if x.strip()]


def cmd_construct(client, args) -> int:
    if not args.family:
        return _usage_error("construct needs --family")
    data = _post(client, "/v1/construct", {"spec": _family_spec(args)})
    if args.json:
        _write_text(canonical_json(data), args.out)
        return EXIT_OK
    info = f"n={data['n']} sha256={data['digest']}\n"
    if args.out:
        _write_text(data["bfn1"], args.out)
        sys.stdout.write(info)
    else:
        sys.stdout.write(data["bfn1"])
        sys.stderr.write(info)
    return EXIT_OK


def cmd_analyze(client, args) -> int:
    payload = {
        "source": _source_payload(args),
        "eps": args.eps,
        "include_spectrum": not args.no_spectrum,
        "checks": _split_checks(args.checks) if args.checks else [],
    }
    data = _post(client, "/v1/analyze", payload)
    _write_text(canonical_json(data["bundle"]), args.out)
    return EXIT_OK


def cmd_verify(client, args) -> int:
    modes = [bool(args.file or args.family), args.exhaustive is not None,
             args.random is not None]
    if sum(modes) != 1:
        return _usage_error(
            "choose one scope: --file/--family, --exhaustive N, or --random N")
    if args.file or args.family:
        scope = {"kind": "function"}
        src = _source_payload(args)
        scope.update(src if "bfn1" in src else {"family": src["family"]})
    elif args.exhaustive is not None:
        scope = {"kind": "exhaustive", "n": args.exhaustive}
    else:
        if args.count is None:
            return _usage_error("--random needs --count")
        scope = {"kind": "random", "n": args.random, "count": args.count,
                 "seed": args.seed}
    payload = {
        "scope": scope,
        "checks": _split_checks(args.checks),
        "include_rows": bool(args.rows_csv),
    }
    if args.parallel is not None:
        payload["parallel"] = args.parallel
    if args.rho_grid:
        payload["rho_grid"] = _split_floats(args.rho_grid)
    if args.eps_grid:
        payload["eps_grid"] = _split_floats(args.eps_grid)
    if args.friedgut_eps:
        payload["friedgut_eps"] = _split_floats(args.friedgut_eps)
    data = _post(client, "/v1/verify", payload)
    _write_text(canonical_json(data["report"]), args.out)
    if args.rows_csv and data.get("rows") is not None:
        _write_csv(data["rows"],
                   ["function", "check", "status", "slack",
                    "observed_constant"],
                   args.rows_csv)
    return EXIT_CHECK_FAILED if data["failed"] else EXIT_OK


def cmd_search(client, args) -> int:
    modes = [args.exhaustive is not None, args.random is not None,
             args.compose_greedy]
    if sum(bool(m) for m in modes) != 1:
        return _usage_error(
            "choose one strategy: --exhaustive N, --random N, or "
            "--compose-greedy")
    if args.exhaustive is not None:
        strategy = {"kind": "exhaustive", "n": args.exhaustive}
    elif args.random is not None:
        if args.count is None:
            return _usage_error("--random needs --count")
        strategy = {"kind": "random", "n": args.random, "count": args.count,
                    "seed": args.seed}
    else:
        strategy = {"kind": "compose-greedy", "depth": args.depth}
    payload = {"objective": args.objective, "strategy": strategy}
    if args.budget is not None:
        payload["budget"] = args.budget
    if args.parallel is not None:
        payload["parallel"] = args.parallel
    data = _post(client, "/v1/search", payload)
    report = data["report"]
    if args.json:
        _write_text(canonical_json(report), args.out)
        return EXIT_OK
    rows = [
        [e["rank"], format(e["value"], ".12g"), e["n"], e["bfn1"],
         json.dumps(e["metrics"], sort_keys=True, separators=(",", ":"))]
        for e in report["leaderboard"]
    ]
    _write_csv(rows, ["rank", "value", "n", "bfn1", "metrics"], args.out)
    return EXIT_OK


def cmd_sample(client, args) -> int:
    payload = {"source": _source_payload(args), "count": args.count,
               "seed": args.seed}
    data = _post(client, "/v1/sample", payload)
    if args.json:
        _write_text(canonical_json(data), args.out)
        return EXIT_OK
    rows = [[i, mask] for i, mask in enumerate(data["masks"])]
    _write_csv(rows, ["draw", "mask"], args.out)
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .service.app import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="boolcube",
        description="Exact spectral analysis of Boolean functions",
    )
    parser.add_argument("--url", help="remote service URL (default: in-process)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a family member as BFN1")
    _add_family_args(p)
    p.add_argument("--seed", type=int, default=0, help="seed (random family)")
    p.add_argument("--json", action="store_true",
                   help="emit {n, bfn1, digest} JSON instead of raw BFN1")
    p.add_argument("--out", help="output path (default: stdout)")

    p = sub.add_parser("analyze", help="full analysis bundle as JSON")
    _add_source_args(p)
    p.add_argument("--seed", type=int, default=0, help="seed (random family)")
    p.add_argument("--eps", type=float, default=0.25,
                   help="concentration parameter for the junta set")
    p.add_argument("--checks", help="comma list of checks to include")
    p.add_argument("--no-spectrum", action="store_true",
                   help="omit the full spectrum map")
    p.add_argument("--json", action="store_true",
                   help="JSON output (the default; accepted for scripts)")
    p.add_argument("--out", help="output path (default: stdout)")

    p = sub.add_parser("verify", help="run checks over a scope")
    _add_source_args(p)
    p.add_argument("--exhaustive", type=int, metavar="N",
                   help="every function at dimension N (N <= 4)")
    p.add_argument("--random", type=int, metavar="N",
                   help="seeded random functions at dimension N")
    p.add_argument("--count", type=int, help="number of random functions")
    p.add_argument("--seed", type=int, default=0, help="sweep seed")
    p.add_argument("--checks", default="all",
                   help="comma list of check ids, or 'all'")
    p.add_argument("--rho-grid", help="comma list of noise rates")
    p.add_argument("--eps-grid", help="comma list of moment exponents")
    p.add_argument("--friedgut-eps", help="comma list of concentration eps")
    p.add_argument("--parallel", type=int, help="worker processes")
    p.add_argument("--rows-csv", help="also write one CSV row per "
                                      "function per check")
    p.add_argument("--json", action="store_true",
                   help="JSON output (the default; accepted for scripts)")
    p.add_argument("--out", help="report path (default: stdout)")

    p = sub.add_parser("search", help="tightness search leaderboard")
    p.add_argument("--objective", required=True,
                   help="fei-ratio | kkl-edge | fmei-degree")
    p.add_argument("--exhaustive", type=int, metavar="N")
    p.add_argument("--random", type=int, metavar="N")
    p.add_argument("--count", type=int)
    p.add_argument("--compose-greedy", action="store_true")
    p.add_argument("--depth", type=int, default=2)
    p.add_argument("--budget", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--parallel", type=int, help="worker processes")
    p.add_argument("--json", action="store_true", help="JSON instead of CSV")
    p.add_argument("--out", help="output path (default: stdout)")

    p = sub.add_parser("sample", help="draw from the spectral sample")
    _add_source_args(p)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true", help="JSON instead of CSV")
    p.add_argument("--out", help="output path (default: stdout)")

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "serve":
        return cmd_serve(args)
    try:
        client = _make_client(args.url)
    except Exception as exc:  # connection setup problems are usage errors
        return _usage_error(str(exc))
    try:
        if args.command == "construct":
            return cmd_construct(client, args)
        if args.command == "analyze":
            return cmd_analyze(client, args)
        if args.command == "verify":
            return cmd_verify(client, args)
        if args.command == "search":
            return cmd_search(client, args)
        if args.command == "sample":
            return cmd_sample(client, args)
        return _usage_error(f"unknown command {args.command!r}")
    except OSError as exc:
        return _usage_error(str(exc))
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_USAGE
    finally:
        client.close()


if __name__ == "__main__":
    sys.exit(main())
