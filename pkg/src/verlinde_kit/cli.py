"""Command-line client for the service.

By default the CLI mounts the FastAPI app in process and talks to it
over httpx's ASGI transport, so no server needs to run; --url points
it at a remote instance instead.  Reports print as JSON (default) or
as flat CSV tables.  Exit codes: 0 success, 2 validation failure,
3 cap exceeded, 4 malformed input.
"""

import argparse
import asyncio
import csv
import json
import sys

import httpx

from . import config as config_mod
from .errors import InputError, SchemaError

_CSV_COLUMNS = {
    "fusion": ("entries", ["k", "j", "s", "n"]),
    "validate": ("checks", ["axiom", "ok", "detail"]),
    "spectrum": ("points", ["point", "multiplicity"]),
    "exponents": ("entries", ["point", "m_phi", "m_phi0", "m_pi", "exponents"]),
    "roots": ("roots", ["class", "vertex", "norm2"]),
}


def _label(text):
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a comma-separated label")


def _common_flags():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tolerance", type=float, default=None)
    common.add_argument("--torus-cap", type=int, default=None)
    common.add_argument("--parallel", type=int, default=None, metavar="N")
    common.add_argument("--format", choices=["json", "csv"], default=None)
    common.add_argument("--url", default=None, help="remote service base URL")
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="verlinde-kit",
        description="Verlinde fusion rings, quantum Dynkin diagrams, "
        "and quantum root data",
    )
    common = _common_flags()
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lie", parents=[common], help="Cartan and root data")
    p.add_argument("family")
    p.add_argument("rank", type=int)

    p = sub.add_parser("fusion", parents=[common], help="fusion coefficients")
    p.add_argument("family")
    p.add_argument("rank", type=int)
    p.add_argument("level", type=int)
    p.add_argument("k", nargs="?", type=_label, default=None)
    p.add_argument("j", nargs="?", type=_label, default=None)
    p.add_argument(
        "--verify",
        action="store_true",
        help="cross-check the folding route against the character sums",
    )

    p = sub.add_parser("rep", parents=[common], help="representation reports")
    p.add_argument(
        "subcommand", choices=["validate", "spectrum", "exponents", "roots"]
    )
    p.add_argument("quiver", help="path to a quiver JSON document")
    p.add_argument("--level", type=int, default=None, help="override quiver level")

    p = sub.add_parser(
        "check-dynkin", parents=[common], help="quantum Dynkin certificate"
    )
    p.add_argument("quiver", help="path to a quiver JSON document")
    p.add_argument("--level", type=int, default=None, help="override quiver level")

    p = sub.add_parser("serve", parents=[common], help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)

    return parser


def _effective_config(args):
    return config_mod.from_env(
        {
            "tolerance": args.tolerance,
            "torus_cap": args.torus_cap,
            "parallelism": args.parallel,
        }
    )


def _config_body(config) -> dict:
    return {
        "tolerance": config.tolerance,
        "torus_cap": config.torus_cap,
        "weyl_cap": config.weyl_cap,
        "rootspace_cap": config.rootspace_cap,
        "weight_cap": config.weight_cap,
        "parallelism": config.parallelism,
    }


def _post(args, path, payload):
    if args.url:
        with httpx.Client(base_url=args.url, timeout=None) as client:
            resp = client.post(path, json=payload)
            return resp.status_code, resp.json()

    from .service import create_app

    app = create_app(config_mod.DEFAULT)

    async def go():
        transport = httpx.ASGITransport(app=app)
        async with httpx.AsyncClient(
            transport=transport, base_url="http://verlinde-kit"
        ) as client:
            resp = await client.post(path, json=payload)
            return resp.status_code, resp.json()

    return asyncio.run(go())


def _read_quiver(path) -> dict:
    try:
        with open(path) as handle:
            return json.load(handle)
    except FileNotFoundError:
        raise InputError(f"quiver file not found: {path}")
    except json.JSONDecodeError as exc:
        raise SchemaError(f"quiver file is not valid JSON: {exc}")


def _flat_cell(value):
    if value is None:
        return ""
    if isinstance(value, list):
        return " ".join(str(x) for x in value)
    return value


def _emit(report: dict, fmt: str, table: str | None, out) -> None:
    if fmt == "csv":
        if table is None:
            raise InputError("csv output is only available for flat tables")
        key, columns = _CSV_COLUMNS[table]
        writer = csv.writer(out)
        writer.writerow(columns)
        for row in report[key]:
            writer.writerow([_flat_cell(row[c]) for c in columns])
    else:
        json.dump(report, out, indent=2)
        out.write("\n")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = _effective_config(args)
        fmt = args.format or config.format

        if args.command == "serve":
            try:
                import uvicorn
            except ImportError:
                raise InputError(
                    "the serve command needs uvicorn; "
                    "install verlinde-kit[server]"
                )
            from .service import create_app

            uvicorn.run(create_app(config), host=args.host, port=args.port)
            return 0

        body = {"config": _config_body(config)}
        table = None
        ok_key = None
        if args.command == "lie":
            path = "/lie"
            body.update({"family": args.family, "rank": args.rank})
        elif args.command == "fusion":
            if (args.k is None) != (args.j is None):
                raise InputError("give both k and j for a single row, or neither")
            path = "/fusion"
            body.update(
                {
                    "family": args.family,
                    "rank": args.rank,
                    "level": args.level,
                    "k": args.k,
                    "j": args.j,
                    "verify": args.verify,
                }
            )
            table = "fusion"
        elif args.command == "rep":
            path = f"/rep/{args.subcommand}"
            body.update({"quiver": _read_quiver(args.quiver), "level": args.level})
            table = args.subcommand
            ok_key = "ok" if args.subcommand == "validate" else None
        else:
            path = "/dynkin/check"
            body.update({"quiver": _read_quiver(args.quiver), "level": args.level})
            ok_key = "ok"

        status, payload = _post(args, path, body)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except httpx.HTTPError as exc:
        print(f"error: cannot reach service: {exc}", file=sys.stderr)
        return 1

    if status != 200:
        error = payload.get("error", {})
        print(json.dumps(payload, indent=2), file=sys.stderr)
        return int(error.get("exit_code", 1))

    try:
        _emit(payload, fmt, table, sys.stdout)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    if ok_key is not None and not payload.get(ok_key, False):
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
