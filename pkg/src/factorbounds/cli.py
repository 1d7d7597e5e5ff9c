"""Command-line client for the analysis service.

The CLI is a thin HTTP client: by default it mounts the FastAPI app
in-process (no server needed); pass ``--server http://host:port`` to talk to
a running instance instead.  Reports are printed as JSON by default, or as a
short human summary with ``--text``.

Exit codes: 0 on success, 2 when a check fails (a Fuchs relation that does
not hold), 1 on any error.

Operator arguments accept inline expression text, ``@path`` to read a file,
or ``-`` for standard input.
"""

from __future__ import annotations

import argparse
import json
import sys

import httpx


def _read_source(text: str) -> str:
    if text == "-":
        return sys.stdin.read().strip()
    if text.startswith("@"):
        with open(text[1:], "r", encoding="utf-8") as fh:
            return fh.read().strip()
    return text


def _read_coefficients(path: str) -> list[str]:
    if path == "-":
        data = sys.stdin.read()
    else:
        with open(path, "r", encoding="utf-8") as fh:
            data = fh.read()
    return [line.strip() for line in data.splitlines() if line.strip()]


def _client(server: str | None) -> httpx.Client:
    if server:
        return httpx.Client(base_url=server.rstrip("/"), timeout=300.0)
    # mount the service in-process; the CLI still speaks plain HTTP to it
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        from starlette.testclient import TestClient

    from .service.app import app

    return TestClient(app, raise_server_exceptions=False)


def _fail(payload: dict) -> int:
    json.dump(payload, sys.stderr, indent=2)
    sys.stderr.write("\n")
    return 1


def _emit(data: dict, as_text: bool, renderer) -> None:
    if as_text:
        print(renderer(data))
    else:
        json.dump(data, sys.stdout, indent=2)
        sys.stdout.write("\n")


# --- text renderers ----------------------------------------------------------


def _point_str(p: dict) -> str:
    if p["kind"] == "rational":
        return p["value"]
    if p["kind"] == "orbit":
        return f"orbit[deg {p.get('size')}]"
    return "inf"


def _render_census(data: dict) -> str:
    lines = [
        f"order {data['order']}, degree {data['degree']}; "
        f"Fuchsian: {data['is_fuchsian']}, N_max = {data['N_max']}",
        f"S = {data['S']} (relaxed), S_strict = {data['S_strict']}, "
        f"#finite singularities = {data['sing_count_total']}",
    ]
    if data.get("E_fuchsian") is not None:
        lines.append(f"E_fuchsian = {data['E_fuchsian']}")
    for rep in data["finite_singularities"] + [data["infinity"]]:
        exps = rep.get("exponents_rational")
        exp_s = (
            ", exponents " + " ".join(f"{e['value']}(x{e['multiplicity']})" for e in exps)
            if exps
            else ""
        )
        app_s = (
            f", apparent: {rep['apparent']}/{rep['apparent_relaxed']}"
            if rep.get("apparent") is not None
            else ""
        )
        lines.append(
            f"  {_point_str(rep['point'])}: {rep['classification']}, "
            f"katz {rep['katz_rank']}{exp_s}{app_s}"
        )
    return "\n".join(lines)


def _render_bounds(data: dict) -> str:
    lines = [f"E = {data['E']} ({data['E_provenance']})"]
    for entry in data["per_order"]:
        s = entry["strict"]
        lines.append(
            f"  r = {entry['r']}: strict bound {s['refined_bound']} "
            f"(ceiling {s['refined_ceiling']}, plain {s['plain_bound']}); "
            f"relaxed {entry['relaxed']['refined_bound']}; "
            f"coarse {entry['coarse']['refined_bound']}"
        )
    if data.get("exponent_tower"):
        t = data["exponent_tower"]
        a, e = t["base2_exponent"]["base"], t["base2_exponent"]["exponent"]
        lines.append(
            f"  a-priori exponent tower: 2^({a}^{e}) * H^(...); "
            f"log2 = {t['log2_estimate']} (exact: {t['log2_is_exact']})"
        )
    return "\n".join(lines)


def _render_newton(data: dict) -> str:
    lines = []
    for entry in data["polygons"]:
        poly = entry["polygon"]
        edges = ", ".join(f"slope {e['slope']} x{e['length']}" for e in poly["edges"]) or "point"
        lines.append(f"  {_point_str(entry['point'])}: {edges} (max slope {poly['max_slope']})")
    return "\n".join(lines)


def _render_fuchs(data: dict) -> str:
    lines = [
        f"holds: {data['holds']} (total {data['total']}, expected {data['expected_total']})"
    ]
    for entry in data["per_point"]:
        lines.append(f"  {_point_str(entry['point'])}: S_rho = {entry['S_rho']}")
    return "\n".join(lines)


def _render_operator(data: dict) -> str:
    return data["text"]


def _render_divmod(data: dict) -> str:
    return (
        f"quotient:  {data['quotient']['text']}\n"
        f"remainder: {data['remainder']['text']}\n"
        f"right factor: {data['is_right_factor']}"
    )


def _render_minimize(data: dict) -> str:
    if not data["found"]:
        return "no annihilator found"
    return (
        f"operator: {data['operator']['text']}\n"
        f"order {data['order']}, degree cap {data['degree_cap']}, "
        f"cutoff {data['cutoff']}, E = {data['E_used']}\n"
        f"certificate: coefficients 0..{data['certificate_zero_through']} vanish; "
        f"right-division remainder zero: {data['division_remainder_zero']}"
    )


# --- main ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="factorbounds",
        description="Exact analysis of linear differential operators over Q(z).",
    )
    parser.add_argument("--server", help="URL of a running service (default: in-process)")
    fmt = parser.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON output (default)")
    fmt.add_argument("--text", action="store_true", help="human-readable output")
    parser.add_argument("--var", default="z", help="variable name (default z)")
    sub = parser.add_subparsers(dest="command", required=True)

    def op_cmd(name: str, help_text: str):
        p = sub.add_parser(name, help=help_text)
        p.add_argument(
            "operator_positional",
            nargs="?",
            metavar="operator",
            help="operator text, @file, or - for stdin",
        )
        p.add_argument("--operator", dest="operator_flag", help="same as the positional form")
        return p

    p = op_cmd("analyze", "singularity census")
    p.add_argument("--exact-orbits", action="store_true", help="run kernel tests at algebraic orbits")

    p = op_cmd("bound", "right-factor degree bounds per candidate order")
    p.add_argument("--E", help="exponent bound override (rational)")
    p.add_argument("--refine", help="comma list from: nminus1,sumE,minslopes (default all)")
    p.add_argument("--kappa", type=int, help="number field degree for the a-priori tower")
    p.add_argument("--height", type=int, help="operator height for the a-priori tower")
    p.add_argument("--per-r", action="store_true", help="kept for symmetry; bounds are always per order")

    p = op_cmd("newton", "Newton polygons")
    p.add_argument("--point", action="append", dest="points", help="rational point or 'inf'; repeatable")

    op_cmd("fuchs-check", "verify the exponent-sum relation")

    p = sub.add_parser("multiply", help="compose two operators")
    p.add_argument("left")
    p.add_argument("right")

    p = sub.add_parser("divmod", help="right Euclidean division")
    p.add_argument("dividend")
    p.add_argument("divisor")

    op_cmd("adjoint", "formal adjoint")
    op_cmd("to-recurrence", "coefficient recurrence of power-series solutions")

    p = op_cmd("expand", "extend Taylor coefficients through the recurrence")
    p.add_argument("--coeffs", required=True, help="file of initial rationals, one per line, or -")
    p.add_argument("--upto", type=int, required=True)

    p = op_cmd("minimize", "search for the minimal-order annihilator")
    p.add_argument("--coeffs", required=True, help="file of initial rationals, one per line, or -")
    p.add_argument("--degree-cap", type=int)
    p.add_argument("--E", help="exponent bound override (rational)")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if hasattr(args, "operator_positional"):
        chosen = args.operator_positional or args.operator_flag
        if not chosen or (args.operator_positional and args.operator_flag):
            parser.error(f"{args.command}: supply the operator once (positional or --operator)")
        args.operator = chosen
    as_text = bool(args.text)
    try:
        with _client(args.server) as client:
            return _dispatch(client, args, as_text)
    except httpx.HTTPError as exc:
        return _fail({"code": "transport-error", "message": str(exc)})


def _post(client: httpx.Client, path: str, payload: dict):
    response = client.post(path, json=payload)
    body = response.json()
    if response.status_code >= 400:
        return None, body
    return body, None


def _dispatch(client: httpx.Client, args, as_text: bool) -> int:
    cmd = args.command
    if cmd == "analyze":
        payload = {
            "operator": _read_source(args.operator),
            "var": args.var,
            "conservative_orbits": not args.exact_orbits,
        }
        data, err = _post(client, "/v1/analyze", payload)
        if err:
            return _fail(err)
        _emit(data, as_text, _render_census)
        return 0
    if cmd == "bound":
        payload = {"operator": _read_source(args.operator), "var": args.var}
        if args.E is not None:
            payload["E"] = args.E
        if args.refine:
            payload["refine"] = [r.strip() for r in args.refine.split(",") if r.strip()]
        if args.kappa is not None:
            payload["kappa"] = args.kappa
        if args.height is not None:
            payload["height"] = args.height
        data, err = _post(client, "/v1/bound", payload)
        if err:
            return _fail(err)
        _emit(data, as_text, _render_bounds)
        return 0
    if cmd == "newton":
        payload = {"operator": _read_source(args.operator), "var": args.var}
        if args.points:
            payload["points"] = args.points
        data, err = _post(client, "/v1/newton", payload)
        if err:
            return _fail(err)
        _emit(data, as_text, _render_newton)
        return 0
    if cmd == "fuchs-check":
        data, err = _post(
            client, "/v1/fuchs-check", {"operator": _read_source(args.operator), "var": args.var}
        )
        if err:
            return _fail(err)
        _emit(data, as_text, _render_fuchs)
        return 0 if data["holds"] else 2
    if cmd == "multiply":
        data, err = _post(
            client,
            "/v1/multiply",
            {"left": _read_source(args.left), "right": _read_source(args.right), "var": args.var},
        )
        if err:
            return _fail(err)
        _emit(data, as_text, _render_operator)
        return 0
    if cmd == "divmod":
        data, err = _post(
            client,
            "/v1/divmod",
            {
                "dividend": _read_source(args.dividend),
                "divisor": _read_source(args.divisor),
                "var": args.var,
            },
        )
        if err:
            return _fail(err)
        _emit(data, as_text, _render_divmod)
        return 0
    if cmd == "adjoint":
        data, err = _post(
            client, "/v1/adjoint", {"operator": _read_source(args.operator), "var": args.var}
        )
        if err:
            return _fail(err)
        _emit(data, as_text, _render_operator)
        return 0
    if cmd == "to-recurrence":
        data, err = _post(
            client, "/v1/to-recurrence", {"operator": _read_source(args.operator), "var": args.var}
        )
        if err:
            return _fail(err)
        _emit(data, as_text, lambda d: d["text"])
        return 0
    if cmd == "expand":
        payload = {
            "operator": _read_source(args.operator),
            "var": args.var,
            "initial": _read_coefficients(args.coeffs),
            "upto": args.upto,
        }
        data, err = _post(client, "/v1/expand", payload)
        if err:
            return _fail(err)
        _emit(data, as_text, lambda d: "\n".join(d["coefficients"]))
        return 0
    if cmd == "minimize":
        payload = {
            "operator": _read_source(args.operator),
            "var": args.var,
            "coefficients": _read_coefficients(args.coeffs),
        }
        if args.degree_cap is not None:
            payload["degree_cap"] = args.degree_cap
        if args.E is not None:
            payload["E"] = args.E
        data, err = _post(client, "/v1/minimize", payload)
        if err:
            return _fail(err)
        _emit(data, as_text, _render_minimize)
        return 0 if data["found"] else 2
    raise AssertionError(f"unhandled command {cmd}")


if __name__ == "__main__":
    sys.exit(main())
