"""Command-line front end: ``lojparam <command> --input f.json [options]``.

Every run prints (or writes) one JSON report envelope.  Exit status is 0
when the value was computed or the verdict holds, 1 when a verdict fails and
2 on any error.  Reports are canonical JSON, so identical requests give
byte-identical output; the wall time is only recorded with
``--record-time``.
"""

from __future__ import annotations

import argparse
import csv
import logging
import math
import sys
import time

from . import __version__
from . import family as fa
from . import local, loj
from .errors import LojError, SchemaError
from .io import dumps, load_family, load_json, load_poly, poly_from_json, validate
from .poly import Region, order_at

log = logging.getLogger("lojparam")

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2
DEFAULT_GRID = "geometric:0.5,8"


# ----------------------------------------------------------------------
# option parsing helpers


def parse_scalar(text: str) -> complex:
    """``"0.5"``, ``"1+2j"`` or ``"1-0.5j"`` as a complex number."""
    return complex(text.replace(" ", "").replace("i", "j").replace("I", "j"))


def parse_point(text: str | None, n: int) -> tuple:
    """Comma-separated coordinates; ``None`` means the origin."""
    if text is None:
        return (0j,) * n
    pts = tuple(parse_scalar(p) for p in text.split(","))
    if len(pts) != n:
        raise SchemaError(f"point {text!r} has {len(pts)} coordinates, expected {n}")
    return pts


def parse_points(text: str, n: int) -> list:
    """Semicolon-separated points."""
    return [parse_point(p, n) for p in text.split(";") if p.strip()]


def parse_radii(text: str | None, n: int, default: float) -> tuple:
    if text is None:
        return (default,) * n
    vals = [float(v) for v in text.split(",")]
    if len(vals) == 1:
        vals = vals * n
    if len(vals) != n:
        raise SchemaError(f"radii {text!r} do not match {n} variables")
    return tuple(vals)


def parse_grid(text: str):
    if text.strip().startswith("geometric:"):
        return text.strip()
    return [parse_scalar(v) for v in text.split(",") if v.strip()]


def _clean(x):
    # JSON cannot carry complex numbers or non-finite floats
    if isinstance(x, complex):
        return [x.real, x.imag]
    if isinstance(x, float) and not math.isfinite(x):
        return None
    if isinstance(x, dict):
        return {str(k): _clean(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_clean(v) for v in x]
    return x


# ----------------------------------------------------------------------
# commands; each returns (payload dict, verdict or None, warnings)


def _with_family_t0(fam, args):
    if args.t0 is not None:
        import dataclasses

        fam = dataclasses.replace(fam, t0=parse_scalar(args.t0))
    return fam


def cmd_order(args):
    f = load_poly(args.input)
    a = parse_point(args.point, f.nvars)
    k = order_at(f, a, args.drop_tol)
    return {"order": None if k == math.inf else k, "point": a}, None, []


def cmd_degree(args):
    f = load_poly(args.input)
    a = parse_point(args.point, f.nvars)
    cyc = local.local_degree_cycle(f, a, args.probe_radius, args.trials, args.seed)
    st = local.local_degree_set(f, a, args.probe_radius, args.trials, args.seed)
    k = order_at(f, a)
    return {
        "cycle_degree": cyc,
        "set_degree": st,
        "order": k,
        "exponent_inequality_holds": cyc * st >= k,
        "point": a,
    }, None, []


def cmd_dist(args):
    f = load_poly(args.input)
    z = parse_point(args.point, f.nvars)
    est = local.dist_to_zero_set(f, z, args.n_directions, args.seed)
    warn = [] if est.witness is not None else ["no zero found along any direction; value is infinite"]
    return est.to_json(), None, warn


def cmd_slice_degree(args):
    f = load_poly(args.input)
    if args.frame:
        fr = local.choose_weierstrass_frame(f, parse_point(args.point, f.nvars), args.seed)
        rep = local.weierstrass_slice_degree(fr.transform(f), fr.box, args.n_base_points, args.seed)
        return {"frame": fr.to_json(), "slice": rep.to_json()}, None, []
    box = Region(parse_point(args.center, f.nvars), parse_radii(args.radii, f.nvars, args.radius))
    rep = local.weierstrass_slice_degree(f, box, args.n_base_points, args.seed)
    return rep.to_json(), None, []


def _region_at(f, a, args):
    return Region(a, parse_radii(args.radii, f.nvars, args.radius))


def cmd_loj_verify(args):
    f = load_poly(args.input)
    a = parse_point(args.point, f.nvars)
    alpha = args.alpha if args.alpha is not None else float(order_at(f, a))
    rep = loj.verify_inequality(f, a, alpha, _region_at(f, a, args), args.n_samples, args.seed)
    warn = [] if rep.verdict else [
        f"shell minima decay (slope {rep.decay_slope:.3f} in log2 per shell): exponent {alpha} too small"
    ]
    return rep.to_json(), rep.verdict, warn


def cmd_loj_estimate(args):
    f = load_poly(args.input)
    a = parse_point(args.point, f.nvars)
    est = loj.estimate_exponent(f, a, _region_at(f, a, args), args.n_samples, args.seed)
    return {"estimate": est, "order": order_at(f, a), "point": a}, None, []


def cmd_family_orders(args):
    fam = _with_family_t0(load_family(args.input), args)
    rep = fa.order_profile(fam, parse_grid(args.tgrid), args.drop_tol)
    return rep.to_json(), rep.verdict, []


def cmd_family_kuratowski(args):
    fam = _with_family_t0(load_family(args.input), args)
    n = fam.space_nvars
    win = Region(parse_point(args.center, n), parse_radii(args.radii, n, args.radius))
    rep = fa.kuratowski_check(fam, parse_grid(args.tgrid), win, args.grid_density, args.seed)
    return rep.to_json(), rep.verdict, []


def _disc(args, n):
    if args.anchor is None or args.direction is None:
        raise SchemaError("--anchor and --direction are required")
    return fa.TestingDisc(parse_point(args.anchor, n), parse_point(args.direction, n), args.disc_radius)


def cmd_family_tworzewski(args):
    fam = _with_family_t0(load_family(args.input), args)
    rep = fa.tworzewski_check(fam, _disc(args, fam.space_nvars), parse_grid(args.tgrid), args.seed)
    return rep.to_json(), rep.verdict, [fa.SAMPLING_NOTE]


def cmd_family_fibres(args):
    g = load_poly(args.input)
    s0 = parse_scalar(args.t0) if args.t0 is not None else 0
    rep = fa.fibre_cycle_convergence(g, s0, _disc(args, g.nvars), parse_grid(args.tgrid), args.seed)
    return rep.to_json(), rep.verdict, [fa.SAMPLING_NOTE]


def cmd_family_distance(args):
    fam = _with_family_t0(load_family(args.input), args)
    if args.probes is None:
        raise SchemaError("--probes is required")
    probes = parse_points(args.probes, fam.space_nvars)
    rep = fa.distance_continuity_check(fam, probes, parse_grid(args.tgrid), args.n_directions, args.seed, tol=args.tol)
    return rep.to_json(), rep.verdict, []


def cmd_family_properness(args):
    fx = _with_family_t0(load_family(args.input), args)
    if args.input_y is None:
        raise SchemaError("--input-y is required")
    fy = _with_family_t0(load_family(args.input_y), args)
    n = fx.space_nvars
    win = Region(parse_point(args.center, n), parse_radii(args.radii, n, args.radius))
    rep = fa.properness_persistence_check(fx, fy, win, parse_grid(args.tgrid), args.seed)
    return rep.to_json(), rep.verdict, []


def cmd_family_uniform_loj(args):
    fam = _with_family_t0(load_family(args.input), args)
    n = fam.space_nvars
    a = fam.base_point if fam.base_point is not None else (0,) * n
    win = Region(tuple(complex(x) for x in a), parse_radii(args.radii, n, args.radius))
    rep = fa.uniform_exponent_verify(fam, parse_grid(args.tgrid), win, args.n_samples, args.seed)
    out = rep.to_json()
    out["alpha"] = rep.details["alpha"]
    return out, rep.verdict, []


COMMANDS = {
    "order": (cmd_order, "order of vanishing at a point"),
    "degree": (cmd_degree, "local cycle degree and reduced degree by line probes"),
    "dist": (cmd_dist, "line-sweep upper bound for the distance to the zero set"),
    "slice-degree": (cmd_slice_degree, "Weierstrass slice degree over a box (last variable is the fibre)"),
    "loj-verify": (cmd_loj_verify, "shell check of |f| >= c dist^alpha"),
    "loj-estimate": (cmd_loj_estimate, "regression estimate of the exponent"),
    "family-orders": (cmd_family_orders, "order profile of f_t along a parameter grid"),
    "family-kuratowski": (cmd_family_kuratowski, "Hausdorff gaps of zero sets in a window"),
    "family-tworzewski": (cmd_family_tworzewski, "testing-disc degrees along a parameter sequence"),
    "family-fibres": (cmd_family_fibres, "fibre convergence g^{-1}(s) -> g^{-1}(s0)"),
    "family-distance": (cmd_family_distance, "continuity of dist(x, Z_{f_t}) in t"),
    "family-properness": (cmd_family_properness, "finiteness of plane-curve intersections along t"),
    "family-uniform-loj": (cmd_family_uniform_loj, "uniform exponent alpha = ord f_t0 for nearby t"),
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lojparam", description=__doc__.split("\n")[0])
    p.add_argument("--version", action="version", version=f"lojparam {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    for name, (_, help_) in COMMANDS.items():
        s = sub.add_parser(name, help=help_, description=help_)
        s.add_argument("--input", required=True, help="polynomial or family JSON file")
        s.add_argument("--seed", type=int, default=0)
        s.add_argument("--output", help="write the JSON report here instead of stdout")
        s.add_argument("--csv", help="also write the tabular part of the report as CSV")
        s.add_argument("--record-time", action="store_true", help="record wall time (breaks byte-identity)")
        s.add_argument("-v", "--verbose", action="store_true")
        if name in ("order", "degree", "dist", "slice-degree", "loj-verify", "loj-estimate"):
            s.add_argument("--point", help="comma-separated coordinates (default: origin)")
        if name in ("order", "family-orders"):
            s.add_argument("--drop-tol", type=float, default=1e-12)
        if name == "degree":
            s.add_argument("--probe-radius", type=float, default=1e-3)
            s.add_argument("--trials", type=int, default=5)
        if name in ("dist", "family-distance"):
            s.add_argument("--n-directions", type=int, default=16)
        if name == "slice-degree":
            s.add_argument("--center")
            s.add_argument("--frame", action="store_true", help="choose a Weierstrass frame at --point first")
            s.add_argument("--n-base-points", type=int, default=5)
        if name in ("slice-degree", "loj-verify", "loj-estimate", "family-kuratowski",
                    "family-properness", "family-uniform-loj"):
            default_r = {"family-uniform-loj": 0.1, "family-kuratowski": 1.0, "family-properness": 2.0}.get(name, 0.5)
            s.add_argument("--radius", type=float, default=default_r)
            s.add_argument("--radii", help="per-variable radii, comma-separated")
        if name in ("family-kuratowski", "family-properness"):
            s.add_argument("--center")
        if name in ("loj-verify",):
            s.add_argument("--alpha", type=float, help="exponent (default: order at the point)")
        if name in ("loj-verify", "loj-estimate", "family-uniform-loj"):
            s.add_argument("--n-samples", type=int, default=512)
        if name.startswith("family-"):
            s.add_argument("--t0", help="override the family's t0 (s0 for family-fibres)")
            s.add_argument("--tgrid", default=DEFAULT_GRID,
                           help="comma-separated values or geometric:<ratio>,<count>[,<scale>]")
        if name == "family-kuratowski":
            s.add_argument("--grid-density", type=int, default=32)
        if name in ("family-tworzewski", "family-fibres"):
            s.add_argument("--anchor")
            s.add_argument("--direction")
            s.add_argument("--disc-radius", type=float, default=0.5)
        if name == "family-distance":
            s.add_argument("--probes", help="semicolon-separated probe points")
            s.add_argument("--tol", type=float, default=None)
        if name == "family-properness":
            s.add_argument("--input-y", help="second family JSON file")
    return p


def _request_echo(args) -> dict:
    skip = {"output", "csv", "verbose", "record_time"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def run(argv=None) -> tuple[dict, int]:
    """Parse ``argv``, run the command and return ``(envelope, exit status)``."""
    args = build_parser().parse_args(argv)
    if args.verbose:
        logging.basicConfig(level=logging.DEBUG)
    request = _request_echo(args)
    validate(request, "request")
    t_start = time.perf_counter()
    env = {"tool": "lojparam", "version": __version__, "request": request, "warnings": []}
    try:
        payload, verdict, warnings = COMMANDS[args.command][0](args)
        env["result"] = _clean(payload)
        env["warnings"] = list(warnings)
        status = EXIT_FAIL if verdict is False else EXIT_OK
    except (LojError, ValueError, OSError, ArithmeticError) as exc:
        env["result"] = None
        env["error"] = {"type": type(exc).__name__, "message": str(exc)}
        status = EXIT_ERROR
    env["exit_status"] = status
    env["wall_time"] = time.perf_counter() - t_start if args.record_time else None
    return env, status


def emit_csv(envelope: dict, path) -> None:
    """Write the tabular part of a report: shell profile or per-parameter values.

    Raises
    ------
    ValueError
        The report has no table.
    """
    res = envelope.get("result") or {}
    fmt = lambda v: "" if v is None else (format(v, ".17g") if isinstance(v, float) else str(v))  # noqa: E731

    def fmt_t(t):
        re, im = t
        return fmt(float(re)) if im == 0 else f"{format(re, '.17g')}{format(im, '+.17g')}j"

    if "shell_profile" in res:
        header = ["shell_radius", "min_ratio"]
        rows = [[fmt(float(r)), fmt(float(c))] for r, c in res["shell_profile"]]
    elif "per_t" in res:
        q = res["quantity"]
        header = ["t", q]
        rows = [[fmt_t(res["at_t0"]["t"]), fmt(res["at_t0"][q])]]
        rows += [[fmt_t(r["t"]), fmt(r[q])] for r in res["per_t"]]
    else:
        raise ValueError("report has no tabular payload (shell_profile or per_t)")
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def main(argv=None) -> int:
    env, status = run(argv)
    args = build_parser().parse_args(argv)
    text = dumps(env)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.csv and env.get("result") is not None:
        try:
            emit_csv(env, args.csv)
        except ValueError as exc:
            sys.stderr.write(f"lojparam: {exc}\n")
            return EXIT_ERROR
    if status == EXIT_ERROR:
        sys.stderr.write(f"lojparam: {env['error']['type']}: {env['error']['message']}\n")
    return status


if __name__ == "__main__":
    sys.exit(main())
