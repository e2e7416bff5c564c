"""Command-line front end.

Evaluations print space-separated numbers; reports print JSON (default) or
CSV. Every float is written with 12 significant digits so repeated runs are
byte-identical.

Exit codes: 0 success, 2 verification failure / fold absent, 1 usage error.
"""

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from . import ball, diffops, disk, polydisk, rkc, tennis, wood
from .errors import ConvergenceError, DomainError, HypothesisError, ResolutionError

EXIT_OK, EXIT_USAGE, EXIT_FAIL = 0, 1, 2

# --tol KEY=VAL overrides and their defaults
TOLERANCES = {
    "step": diffops.DEFAULT.step,
    "second_step": diffops.DEFAULT.second_step,
    "det_tol": diffops.DEFAULT.det_tol,
    "collision": 1e-6,
    "identity": 1e-12,
    "convergence": ball.CONVERGENCE_TOL,
    "round_trip": 1e-9,
    "laplacian": 1e-5,
    "jacobian": 1e-5,
    "lemma": 1e-9,
}


class UsageError(Exception):
    pass


class ArgParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True)
class RunConfig:
    command: str
    tolerances: dict = field(default_factory=dict)
    fmt: str = "json"
    seed: int = 0

    def __post_init__(self):
        unknown = set(self.tolerances) - set(TOLERANCES)
        if unknown:
            raise UsageError(f"unknown tolerance key(s): {', '.join(sorted(unknown))}")

    def tol(self, key):
        return self.tolerances.get(key, TOLERANCES[key])

    def diff_config(self):
        return diffops.DiffConfig(step=self.tol("step"), second_step=self.tol("second_step"),
                                  det_tol=self.tol("det_tol"))


# ---------------------------------------------------------------- formatting

def fmt_float(x):
    x = float(x)
    if x == 0.0:
        return "0"  # also folds -0.0
    return format(x, ".12g")


def _clean(obj):
    """Round floats to 12 significant digits for JSON output."""
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return float(fmt_float(x)) if math.isfinite(x) else None
    if isinstance(obj, complex):
        return [_clean(obj.real), _clean(obj.imag)]
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [_clean(v) for v in obj]
    return obj


def _csv_cell(v):
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return fmt_float(v)
    if isinstance(v, (list, tuple)):
        return " ".join(_csv_cell(x) for x in v)
    return str(v)


def emit(report, cfg, out):
    """Write a dict (one record) or a list of dicts (a table)."""
    if cfg.fmt == "json":
        out.write(json.dumps(_clean(report), indent=2) + "\n")
        return
    rows = report if isinstance(report, list) else [report]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(list(rows[0]))
    for row in rows:
        w.writerow([_csv_cell(v) for v in row.values()])
    out.write(buf.getvalue())


def emit_values(values, out):
    out.write(" ".join(fmt_float(v) for v in values) + "\n")


# ------------------------------------------------------------------- parsing

def parse_floats(text, count=None, what="value"):
    try:
        vals = [float(v) for v in text.split(",")]
    except ValueError:
        raise UsageError(f"malformed {what}: {text!r}") from None
    if count is not None and len(vals) != count:
        raise UsageError(f"{what} needs {count} comma-separated numbers, got {text!r}")
    if not all(math.isfinite(v) for v in vals):
        raise UsageError(f"non-finite {what}: {text!r}")
    return vals


def parse_complex_list(text):
    try:
        return [complex(v.replace(" ", "")) for v in text.split(",")]
    except ValueError:
        raise UsageError(f"malformed complex point: {text!r}") from None


def parse_boundary(spec):
    """identity | sinperturb:a=VAL | fourier:FILE | samples:FILE"""
    kind, _, arg = spec.partition(":")
    try:
        if kind == "identity" and not arg:
            return rkc.CircleHomeo.identity()
        if kind == "sinperturb":
            key, _, val = arg.partition("=")
            if key != "a":
                raise UsageError(f"sinperturb expects 'a=VALUE', got {arg!r}")
            return rkc.CircleHomeo.sin_perturb(float(val))
        if kind == "fourier" and arg:
            return disk.FourierPolynomial.from_file(arg)
        if kind == "samples" and arg:
            return disk.Sampled.from_file(arg)
    except (OSError, ValueError) as exc:
        raise UsageError(f"boundary {spec!r}: {exc}") from None
    raise UsageError(f"unknown boundary spec {spec!r}")


def _as_boundary_map(h):
    return h.boundary() if isinstance(h, rkc.CircleHomeo) else h


def parse_tol(items):
    out = {}
    for item in items or []:
        key, sep, val = item.partition("=")
        if not sep:
            raise UsageError(f"--tol expects KEY=VALUE, got {item!r}")
        try:
            out[key] = float(val)
        except ValueError:
            raise UsageError(f"--tol {key}: malformed number {val!r}") from None
    return out


def parse_grid(text):
    try:
        nr, nt = (int(v) for v in text.lower().split("x"))
    except ValueError:
        raise UsageError(f"--grid expects NRxNT, got {text!r}") from None
    return nr, nt


# ------------------------------------------------------------------ commands

def cmd_kernel(args, cfg, out):
    emit_values([disk.kernel_closed(args.r, args.theta)], out)
    return EXIT_OK


def cmd_extend_disk(args, cfg, out):
    r, theta = parse_floats(args.at, 2, "--at R,THETA")
    ext = disk.DiskExtension(_as_boundary_map(parse_boundary(args.boundary)), nodes=args.nodes)
    w = disk.extend(ext, r, theta)
    emit_values([w.real, w.imag], out)
    return EXIT_OK


def cmd_rkc_verify(args, cfg, out):
    h = parse_boundary(args.boundary)
    nr, nt = parse_grid(args.grid)
    grid = rkc.PolarGrid(nr, nt, args.radius)
    tol = args.tol_value if args.tol_value is not None else cfg.tol("collision")
    report = rkc.rkc_scan(h, grid, nodes=args.nodes, tol=tol, conjugate=args.conjugate,
                          cfg=cfg.diff_config())
    emit(report.to_dict(), cfg, out)
    return EXIT_OK if report.verdict == rkc.CONSISTENT else EXIT_FAIL


def cmd_lemma_hz(args, cfg, out):
    g = _as_boundary_map(parse_boundary(args.boundary))
    try:
        rep = rkc.lemma_sign_check(g, nodes=args.nodes, tol=cfg.tol("lemma"))
    except HypothesisError as exc:
        print(f"hypothesis not met: {exc}", file=sys.stderr)
        return EXIT_FAIL
    emit({"hz_re": rep.hz.real, "hz_im": rep.hz.imag,
          "im_half_interval": rep.im_half_interval, "verdict": rep.verdict}, cfg, out)
    return EXIT_OK if rep.verdict == "nonzero" else EXIT_FAIL


def cmd_wood(args, cfg, out):
    n = args.dim
    if args.eval is not None or args.invert is not None:
        P = np.array(parse_floats(args.eval or args.invert, n, "point"))
        emit_values(wood.evalN(P) if args.eval is not None else wood.invertN(P), out)
        return EXIT_OK
    report = wood.verification_report(n, rng=np.random.default_rng(cfg.seed),
                                      cfg=cfg.diff_config())
    tol = {k: cfg.tol(k) for k in ("round_trip", "laplacian", "jacobian")}
    report["passed"] = wood.report_passes(report, tol)
    emit(report, cfg, out)
    return EXIT_OK if report["passed"] else EXIT_FAIL


def cmd_tennisball(args, cfg, out):
    if args.eval is not None:
        phi, theta = parse_floats(args.eval, 2, "--eval PHI,THETA")
        emit_values(tennis.k(phi, theta, args.p), out)
        return EXIT_OK
    report = tennis.identity_suite(args.p, seed=cfg.seed)
    report = {"p": args.p, **report}
    report["passed"] = all(v < cfg.tol("identity") for k, v in report.items() if k != "p")
    emit(report, cfg, out)
    return EXIT_OK if report["passed"] else EXIT_FAIL


def cmd_ball_extend(args, cfg, out):
    x = parse_floats(args.at, 3, "--at X,Y,Z")
    quad = ball.SphereQuadrature(args.nphi, args.ntheta)
    ext = ball.BallExtension3(tennis.SphereHomeo(args.p), quad, args.max_radius)
    emit_values(ball.extend_ball(ext, x), out)
    return EXIT_OK


def cmd_fold(args, cfg, out):
    quad = ball.SphereQuadrature(args.nphi, args.ntheta)
    conv = cfg.tol("convergence")
    if args.sweep:
        rows = [r.to_dict() for r in ball.fold_sweep(quad=quad)]
        emit(rows, cfg, out)
        return EXIT_OK if any(r["folded"] and r["resolution_ok"] for r in rows) else EXIT_FAIL
    if args.p is None:
        raise UsageError("fold needs --p (or --sweep)")
    if args.profile:
        R = args.radius
        zs = np.linspace(-R, R, args.points)
        prof = ball.axis_profile(args.p, zs, quad, max_radius=R, conv_tol=conv)
        emit([dict(zip(("z", "F1", "F2", "F3"), map(float, row))) for row in prof.rows],
             cfg, out)
        return EXIT_OK if prof.resolution_ok else EXIT_FAIL
    if args.z is None:
        raise UsageError("fold needs --z (or --profile)")
    rep = ball.fold_check(args.p, args.z, quad, conv_tol=conv)
    emit(rep.to_dict(), cfg, out)
    return EXIT_OK if rep.folded and rep.resolution_ok else EXIT_FAIL


def cmd_collision(args, cfg, out):
    quad = ball.SphereQuadrature(args.nphi, args.ntheta)
    hit = ball.find_collision(args.p, quad, tol=cfg.tol("collision"), radius=args.radius)
    if hit is None:
        out.write("none\n")
        return EXIT_FAIL
    emit(hit.to_dict(), cfg, out)
    return EXIT_OK


def cmd_polydisk(args, cfg, out):
    try:
        P = polydisk.ComplexPolynomial.from_file(args.poly)
    except (OSError, ValueError) as exc:
        raise UsageError(f"--poly {args.poly}: {exc}") from None
    if args.degree:
        out.write(f"{polydisk.degree(P)}\n")
        return EXIT_OK
    if args.homogeneous:
        out.write("true\n" if polydisk.is_homogeneous(P) else "false\n")
        return EXIT_OK
    center = parse_complex_list(args.center) if args.center else [0j] * P.n
    radii = parse_floats(args.radii, what="--radii") if args.radii else [1.0] * P.n
    if len(radii) == 1:
        radii = radii * P.n
    spec = polydisk.PolydiskSpec(tuple(center), tuple(radii))
    if spec.n != P.n:
        raise UsageError(f"polydisk has dimension {spec.n}, polynomial has {P.n}")
    if args.eval is not None:
        z = parse_complex_list(args.eval)
        w = polydisk.cauchy_eval(P, spec, z, nodes=args.nodes)
    else:
        try:
            v = [int(t) for t in args.coeff.split(",")]
        except ValueError:
            raise UsageError(f"malformed multi-index {args.coeff!r}") from None
        w = polydisk.taylor_coeff(P, spec, v, nodes=args.nodes)
    emit_values([w.real, w.imag], out)
    return EXIT_OK


# -------------------------------------------------------------------- parser

def build_parser():
    ap = ArgParser(prog="harmext", description=__doc__.split("\n")[0])
    ap.add_argument("--format", choices=("json", "csv"), default="json")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--tol", action="append", metavar="KEY=VAL",
                    help=f"tolerance override; keys: {', '.join(TOLERANCES)}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("kernel", help="disk Poisson kernel value")
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--theta", type=float, required=True)
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("extend-disk", help="harmonic extension at one interior point")
    p.add_argument("--boundary", required=True, metavar="SPEC")
    p.add_argument("--at", required=True, metavar="R,THETA")
    p.add_argument("--nodes", type=int, default=512)
    p.set_defaults(func=cmd_extend_disk)

    p = sub.add_parser("rkc-verify", help="injectivity scan of a disk extension")
    p.add_argument("--boundary", required=True, metavar="SPEC")
    p.add_argument("--grid", default="24x96", metavar="NRxNT")
    p.add_argument("--radius", type=float, default=0.9)
    p.add_argument("--nodes", type=int, default=512)
    p.add_argument("--tol", dest="tol_value", type=float, default=None)
    p.add_argument("--conjugate", action="store_true")
    p.set_defaults(func=cmd_rkc_verify)

    p = sub.add_parser("lemma-hz", help="g_z(0) and its sign for real boundary data")
    p.add_argument("--boundary", required=True, metavar="SPEC")
    p.add_argument("--nodes", type=int, default=256)
    p.set_defaults(func=cmd_lemma_hz)

    p = sub.add_parser("wood", help="Wood's map: evaluate, invert or verify")
    p.add_argument("--dim", type=int, default=3)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--eval", metavar="P")
    g.add_argument("--invert", metavar="P")
    g.add_argument("--check", action="store_true")
    p.set_defaults(func=cmd_wood)

    p = sub.add_parser("tennisball", help="tennis-ball map values or identity suite")
    p.add_argument("--p", type=float, required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--eval", metavar="PHI,THETA")
    g.add_argument("--identities", action="store_true")
    p.set_defaults(func=cmd_tennisball)

    def quad_args(p, nphi, ntheta):
        p.add_argument("--nphi", type=int, default=nphi)
        p.add_argument("--ntheta", type=int, default=ntheta)

    p = sub.add_parser("ball-extend", help="ball extension of the tennis-ball map")
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--at", required=True, metavar="X,Y,Z")
    p.add_argument("--max-radius", type=float, default=0.8)
    quad_args(p, 128, 256)
    p.set_defaults(func=cmd_ball_extend)

    p = sub.add_parser("fold", help="axis fold check, sweep or profile")
    p.add_argument("--p", type=float)
    p.add_argument("--z", type=float)
    p.add_argument("--sweep", action="store_true")
    p.add_argument("--profile", action="store_true", help="table z, F1, F2, F3")
    p.add_argument("--points", type=int, default=81)
    p.add_argument("--radius", type=float, default=0.8, help="profile range |z| <= R")
    quad_args(p, 256, 512)
    p.set_defaults(func=cmd_fold)

    p = sub.add_parser("collision", help="two axis points with the same image")
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--radius", type=float, default=None)
    quad_args(p, 256, 512)
    p.set_defaults(func=cmd_collision)

    p = sub.add_parser("polydisk", help="polynomial queries and Cauchy integrals")
    p.add_argument("--poly", required=True, metavar="FILE")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--degree", action="store_true")
    g.add_argument("--homogeneous", action="store_true")
    g.add_argument("--eval", metavar="Z1,...,Zn")
    g.add_argument("--coeff", metavar="V1,...,Vn")
    p.add_argument("--center", metavar="A1,...,An")
    p.add_argument("--radii", metavar="R1,...,Rn")
    p.add_argument("--nodes", type=int, default=64)
    p.set_defaults(func=cmd_polydisk)
    return ap


def run(argv=None, out=None):
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig(args.command, parse_tol(args.tol), args.format, args.seed)
        return args.func(args, cfg, out)
    except UsageError as exc:
        print(f"harmext: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, ResolutionError, ValueError) as exc:
        print(f"harmext: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConvergenceError as exc:
        print(f"harmext: error: {exc}", file=sys.stderr)
        return EXIT_FAIL


def main(argv=None):
    try:
        return run(argv)
    except SystemExit as exc:  # argparse exits
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
