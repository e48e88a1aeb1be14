"""Command-line front end emitting figure-ready CSV/JSON."""

from __future__ import annotations

import argparse
import json
import sys
from contextlib import contextmanager
from typing import Optional

import numpy as np

from . import channel, eigen, kernel, process, spline, trap, verify
from .errors import TecError


def parse_channel_spec(text: str) -> channel.TecChannel:
    """Parse "tec:p,q,r,s,t", "becpair:delta,eps", or "qec:eps"."""
    if ":" not in text:
        raise ValueError(f"channel spec {text!r} lacks a 'kind:' prefix")
    kind, _, args = text.partition(":")
    try:
        vals = [float(v) for v in args.split(",")]
    except ValueError as exc:
        raise ValueError(f"non-numeric value in channel spec {text!r}") from exc
    if kind == "tec" and len(vals) == 5:
        return channel.new_tec(*vals)
    if kind == "becpair" and len(vals) == 2:
        return channel.from_bec_pair(*vals)
    if kind == "qec" and len(vals) == 1:
        return channel.from_qary_erasure(vals[0])
    raise ValueError(f"unrecognized channel spec {text!r}")


def _kernel_kind(name: str) -> process.KernelKind:
    return (
        process.KernelKind.QUATERNARY_TWIST
        if name == "twist"
        else process.KernelKind.UNTWISTED_BASELINE
    )


@contextmanager
def _output(path: Optional[str]):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w") as fh:
            yield fh


def _print_functionals(w: channel.TecChannel, fh) -> None:
    f = channel.functionals(w)
    fh.write(f"p,q,r,s,t = {','.join(f'{v:.6g}' for v in w.as_tuple())}\n")
    fh.write(f"H = {f.entropy:.6g}\n")
    fh.write(f"E = {f.edge_mass:.6g}\n")
    fh.write(f"A = {f.inertia:.6g}\n")
    q = "undefined" if f.quetelet is None else f"{f.quetelet:.6g}"
    fh.write(f"Q = {q}\n")
    fh.write(f"edge_heavy = {f.is_edge_heavy}\n")


def _cmd_show(args) -> int:
    with _output(args.out) as fh:
        _print_functionals(parse_channel_spec(args.channel), fh)
    return 0


def _cmd_children(args) -> int:
    w = parse_channel_spec(args.channel)
    pair = kernel.twisted_children(w)
    with _output(args.out) as fh:
        fh.write("serial child:\n")
        _print_functionals(pair.serial, fh)
        fh.write("parallel child:\n")
        _print_functionals(pair.parallel, fh)
    return 0


def _cmd_scatter(args) -> int:
    records = process.enumerate_descendants(
        parse_channel_spec(args.channel), args.depth, _kernel_kind(args.kernel)
    )
    with _output(args.out) as fh:
        process.write_scatter_csv(records, fh)
    return 0


def _cmd_series(args) -> int:
    stats = process.psi_expectation_series(
        parse_channel_spec(args.channel),
        args.depth,
        _kernel_kind(args.kernel),
        args.psi_exponent,
    )
    with _output(args.out) as fh:
        process.write_series_csv(stats, fh)
    return 0


def _cmd_trap(args) -> int:
    result = trap.iterate_bound(args.mode, args.nodes, args.tol, args.max_iters)
    if not result.converged:
        sys.stderr.write(
            f"warning: {args.mode} bound did not converge in {result.iterations} iterations\n"
        )
    sys.stderr.write(f"{args.mode} bound: {result.iterations} iterations\n")
    with _output(args.out) as fh:
        spline.write_spline(result.curve, fh)
    return 0


def _cmd_eigen(args) -> int:
    if args.action == "verify-lemma":
        max_ratio, argmax_x = eigen.verify_lemma_eigen(args.nodes)
        payload = {
            "max_ratio": max_ratio,
            "argmax_x": argmax_x,
            "bound": eigen.LEMMA_RATIO_BOUND,
            "pass": max_ratio < eigen.LEMMA_RATIO_BOUND,
        }
        with _output(args.out) as fh:
            fh.write(json.dumps(payload) + "\n")
        return 0 if payload["pass"] else 1
    # power iteration
    if args.map == "bec":
        child_map = eigen.BinaryBEC()
    elif args.map == "alpha":
        child_map = eigen.TwistOnCurve(lambda x: trap.analytic_curve("alpha_parabola", x))
    elif args.map == "curve":
        if not args.curve_file:
            raise ValueError("--curve-file is required with --map curve")
        child_map = eigen.TwistOnCurve(spline.read_spline(args.curve_file))
    else:
        raise ValueError(f"unknown map {args.map!r}")
    result = eigen.power_iterate(
        child_map, args.psi_exponent, args.nodes, args.tol, args.max_iters
    )
    payload = {
        "lambda": result.lam,
        "mu": result.mu,
        "iterations": result.iterations,
        "residual": result.residual,
        "concave": result.concave,
    }
    with _output(args.out) as fh:
        fh.write(json.dumps(payload) + "\n")
    if args.eigenfunction_out:
        spline.write_spline(result.eigenfunction, args.eigenfunction_out)
    return 0


def _cmd_verify(args) -> int:
    ids = verify.CHECK_IDS if args.check == "all" else (args.check,)
    reports = [verify.run_check(cid, args.samples, args.seed) for cid in ids]
    with _output(args.out) as fh:
        fh.write(json.dumps([r.to_dict() for r in reports], indent=2) + "\n")
    for r in reports:
        status = "PASS" if r.passed else "FAIL"
        sys.stderr.write(f"{r.check_id}: {status} (worst margin {r.worst_margin:.3e})\n")
    return 0 if all(r.passed for r in reports) else 1


def _cmd_fig2(args) -> int:
    bounds = trap.compute_trap_bounds(args.nodes, args.tol, args.max_iters)
    grid = np.linspace(0.0, 1.0, args.plot_points)
    with open(f"{args.out_prefix}_curves.csv", "w") as fh:
        fh.write("x,outer_parabola,outer_numeric,inner_numeric,alpha_parabola\n")
        outer_p = trap.analytic_curve("outer_parabola", grid)
        alpha_p = trap.analytic_curve("alpha_parabola", grid)
        chi = bounds.outer(grid)
        phi = bounds.inner(grid)
        for i, x in enumerate(grid):
            fh.write(
                f"{x:.6g},{outer_p[i]:.6g},{chi[i]:.6g},{phi[i]:.6g},{alpha_p[i]:.6g}\n"
            )
    records = process.enumerate_descendants(
        parse_channel_spec(args.channel), args.depth, process.KernelKind.QUATERNARY_TWIST
    )
    with open(f"{args.out_prefix}_scatter.csv", "w") as fh:
        process.write_scatter_csv(records, fh)
    sys.stderr.write(
        f"wrote {args.out_prefix}_curves.csv and {args.out_prefix}_scatter.csv\n"
    )
    return 0


def _cmd_fig3(args) -> int:
    root = parse_channel_spec(args.channel)
    twist = process.psi_expectation_series(
        root, args.depth, process.KernelKind.QUATERNARY_TWIST, args.psi_exponent
    )
    base = process.psi_expectation_series(
        root, args.depth, process.KernelKind.UNTWISTED_BASELINE, args.psi_exponent
    )
    with _output(args.out) as fh:
        fh.write("n,twist,untwisted\n")
        for a, b in zip(twist, base):
            fh.write(f"{a.generation},{a.neg_log2_ratio:.6g},{b.neg_log2_ratio:.6g}\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tecpol",
        description="Polarization dynamics of tetrahedral erasure channels.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, channel_arg=True):
        if channel_arg:
            p.add_argument("channel", help="tec:p,q,r,s,t | becpair:d,e | qec:e")
        p.add_argument("--out", default=None, help="output path (default stdout)")

    p = sub.add_parser("show", help="print channel functionals")
    add_common(p)
    p.set_defaults(func=_cmd_show)

    p = sub.add_parser("children", help="print both twisted children")
    add_common(p)
    p.set_defaults(func=_cmd_children)

    p = sub.add_parser("scatter", help="descendant scatter CSV")
    add_common(p)
    p.add_argument("--depth", type=int, default=10)
    p.add_argument("--kernel", choices=("twist", "untwisted"), default="twist")
    p.set_defaults(func=_cmd_scatter)

    p = sub.add_parser("series", help="per-generation expectation CSV")
    add_common(p)
    p.add_argument("--depth", type=int, default=20)
    p.add_argument("--kernel", choices=("twist", "untwisted"), default="twist")
    p.add_argument("--psi-exponent", type=float, default=0.7)
    p.set_defaults(func=_cmd_series)

    p = sub.add_parser("trap", help="iterate a numerical trap bound")
    add_common(p, channel_arg=False)
    p.add_argument("--mode", choices=("inner", "outer"), required=True)
    p.add_argument("--nodes", type=int, default=100_000)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--max-iters", type=int, default=2000)
    p.set_defaults(func=_cmd_trap)

    p = sub.add_parser("eigen", help="eigenvalue certificates")
    p.add_argument("action", choices=("verify-lemma", "power"))
    p.add_argument("--map", choices=("bec", "alpha", "curve"), default="bec")
    p.add_argument("--curve-file", default=None)
    p.add_argument("--nodes", type=int, default=100_000)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--max-iters", type=int, default=20_000)
    p.add_argument("--psi-exponent", type=float, default=0.7)
    p.add_argument("--eigenfunction-out", default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_eigen)

    p = sub.add_parser("verify", help="run theorem checks")
    p.add_argument("check", choices=verify.CHECK_IDS + ("all",))
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("fig2", help="trap curves plus descendant scatter")
    p.add_argument("channel", nargs="?", default="becpair:0.55,0.55")
    p.add_argument("--depth", type=int, default=10)
    p.add_argument("--nodes", type=int, default=100_000)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--max-iters", type=int, default=2000)
    p.add_argument("--plot-points", type=int, default=101)
    p.add_argument("--out-prefix", default="fig2")
    p.set_defaults(func=_cmd_fig2)

    p = sub.add_parser("fig3", help="slope series for both kernels")
    p.add_argument("channel", nargs="?", default="becpair:0.55,0.55")
    p.add_argument("--depth", type=int, default=20)
    p.add_argument("--psi-exponent", type=float, default=0.7)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_fig3)

    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except (TecError, ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
