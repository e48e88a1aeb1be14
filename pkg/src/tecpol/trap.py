"""Trapping-region curves: analytic parabolas and polynomial bounds, plus the
spline fixed-point iteration producing the numerical inner and outer bounds.

Working in the (entropy, edge mass) plane of balanced channels, a curve is an
inner bound if the region above it is closed under taking children, and an
outer bound if the region below it is.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .channel import EDGE_HEAVY_THRESHOLD
from .errors import UnknownCurve
from .spline import LinearSpline, compose_through_inverse

CURVE_NAMES = ("alpha_parabola", "outer_parabola", "poly_inner", "poly_outer")


def analytic_curve(name: str, x):
    """Evaluate one of the four closed-form trap curves."""
    x = np.asarray(x, dtype=float)
    w = x * (1.0 - x)
    if name == "alpha_parabola":
        out = EDGE_HEAVY_THRESHOLD * w
    elif name == "outer_parabola":
        out = 2.0 * w
    elif name == "poly_inner":
        out = w * (1.66 - 0.38 * w)
    elif name == "poly_outer":
        out = w * (2.0 - 2.0 * w / 3.0)
    else:
        raise UnknownCurve(f"no curve named {name!r}")
    return out if out.ndim else float(out)


def child_maps_on_grid(x: np.ndarray, y: np.ndarray):
    """(h_p, e_p, h_s, e_s) arrays for balanced channels at (x, y)."""
    y2 = y * y
    h_p = x * x - y2 / 12.0
    e_p = 2.0 * x * y - 2.0 * y2 / 3.0
    h_s = 2.0 * x - x * x + y2 / 12.0
    e_s = 2.0 * y - 2.0 * x * y - 2.0 * y2 / 3.0
    return h_p, e_p, h_s, e_s


@dataclass(frozen=True)
class BoundIteration:
    curve: LinearSpline
    iterations: int
    converged: bool


@dataclass(frozen=True)
class TrapBounds:
    inner: LinearSpline
    outer: LinearSpline
    inner_iters: int
    outer_iters: int
    tol: float


def _iterate_once(grid: np.ndarray, curve: np.ndarray, mode: str) -> np.ndarray:
    h_p, e_p, h_s, e_s = child_maps_on_grid(grid, curve)
    e_pk = compose_through_inverse(h_p, e_p, grid)
    e_sk = compose_through_inverse(h_s, e_s, grid)
    nxt = np.minimum(e_pk, e_sk) if mode == "inner" else np.maximum(e_pk, e_sk)
    # the e-maps vanish at both ends; pinning kills boundary drift
    nxt[0] = 0.0
    nxt[-1] = 0.0
    return nxt


def iterate_bound(
    mode: Literal["inner", "outer"],
    nodes: int = 100_000,
    tol: float = 1e-6,
    max_iters: int = 2000,
) -> BoundIteration:
    """Fixed-point iteration for the numerical inner/outer bound.

    Both iterations start from the outer parabola 2x(1-x); the inner one
    contracts with a node-wise min, the outer with a max, and stop when the
    sup distance between consecutive iterates drops below ``tol``.
    """
    if mode not in ("inner", "outer"):
        raise ValueError(f"mode must be 'inner' or 'outer', got {mode!r}")
    if nodes < 100:
        raise ValueError("need at least 100 nodes")
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    grid = np.linspace(0.0, 1.0, nodes)
    curve = 2.0 * grid * (1.0 - grid)
    for k in range(1, max_iters + 1):
        nxt = _iterate_once(grid, curve, mode)
        delta = float(np.max(np.abs(nxt - curve)))
        curve = nxt
        if delta < tol:
            return BoundIteration(LinearSpline(grid, curve), k, True)
    return BoundIteration(LinearSpline(grid, curve), max_iters, False)


def compute_trap_bounds(
    nodes: int = 100_000, tol: float = 1e-6, max_iters: int = 2000
) -> TrapBounds:
    inner = iterate_bound("inner", nodes, tol, max_iters)
    outer = iterate_bound("outer", nodes, tol, max_iters)
    return TrapBounds(inner.curve, outer.curve, inner.iterations, outer.iterations, tol)


def fixed_point_residual(curve: LinearSpline, mode: Literal["inner", "outer"]) -> float:
    """Sup-norm defect of the curve under one more iteration."""
    grid = curve.nodes
    nxt = _iterate_once(grid, curve.values, mode)
    return float(np.max(np.abs(nxt - curve.values)))


@dataclass(frozen=True)
class InvarianceReport:
    side: str
    samples: int
    worst_margin: float
    witness: tuple[float, float]
    passed: bool


def invariance_check(
    curve,
    side: Literal["above", "below"],
    samples: int = 100_000,
    seed: int = 0,
    tol_margin: float = 1e-9,
) -> InvarianceReport:
    """Sample balanced points on the claimed-invariant side of ``curve`` and
    test that both children stay on that side.

    ``curve`` may be a LinearSpline or any callable on arrays.  A quarter of
    the samples are placed within 1e-3 of the curve, where violations would
    show up first.
    """
    rng = np.random.default_rng(seed)
    x = rng.uniform(0.0, 1.0, samples)
    cap = 2.0 * np.minimum(x, 1.0 - x)
    c = np.minimum(np.asarray(curve(x), dtype=float), cap)
    u = rng.uniform(0.0, 1.0, samples)
    if side == "above":
        y = c + u * (cap - c)
    elif side == "below":
        y = u * c
    else:
        raise ValueError(f"side must be 'above' or 'below', got {side!r}")
    stratum = slice(0, samples // 4)
    off = rng.uniform(0.0, 1e-3, samples)[stratum]
    if side == "above":
        y[stratum] = np.minimum(c[stratum] + off, cap[stratum])
    else:
        y[stratum] = np.maximum(c[stratum] - off, 0.0)

    h_p, e_p, h_s, e_s = child_maps_on_grid(x, y)
    c_p = np.asarray(curve(h_p), dtype=float)
    c_s = np.asarray(curve(h_s), dtype=float)
    if side == "above":
        margins = np.minimum(e_p - c_p, e_s - c_s)
    else:
        margins = np.minimum(c_p - e_p, c_s - e_s)
    worst = int(np.argmin(margins))
    worst_margin = float(margins[worst])
    return InvarianceReport(
        side=side,
        samples=samples,
        worst_margin=worst_margin,
        witness=(float(x[worst]), float(y[worst])),
        passed=worst_margin >= -tol_margin,
    )
