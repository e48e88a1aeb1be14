"""Eigenfunction machinery for scaling-exponent certificates.

A child-entropy map sends x to the entropies of the two children.  Any
nonnegative function psi vanishing at the endpoints whose worst one-step
ratio is lambda < 1 certifies the scaling exponent mu = -1/log2(lambda).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .errors import DegeneratePoint, NoConvergence, OutOfRange
from .spline import LinearSpline

#: the worst-case one-step ratio certified for the 9/7 trap curve
LEMMA_RATIO_BOUND = 0.818

#: default psi threshold below which ratio nodes are excluded
PSI_FLOOR = 1e-9


class ChildEntropyMap:
    """x -> (H_serial, H_parallel); subclasses fix the two maps."""

    def entropies(self, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        raise NotImplementedError


class BinaryBEC(ChildEntropyMap):
    """The classical BEC recursion: children at 2x - x^2 and x^2."""

    def entropies(self, x):
        x = np.asarray(x, dtype=float)
        return 2.0 * x - x * x, x * x


class TwistOnCurve(ChildEntropyMap):
    """Twist-kernel children of balanced channels riding an edge-mass curve.

    ``curve`` maps entropy to edge mass; a LinearSpline or plain callable.
    """

    def __init__(self, curve: Union[LinearSpline, Callable]):
        self.curve = curve

    def entropies(self, x):
        x = np.asarray(x, dtype=float)
        y = np.asarray(self.curve(x), dtype=float)
        y2 = y * y / 12.0
        return 2.0 * x - x * x + y2, x * x - y2


def lemma_psi(x):
    """The closed-form certificate eigenfunction of the 0.818 bound."""
    x = np.asarray(x, dtype=float)
    w = x * (1.0 - x)
    return w**0.697 * (5.0 - np.sqrt(w))


def lemma_child_entropies(x):
    """Quartic child entropies on the curve y = 9x(1-x)/7."""
    x = np.asarray(x, dtype=float)
    h_p = (169.0 * x**2 + 54.0 * x**3 - 27.0 * x**4) / 196.0
    return 2.0 * x - h_p, h_p


def one_step_ratio(psi, child_map: ChildEntropyMap, x) -> float:
    """[psi(H_s(x)) + psi(H_p(x))] / (2 psi(x)) for a single interior x."""
    if not 0.0 < x < 1.0:
        raise DegeneratePoint(f"x={x!r} is not interior")
    denom = float(np.asarray(psi(x)))
    if denom <= 0.0:
        raise DegeneratePoint(f"psi({x}) = {denom}; ratio undefined")
    h_s, h_p = child_map.entropies(np.asarray([x]))
    num = float(np.asarray(psi(h_s[0]))) + float(np.asarray(psi(h_p[0])))
    return num / (2.0 * denom)


def verify_lemma_eigen(grid_size: int = 100_000) -> tuple[float, float]:
    """Max one-step ratio of the closed-form certificate on an interior grid.

    Returns (max_ratio, argmax_x); the certificate holds iff the max stays
    strictly below 0.818.
    """
    if grid_size < 1000:
        raise ValueError("need at least 1000 grid points")
    x = np.arange(1, grid_size + 1) / (grid_size + 1.0)
    h_s, h_p = lemma_child_entropies(x)
    ratio = (lemma_psi(h_s) + lemma_psi(h_p)) / (2.0 * lemma_psi(x))
    k = int(np.argmax(ratio))
    return float(ratio[k]), float(x[k])


def mu_from_lambda(lam: float) -> float:
    """Scaling exponent certified by a one-step ratio bound."""
    if not 0.0 < lam < 1.0:
        raise OutOfRange(f"lambda must lie in (0, 1), got {lam!r}")
    return -1.0 / math.log2(lam)


@dataclass(frozen=True)
class PowerIterationResult:
    lam: float
    mu: float
    eigenfunction: LinearSpline
    iterations: int
    residual: float
    concave: bool


def _rayleigh(psi_vals, hs, hp, grid, floor):
    num = np.interp(hs, grid, psi_vals) + np.interp(hp, grid, psi_vals)
    mask = psi_vals > floor
    return float(np.max(num[mask] / (2.0 * psi_vals[mask])))


def _is_concave(vals: np.ndarray) -> bool:
    # interpolation kinks perturb second differences by O(dx^2), so the
    # tolerance scales with the square of the grid spacing
    dx = 1.0 / (len(vals) - 1)
    tol = 1e3 * dx * dx
    second = np.diff(vals, 2)
    return bool(np.all(second <= tol))


def power_iterate(
    child_map: ChildEntropyMap,
    psi0_exponent: float = 0.7,
    nodes: int = 100_000,
    tol: float = 1e-9,
    max_iters: int = 20_000,
    psi_floor: float = PSI_FLOOR,
) -> PowerIterationResult:
    """Power iteration for the optimal eigenfunction of a child-entropy map.

    lambda is read off as the worst node-wise Rayleigh ratio of the converged
    iterate (over nodes where psi exceeds ``psi_floor``), which is robust to
    the normalization convention of the recursion itself.  Concavity of the
    limit is checked, not enforced: a non-concave limit invalidates the
    separation argument behind the mu certificate.
    """
    if nodes < 1000:
        raise ValueError("need at least 1000 nodes")
    grid = np.linspace(0.0, 1.0, nodes)
    hs, hp = child_map.entropies(grid)
    hs = np.clip(hs, 0.0, 1.0)
    hp = np.clip(hp, 0.0, 1.0)
    psi = (grid * (1.0 - grid)) ** psi0_exponent
    psi /= psi.max()
    for k in range(1, max_iters + 1):
        nxt = np.interp(hs, grid, psi) + np.interp(hp, grid, psi)
        nxt /= nxt.max()
        delta = float(np.max(np.abs(nxt - psi)))
        psi = nxt
        if delta < tol:
            lam = _rayleigh(psi, hs, hp, grid, psi_floor)
            return PowerIterationResult(
                lam=lam,
                mu=mu_from_lambda(lam),
                eigenfunction=LinearSpline(grid, psi),
                iterations=k,
                residual=delta,
                concave=_is_concave(psi),
            )
    raise NoConvergence(f"power iteration did not reach tol={tol} in {max_iters} steps")
