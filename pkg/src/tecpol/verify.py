"""Randomized numerical verification of the polarization theorems.

Every check transcribes one inequality and reports the worst signed margin
over a stratified sample; a nonnegative margin (up to a -1e-9 floating-point
floor) means PASS.  Reports are deterministic given (id, samples, seed).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import kernel
from .channel import EDGE_HEAVY_THRESHOLD
from .errors import UnknownCheck
from .trap import analytic_curve, child_maps_on_grid

MARGIN_FLOOR = -1e-9


@dataclass(frozen=True)
class VerificationReport:
    check_id: str
    samples: int
    worst_margin: float
    witness: dict
    passed: bool
    skipped: int = 0
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "id": self.check_id,
            "samples": self.samples,
            "worst_margin": self.worst_margin,
            "witness": self.witness,
            "pass": self.passed,
            "skipped": self.skipped,
            "note": self.note,
        }


# --- samplers ---------------------------------------------------------------


def stratified_tecs(rng: np.random.Generator, count: int) -> np.ndarray:
    """Simplex samples covering the interior, edges, corners, balanced
    channels, and low-edge-mass channels."""
    n_uniform = count // 2
    n_conc = count // 4
    n_low = count // 6
    n_special = count - n_uniform - n_conc - n_low
    parts = [
        kernel.sample_tecs(rng, n_uniform),
        kernel.sample_tecs_concentrated(rng, n_conc),
    ]
    low = kernel.sample_tecs(rng, n_low)
    scale = 10.0 ** rng.uniform(-4.0, 0.0, n_low)
    low[:, 1:4] *= scale[:, None]
    low /= low.sum(axis=1, keepdims=True)
    parts.append(low)
    special = np.zeros((n_special, 5))
    corners = np.eye(5)
    ncorner = min(5, n_special)
    special[:ncorner] = corners[:ncorner]
    if n_special > 5:
        # balanced channels: q = r = s
        m = n_special - 5
        x = rng.uniform(0.0, 1.0, m)
        y = rng.uniform(0.0, 1.0, m) * 2.0 * np.minimum(x, 1.0 - x)
        bal = np.column_stack(
            [1.0 - x - y / 2.0, y / 3.0, y / 3.0, y / 3.0, x - y / 2.0]
        )
        special[5:] = np.clip(bal, 0.0, 1.0)
    parts.append(special)
    return np.vstack(parts)


def _balanced_q_sample(rng, count, q_low, q_high_cap, near=None):
    """Balanced points with Quetelet index drawn from [q_low, min(q_high_cap,
    feasibility)]; a quarter of the points sit within 1e-6 of q_low when
    ``near`` is set."""
    x = rng.uniform(1e-6, 1.0 - 1e-6, count)
    q_cap = np.minimum(2.0 / np.maximum(x, 1.0 - x), q_high_cap)
    b = q_low + rng.uniform(0.0, 1.0, count) * np.maximum(q_cap - q_low, 0.0)
    if near == "low":
        k = count // 4
        b[:k] = q_low + rng.uniform(0.0, 1e-6, k)
    y = b * x * (1.0 - x)
    return x, y, b


def _child_quetelet(x, y):
    h_p, e_p, h_s, e_s = child_maps_on_grid(x, y)
    q_p = e_p / (h_p * (1.0 - h_p))
    q_s = e_s / (h_s * (1.0 - h_s))
    return q_s, q_p, h_s, h_p


def _worst(margins, witness_fn):
    k = int(np.argmin(margins))
    return float(margins[k]), witness_fn(k)


# --- checks -----------------------------------------------------------------


def _check_uniform_a(rng, samples):
    w = stratified_tecs(rng, samples)
    a = kernel.inertia_array(w)
    serial, parallel = kernel.children_arrays(w)
    a_s = kernel.inertia_array(serial)
    a_p = kernel.inertia_array(parallel)
    bound = a * (1.0 - a / 3.0)
    margins = bound - np.maximum(a_s, a_p)
    return _worst(margins, lambda k: {"tec": [float(v) for v in w[k]]})


def _check_average_a(rng, samples):
    w = stratified_tecs(rng, samples)
    a = kernel.inertia_array(w)
    serial, parallel = kernel.children_arrays(w)
    margins = a - kernel.inertia_array(serial) - kernel.inertia_array(parallel)
    return _worst(margins, lambda k: {"tec": [float(v) for v in w[k]]})


def _check_ultimate_a(rng, samples):
    # descriptive: fit the O(1/n) constant along random depth-100 paths
    count = min(samples, 1000)
    depth = 100
    gen = stratified_tecs(rng, count)
    worst_c = 0.0
    worst_row = gen[0]
    for n in range(1, depth + 1):
        serial, parallel = kernel.children_arrays(gen)
        pick = rng.integers(0, 2, count)
        gen = np.where(pick[:, None] == 1, parallel, serial)
        scaled = kernel.inertia_array(gen) * n
        k = int(np.argmax(scaled))
        if scaled[k] > worst_c:
            worst_c = float(scaled[k])
            worst_row = gen[k]
    return float("inf"), {"fitted_C": worst_c, "tec": [float(v) for v in worst_row]}


def _check_trap(rng, samples):
    alpha = EDGE_HEAVY_THRESHOLD
    x, y, _b = _balanced_q_sample(rng, samples, alpha, np.inf, near="low")
    q_s, q_p, _, _ = _child_quetelet(x, y)
    margins = np.minimum(q_s - alpha, q_p - alpha)
    return _worst(margins, lambda k: {"x": float(x[k]), "y": float(y[k])})


def _check_inner_q(rng, samples):
    alpha = EDGE_HEAVY_THRESHOLD
    # the bound degenerates as eps -> 0, so eps is log-uniform down to 1e-4
    eps = 10.0 ** rng.uniform(-4.0, np.log10(alpha) - 1e-9, samples)
    x = rng.uniform(1e-6, 1.0 - 1e-6, samples)
    b = rng.uniform(0.0, 1.0, samples) * (alpha - eps)
    b = np.maximum(b, 1e-9)
    y = b * x * (1.0 - x)
    q_s, q_p, _, _ = _child_quetelet(x, y)
    delta = 3.0 * eps / 8.0
    margins = np.minimum(
        q_s - b * (1.0 + x * delta), q_p - b * (1.0 + (1.0 - x) * delta)
    )
    return _worst(
        margins, lambda k: {"x": float(x[k]), "y": float(y[k]), "eps": float(eps[k])}
    )


def _check_uniform_q(rng, samples):
    alpha = EDGE_HEAVY_THRESHOLD
    eps = 10.0 ** rng.uniform(-4.0, np.log10(alpha) - 1e-9, samples)
    x = rng.uniform(1e-6, 1.0 - 1e-6, samples)
    b = np.maximum(rng.uniform(0.0, 1.0, samples) * (alpha - eps), 1e-9)
    y = b * x * (1.0 - x)
    q_s, q_p, _, _ = _child_quetelet(x, y)
    goal = b * (1.0 + eps / 8.0)
    margins = np.full(samples, np.inf)
    hi = x >= 1.0 / 3.0
    lo = x <= 2.0 / 3.0
    margins[hi] = q_s[hi] - goal[hi]
    margins[lo] = np.minimum(margins[lo], q_p[lo] - goal[lo])
    return _worst(
        margins, lambda k: {"x": float(x[k]), "y": float(y[k]), "eps": float(eps[k])}
    )


def _check_gap_jump(rng, samples):
    x = rng.uniform(2.0 / 3.0, 1.0, samples)
    y = rng.uniform(0.0, 1.0, samples) * 2.0 * (1.0 - x)
    h_p = x * x - y * y / 12.0
    margins = h_p - 11.0 / 27.0
    return _worst(margins, lambda k: {"x": float(x[k]), "y": float(y[k])})


def _check_outer_q(rng, samples):
    x, y, _b = _balanced_q_sample(rng, samples, 1e-9, 2.0, near=None)
    k = samples // 4
    # stress the boundary Q = 2
    y[:k] = 2.0 * x[:k] * (1.0 - x[:k])
    # Q <= 2 is equivalent to 2H(1-H) - E >= 0; the polynomial form stays
    # accurate near the endpoints where H(1-H) underflows the quotient
    h_p, e_p, h_s, e_s = child_maps_on_grid(x, y)
    one_minus_hp = (1.0 - x) * (1.0 + x) + y * y / 12.0
    one_minus_hs = (1.0 - x) ** 2 - y * y / 12.0
    margins = np.minimum(
        2.0 * h_s * one_minus_hs - e_s, 2.0 * h_p * one_minus_hp - e_p
    )
    return _worst(margins, lambda k_: {"x": float(x[k_]), "y": float(y[k_])})


def _poly_f(x):
    return analytic_curve("poly_inner", x)


def _poly_g(x):
    return analytic_curve("poly_outer", x)


def _check_fg_bounds(rng, samples):
    # invariance of the polynomial trap bounds: the region above f and the
    # region below g are each closed under taking children
    half = samples // 2
    x = rng.uniform(1e-9, 1.0 - 1e-9, samples)
    cap = 2.0 * np.minimum(x, 1.0 - x)
    u = rng.uniform(0.0, 1.0, samples)
    f_x = _poly_f(x)
    g_x = _poly_g(x)
    y = np.empty(samples)
    y[:half] = f_x[:half] + u[:half] * (cap[:half] - f_x[:half])
    y[half:] = u[half:] * g_x[half:]
    h_p, e_p, h_s, e_s = child_maps_on_grid(x, y)
    margins = np.empty(samples)
    margins[:half] = np.minimum(
        e_p[:half] - _poly_f(h_p[:half]), e_s[:half] - _poly_f(h_s[:half])
    )
    margins[half:] = np.minimum(
        _poly_g(h_p[half:]) - e_p[half:], _poly_g(h_s[half:]) - e_s[half:]
    )
    return _worst(
        margins,
        lambda k: {
            "x": float(x[k]),
            "y": float(y[k]),
            "side": "above_f" if k < half else "below_g",
        },
    )


def _check_oracle(rng, samples):
    count = min(samples, 10_000)
    us = kernel.sample_tecs(rng, count)
    vs = kernel.sample_tecs(rng, count)
    worst = 0.0
    witness = {}
    for i in range(count):
        u = kernel.tec_from_row(us[i])
        v = kernel.tec_from_row(vs[i])
        for mode, closed in (
            ("serial", kernel.serial_combine(u, v)),
            ("parallel", kernel.parallel_combine(u, v)),
        ):
            oracle = kernel.brute_force_combine(u, v, mode)
            diff = max(
                abs(a - b) for a, b in zip(closed.as_tuple(), oracle.as_tuple())
            )
            if diff > worst:
                worst = diff
                witness = {"u": [float(v) for v in us[i]], "v": [float(v) for v in vs[i]], "mode": mode}
    return -worst, witness


def _check_conservation(rng, samples):
    w = stratified_tecs(rng, samples)
    h = kernel.entropy_array(w)
    serial, parallel = kernel.children_arrays(w)
    defect = np.abs(
        kernel.entropy_array(serial) + kernel.entropy_array(parallel) - 2.0 * h
    )
    return _worst(-defect, lambda k: {"tec": [float(v) for v in w[k]]})


_CHECKS: dict[str, Callable] = {
    "uniform-A": _check_uniform_a,
    "average-A": _check_average_a,
    "ultimate-A": _check_ultimate_a,
    "trap": _check_trap,
    "inner-Q": _check_inner_q,
    "uniform-Q": _check_uniform_q,
    "gap-jump": _check_gap_jump,
    "outer-Q": _check_outer_q,
    "fg-bounds": _check_fg_bounds,
    "oracle": _check_oracle,
    "conservation": _check_conservation,
}

CHECK_IDS = tuple(_CHECKS)

#: checks whose margins are asserted (ultimate-A is descriptive only: the
#: O(1/n) statement hides an unspecified constant)
ASSERTED_CHECK_IDS = tuple(cid for cid in CHECK_IDS if cid != "ultimate-A")


def run_check(check_id: str, samples: int = 100_000, seed: int = 0) -> VerificationReport:
    if check_id not in _CHECKS:
        raise UnknownCheck(f"no check named {check_id!r}; known: {', '.join(CHECK_IDS)}")
    if samples < 1:
        raise ValueError("samples must be at least 1")
    rng = np.random.default_rng(seed)
    worst, witness = _CHECKS[check_id](rng, samples)
    note = "descriptive only; not asserted" if check_id == "ultimate-A" else ""
    return VerificationReport(
        check_id=check_id,
        samples=samples,
        worst_margin=worst,
        witness=witness,
        passed=bool(worst >= MARGIN_FLOOR),
        note=note,
    )


def run_all(samples: int = 100_000, seed: int = 0) -> list[VerificationReport]:
    return [run_check(cid, samples, seed) for cid in CHECK_IDS]
