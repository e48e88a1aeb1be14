"""Channel combination: serial/parallel algebra, the twisted kernel, and a
rank-based brute-force oracle over GF(2)^4.

The closed forms come from enumerating the 25 erasure-pattern pairs of two
channels.  The oracle re-derives that enumeration independently, by tracking
which linear functionals of the four input bits are revealed and computing
span membership over the two-element field.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Literal

import numpy as np

from .channel import BalancedPoint, TecChannel
from .errors import InfeasiblePoint


@dataclass(frozen=True)
class ChildPair:
    serial: TecChannel
    parallel: TecChannel


def serial_combine(u: TecChannel, v: TecChannel) -> TecChannel:
    """Channel seen by a decoder guessing the componentwise sum of the inputs."""
    p, q, r, s, _t = u.as_tuple()
    p2, q2, r2, s2, _t2 = v.as_tuple()
    a = p * p2
    b = p * q2 + q * q2 + q * p2
    c = p * r2 + r * r2 + r * p2
    d = p * s2 + s * s2 + s * p2
    return TecChannel(a, b, c, d, max(1.0 - a - b - c - d, 0.0))


def parallel_combine(u: TecChannel, v: TecChannel) -> TecChannel:
    """Channel seen when guessing u's input given both outputs and the sums."""
    _p, q, r, s, t = u.as_tuple()
    _p2, q2, r2, s2, t2 = v.as_tuple()
    b = t * q2 + q * q2 + q * t2
    c = t * r2 + r * r2 + r * t2
    d = t * s2 + s * s2 + s * t2
    e = t * t2
    return TecChannel(max(1.0 - b - c - d - e, 0.0), b, c, d, e)


def twisted_children(w: TecChannel) -> ChildPair:
    """Both children under the twisted kernel: combine w with its rotation."""
    p, q, r, s, t = w.as_tuple()
    sp = p * p
    sq = p * s + s * q + q * p
    sr = p * q + q * r + r * p
    ss = p * r + r * s + s * p
    serial = TecChannel(sp, sq, sr, ss, max(1.0 - sp - sq - sr - ss, 0.0))
    pt = t * t
    pq = t * s + s * q + q * t
    pr = t * q + q * r + r * t
    ps = t * r + r * s + s * t
    parallel = TecChannel(max(1.0 - pq - pr - ps - pt, 0.0), pq, pr, ps, pt)
    return ChildPair(serial, parallel)


def untwisted_children(w: TecChannel) -> ChildPair:
    """Children without the rotation; the binary-matrix baseline."""
    return ChildPair(serial_combine(w, w), parallel_combine(w, w))


def bec_children(eps: float) -> tuple[float, float]:
    """Erasure probabilities of the two children of BEC(eps)."""
    from .errors import OutOfRange

    if not 0.0 <= eps <= 1.0:
        raise OutOfRange(f"erasure probability {eps!r} outside [0, 1]")
    return (2.0 * eps - eps * eps, eps * eps)


def balanced_child_maps(point: BalancedPoint) -> tuple[float, float, float, float]:
    """(h_p, e_p, h_s, e_s) of the children of the balanced channel at (x, y)."""
    x, y = point.x, point.y
    if not (0.0 <= x <= 1.0) or y < 0.0 or y > 2.0 * min(x, 1.0 - x) + 1e-12:
        raise InfeasiblePoint(f"({x}, {y}) is not a feasible balanced point")
    h_p = x * x - y * y / 12.0
    e_p = 2.0 * x * y - 2.0 * y * y / 3.0
    h_s = 2.0 * x - x * x + y * y / 12.0
    e_s = 2.0 * y - 2.0 * x * y - 2.0 * y * y / 3.0
    return (h_p, e_p, h_s, e_s)


def children_inertia_closed_form(w: TecChannel) -> tuple[float, float]:
    """Inertia of both twisted children without constructing them."""
    p, q, r, s, t = w.as_tuple()
    a_s = (
        (q - r) ** 2 * (s + p) ** 2
        + (r - s) ** 2 * (q + p) ** 2
        + (s - q) ** 2 * (r + p) ** 2
    )
    a_p = (
        (q - r) ** 2 * (s + t) ** 2
        + (r - s) ** 2 * (q + t) ** 2
        + (s - q) ** 2 * (r + t) ** 2
    )
    return (a_s, a_p)


# --- brute-force oracle ----------------------------------------------------
#
# Input bits (u1, u2, v1, v2) are basis vectors of GF(2)^4, encoded as the
# bitmask integers 1, 2, 4, 8.  A revealed quantity is a linear functional,
# i.e. a mask.  Erasure pattern index: 0 full pair, 1 first bit, 2 sum,
# 3 second bit, 4 nothing.

_U_ROWS = ((1, 2), (1,), (3,), (2,), ())
_V_ROWS = ((4, 8), (4,), (12,), (8,), ())
_T1 = 1 ^ 4  # u1 + v1
_T2 = 2 ^ 8  # u2 + v2


def _reduce(vec: int, basis: list[int]) -> int:
    for b in basis:
        vec = min(vec, vec ^ b)
    return vec


def _span_add(basis: list[int], vec: int) -> None:
    vec = _reduce(vec, basis)
    if vec:
        basis.append(vec)
        basis.sort(reverse=True)


def _knowledge_class(known: Iterable[int], t1: int, t2: int) -> int:
    """Which of the five erasure patterns the revealed data amounts to,
    with respect to the target pair (t1, t2)."""
    basis: list[int] = []
    for row in known:
        _span_add(basis, row)
    k1 = _reduce(t1, basis) == 0
    k2 = _reduce(t2, basis) == 0
    k12 = _reduce(t1 ^ t2, basis) == 0
    if k1 and k2:
        return 0
    if k1:
        return 1
    if k12:
        return 2
    if k2:
        return 3
    return 4


def _class_table(mode: Literal["serial", "parallel"]) -> list[list[int]]:
    table = []
    for i in range(5):
        row = []
        for j in range(5):
            known = list(_U_ROWS[i]) + list(_V_ROWS[j])
            if mode == "parallel":
                known += [_T1, _T2]
                t1, t2 = 1, 2
            else:
                t1, t2 = _T1, _T2
            row.append(_knowledge_class(known, t1, t2))
        table.append(row)
    return table


_TABLES = {"serial": _class_table("serial"), "parallel": _class_table("parallel")}


def brute_force_combine(
    u: TecChannel, v: TecChannel, mode: Literal["serial", "parallel"]
) -> TecChannel:
    """Combine u and v by exhausting all 25 erasure-pattern pairs.

    Independent of the closed forms: the outcome of each pattern pair is
    decided by rank arithmetic over GF(2), not by the scenario case
    analysis the closed forms encode.
    """
    if mode not in _TABLES:
        raise ValueError(f"mode must be 'serial' or 'parallel', got {mode!r}")
    table = _TABLES[mode]
    pu = u.as_tuple()
    pv = v.as_tuple()
    mass = [0.0] * 5
    for i in range(5):
        for j in range(5):
            mass[table[i][j]] += pu[i] * pv[j]
    return TecChannel(*mass)


# --- random channel sampling ----------------------------------------------


def sample_tecs(rng: np.random.Generator, count: int) -> np.ndarray:
    """Uniform samples on the probability simplex, shape (count, 5)."""
    return rng.dirichlet(np.ones(5), size=count)


def sample_tecs_concentrated(rng: np.random.Generator, count: int) -> np.ndarray:
    """Samples pushed toward edges and corners of the simplex.

    Squaring before renormalizing stresses low-edge-mass and near-polarized
    channels, where the theorem margins are thinnest.
    """
    raw = rng.dirichlet(np.ones(5), size=count) ** 2
    return raw / raw.sum(axis=1, keepdims=True)


def tec_from_row(row: np.ndarray) -> TecChannel:
    return TecChannel(*(float(v) for v in row))


# --- vectorized closed forms (shared with the process module) --------------


def children_arrays(w: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Twisted children of an (N, 5) array of channels; returns (serial, parallel)."""
    p, q, r, s, t = (w[:, k] for k in range(5))
    serial = np.empty_like(w)
    serial[:, 0] = p * p
    serial[:, 1] = p * s + s * q + q * p
    serial[:, 2] = p * q + q * r + r * p
    serial[:, 3] = p * r + r * s + s * p
    serial[:, 4] = 1.0 - serial[:, :4].sum(axis=1)
    parallel = np.empty_like(w)
    parallel[:, 1] = t * s + s * q + q * t
    parallel[:, 2] = t * q + q * r + r * t
    parallel[:, 3] = t * r + r * s + s * t
    parallel[:, 4] = t * t
    parallel[:, 0] = 1.0 - parallel[:, 1:].sum(axis=1)
    np.clip(serial[:, 4], 0.0, None, out=serial[:, 4])
    np.clip(parallel[:, 0], 0.0, None, out=parallel[:, 0])
    return serial, parallel


def untwisted_children_arrays(w: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Untwisted (baseline) children of an (N, 5) array of channels."""
    p, q, r, s, t = (w[:, k] for k in range(5))
    serial = np.empty_like(w)
    serial[:, 0] = p * p
    serial[:, 1] = 2.0 * p * q + q * q
    serial[:, 2] = 2.0 * p * r + r * r
    serial[:, 3] = 2.0 * p * s + s * s
    serial[:, 4] = 1.0 - serial[:, :4].sum(axis=1)
    parallel = np.empty_like(w)
    parallel[:, 1] = 2.0 * t * q + q * q
    parallel[:, 2] = 2.0 * t * r + r * r
    parallel[:, 3] = 2.0 * t * s + s * s
    parallel[:, 4] = t * t
    parallel[:, 0] = 1.0 - parallel[:, 1:].sum(axis=1)
    np.clip(serial[:, 4], 0.0, None, out=serial[:, 4])
    np.clip(parallel[:, 0], 0.0, None, out=parallel[:, 0])
    return serial, parallel


def entropy_array(w: np.ndarray) -> np.ndarray:
    return w[:, 1:4].sum(axis=1) / 2.0 + w[:, 4]


def edge_mass_array(w: np.ndarray) -> np.ndarray:
    return w[:, 1:4].sum(axis=1)


def inertia_array(w: np.ndarray) -> np.ndarray:
    q, r, s = w[:, 1], w[:, 2], w[:, 3]
    return (q - r) ** 2 + (r - s) ** 2 + (s - q) ** 2
