"""Tetrahedral erasure channels and their functionals.

A TEC transmits a pair of bits and reveals either the full pair, exactly one
of the three nontrivial linear combinations (x1, x1+x2, x2), or nothing.  The
five probabilities (p, q, r, s, t) fully describe the channel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .errors import InfeasiblePoint, NegativeComponent, OutOfRange, SumNotOne

SIMPLEX_TOL = 1e-12

#: Quetelet-index threshold above which a channel counts as edge-heavy.
EDGE_HEAVY_THRESHOLD = 2.0 * math.sqrt(7.0) - 4.0

_FIELDS = ("p", "q", "r", "s", "t")


@dataclass(frozen=True)
class TecChannel:
    """Immutable five-tuple of subspace erasure probabilities.

    Instances built by hand are not validated; use :func:`new_tec` for
    checked construction.
    """

    p: float
    q: float
    r: float
    s: float
    t: float

    def as_tuple(self) -> tuple[float, float, float, float, float]:
        return (self.p, self.q, self.r, self.s, self.t)


@dataclass(frozen=True)
class BalancedPoint:
    """(entropy, edge mass) coordinates of a balanced channel."""

    x: float
    y: float


@dataclass(frozen=True)
class ChannelFunctionals:
    """Snapshot of the four channel functionals.

    ``quetelet`` is None when the channel is fully polarized (H in {0, 1});
    that is a legitimate value state, not an error.
    """

    entropy: float
    edge_mass: float
    inertia: float
    quetelet: Optional[float]

    @property
    def is_edge_heavy(self) -> bool:
        return self.quetelet is not None and self.quetelet >= EDGE_HEAVY_THRESHOLD


def new_tec(p: float, q: float, r: float, s: float, t: float) -> TecChannel:
    """Validated constructor: rejects (never clamps) simplex violations.

    Components within 1e-12 of the simplex are renormalized so downstream
    algebra starts from an exact probability vector.
    """
    comps = (p, q, r, s, t)
    for name, v in zip(_FIELDS, comps):
        if not math.isfinite(v):
            raise OutOfRange(f"component {name} is not finite")
        if v < -SIMPLEX_TOL or v > 1.0 + SIMPLEX_TOL:
            raise NegativeComponent(name, v)
    total = sum(comps)
    if abs(total - 1.0) > SIMPLEX_TOL:
        raise SumNotOne(total)
    clipped = [min(max(v, 0.0), 1.0) for v in comps]
    norm = sum(clipped)
    return TecChannel(*(v / norm for v in clipped))


def from_qary_erasure(eps: float) -> TecChannel:
    """The 4-ary erasure channel with erasure probability eps."""
    if not 0.0 <= eps <= 1.0:
        raise OutOfRange(f"erasure probability {eps!r} outside [0, 1]")
    return TecChannel(1.0 - eps, 0.0, 0.0, 0.0, eps)


def from_bec_pair(delta: float, eps: float) -> TecChannel:
    """Two bits sent through BEC(delta) and BEC(eps), viewed as one channel."""
    for v in (delta, eps):
        if not 0.0 <= v <= 1.0:
            raise OutOfRange(f"erasure probability {v!r} outside [0, 1]")
    return TecChannel(
        (1.0 - delta) * (1.0 - eps),
        (1.0 - delta) * eps,
        0.0,
        delta * (1.0 - eps),
        delta * eps,
    )


def from_balanced(point: BalancedPoint) -> TecChannel:
    """The unique balanced channel with entropy x and edge mass y."""
    x, y = point.x, point.y
    if not (0.0 <= x <= 1.0):
        raise InfeasiblePoint(f"entropy {x!r} outside [0, 1]")
    cap = 2.0 * min(x, 1.0 - x)
    if y < -SIMPLEX_TOL or y > cap + SIMPLEX_TOL:
        raise InfeasiblePoint(f"edge mass {y!r} outside [0, {cap}] at entropy {x}")
    e3 = y / 3.0
    return TecChannel(max(1.0 - x - y / 2.0, 0.0), e3, e3, e3, max(x - y / 2.0, 0.0))


def functionals(w: TecChannel) -> ChannelFunctionals:
    """Entropy, edge mass, moment of inertia, and Quetelet index of w."""
    h = (w.q + w.r + w.s) / 2.0 + w.t
    e = w.q + w.r + w.s
    a = (w.q - w.r) ** 2 + (w.r - w.s) ** 2 + (w.s - w.q) ** 2
    q_idx = e / (h * (1.0 - h)) if 0.0 < h < 1.0 else None
    return ChannelFunctionals(h, e, a, q_idx)


def entropy(w: TecChannel) -> float:
    return (w.q + w.r + w.s) / 2.0 + w.t


def rotate(w: TecChannel) -> TecChannel:
    """Premultiply the input by the primitive element: cycles (q, r, s)."""
    return TecChannel(w.p, w.s, w.q, w.r, w.t)


def dual(w: TecChannel) -> TecChannel:
    """Reverse the five-tuple; swaps the roles of serial and parallel."""
    return TecChannel(w.t, w.s, w.r, w.q, w.p)


def balanced_point(w: TecChannel) -> BalancedPoint:
    """(H, E) readout; meaningful as a channel description only when A(w)=0."""
    f = functionals(w)
    return BalancedPoint(f.entropy, f.edge_mass)


def parse_channel(text: str) -> TecChannel:
    """Parse "p,q,r,s,t" as five decimal literals."""
    parts = text.split(",")
    if len(parts) != 5:
        raise OutOfRange(f"expected five comma-separated components, got {len(parts)}")
    try:
        vals = [float(part) for part in parts]
    except ValueError as exc:
        raise OutOfRange(f"non-numeric component in {text!r}") from exc
    return new_tec(*vals)


def format_channel(w: TecChannel) -> str:
    return ",".join(repr(v) for v in w.as_tuple())
