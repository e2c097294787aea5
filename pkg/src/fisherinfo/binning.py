"""Partition the points of one window into discrete states.

Two points belong to the same state when every variable differs by at most
its uncertainty half-width (inclusive comparison).  The sweep is greedy and
deterministic: the earliest unbinned point seeds a new state, every still
unbinned point inside its hyper-rectangle joins, and the sweep repeats until
no point is left.  Membership is tested against the seeding center only;
there is no transitive chaining.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import StateSize
from .errors import DimensionMismatch, EmptyWindow


@dataclass(frozen=True)
class StateAssignment:
    """Partition of a window's points into states, in discovery order.

    states[k] holds the 0-based window-local indices of the points in the
    k-th discovered state, ascending; the first index of each state is its
    center.  Every index 0..window_length-1 appears in exactly one state.
    """

    states: tuple[tuple[int, ...], ...]
    window_length: int

    def __post_init__(self):
        seen = sorted(i for state in self.states for i in state)
        if seen != list(range(self.window_length)):
            raise ValueError("states do not form a partition of the window")

    @property
    def n_states(self) -> int:
        return len(self.states)

    @property
    def counts(self) -> tuple[int, ...]:
        return tuple(len(state) for state in self.states)


def _as_deltas(delta) -> np.ndarray:
    if isinstance(delta, StateSize):
        return np.asarray(delta.deltas, dtype=float)
    return np.asarray([float(d) for d in delta], dtype=float)


def same_state(a: Sequence[float], b: Sequence[float], delta) -> bool:
    """True iff points a and b lie within one state hyper-rectangle.

    Inclusive in every dimension: |a_i - b_i| <= delta_i for all i.
    delta may be a StateSize or any sequence of non-negative reals.
    """
    pa = np.asarray(a, dtype=float)
    pb = np.asarray(b, dtype=float)
    d = _as_deltas(delta)
    if not (pa.shape == pb.shape == d.shape):
        raise DimensionMismatch(
            f"point/state-size lengths disagree: {pa.shape[0] if pa.ndim else 0}, "
            f"{pb.shape[0] if pb.ndim else 0}, {d.shape[0]}"
        )
    return bool(np.all(np.abs(pa - pb) <= d))


def bin_window(points: Sequence[Sequence[float]], delta) -> StateAssignment:
    """Bin one window of points into states with the greedy center sweep.

    Points are swept in time order.  The earliest unbinned point becomes the
    center of a new state; every still-unbinned point within delta of that
    center (in all dimensions at once) joins it.  A point consumed by an
    earlier state is never reconsidered.

    Returns a StateAssignment whose states appear in discovery order.

    Raises EmptyWindow for zero points and DimensionMismatch when the points
    and delta disagree on the number of variables.
    """
    pts = np.asarray(points, dtype=float)
    if pts.size == 0:
        raise EmptyWindow("cannot bin an empty window")
    if pts.ndim == 1:
        pts = pts.reshape(-1, 1)
    d = _as_deltas(delta)
    if pts.shape[1] != d.shape[0]:
        raise DimensionMismatch(
            f"points have {pts.shape[1]} variables but state size has {d.shape[0]}"
        )

    unbinned = np.ones(len(pts), dtype=bool)
    states: list[tuple[int, ...]] = []
    while unbinned.any():
        center = int(np.argmax(unbinned))
        inside = unbinned & np.all(np.abs(pts - pts[center]) <= d, axis=1)
        states.append(tuple(np.flatnonzero(inside).tolist()))
        unbinned &= ~inside

    return StateAssignment(states=tuple(states), window_length=len(pts))
