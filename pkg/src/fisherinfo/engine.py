"""Discrete Fisher information over sliding windows.

The index for one window is computed from the probability of observing each
discrete state of the system: with amplitudes q_i = sqrt(P_i) listed in
discovery order and padded with zeros at both ends,

    FI = 4 * sum_i (q_i - q_{i+1})^2

which ranges over (0, 8]; a window whose points all share one state scores
exactly 8 (maximal order), and the value shrinks as the window spreads over
more states.  One value is computed per window and attributed to the
window's last time step, so only past data enter each point.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Iterator, Sequence

from .binning import StateAssignment, bin_window
from .core import SosConfig, StateSize, TimeSeriesMatrix, WindowConfig
from .errors import ConstantVariableWarning, DegenerateRange, SeriesTooShort

# Sum of state probabilities must reproduce 1 to this absolute tolerance.
PROBABILITY_ATOL = 1e-12

# Upper bound of the index: a single state scores 4 * (1 + 1).
FI_MAX = 8.0


@dataclass(frozen=True)
class StateDistribution:
    """Probabilities and amplitudes of one window's states, discovery order.

    probabilities[i] is the fraction of window points in state i (each in
    (0, 1], summing to 1); amplitudes[i] = sqrt(probabilities[i]).
    """

    probabilities: tuple[float, ...]
    amplitudes: tuple[float, ...]

    def __post_init__(self):
        if not self.probabilities:
            raise ValueError("a distribution needs at least one state")
        for p in self.probabilities:
            if not (0.0 < p <= 1.0):
                raise ValueError(f"state probability {p} outside (0, 1]")
        if abs(math.fsum(self.probabilities) - 1.0) > PROBABILITY_ATOL:
            raise ValueError("state probabilities do not sum to 1")

    @property
    def n_states(self) -> int:
        return len(self.probabilities)


@dataclass(frozen=True)
class FiPoint:
    """One index value, stamped with its window's last time label.

    window_start_index / window_end_index are inclusive row indices into
    the source matrix.
    """

    time_label: float
    fi: float
    m_states: int
    window_start_index: int
    window_end_index: int

    def __post_init__(self):
        if not 0.0 < self.fi <= FI_MAX:
            raise ValueError(f"index value {self.fi} outside (0, {FI_MAX}]")
        if self.m_states < 1:
            raise ValueError(f"state count must be >= 1, got {self.m_states}")


@dataclass(frozen=True)
class FiSeries:
    """Index values for every full window, in time order."""

    points: tuple[FiPoint, ...]
    config: WindowConfig
    state_size: StateSize

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[FiPoint]:
        return iter(self.points)

    def fi_values(self) -> tuple[float, ...]:
        return tuple(p.fi for p in self.points)

    def time_labels(self) -> tuple[float, ...]:
        return tuple(p.time_label for p in self.points)


def sample_sd(xs: Sequence[float]) -> float:
    """Sample standard deviation (divisor N-1) of a sequence of reals."""
    n = len(xs)
    if n < 2:
        raise DegenerateRange(f"need at least 2 points for a standard deviation, got {n}")
    mean = math.fsum(xs) / n
    return math.sqrt(math.fsum((x - mean) ** 2 for x in xs) / (n - 1))


def estimate_state_size(matrix: TimeSeriesMatrix, cfg: SosConfig | None = None) -> StateSize:
    """Estimate per-variable state sizes as k sample standard deviations.

    For each variable the sample SD over the stable range (default: the
    whole series) is multiplied by the Chebyshev factor k, so that at least
    1 - 1/k^2 of a stationary variable's observations fall within one state
    size of its mean regardless of distribution (75% for the default k=2).

    A constant variable yields a state size of 0 with a
    ConstantVariableWarning; it is not an error.

    Raises DegenerateRange when the stable range holds fewer than two
    points or lies outside the series.
    """
    if cfg is None:
        cfg = SosConfig()
    t_count = matrix.n_steps
    if cfg.stable_range is None:
        a, b = 0, t_count - 1
    else:
        a, b = cfg.stable_range
        if b > t_count - 1:
            raise DegenerateRange(
                f"stable_range {a}:{b} exceeds the last time index {t_count - 1}"
            )
    if b - a + 1 < 2:
        raise DegenerateRange(
            f"stable_range {a}:{b} holds {b - a + 1} point(s); need at least 2"
        )

    deltas = []
    for i, label in enumerate(matrix.labels):
        sd = sample_sd(matrix.values[a:b + 1, i].tolist())
        if sd == 0.0:
            warnings.warn(
                f"variable {label!r} is constant over the stable range; "
                "its state size is 0 (only exactly equal values will share a state)",
                ConstantVariableWarning,
                stacklevel=2,
            )
        deltas.append(cfg.k * sd)
    return StateSize(deltas=tuple(deltas))


def state_probabilities(assignment: StateAssignment) -> StateDistribution:
    """Probability of each state: its point count over the window length."""
    w = assignment.window_length
    probs = tuple(count / w for count in assignment.counts)
    return StateDistribution(
        probabilities=probs,
        amplitudes=tuple(math.sqrt(p) for p in probs),
    )


def fisher_index(dist: StateDistribution) -> float:
    """Index of one window from its state distribution.

    The amplitude sequence is padded with zeros at both ends before summing
    squared successive differences, so a lone state contributes its full
    probability twice and FI(single state) = 8 exactly.
    """
    q = (0.0, *dist.amplitudes, 0.0)
    return 4.0 * math.fsum((q[i] - q[i + 1]) ** 2 for i in range(len(q) - 1))


def window_count(t_count: int, cfg: WindowConfig) -> int:
    """Number of full windows a series of t_count steps yields."""
    if t_count < cfg.window_size:
        return 0
    return (t_count - cfg.window_size) // cfg.increment + 1


def sliding_fi(
    matrix: TimeSeriesMatrix,
    delta: StateSize,
    cfg: WindowConfig | None = None,
) -> FiSeries:
    """Compute the index for every full window of the series.

    Windows start at rows 0, increment, 2*increment, ... while a full
    window still fits; each is binned, converted to a state distribution
    and scored, and the value is stamped with the window's last time
    label.  Trailing partial windows are dropped, never padded.

    Window computations are independent and side-effect-free; results are
    emitted in time order.

    Raises SeriesTooShort when the series holds fewer steps than one window.
    """
    if cfg is None:
        cfg = WindowConfig()
    t_count = matrix.n_steps
    if t_count < cfg.window_size:
        raise SeriesTooShort(
            f"series has {t_count} steps but the window needs {cfg.window_size}"
        )

    points = []
    for start in range(0, t_count - cfg.window_size + 1, cfg.increment):
        end = start + cfg.window_size - 1
        assignment = bin_window(matrix.window(start, cfg.window_size), delta)
        dist = state_probabilities(assignment)
        points.append(
            FiPoint(
                time_label=matrix.times[end],
                fi=fisher_index(dist),
                m_states=dist.n_states,
                window_start_index=start,
                window_end_index=end,
            )
        )
    return FiSeries(points=tuple(points), config=cfg, state_size=delta)
