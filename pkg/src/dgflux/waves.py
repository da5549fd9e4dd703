"""Wave-structure analysis of solution profiles.

Two consumers: counting the plateau-separated waves of a road Riemann
solution (including the stationary contact pinned at the parameter jump),
and locating the solitary pulses a layered elastic medium splits a boundary
push into.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.ndimage import maximum_filter1d, minimum_filter1d
from scipy.signal import find_peaks

from .errors import ConfigError
from .runner import ProfileSnapshot

CONTACT_KIND = "contact-at-x0"
SHOCK_KIND = "shock-like"
FAN_KIND = "fan-like"


@dataclass(frozen=True)
class Wave:
    left_edge: float
    right_edge: float
    kind: str
    n_cells: int


@dataclass(frozen=True)
class WaveReport:
    waves: tuple[Wave, ...]
    conclusive: bool
    plateau_cells: int

    @property
    def n_waves(self) -> int:
        return len(self.waves)

    def kinds(self) -> tuple[str, ...]:
        return tuple(w.kind for w in self.waves)


def _runs_of(mask: np.ndarray):
    """Maximal index runs [start, stop) where mask is true."""
    padded = np.concatenate([[False], mask, [False]])
    edges = np.flatnonzero(padded[1:] != padded[:-1])
    return list(zip(edges[::2], edges[1::2]))


def analyze_waves(
    snapshot: ProfileSnapshot,
    x0: float,
    plateau_tol: float = 1e-3,
    fan_width_cells: int = 12,
    window: int = 3,
    min_gap_cells: int = 6,
) -> WaveReport:
    """Segment the total-density profile into plateaus and waves.

    A cell belongs to a transition when the profile's value range across a
    (2*window+1)-cell neighborhood reaches plateau_tol; a strict neighbor
    difference would miss the wide shallow fans these problems produce. The
    jump at the interface nearest x0 is pulled out first as the contact, so
    a fan emanating right from the parameter jump is still counted separately.
    Transitions separated by fewer than min_gap_cells plateau cells merge;
    the report is inconclusive when fewer than 3 plateau cells remain.
    """
    if plateau_tol <= 0 or fan_width_cells < 1 or window < 1:
        raise ConfigError("wave-analysis thresholds must be positive")
    x = np.asarray(snapshot.x, dtype=float)
    rho = snapshot.total_of()
    n = rho.size
    if n < 2 * window + 3:
        return WaveReport(waves=(), conclusive=False, plateau_cells=n)
    diffs = np.diff(rho)

    # contact extraction: active jumps within one cell of the interface at x0
    interface_x = 0.5 * (x[:-1] + x[1:])
    nearest = int(np.argmin(np.abs(interface_x - x0)))
    lo = hi = None
    for i in range(max(0, nearest - 1), min(diffs.size, nearest + 2)):
        if np.abs(diffs[i]) >= plateau_tol:
            lo = i if lo is None else lo
            hi = i
    contact = None
    masked = diffs.copy()
    if lo is not None:
        contact = Wave(
            left_edge=float(x[lo]),
            right_edge=float(x[hi + 1]),
            kind=CONTACT_KIND,
            n_cells=hi - lo + 2,
        )
        masked[lo : hi + 1] = 0.0

    # profile with the contact jump flattened out, then windowed value range
    flattened = np.concatenate([[rho[0]], rho[0] + np.cumsum(masked)])
    size = 2 * window + 1
    spread = maximum_filter1d(flattened, size) - minimum_filter1d(flattened, size)
    moving = spread >= plateau_tol
    if contact is not None:
        moving[lo : hi + 2] = False

    runs = _runs_of(moving)
    # merge runs separated by thin plateaus, but never across the contact
    merged = []
    for start, stop in runs:
        if merged and start - merged[-1][1] < min_gap_cells:
            crosses = contact is not None and merged[-1][1] <= lo < start
            if not crosses:
                merged[-1] = (merged[-1][0], stop)
                continue
        merged.append((start, stop))

    waves = []
    for start, stop in merged:
        width = stop - start
        waves.append(
            Wave(
                left_edge=float(x[start]),
                right_edge=float(x[stop - 1]),
                kind=FAN_KIND if width >= fan_width_cells else SHOCK_KIND,
                n_cells=width,
            )
        )
    if contact is not None:
        waves.append(contact)
    waves.sort(key=lambda w: w.left_edge)

    covered = sum(w.n_cells for w in waves)
    plateau_cells = max(n - covered, 0)
    return WaveReport(waves=tuple(waves), conclusive=plateau_cells >= 3,
                      plateau_cells=plateau_cells)


@dataclass(frozen=True)
class PulseReport:
    positions: tuple[float, ...]  # peak locations in domain coordinates
    amplitudes: tuple[float, ...]  # ordered back-to-front along propagation
    co_monotone: bool
    polarity: int

    @property
    def n_pulses(self) -> int:
        return len(self.amplitudes)


def detect_pulses(
    x: np.ndarray,
    values: np.ndarray,
    min_height: float = 0.05,
    quiet_tol: float = 0.02,
    min_separation: float = 0.0,
) -> PulseReport:
    """Locate solitary pulses on a periodic profile and order them by travel.

    The domain is circular, so the profile is first rotated to put the widest
    quiet stretch (|value| < quiet_tol) at the ends; peak order in the rotated
    frame then runs from the back of the wave train to its front. Pulses of
    the dominant polarity are detected; co_monotone reports whether amplitude
    strictly increases toward the front.

    In a piecewise-layered medium one traveling pulse carries an internal
    oscillation at the layer pitch (the strain re-equilibrates across every
    material interface), so local maxima closer together than min_separation
    are folded into a single pulse keeping the tallest peak.
    """
    x = np.asarray(x, dtype=float)
    values = np.asarray(values, dtype=float)
    polarity = 1
    if -values.min() > values.max():
        polarity = -1
        values = -values

    busy = np.abs(values) >= quiet_tol
    if not busy.any():
        return PulseReport((), (), True, polarity)
    busy_idx = np.flatnonzero(busy)
    n = values.size
    # circular gaps of quiet cells between consecutive busy cells
    starts = np.roll(busy_idx, -1)
    gaps = (starts - busy_idx - 1) % n
    cut = int(starts[np.argmax(gaps)])
    rotated = np.roll(values, -cut)

    peaks, _ = find_peaks(rotated, height=min_height)
    groups: list[list[int]] = []
    for p in peaks:
        dx_to_prev = (p - groups[-1][-1]) * (x[1] - x[0]) if groups else np.inf
        if dx_to_prev < min_separation:
            groups[-1].append(int(p))
        else:
            groups.append([int(p)])
    best = [g[int(np.argmax(rotated[g]))] for g in groups]
    amplitudes = rotated[best]
    positions = x[(np.asarray(best, dtype=int) + cut) % n]
    co_monotone = bool(np.all(np.diff(amplitudes) > 0)) if len(best) > 1 else True
    return PulseReport(
        positions=tuple(float(p) for p in positions),
        amplitudes=tuple(float(a) for a in amplitudes),
        co_monotone=co_monotone,
        polarity=polarity,
    )
