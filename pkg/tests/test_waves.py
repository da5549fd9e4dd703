import numpy as np
import pytest

from dgflux.errors import ConfigError
from dgflux.runner import ProfileSnapshot
from dgflux.waves import (
    CONTACT_KIND,
    FAN_KIND,
    SHOCK_KIND,
    analyze_waves,
    detect_pulses,
)


def snapshot_from(values):
    values = np.asarray(values, dtype=float)
    n = values.size
    x = np.arange(n) + 0.5
    return ProfileSnapshot(time=1.0, x=x, columns=("rho",), values=values[:, None])


def test_constant_profile_has_no_waves():
    snap = snapshot_from(np.full(80, 0.4))
    report = analyze_waves(snap, x0=40.0)
    assert report.n_waves == 0
    assert report.conclusive
    assert report.plateau_cells == 80


def test_single_shock_away_from_interface():
    values = np.where(np.arange(100) < 60, 0.2, 0.5)
    report = analyze_waves(snapshot_from(values), x0=10.0)
    assert report.n_waves == 1
    assert report.waves[0].kind == SHOCK_KIND
    assert 55.0 < report.waves[0].left_edge < report.waves[0].right_edge < 65.0


def test_jump_at_interface_is_contact():
    values = np.where(np.arange(100) < 50, 0.2, 0.5)
    report = analyze_waves(snapshot_from(values), x0=50.0)
    assert report.n_waves == 1
    assert report.waves[0].kind == CONTACT_KIND


def test_wide_ramp_is_fan():
    values = np.concatenate([np.full(30, 0.2), np.linspace(0.2, 0.5, 30), np.full(40, 0.5)])
    report = analyze_waves(snapshot_from(values), x0=5.0)
    assert report.n_waves == 1
    assert report.waves[0].kind == FAN_KIND
    assert report.waves[0].n_cells >= 12


def test_shallow_ramp_visible_through_window():
    # per-cell increment stays below the plateau tolerance
    ramp = np.linspace(0.2, 0.23, 60)
    assert np.abs(np.diff(ramp)).max() < 1e-3
    values = np.concatenate([np.full(30, 0.2), ramp, np.full(30, 0.23)])
    report = analyze_waves(snapshot_from(values), x0=5.0)
    assert report.n_waves == 1
    assert report.waves[0].kind == FAN_KIND


def test_nearby_runs_merge():
    base = np.full(100, 0.2)
    base[40:] += 0.1
    base[44:] += 0.1  # second jump four cells later
    report = analyze_waves(snapshot_from(base), x0=5.0)
    assert report.n_waves == 1


def test_distant_runs_stay_separate():
    base = np.full(120, 0.2)
    base[40:] += 0.1
    base[90:] += 0.1
    report = analyze_waves(snapshot_from(base), x0=5.0)
    assert report.n_waves == 2
    assert all(w.kind == SHOCK_KIND for w in report.waves)


def test_fan_attached_to_contact_counts_separately():
    # mirrors the structure where a rarefaction hangs off the parameter jump
    n = 160
    values = np.full(n, 0.9)
    values[80:] = np.concatenate([np.linspace(0.5, 0.42, 40), np.full(40, 0.42)])
    report = analyze_waves(snapshot_from(values), x0=80.0)
    kinds = report.kinds()
    assert report.n_waves == 2
    assert CONTACT_KIND in kinds
    assert FAN_KIND in kinds


def test_too_few_plateau_cells_is_inconclusive():
    values = np.linspace(0.0, 1.0, 60)  # one giant ramp
    report = analyze_waves(snapshot_from(values), x0=5.0)
    assert not report.conclusive


def test_short_profile_is_inconclusive():
    report = analyze_waves(snapshot_from(np.full(6, 0.1)), x0=3.0)
    assert not report.conclusive


def test_threshold_validation():
    snap = snapshot_from(np.full(40, 0.1))
    with pytest.raises(ConfigError):
        analyze_waves(snap, x0=5.0, plateau_tol=0.0)
    with pytest.raises(ConfigError):
        analyze_waves(snap, x0=5.0, fan_width_cells=0)


def gaussian_train(centers, amps, n=400, length=200.0, width=2.0):
    x = (np.arange(n) + 0.5) * (length / n)
    values = np.zeros(n)
    for c, a in zip(centers, amps):
        offset = x - c
        offset -= length * np.round(offset / length)  # periodic distance
        values += a * np.exp(-((offset / width) ** 2))
    return x, values


def test_detect_pulses_counts_and_orders():
    x, values = gaussian_train([50.0, 80.0, 110.0], [0.1, 0.3, 0.6])
    report = detect_pulses(x, values)
    assert report.n_pulses == 3
    assert report.co_monotone
    assert report.polarity == 1
    assert report.amplitudes[0] == pytest.approx(0.1, abs=0.01)
    assert report.amplitudes[-1] == pytest.approx(0.6, abs=0.01)


def test_detect_pulses_handles_wraparound():
    # train crossing the periodic seam: order must still go back to front
    x, values = gaussian_train([150.0, 180.0, 10.0], [0.1, 0.3, 0.6])
    report = detect_pulses(x, values)
    assert report.n_pulses == 3
    assert report.co_monotone
    assert report.positions[-1] == pytest.approx(10.0, abs=1.0)


def test_detect_pulses_negative_polarity():
    x, values = gaussian_train([60.0, 100.0], [0.2, 0.5])
    report = detect_pulses(x, -values)
    assert report.polarity == -1
    assert report.n_pulses == 2
    assert report.co_monotone


def test_detect_pulses_non_monotone_train():
    x, values = gaussian_train([50.0, 80.0, 110.0], [0.6, 0.2, 0.4])
    report = detect_pulses(x, values)
    assert report.n_pulses == 3
    assert not report.co_monotone


def test_detect_pulses_quiet_profile():
    x = np.linspace(0.0, 100.0, 200)
    report = detect_pulses(x, np.full(200, 1e-4))
    assert report.n_pulses == 0
    assert report.co_monotone


def test_detect_pulses_grouping_merges_ripples():
    x, values = gaussian_train([100.0], [0.5], width=4.0)
    ripple = 0.08 * np.cos(2 * np.pi * x / 2.0)
    bumpy = values * (1 + 0.0) + np.where(np.abs(x - 100) < 6, ripple, 0.0)
    loose = detect_pulses(x, bumpy)
    grouped = detect_pulses(x, bumpy, min_separation=8.0)
    assert loose.n_pulses > 1
    assert grouped.n_pulses == 1


def test_detect_pulses_ignores_sub_threshold_peaks():
    x, values = gaussian_train([60.0, 120.0], [0.03, 0.4])
    report = detect_pulses(x, values, min_height=0.05)
    assert report.n_pulses == 1
    assert report.amplitudes[0] == pytest.approx(0.4, abs=0.01)
