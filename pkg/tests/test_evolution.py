"""Spectral Schrodinger propagation and nodal curve tracking.

The free propagator is exact for lattice plane waves, which gives
machine-precision oracles: a plane wave with wavevector k picks up the
phase exp(-i |k|^2 t / 2) and nothing else.
"""

import numpy as np
import pytest

from knotfield.errors import KnotfieldError
from knotfield.evolution import (
    EvolutionConfig,
    FieldState,
    density_center,
    gaussian_state,
    initial_knot_state,
    plane_wave,
    run,
    step,
    track_nodal,
)
from knotfield.fields import field_library

SMALL = EvolutionConfig(box=8.0, resolution=32, dt=1e-3, steps=10)


def test_config_validation():
    with pytest.raises(KnotfieldError):
        EvolutionConfig(hamiltonian="coulomb")
    with pytest.raises(KnotfieldError):
        EvolutionConfig(dt=0.0)
    with pytest.raises(KnotfieldError):
        EvolutionConfig(resolution=48)  # not a power of two
    with pytest.raises(KnotfieldError):
        EvolutionConfig(omega=(1.0, -1.0, 1.0))
    cfg = EvolutionConfig(omega=2.0)
    assert cfg.omega == (2.0, 2.0, 2.0)


def test_axes_are_cell_centered():
    ax = SMALL.axes()[0]
    assert len(ax) == 32
    assert 0.0 not in ax
    assert np.allclose(ax + ax[::-1], 0.0)
    assert np.allclose(np.diff(ax), SMALL.spacing)


def test_state_validation():
    with pytest.raises(KnotfieldError):
        FieldState(np.zeros((4, 4)))
    with pytest.raises(KnotfieldError):
        FieldState(np.full((4, 4, 4), np.nan))


def test_plane_wave_exact_phase():
    # free evolution multiplies exp(i k.x) by exp(-i |k|^2 t / 2) exactly
    cfg = SMALL
    psi = plane_wave(cfg, (2, 1, 0))
    out = psi
    for _ in range(cfg.steps):
        out = step(out, cfg)
    kf = 2 * np.pi / cfg.box
    k2 = kf * kf * (4 + 1)
    t = cfg.steps * cfg.dt
    expect = psi.values * np.exp(-0.5j * k2 * t)
    assert np.abs(out.values - expect).max() < 1e-12


def test_free_steps_compose_exactly():
    cfg = SMALL
    psi = gaussian_state(cfg, width=1.2, momentum=(1.0, 0.0, 0.0))
    one = step(psi, cfg, dt=cfg.dt)
    two = step(step(psi, cfg, dt=cfg.dt / 2), cfg, dt=cfg.dt / 2)
    assert np.abs(one.values - two.values).max() < 1e-13


@pytest.mark.parametrize("ham", ["free", "harmonic"])
def test_norm_drift_under_100_steps(ham):
    cfg = EvolutionConfig(hamiltonian=ham, box=8.0, resolution=32,
                          dt=1e-3, steps=100)
    psi = gaussian_state(cfg, width=1.0)
    final = run(psi, cfg)[-1]
    assert final.norm_drift() < 1e-10


def test_harmonic_ground_state_stationary():
    # omega = 1 ground state exp(-r^2/2): density must not move
    cfg = EvolutionConfig(hamiltonian="harmonic", box=12.0, resolution=32,
                          dt=1e-3, steps=50)
    psi = gaussian_state(cfg, width=1.0)
    final = run(psi, cfg)[-1]
    rho0 = np.abs(psi.values) ** 2
    rho1 = np.abs(final.values) ** 2
    assert np.abs(rho1 - rho0).max() / rho0.max() < 1e-6


def test_harmonic_strang_is_second_order():
    # Richardson: halving dt divides the splitting error by about 4
    base = dict(hamiltonian="harmonic", box=8.0, resolution=32)
    psi = gaussian_state(EvolutionConfig(**base), width=1.0,
                         center=(0.5, 0.0, 0.0))

    def err(dt, steps):
        cfg = EvolutionConfig(dt=dt, steps=steps, **base)
        coarse = run(psi, cfg)[-1]
        fine = run(psi, EvolutionConfig(dt=dt / 8, steps=8 * steps, **base))[-1]
        return np.abs(coarse.values - fine.values).max()

    ratio = err(4e-2, 8) / err(2e-2, 16)
    assert 3.0 < ratio < 5.0


def test_time_reversal():
    cfg = EvolutionConfig(hamiltonian="harmonic", box=8.0, resolution=32,
                          dt=1e-3, steps=20)
    psi = gaussian_state(cfg, width=1.0, momentum=(0.5, 0.0, 0.0))
    fwd = run(psi, cfg)[-1]
    back = fwd
    for _ in range(cfg.steps):
        back = step(back, cfg, dt=-cfg.dt)
    assert np.abs(back.values - psi.values).max() < 1e-10
    assert back.time == pytest.approx(0.0, abs=1e-12)


def test_gaussian_packet_moves():
    cfg = EvolutionConfig(box=16.0, resolution=32, dt=5e-3, steps=100)
    psi = gaussian_state(cfg, width=1.0, momentum=(1.0, 0.0, 0.0))
    final = run(psi, cfg)[-1]
    c0 = density_center(psi, cfg)
    c1 = density_center(final, cfg)
    # group velocity = momentum in natural units
    assert c1[0] - c0[0] == pytest.approx(cfg.dt * cfg.steps, rel=0.05)
    assert abs(c1[1]) < 1e-6 and abs(c1[2]) < 1e-6


def test_initial_knot_state_contains_curve():
    cfg = EvolutionConfig(box=16.0, resolution=64, dt=5e-4, steps=0)
    psi = initial_knot_state(field_library("milnor", (2, 3)), cfg)
    assert psi.norm() > 0
    report = track_nodal([psi], cfg)
    assert report.snapshots[0].n_components == 1
    assert report.events == ()


def test_track_static_history_no_events():
    cfg = EvolutionConfig(box=16.0, resolution=64, dt=5e-4, steps=0)
    psi = initial_knot_state(field_library("milnor", (2, 3)), cfg)
    report = track_nodal([psi, FieldState(psi.values, 1.0, psi.norm0)], cfg)
    assert [s.n_components for s in report.snapshots] == [1, 1]
    assert report.max_displacement() == 0.0
    assert report.events == ()


def test_track_displacement_scales_with_time_step():
    cfg_a = EvolutionConfig(box=16.0, resolution=64, dt=5e-4, steps=10)
    cfg_b = EvolutionConfig(box=16.0, resolution=64, dt=2.5e-4, steps=10)
    f = field_library("milnor", (2, 3))

    def disp(cfg):
        hist = run(initial_knot_state(f, cfg), cfg, snapshot_every=5)
        report = track_nodal(hist, cfg)
        assert all(s.n_components == 1 for s in report.snapshots)
        return report.max_displacement()

    da, db = disp(cfg_a), disp(cfg_b)
    assert db < da  # slower clock, smaller per-interval motion
    assert da / db == pytest.approx(2.0, rel=0.35)


def test_track_nodeless_state():
    cfg = EvolutionConfig(box=8.0, resolution=32, dt=1e-3, steps=0)
    psi = gaussian_state(cfg, width=1.5)
    report = track_nodal([psi], cfg)
    assert report.snapshots[0].n_components == 0


def test_track_report_csv():
    cfg = EvolutionConfig(box=8.0, resolution=32, dt=1e-3, steps=0)
    report = track_nodal([gaussian_state(cfg, width=1.5)], cfg)
    lines = report.to_csv().splitlines()
    assert lines[0] == "time,n_components,displacement,error"
    assert lines[1].startswith("0,0")


def test_track_roi_validation():
    cfg = SMALL
    with pytest.raises(KnotfieldError):
        track_nodal([], cfg, roi=0.0)


def test_resolution_mismatch_rejected():
    psi = gaussian_state(SMALL, width=1.0)
    with pytest.raises(KnotfieldError):
        step(psi, EvolutionConfig(box=8.0, resolution=64))


def test_config_json():
    import json
    d = json.loads(SMALL.to_json())
    assert d["hamiltonian"] == "free" and d["resolution"] == 32
