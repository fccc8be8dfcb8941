import numpy as np
import pytest

from mimetic_em.analysis import envelope, lossy_attenuation, wavelength_cells
from mimetic_em.maxwell1d import (
    MimeticState1D,
    Scenario1D,
    ScenarioError,
    Slab,
    Source,
    build_scenario_sullivan_1d,
    material_vectors,
    run_1d,
    run_yee_1d,
    snapshot_steps,
    step_1d,
)
from mimetic_em.operators import div1d, grad1d


def test_default_scenario_constants():
    s = build_scenario_sullivan_1d()
    assert (s.m, s.k, s.steps) == (200, 2, 500)
    assert s.dt == 0.01 / (2 * 3e8)
    assert s.source == Source(index=4, frequency=700e6, amplitude=1.0)
    assert s.slab == Slab(start=99, eps_r=4.0, sigma=0.04)
    assert s.eps0 == 8.85419e-12
    assert s.courant == pytest.approx(0.5, rel=1e-14)


def test_material_vectors():
    ca, cb = material_vectors(build_scenario_sullivan_1d())
    assert ca.shape == cb.shape == (202,)
    assert (ca[50], cb[50]) == (1.0, 0.5)
    assert np.all(ca[:99] == 1.0) and np.all(cb[:99] == 0.5)
    assert ca[150] == pytest.approx(0.98135, abs=1e-5)
    assert cb[150] == pytest.approx(0.12383, abs=1e-5)
    assert ca[99] == ca[-1] and cb[99] == cb[-1]


def test_material_vectors_free_space():
    ca, cb = material_vectors(build_scenario_sullivan_1d().free_space())
    assert np.all(ca == 1.0) and np.all(cb == 0.5)


@pytest.mark.parametrize(
    "kwargs",
    [dict(m=2), dict(source=Source(index=1)), dict(source=Source(index=200)),
     dict(slab=Slab(start=1)), dict(slab=Slab(start=201)), dict(steps=-1)],
)
def test_invalid_scenarios(kwargs):
    with pytest.raises(ScenarioError):
        Scenario1D(**kwargs)


def _ops(s):
    return div1d(2, s.m, 1.0), grad1d(2, s.m, 1.0)


def test_step_zero_amplitude():
    s = Scenario1D(source=Source(amplitude=0.0))
    ca, cb = material_vectors(s)
    st = step_1d(MimeticState1D.zeros(s.m), ca, cb, *_ops(s), s, 1)
    assert not st.ex.any() and not st.hy.any()


def test_first_step_trace():
    s = build_scenario_sullivan_1d()
    ca, cb = material_vectors(s)
    st = step_1d(MimeticState1D.zeros(s.m), ca, cb, *_ops(s), s, 1)
    expected = np.zeros(202)
    expected[4] = np.sin(2 * np.pi * 700e6 * s.dt * 1)
    np.testing.assert_array_equal(st.ex, expected)


def test_constant_field_unchanged():
    s = Scenario1D(source=Source(amplitude=0.0), slab=None)
    ca, cb = material_vectors(s)
    st = step_1d(MimeticState1D(np.full(202, 0.7), np.zeros(201)), ca, cb, *_ops(s), s, 1)
    np.testing.assert_array_equal(st.ex, 0.7)
    assert np.max(np.abs(st.hy)) <= 1e-15


def test_snapshot_cadence():
    assert snapshot_steps(500, 50) == list(range(0, 501, 50))
    assert snapshot_steps(120, 50) == [0, 50, 100, 120]


def test_zero_steps_returns_initial():
    r = run_1d(Scenario1D(steps=0))
    assert [s.step for s in r.snapshots] == [0]
    assert not r.final.ex.any()


def test_zero_input_zero_output():
    s = Scenario1D(source=Source(amplitude=0.0), steps=50)
    for runner in (run_1d, run_yee_1d):
        r = runner(s)
        assert not r.final.ex.any() and not r.final.hy.any()


@pytest.fixture(scope="module")
def default_run():
    s = build_scenario_sullivan_1d()
    hist = []
    r = run_1d(s, observer=lambda n, ex, hy: hist.append(ex.copy()))
    return s, r, np.array(hist)


def test_slab_attenuates(default_run):
    _, r, _ = default_run
    assert np.max(np.abs(r.final.ex[99:])) < np.max(np.abs(r.final.ex[:99]))


def test_free_space_wavelength():
    r = run_1d(build_scenario_sullivan_1d().free_space())
    lam = wavelength_cells(r.final.ex, 10, 200)
    assert lam == pytest.approx(3e8 / 700e6 / 0.01, rel=0.10)


def test_monotone_envelope_in_slab(default_run):
    _, _, hist = default_run
    env = envelope(hist[-86:])
    assert np.all(np.diff(env[99:130]) <= 0)


def test_analytic_attenuation_value():
    assert lossy_attenuation(700e6, 4.0, 0.04, 8.85419e-12) == pytest.approx(3.74, abs=0.005)


def test_yee_bounded_long_run():
    s = Scenario1D(slab=None, steps=10_000)
    peak = []
    run_yee_1d(s, observer=lambda n, ex, hy: peak.append(np.max(np.abs(ex))))
    assert max(peak) <= 2.0 * s.source.amplitude
