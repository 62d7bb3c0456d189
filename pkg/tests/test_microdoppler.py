import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.signal import get_window

from ris_scope.core import DB_FLOOR, ConfigurationError, RisGeometry
from ris_scope.link_budget import LinkBudget
from ris_scope.microdoppler import (
    TargetTrajectory,
    instantaneous_doppler,
    path_ranges,
    stft_spectrogram,
    synthesize_echo,
)
from ris_scope.phase_profile import SteeringConfig, build_profile

FS = 1000.0


@pytest.fixture(scope="module")
def setup():
    geom = RisGeometry.from_size(16, 10)
    profile = build_profile(geom, SteeringConfig.from_signed(0, 30), 1)
    link = LinkBudget(0.0, 12.0, 0.0, 0.0, 0.0, geom.wavelength, 1.6, 1.0, -105.0)
    return geom, profile, link


def _phase_doppler(echo, sample_rate):
    # brute-force instantaneous frequency from the unwrapped synthetic phase
    return np.gradient(np.unwrap(np.angle(echo)), 1.0 / sample_rate) / (2 * math.pi)


def test_static_target_has_constant_phase(setup):
    geom, profile, link = setup
    traj = TargetTrajectory.static((0.5, 1.5), 1.0)
    echo = synthesize_echo(traj, geom, profile, link, clutter_amplitude=0.0)
    np.testing.assert_allclose(np.angle(echo), np.angle(echo[0]), atol=1e-12)
    spec = stft_spectrogram(echo, FS, dc_filter=False)
    assert np.all(spec.ridge() == 0.0)
    # a periodic Hann taper leaves the 0 Hz line and its two neighbours only
    centre = len(spec.frequencies) // 2
    outer = np.delete(spec.magnitudes_db, [centre - 1, centre, centre + 1], axis=1)
    assert outer.max() < spec.magnitudes_db.max() - 200


def test_radial_velocity_ridge(setup):
    geom, profile, link = setup
    traj = TargetTrajectory.radial(30.0, 1.0, 1.0, 2.0)
    echo = synthesize_echo(traj, geom, profile, link)
    spec = stft_spectrogram(echo, FS)
    expected = -2 * 1.0 / geom.wavelength  # receding
    assert abs(expected) == pytest.approx(36.7, abs=0.05)
    assert np.all(np.abs(spec.ridge() - expected) <= spec.bin_width)


def test_approaching_target_has_positive_doppler(setup):
    geom, profile, link = setup
    traj = TargetTrajectory.radial(30.0, 1.5, -1.0, 1.0)
    spec = stft_spectrogram(synthesize_echo(traj, geom, profile, link), FS)
    assert np.all(spec.ridge() > 0)
    np.testing.assert_allclose(instantaneous_doppler(traj, geom.wavelength),
                               2 / geom.wavelength, rtol=1e-9)


def test_pendulum_trace_alternates_and_matches_oracle(setup):
    geom, profile, link = setup
    traj = TargetTrajectory.pendulum((0.5, 1.2), duration=3.0)
    echo = synthesize_echo(traj, geom, profile, link)
    spec = stft_spectrogram(echo, FS)
    ridge = spec.ridge()
    assert ridge.max() > 0 > ridge.min()
    signs = np.sign(ridge[np.abs(ridge) > 2 * spec.bin_width])
    assert np.count_nonzero(np.diff(signs)) >= 4

    oracle = _phase_doppler(synthesize_echo(traj, geom, profile, link, clutter_amplitude=0.0), FS)
    assert ridge.max() == pytest.approx(oracle.max(), abs=spec.bin_width)
    assert ridge.min() == pytest.approx(oracle.min(), abs=spec.bin_width)
    # the kinematic range-rate oracle agrees with the phase oracle
    np.testing.assert_allclose(instantaneous_doppler(traj, geom.wavelength)[1:-1],
                               oracle[1:-1], atol=0.5)
    # range rate never exceeds the reflector's tip speed
    v_max = 0.6 * math.radians(30) * 2 * math.pi
    assert np.abs(oracle).max() <= 2 * v_max / geom.wavelength


def test_positive_doppler_while_range_falls(setup):
    geom, profile, link = setup
    traj = TargetTrajectory.pendulum((0.5, 1.2), duration=3.0)
    rate = np.gradient(path_ranges(traj), 1 / FS)
    doppler = instantaneous_doppler(traj, geom.wavelength)
    moving = np.abs(rate) > 0.1
    assert np.all(np.sign(doppler[moving]) == -np.sign(rate[moving]))


def test_target_behind_ris_is_rejected(setup):
    geom, profile, link = setup
    with pytest.raises(ConfigurationError):
        synthesize_echo(TargetTrajectory.static((0.1, -0.5), 0.5), geom, profile, link)


def test_trajectory_validation():
    with pytest.raises(ConfigurationError):
        TargetTrajectory(0.0, np.zeros((4, 2)))
    with pytest.raises(ConfigurationError):
        TargetTrajectory(FS, np.array([[0.0, np.nan]]))
    traj = TargetTrajectory.static((0.0, 1.0), 0.5)
    assert traj.duration == pytest.approx(0.5)
    assert traj.times[1] == pytest.approx(1 / FS)


@pytest.mark.parametrize("f0", [0.0, 50.0, -120.0, 230.0])
def test_tone_gives_a_flat_ridge(f0):
    t = np.arange(2000) / FS
    spec = stft_spectrogram(np.exp(2j * np.pi * f0 * t), FS, dc_filter=False)
    assert np.all(np.abs(spec.ridge() - f0) <= spec.bin_width)
    assert spec.frequencies[0] == pytest.approx(-FS / 2)
    assert spec.frequencies[-1] < FS / 2


def test_two_tones_give_symmetric_ridges():
    t = np.arange(2000) / FS
    f0 = 80.0
    spec = stft_spectrogram(np.exp(2j * np.pi * f0 * t) + np.exp(-2j * np.pi * f0 * t), FS)
    mags = spec.magnitudes_db
    pos = spec.frequencies[np.argmax(np.where(spec.frequencies > 0, mags, -np.inf), axis=1)]
    neg = spec.frequencies[np.argmax(np.where(spec.frequencies < 0, mags, -np.inf), axis=1)]
    np.testing.assert_allclose(pos, f0)
    np.testing.assert_allclose(neg, -f0)


@settings(deadline=None, max_examples=25)
@given(st.integers(0, 2**32 - 1), st.sampled_from([16, 64, 100]))
def test_conjugation_mirrors_the_spectrogram(seed, length):
    rng = np.random.default_rng(seed)
    s = rng.normal(size=400) + 1j * rng.normal(size=400)
    a = stft_spectrogram(s, FS, window_duration=length / FS)
    b = stft_spectrogram(np.conj(s), FS, window_duration=length / FS)
    # fftshift puts -fs/2 at index 0, which has no positive twin; mirror the rest
    np.testing.assert_allclose(b.magnitudes_db[:, 1:], a.magnitudes_db[:, :0:-1], atol=1e-9)
    np.testing.assert_allclose(b.magnitudes_db[:, 0], a.magnitudes_db[:, 0], atol=1e-9)


@settings(deadline=None, max_examples=25)
@given(st.integers(0, 2**32 - 1))
def test_frame_energy_matches_windowed_energy(seed):
    rng = np.random.default_rng(seed)
    s = rng.normal(size=500) + 1j * rng.normal(size=500)
    spec = stft_spectrogram(s, FS, dc_filter=False)
    length = int(round(spec.window_duration * FS))
    step = int(round(spec.hop * FS))
    taper = get_window("hann", length)
    for k, frame in enumerate(spec.complex_frames):
        seg = s[k * step:k * step + length] * taper
        expected = math.fsum(np.abs(seg) ** 2)
        assert math.fsum(np.abs(frame) ** 2) == pytest.approx(expected, rel=1e-9)
        assert math.fsum(10 ** (spec.magnitudes_db[k] / 10)) == pytest.approx(expected, rel=1e-9)


def test_dc_filter_removes_pure_dc():
    s = np.full(1000, 3.0 + 1.0j)
    raw = stft_spectrogram(s, FS, dc_filter=False).magnitudes_db.max()
    filtered = stft_spectrogram(s, FS, dc_filter=True).magnitudes_db.max()
    assert raw - filtered >= 40.0
    assert filtered == DB_FLOOR


def test_default_hop_is_a_quarter_window():
    spec = stft_spectrogram(np.ones(1000), FS)
    assert spec.window_duration == pytest.approx(0.1)
    assert spec.hop == pytest.approx(0.025)
    assert spec.bin_width == pytest.approx(10.0)
    assert len(spec.times) == (1000 - 100) // 25 + 1
    assert np.all(np.isfinite(spec.magnitudes_db))
    meta = spec.metadata()
    assert meta["window"] == "hann" and meta["sample_rate"] == FS


@pytest.mark.parametrize("kwargs", [
    {"window_duration": 0.005},       # 5 samples
    {"window_duration": 2.0},         # longer than the signal
    {"hop": 0.0},
    {"hop": 1e-5},                    # rounds to zero samples
])
def test_stft_validation(kwargs):
    with pytest.raises(ConfigurationError):
        stft_spectrogram(np.ones(1000), FS, **kwargs)
