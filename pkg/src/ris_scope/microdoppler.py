"""Synthetic RIS-routed echoes and their short-time Fourier spectrograms."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view
from scipy.signal import get_window

from .core import DB_FLOOR, ConfigurationError, RisGeometry
from .link_budget import LinkBudget, snr_db
from .phase_profile import ReflectionProfile
from .rcs import bistatic_rcs


@dataclass(frozen=True, eq=False)
class TargetTrajectory:
    """Sampled (y, z) positions of a point reflector in the RIS frame."""

    sample_rate: float
    positions: np.ndarray
    rcs_dbsm: float = 0.0

    def __post_init__(self):
        pos = np.array(self.positions, dtype=float).reshape(-1, 2)
        if not self.sample_rate > 0:
            raise ConfigurationError("sample rate must be > 0")
        if not np.all(np.isfinite(pos)):
            raise ConfigurationError("trajectory positions must be finite")
        pos.setflags(write=False)
        object.__setattr__(self, "positions", pos)

    @property
    def times(self) -> np.ndarray:
        return np.arange(len(self.positions)) / self.sample_rate

    @property
    def duration(self) -> float:
        return len(self.positions) / self.sample_rate

    @classmethod
    def static(cls, position, duration: float, sample_rate: float = 1000.0,
               rcs_dbsm: float = 0.0) -> "TargetTrajectory":
        count = int(round(duration * sample_rate))
        return cls(sample_rate, np.tile(np.asarray(position, dtype=float), (count, 1)), rcs_dbsm)

    @classmethod
    def constant_velocity(cls, start, velocity, duration: float, sample_rate: float = 1000.0,
                          rcs_dbsm: float = 0.0) -> "TargetTrajectory":
        t = np.arange(int(round(duration * sample_rate))) / sample_rate
        pos = np.asarray(start, dtype=float) + np.outer(t, np.asarray(velocity, dtype=float))
        return cls(sample_rate, pos, rcs_dbsm)

    @classmethod
    def radial(cls, theta_deg: float, start_range: float, speed: float, duration: float,
               sample_rate: float = 1000.0, rcs_dbsm: float = 0.0) -> "TargetTrajectory":
        """Straight-line motion along the RIS line of sight; ``speed > 0`` recedes."""
        u = np.array([np.sin(np.radians(theta_deg)), np.cos(np.radians(theta_deg))])
        return cls.constant_velocity(start_range * u, speed * u, duration, sample_rate, rcs_dbsm)

    @classmethod
    def pendulum(cls, pivot, arm_length: float = 0.6, swing_deg: float = 30.0,
                 swing_rate_hz: float = 1.0, duration: float = 3.0,
                 sample_rate: float = 1000.0, rcs_dbsm: float = 0.0) -> "TargetTrajectory":
        """Reflector swung on an arm about ``pivot``.

        The arm rests perpendicular to the RIS line of sight and swings
        towards and away from the RIS, so the range rate alternates sign.
        Peak speed is ``arm_length * radians(swing_deg) * 2 pi * swing_rate_hz``.
        """
        pivot = np.asarray(pivot, dtype=float)
        toward = -pivot / np.linalg.norm(pivot)
        rest = np.array([toward[1], -toward[0]])
        t = np.arange(int(round(duration * sample_rate))) / sample_rate
        psi = np.radians(swing_deg) * np.sin(2.0 * np.pi * swing_rate_hz * t)
        pos = pivot + arm_length * (np.outer(np.cos(psi), rest) + np.outer(np.sin(psi), toward))
        return cls(sample_rate, pos, rcs_dbsm)


def path_ranges(traj: TargetTrajectory) -> np.ndarray:
    """RIS-to-target distance per sample."""
    return np.hypot(traj.positions[:, 0], traj.positions[:, 1])


def synthesize_echo(traj: TargetTrajectory, geom: RisGeometry, profile: ReflectionProfile,
                    link: LinkBudget, theta_i_deg: float = 0.0,
                    clutter_amplitude: Optional[float] = None,
                    model: str = "paper") -> np.ndarray:
    """Complex slow-time echo routed radar -> RIS -> target -> RIS -> radar.

    Amplitude is the square root of the instantaneous link-budget SNR using
    the RIS's bistatic RCS towards the target; the phase follows the
    two-way path ``2 (r1 + r2(t))``.  A constant clutter term is added to
    stand in for static returns; by default it is ten times the mean echo
    amplitude.
    """
    if np.any(traj.positions[:, 1] <= 0):
        raise ConfigurationError("target must stay in front of the RIS plane (z > 0)")
    r2 = path_ranges(traj)
    theta_t = np.degrees(np.arctan2(traj.positions[:, 0], traj.positions[:, 1]))
    sigma_f = bistatic_rcs(geom, profile, theta_i_deg, theta_t, model=model)
    sigma_b = bistatic_rcs(geom, profile, theta_t, theta_i_deg, model=model)
    snr = np.array([snr_db(replace(link, sigma_f=f, sigma_b=b, sigma_t=traj.rcs_dbsm, r2=r))
                    for f, b, r in zip(sigma_f, sigma_b, r2)])
    amplitude = 10.0 ** (snr / 20.0)
    wavelength = geom.wavelength
    echo = amplitude * np.exp(-2j * np.pi * 2.0 * (link.r1 + r2) / wavelength)
    if clutter_amplitude is None:
        clutter_amplitude = 10.0 * float(np.mean(amplitude))
    return echo + clutter_amplitude


def instantaneous_doppler(traj: TargetTrajectory, wavelength: float) -> np.ndarray:
    """Doppler from the range rate, ``-2 dr/dt / lambda`` (positive approaching)."""
    return -2.0 * np.gradient(path_ranges(traj), 1.0 / traj.sample_rate) / wavelength


@dataclass(frozen=True, eq=False)
class Spectrogram:
    times: np.ndarray
    frequencies: np.ndarray
    magnitudes_db: np.ndarray  # (time, frequency)
    window_duration: float
    hop: float
    sample_rate: float
    complex_frames: Optional[np.ndarray] = None

    @property
    def bin_width(self) -> float:
        return self.sample_rate / len(self.frequencies)

    def ridge(self) -> np.ndarray:
        """Frequency of the strongest bin in each frame."""
        return self.frequencies[np.argmax(self.magnitudes_db, axis=1)]

    def metadata(self) -> dict:
        return {"sample_rate": self.sample_rate, "window_duration": self.window_duration,
                "hop": self.hop, "frames": int(len(self.times)),
                "bins": int(len(self.frequencies)), "window": "hann"}


def stft_spectrogram(s, sample_rate: float, window_duration: float = 0.1,
                     hop: Optional[float] = None, dc_filter: bool = True,
                     window: str = "hann") -> Spectrogram:
    """Sliding-window DFT with a two-sided, zero-centred frequency axis.

    Frames are scaled by ``1/sqrt(L)`` so each frame's spectral energy
    equals the energy of the windowed samples.  ``dc_filter`` removes the
    signal mean before framing, which cancels static clutter.
    """
    s = np.asarray(s, dtype=complex)
    length = int(round(window_duration * sample_rate))
    if length < 8:
        raise ConfigurationError("window must span at least 8 samples")
    if length > len(s):
        raise ConfigurationError("window is longer than the signal")
    hop = 0.25 * window_duration if hop is None else hop
    step = int(round(hop * sample_rate))
    if not hop > 0 or step < 1:
        raise ConfigurationError("hop must be > 0 and at least one sample")
    if dc_filter:
        s = s - s.mean()
    taper = get_window(window, length)
    frames = sliding_window_view(s, length)[::step] * taper
    spectra = np.fft.fftshift(np.fft.fft(frames, axis=1), axes=1) / np.sqrt(length)
    power = np.abs(spectra) ** 2
    with np.errstate(divide="ignore"):
        mags = np.maximum(10.0 * np.log10(power), DB_FLOOR)
    freqs = np.fft.fftshift(np.fft.fftfreq(length, 1.0 / sample_rate))
    times = (np.arange(frames.shape[0]) * step + 0.5 * length) / sample_rate
    return Spectrogram(times, freqs, mags, length / sample_rate, step / sample_rate,
                       float(sample_rate), spectra)
