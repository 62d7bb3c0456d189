"""Phase-gradient profiles, b-bit quantization and grating-lobe prediction."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np
from scipy.optimize import minimize_scalar

from .core import (
    TWO_PI,
    ConfigurationError,
    Direction,
    RisGeometry,
    incident_wavevector,
    scattered_wavevector,
)


def _frozen(a, dtype=float) -> np.ndarray:
    a = np.array(a, dtype=dtype)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class ReflectionProfile:
    """Per-cell reflection coefficients ``A * exp(j * Phi)``.

    ``bits`` is ``None`` for a continuous profile, otherwise the number of
    control bits; quantized phases are exact multiples of ``2 pi / 2**bits``.
    """

    amplitudes: np.ndarray
    phases: np.ndarray
    bits: Optional[int] = None

    def __post_init__(self):
        amp = _frozen(self.amplitudes)
        ph = _frozen(np.mod(self.phases, TWO_PI))
        if amp.ndim != 2 or amp.shape != ph.shape:
            raise ConfigurationError(
                f"amplitude grid {amp.shape} and phase grid {ph.shape} must be equal 2-D shapes")
        if np.any(amp <= 0) or np.any(amp > 1) or not np.all(np.isfinite(amp)):
            raise ConfigurationError("amplitudes must lie in (0, 1]")
        if self.bits is not None and (int(self.bits) != self.bits or self.bits < 1):
            raise ConfigurationError("bits must be a positive integer")
        object.__setattr__(self, "amplitudes", amp)
        object.__setattr__(self, "phases", ph)

    @classmethod
    def uniform(cls, geom: RisGeometry, gamma: complex = -1.0) -> "ReflectionProfile":
        """Same coefficient on every cell; the default is a PEC plate."""
        shape = geom.shape
        return cls(np.full(shape, abs(gamma)), np.full(shape, np.angle(gamma)))

    @property
    def shape(self) -> tuple[int, int]:
        return self.phases.shape

    @property
    def gamma(self) -> np.ndarray:
        return self.amplitudes * np.exp(1j * self.phases)

    @property
    def quantization(self) -> str:
        return "continuous" if self.bits is None else f"{self.bits}-bit"

    def check_geometry(self, geom: RisGeometry) -> None:
        if self.shape != geom.shape:
            raise ConfigurationError(
                f"profile grid {self.shape} does not match geometry {geom.shape}")

    def __eq__(self, other):
        if not isinstance(other, ReflectionProfile):
            return NotImplemented
        return (self.bits == other.bits
                and np.array_equal(self.amplitudes, other.amplitudes)
                and np.array_equal(self.phases, other.phases))

    def to_dict(self) -> dict:
        return {"quantization": "continuous" if self.bits is None else "bits",
                "bits": self.bits,
                "amplitudes": self.amplitudes.tolist(),
                "phases": self.phases.tolist()}

    @classmethod
    def from_dict(cls, data: dict) -> "ReflectionProfile":
        return cls(np.asarray(data["amplitudes"], dtype=float),
                   np.asarray(data["phases"], dtype=float),
                   data.get("bits"))


@dataclass(frozen=True)
class SteeringConfig:
    incident: Direction
    desired: Direction

    def __post_init__(self):
        for d in (self.incident, self.desired):
            if not 0.0 <= d.theta <= np.pi / 2 + 1e-12:
                raise ConfigurationError("steering directions must be in the front half-space")

    @classmethod
    def from_signed(cls, theta_i_deg: float, theta_d_deg: float,
                    phi_plane_deg: float = 90.0) -> "SteeringConfig":
        return cls(Direction.from_signed(theta_i_deg, phi_plane_deg),
                   Direction.from_signed(theta_d_deg, phi_plane_deg))

    def reversed(self) -> "SteeringConfig":
        return SteeringConfig(self.desired, self.incident)


def continuous_profile(geom: RisGeometry, steer: SteeringConfig) -> ReflectionProfile:
    """Linear phase gradient ``(k_i - k_d) . r`` that redirects ``incident`` to ``desired``."""
    k0 = geom.k0
    dk = incident_wavevector(steer.incident, k0) - scattered_wavevector(steer.desired, k0)
    phase = np.add.outer(dk[0] * geom.x, dk[1] * geom.y)
    return ReflectionProfile(np.ones(geom.shape), np.mod(phase, TWO_PI), None)


def quantize_phase(phases, bits: int) -> np.ndarray:
    """Snap phases to the nearest of ``2**bits`` levels; exact ties go up a level."""
    if int(bits) != bits or bits < 1:
        raise ConfigurationError("bits must be a positive integer")
    levels = 2 ** int(bits)
    step = TWO_PI / levels
    wrapped = np.mod(np.asarray(phases, dtype=float), TWO_PI)
    q = np.mod(np.floor(wrapped / step + 0.5), levels)
    return q * step


def quantize_profile(profile: ReflectionProfile, bits: int) -> ReflectionProfile:
    """b-bit version of ``profile`` with unit amplitudes."""
    return ReflectionProfile(np.ones(profile.shape), quantize_phase(profile.phases, bits), int(bits))


def circular_distance(a, b) -> np.ndarray:
    """Absolute angular separation on the circle, in [0, pi]."""
    return np.abs(np.angle(np.exp(1j * (np.asarray(a) - np.asarray(b)))))


def build_profile(geom: RisGeometry, steer: SteeringConfig,
                  bits: Optional[int] = None) -> ReflectionProfile:
    profile = continuous_profile(geom, steer)
    return profile if bits is None else quantize_profile(profile, bits)


# -- effective periodicity -------------------------------------------------


def fundamental_period(lines: np.ndarray, atol: float = 1e-9) -> int:
    """Smallest shift T with ``lines[:, n] == lines[:, n + T]`` everywhere.

    ``lines`` holds complex sequences along the last axis.  Returns the line
    length when no shorter period exists.
    """
    length = lines.shape[-1]
    for t in range(1, length):
        if np.allclose(lines[..., t:], lines[..., :-t], rtol=0, atol=atol):
            return t
    return length


def dominant_period(lines: np.ndarray) -> float:
    """Real-valued period (in cells) of the strongest non-DC spectral line.

    The search runs over spatial frequencies between one cycle per aperture
    and the Nyquist limit, scoring both signs of the frequency so linear
    phase ramps and real two-level sequences are handled alike.
    """
    length = lines.shape[-1]
    if length < 2:
        return 1.0
    n = np.arange(length)

    def score(nu):
        basis = np.exp(-2j * np.pi * nu * n)
        return -(np.sum(np.abs(lines @ basis) ** 2) + np.sum(np.abs(lines @ basis.conj()) ** 2))

    lo, hi = 1.0 / length, 0.5
    grid = np.linspace(lo, hi, 2048)
    values = np.array([score(nu) for nu in grid])
    i = int(np.argmin(values))
    a, b = grid[max(i - 1, 0)], grid[min(i + 1, len(grid) - 1)]
    res = minimize_scalar(score, bounds=(a, b), method="bounded",
                          options={"xatol": 1e-10})
    nu = res.x if res.fun <= values[i] else grid[i]
    return float(1.0 / nu)


@dataclass(frozen=True)
class EffectivePeriods:
    """Dominant effective periods (metres) plus the exact cell periods."""

    P_x: float
    P_y: float
    dominant_cells: tuple[float, float]
    fundamental_cells: tuple[int, int]

    def __iter__(self) -> Iterator[float]:
        return iter((self.P_x, self.P_y))


def effective_periods(profile: ReflectionProfile, geom: RisGeometry) -> EffectivePeriods:
    """Effective spatial periods of a quantized phase pattern along x and y.

    An axis along which the pattern is uniform gets one cell.  Continuous
    profiles report the element pitch, since an ideal gradient has no
    coarser periodicity than the lattice itself.
    """
    profile.check_geometry(geom)
    gamma = np.exp(1j * profile.phases)
    along_x = gamma.T  # each row: one n-line running over m
    along_y = gamma
    fundamental = (fundamental_period(along_x), fundamental_period(along_y))
    if profile.bits is None:
        return EffectivePeriods(geom.pitch_x, geom.pitch_y, (1.0, 1.0), fundamental)
    dominant = tuple(
        1.0 if fund == 1 else dominant_period(lines)
        for fund, lines in zip(fundamental, (along_x, along_y)))
    return EffectivePeriods(dominant[0] * geom.pitch_x, dominant[1] * geom.pitch_y,
                            dominant, fundamental)


@dataclass(frozen=True)
class GratingLobePrediction:
    orders: list[tuple[int, int]]
    directions: list[Direction]
    effective_periods: tuple[float, float]

    @property
    def grating_lobes(self) -> list[tuple[tuple[int, int], Direction]]:
        """Only the non-zero orders."""
        return [(o, d) for o, d in zip(self.orders, self.directions) if o != (0, 0)]


def predict_grating_lobes(steer: SteeringConfig, periods, wavelength: float) -> GratingLobePrediction:
    """Visible diffraction orders of a surface with effective periods ``periods``.

    Order (u, v) leaves with tangential direction cosines equal to the
    specular ones shifted by ``(u lambda / P_x, v lambda / P_y)``; order
    (0, 0) is the specular direction.  With the dominant supercell period of
    a 1-bit profile, the first orders land on the designed beam and on its
    mirror image.
    """
    p_x, p_y = (float(p) for p in periods)
    if p_x <= 0 or p_y <= 0 or wavelength <= 0:
        raise ConfigurationError("periods and wavelength must be > 0")
    inc = steer.incident
    sx0 = -np.sin(inc.theta) * np.cos(inc.phi)
    sy0 = -np.sin(inc.theta) * np.sin(inc.phi)
    umax = int(np.ceil(2.0 * p_x / wavelength)) + 1
    vmax = int(np.ceil(2.0 * p_y / wavelength)) + 1
    orders, directions = [], []
    for u in range(-umax, umax + 1):
        for v in range(-vmax, vmax + 1):
            sx = sx0 + u * wavelength / p_x
            sy = sy0 + v * wavelength / p_y
            rho = np.hypot(sx, sy)
            if rho > 1.0 + 1e-12:
                continue
            theta = float(np.arcsin(min(rho, 1.0)))
            phi = float(np.arctan2(sy, sx)) if rho > 1e-12 else steer.desired.phi
            orders.append((u, v))
            directions.append(Direction(theta, phi))
    return GratingLobePrediction(orders, directions, (p_x, p_y))
