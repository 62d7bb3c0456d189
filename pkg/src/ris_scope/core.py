"""Angle conventions, wavevectors and shared constants.

Directions use the usual spherical convention: ``theta`` is measured from the
+z axis (the RIS normal) and ``phi`` is the azimuth of the xy-projection from
+x.  Pattern cuts use a *signed* theta inside a fixed phi plane; a negative
signed angle means ``(|theta|, phi_plane + pi)``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

SPEED_OF_LIGHT = 299_792_458.0  # m/s
ETA0 = 376.730313668  # free-space impedance, ohm
DB_FLOOR = -300.0

TWO_PI = 2.0 * np.pi

# Vec3 values are plain length-3 float arrays.
Vec3 = np.ndarray


class ConfigurationError(ValueError):
    """Raised when inputs are inconsistent (grid shapes, empty ranges, ...)."""


@dataclass(frozen=True)
class Direction:
    """A propagation or observation direction in radians."""

    theta: float
    phi: float = 0.0

    def __post_init__(self):
        if not (np.isfinite(self.theta) and np.isfinite(self.phi)):
            raise ConfigurationError("direction angles must be finite")
        object.__setattr__(self, "theta", float(self.theta))
        object.__setattr__(self, "phi", float(np.mod(self.phi, TWO_PI)))

    @classmethod
    def from_degrees(cls, theta_deg: float, phi_deg: float = 0.0) -> "Direction":
        return cls(np.radians(theta_deg), np.radians(phi_deg))

    @classmethod
    def from_signed(cls, theta_deg: float, phi_plane_deg: float = 90.0) -> "Direction":
        """Map a signed cut angle to ``(|theta|, phi)`` / ``(|theta|, phi + 180)``."""
        phi = phi_plane_deg if theta_deg >= 0 else phi_plane_deg + 180.0
        return cls.from_degrees(abs(theta_deg), phi)

    def signed_degrees(self, phi_plane_deg: float = 90.0) -> float:
        """Inverse of :meth:`from_signed`; raises if the direction is off the cut."""
        return direction_to_signed(self, phi_plane_deg)

    @property
    def unit(self) -> Vec3:
        st = np.sin(self.theta)
        return np.array([st * np.cos(self.phi), st * np.sin(self.phi), np.cos(self.theta)])


def direction_to_signed(direction: Direction, phi_plane_deg: float = 90.0,
                        atol: float = 1e-9) -> float:
    theta_deg = np.degrees(direction.theta)
    if theta_deg < atol:
        return 0.0
    plane = np.mod(np.radians(phi_plane_deg), TWO_PI)
    delta = np.angle(np.exp(1j * (direction.phi - plane)))
    if abs(delta) < atol:
        return float(theta_deg)
    if abs(abs(delta) - np.pi) < atol:
        return float(-theta_deg)
    raise ConfigurationError(
        f"direction phi={np.degrees(direction.phi):.6g} deg is not in the "
        f"{phi_plane_deg:g} deg cut")


def signed_to_angles(theta_deg, phi_plane_deg: float = 90.0):
    """Vectorised signed-cut mapping; returns ``(theta, phi)`` arrays in radians."""
    theta_deg = np.asarray(theta_deg, dtype=float)
    theta = np.radians(np.abs(theta_deg))
    phi = np.radians(np.where(theta_deg >= 0, phi_plane_deg, phi_plane_deg + 180.0))
    return theta, np.mod(phi, TWO_PI)


@dataclass(frozen=True)
class RisGeometry:
    """Uniform M x N aperture in the xy plane.

    ``m_count`` runs along x and ``n_count`` along y.  Element (m, n) sits at
    ``((m + index_origin) * pitch_x, (n + index_origin) * pitch_y, 0)`` for
    zero-based array indices m, n.  The origin only shifts a global phase
    for continuous profiles, but it changes which cells flip under
    quantization, so it is part of the geometry.
    """

    m_count: int
    n_count: int
    pitch_x: float
    pitch_y: float
    frequency: float
    index_origin: int = 0

    def __post_init__(self):
        for name in ("m_count", "n_count"):
            value = getattr(self, name)
            if int(value) != value or value < 1:
                raise ConfigurationError(f"{name} must be an integer >= 1")
            object.__setattr__(self, name, int(value))
        for name in ("pitch_x", "pitch_y", "frequency"):
            value = getattr(self, name)
            if not (np.isfinite(value) and value > 0):
                raise ConfigurationError(f"{name} must be > 0")

    @classmethod
    def from_size(cls, along_y: int, along_x: int, pitch: float = 0.016,
                  frequency: float = 5.5e9, **kw) -> "RisGeometry":
        """Build from the ``[along_y x along_x]`` size notation (e.g. [16x10]).

        The first figure counts cells along y, the axis that steers in the
        phi = 90 deg plane.
        """
        return cls(m_count=along_x, n_count=along_y, pitch_x=pitch, pitch_y=pitch,
                   frequency=frequency, **kw)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.m_count, self.n_count)

    @property
    def wavelength(self) -> float:
        return SPEED_OF_LIGHT / self.frequency

    @property
    def k0(self) -> float:
        return TWO_PI / self.wavelength

    @property
    def aperture_area(self) -> float:
        return self.m_count * self.n_count * self.pitch_x * self.pitch_y

    @property
    def x(self) -> np.ndarray:
        return (np.arange(self.m_count) + self.index_origin) * self.pitch_x

    @property
    def y(self) -> np.ndarray:
        return (np.arange(self.n_count) + self.index_origin) * self.pitch_y

    def positions(self) -> np.ndarray:
        """Element centres as an ``(M, N, 3)`` array."""
        X, Y = np.meshgrid(self.x, self.y, indexing="ij")
        return np.stack([X, Y, np.zeros_like(X)], axis=-1)

    @property
    def center(self) -> Vec3:
        return np.array([self.x.mean(), self.y.mean(), 0.0])

    def to_dict(self) -> dict:
        return {"m_count": self.m_count, "n_count": self.n_count,
                "pitch_x": self.pitch_x, "pitch_y": self.pitch_y,
                "frequency": self.frequency, "index_origin": self.index_origin}


def incident_wavevector(direction: Direction, k0: float) -> Vec3:
    """Wavevector of a plane wave arriving *from* ``direction``."""
    return -k0 * direction.unit


def scattered_wavevector(direction: Direction, k0: float) -> Vec3:
    """Wavevector of a wave leaving the surface *towards* ``direction``."""
    return k0 * direction.unit


def specular_reflect(ki: Vec3) -> Vec3:
    """Mirror a wavevector in the z = 0 plane (tangential part unchanged)."""
    ki = np.asarray(ki, dtype=float)
    k0 = np.linalg.norm(ki)
    if k0 == 0:
        raise ConfigurationError("cannot reflect a zero wavevector")
    khat = ki / k0
    zhat = np.array([0.0, 0.0, 1.0])
    return k0 * (khat - 2.0 * np.dot(khat, zhat) * zhat)


def to_db(power, floor: float = DB_FLOOR):
    """10 log10 with a hard floor so zero power stays finite."""
    power = np.asarray(power, dtype=float)
    with np.errstate(divide="ignore"):
        out = 10.0 * np.log10(power)
    return np.maximum(out, floor)


def from_db(value_db):
    return 10.0 ** (np.asarray(value_db, dtype=float) / 10.0)


def worker_count(default: int | None = None) -> int:
    """Thread cap from ``RIS_SCOPE_THREADS`` (falls back to the CPU count)."""
    raw = os.environ.get("RIS_SCOPE_THREADS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    if default is not None:
        return default
    return max(1, min(8, os.cpu_count() or 1))
