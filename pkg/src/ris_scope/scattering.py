"""Far-field scattering from an excited RIS aperture.

Each cell radiates as a point source weighted by its area.  Fields are
returned *range-normalised*: the ``exp(-j k0 r) / r`` factor is dropped, so
``r * E`` is what comes back and no result depends on a distance.

Two current models are available:

``"paper"``
    only the programmable term, doubled: ``-2 * Gamma`` per cell.  A
    perfectly steered continuous profile then keeps the full plate level
    at any steering angle.
``"physical-optics"``
    the two-term current ``1 - Gamma``, which also radiates the specular
    lobe.

Both models keep the ``cos(theta_i)`` obliquity factor and the incident
phase ``exp(-j k_i . r)`` on every cell.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Union

import numpy as np

from .core import (
    ConfigurationError,
    Direction,
    RisGeometry,
    incident_wavevector,
    signed_to_angles,
    worker_count,
)
from .phase_profile import ReflectionProfile

MODELS = ("paper", "physical-optics")


@dataclass(frozen=True)
class PlaneWave:
    """x-polarised plane wave arriving from ``direction``."""

    direction: Direction
    amplitude: float = 1.0

    def __post_init__(self):
        if not self.amplitude > 0:
            raise ConfigurationError("plane-wave amplitude must be > 0")


@dataclass(frozen=True, eq=False)
class ExcitationGrid:
    """Cell currents up to the common factor ``E0 cos(theta_i) / eta0``."""

    values: np.ndarray
    include_specular: bool

    def __post_init__(self):
        v = np.array(self.values, dtype=complex)
        if v.ndim != 2 or not np.all(np.isfinite(v)):
            raise ConfigurationError("excitation grid must be a finite 2-D array")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def scaled(self, factor: complex) -> "ExcitationGrid":
        return ExcitationGrid(self.values * factor, self.include_specular)


@dataclass(frozen=True)
class FieldSample:
    e_theta: complex
    e_phi: complex
    direction: Direction

    @property
    def magnitude(self) -> float:
        return float(np.sqrt(abs(self.e_theta) ** 2 + abs(self.e_phi) ** 2))


def incident_phase(geom: RisGeometry, wave: PlaneWave) -> np.ndarray:
    """``exp(-j k_i . r)`` on the cell grid."""
    ki = incident_wavevector(wave.direction, geom.k0)
    return np.exp(-1j * np.add.outer(ki[0] * geom.x, ki[1] * geom.y))


def element_excitations(geom: RisGeometry, wave: PlaneWave, profile: ReflectionProfile,
                        include_specular_term: bool = True) -> ExcitationGrid:
    """Per-cell surface current: ``phase * (1 - Gamma)`` or ``phase * (-Gamma)``.

    On z = 0 the reflected wave shares the incident tangential phase, so a
    single phase factor multiplies both terms.
    """
    profile.check_geometry(geom)
    phase = incident_phase(geom, wave)
    gamma = profile.gamma
    values = phase * (1.0 - gamma) if include_specular_term else phase * (-gamma)
    return ExcitationGrid(values, include_specular_term)


def model_excitations(geom: RisGeometry, wave: PlaneWave, profile: ReflectionProfile,
                      model: str = "paper") -> ExcitationGrid:
    if model == "paper":
        return element_excitations(geom, wave, profile, False).scaled(2.0)
    if model == "physical-optics":
        return element_excitations(geom, wave, profile, True)
    raise ConfigurationError(f"unknown scattering model {model!r}; expected one of {MODELS}")


def _aperture_sums(geom: RisGeometry, values: np.ndarray, theta, phi) -> np.ndarray:
    """``p_x p_y * sum_mn g_mn exp(j k_s . r_mn)`` for arrays of directions."""
    k0 = geom.k0
    st = np.sin(theta)
    ksx = k0 * st * np.cos(phi)
    ksy = k0 * st * np.sin(phi)
    ex = np.exp(1j * np.outer(ksx, geom.x))  # (A, M)
    ey = np.exp(1j * np.outer(ksy, geom.y))  # (A, N)
    return np.einsum("am,mn,an->a", ex, values, ey) * (geom.pitch_x * geom.pitch_y)


def far_field_arrays(geom: RisGeometry, wave: PlaneWave, grid: ExcitationGrid,
                     theta, phi, threads: int | None = None):
    """Vectorised far field; returns ``(e_theta, e_phi)`` arrays."""
    if grid.values.shape != geom.shape:
        raise ConfigurationError(
            f"excitation grid {grid.values.shape} does not match geometry {geom.shape}")
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    phi = np.broadcast_to(np.asarray(phi, dtype=float), theta.shape)
    threads = worker_count() if threads is None else threads
    if threads > 1 and theta.size >= 512:
        chunks = np.array_split(np.arange(theta.size), threads)
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(
                lambda idx: _aperture_sums(geom, grid.values, theta[idx], phi[idx]), chunks))
        sums = np.concatenate(parts)
    else:
        sums = _aperture_sums(geom, grid.values, theta, phi)
    scale = 1j * geom.k0 * wave.amplitude * np.cos(wave.direction.theta) / (4.0 * np.pi)
    e_theta = scale * np.cos(theta) * np.cos(phi) * sums
    e_phi = -scale * np.sin(phi) * sums
    return e_theta, e_phi


def far_field(geom: RisGeometry, wave: PlaneWave, grid: ExcitationGrid,
              obs: Direction) -> FieldSample:
    """Range-normalised scattered field towards ``obs``."""
    if obs.theta > np.pi / 2 + 1e-12:
        raise ConfigurationError("observation direction must be in the front half-space")
    e_theta, e_phi = far_field_arrays(geom, wave, grid, [obs.theta], [obs.phi], threads=1)
    return FieldSample(complex(e_theta[0]), complex(e_phi[0]), obs)


@dataclass(frozen=True, eq=False)
class FieldCut:
    """Far-field samples over a signed-theta cut, ordered by theta."""

    phi_plane_deg: float
    thetas_deg: np.ndarray
    e_theta: np.ndarray
    e_phi: np.ndarray

    @property
    def magnitude(self) -> np.ndarray:
        return np.sqrt(np.abs(self.e_theta) ** 2 + np.abs(self.e_phi) ** 2)

    def __len__(self) -> int:
        return len(self.thetas_deg)

    def __getitem__(self, i: int) -> FieldSample:
        return FieldSample(complex(self.e_theta[i]), complex(self.e_phi[i]),
                           Direction.from_signed(float(self.thetas_deg[i]), self.phi_plane_deg))

    def __iter__(self) -> Iterator[FieldSample]:
        return (self[i] for i in range(len(self)))


def cut_angles(theta_range: tuple[float, float], step: float) -> np.ndarray:
    """Inclusive, evenly stepped signed angles in degrees."""
    lo, hi = (float(t) for t in theta_range)
    if not step > 0:
        raise ConfigurationError("sweep step must be > 0")
    if hi < lo:
        raise ConfigurationError("empty theta range")
    if lo < -90.0 - 1e-9 or hi > 90.0 + 1e-9:
        raise ConfigurationError("theta range must lie within [-90, 90] degrees")
    count = int(np.floor((hi - lo) / step + 1e-9)) + 1
    return lo + step * np.arange(count)


def pattern_cut(geom: RisGeometry, wave: PlaneWave,
                source: Union[ReflectionProfile, ExcitationGrid],
                phi_plane_deg: float = 90.0,
                theta_range: tuple[float, float] = (-90.0, 90.0),
                step: float = 1.0, model: str = "paper",
                thetas_deg=None) -> FieldCut:
    """Sample the far field along a signed-theta cut.

    ``source`` may be a profile (excited with ``model``) or a ready-made
    excitation grid.  Passing ``thetas_deg`` overrides the range/step.
    """
    if thetas_deg is None:
        thetas_deg = cut_angles(theta_range, step)
    thetas_deg = np.asarray(thetas_deg, dtype=float)
    if thetas_deg.size == 0:
        raise ConfigurationError("empty theta range")
    grid = source if isinstance(source, ExcitationGrid) else model_excitations(geom, wave, source, model)
    theta, phi = signed_to_angles(thetas_deg, phi_plane_deg)
    e_theta, e_phi = far_field_arrays(geom, wave, grid, theta, phi)
    return FieldCut(float(phi_plane_deg), thetas_deg, e_theta, e_phi)


def refine_peak(x: np.ndarray, y: np.ndarray, i: int) -> tuple[float, float]:
    """Three-point parabolic refinement of a discrete maximum at index ``i``."""
    if i <= 0 or i >= len(y) - 1:
        return float(x[i]), float(y[i])
    y0, y1, y2 = y[i - 1], y[i], y[i + 1]
    denom = y0 - 2.0 * y1 + y2
    if not np.isfinite(denom) or denom >= 0:
        return float(x[i]), float(y[i])
    delta = 0.5 * (y0 - y2) / denom
    step = 0.5 * (x[i + 1] - x[i - 1])
    return float(x[i] + delta * step), float(y1 - 0.25 * (y0 - y2) * delta)
