"""Bistatic RCS patterns and the metrics read off them.

Forward patterns illuminate from the steering's incident direction and
sweep the observation angle; backward patterns keep the same tuning but
illuminate from the desired direction, so their main lobe should fall back
on the incident angle.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np

from .core import DB_FLOOR, ConfigurationError, Direction, RisGeometry, signed_to_angles, to_db
from .phase_profile import ReflectionProfile, SteeringConfig, build_profile
from .scattering import (
    FieldSample,
    PlaneWave,
    cut_angles,
    model_excitations,
    pattern_cut,
    refine_peak,
)


def rcs_linear(magnitude, amplitude: float = 1.0):
    """``4 pi |r E_s|^2 / E0^2`` in square metres."""
    return 4.0 * np.pi * np.abs(magnitude) ** 2 / amplitude ** 2


def rcs_from_field(sample: FieldSample, incident: PlaneWave) -> float:
    """Bistatic RCS in dBsm; an exactly zero field maps to the -300 dBsm floor."""
    return float(to_db(rcs_linear(sample.magnitude, incident.amplitude)))


@dataclass(frozen=True)
class CutSpec:
    phi_plane_deg: float = 90.0
    theta_min: float = -90.0
    theta_max: float = 90.0
    step: float = 0.05

    def angles(self) -> np.ndarray:
        return cut_angles((self.theta_min, self.theta_max), self.step)


@dataclass(frozen=True, eq=False)
class PatternCut:
    phi_plane_deg: float
    thetas: np.ndarray
    rcs_dbsm: np.ndarray
    peak: tuple[float, float]
    direction_of_design: float

    def __post_init__(self):
        if len(self.thetas) != len(self.rcs_dbsm):
            raise ConfigurationError("theta and RCS samples differ in length")
        if len(self.thetas) > 1 and np.any(np.diff(self.thetas) <= 0):
            raise ConfigurationError("cut angles must be strictly increasing")

    @classmethod
    def from_samples(cls, phi_plane_deg, thetas, rcs_dbsm, design_theta) -> "PatternCut":
        thetas = np.asarray(thetas, dtype=float)
        rcs_dbsm = np.asarray(rcs_dbsm, dtype=float)
        i = int(np.argmax(rcs_dbsm))
        return cls(float(phi_plane_deg), thetas, rcs_dbsm,
                   refine_peak(thetas, rcs_dbsm, i), float(design_theta))

    def value_at(self, theta_deg: float) -> float:
        if not self.thetas[0] - 1e-9 <= theta_deg <= self.thetas[-1] + 1e-9:
            raise ConfigurationError(f"theta={theta_deg} deg is outside the cut")
        return float(np.interp(theta_deg, self.thetas, self.rcs_dbsm))

    def main_lobe(self, theta_ref: float) -> tuple[float, float]:
        """Refined maximum on the side of the cut that contains ``theta_ref``.

        For ``theta_ref == 0`` the whole cut is searched.  Restricting the
        side keeps the 1-bit mirror lobe from being taken as the main beam.
        """
        if theta_ref > 0:
            mask = self.thetas > 0
        elif theta_ref < 0:
            mask = self.thetas < 0
        else:
            mask = np.ones_like(self.thetas, dtype=bool)
        if not mask.any():
            raise ConfigurationError("cut does not cover the requested half-plane")
        masked = np.where(mask, self.rcs_dbsm, -np.inf)
        i = int(np.argmax(masked))
        if not np.isfinite(masked[i]) or masked[i] <= DB_FLOOR:
            raise ConfigurationError("no lobe above the RCS floor")
        # keep the three-point stencil inside the allowed side
        lo = i - 1 if i > 0 and mask[i - 1] else i
        hi = i + 1 if i < len(masked) - 1 and mask[i + 1] else i
        if lo == i or hi == i:
            return float(self.thetas[i]), float(self.rcs_dbsm[i])
        return refine_peak(self.thetas, self.rcs_dbsm, i)


def _cut_for(geom, incident: Direction, profile, cut: CutSpec, model, design_theta) -> PatternCut:
    wave = PlaneWave(incident)
    field = pattern_cut(geom, wave, profile, cut.phi_plane_deg, thetas_deg=cut.angles(), model=model)
    sigma = to_db(rcs_linear(field.magnitude, wave.amplitude))
    return PatternCut.from_samples(cut.phi_plane_deg, field.thetas_deg, sigma, design_theta)


def forward_pattern(geom: RisGeometry, steer: SteeringConfig, profile: ReflectionProfile,
                    cut: CutSpec = CutSpec(), model: str = "paper") -> PatternCut:
    """Radar -> RIS -> target: illuminate from ``steer.incident``."""
    design = steer.desired.signed_degrees(cut.phi_plane_deg)
    return _cut_for(geom, steer.incident, profile, cut, model, design)


def backward_pattern(geom: RisGeometry, steer: SteeringConfig, profile: ReflectionProfile,
                     cut: CutSpec = CutSpec(), model: str = "paper") -> PatternCut:
    """Target -> RIS -> radar: same tuning, illuminated from ``steer.desired``."""
    design = steer.incident.signed_degrees(cut.phi_plane_deg)
    return _cut_for(geom, steer.desired, profile, cut, model, design)


def beam_squint(cut: PatternCut, theta_d: float) -> float:
    """``|theta_hat - theta_d|`` in degrees, theta_hat taken on theta_d's side."""
    theta_hat, _ = cut.main_lobe(theta_d)
    return abs(theta_hat - theta_d)


def pslr(cut: PatternCut, theta_d: float, theta_i: float) -> float:
    """Peak-to-specular ratio: main-lobe RCS minus the RCS at ``theta_s = theta_i``."""
    specular = cut.value_at(theta_i)
    _, peak = cut.main_lobe(theta_d)
    return peak - specular


def bistatic_rcs(geom: RisGeometry, profile: ReflectionProfile, incident_deg, observed_deg,
                 phi_plane_deg: float = 90.0, model: str = "paper") -> np.ndarray:
    """RCS (dBsm) for paired signed incidence / observation angles in one plane.

    Each pair gets its own illumination, which is what the backward path of a
    moving target needs.  Uses the same current models as the pattern code.
    """
    profile.check_geometry(geom)
    inc_deg, obs_deg = np.broadcast_arrays(np.asarray(incident_deg, dtype=float),
                                           np.asarray(observed_deg, dtype=float))
    ti, pi_ = signed_to_angles(inc_deg.ravel(), phi_plane_deg)
    ts, ps = signed_to_angles(obs_deg.ravel(), phi_plane_deg)
    if model == "paper":
        coeff = -2.0 * profile.gamma
    elif model == "physical-optics":
        coeff = 1.0 - profile.gamma
    else:
        raise ConfigurationError(f"unknown scattering model {model!r}")
    k0 = geom.k0
    # exp(-j k_i . r) exp(j k_s . r) with k_i = -k0 u_inc, k_s = k0 u_obs
    qx = k0 * (np.sin(ts) * np.cos(ps) + np.sin(ti) * np.cos(pi_))
    qy = k0 * (np.sin(ts) * np.sin(ps) + np.sin(ti) * np.sin(pi_))
    sums = np.einsum("am,mn,an->a", np.exp(1j * np.outer(qx, geom.x)), coeff,
                     np.exp(1j * np.outer(qy, geom.y))) * geom.pitch_x * geom.pitch_y
    # |E| combines cos(theta)cos(phi) and sin(phi) projections of the same sum
    proj = np.sqrt((np.cos(ts) * np.cos(ps)) ** 2 + np.sin(ps) ** 2)
    mag = geom.k0 * np.cos(ti) / (4.0 * np.pi) * np.abs(sums) * proj
    return to_db(rcs_linear(mag)).reshape(inc_deg.shape)


def monostatic_rcs(geom: RisGeometry, profile: ReflectionProfile, model: str = "paper") -> float:
    """RCS back along the normal for broadside illumination."""
    return float(bistatic_rcs(geom, profile, 0.0, 0.0, model=model))


@dataclass(frozen=True)
class RcsMetrics:
    sigma_f_peak: float
    sigma_b_peak: float
    beam_squint: float
    pslr: float
    theta_hat: float = float("nan")

    def to_record(self, theta_i: float, theta_d: float, bits: Optional[int],
                  m: int, n: int) -> dict:
        return {"theta_i": theta_i, "theta_d": theta_d, "bits": bits, "M": m, "N": n,
                "sigma_f": self.sigma_f_peak, "sigma_b": self.sigma_b_peak,
                "squint_deg": self.beam_squint, "pslr_db": self.pslr,
                "theta_hat": self.theta_hat}


def steering_metrics(geom: RisGeometry, theta_i: float, theta_d: float, bits: Optional[int],
                     cut: CutSpec = CutSpec(), model: str = "paper") -> RcsMetrics:
    """Forward/backward peaks, squint and forward PSLR for one configuration."""
    steer = SteeringConfig.from_signed(theta_i, theta_d, cut.phi_plane_deg)
    profile = build_profile(geom, steer, bits)
    fwd = forward_pattern(geom, steer, profile, cut, model)
    bwd = backward_pattern(geom, steer, profile, cut, model)
    theta_hat, sigma_f = fwd.main_lobe(theta_d)
    _, sigma_b = bwd.main_lobe(theta_i)
    return RcsMetrics(sigma_f, sigma_b, abs(theta_hat - theta_d),
                      sigma_f - fwd.value_at(theta_i), theta_hat)


def metrics_dict(metrics: RcsMetrics) -> dict:
    return asdict(metrics)
