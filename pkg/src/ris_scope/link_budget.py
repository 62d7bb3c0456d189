"""Four-way RIS radar link budget and the desk-scale detection scan."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field, replace
from typing import Optional

import numpy as np

from .core import DB_FLOOR, ConfigurationError, RisGeometry
from .phase_profile import SteeringConfig, build_profile
from .rcs import bistatic_rcs

FOUR_PI_DB = 10.0 * np.log10(4.0 * np.pi)


@dataclass(frozen=True)
class LinkBudget:
    """All powers in dBm, gains in dBi, cross sections in dBsm, lengths in m."""

    p_tx: float
    g_a: float
    sigma_f: float
    sigma_b: float
    sigma_t: float
    wavelength: float
    r1: float
    r2: float
    n0: float

    def __post_init__(self):
        if not (self.r1 > 0 and self.r2 > 0):
            raise ConfigurationError("r1 and r2 must be > 0")
        if not self.wavelength > 0:
            raise ConfigurationError("wavelength must be > 0")


def snr_db(b: LinkBudget) -> float:
    """Received SNR over the radar -> RIS -> target -> RIS -> radar path."""
    return (b.p_tx + 2.0 * b.g_a + b.sigma_f + b.sigma_t + b.sigma_b
            + 20.0 * np.log10(b.wavelength) - 5.0 * FOUR_PI_DB
            - 40.0 * np.log10(b.r1) - 40.0 * np.log10(b.r2) - b.n0)


def direct_snr_db(p_tx, gain, sigma_t, wavelength, distance, n0):
    """Monostatic two-way radar equation (no RIS), vectorised over inputs."""
    return (p_tx + 2.0 * np.asarray(gain) + sigma_t + 20.0 * np.log10(wavelength)
            - 3.0 * FOUR_PI_DB - 40.0 * np.log10(distance) - n0)


def horn_gain(angle_off_boresight, beamwidth: float, sidelobe_floor: float,
              peak: float) -> np.ndarray:
    """Gaussian main lobe in dB, 3 dB down at half the beamwidth, clamped at the floor.

    ``sidelobe_floor`` is relative to the peak (e.g. -25.6).
    """
    if not beamwidth > 0:
        raise ConfigurationError("beamwidth must be > 0")
    alpha = np.asarray(angle_off_boresight, dtype=float)
    gain = peak - 12.0 * (alpha / beamwidth) ** 2
    return np.maximum(gain, peak + sidelobe_floor)


@dataclass(frozen=True)
class Scene:
    """Planar (y, z) scene in the RIS frame: RIS centre at the origin, normal +z.

    Targets carry a set label; the steering schedule maps labels to the
    steering angle used while that set is probed.
    """

    radar_position: tuple[float, float] = (0.0, 1.6)
    radar_boresight_deg: float = 180.0  # angle from +z: 180 deg looks down -z
    horn_beamwidth_deg: float = 28.9
    horn_sidelobe_db: float = -25.6
    horn_peak_dbi: float = 12.0
    p_tx_dbm: float = 73.0  # calibration value, see default_scene
    n0_dbm: float = 0.0
    sigma_t_dbsm: float = 0.0
    targets: tuple[tuple[float, float], ...] = ()
    labels: tuple[str, ...] = ()
    schedule: dict = field(default_factory=lambda: {"A": 45.0, "B": 30.0, "C": 15.0})

    def __post_init__(self):
        if len(self.targets) != len(self.labels):
            raise ConfigurationError("every target needs exactly one set label")

    def to_dict(self) -> dict:
        d = asdict(self)
        d["targets"] = [list(t) for t in self.targets]
        d["labels"] = list(self.labels)
        d["radar_position"] = list(self.radar_position)
        return d

    @classmethod
    def from_dict(cls, data: dict) -> "Scene":
        data = dict(data)
        if "targets" in data:
            data["targets"] = tuple(tuple(float(v) for v in t) for t in data["targets"])
        if "labels" in data:
            data["labels"] = tuple(data["labels"])
        if "radar_position" in data:
            data["radar_position"] = tuple(data["radar_position"])
        return cls(**data)


def default_scene(**overrides) -> Scene:
    """50 targets on a line 2 m from the RIS plane, 30 mm apart.

    The lateral offsets span roughly 15..45 deg seen from the RIS; the 18
    nearest-to-normal positions form set C, the next 17 set B and the outer
    15 set A, matching the 15/17/18 split and the 45/30/15 deg schedule.
    Transmit power is an assumed calibration value.
    """
    lateral = 0.54 + 0.03 * np.arange(50)
    targets = tuple((float(y), 2.0) for y in lateral)
    labels = tuple(["C"] * 18 + ["B"] * 17 + ["A"] * 15)
    return replace(Scene(targets=targets, labels=labels), **overrides)


@dataclass
class DetectionReport:
    counts: dict
    total: int
    rows: list  # per-target dicts

    def to_dict(self) -> dict:
        return {"counts": dict(self.counts), "total": self.total, "targets": self.rows}


def _angle_from_z(dy, dz):
    return np.degrees(np.arctan2(dy, dz))


def detection_scan(scene: Scene, geom: Optional[RisGeometry], bits: Optional[int] = 1,
                   threshold: float = 1.0, model: str = "paper") -> DetectionReport:
    """Count targets whose SNR exceeds ``threshold`` for each labelled set.

    With ``geom`` set to ``None`` the RIS is absent and only the horn's
    direct two-way path is evaluated.  With a RIS, the RIS path and the
    direct path are added in power (no interference between them).
    """
    sets = sorted(set(scene.labels))
    missing = [s for s in sets if s not in scene.schedule]
    if missing:
        raise ConfigurationError(f"steering schedule is missing set(s) {missing}")
    targets = np.asarray(scene.targets, dtype=float).reshape(-1, 2)
    labels = np.asarray(scene.labels)
    ry, rz = scene.radar_position
    ty, tz = targets[:, 0], targets[:, 1]

    # horn, direct path
    los = _angle_from_z(ty - ry, tz - rz)
    off_axis = np.abs((los - scene.radar_boresight_deg + 180.0) % 360.0 - 180.0)
    g_direct = horn_gain(off_axis, scene.horn_beamwidth_deg, scene.horn_sidelobe_db,
                         scene.horn_peak_dbi)
    wavelength = geom.wavelength if geom is not None else 299_792_458.0 / 5.5e9
    r_direct = np.hypot(ty - ry, tz - rz)
    snr_direct = direct_snr_db(scene.p_tx_dbm, g_direct, scene.sigma_t_dbsm, wavelength,
                               r_direct, scene.n0_dbm)
    snr = snr_direct.copy()
    snr_ris = np.full(len(targets), DB_FLOOR)

    if geom is not None:
        to_ris = _angle_from_z(-ry, -rz)
        g_ris = float(horn_gain(abs((to_ris - scene.radar_boresight_deg + 180.0) % 360.0 - 180.0),
                                scene.horn_beamwidth_deg, scene.horn_sidelobe_db,
                                scene.horn_peak_dbi))
        theta_i = float(_angle_from_z(ry, rz))  # radar direction seen from the RIS
        theta_t = _angle_from_z(ty, tz)
        r1 = float(np.hypot(ry, rz))
        r2 = np.hypot(ty, tz)
        for label in sets:
            idx = np.flatnonzero(labels == label)
            steer = SteeringConfig.from_signed(theta_i, scene.schedule[label])
            profile = build_profile(geom, steer, bits)
            sigma_f = bistatic_rcs(geom, profile, theta_i, theta_t[idx], model=model)
            sigma_b = bistatic_rcs(geom, profile, theta_t[idx], theta_i, model=model)
            for j, i in enumerate(idx):
                snr_ris[i] = snr_db(LinkBudget(scene.p_tx_dbm, g_ris, sigma_f[j], sigma_b[j],
                                               scene.sigma_t_dbsm, wavelength, r1, r2[i],
                                               scene.n0_dbm))
        snr = 10.0 * np.log10(10.0 ** (snr_direct / 10.0) + 10.0 ** (snr_ris / 10.0))

    detected = snr > threshold
    counts = {label: int(np.sum(detected[labels == label])) for label in sets}
    rows = [{"index": int(i), "set": str(labels[i]), "y": float(ty[i]), "z": float(tz[i]),
             "snr_db": float(snr[i]), "snr_direct_db": float(snr_direct[i]),
             "snr_ris_db": float(snr_ris[i]), "detected": bool(detected[i])}
            for i in range(len(targets))]
    return DetectionReport(counts, int(detected.sum()), rows)
