"""JSON run configurations.

Angles are degrees in the file and radians inside the library.  Every
validation failure raises :class:`ConfigFieldError` carrying the dotted
path of the offending field, e.g. ``geometry.pitch_x``.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Any, Optional

from .core import ConfigurationError, Direction, RisGeometry
from .link_budget import LinkBudget, Scene, default_scene
from .phase_profile import SteeringConfig
from .rcs import CutSpec
from .scattering import MODELS


class ConfigFieldError(ConfigurationError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


def _number(block: dict, key: str, path: str, default=None, positive=False,
            integer=False, minimum=None, allow_none=False):
    value = block.get(key, default)
    where = f"{path}.{key}"
    if value is None:
        if allow_none:
            return None
        raise ConfigFieldError(where, "is required")
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigFieldError(where, f"expected a number, got {value!r}")
    if not math.isfinite(value):
        raise ConfigFieldError(where, "must be finite")
    if integer:
        if int(value) != value:
            raise ConfigFieldError(where, "must be an integer")
        value = int(value)
    else:
        value = float(value)
    if positive and value <= 0:
        raise ConfigFieldError(where, f"must be > 0, got {value}")
    if minimum is not None and value < minimum:
        raise ConfigFieldError(where, f"must be >= {minimum}, got {value}")
    return value


def _block(data: dict, key: str, required=False) -> Optional[dict]:
    value = data.get(key)
    if value is None:
        if required:
            raise ConfigFieldError(key, "block is required")
        return None
    if not isinstance(value, dict):
        raise ConfigFieldError(key, "must be a JSON object")
    return value


def _reject_unknown(block: dict, allowed, path: str):
    extra = sorted(set(block) - set(allowed))
    if extra:
        raise ConfigFieldError(f"{path}.{extra[0]}", "unknown field")


@dataclass(frozen=True)
class GeometryBlock:
    m_count: int = 10
    n_count: int = 16
    pitch_x: float = 0.016
    pitch_y: float = 0.016
    frequency: float = 5.5e9
    index_origin: int = 0

    @classmethod
    def parse(cls, block: dict) -> "GeometryBlock":
        _reject_unknown(block, [f.name for f in fields(cls)], "geometry")
        d = cls()
        return cls(
            _number(block, "m_count", "geometry", d.m_count, integer=True, minimum=1),
            _number(block, "n_count", "geometry", d.n_count, integer=True, minimum=1),
            _number(block, "pitch_x", "geometry", d.pitch_x, positive=True),
            _number(block, "pitch_y", "geometry", d.pitch_y, positive=True),
            _number(block, "frequency", "geometry", d.frequency, positive=True),
            _number(block, "index_origin", "geometry", d.index_origin, integer=True))

    def build(self) -> RisGeometry:
        return RisGeometry(**asdict(self))


@dataclass(frozen=True)
class SteeringBlock:
    theta_i: float = 0.0
    phi_i: float = 90.0
    theta_d: float = 0.0
    phi_d: float = 90.0
    bits: Optional[int] = None

    @classmethod
    def parse(cls, block: dict) -> "SteeringBlock":
        _reject_unknown(block, [f.name for f in fields(cls)], "steering")
        out = {}
        for key in ("theta_i", "theta_d"):
            value = _number(block, key, "steering", 0.0)
            if abs(value) > 90.0:
                raise ConfigFieldError(f"steering.{key}", "must lie within [-90, 90] degrees")
            out[key] = value
        for key in ("phi_i", "phi_d"):
            out[key] = _number(block, key, "steering", 90.0)
        out["bits"] = _number(block, "bits", "steering", None, integer=True, minimum=1,
                              allow_none=True)
        return cls(**out)

    def build(self) -> SteeringConfig:
        return SteeringConfig(Direction.from_signed(self.theta_i, self.phi_i),
                              Direction.from_signed(self.theta_d, self.phi_d))


@dataclass(frozen=True)
class SweepBlock:
    phi_plane: float = 90.0
    theta_min: float = -90.0
    theta_max: float = 90.0
    step: float = 0.05

    @classmethod
    def parse(cls, block: dict) -> "SweepBlock":
        _reject_unknown(block, [f.name for f in fields(cls)], "sweep")
        d = cls()
        out = cls(_number(block, "phi_plane", "sweep", d.phi_plane),
                  _number(block, "theta_min", "sweep", d.theta_min, minimum=-90.0),
                  _number(block, "theta_max", "sweep", d.theta_max),
                  _number(block, "step", "sweep", d.step, positive=True))
        if out.theta_max > 90.0:
            raise ConfigFieldError("sweep.theta_max", "must be <= 90")
        if out.theta_max < out.theta_min:
            raise ConfigFieldError("sweep.theta_max", "must be >= sweep.theta_min")
        return out

    def build(self) -> CutSpec:
        return CutSpec(self.phi_plane, self.theta_min, self.theta_max, self.step)


@dataclass(frozen=True)
class OutputBlock:
    directory: str = "."
    stem: Optional[str] = None
    formats: tuple[str, ...] = ("csv", "json")

    @classmethod
    def parse(cls, block: dict) -> "OutputBlock":
        _reject_unknown(block, [f.name for f in fields(cls)], "output")
        directory = block.get("directory", ".")
        if not isinstance(directory, str) or not directory:
            raise ConfigFieldError("output.directory", "must be a non-empty string")
        stem = block.get("stem")
        if stem is not None and (not isinstance(stem, str) or not stem or "/" in stem):
            raise ConfigFieldError("output.stem", "must be a plain file name")
        formats = block.get("formats", ["csv", "json"])
        if not isinstance(formats, list) or not set(formats) <= {"csv", "json"}:
            raise ConfigFieldError("output.formats", "must be a list drawn from 'csv', 'json'")
        return cls(directory, stem, tuple(formats))


LINK_DEFAULTS = {"p_tx": 0.0, "g_a": 12.0, "sigma_t": 1.0, "r1": 3.0, "r2": 3.0, "n0": -105.0}


@dataclass(frozen=True)
class LinkBlock:
    """Link inputs; ``sigma_f``/``sigma_b`` left unset are computed from the RIS."""

    p_tx: float = 0.0
    g_a: float = 12.0
    sigma_t: float = 1.0
    r1: float = 3.0
    r2: float = 3.0
    n0: float = -105.0
    sigma_f: Optional[float] = None
    sigma_b: Optional[float] = None

    @classmethod
    def parse(cls, block: dict) -> "LinkBlock":
        _reject_unknown(block, [f.name for f in fields(cls)], "link")
        out = {k: _number(block, k, "link", v, positive=k in ("r1", "r2"))
               for k, v in LINK_DEFAULTS.items()}
        for key in ("sigma_f", "sigma_b"):
            out[key] = _number(block, key, "link", None, allow_none=True)
        return cls(**out)

    def build(self, wavelength: float, sigma_f: float, sigma_b: float) -> LinkBudget:
        return LinkBudget(self.p_tx, self.g_a, sigma_f, sigma_b, self.sigma_t,
                          wavelength, self.r1, self.r2, self.n0)


TRAJECTORY_KINDS = ("static", "radial", "constant_velocity", "pendulum")


@dataclass(frozen=True)
class TrajectoryBlock:
    kind: str = "pendulum"
    sample_rate: float = 1000.0
    duration: float = 3.0
    rcs_dbsm: float = 0.0
    params: dict = field(default_factory=dict)

    @classmethod
    def parse(cls, block: dict) -> "TrajectoryBlock":
        kind = block.get("kind", "pendulum")
        if kind not in TRAJECTORY_KINDS:
            raise ConfigFieldError("trajectory.kind", f"must be one of {TRAJECTORY_KINDS}")
        params = {k: v for k, v in block.items()
                  if k not in ("kind", "sample_rate", "duration", "rcs_dbsm")}
        return cls(kind,
                   _number(block, "sample_rate", "trajectory", 1000.0, positive=True),
                   _number(block, "duration", "trajectory", 3.0, positive=True),
                   _number(block, "rcs_dbsm", "trajectory", 0.0),
                   params)

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "sample_rate": self.sample_rate,
             "duration": self.duration, "rcs_dbsm": self.rcs_dbsm}
        d.update(self.params)
        return d


@dataclass(frozen=True)
class StftBlock:
    window_duration: float = 0.1
    hop: Optional[float] = None
    dc_filter: bool = True
    clutter_amplitude: Optional[float] = None

    @classmethod
    def parse(cls, block: dict) -> "StftBlock":
        _reject_unknown(block, [f.name for f in fields(cls)], "stft")
        dc = block.get("dc_filter", True)
        if not isinstance(dc, bool):
            raise ConfigFieldError("stft.dc_filter", "must be true or false")
        return cls(_number(block, "window_duration", "stft", 0.1, positive=True),
                   _number(block, "hop", "stft", None, positive=True, allow_none=True),
                   dc,
                   _number(block, "clutter_amplitude", "stft", None, allow_none=True,
                           minimum=0.0))


@dataclass(frozen=True)
class RunConfig:
    geometry: Optional[GeometryBlock] = GeometryBlock()
    steering: SteeringBlock = SteeringBlock()
    sweep: SweepBlock = SweepBlock()
    output: OutputBlock = OutputBlock()
    model: str = "paper"
    link: Optional[LinkBlock] = None
    scene: Optional[dict] = None
    trajectory: Optional[TrajectoryBlock] = None
    stft: Optional[StftBlock] = None

    @classmethod
    def from_dict(cls, data: Any) -> "RunConfig":
        if not isinstance(data, dict):
            raise ConfigFieldError("<root>", "configuration must be a JSON object")
        _reject_unknown(data, [f.name for f in fields(cls)], "<root>")
        model = data.get("model", "paper")
        if model not in MODELS:
            raise ConfigFieldError("model", f"must be one of {MODELS}")
        geometry = GeometryBlock()
        if "geometry" in data:
            geometry = None if data["geometry"] is None else GeometryBlock.parse(_block(data, "geometry"))
        scene = _block(data, "scene")
        if scene is not None:
            parse_scene(scene)
        link, traj, stft = (_block(data, k) for k in ("link", "trajectory", "stft"))
        return cls(
            geometry=geometry,
            steering=SteeringBlock.parse(_block(data, "steering") or {}),
            sweep=SweepBlock.parse(_block(data, "sweep") or {}),
            output=OutputBlock.parse(_block(data, "output") or {}),
            model=model,
            link=None if link is None else LinkBlock.parse(link),
            scene=scene,
            trajectory=None if traj is None else TrajectoryBlock.parse(traj),
            stft=None if stft is None else StftBlock.parse(stft))

    def to_dict(self) -> dict:
        out = {"geometry": None if self.geometry is None else asdict(self.geometry),
               "steering": asdict(self.steering),
               "sweep": asdict(self.sweep),
               "output": {"directory": self.output.directory, "stem": self.output.stem,
                          "formats": list(self.output.formats)},
               "model": self.model}
        if self.link is not None:
            out["link"] = asdict(self.link)
        if self.scene is not None:
            out["scene"] = self.scene
        if self.trajectory is not None:
            out["trajectory"] = self.trajectory.to_dict()
        if self.stft is not None:
            out["stft"] = asdict(self.stft)
        return out

    def require_geometry(self) -> RisGeometry:
        if self.geometry is None:
            raise ConfigFieldError("geometry", "block is required for this command")
        return self.geometry.build()


def parse_scene(block: dict) -> Scene:
    """Default desk scene with the block's fields overriding it."""
    allowed = {f.name for f in fields(Scene)}
    _reject_unknown(block, allowed, "scene")
    try:
        base = default_scene().to_dict()
        base.update(block)
        return Scene.from_dict(base)
    except (TypeError, ValueError) as exc:
        raise ConfigFieldError("scene", str(exc)) from exc


def load_config(path) -> RunConfig:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ConfigFieldError("<root>", f"invalid JSON: {exc}") from exc
    return RunConfig.from_dict(data)
