"""CSV and JSON writers for patterns, metrics, detection reports and spectrograms.

CSV files use ``.`` decimals, ``\\n`` line endings and a header row.  Floats
are written with ``repr`` so identical inputs give byte-identical files.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .link_budget import DetectionReport
from .microdoppler import Spectrogram
from .rcs import PatternCut
from .scattering import FieldCut

PATTERN_COLUMNS = ("theta_deg", "e_theta_re", "e_theta_im", "e_phi_re", "e_phi_im",
                   "magnitude", "rcs_dbsm")


def _cell(value):
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if value is None:
        return ""
    return str(value)


def write_csv(path, header: Sequence[str], rows: Iterable[Sequence]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_cell(v) for v in row])
    return path


def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, float) and not np.isfinite(obj):
        return None
    return obj


def write_json(path, data) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(_plain(data), indent=2, sort_keys=True) + "\n")
    return path


def write_pattern_csv(path, field: FieldCut, cut: PatternCut) -> Path:
    rows = zip(field.thetas_deg, field.e_theta.real, field.e_theta.imag,
               field.e_phi.real, field.e_phi.imag, field.magnitude, cut.rcs_dbsm)
    return write_csv(path, PATTERN_COLUMNS, rows)


def write_rcs_csv(path, cut: PatternCut) -> Path:
    return write_csv(path, ("theta_deg", "rcs_dbsm"), zip(cut.thetas, cut.rcs_dbsm))


DETECTION_COLUMNS = ("index", "set", "y", "z", "snr_db", "snr_direct_db", "snr_ris_db",
                     "detected")


def write_detection(path_stem, report: DetectionReport,
                    formats=("csv", "json")) -> list[Path]:
    """Per-set counts plus the per-target table (JSON) and the table alone (CSV)."""
    stem = Path(path_stem)
    written = []
    if "json" in formats:
        written.append(write_json(stem.with_suffix(".json"), report.to_dict()))
    if "csv" in formats:
        written.append(write_csv(stem.with_suffix(".csv"), DETECTION_COLUMNS,
                                 ([r[h] for h in DETECTION_COLUMNS] for r in report.rows)))
    return written


def write_spectrogram(path_stem, spec: Spectrogram, formats=("csv", "json")) -> list[Path]:
    """Long-format CSV ``(t, f, dB)`` plus a JSON metadata sidecar."""
    stem = Path(path_stem)
    written = []
    if "csv" in formats:
        t, f = np.meshgrid(spec.times, spec.frequencies, indexing="ij")
        written.append(write_csv(stem.with_suffix(".csv"), ("t", "f", "db"),
                                 zip(t.ravel(), f.ravel(), spec.magnitudes_db.ravel())))
    if "json" in formats:
        written.append(write_json(stem.with_suffix(".json"), spec.metadata()))
    return written


def read_csv(path, numeric: bool = True) -> tuple[list[str], np.ndarray]:
    """Header and body of a CSV written by this module.

    With ``numeric`` false the body is returned as strings.
    """
    with Path(path).open(newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        rows = list(reader)
    if numeric:
        return header, np.array([[float(v) for v in row] for row in rows])
    return header, np.array(rows, dtype=str)
