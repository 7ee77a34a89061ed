"""Persistent outputs: CSV series, JSON reports and run manifests.

Series are CSV with a header row, the abscissa in column one and 17
significant digits throughout, so reruns are byte-identical and downstream
fits reproduce exactly.  Reports and manifests are JSON with sorted keys.
"""

from __future__ import annotations

import json
import os
import time
from dataclasses import dataclass

import numpy as np

from . import __version__
from .spectral import SpectralField


def _fmt(x) -> str:
    if x is None or (isinstance(x, float) and np.isnan(x)):
        return "nan"
    return format(float(x), ".17g")


def write_series_columns(path: str, abscissa, columns: dict,
                         time_label: str = "t") -> None:
    """CSV with named value columns against a shared abscissa."""
    names = list(columns)
    rows = len(abscissa)
    for name in names:
        if len(columns[name]) != rows:
            raise ValueError(f"column {name!r} has {len(columns[name])} rows, "
                             f"expected {rows}")
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w") as fh:
        fh.write(",".join([time_label] + names) + "\n")
        for i in range(rows):
            fh.write(",".join([_fmt(abscissa[i])]
                              + [_fmt(columns[name][i]) for name in names]) + "\n")


def write_series(series, path: str) -> None:
    """One named decay series as a two-column CSV."""
    write_series_columns(path, series.times, {series.name: series.values})


def read_series(path: str) -> tuple[list, dict]:
    with open(path) as fh:
        header = fh.readline().strip().split(",")
        cols: dict = {name: [] for name in header}
        for line in fh:
            for name, value in zip(header, line.strip().split(",")):
                cols[name].append(float(value))
    abscissa = cols.pop(header[0])
    return abscissa, cols


def write_spectrum(path: str, fld: SpectralField) -> None:
    """Spectrum CSV: wavenumber, real and imaginary coefficient parts."""
    xi = fld.grid.wavenumbers
    write_series_columns(path, xi,
                         {"re": fld.coeffs.real, "im": fld.coeffs.imag},
                         time_label="xi")


def _to_jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_to_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return [_to_jsonable(v) for v in obj]
    if isinstance(obj, float) and np.isnan(obj):
        return None
    return obj


def write_report(report, path: str) -> None:
    payload = report.to_dict() if hasattr(report, "to_dict") else report
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w") as fh:
        json.dump(_to_jsonable(payload), fh, indent=2, sort_keys=True)
        fh.write("\n")


def read_report(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)


@dataclass
class RunManifest:
    """Everything needed to reproduce one run bit for bit, plus provenance."""

    tool_version: str
    config: dict
    smallness: dict
    halt: dict | None
    started_at: float
    finished_at: float
    cutoff_profile: str = "exp(-1/x)-mollified step, transition on 1<|xi|<2"

    @classmethod
    def create(cls, config: dict, smallness: dict, halt,
               started_at: float | None = None) -> "RunManifest":
        now = time.time()
        halt_dict = None
        if halt is not None:
            halt_dict = {"kind": halt.kind, "t": halt.t}
        return cls(tool_version=__version__, config=config,
                   smallness=smallness, halt=halt_dict,
                   started_at=now if started_at is None else started_at,
                   finished_at=now)

    def to_dict(self) -> dict:
        return {"tool_version": self.tool_version, "config": self.config,
                "smallness": self.smallness, "halt": self.halt,
                "started_at": self.started_at, "finished_at": self.finished_at,
                "cutoff_profile": self.cutoff_profile}


def write_manifest(manifest: RunManifest, path: str) -> None:
    write_report(manifest.to_dict(), path)
