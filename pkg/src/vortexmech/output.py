"""CSV, SVG and provenance-sidecar writers.

CSV dialect: comma-separated, UTF-8, "\\n" newlines, ``#``-prefixed
provenance header lines, numbers at 12 significant digits. Identical
inputs produce byte-identical files.

SVG plots are rendered with matplotlib (Agg backend, fonts embedded as
paths, so the files are self-contained). Axes carry unit suffixes.
"""

from __future__ import annotations

import json
from pathlib import Path

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .constants import TWO_PI  # noqa: E402
from .experiments import SweepGrid  # noqa: E402
from .lindblad import TimeSeries  # noqa: E402
from .params import DerivedParams  # noqa: E402
from .thiele import SpectrumResult  # noqa: E402

plt.rcParams["svg.fonttype"] = "path"
plt.rcParams["svg.hashsalt"] = "vortexmech"

_FMT = "{:.12g}"


def _num(x: float) -> str:
    return _FMT.format(float(x))


def write_csv(path, header: list[str], columns: list[np.ndarray],
              provenance_lines: list[str] | None = None) -> None:
    columns = [np.asarray(c) for c in columns]
    n = columns[0].size
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for line in provenance_lines or []:
            fh.write(f"# {line}\n")
        fh.write(",".join(header) + "\n")
        for i in range(n):
            fh.write(",".join(_num(c[i]) for c in columns) + "\n")


def write_provenance(path, record: dict) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(record, fh, indent=2, sort_keys=True)
        fh.write("\n")


def timeseries_to_csv(path, series: TimeSeries,
                      provenance_lines: list[str] | None = None) -> None:
    """First column time (s), then one column per named track."""
    names = list(series.tracks)
    write_csv(path, ["time_s"] + names,
              [series.times] + [series.tracks[n] for n in names],
              provenance_lines)


def trajectory_to_csv(path, traj,
                      provenance_lines: list[str] | None = None) -> None:
    """Core-position trajectory: time (s), x (m), y (m)."""
    write_csv(path, ["time_s", "x_m", "y_m"], [traj.times, traj.x, traj.y],
              provenance_lines)


def spectrum_to_csv(path, spec: SpectrumResult,
                    provenance_lines: list[str] | None = None) -> None:
    lines = list(provenance_lines or [])
    for pk in spec.peaks:
        lines.append(f"peak: {_num(pk.frequency)} Hz height {_num(pk.height)}")
    write_csv(path, ["frequency_Hz", "power"],
              [spec.frequencies, spec.power], lines)


def grid_to_csv(path, grid: SweepGrid,
                provenance_lines: list[str] | None = None) -> None:
    """Long format: one row per grid point in row-major index order."""
    axes = grid.axes
    mesh = np.meshgrid(*[ax.samples for ax in axes], indexing="ij")
    header = [f"{ax.name}_{ax.unit.replace('/', 'per')}" for ax in axes]
    columns = [m.ravel() for m in mesh]
    for name, arr in grid.values.items():
        header.append(f"{name}_{grid.units[name].replace('/', 'per')}"
                      if grid.units.get(name, "1") != "1" else name)
        columns.append(arr.ravel())
    for name, arr in grid.masks.items():
        header.append(f"mask_{name}")
        columns.append(arr.ravel().astype(float))
    write_csv(path, header, columns, provenance_lines)


def params_report(derived: DerivedParams) -> str:
    """Human-readable derived-parameter report."""
    rows = [
        ("vortex frequency f_v", derived.omega_v / TWO_PI, "Hz"),
        ("cantilever frequency f_c", derived.omega_c / TWO_PI, "Hz"),
        ("vortex linewidth gamma/2pi", derived.gamma_v / TWO_PI, "Hz"),
        ("cantilever decay kappa_1/2pi", derived.kappa_c / TWO_PI, "Hz"),
        ("effective mass M", derived.M_eff, "kg"),
        ("zero-point amplitude a0", derived.a0, "m"),
        ("gradient at disc G_v", derived.G_v, "T/m"),
        ("gradient at NV G_nc", derived.G_nc, "T/m"),
        ("zero-point field B_vc", derived.B_vc, "T"),
        ("coupling g_vc/2pi", derived.g_vc / TWO_PI, "Hz"),
        ("coupling g_nc/2pi", derived.g_nc / TWO_PI, "Hz"),
        ("coupling g_vn/2pi", derived.g_vn / TWO_PI, "Hz"),
        ("thermal occupation nbar_v", derived.nbar_v, ""),
        ("thermal occupation nbar_c", derived.nbar_c, ""),
    ]
    width = max(len(r[0]) for r in rows)
    return "\n".join(f"{name:<{width}}  {_num(value)} {unit}".rstrip()
                     for name, value, unit in rows) + "\n"


def params_to_csv(path, derived: DerivedParams,
                  provenance_lines: list[str] | None = None) -> None:
    names = ["omega_v", "omega_c", "gamma_v", "kappa_c", "M_eff", "a0",
             "G_v", "G_nc", "B_vc", "g_vc", "g_nc", "g_vn",
             "nbar_v", "nbar_c"]
    units = {"omega_v": "rad/s", "omega_c": "rad/s", "gamma_v": "rad/s",
             "kappa_c": "rad/s", "M_eff": "kg", "a0": "m", "G_v": "T/m",
             "G_nc": "T/m", "B_vc": "T", "g_vc": "rad/s", "g_nc": "rad/s",
             "g_vn": "rad/s", "nbar_v": "1", "nbar_c": "1"}
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for line in provenance_lines or []:
            fh.write(f"# {line}\n")
        fh.write("quantity,value,unit\n")
        for name in names:
            fh.write(f"{name},{_num(getattr(derived, name))},{units[name]}\n")


# ---------------------------------------------------------------------------
# SVG rendering
# ---------------------------------------------------------------------------

def timeseries_to_svg(path, series: TimeSeries, *, ylabel: str = "occupation",
                      title: str = "", time_unit: str = "us") -> None:
    scale = {"s": 1.0, "ms": 1e3, "us": 1e6, "ns": 1e9}[time_unit]
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for name, values in series.tracks.items():
        ax.plot(series.times * scale, values, label=name)
    ax.set_xlabel(f"time ({time_unit})")
    ax.set_ylabel(ylabel)
    if title:
        ax.set_title(title)
    ax.legend(loc="best")
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)


def spectrum_to_svg(path, spec: SpectrumResult, *, title: str = "",
                    max_frequency: float | None = None) -> None:
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    f = spec.frequencies
    p = spec.power
    if max_frequency is not None:
        keep = f <= max_frequency
        f, p = f[keep], p[keep]
    ax.plot(f / 1e6, p)
    for pk in spec.peaks:
        ax.axvline(pk.frequency / 1e6, color="tab:red", ls="--", lw=0.8)
    ax.set_xlabel("frequency (MHz)")
    ax.set_ylabel("power (arb.)")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)


def grid_to_svg(path, grid: SweepGrid, value_name: str, *,
                log_value: bool = False, contours: dict[float, str] | None = None,
                title: str = "") -> None:
    """Heatmap (2D grid) or line plot (1D grid) of one value field.

    ``contours`` maps threshold levels to colors; they are overlaid as
    dashed curves on heatmaps.
    """
    fig, ax = plt.subplots(figsize=(6.0, 4.5))
    if len(grid.axes) == 1:
        ax0 = grid.axes[0]
        ax.plot(ax0.samples, grid.values[value_name])
        ax.set_xlabel(f"{ax0.name} ({ax0.unit})")
        ax.set_ylabel(f"{value_name} ({grid.units.get(value_name, '1')})")
    else:
        ax0, ax1 = grid.axes
        data = grid.values[value_name].T  # rows = axis 1
        if log_value:
            data = np.log10(np.maximum(data, 1e-300))
        mesh = ax.pcolormesh(ax0.samples, ax1.samples, data, shading="auto")
        label = f"{value_name} ({grid.units.get(value_name, '1')})"
        fig.colorbar(mesh, ax=ax, label=("log10 " + label) if log_value else label)
        for level, color in (contours or {}).items():
            shown = np.log10(level) if log_value else level
            ax.contour(ax0.samples, ax1.samples, data, levels=[shown],
                       colors=color, linestyles="--")
        ax.set_xlabel(f"{ax0.name} ({ax0.unit})")
        ax.set_ylabel(f"{ax1.name} ({ax1.unit})")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)


def ensure_outdir(path) -> Path:
    out = Path(path)
    out.mkdir(parents=True, exist_ok=True)
    return out
