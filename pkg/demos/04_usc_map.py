"""Ultrastrong-coupling maps over disc radius and field gradient.

Two figures of merit on the same (r, G) grid: the normalized coupling
g_vc/omega_v, whose 0.1 contour marks the onset of the ultrastrong
regime, and the coherence measure U = sqrt(C g/omega) with its U = 10
contour. Gradients beyond ~1e7 T/m push the reference disc across the
boundary.
"""

from pathlib import Path

import numpy as np

import vortexmech as vm
from vortexmech.output import ensure_outdir, grid_to_csv, grid_to_svg

out = ensure_outdir(Path(__file__).parent / "output")

grid = vm.sweep_usc(vm.yig(), thickness=15e-9, a0=0.5e-13,
                    quality_factor=1000.0,
                    r_values=np.linspace(100e-9, 600e-9, 96),
                    G_values=np.geomspace(1e5, 1e9, 96))

r = grid.axes[0].samples
i180 = int(np.argmin(np.abs(r - 180e-9)))
row = grid.masks["usc_ratio"][i180]
G_onset = grid.axes[1].samples[np.argmax(row)] if row.any() else float("nan")
print(f"USC boundary at r = 180 nm: G ~ {G_onset:.3g} T/m")
print(f"grid fraction in USC: {grid.masks['usc_ratio'].mean():.1%}, "
      f"U >= 10: {grid.masks['usc_U'].mean():.1%}")

grid_to_csv(out / "usc_map.csv", grid)
grid_to_svg(out / "usc_map_ratio.svg", grid, "g_over_omega", log_value=True,
            contours={0.1: "white"},
            title="g_vc/omega_v (dashed: USC boundary)")
grid_to_svg(out / "usc_map_U.svg", grid, "U", log_value=True,
            contours={10.0: "white"}, title="coherence measure U (dashed: 10)")
print(f"wrote usc_map.csv and SVGs to {out}")
