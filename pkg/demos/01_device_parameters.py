"""Derived parameters of the reference device, built up in code.

A 180 x 20 nm YIG nanodisc sits 150 nm below a silicon cantilever whose
tip carries a rod magnet; an NV center sits 40 nm above the magnet.
This script walks the full parameter chain: exchange length and core
radius, gyrotropic frequency and linewidth, cantilever mode and
zero-point amplitude, field gradients, and the three coupling
strengths.
"""

import vortexmech as vm
from vortexmech.constants import TWO_PI

# material and geometry -----------------------------------------------------
yig = vm.yig()
disc = vm.DiscGeometry(radius=180e-9, thickness=20e-9)

cantilever = vm.CantileverGeometry(
    length=1.2e-6, width=0.2e-6, thickness=0.15e-6,
    youngs_modulus=169e9,    # silicon
    density=2330.0,
    quality_factor=1000.0)

# tune the tip load so the beam lands on 100 MHz, close to the vortex
m_tip = vm.tip_mass_for_frequency(cantilever, TWO_PI * 100e6)
cantilever = vm.CantileverGeometry(
    length=1.2e-6, width=0.2e-6, thickness=0.15e-6, youngs_modulus=169e9,
    density=2330.0, tip_extra_mass=m_tip, quality_factor=1000.0)
print(f"tip load for 100 MHz: {m_tip:.4g} kg")

# the magnet's material is unknown; anchor its moment to the known
# gradient 5e5 T/m at 160 nm instead
magnet = vm.DipoleMagnet.from_gradient_anchor(5e5, 160e-9)
placement = vm.Placement(d_vc=150e-9, d_nc=40e-9, y_vn=200e-9)

# intermediate length scales --------------------------------------------------
lam = vm.exchange_length(yig)
r_core = vm.vortex_core_radius(yig, disc.thickness)
print(f"exchange length  {lam*1e9:.2f} nm")
print(f"core radius      {r_core*1e9:.2f} nm")

# the full chain --------------------------------------------------------------
derived = vm.derive_parameters(yig, disc, cantilever, magnet, placement,
                               temperature=10e-3)
from vortexmech.output import params_report
print()
print(params_report(derived))

metrics = vm.usc_metrics(derived.g_vc, derived.omega_v, derived.gamma_v,
                         derived.kappa_c)
print(f"g/omega = {metrics.ratio:.3e}, C = {metrics.cooperativity:.1f}, "
      f"U = {metrics.coherence:.2f}, USC: {metrics.usc}")
