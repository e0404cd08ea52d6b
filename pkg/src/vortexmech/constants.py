"""Physical constants used throughout the package.

Every quantity is SI. Frequencies and rates are angular (rad/s) unless a
name carries an explicit ``_hz`` suffix; reported values divide by 2*pi.

``GAMMA_G`` is stored as an *angular* gyromagnetic ratio,
2*pi * 28 GHz/T. Several vortex formulas take the linear ratio
(GAMMA_G / 2*pi); each call site documents which convention enters.
"""

import math

import scipy.constants as _sc

HBAR = _sc.hbar                                     # J s
MU0 = _sc.mu_0                                      # N A^-2
MU_B = _sc.physical_constants["Bohr magneton"][0]   # J/T
K_B = _sc.k                                         # J/K

# gyromagnetic ratio of the magnetization precession, angular (rad s^-1 T^-1)
GAMMA_G = 2.0 * math.pi * 28.0e9

# geometrical factor for the linear response of a vortex core in a disc
XI_DISC = 2.0 / 3.0

# Lande factor of the NV electron spin
G_S = 2.0

# zero-field splitting of the NV ground-state triplet (rad/s)
D_NV = 2.0 * math.pi * 2.87e9

TWO_PI = 2.0 * math.pi
