"""Device parameters of the vortex / cantilever / NV hybrid system.

Everything here is a pure function from material, geometry and field
inputs to derived physical quantities: mode frequencies, linewidths,
zero-point amplitudes, field gradients, coupling strengths and the
ultrastrong-coupling figures of merit.

Units are SI throughout. All frequencies, rates and coupling strengths
are *angular* (rad/s); divide by 2*pi to report in Hz. The stored
gyromagnetic ratio ``GAMMA_G`` is angular as well; formulas that need
the linear ratio (28 GHz/T) divide by 2*pi explicitly and say so.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .constants import GAMMA_G, G_S, HBAR, K_B, MU0, MU_B, TWO_PI, XI_DISC
from .errors import GeometryWarning, ValidationError

# validity limits of the thin-disc / slender-beam formulas
MAX_ASPECT_RATIO = 0.2
MAX_WIDTH_TO_LENGTH = 0.5


# ---------------------------------------------------------------------------
# domain types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Material:
    """Soft ferromagnet hosting the vortex.

    Attributes
    ----------
    name : str
        Free-form label ("YIG", "CoFe", ...).
    Ms : float
        Saturation magnetization (A/m).
    alpha_llg : float
        Gilbert damping parameter (dimensionless), in (0, 1).
    A_ex : float
        Exchange stiffness (J/m).
    """

    name: str
    Ms: float
    alpha_llg: float
    A_ex: float

    def __post_init__(self):
        if self.Ms <= 0:
            raise ValidationError(f"Ms must be > 0, got {self.Ms}")
        if not 0 < self.alpha_llg < 1:
            raise ValidationError(
                f"alpha_llg must be in (0, 1), got {self.alpha_llg}")
        if self.A_ex <= 0:
            raise ValidationError(f"A_ex must be > 0, got {self.A_ex}")


def yig() -> Material:
    """YIG with mu0*Ms = 0.18 T, alpha = 5e-5, A = 1.9 pJ/m."""
    return Material(name="YIG", Ms=0.18 / MU0, alpha_llg=5e-5, A_ex=1.9e-12)


def cofe() -> Material:
    """CoFe with mu0*Ms = 2.4 T, alpha = 5e-4, A = 26 pJ/m."""
    return Material(name="CoFe", Ms=2.4 / MU0, alpha_llg=5e-4, A_ex=26e-12)


@dataclass(frozen=True)
class DiscGeometry:
    """Ferromagnetic nanodisc hosting the vortex.

    ``polarity`` (core up/down) and ``circulation`` (in-plane winding
    sense) are restricted to +-1. The analytic gyrotropic formulas hold
    in the thin-disc regime beta = t/r << 1; a GeometryWarning is issued
    above beta = 0.2.
    """

    radius: float       # m
    thickness: float    # m
    polarity: int = +1
    circulation: int = +1

    def __post_init__(self):
        if not 0 < self.thickness < self.radius:
            raise ValidationError(
                f"need 0 < thickness < radius, got t={self.thickness}, "
                f"r={self.radius}")
        if self.polarity not in (+1, -1):
            raise ValidationError(f"polarity must be +-1, got {self.polarity}")
        if self.circulation not in (+1, -1):
            raise ValidationError(
                f"circulation must be +-1, got {self.circulation}")
        if self.aspect_ratio > MAX_ASPECT_RATIO:
            warnings.warn(
                f"aspect ratio beta = {self.aspect_ratio:.3g} exceeds "
                f"{MAX_ASPECT_RATIO}; thin-disc formulas lose accuracy",
                GeometryWarning, stacklevel=2)

    @property
    def aspect_ratio(self) -> float:
        return self.thickness / self.radius

    @property
    def volume(self) -> float:
        """Disc volume V = pi r^2 t (m^3)."""
        return math.pi * self.radius**2 * self.thickness


@dataclass(frozen=True)
class CantileverGeometry:
    """Singly clamped beam with an optional point mass at the free end."""

    length: float           # m
    width: float            # m
    thickness: float        # m
    youngs_modulus: float   # Pa
    density: float          # kg/m^3
    tip_extra_mass: float = 0.0   # kg, magnet plus supporting paddle
    quality_factor: float = 1000.0

    def __post_init__(self):
        for field in ("length", "width", "thickness", "youngs_modulus",
                      "density", "quality_factor"):
            if getattr(self, field) <= 0:
                raise ValidationError(f"{field} must be > 0")
        if self.tip_extra_mass < 0:
            raise ValidationError("tip_extra_mass must be >= 0")
        if self.thickness > self.width:
            warnings.warn(
                "cantilever thickness exceeds width; flexural formula "
                "assumes t_c <= w_c", GeometryWarning, stacklevel=2)
        if self.width / self.length > MAX_WIDTH_TO_LENGTH:
            warnings.warn(
                f"w_c/l_c = {self.width / self.length:.3g} is not a slender "
                "beam; flexural formula loses accuracy",
                GeometryWarning, stacklevel=2)

    @property
    def beam_mass(self) -> float:
        """Effective modal mass of the bare beam, 0.24 rho l w t (kg)."""
        return 0.24 * self.density * self.length * self.width * self.thickness


@dataclass(frozen=True)
class DipoleMagnet:
    """Tip magnet treated as a point dipole.

    Construct either from the moment directly or from rod dimensions and
    magnetization via :meth:`from_dimensions`.
    """

    moment: float                                   # A m^2
    orientation: tuple[float, float, float] = (0.0, 0.0, 1.0)

    def __post_init__(self):
        if self.moment <= 0:
            raise ValidationError(f"moment must be > 0, got {self.moment}")
        norm = math.sqrt(sum(c * c for c in self.orientation))
        if abs(norm - 1.0) > 1e-9:
            raise ValidationError(
                f"orientation must be a unit vector, |n| = {norm}")

    @classmethod
    def from_dimensions(cls, length, width, thickness, magnetization,
                        orientation=(0.0, 0.0, 1.0)) -> "DipoleMagnet":
        """Moment = M * l * w * t of a uniformly magnetized rod."""
        if min(length, width, thickness) <= 0 or magnetization <= 0:
            raise ValidationError("magnet dimensions and magnetization "
                                  "must be > 0")
        return cls(moment=magnetization * length * width * thickness,
                   orientation=orientation)

    @classmethod
    def from_gradient_anchor(cls, gradient, distance,
                             orientation=(0.0, 0.0, 1.0)) -> "DipoleMagnet":
        """Back-solve the moment from a known gradient at a known distance.

        Inverts G = 3 mu0 |mu_m| / (4 pi d^4). Used when only the field
        gradient produced by the magnet is known, not its material.
        """
        if gradient <= 0 or distance <= 0:
            raise ValidationError("gradient and distance must be > 0")
        moment = gradient * 4.0 * math.pi * distance**4 / (3.0 * MU0)
        return cls(moment=moment, orientation=orientation)


@dataclass(frozen=True)
class Placement:
    """Distances between the subsystems.

    d_vc : magnet to disc center, d_nc : magnet to NV center,
    y_vn : NV center to vortex core. All in meters.
    """

    d_vc: float
    d_nc: float
    y_vn: float

    def __post_init__(self):
        for field in ("d_vc", "d_nc", "y_vn"):
            if getattr(self, field) <= 0:
                raise ValidationError(f"{field} must be > 0")


@dataclass(frozen=True)
class DerivedParams:
    """Every derived quantity of one device configuration (SI, angular)."""

    omega_v: float      # vortex gyrotropic frequency (rad/s)
    omega_c: float      # cantilever fundamental frequency (rad/s)
    gamma_v: float      # vortex linewidth (rad/s)
    kappa_c: float      # cantilever decay rate omega_c/Q (rad/s)
    M_eff: float        # effective cantilever mass (kg)
    a0: float           # zero-point amplitude (m)
    G_v: float          # gradient at the disc center (T/m)
    G_nc: float         # gradient at the NV position (T/m)
    B_vc: float         # zero-point field at the disc center (T)
    g_vc: float         # vortex-phonon coupling (rad/s)
    g_nc: float         # NV-phonon coupling (rad/s)
    g_vn: float         # direct vortex-NV coupling (rad/s)
    nbar_v: float       # thermal occupation at omega_v
    nbar_c: float       # thermal occupation at omega_c

    def __post_init__(self):
        positive = ("omega_v", "omega_c", "gamma_v", "kappa_c", "M_eff", "a0")
        for field in positive:
            if getattr(self, field) <= 0:
                raise ValidationError(f"{field} must be > 0")
        for field in ("nbar_v", "nbar_c"):
            if getattr(self, field) < 0:
                raise ValidationError(f"{field} must be >= 0")


@dataclass(frozen=True)
class UscMetrics:
    """Coupling-regime figures of merit."""

    ratio: float           # g / omega
    cooperativity: float   # C = g^2 / (gamma kappa)
    coherence: float       # U = sqrt(C g/omega)
    usc: bool              # ratio >= 0.1


USC_THRESHOLD = 0.1


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def exchange_length(mat: Material) -> float:
    """Exchange length lambda_L = sqrt(2 A / (mu0 Ms^2)) in meters.

    Sets the scale below which exchange dominates magnetostatics; the
    vortex core radius is a few lambda_L.
    """
    return math.sqrt(2.0 * mat.A_ex / (MU0 * mat.Ms**2))


def vortex_core_radius(mat: Material, thickness: float) -> float:
    """Vortex core radius r_v ~ 1.58 lambda_L (t / lambda_L)^(1/3) in meters."""
    if thickness <= 0:
        raise ValidationError("thickness must be > 0")
    lam = exchange_length(mat)
    return 1.58 * lam * (thickness / lam) ** (1.0 / 3.0)


def gyrotropic_frequency(mat: Material, disc: DiscGeometry) -> float:
    """Gyrotropic eigenfrequency of the vortex core, angular (rad/s).

    omega_v = (10/9) gamma_g mu0 Ms beta / (2 pi) with beta = t/r and
    gamma_g the angular gyromagnetic ratio; the result is linear in both
    beta and Ms. Valid for thin discs (beta <= 0.2, warned by
    DiscGeometry above that).
    """
    beta = disc.aspect_ratio
    return (10.0 / 9.0) * GAMMA_G * MU0 * mat.Ms * beta / TWO_PI


def vortex_linewidth(mat: Material, disc: DiscGeometry,
                     omega_v: float) -> float:
    """Gyrotropic linewidth, angular (rad/s).

    gamma = 2 alpha_llg [1 + ln(r/r_v)/2] omega_v

    The bracket is the logarithmic enhancement over plain Gilbert
    damping; scaling by 2 omega_v makes the expression dimensionally a
    rate and reproduces the ~20 kHz linewidth of a 180 nm x 20 nm YIG
    disc at its ~100 MHz gyration frequency.

    Raises
    ------
    ValidationError
        If r <= r_v: the disc is too small to host a vortex and the
        logarithm changes sign.
    """
    r_v = vortex_core_radius(mat, disc.thickness)
    if disc.radius <= r_v:
        raise ValidationError(
            f"disc radius {disc.radius:.3g} m does not exceed the core "
            f"radius {r_v:.3g} m; no vortex fits this geometry")
    return 2.0 * mat.alpha_llg * (1.0 + math.log(disc.radius / r_v) / 2.0) \
        * omega_v


def cantilever_frequency(cant: CantileverGeometry) -> float:
    """Fundamental flexural frequency of the loaded beam, angular (rad/s).

    omega_c / 2 pi = 0.56 sqrt(E / (12 rho (1+c))) t_c / l_c^2,
    c = m_tip / (0.24 rho l_c w_c t_c)

    The tip load enters through c and always lowers the frequency.
    """
    c = cant.tip_extra_mass / cant.beam_mass
    f_hz = 0.56 * math.sqrt(
        cant.youngs_modulus / (12.0 * cant.density * (1.0 + c))
    ) * cant.thickness / cant.length**2
    return TWO_PI * f_hz


def tip_mass_for_frequency(cant: CantileverGeometry,
                           omega_c: float) -> float:
    """Tip load (kg) that tunes the beam to a target angular frequency.

    Inverts the flexural formula; the target must lie below the bare
    beam frequency since mass only lowers it.
    """
    bare = cantilever_frequency(
        CantileverGeometry(cant.length, cant.width, cant.thickness,
                           cant.youngs_modulus, cant.density, 0.0,
                           cant.quality_factor))
    if not 0 < omega_c <= bare:
        raise ValidationError(
            f"target frequency must be in (0, {bare:.4g}] rad/s")
    c = (bare / omega_c) ** 2 - 1.0
    return c * cant.beam_mass


def effective_mass_and_zero_point(cant: CantileverGeometry,
                                  omega_c: float) -> tuple[float, float]:
    """Effective mass M = 0.24 rho l w t + m_tip and a0 = sqrt(hbar/2M omega_c).

    Returns (M in kg, a0 in m). a0 is the rms position fluctuation of
    the mechanical ground state.
    """
    if omega_c <= 0:
        raise ValidationError("omega_c must be > 0")
    M = cant.beam_mass + cant.tip_extra_mass
    a0 = math.sqrt(HBAR / (2.0 * M * omega_c))
    return M, a0


def dipole_gradient(mag: DipoleMagnet, distance: float) -> float:
    """On-axis field gradient G = 3 mu0 |mu_m| / (4 pi d^4) in T/m.

    The steep d^-4 falloff is what makes the magnet-to-sample distance
    the main tuning knob for the coupling.
    """
    if distance <= 0:
        raise ValidationError("distance must be > 0")
    return 3.0 * MU0 * mag.moment / (4.0 * math.pi * distance**4)


def dipole_field_map(mag: DipoleMagnet, points: np.ndarray) -> np.ndarray:
    """Point-dipole field B(r) at an array of positions.

    Parameters
    ----------
    points : ndarray, shape (N, 3)
        Sample positions (m) relative to the dipole.

    Returns
    -------
    ndarray, shape (N, 3)
        Field vectors (T): B = mu0/(4 pi) [3 (m.rhat) rhat - m] / r^3.

    Raises
    ------
    ValidationError
        If any point coincides with the dipole location.
    """
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    if pts.ndim != 2 or pts.shape[1] != 3:
        raise ValidationError("points must have shape (N, 3)")
    r = np.linalg.norm(pts, axis=1)
    if np.any(r == 0.0):
        raise ValidationError("field requested at the dipole location")
    m_vec = mag.moment * np.asarray(mag.orientation, dtype=float)
    rhat = pts / r[:, None]
    m_dot_rhat = rhat @ m_vec
    field = (3.0 * m_dot_rhat[:, None] * rhat - m_vec) \
        * (MU0 / (4.0 * math.pi)) / r[:, None] ** 3
    return field


def coupling_vc(mat: Material, disc: DiscGeometry, B_vc: float) -> float:
    """Vortex-gyration / phonon coupling strength, angular (rad/s).

    g_vc = (B_vc / 2) sqrt(V X / hbar),  X = xi^2 Ms gamma_g / (2 pi)

    B_vc = G_v a0 is the zero-point field at the disc center. The
    gamma_g/(2 pi) in X makes the linear ratio (28 GHz/T) the value that
    enters numerically. g_vc scales linearly with B_vc and with the
    square root of the disc volume (spin number).
    """
    if B_vc < 0:
        raise ValidationError("B_vc must be >= 0")
    X = XI_DISC**2 * mat.Ms * GAMMA_G / TWO_PI
    return (B_vc / 2.0) * math.sqrt(disc.volume * X / HBAR)


def coupling_nc(G_nc: float, a0: float) -> float:
    """NV / phonon coupling strength g_nc = g_s mu_B G_nc a0 / hbar (rad/s).

    Zeeman shift of the spin per zero-point displacement of the magnet;
    linear in both the gradient and a0.
    """
    if G_nc < 0 or a0 < 0:
        raise ValidationError("G_nc and a0 must be >= 0")
    return G_S * MU_B * G_nc * a0 / HBAR


def zero_point_magnetization(mat: Material, disc: DiscGeometry) -> float:
    """Zero-point magnetization m_v = sqrt(hbar (gamma_g/2pi) Ms / (2V)), A/m.

    The linear gyromagnetic ratio enters here; this normalization
    reproduces the ~15 kHz direct vortex-NV coupling of the reference
    geometry at 200 nm.
    """
    return math.sqrt(HBAR * (GAMMA_G / TWO_PI) * mat.Ms / (2.0 * disc.volume))


def coupling_vn(mat: Material, disc: DiscGeometry, y: float) -> float:
    """Direct vortex / NV coupling strength, angular (rad/s).

    hbar g_vn = mu m_v V / y^3 with mu = mu0 mu_B g_s / (2 pi): the NV
    Zeeman energy in the y^-3 dipole-like stray field of the zero-point
    vortex magnetization. Upper bound; it assumes the whole disc
    magnetized along one axis.
    """
    if y <= 0:
        raise ValidationError("y must be > 0")
    mu = MU0 * MU_B * G_S / TWO_PI
    m_v = zero_point_magnetization(mat, disc)
    return mu * m_v * disc.volume / (y**3 * HBAR)


def thermal_occupation(omega: float, temperature: float) -> float:
    """Bose-Einstein occupation n = 1 / (exp(hbar omega / kB T) - 1).

    omega is angular (rad/s); T = 0 returns exactly 0.
    """
    if omega <= 0:
        raise ValidationError("omega must be > 0")
    if temperature < 0:
        raise ValidationError("temperature must be >= 0")
    if temperature == 0.0:
        return 0.0
    return 1.0 / math.expm1(HBAR * omega / (K_B * temperature))


def usc_metrics(g: float, omega: float, gamma: float,
                kappa: float) -> UscMetrics:
    """Coupling-regime metrics: g/omega, C = g^2/(gamma kappa), U = sqrt(C g/omega).

    The USC flag trips at g/omega >= 0.1. U is the geometric mean of the
    cooperativity and the normalized coupling; U >> 1 marks coherent
    access to ultrastrong-coupling physics.
    """
    if omega <= 0 or gamma <= 0 or kappa <= 0:
        raise ValidationError("omega, gamma, kappa must be > 0")
    if g < 0:
        raise ValidationError("g must be >= 0")
    ratio = g / omega
    coop = g**2 / (gamma * kappa)
    return UscMetrics(ratio=ratio, cooperativity=coop,
                      coherence=math.sqrt(coop * ratio),
                      usc=ratio >= USC_THRESHOLD)


def derive_parameters(mat: Material, disc: DiscGeometry,
                      cant: CantileverGeometry, mag: DipoleMagnet,
                      place: Placement, *, temperature: float = 0.01,
                      a0_override: float | None = None) -> DerivedParams:
    """Evaluate the full parameter chain for one device configuration.

    ``a0_override`` replaces the computed zero-point amplitude (the
    reference value 0.5e-13 m is commonly injected this way); it feeds
    B_vc, g_vc and g_nc but not the reported effective mass.
    """
    omega_v = gyrotropic_frequency(mat, disc)
    gamma_v = vortex_linewidth(mat, disc, omega_v)
    omega_c = cantilever_frequency(cant)
    kappa_c = omega_c / cant.quality_factor
    M_eff, a0_computed = effective_mass_and_zero_point(cant, omega_c)
    a0 = a0_computed if a0_override is None else a0_override
    G_v = dipole_gradient(mag, place.d_vc)
    G_nc = dipole_gradient(mag, place.d_nc)
    B_vc = G_v * a0
    return DerivedParams(
        omega_v=omega_v, omega_c=omega_c, gamma_v=gamma_v, kappa_c=kappa_c,
        M_eff=M_eff, a0=a0, G_v=G_v, G_nc=G_nc, B_vc=B_vc,
        g_vc=coupling_vc(mat, disc, B_vc),
        g_nc=coupling_nc(G_nc, a0),
        g_vn=coupling_vn(mat, disc, place.y_vn),
        nbar_v=thermal_occupation(omega_v, temperature),
        nbar_c=thermal_occupation(omega_c, temperature),
    )
