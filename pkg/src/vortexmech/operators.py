"""Dense operators on composite truncated Hilbert spaces.

Bosonic modes live in Fock spaces truncated at ``n_max`` quanta
(dimension n_max + 1); the NV enters as an effective two-level system.
The composite ordering used by every builder is fixed:
(cantilever, vortex, spin). Matrices are plain complex ndarrays wrapped
in :class:`QOperator` together with their :class:`SpaceSignature`, so a
mismatched tensor product fails loudly instead of silently.

Everything is (treated as) immutable after construction and safe to
share between workers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import D_NV, G_S, HBAR, MU_B
from .errors import DimensionMismatchError, ValidationError

DEFAULT_N_MAX = 5


@dataclass(frozen=True)
class Subsystem:
    """One tensor factor: kind 'boson' or 'two_level', plus a label."""

    kind: str
    dim: int
    label: str = ""

    def __post_init__(self):
        if self.kind not in ("boson", "two_level"):
            raise ValidationError(f"unknown subsystem kind {self.kind!r}")
        if self.kind == "two_level" and self.dim != 2:
            raise ValidationError("two_level subsystems have dim = 2")
        if self.dim < 2:
            raise ValidationError("subsystem dim must be >= 2")


@dataclass(frozen=True)
class SpaceSignature:
    """Ordered tuple of subsystems defining a composite Hilbert space."""

    subsystems: tuple[Subsystem, ...]

    def __post_init__(self):
        if not self.subsystems:
            raise ValidationError("signature must contain >= 1 subsystem")

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(s.dim for s in self.subsystems)

    @property
    def total_dim(self) -> int:
        return math.prod(self.dims)

    def __len__(self) -> int:
        return len(self.subsystems)


def boson_space(n_max: int, label: str = "") -> SpaceSignature:
    return SpaceSignature((Subsystem("boson", n_max + 1, label),))


def two_level_space(label: str = "") -> SpaceSignature:
    return SpaceSignature((Subsystem("two_level", 2, label),))


def compose(*sigs: SpaceSignature) -> SpaceSignature:
    return SpaceSignature(tuple(s for sig in sigs for s in sig.subsystems))


def cantilever_vortex_space(n_max: int = DEFAULT_N_MAX) -> SpaceSignature:
    """(cantilever, vortex) bipartite space."""
    return compose(boson_space(n_max, "cantilever"), boson_space(n_max, "vortex"))


def tripartite_space(n_max: int = DEFAULT_N_MAX) -> SpaceSignature:
    """(cantilever, vortex, spin) space used by the transfer experiments."""
    return compose(boson_space(n_max, "cantilever"),
                   boson_space(n_max, "vortex"), two_level_space("spin"))


def vortex_spin_space(n_max: int = DEFAULT_N_MAX) -> SpaceSignature:
    """(vortex, spin) space of the adiabatically eliminated model."""
    return compose(boson_space(n_max, "vortex"), two_level_space("spin"))


@dataclass(frozen=True)
class QOperator:
    """Dense complex matrix tagged with its Hilbert-space signature."""

    signature: SpaceSignature
    matrix: np.ndarray

    def __post_init__(self):
        mat = np.asarray(self.matrix, dtype=complex)
        object.__setattr__(self, "matrix", mat)
        n = self.signature.total_dim
        if mat.shape != (n, n):
            raise DimensionMismatchError(
                f"matrix shape {mat.shape} does not match signature "
                f"dimension {n}")

    # -- algebra ------------------------------------------------------
    def _check(self, other: "QOperator"):
        if self.signature != other.signature:
            raise DimensionMismatchError("operators live on different spaces")

    def __add__(self, other):
        self._check(other)
        return QOperator(self.signature, self.matrix + other.matrix)

    def __sub__(self, other):
        self._check(other)
        return QOperator(self.signature, self.matrix - other.matrix)

    def __mul__(self, scalar):
        return QOperator(self.signature, self.matrix * scalar)

    __rmul__ = __mul__

    def __neg__(self):
        return QOperator(self.signature, -self.matrix)

    def __matmul__(self, other):
        self._check(other)
        return QOperator(self.signature, self.matrix @ other.matrix)

    def dag(self) -> "QOperator":
        return QOperator(self.signature, self.matrix.conj().T)

    def commutator(self, other: "QOperator") -> "QOperator":
        self._check(other)
        return QOperator(self.signature,
                         self.matrix @ other.matrix - other.matrix @ self.matrix)

    def is_hermitian(self, rtol: float = 1e-12) -> bool:
        scale = np.linalg.norm(self.matrix) or 1.0
        return np.linalg.norm(self.matrix - self.matrix.conj().T) <= rtol * scale

    def eigenvalues(self) -> np.ndarray:
        """Eigenvalues assuming Hermiticity (ascending)."""
        return np.linalg.eigvalsh(self.matrix)


# ---------------------------------------------------------------------------
# elementary operators
# ---------------------------------------------------------------------------

def boson_annihilator(n_max: int) -> QOperator:
    """Truncated annihilation operator, <n-1|a|n> = sqrt(n).

    On the truncated space [a, a^dag] = I everywhere except the
    (n_max, n_max) corner, where it equals -n_max.
    """
    if n_max < 1:
        raise ValidationError("n_max must be >= 1")
    mat = np.diag(np.sqrt(np.arange(1, n_max + 1, dtype=float)), 1)
    return QOperator(boson_space(n_max), mat.astype(complex))


def sigma_minus() -> QOperator:
    """Lowering operator |lower><upper| with basis order (lower, upper)."""
    return QOperator(two_level_space(),
                     np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex))


def sigma_z() -> QOperator:
    """|upper><upper| - |lower><lower| = diag(-1, +1)."""
    return QOperator(two_level_space(),
                     np.diag([-1.0, 1.0]).astype(complex))


def identity(sig: SpaceSignature) -> QOperator:
    return QOperator(sig, np.eye(sig.total_dim, dtype=complex))


def embed(op: QOperator, slot: int, sig: SpaceSignature) -> QOperator:
    """Lift a single-subsystem operator into slot ``slot`` of ``sig``.

    Tensor product with identities on every other factor; the embedding
    of the identity is the identity and embeddings into distinct slots
    commute.
    """
    if not 0 <= slot < len(sig):
        raise DimensionMismatchError(
            f"slot {slot} out of range for {len(sig)} subsystems")
    target = sig.subsystems[slot]
    if op.signature.total_dim != target.dim:
        raise DimensionMismatchError(
            f"operator dim {op.signature.total_dim} does not fit subsystem "
            f"dim {target.dim} in slot {slot}")
    mat = np.eye(1, dtype=complex)
    for i, sub in enumerate(sig.subsystems):
        factor = op.matrix if i == slot else np.eye(sub.dim, dtype=complex)
        mat = np.kron(mat, factor)
    return QOperator(sig, mat)


def mode_operators(sig: SpaceSignature) -> list[QOperator]:
    """Annihilation / lowering operator of each subsystem, embedded in sig."""
    ops = []
    for i, sub in enumerate(sig.subsystems):
        local = boson_annihilator(sub.dim - 1) if sub.kind == "boson" \
            else sigma_minus()
        ops.append(embed(local, i, sig))
    return ops


def number_operator(sig: SpaceSignature, slot: int) -> QOperator:
    a = mode_operators(sig)[slot]
    return a.dag() @ a


def total_excitation(sig: SpaceSignature) -> QOperator:
    ops = mode_operators(sig)
    out = ops[0].dag() @ ops[0]
    for a in ops[1:]:
        out = out + a.dag() @ a
    return out


def fock_state(sig: SpaceSignature, occupations: tuple[int, ...]) -> np.ndarray:
    """Basis ket |n_0, n_1, ...> as a dense vector."""
    if len(occupations) != len(sig):
        raise DimensionMismatchError("one occupation per subsystem required")
    index = 0
    for n, sub in zip(occupations, sig.subsystems):
        if not 0 <= n < sub.dim:
            raise ValidationError(
                f"occupation {n} outside [0, {sub.dim - 1}]")
        index = index * sub.dim + n
    ket = np.zeros(sig.total_dim, dtype=complex)
    ket[index] = 1.0
    return ket


# ---------------------------------------------------------------------------
# Hamiltonian builders
# ---------------------------------------------------------------------------

def build_H_vc(omega_c: float, omega_v: float, g_vc: float, *,
               rwa: bool = False, n_max: int = DEFAULT_N_MAX) -> QOperator:
    """Vortex-gyration / phonon Hamiltonian on (cantilever, vortex).

    H/hbar = omega_c ac+ ac + omega_v av+ av + g_vc (av+ + av)(ac+ + ac)

    With ``rwa=True`` only the excitation-conserving part
    g_vc (av+ ac + av ac+) is kept; the result then commutes with the
    total number operator.
    """
    sig = cantilever_vortex_space(n_max)
    a_c, a_v = mode_operators(sig)
    H = omega_c * (a_c.dag() @ a_c) + omega_v * (a_v.dag() @ a_v)
    if rwa:
        H = H + g_vc * (a_v.dag() @ a_c + a_v @ a_c.dag())
    else:
        H = H + g_vc * ((a_v.dag() + a_v) @ (a_c.dag() + a_c))
    return H


def build_H_tripartite(delta1: float, delta2: float, g_vc: float,
                       g_nc: float, *,
                       n_max: int = DEFAULT_N_MAX) -> QOperator:
    """Rotating-frame tripartite Hamiltonian on (cantilever, vortex, spin).

    H/hbar = Delta1 ac+ ac + Delta2 av+ av
             + g_vc (av+ ac + av ac+) + g_nc (s+ ac + s- ac+)

    Conserves N = ac+ ac + av+ av + s+ s-; the cantilever is the bus
    linking the vortex and the spin.
    """
    sig = tripartite_space(n_max)
    a_c, a_v, s_m = mode_operators(sig)
    return (delta1 * (a_c.dag() @ a_c) + delta2 * (a_v.dag() @ a_v)
            + g_vc * (a_v.dag() @ a_c + a_v @ a_c.dag())
            + g_nc * (s_m.dag() @ a_c + s_m @ a_c.dag()))


def build_H_jc(omega_b: float, omega_tl: float, g: float, *,
               n_max: int = DEFAULT_N_MAX) -> QOperator:
    """Jaynes-Cummings Hamiltonian on (boson, two-level).

    H/hbar = omega_b a+ a + (omega_tl/2) sigma_z + g (s+ a + s- a+)
    """
    sig = vortex_spin_space(n_max)
    a, s_m = mode_operators(sig)
    sz = embed(sigma_z(), 1, sig)
    return (omega_b * (a.dag() @ a) + 0.5 * omega_tl * sz
            + g * (s_m.dag() @ a + s_m @ a.dag()))


def build_H_eff(delta1: float, delta2: float, g_vc: float, g_nc: float, *,
                n_max: int = DEFAULT_N_MAX) -> QOperator:
    """Effective vortex-spin Hamiltonian after eliminating the cantilever.

    With alpha = g_nc/|Delta1| and beta = g_vc/|Delta1|:

    H/hbar = (Delta2 - beta^2 Delta1) av+ av - (alpha^2 Delta1 / 2) sigma_z
             + g_eff (av s+ + av+ s-),   g_eff = beta g_nc

    Valid for |Delta1| >> g_vc, g_nc; the cantilever is only virtually
    excited and contributes the beta^2/alpha^2 Stark shifts.
    """
    if delta1 == 0:
        raise ValidationError("delta1 must be nonzero for the effective model")
    alpha, beta, g_eff = effective_coupling(delta1, g_vc, g_nc)
    sig = vortex_spin_space(n_max)
    a_v, s_m = mode_operators(sig)
    sz = embed(sigma_z(), 1, sig)
    return ((delta2 - beta**2 * delta1) * (a_v.dag() @ a_v)
            - 0.5 * alpha**2 * delta1 * sz
            + g_eff * (a_v @ s_m.dag() + a_v.dag() @ s_m))


def effective_coupling(delta1: float, g_vc: float,
                       g_nc: float) -> tuple[float, float, float]:
    """(alpha, beta, g_eff) of the eliminated model: g_eff = g_vc g_nc / |Delta1|."""
    if delta1 == 0:
        raise ValidationError("delta1 must be nonzero")
    alpha = g_nc / abs(delta1)
    beta = g_vc / abs(delta1)
    return alpha, beta, beta * g_nc


# ---------------------------------------------------------------------------
# dressed-state reduction of the driven NV triplet
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DressedSpinParams:
    """Parameters of the microwave-dressed NV two-level system.

    ``theta`` mixes |0> and the bright state; Lambda is the dressed
    |E> - |D> splitting (exact), ``lambda_approx`` its large-detuning
    expansion 2 Omega^2/Delta, and ``approx_rel_error`` their relative
    difference. g1/g2 are the phonon couplings of the G-D and D-E
    transitions.
    """

    theta: float            # rad
    omega_eg: float         # rad/s
    omega_dg: float         # rad/s
    lambda_split: float     # rad/s, exact omega_eg - omega_dg
    lambda_approx: float    # rad/s, 2 Omega^2 / Delta
    approx_rel_error: float
    g1: float               # rad/s
    g2: float               # rad/s


def dressed_transform(delta: float, omega_rabi: float,
                      g_nc: float = 0.0) -> DressedSpinParams:
    """Dressed-state parameters of the driven NV ground-state triplet.

    The drive couples |0> to the bright combination of |+-1>; in the
    dressed basis {|G>, |E>} with tan(2 theta) = 2 sqrt(2) Omega / Delta
    the exact splittings are

        omega_eg = sqrt(Delta^2 + 8 Omega^2)
        omega_dg = (Delta + sqrt(Delta^2 + 8 Omega^2)) / 2

    and the phonon couplings become g1 = -g_nc sin(theta),
    g2 = g_nc cos(theta). For Delta >> Omega: g1 -> 0, g2 -> g_nc and
    Lambda -> 2 Omega^2 / Delta.
    """
    if delta == 0:
        raise ValidationError("delta must be nonzero")
    theta = 0.5 * math.atan2(2.0 * math.sqrt(2.0) * omega_rabi, delta)
    root = math.sqrt(delta**2 + 8.0 * omega_rabi**2)
    omega_eg = root
    omega_dg = 0.5 * (delta + root)
    lam = omega_eg - omega_dg
    lam_approx = 2.0 * omega_rabi**2 / delta
    rel = 0.0 if lam == 0.0 else abs(lam_approx - lam) / abs(lam)
    return DressedSpinParams(
        theta=theta, omega_eg=omega_eg, omega_dg=omega_dg,
        lambda_split=lam, lambda_approx=lam_approx, approx_rel_error=rel,
        g1=-g_nc * math.sin(theta), g2=g_nc * math.cos(theta))


def nv_drive_parameters(b_z: float, b_drive: float, drive_frequency: float,
                        zero_field_splitting: float = D_NV
                        ) -> tuple[float, float, float]:
    """(Delta_plus, Delta_minus, Omega) of the driven NV triplet, rad/s.

    Delta_pm = D +- mu_B g_s B_z / hbar - omega_0 are the detunings of
    the |+-1> sublevels from the drive, Omega = sqrt(2)/4 mu_B g_s B_0
    / hbar the Rabi frequency. The dressed reduction assumes
    Delta_plus ~ Delta_minus (weak static splitting).
    """
    zeeman = MU_B * G_S * b_z / HBAR
    delta_plus = zero_field_splitting + zeeman - drive_frequency
    delta_minus = zero_field_splitting - zeeman - drive_frequency
    omega_rabi = math.sqrt(2.0) / 4.0 * MU_B * G_S * b_drive / HBAR
    return delta_plus, delta_minus, omega_rabi


def dressed_transform_from_drive(b_z: float, b_drive: float,
                                 drive_frequency: float, g_nc: float = 0.0, *,
                                 zero_field_splitting: float = D_NV
                                 ) -> DressedSpinParams:
    """Dressed parameters straight from static field, drive and frequency.

    Uses the mean of the two sublevel detunings (they coincide only at
    B_z = 0; the reduction treats them as equal).
    """
    dp, dm, omega = nv_drive_parameters(b_z, b_drive, drive_frequency,
                                        zero_field_splitting)
    return dressed_transform(0.5 * (dp + dm), omega, g_nc)


def matrix_to_csv(op: QOperator, path) -> None:
    """Debug dump: real and imaginary parts, one row per matrix row."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("# dims: " + "x".join(str(d) for d in op.signature.dims) + "\n")
        for row in op.matrix:
            fh.write(",".join(f"{z.real:.12g}{z.imag:+.12g}j" for z in row))
            fh.write("\n")
