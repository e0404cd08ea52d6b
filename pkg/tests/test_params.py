"""Parameter-engine tests.

Expected numbers marked "frozen" were computed by evaluating the closed
forms directly with scipy's CODATA constants in a standalone script
before the package existed; they are regression locks, not recomputed
here.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import vortexmech as vm
from vortexmech.constants import GAMMA_G, HBAR, K_B, MU0, TWO_PI, XI_DISC
from vortexmech.errors import GeometryWarning, ValidationError

YIG = vm.yig()
COFE = vm.cofe()
DISC_180_20 = vm.DiscGeometry(radius=180e-9, thickness=20e-9)
DISC_180_15 = vm.DiscGeometry(radius=180e-9, thickness=15e-9)


class TestExchangeLength:
    def test_yig_value(self):
        # frozen: sqrt(2 * 1.9e-12 / (mu0 * (0.18/mu0)^2)) = 12.140 nm
        assert vm.exchange_length(YIG) == pytest.approx(1.2140154819352161e-8,
                                                        rel=1e-12)

    def test_cofe_value(self):
        # frozen: 3.368 nm
        assert vm.exchange_length(COFE) == pytest.approx(3.3681805379856464e-9,
                                                         rel=1e-12)

    def test_sqrt_homogeneity_in_A(self):
        scaled = vm.Material("x4", YIG.Ms, YIG.alpha_llg, 4.0 * YIG.A_ex)
        assert vm.exchange_length(scaled) == pytest.approx(
            2.0 * vm.exchange_length(YIG), rel=1e-14)


class TestVortexCoreRadius:
    def test_yig_20nm(self):
        # frozen: 22.654 nm
        assert vm.vortex_core_radius(YIG, 20e-9) == pytest.approx(
            2.2654261134876336e-8, rel=1e-12)

    def test_unit_ratio_case(self):
        lam = vm.exchange_length(YIG)
        assert vm.vortex_core_radius(YIG, lam) == pytest.approx(1.58 * lam,
                                                                rel=1e-14)

    def test_cube_root_homogeneity(self):
        assert vm.vortex_core_radius(YIG, 8 * 5e-9) == pytest.approx(
            2.0 * vm.vortex_core_radius(YIG, 5e-9), rel=1e-14)


class TestGyrotropicFrequency:
    def test_reference_disc_near_100_mhz(self):
        f_v = vm.gyrotropic_frequency(YIG, DISC_180_20) / TWO_PI
        assert 99e6 <= f_v <= 101e6
        assert f_v == pytest.approx(99029742.36829044, rel=1e-12)  # frozen

    def test_linear_in_beta(self):
        thin = vm.DiscGeometry(radius=180e-9, thickness=10e-9)
        assert vm.gyrotropic_frequency(YIG, DISC_180_20) == pytest.approx(
            2.0 * vm.gyrotropic_frequency(YIG, thin), rel=1e-14)

    def test_15nm_disc(self):
        # frozen: 74.27 MHz, consistent with the radius-sweep trend
        f_v = vm.gyrotropic_frequency(YIG, DISC_180_15) / TWO_PI
        assert f_v == pytest.approx(74272306.77621782, rel=1e-12)

    def test_thick_disc_warns(self):
        with pytest.warns(GeometryWarning):
            vm.DiscGeometry(radius=100e-9, thickness=25e-9)


class TestVortexLinewidth:
    def test_reference_disc_20_khz(self):
        omega_v = vm.gyrotropic_frequency(YIG, DISC_180_20)
        gamma = vm.vortex_linewidth(YIG, DISC_180_20, omega_v) / TWO_PI
        assert gamma == pytest.approx(20e3, rel=0.10)
        assert gamma == pytest.approx(20165.47044271812, rel=1e-12)  # frozen

    def test_linear_in_alpha(self):
        omega_v = vm.gyrotropic_frequency(YIG, DISC_180_20)
        doubled = vm.Material("a2", YIG.Ms, 2 * YIG.alpha_llg, YIG.A_ex)
        assert vm.vortex_linewidth(doubled, DISC_180_20, omega_v) == \
            pytest.approx(2 * vm.vortex_linewidth(YIG, DISC_180_20, omega_v),
                          rel=1e-14)

    def test_log_equals_two_case(self):
        # r = r_v e^2 makes the bracket 1 + 2/2 = 2, so gamma = 4 alpha omega
        r_v = vm.vortex_core_radius(YIG, 20e-9)
        disc = vm.DiscGeometry(radius=r_v * math.e**2, thickness=20e-9)
        gamma = vm.vortex_linewidth(YIG, disc, omega_v := 1e8)
        assert gamma == pytest.approx(4 * YIG.alpha_llg * omega_v, rel=1e-12)

    def test_too_small_disc_raises(self):
        with pytest.warns(GeometryWarning):  # beta ~ 1, warned on purpose
            disc = vm.DiscGeometry(radius=21e-9, thickness=20e-9)
        with pytest.raises(ValidationError, match="vortex"):
            vm.vortex_linewidth(YIG, disc, 1e8)


SILICON_BEAM = vm.CantileverGeometry(
    length=1.2e-6, width=0.2e-6, thickness=0.15e-6,
    youngs_modulus=169e9, density=2330.0)


class TestCantilever:
    def test_bare_beam_value(self):
        # frozen: 143.414 MHz for the reference silicon beam
        f_c = vm.cantilever_frequency(SILICON_BEAM) / TWO_PI
        assert f_c == pytest.approx(143414004.53536102, rel=1e-12)

    def test_tip_mass_lowers_frequency(self):
        loaded = vm.CantileverGeometry(
            length=1.2e-6, width=0.2e-6, thickness=0.15e-6,
            youngs_modulus=169e9, density=2330.0, tip_extra_mass=6.15e-18)
        assert vm.cantilever_frequency(loaded) < \
            vm.cantilever_frequency(SILICON_BEAM)

    def test_inverse_square_length(self):
        longer = vm.CantileverGeometry(
            length=2.4e-6, width=0.2e-6, thickness=0.15e-6,
            youngs_modulus=169e9, density=2330.0)
        assert vm.cantilever_frequency(longer) == pytest.approx(
            vm.cantilever_frequency(SILICON_BEAM) / 4.0, rel=1e-14)

    def test_tuning_inverts_the_formula(self):
        target = TWO_PI * 100e6
        m = vm.tip_mass_for_frequency(SILICON_BEAM, target)
        tuned = vm.CantileverGeometry(
            length=1.2e-6, width=0.2e-6, thickness=0.15e-6,
            youngs_modulus=169e9, density=2330.0, tip_extra_mass=m)
        assert vm.cantilever_frequency(tuned) == pytest.approx(target,
                                                               rel=1e-12)

    def test_wide_beam_warns(self):
        with pytest.warns(GeometryWarning):
            vm.CantileverGeometry(length=1e-6, width=0.6e-6, thickness=0.1e-6,
                                  youngs_modulus=169e9, density=2330.0)


class TestZeroPoint:
    def test_mass_scaling(self):
        _, a0 = vm.effective_mass_and_zero_point(SILICON_BEAM, TWO_PI * 1e8)
        heavy = vm.CantileverGeometry(
            length=1.2e-6, width=0.2e-6, thickness=0.15e-6,
            youngs_modulus=169e9, density=2330.0,
            tip_extra_mass=3.0 * SILICON_BEAM.beam_mass)  # M -> 4 M
        _, a0_heavy = vm.effective_mass_and_zero_point(heavy, TWO_PI * 1e8)
        assert a0_heavy == pytest.approx(a0 / 2.0, rel=1e-14)

    def test_magnet_loaded_beam_value(self):
        # magnet 0.3 x 0.05 x 0.05 um^3 at 8200 kg/m^3, f_c = 100 MHz
        loaded = vm.CantileverGeometry(
            length=1.2e-6, width=0.2e-6, thickness=0.15e-6,
            youngs_modulus=169e9, density=2330.0,
            tip_extra_mass=0.3e-6 * 0.05e-6 * 0.05e-6 * 8200.0)
        M, a0 = vm.effective_mass_and_zero_point(loaded, TWO_PI * 1e8)
        assert M == pytest.approx(2.62812e-17, rel=1e-5)
        assert a0 == pytest.approx(5.650808020511829e-14, rel=1e-12)  # frozen


MAGNET = vm.DipoleMagnet.from_gradient_anchor(5e5, 160e-9)


class TestDipole:
    def test_back_solved_moment(self):
        # frozen: inverting G(160 nm) = 5e5 T/m gives 1.0923e-15 A m^2
        assert MAGNET.moment == pytest.approx(1.0922666668108816e-15,
                                              rel=1e-12)

    def test_gradient_at_150nm(self):
        assert vm.dipole_gradient(MAGNET, 150e-9) == pytest.approx(
            6.47269135802469e5, rel=1e-12)  # frozen, ~6.5e5 T/m

    def test_inverse_fourth_power(self):
        assert vm.dipole_gradient(MAGNET, 100e-9) == pytest.approx(
            16.0 * vm.dipole_gradient(MAGNET, 200e-9), rel=1e-14)

    def test_monotone_decay(self):
        d = np.linspace(100e-9, 500e-9, 50)
        G = np.array([vm.dipole_gradient(MAGNET, x) for x in d])
        assert np.all(np.diff(G) < 0)

    def test_on_axis_field(self):
        d = 150e-9
        B = vm.dipole_field_map(MAGNET, np.array([[0.0, 0.0, d]]))
        assert B[0, 2] == pytest.approx(MU0 * MAGNET.moment / (2 * math.pi * d**3),
                                        rel=1e-12)
        assert B[0, 0] == B[0, 1] == 0.0

    def test_equatorial_field_antiparallel(self):
        d = 150e-9
        B = vm.dipole_field_map(MAGNET, np.array([[d, 0.0, 0.0]]))
        assert B[0, 2] == pytest.approx(-MU0 * MAGNET.moment / (4 * math.pi * d**3),
                                        rel=1e-12)

    def test_r_cubed_decay_along_ray(self):
        p = np.array([[1.0, 2.0, 2.0]]) * 1e-7
        B1 = np.linalg.norm(vm.dipole_field_map(MAGNET, p))
        B2 = np.linalg.norm(vm.dipole_field_map(MAGNET, 2 * p))
        assert B1 / B2 == pytest.approx(8.0, rel=1e-12)

    def test_reflection_symmetry_about_axis(self):
        pts = np.array([[3e-8, 1e-8, -1.5e-7]])
        mirrored = pts * np.array([-1.0, -1.0, 1.0])
        B = vm.dipole_field_map(MAGNET, pts)[0]
        Bm = vm.dipole_field_map(MAGNET, mirrored)[0]
        assert Bm[2] == pytest.approx(B[2], rel=1e-12)
        assert np.hypot(Bm[0], Bm[1]) == pytest.approx(np.hypot(B[0], B[1]),
                                                       rel=1e-12)

    def test_central_region_nearly_uniform(self):
        # magnitude under the magnet at 150 nm varies < 20% for |x| <= 30 nm
        x = np.linspace(-30e-9, 30e-9, 31)
        pts = np.stack([x, np.zeros_like(x), np.full_like(x, -150e-9)], axis=1)
        mag = np.linalg.norm(vm.dipole_field_map(MAGNET, pts), axis=1)
        assert (mag.max() - mag.min()) / mag.max() < 0.20

    def test_singular_point_rejected(self):
        with pytest.raises(ValidationError, match="dipole"):
            vm.dipole_field_map(MAGNET, np.zeros((1, 3)))


class TestCouplings:
    def test_g_vc_reference_value(self):
        # G = 5e5 T/m and a0 = 0.5e-13 m -> B_vc = 2.5e-8 T
        g = vm.coupling_vc(YIG, DISC_180_20, 2.5e-8)
        assert g / TWO_PI == pytest.approx(369040.1180973646, rel=1e-12)

    def test_g_vc_zero_field(self):
        assert vm.coupling_vc(YIG, DISC_180_20, 0.0) == 0.0

    def test_g_vc_sqrt_volume(self):
        # V x4 -> g x2; with V = pi r^2 t that is radius x2 at fixed t
        big = vm.DiscGeometry(radius=2 * 180e-9, thickness=20e-9)
        assert vm.coupling_vc(YIG, big, 1e-8) == pytest.approx(
            2.0 * vm.coupling_vc(YIG, DISC_180_20, 1e-8), rel=1e-14)
        with pytest.warns(GeometryWarning):  # beta = 0.44, thick on purpose
            thick = vm.DiscGeometry(radius=180e-9, thickness=4 * 20e-9)
        assert vm.coupling_vc(YIG, thick, 1e-8) == pytest.approx(
            2.0 * vm.coupling_vc(YIG, DISC_180_20, 1e-8), rel=1e-14)

    def test_g_nc_reference_value(self):
        G_nc = vm.dipole_gradient(MAGNET, 40e-9)
        g = vm.coupling_nc(G_nc, 5.650808020511829e-14)
        assert g / TWO_PI == pytest.approx(202470.6381679439, rel=1e-10)

    def test_g_nc_linear_and_zero(self):
        assert vm.coupling_nc(1e7, 0.0) == 0.0
        assert vm.coupling_nc(2e7, 3e-14) == pytest.approx(
            2.0 * vm.coupling_nc(1e7, 3e-14), rel=1e-14)

    def test_g_nc_gradient_law_through_distance(self):
        g_far = vm.coupling_nc(vm.dipole_gradient(MAGNET, 80e-9), 5e-14)
        g_near = vm.coupling_nc(vm.dipole_gradient(MAGNET, 40e-9), 5e-14)
        assert g_near == pytest.approx(16.0 * g_far, rel=1e-12)

    def test_g_vn_reference_value(self):
        # quoted ~15 kHz at y = 200 nm; frozen direct evaluation 14.52 kHz
        g = vm.coupling_vn(YIG, DISC_180_20, 200e-9)
        assert g / TWO_PI == pytest.approx(15e3, rel=0.10)
        assert g / TWO_PI == pytest.approx(14520.360405908555, rel=1e-12)

    def test_g_vn_cubic_distance(self):
        assert vm.coupling_vn(YIG, DISC_180_20, 200e-9) == pytest.approx(
            8.0 * vm.coupling_vn(YIG, DISC_180_20, 400e-9), rel=1e-14)

    def test_g_vn_sqrt_volume(self):
        big = vm.DiscGeometry(radius=2 * 180e-9, thickness=20e-9)  # V x4
        assert vm.coupling_vn(YIG, big, 2e-7) == pytest.approx(
            2.0 * vm.coupling_vn(YIG, DISC_180_20, 2e-7), rel=1e-14)


class TestThermalOccupation:
    def test_reference_value(self):
        nbar = vm.thermal_occupation(TWO_PI * 100e6, 10e-3)
        assert nbar == pytest.approx(1.623502914385847, rel=1e-12)  # frozen

    def test_zero_temperature(self):
        assert vm.thermal_occupation(TWO_PI * 1e8, 0.0) == 0.0

    def test_ln2_identity(self):
        omega = 1e9
        T = HBAR * omega / (K_B * math.log(2.0))
        assert vm.thermal_occupation(omega, T) == pytest.approx(1.0, rel=1e-12)

    def test_monotone_in_temperature(self):
        temps = np.linspace(1e-3, 1.0, 20)
        n = [vm.thermal_occupation(TWO_PI * 1e8, T) for T in temps]
        assert np.all(np.diff(n) > 0)


class TestUscMetrics:
    def test_definition_identities(self):
        m = vm.usc_metrics(g=1e6, omega=1e8, gamma=1e4, kappa=1e5)
        assert m.coherence**2 == pytest.approx(m.cooperativity * m.ratio,
                                               rel=1e-14)

    def test_zero_coupling(self):
        m = vm.usc_metrics(0.0, 1e8, 1e4, 1e5)
        assert (m.ratio, m.cooperativity, m.coherence) == (0.0, 0.0, 0.0)
        assert not m.usc

    def test_unity_check(self):
        # C = 100 and g/omega = 0.01 gives U = 1
        m = vm.usc_metrics(g=1e6, omega=1e8, gamma=1e4, kappa=1e6)
        assert m.cooperativity == pytest.approx(100.0, rel=1e-12)
        assert m.coherence == pytest.approx(1.0, rel=1e-12)

    def test_boundary_flag(self):
        assert vm.usc_metrics(1e7, 1e8, 1.0, 1.0).usc
        assert not vm.usc_metrics(0.99e7, 1e8, 1.0, 1.0).usc

    def test_usc_boundary_case_from_gradient(self):
        # G = 1e7 T/m, a0 = 0.5e-13: just below the 0.1 boundary
        omega_v = vm.gyrotropic_frequency(YIG, DISC_180_15)
        g = vm.coupling_vc(YIG, DISC_180_15, 1e7 * 0.5e-13)
        assert g / omega_v == pytest.approx(0.086, abs=0.005)


class TestScalingLawProperties:
    @given(st.floats(1e-9, 1e-7), st.floats(1.5, 8.0))
    @settings(max_examples=25, deadline=None)
    def test_gradient_d4(self, d, factor):
        assert vm.dipole_gradient(MAGNET, factor * d) * factor**4 == \
            pytest.approx(vm.dipole_gradient(MAGNET, d), rel=1e-12)

    @given(st.floats(1e-8, 1e-6), st.floats(1.5, 4.0))
    @settings(max_examples=25, deadline=None)
    def test_g_vn_y3(self, y, factor):
        assert vm.coupling_vn(YIG, DISC_180_20, factor * y) * factor**3 == \
            pytest.approx(vm.coupling_vn(YIG, DISC_180_20, y), rel=1e-12)

    @given(st.floats(1e-10, 1e-6))
    @settings(max_examples=25, deadline=None)
    def test_g_vc_linear_in_field(self, B):
        assert vm.coupling_vc(YIG, DISC_180_20, 2.0 * B) == pytest.approx(
            2.0 * vm.coupling_vc(YIG, DISC_180_20, B), rel=1e-12)


class TestAppendixIdentity:
    def test_susceptibility_route_matches_direct(self):
        """Reconstruct g_vc from the susceptibility chi = gamma_g xi^2 Ms / gamma
        and compare with the direct formula to 1e-12 relative."""
        B_vc = 2.5e-8
        V = DISC_180_20.volume
        gamma = 1.2670338759805073e5  # any positive rate; it cancels
        chi = GAMMA_G * XI_DISC**2 * YIG.Ms / gamma  # angular gamma_g
        # Delta_M = chi B = 8 pi m g / gamma and hbar g = V m B combine to
        # g = B sqrt(chi gamma V / (8 pi hbar)); the 2 pi of the direct
        # formula comes out of the angular gamma_g inside chi
        g_route = B_vc * math.sqrt(chi * gamma * V / (8 * math.pi * HBAR))
        g_direct = vm.coupling_vc(YIG, DISC_180_20, B_vc)
        assert g_route == pytest.approx(g_direct, rel=1e-12)


class TestDeriveParameters:
    def test_kappa_is_omega_over_q_exactly(self):
        cant = vm.CantileverGeometry(
            length=1.2e-6, width=0.2e-6, thickness=0.15e-6,
            youngs_modulus=169e9, density=2330.0, tip_extra_mass=2.12738e-17,
            quality_factor=1000.0)
        d = vm.derive_parameters(YIG, DISC_180_20, cant, MAGNET,
                                 vm.Placement(150e-9, 40e-9, 200e-9))
        assert d.kappa_c == d.omega_c / 1000.0

    def test_a0_override_feeds_couplings(self):
        cant = vm.CantileverGeometry(
            length=1.2e-6, width=0.2e-6, thickness=0.15e-6,
            youngs_modulus=169e9, density=2330.0)
        place = vm.Placement(150e-9, 40e-9, 200e-9)
        base = vm.derive_parameters(YIG, DISC_180_20, cant, MAGNET, place)
        overridden = vm.derive_parameters(YIG, DISC_180_20, cant, MAGNET,
                                          place, a0_override=0.5e-13)
        assert overridden.a0 == 0.5e-13
        assert overridden.B_vc == pytest.approx(overridden.G_v * 0.5e-13,
                                                rel=1e-14)
        assert overridden.g_vc / base.g_vc == pytest.approx(0.5e-13 / base.a0,
                                                            rel=1e-12)

    def test_invariant_g_vc_matches_construction(self):
        place = vm.Placement(150e-9, 40e-9, 200e-9)
        d = vm.derive_parameters(YIG, DISC_180_20, SILICON_BEAM, MAGNET, place)
        X = XI_DISC**2 * YIG.Ms * GAMMA_G / TWO_PI
        assert d.g_vc == pytest.approx(
            (d.B_vc / 2.0) * math.sqrt(DISC_180_20.volume * X / HBAR),
            rel=1e-14)
