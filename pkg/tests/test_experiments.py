"""Sweep and dynamics experiment tests."""

import math

import numpy as np
import pytest

import vortexmech as vm
from vortexmech.constants import TWO_PI
from vortexmech.errors import ValidationError

YIG = vm.yig()
DISC = vm.DiscGeometry(radius=180e-9, thickness=20e-9)
MAGNET = vm.DipoleMagnet.from_gradient_anchor(5e5, 160e-9)
G_REF = TWO_PI * 0.45e6


class TestSweepRadius:
    GRID = vm.sweep_radius(YIG, 15e-9, 5e5, 0.5e-13,
                           np.linspace(100e-9, 600e-9, 41))

    def test_frequency_decreases_with_radius(self):
        f_v = self.GRID.values["f_v"]
        assert np.all(np.diff(f_v) < 0)

    def test_ratio_increases_with_radius(self):
        ratio = self.GRID.values["g_vc_over_gamma"]
        assert np.all(np.diff(ratio) > 0)

    def test_reference_frequency(self):
        grid = vm.sweep_radius(YIG, 15e-9, 5e5, 0.5e-13, np.array([180e-9]))
        assert grid.values["f_v"][0] == pytest.approx(74272306.77621782,
                                                      rel=1e-12)

    def test_doubling_gradient_doubles_ratio(self):
        doubled = vm.sweep_radius(YIG, 15e-9, 1e6, 0.5e-13,
                                  np.linspace(100e-9, 600e-9, 41))
        assert np.allclose(doubled.values["g_vc_over_gamma"],
                           2.0 * self.GRID.values["g_vc_over_gamma"],
                           rtol=1e-12)

    def test_invalid_region_flagged(self):
        r_v = vm.vortex_core_radius(YIG, 15e-9)
        grid = vm.sweep_radius(YIG, 15e-9, 5e5, 0.5e-13,
                               np.array([r_v / 2.0, 300e-9]))
        assert not grid.masks["valid"][0] and grid.masks["valid"][1]
        assert np.isnan(grid.values["f_v"][0])


class TestSweepUsc:
    GRID = vm.sweep_usc(YIG, 15e-9, 0.5e-13, 1000.0,
                        np.linspace(100e-9, 600e-9, 21),
                        np.geomspace(1e5, 1e9, 41))

    def test_zero_gradient_column_zero(self):
        grid = vm.sweep_usc(YIG, 15e-9, 0.5e-13, 1000.0,
                            np.array([180e-9, 300e-9]), np.array([0.0, 1e6]))
        assert np.all(grid.values["g_over_omega"][:, 0] == 0.0)
        assert np.all(grid.values["U"][:, 0] == 0.0)

    def test_U_definition_recheck(self):
        """U grid equals sqrt(C g/omega) recomputed from scratch."""
        r_values = self.GRID.axes[0].samples
        G_values = self.GRID.axes[1].samples
        for i in (0, 10, 20):
            disc = vm.DiscGeometry(radius=r_values[i], thickness=15e-9)
            omega_v = vm.gyrotropic_frequency(YIG, disc)
            gamma_v = vm.vortex_linewidth(YIG, disc, omega_v)
            kappa = omega_v / 1000.0
            for j in (0, 17, 40):
                g = vm.coupling_vc(YIG, disc, G_values[j] * 0.5e-13)
                U = math.sqrt((g**2 / (gamma_v * kappa)) * (g / omega_v))
                assert self.GRID.values["U"][i, j] == pytest.approx(
                    U, rel=1e-12)

    def test_usc_mask_onset_near_1e7(self):
        grid = vm.sweep_usc(YIG, 15e-9, 0.5e-13, 1000.0, np.array([180e-9]),
                            np.geomspace(1e6, 1e8, 400))
        mask = grid.masks["usc_ratio"][0]
        G_onset = grid.axes[1].samples[np.argmax(mask)]
        assert 1e7 / 1.5 <= G_onset <= 1e7 * 1.5

    def test_masks_consistent_with_values(self):
        assert np.array_equal(self.GRID.masks["usc_ratio"],
                              self.GRID.values["g_over_omega"] >= 0.1)


class TestEffectiveRates:
    def test_identities(self):
        eff = vm.effective_rates(delta1=2e7, g_vc=3e6, g_nc=1.5e6,
                                 gamma_v=1e5, kappa_1=6e5, kappa_2=6e3)
        assert eff.g_eff == eff.beta * 1.5e6
        assert eff.gamma_eff == 1e5 + eff.alpha**2 * 6e5
        assert eff.kappa_eff == 6e3 + eff.beta**2 * 6e5
        assert eff.C_eff == pytest.approx(
            eff.g_eff**2 / (eff.gamma_eff * eff.kappa_eff), rel=1e-14)


class TestSweepDetuning:
    @classmethod
    def make_grid(cls, anchor=None):
        g_big = TWO_PI * 1.2e6
        return vm.sweep_detuning(
            YIG, DISC, MAGNET, a0=4.5e-14, g_nc=TWO_PI * 0.45e6,
            gamma_v=TWO_PI * 20e3, kappa_1=TWO_PI * 100e3,
            kappa_2=TWO_PI * 1e3,
            delta1_values=np.linspace(5 * g_big, 50 * g_big, 24),
            d_vc_values=np.linspace(120e-9, 300e-9, 25), g_vc_anchor=anchor)

    def test_identities_pointwise(self):
        grid = self.make_grid()
        d1_hz = grid.axes[0].samples
        g_nc_hz = TWO_PI * 0.45e6 / TWO_PI
        g_vc = grid.values["g_vc"]
        g_eff = grid.values["g_eff"]
        gam = grid.values["gamma_eff"]
        kap = grid.values["kappa_eff"]
        for i in range(0, 24, 7):
            for j in range(0, 25, 6):
                alpha = g_nc_hz / abs(d1_hz[i])
                beta = g_vc[i, j] / abs(d1_hz[i])
                assert g_eff[i, j] == pytest.approx(beta * g_nc_hz, rel=1e-12)
                assert gam[i, j] == pytest.approx(
                    20e3 + alpha**2 * 100e3, rel=1e-12)
                assert kap[i, j] == pytest.approx(
                    1e3 + beta**2 * 100e3, rel=1e-12)

    def test_large_detuning_limits(self):
        grid = vm.sweep_detuning(
            YIG, DISC, MAGNET, a0=4.5e-14, g_nc=TWO_PI * 0.45e6,
            gamma_v=TWO_PI * 20e3, kappa_1=TWO_PI * 100e3,
            kappa_2=TWO_PI * 1e3, delta1_values=np.array([1e16]),
            d_vc_values=np.array([150e-9]))
        assert grid.values["g_eff"][0, 0] == pytest.approx(0.0, abs=1e-3)
        assert grid.values["gamma_eff"][0, 0] == pytest.approx(20e3, rel=1e-9)
        assert grid.values["kappa_eff"][0, 0] == pytest.approx(1e3, rel=1e-9)

    def test_coupling_crossover_near_190nm(self):
        # with g_nc computed from the same magnet and a0, the g_vc(d)
        # curve drops below g_nc near 190 nm (independent of a0)
        a0 = 4.5e-14
        g_nc = vm.coupling_nc(vm.dipole_gradient(MAGNET, 40e-9), a0)
        grid = vm.sweep_detuning(
            YIG, DISC, MAGNET, a0=a0, g_nc=g_nc,
            gamma_v=TWO_PI * 20e3, kappa_1=TWO_PI * 100e3,
            kappa_2=TWO_PI * 1e3,
            delta1_values=np.array([TWO_PI * 50e6]),
            d_vc_values=np.linspace(150e-9, 250e-9, 201))
        g_vc_curve = grid.values["g_vc"][0]  # Hz, varies along d_vc
        d = grid.axes[1].samples
        above = g_vc_curve > g_nc / TWO_PI
        crossing = d[np.argmin(above)]  # first distance where g_vc < g_nc
        assert 185e-9 <= crossing <= 200e-9

    def test_anchor_injects_quoted_values(self):
        grid = self.make_grid(anchor=(TWO_PI * 1.2e6, 150e-9))
        d = grid.axes[1].samples
        j = int(np.argmin(np.abs(d - 150e-9)))
        # curve rescaled so g_vc at the anchor distance is 1.2 MHz
        interp = np.interp(150e-9, d, grid.values["g_vc"][0])
        assert interp == pytest.approx(1.2e6, rel=1e-3)
        del j

    def test_validity_mask(self):
        grid = self.make_grid()
        g_nc_hz = 0.45e6
        g_vc = grid.values["g_vc"]
        d1 = grid.axes[0].samples
        expected = np.abs(d1)[:, None] >= 5.0 * np.maximum(g_vc, g_nc_hz)
        assert np.array_equal(grid.masks["valid"], expected)

    def test_zero_detuning_rejected(self):
        with pytest.raises(ValidationError):
            vm.sweep_detuning(
                YIG, DISC, MAGNET, a0=4.5e-14, g_nc=G_REF,
                gamma_v=1e5, kappa_1=6e5, kappa_2=6e3,
                delta1_values=np.array([0.0]), d_vc_values=np.array([150e-9]))


class TestRebuild:
    def test_sweep_radius_bit_identical(self):
        grid = vm.sweep_radius(YIG, 15e-9, 5e5, 0.5e-13,
                               np.linspace(100e-9, 600e-9, 17))
        again = vm.rebuild_grid(grid)
        for name in grid.values:
            assert np.array_equal(grid.values[name], again.values[name],
                                  equal_nan=True)

    def test_sweep_usc_bit_identical(self):
        grid = vm.sweep_usc(YIG, 15e-9, 0.5e-13, 1000.0,
                            np.linspace(100e-9, 400e-9, 9),
                            np.geomspace(1e5, 1e8, 11))
        again = vm.rebuild_grid(grid)
        for name in grid.values:
            assert np.array_equal(grid.values[name], again.values[name],
                                  equal_nan=True)
        for name in grid.masks:
            assert np.array_equal(grid.masks[name], again.masks[name])

    def test_sweep_detuning_bit_identical(self):
        grid = TestSweepDetuning.make_grid(anchor=(TWO_PI * 1.2e6, 150e-9))
        again = vm.rebuild_grid(grid)
        for name in grid.values:
            assert np.array_equal(grid.values[name], again.values[name])


class TestTransferExperiment:
    def test_lossless_full_transfer(self):
        t_star = math.pi / (math.sqrt(2.0) * G_REF)
        series = vm.run_transfer_experiment(
            G_REF, G_REF, n_max=2, t_final=1.02 * t_star, n_times=301)
        k = int(np.argmin(np.abs(series.times - t_star)))
        assert series["NV"][k] > 0.999
        # the bus peaks strictly between the initial V peak and the NV peak
        k_c = int(np.argmax(series["C"]))
        assert 0 < series.times[k_c] < series.times[k]

    def test_zero_couplings_static(self):
        series = vm.run_transfer_experiment(0.0, 0.0, n_max=1,
                                            t_final=1e-6, n_times=21)
        assert np.allclose(series["V"], 1.0, atol=1e-12)
        assert np.allclose(series["C"], 0.0, atol=1e-12)
        assert np.allclose(series["NV"], 0.0, atol=1e-12)

    def test_dissipative_amplitudes_decay(self):
        series = vm.run_transfer_experiment(
            G_REF, G_REF, gamma_v=0.045 * G_REF, kappa_1=0.222 * G_REF,
            kappa_2=0.002 * G_REF, dissipative=True, n_max=2,
            t_final=4.0 * math.pi / (math.sqrt(2.0) * G_REF), n_times=401)
        v = series["V"]
        period = int(401 * 0.5)  # one full oscillation of V
        first_max = np.max(v[:period])
        second_max = np.max(v[period:])
        assert second_max < first_max
        # total excitation leaks out monotonically at coarse grain
        total = series["V"] + series["C"] + series["NV"]
        assert total[-1] < total[0]

    def test_rates_ignored_when_not_dissipative(self):
        a = vm.run_transfer_experiment(G_REF, G_REF, gamma_v=G_REF,
                                       dissipative=False, n_max=2,
                                       t_final=5e-7, n_times=11)
        b = vm.run_transfer_experiment(G_REF, G_REF, n_max=2,
                                       t_final=5e-7, n_times=11)
        assert np.allclose(a["V"], b["V"], atol=1e-12)


class TestEffectiveComparison:
    def test_deviation_small_and_monotone(self):
        deviations = []
        for ratio in (10.0, 20.0, 40.0):
            cmp_ = vm.run_effective_comparison(G_REF, G_REF, ratio * G_REF,
                                               n_times=501)
            deviations.append(cmp_.max_deviation)
        assert deviations[1] < 0.1
        assert deviations[0] > deviations[1] > deviations[2]

    def test_cantilever_stays_virtual(self):
        cmp_ = vm.run_effective_comparison(G_REF, G_REF, 20.0 * G_REF,
                                           n_times=501)
        assert np.max(cmp_.tripartite["C"]) < 0.05

    def test_g_eff_exact(self):
        cmp_ = vm.run_effective_comparison(G_REF, G_REF, 20.0 * G_REF,
                                           n_times=51)
        assert cmp_.effective.g_eff == pytest.approx(
            G_REF * G_REF / (20.0 * G_REF), rel=1e-14)

    def test_validity_precondition(self):
        with pytest.raises(ValidationError, match="detuning"):
            vm.run_effective_comparison(G_REF, G_REF, 5.0 * G_REF)

    def test_dissipative_runs_and_decays(self):
        cmp_ = vm.run_effective_comparison(
            G_REF, G_REF, 10.0 * G_REF, gamma_v=0.045 * G_REF,
            kappa_1=0.222 * G_REF, kappa_2=0.002 * G_REF, dissipative=True,
            n_max=2, n_times=101, periods=0.2)
        # dissipation pulls the occupations below the lossless envelope
        assert np.max(cmp_.tripartite["NV"]) < 1.0
        assert cmp_.reference["Bo"][-1] < 1.0

    def test_caption_rates_accepted(self):
        cmp_ = vm.run_effective_comparison(
            G_REF, G_REF, 10.0 * G_REF, gamma_v=0.045 * G_REF,
            kappa_1=0.222 * G_REF, kappa_2=0.002 * G_REF, dissipative=True,
            reference_rates="caption", n_max=2, n_times=51, periods=0.15)
        assert cmp_.max_deviation < 0.5
