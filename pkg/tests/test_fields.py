import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gainslab import (
    Polarization,
    SingularFieldContext,
    energy_density,
    energy_density_from_fields,
    envelope_functions,
    field_sample,
    parity_report,
    poynting,
    poynting_angle_deg,
    poynting_from_fields,
    singular_fields,
    tilde_theta_deg,
    u_pm,
)

L = 400e-6

complex_u = st.builds(
    complex,
    st.floats(1.2, 6.0),
    st.floats(-1e-2, -1e-6),
)
depths = st.floats(0.0, 1.0)


@pytest.fixture(scope="module")
def contexts(ss20_te, ss20_tm, ss80_te, ss80_tm):
    return {
        "te20": SingularFieldContext(ss20_te),
        "tm20": SingularFieldContext(ss20_tm),
        "te80": SingularFieldContext(ss80_te),
        "tm80": SingularFieldContext(ss80_tm),
    }


class TestUPm:
    def test_endpoints(self):
        u = 3.6 - 1e-4j
        assert u_pm(u, 0.0, +1) == pytest.approx(u, rel=1e-14)
        assert u_pm(u, 1.0, +1) == pytest.approx(u, rel=1e-14)
        assert u_pm(u, 0.0, -1) == pytest.approx(-1.0, rel=1e-14)
        assert u_pm(u, 1.0, -1) == pytest.approx(1.0, rel=1e-14)

    def test_midpoint(self):
        u = 3.6 - 1e-4j
        # geometric mean of u-1 and u+1 at s = 1/2, and exact odd zero
        assert u_pm(u, 0.5, +1) == pytest.approx(
            np.sqrt(np.complex128(u * u - 1.0)), rel=1e-14)
        assert abs(u_pm(u, 0.5, -1)) < 1e-14

    @settings(max_examples=200, deadline=None)
    @given(complex_u, depths)
    def test_parity(self, u, s):
        plus = u_pm(u, s, +1)
        minus = u_pm(u, s, -1)
        assert u_pm(u, 1.0 - s, +1) == pytest.approx(plus, rel=1e-12,
                                                     abs=1e-12)
        assert u_pm(u, 1.0 - s, -1) == pytest.approx(-minus, rel=1e-12,
                                                     abs=1e-12)

    @settings(max_examples=100, deadline=None)
    @given(complex_u, depths)
    def test_sum_is_power_product(self, u, s):
        # sum/difference recover the two defining power products
        first = (u - 1.0) ** (1.0 - s) * (u + 1.0) ** s
        second = (u - 1.0) ** s * (u + 1.0) ** (1.0 - s)
        assert u_pm(u, s, +1) + u_pm(u, s, -1) == pytest.approx(
            first, rel=1e-12)
        assert u_pm(u, s, +1) - u_pm(u, s, -1) == pytest.approx(
            second, rel=1e-12)

    def test_rejects_degenerate_and_out_of_range(self):
        with pytest.raises(ValueError):
            u_pm(1.0, 0.5, +1)
        with pytest.raises(ValueError):
            u_pm(3.4, 1.5, +1)
        with pytest.raises(ValueError):
            u_pm(3.4, 0.5, 2)


class TestEnvelopes:
    def test_outgoing_outside(self, contexts):
        ctx = contexts["te20"]
        kz = ctx.k_z
        for z in (-3e-6, L + 3e-6):
            f_plus, f_minus, g_plus = envelope_functions(
                ctx.u, ctx.n_tilde, z, L, kz)
            expected = (np.exp(-1j * kz * z) if z < 0
                        else np.exp(1j * kz * (z - L)))
            for f in (f_plus, f_minus, g_plus):
                assert complex(f) == pytest.approx(expected, rel=1e-12)

    def test_f_plus_continuous_at_faces(self, contexts):
        ctx = contexts["tm20"]
        eps = 1e-9 * L
        for z0 in (0.0, L):
            f_lo, _, g_lo = envelope_functions(ctx.u, ctx.n_tilde, z0 - eps,
                                               L, ctx.k_z)
            f_hi, _, g_hi = envelope_functions(ctx.u, ctx.n_tilde, z0 + eps,
                                               L, ctx.k_z)
            assert complex(f_lo) == pytest.approx(complex(f_hi), rel=1e-3)

    def test_f_minus_sign_jump(self, contexts):
        # the piecewise odd envelope steps from +1 (outside) to -1 (inside)
        # across z = 0 while being continuous at z = L
        ctx = contexts["te20"]
        eps = 1e-12 * L
        _, out_side, _ = envelope_functions(ctx.u, ctx.n_tilde, -eps, L,
                                            ctx.k_z)
        _, in_side, _ = envelope_functions(ctx.u, ctx.n_tilde, eps, L,
                                           ctx.k_z)
        assert complex(out_side) == pytest.approx(1.0, rel=1e-6)
        assert complex(in_side) == pytest.approx(-1.0, rel=1e-6)
        _, lo, _ = envelope_functions(ctx.u, ctx.n_tilde, L - eps, L, ctx.k_z)
        _, hi, _ = envelope_functions(ctx.u, ctx.n_tilde, L + eps, L, ctx.k_z)
        assert complex(lo) == pytest.approx(complex(hi), rel=1e-6)


class TestSingularFields:
    def test_te_component_pattern(self, contexts):
        E, H = singular_fields(contexts["te20"], 0.2e-6,
                               np.linspace(-L, 2 * L, 31))
        assert np.all(E[..., 0] == 0) and np.all(E[..., 2] == 0)
        assert np.all(H[..., 1] == 0)
        assert np.all(np.abs(E[..., 1]) > 0)

    def test_tm_component_pattern(self, contexts):
        E, H = singular_fields(contexts["tm20"], 0.0, 0.3 * L)
        assert E[1] == 0 and H[0] == 0 and H[2] == 0
        assert abs(H[1]) > 0 and abs(E[0]) > 0

    def test_left_field_is_pure_outgoing(self, contexts):
        # on the left the wave moves toward -z: amplitude constant in z,
        # phase advancing as exp(-i k_z z)
        ctx = contexts["te80"]
        z = np.array([-1e-6, -2e-6, -5e-6])
        E, _ = singular_fields(ctx, 0.0, z)
        mags = np.abs(E[:, 1])
        assert mags == pytest.approx(abs(ctx.b0), rel=1e-12)
        phases = E[:, 1] * np.exp(1j * ctx.k_z * z)
        assert phases == pytest.approx(phases[0], rel=1e-12)

    def test_amplitude_scales_linearly(self, ss20_tm):
        one = SingularFieldContext(ss20_tm, b0=1.0)
        two = SingularFieldContext(ss20_tm, b0=2.0j)
        E1, H1 = singular_fields(one, 0.0, 0.4 * L)
        E2, H2 = singular_fields(two, 0.0, 0.4 * L)
        assert E2 == pytest.approx(2.0j * E1)
        assert H2 == pytest.approx(2.0j * H1)


class TestPoynting:
    def test_outside_directions(self, contexts):
        for name, ctx in contexts.items():
            theta = ctx.point.theta_deg
            assert poynting_angle_deg(ctx, -1e-6) == pytest.approx(
                180.0 - theta, abs=1e-10)
            assert poynting_angle_deg(ctx, L + 1e-6) == pytest.approx(
                theta, abs=1e-10)

    def test_outside_magnitude(self, contexts):
        for ctx in contexts.values():
            S = poynting(ctx, np.array([-1e-6]))[0]
            assert np.linalg.norm(S) == pytest.approx(ctx.poynting_out,
                                                      rel=1e-12)

    def test_midplane_flow_is_along_interface(self, contexts):
        for ctx in contexts.values():
            S = poynting(ctx, np.array([L / 2]))[0]
            assert abs(S[2]) < 1e-12 * ctx.poynting_out
            assert S[0] > 0
            assert poynting_angle_deg(ctx, L / 2) == pytest.approx(90.0)

    def test_normal_incidence_midplane_stagnates(self):
        from gainslab import solve_singularity
        p = solve_singularity(3.4, 0.0, L, Polarization.TE,
                              target_wavelength=1500e-9)
        S = poynting(SingularFieldContext(p), np.array([L / 2]))[0]
        assert np.linalg.norm(S) < 1e-12 * abs(p.k)

    def test_matches_cross_product_everywhere(self, contexts):
        z = np.linspace(0.0, L, 101)
        for ctx in contexts.values():
            closed = poynting(ctx, z)
            direct = poynting_from_fields(ctx, 0.0, z)
            assert np.max(np.abs(closed - direct)) < 1e-12 * np.max(
                np.abs(closed))

    def test_interior_bends_toward_interface(self, contexts):
        # refraction into a dense medium: the interior flow angle at the
        # exit face is much closer to the normal scaled by the TM formula
        ctx = contexts["tm20"]
        assert tilde_theta_deg(ctx) == pytest.approx(1.8034, abs=5e-4)
        assert tilde_theta_deg(ctx) < ctx.point.theta_deg


class TestEnergyDensity:
    def test_outside_value(self, contexts):
        for ctx in contexts.values():
            assert energy_density(ctx, -1e-6) == pytest.approx(
                ctx.energy_out, rel=1e-12)
            assert energy_density(ctx, L + 1e-6) == pytest.approx(
                ctx.energy_out, rel=1e-12)

    def test_matches_field_assembly(self, contexts):
        z = np.linspace(0.0, L, 101)
        for ctx in contexts.values():
            closed = energy_density(ctx, z)
            direct = energy_density_from_fields(ctx, 0.0, z)
            assert np.max(np.abs(closed - direct)) < 1e-12 * np.max(closed)

    def test_interior_minimum_at_midplane(self, contexts):
        z = np.linspace(0.0, L, 201)
        for ctx in contexts.values():
            u = energy_density(ctx, z)
            assert np.argmin(u) == 100

    def test_steep_tm_interior_below_exterior(self, contexts):
        z = np.linspace(0.0, L, 201)
        ratio = energy_density(contexts["tm80"], z) / contexts[
            "tm80"].energy_out
        assert np.all(ratio < 1.0)

    def test_other_modes_exceed_exterior_somewhere(self, contexts):
        z = np.linspace(0.0, L, 201)
        for name in ("te20", "tm20", "te80"):
            ratio = energy_density(contexts[name], z) / contexts[
                name].energy_out
            assert np.max(ratio) > 1.0


class TestDiagnostics:
    def test_parity_report(self, contexts):
        z = np.linspace(0.0, L, 64)
        for ctx in contexts.values():
            report = parity_report(ctx, z)
            assert report["max_x_asymmetry"] < 1e-12
            assert report["max_z_antisymmetry"] < 1e-12
            assert report["max_u_asymmetry"] < 1e-12

    def test_parity_rejects_exterior_grid(self, contexts):
        with pytest.raises(ValueError):
            parity_report(contexts["te20"], np.array([-1e-6, 0.0]))

    def test_field_sample_assembly(self, contexts):
        ctx = contexts["te20"]
        sample = field_sample(ctx, 1e-6, 0.25 * L)
        assert sample.E.shape == (3,) and sample.H.shape == (3,)
        assert sample.S[0] > 0
        assert sample.u > 0
        direct = 0.5 * np.real(np.cross(sample.E, np.conj(sample.H)))
        assert sample.S == pytest.approx(direct, rel=1e-12)
