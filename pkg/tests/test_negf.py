"""Self-energies, resolvent and the transmission reduction."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mobius_transport import (
    AtomSpec,
    Convention,
    DeviceMatrix,
    LeadSpec,
    PoleError,
    RingSpec,
    SiteIndex,
    broadening,
    build_ring,
    green_function,
    self_energy,
    transmission,
    transmission_matrix,
    validate_attachments,
)


def make_lead(omega=0.0, zeta=1.0, kappa=1.0, j=0, convention=Convention.SURFACE):
    return LeadSpec(omega, zeta, kappa, SiteIndex.upper(j), convention)


def closed_form_surface(omega, zeta, kappa, energy):
    """Independent closed form of the chain surface term, valid off band:
    g = ((E-w) - sign(E-w) sqrt((E-w)^2 - 4 zeta^2)) / (2 zeta^2)."""
    d = energy - omega
    g = (d - np.sign(d) * np.sqrt(d * d - 4.0 * zeta * zeta)) / (2.0 * zeta * zeta)
    return kappa * kappa * g


class TestSelfEnergy:
    def test_band_center_surface(self):
        sigma = self_energy(make_lead(omega=2.0, zeta=1.0, kappa=1.0), 2.0)
        assert sigma.value == pytest.approx(-1j, abs=1e-15)

    def test_band_center_literal(self):
        sigma = self_energy(make_lead(zeta=2.0, kappa=3.0,
                                      convention=Convention.LITERAL), 0.0)
        assert sigma.value == pytest.approx(-3j, abs=1e-15)

    @pytest.mark.parametrize("x", [2.5, 3.0, 10.0, -2.5, -10.0])
    def test_evanescent_matches_closed_form(self, x):
        omega, zeta, kappa = 1.0, 1.5, 2.0
        energy = omega + x * zeta
        sigma = self_energy(make_lead(omega, zeta, kappa), energy)
        assert sigma.value.imag == 0.0
        assert abs(sigma.value) < kappa ** 2 / zeta
        expected = closed_form_surface(omega, zeta, kappa, energy)
        assert sigma.value.real == pytest.approx(expected, rel=1e-12)

    def test_far_field_decay(self):
        # kappa^2 g -> kappa^2 / E far above the band
        lead = make_lead(omega=0.0, zeta=1.0, kappa=1.0)
        values = [abs(self_energy(lead, e).value) for e in (10.0, 100.0, 1000.0)]
        assert values[0] > values[1] > values[2]
        assert values[2] == pytest.approx(1e-3, rel=1e-2)

    def test_zero_coupling(self):
        sigma = self_energy(make_lead(kappa=0.0), 0.3)
        assert sigma.value == 0.0

    @given(
        omega=st.floats(-5, 5), zeta=st.floats(0.1, 4),
        kappa=st.floats(0, 4), x=st.floats(-4, 4),
        conv=st.sampled_from(list(Convention)),
    )
    @settings(max_examples=200, deadline=None)
    def test_retarded_branch(self, omega, zeta, kappa, x, conv):
        sigma = self_energy(make_lead(omega, zeta, kappa, convention=conv),
                            omega + x * zeta)
        assert sigma.value.imag <= 0.0
        if abs(x) > 2.0:
            assert sigma.value.imag == 0.0


class TestBroadening:
    def test_unit_imaginary(self):
        sigma = self_energy(make_lead(omega=2.0, zeta=1.0, kappa=1.0), 2.0)
        assert broadening(sigma).value == pytest.approx(2.0, abs=1e-15)

    def test_evanescent_gives_zero(self):
        sigma = self_energy(make_lead(), 5.0)
        assert broadening(sigma).value == 0.0

    def test_band_center_strong_coupling(self):
        sigma = self_energy(make_lead(zeta=1.0, kappa=3.0), 0.0)
        assert broadening(sigma).value == pytest.approx(18.0, abs=1e-12)


def single_site(eps0=0.0):
    return DeviceMatrix.from_matrix(np.array([[eps0]]))


class TestGreenFunction:
    def test_scalar_device_at_band_center(self):
        # G = 1/(E - 2 sigma) = zeta / (2 i kappa^2) for E = eps0 = omega
        kappa, zeta = 1.3, 0.8
        lead = make_lead(omega=0.0, zeta=zeta, kappa=kappa)
        sigma = self_energy(lead, 0.0)
        g = green_function(single_site(), 0.0, sigma, sigma)
        assert g.shape == (1, 1)
        assert g[0, 0] == pytest.approx(zeta / (2j * kappa ** 2), rel=1e-12)

    def test_closed_system_resolvent_is_real_symmetric(self):
        mat = build_ring(RingSpec(N=3, V=5.0, xi=1.0))
        sigma = self_energy(make_lead(kappa=0.0), 0.25)
        sigma2 = self_energy(make_lead(kappa=0.0, j=1), 0.25)
        g = green_function(mat, 0.25, sigma, sigma2, eta=0.0)
        expected = np.linalg.inv(0.25 * np.eye(6) - mat.matrix)
        assert np.max(np.abs(g - expected)) < 1e-12
        assert np.max(np.abs(g - g.conj().T)) < 1e-12

    def test_residual_of_defining_system(self):
        ring = RingSpec(N=7, V=20.0, xi=1.0)
        mat = build_ring(ring)
        left = make_lead(omega=20.0, zeta=2.0, kappa=2.0, j=0)
        right = make_lead(omega=20.0, zeta=2.0, kappa=2.0, j=3)
        energy = 20.0
        s_l, s_r = self_energy(left, energy), self_energy(right, energy)
        g = green_function(mat, energy, s_l, s_r)
        a = energy * np.eye(14, dtype=complex) - mat.matrix
        a[0, 0] -= s_l.value
        a[3, 3] -= s_r.value
        assert np.max(np.abs(a @ g - np.eye(14))) < 1e-10

    def test_pole_error_at_closed_system_eigenvalue(self):
        # N=2, V=10, xi=1 has an exact eigenvalue at E=10
        mat = build_ring(RingSpec(N=2, V=10.0, xi=1.0))
        sigma = self_energy(make_lead(omega=10.0, zeta=2.0, kappa=0.0), 10.0)
        sigma2 = self_energy(make_lead(omega=10.0, zeta=2.0, kappa=0.0, j=1), 10.0)
        with pytest.raises(PoleError, match="eta"):
            green_function(mat, 10.0, sigma, sigma2, eta=0.0)

    def test_auto_eta_regularises_closed_poles(self):
        mat = build_ring(RingSpec(N=2, V=10.0, xi=1.0))
        sigma = self_energy(make_lead(omega=10.0, zeta=2.0, kappa=0.0), 10.0)
        sigma2 = self_energy(make_lead(omega=10.0, zeta=2.0, kappa=0.0, j=1), 10.0)
        g = green_function(mat, 10.0, sigma, sigma2)
        assert np.all(np.isfinite(g))


def odd_ring_device(kappa=2.0, convention=Convention.SURFACE):
    ring = RingSpec(N=7, V=20.0, xi=1.0)
    left = make_lead(20.0, 2.0, kappa, 0, convention)
    right = make_lead(20.0, 2.0, kappa, 3, convention)
    return validate_attachments(ring, left, right)


class TestTransmission:
    def test_single_site_resonance(self):
        # Gamma = 2 kappa^2/zeta each, |G|^2 = zeta^2/(4 kappa^4): T = 1
        lead_l = make_lead(omega=0.0, zeta=1.0, kappa=0.9)
        lead_r = make_lead(omega=0.0, zeta=1.0, kappa=0.9)
        t = transmission_matrix(single_site(), lead_l, lead_r, 0.0)
        assert t == pytest.approx(1.0, abs=1e-12)

    def test_zero_coupling_blocks(self):
        device = odd_ring_device(kappa=0.0)
        for energy in np.linspace(18.0, 22.0, 9):
            assert transmission(device, energy) == 0.0

    def test_outside_lead_band_is_exactly_zero(self):
        device = odd_ring_device()
        for energy in (15.99, 24.01, 100.0, -40.0):
            assert transmission(device, energy) == 0.0

    def test_bounded_by_unity(self):
        rng = np.random.default_rng(7)
        device = odd_ring_device()
        for energy in rng.uniform(16.0, 24.0, 200):
            t = transmission(device, float(energy))
            assert 0.0 <= t <= 1.0 + 1e-9

    @pytest.mark.parametrize("convention", list(Convention))
    def test_left_right_trace_identity(self, convention):
        device = odd_ring_device(convention=convention)
        mat = device.device_matrix()
        rng = np.random.default_rng(11)
        for energy in rng.uniform(18.0, 22.0, 25):
            s_l = self_energy(device.left, float(energy))
            s_r = self_energy(device.right, float(energy))
            g = green_function(mat, float(energy), s_l, s_r)
            gl, gr = broadening(s_l).value, broadening(s_r).value
            t_lr = gl * gr * abs(g[0, 3]) ** 2
            t_rl = gr * gl * abs(g[3, 0]) ** 2
            assert abs(t_lr - t_rl) < 1e-12

    def test_even_ring_symmetric_leads_reciprocal(self):
        # symmetric even device: the two incident-direction energies give
        # the same transmission down to solver roundoff
        ring = RingSpec(N=6, V=20.0, xi=1.0)
        left = make_lead(20.0, 2.0, 2.0, 0)
        right = make_lead(20.0, 2.0, 2.0, 3)
        device = validate_attachments(ring, left, right)
        for k in np.linspace(0.3, np.pi - 0.3, 21):
            e_plus = 20.0 - 2.0 * np.cos(k - np.pi / 6)
            e_minus = 20.0 - 2.0 * np.cos(-k - np.pi / 6)
            diff = abs(transmission(device, e_plus) - transmission(device, e_minus))
            assert diff < 1e-9

    def test_atom_bearing_device(self):
        ring = RingSpec(N=5, V=20.0, xi=1.0)
        left = make_lead(20.0, 2.0, 3.0, 0)
        right = make_lead(20.0, 2.0, 3.0, 2)
        atom = AtomSpec(omega_a=20.5, gamma=1.0, n=2)
        device = validate_attachments(ring, left, right, atom)
        # exact antiresonance when the photon hits the atom frequency and
        # the atom sits in the right attachment cavity
        assert transmission(device, 20.5) < 1e-25
        assert transmission(device, 21.1) > 1e-3
