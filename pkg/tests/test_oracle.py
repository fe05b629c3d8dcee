"""Reference-computation checks: quadrature self-consistency and ray casting.

The oracles are validated three ways: against each other (two independent
parametrizations of the same integral), against closed-form limits that need
no elliptic machinery, and against frozen values from earlier runs.
"""

import math

import pytest

from solidcyl import oracle
from solidcyl.elliptic import complete_K
from solidcyl.errors import DomainError, OracleFailure
from solidcyl.geometry import CanonicalConfig, CylinderSpec, SourcePoint
from solidcyl.solid_angle import omega_circ, omega_total

TWO_PI = 2.0 * math.pi


# ------------------------------------------------------------- lateral surface


def test_phi_form_frozen_value():
    got = oracle.quad_cyl0_phi(CanonicalConfig(2.0, 1.0, 2.0), tol=1e-13)
    assert got == pytest.approx(0.072462447677148198, rel=1e-12)


@pytest.mark.parametrize(
    "cfg",
    [
        CanonicalConfig(2.0, 1.0, 2.0),
        CanonicalConfig(0.1, 1.0, 1.5),
        CanonicalConfig(30.0, 1.0, 5.0),
        CanonicalConfig(1.0, 1.0, 1.001),
        CanonicalConfig(5.0, 2.0, 80.0),
    ],
    ids=lambda c: f"L{c.L}r{c.r}d{c.d}",
)
def test_phi_and_gamma_forms_agree(cfg):
    tol = 1e-12
    a = oracle.quad_cyl0_phi(cfg, tol=tol)
    b = oracle.quad_cyl0_gamma(cfg, tol=tol)
    assert abs(a - b) <= 2.0 * tol


def test_phi_form_tangent_limit():
    # at d barely above r the quarter-sphere limit still holds to 1e-6
    got = oracle.quad_cyl0_phi(CanonicalConfig(5.0, 1.0, 1.0 + 1e-14))
    assert got == pytest.approx(0.249999977501089, abs=1e-6)
    assert got == pytest.approx(0.25, abs=1e-6)


def test_phi_form_touching_source():
    got = oracle.quad_cyl0_phi(CanonicalConfig(1.0, 1.0, 1.0))
    assert got == pytest.approx(0.25, rel=1e-12)


def test_phi_form_long_cylinder_is_aperture_fraction():
    # L >> d: the shell fills the whole wedge of azimuths that see the disc
    got = oracle.quad_cyl0_phi(CanonicalConfig(1e4, 1.0, 2.0))
    assert got == pytest.approx(math.asin(0.5) / TWO_PI, abs=3e-9)


def test_quad_preconditions():
    with pytest.raises(DomainError):
        oracle.quad_cyl0_phi(CanonicalConfig(1.0, 1.0, 0.5))
    with pytest.raises(DomainError):
        oracle.quad_cyl0_gamma(CanonicalConfig(1.0, 1.0, 1.0))
    with pytest.raises(DomainError):
        oracle.quad_cyl0_gamma(CanonicalConfig(1.0, 1.0, 0.5))
    with pytest.raises(DomainError):
        oracle.quad_cyl0_phi(CanonicalConfig(0.0, 1.0, 2.0))
    with pytest.raises(DomainError):
        oracle.quad_cyl0_phi(CanonicalConfig(1.0, 1.0, 2.0), tol=1e-14)


# -------------------------------------------------------------- integrand state


def test_integrand_state_endpoints():
    cfg = CanonicalConfig(1.0, 1.0, 2.0)
    phi_o = math.asin(0.5)
    at0 = oracle.integrand_state(cfg, 0.0)
    assert at0.rho_minus == pytest.approx(1.0, rel=1e-15)  # d - r
    assert at0.gamma_minus == pytest.approx(math.pi / 2, rel=1e-15)
    at_end = oracle.integrand_state(cfg, phi_o)
    assert at_end.rho_minus == pytest.approx(math.sqrt(3.0), rel=1e-12)
    assert at_end.gamma_minus == pytest.approx((math.pi / 2 + phi_o) / 2.0, rel=1e-12)


def test_integrand_state_interior_monotone():
    cfg = CanonicalConfig(1.0, 1.0, 3.0)
    phi_o = math.asin(1.0 / 3.0)
    states = [oracle.integrand_state(cfg, f * phi_o) for f in (0.0, 0.25, 0.5, 0.75, 1.0)]
    rhos = [s.rho_minus for s in states]
    gammas = [s.gamma_minus for s in states]
    assert rhos == sorted(rhos)
    assert gammas == sorted(gammas, reverse=True)


def test_integrand_state_rejects_bad_phi():
    cfg = CanonicalConfig(1.0, 1.0, 2.0)
    with pytest.raises(DomainError):
        oracle.integrand_state(cfg, -0.1)
    with pytest.raises(DomainError):
        oracle.integrand_state(cfg, 1.0)  # > phi_o for d = 2r
    with pytest.raises(DomainError):
        oracle.integrand_state(CanonicalConfig(1.0, 1.0, 0.5), 0.1)


# ------------------------------------------------------------------- end discs


def test_disc_on_axis():
    got = oracle.quad_disc(CanonicalConfig(1.0, 1.0, 0.0))
    assert got == pytest.approx(0.5 * (1.0 - 1.0 / math.sqrt(2.0)), abs=1e-9)


def test_disc_equal_distance():
    got = oracle.quad_disc(CanonicalConfig(2.0, 1.0, 1.0))
    assert got == pytest.approx(0.041343289581481701, abs=1e-9)


def test_disc_near_flat_inside():
    got = oracle.quad_disc(CanonicalConfig(0.05, 1.0, 0.5))
    assert got == pytest.approx(omega_circ(CanonicalConfig(0.05, 1.0, 0.5)).value, abs=1e-9)
    assert got > 0.46  # approaching the half-space limit 0.5


def test_disc_reports_failure_not_garbage():
    # integrand too singular for the requested accuracy: refuse, don't lie
    with pytest.raises(OracleFailure):
        oracle.quad_disc(CanonicalConfig(1e-3, 1.0, 0.5), tol=1e-10)


def test_disc_requires_positive_L():
    with pytest.raises(DomainError):
        oracle.quad_disc(CanonicalConfig(0.0, 1.0, 2.0))


# ----------------------------------------------------------------- Monte Carlo


def test_mc_enclosed_hits_everything():
    est = oracle.mc_total(CylinderSpec(3.0, 2.0), SourcePoint(1.0, 1.5), 10_000, seed=7)
    assert est.hit_fraction == 1.0
    assert est.std_error == 0.0


def test_mc_same_seed_is_bit_identical():
    cyl, src = CylinderSpec(3.0, 1.0), SourcePoint(2.0, -1.0)
    a = oracle.mc_total(cyl, src, 50_000, seed=42)
    b = oracle.mc_total(cyl, src, 50_000, seed=42)
    assert a == b


def test_mc_multi_block_run():
    # 1.5e6 samples spans two Philox blocks; must agree with the closed form
    cyl, src = CylinderSpec(3.0, 1.0), SourcePoint(2.0, 1.5)
    est = oracle.mc_total(cyl, src, 1_500_000, seed=0)
    ref = omega_total(cyl, src).value
    assert abs(est.hit_fraction - ref) <= 3.0 * est.std_error


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_mc_three_sigma_agreement(seed):
    cyl, src = CylinderSpec(3.0, 1.0), SourcePoint(2.0, -1.0)
    est = oracle.mc_total(cyl, src, 200_000, seed=seed)
    ref = omega_total(cyl, src).value
    assert abs(est.hit_fraction - ref) <= 3.0 * est.std_error


def test_mc_std_error_formula():
    est = oracle.mc_total(CylinderSpec(1.0, 1.0), SourcePoint(2.0, 0.5), 30_000, seed=9)
    p = est.hit_fraction
    assert est.std_error == math.sqrt(p * (1.0 - p) / est.samples)


def test_mc_error_scales_like_inverse_sqrt_samples():
    cyl, src = CylinderSpec(3.0, 1.0), SourcePoint(2.0, 1.5)
    errs = {n: oracle.mc_total(cyl, src, n, seed=11).std_error for n in (10**5, 10**6, 10**7)}
    for n in (10**5, 10**6):
        ratio = errs[n] / errs[n * 10]
        assert ratio == pytest.approx(math.sqrt(10.0), rel=0.2)


def test_mc_axis_far_source_sees_near_face_cap():
    # from far below on the axis the silhouette is exactly the near disc
    est = oracle.mc_total(CylinderSpec(1.0, 1.0), SourcePoint(0.0, -10.0), 400_000, seed=3)
    cap = 0.5 * (1.0 - 10.0 / math.hypot(10.0, 1.0))
    assert abs(est.hit_fraction - cap) <= 3.0 * est.std_error


def test_mc_rejects_nonpositive_samples():
    with pytest.raises(DomainError):
        oracle.mc_total(CylinderSpec(1.0, 1.0), SourcePoint(2.0, 0.5), 0)
    with pytest.raises(DomainError):
        oracle.mc_total(CylinderSpec(1.0, 1.0), SourcePoint(2.0, 0.5), -5)


# ------------------------------------------------------------------------- AGM


@pytest.mark.parametrize("m", [0.0, 1e-8, 0.1, 0.5, 0.9, 0.99, 1.0 - 1e-12])
def test_agm_matches_carlson_K(m):
    assert oracle.agm_complete_first_kind(m) == pytest.approx(complete_K(m), rel=1e-13)


def test_agm_domain():
    with pytest.raises(DomainError):
        oracle.agm_complete_first_kind(1.0)
    with pytest.raises(DomainError):
        oracle.agm_complete_first_kind(-0.1)
