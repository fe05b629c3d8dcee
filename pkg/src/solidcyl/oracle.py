"""Independent reference computations: quadrature and ray casting.

Everything in this module recomputes solid angles from first principles and
shares no arithmetic with the closed forms in solid_angle; it exists so the
closed forms can be checked against implementations that cannot fail the same
way. Production code must never call into here; consumers are the test suite
and the CLI verify/compute --method={quadrature,montecarlo} paths.

Quadrature forms for the lateral surface (source in the base plane, d >= r):

  phi form:    omega = L/(2 pi) integral_0^phi_o dphi / sqrt(L^2 + rho^2),
               rho(phi) = d cos(phi) - sqrt(r^2 - d^2 sin^2 phi)
  gamma form:  omega = L/(2 pi) integral_gamma_o^{pi/2} dgamma
               [(d^2-r^2)/rho^2 - 1] / sqrt(L^2 + rho^2),
               rho^2(gamma) = (d+r)^2 - 4 d r sin^2 gamma

with phi_o = arcsin(r/d) and gamma_o = (pi/2 + phi_o)/2. Both integrands get
an endpoint-grading substitution (phi = phi_o - u^2, gamma = pi/2 - v^2) so
the adaptive rule sees a smooth integrand at the delicate end. The gamma-form
rho^2 is evaluated as (d-r)^2 + 4 d r cos^2(gamma), which is exact and free of
cancellation near gamma = pi/2.

The disc oracle integrates the projected-area element L dA / rho^3 over polar
disc coordinates directly. The Monte Carlo oracle casts isotropic rays
(uniform cos(theta), uniform azimuth) and intersects each against the finite
cylinder: quadratic interval on the infinite shell intersected with the axial
slab, hit iff the interval reaches positive ray parameter.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .errors import DomainError, OracleFailure
from .geometry import CanonicalConfig, CylinderSpec, SourcePoint

__all__ = [
    "IntegrandState",
    "McEstimate",
    "integrand_state",
    "quad_cyl0_phi",
    "quad_cyl0_gamma",
    "quad_disc",
    "mc_total",
    "agm_complete_first_kind",
]

_TWO_PI = 2.0 * math.pi
_SUBDIV = 10_000  # adaptive subdivision budget before declaring failure
_BLOCK = 1_000_000  # Monte Carlo rays per independent Philox stream


@dataclass(frozen=True)
class IntegrandState:
    """One sample of the change of variables linking the two lateral forms.

    rho_minus is the near-wall chord radius at azimuth phi; gamma_minus is
    the image of phi under the half-angle map gamma = pi/2 - phi_half where
    tan(phi_half) = sin(phi) rho / (r + d - cos(phi) rho). The two
    parametrizations must describe the same radius: rho_minus^2 equals
    (d+r)^2 - 4 d r sin^2(gamma_minus) to roundoff.
    """

    phi: float
    rho_minus: float
    gamma_minus: float


def _rho_minus(phi: float, r: float, d: float) -> float:
    return d * math.cos(phi) - math.sqrt(max(0.0, r * r - (d * math.sin(phi)) ** 2))


def integrand_state(cfg: CanonicalConfig, phi: float) -> IntegrandState:
    L, r, d = cfg.L, cfg.r, cfg.d
    if d < r:
        raise DomainError(f"integrand state requires d >= r; got d={d!r} < r={r!r}")
    phi_o = math.asin(min(1.0, r / d))
    if not 0.0 <= phi <= phi_o:
        raise DomainError(f"phi={phi!r} outside [0, phi_o={phi_o!r}]")
    rho = _rho_minus(phi, r, d)
    phi_half = math.atan2(math.sin(phi) * rho, r + d - math.cos(phi) * rho)
    gamma = math.pi / 2 - phi_half

    lo = d - r
    hi = math.sqrt(max(0.0, (d - r) * (d + r)))
    slack = 1e-12 * max(1.0, d)
    if not lo - slack <= rho <= hi + slack:
        raise OracleFailure(f"rho_minus={rho!r} escaped [{lo!r}, {hi!r}] at phi={phi!r}")
    rho_gamma_sq = (d - r) ** 2 + 4.0 * d * r * math.cos(gamma) ** 2
    if abs(rho_gamma_sq - rho * rho) > 1e-10 * max(1.0, rho * rho):
        raise OracleFailure(
            f"gamma map inconsistent at phi={phi!r}: rho^2={rho * rho!r} vs {rho_gamma_sq!r}"
        )
    return IntegrandState(phi=phi, rho_minus=rho, gamma_minus=gamma)


def _check_quad_pre(cfg: CanonicalConfig, tol: float) -> None:
    if cfg.L <= 0.0:
        raise DomainError(f"quadrature oracle requires L > 0; got L={cfg.L!r}")
    if not tol >= 1e-13:
        raise DomainError(f"tol must be >= 1e-13; got {tol!r}")


def _run_quad(f, a: float, b: float, tol: float, what: str) -> float:
    out = integrate.quad(f, a, b, epsabs=tol, epsrel=tol, limit=_SUBDIV, full_output=1)
    val, abserr = out[0], out[1]
    if len(out) > 3:
        raise OracleFailure(f"{what} did not converge within {_SUBDIV} subdivisions: {out[3]}")
    if abserr > 100.0 * max(tol, tol * abs(val)):
        raise OracleFailure(f"{what} error estimate {abserr!r} exceeds requested tol {tol!r}")
    return val


def quad_cyl0_phi(cfg: CanonicalConfig, tol: float = 1e-12) -> float:
    """Lateral-surface solid angle by adaptive quadrature of the phi form.

    Requires d >= r and L > 0. The substitution phi = phi_o - u^2 grades the
    mesh toward phi_o, where rho has square-root endpoint behavior.
    """
    L, r, d = cfg.L, cfg.r, cfg.d
    if d < r:
        raise DomainError(f"phi-form oracle requires d >= r; got d={d!r} < r={r!r}")
    _check_quad_pre(cfg, tol)
    phi_o = math.asin(min(1.0, r / d))
    if phi_o == 0.0:
        return 0.0

    def f(u: float) -> float:
        rho = _rho_minus(phi_o - u * u, r, d)
        return 2.0 * u / math.hypot(L, rho)

    val = _run_quad(f, 0.0, math.sqrt(phi_o), tol * _TWO_PI / L, "phi-form quadrature")
    return L / _TWO_PI * val


def quad_cyl0_gamma(cfg: CanonicalConfig, tol: float = 1e-12) -> float:
    """Same quantity as quad_cyl0_phi via the gamma parametrization.

    d = r is excluded: gamma_o collapses onto pi/2 there and the bracket
    loses its meaning (the closed form owns that limit).
    """
    L, r, d = cfg.L, cfg.r, cfg.d
    if d <= r:
        raise DomainError(f"gamma-form oracle requires d > r; got d={d!r}, r={r!r}")
    _check_quad_pre(cfg, tol)
    gamma_o = (math.pi / 2 + math.asin(min(1.0, r / d))) / 2.0
    t = d - r

    def f(v: float) -> float:
        cos_g = math.sin(v * v)  # cos(pi/2 - v^2)
        rho_sq = t * t + 4.0 * d * r * cos_g * cos_g
        bracket = 2.0 * r * (t - 2.0 * d * cos_g * cos_g) / rho_sq
        return 2.0 * v * bracket / math.sqrt(L * L + rho_sq)

    val = _run_quad(f, 0.0, math.sqrt(math.pi / 2 - gamma_o), tol * _TWO_PI / L, "gamma-form quadrature")
    return L / _TWO_PI * val


def quad_disc(cfg: CanonicalConfig, tol: float = 1e-10) -> float:
    """End disc by brute-force double quadrature over polar disc coordinates.

    omega = (4 pi)^-1 * 2 * int_0^pi dphi int_0^r ds  L s / R^3
    with R^2 = L^2 + d^2 + s^2 - 2 d s cos(phi). Requires L > 0 (the L = 0
    disc is a discontinuous limit that quadrature cannot see).
    """
    L, r, d = cfg.L, cfg.r, cfg.d
    _check_quad_pre(cfg, tol)
    base = L * L + d * d

    def f(s: float, phi: float) -> float:
        R_sq = base + s * (s - 2.0 * d * math.cos(phi))
        return L * s / (R_sq * math.sqrt(R_sq))

    val, abserr = integrate.dblquad(f, 0.0, math.pi, 0.0, r, epsabs=tol * _TWO_PI, epsrel=tol)
    omega = val / _TWO_PI
    if abserr / _TWO_PI > 100.0 * max(tol, tol * abs(omega)):
        raise OracleFailure(f"disc quadrature error estimate {abserr / _TWO_PI!r} exceeds tol {tol!r}")
    return omega


@dataclass(frozen=True)
class McEstimate:
    """Ray-casting estimate of the whole-surface solid angle."""

    hit_fraction: float
    std_error: float
    samples: int
    seed: int

    def __post_init__(self):
        if not 0.0 <= self.hit_fraction <= 1.0:
            raise DomainError(f"hit_fraction must lie in [0, 1]; got {self.hit_fraction!r}")
        if self.std_error < 0.0 or self.samples < 1:
            raise DomainError("std_error must be >= 0 and samples >= 1")


def mc_total(cyl: CylinderSpec, src: SourcePoint, samples: int, seed: int = 0) -> McEstimate:
    """Isotropic ray caster for the whole closed surface.

    Directions are uniform on the sphere (uniform cos(theta), uniform
    azimuth). A ray hits iff the interval where it is radially inside the
    infinite shell intersects the interval where it is inside the axial slab,
    at some positive ray parameter. Streams are Philox blocks of 10^6 rays,
    block i drawn from the seed generator jumped i times, so a fixed seed
    gives a bit-identical estimate regardless of how blocks are scheduled.
    """
    if samples < 1:
        raise DomainError(f"samples must be >= 1; got {samples!r}")
    L, r = cyl.L, cyl.r
    px, pz = src.d, src.z
    c = px * px - r * r  # radial quadratic constant term (py = 0 by symmetry)

    base = np.random.Philox(key=seed & 0xFFFFFFFFFFFFFFFF)
    hits = 0
    done = 0
    block = 0
    while done < samples:
        n = min(_BLOCK, samples - done)
        g = np.random.Generator(base.jumped(block))
        cos_t = g.uniform(-1.0, 1.0, n)
        az = g.uniform(0.0, _TWO_PI, n)
        sin_t = np.sqrt(np.maximum(0.0, 1.0 - cos_t * cos_t))
        vx = sin_t * np.cos(az)
        vy = sin_t * np.sin(az)
        vz = cos_t

        a = vx * vx + vy * vy
        b = px * vx
        disc = b * b - a * c
        with np.errstate(divide="ignore", invalid="ignore"):
            sq = np.sqrt(np.maximum(0.0, disc))
            rad_lo = (-b - sq) / a
            rad_hi = (-b + sq) / a
            ax_a = (0.0 - pz) / vz
            ax_b = (L - pz) / vz

        vertical = a == 0.0
        empty_rad = ~vertical & (disc < 0.0)
        rad_lo = np.where(vertical, -np.inf if c <= 0.0 else np.inf, rad_lo)
        rad_hi = np.where(vertical, np.inf if c <= 0.0 else -np.inf, rad_hi)
        rad_lo = np.where(empty_rad, np.inf, rad_lo)
        rad_hi = np.where(empty_rad, -np.inf, rad_hi)

        horizontal = vz == 0.0
        in_slab = 0.0 <= pz <= L
        ax_lo = np.where(horizontal, -np.inf if in_slab else np.inf, np.minimum(ax_a, ax_b))
        ax_hi = np.where(horizontal, np.inf if in_slab else -np.inf, np.maximum(ax_a, ax_b))

        lo = np.maximum(rad_lo, ax_lo)
        hi = np.minimum(rad_hi, ax_hi)
        hits += int(np.count_nonzero((lo <= hi) & (hi > 0.0)))
        done += n
        block += 1

    p = hits / samples
    return McEstimate(
        hit_fraction=p,
        std_error=math.sqrt(p * (1.0 - p) / samples),
        samples=samples,
        seed=seed,
    )


def agm_complete_first_kind(m: float) -> float:
    """K(m) by arithmetic-geometric mean iteration; verification use only.

    Quadratically convergent: K(m) = pi / (2 agm(1, sqrt(1-m))), m in [0, 1).
    """
    if not 0.0 <= m < 1.0:
        raise DomainError(f"AGM form requires 0 <= m < 1; got {m!r}")
    a = 1.0
    b = math.sqrt(1.0 - m)
    for _ in range(64):
        if abs(a - b) <= 4.0 * sys.float_info.epsilon * a:
            break
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    else:
        raise OracleFailure(f"AGM failed to converge for m={m!r}")
    return math.pi / (2.0 * a)
