"""Closed-form solid angle of cylinder surfaces at a point source.

All results are normalized: a SolidAngle.value is the fraction of the full
sphere (multiply by 4*pi for steradians). The two canonical building blocks
are evaluated here:

omega_cyl0
    Lateral surface of height L seen from a source in its base plane at
    radial distance d >= r. In terms of the aperture phi_o = arcsin(r/d) and
    the near-wall distance rho(phi) = d cos(phi) - sqrt(r^2 - d^2 sin^2 phi),

        omega = L/(2 pi) * integral_0^phi_o dphi / sqrt(L^2 + rho^2)

    which reduces, with m = 4 r d / (L^2 + (d+r)^2), n = 4 r d / (d+r)^2 and
    gamma_o = (pi/2 + phi_o)/2, to

        omega = (2 pi)^-1 sqrt(1 - m/n) {
                    sqrt(1-n) [Pi(n; m) - Pi(n; gamma_o | m)]
                  - [K(m) - F(gamma_o | m)] }.

omega_circ
    End disc of radius r at axial distance L from the source plane, source at
    radial distance d from the disc axis. The default path uses only first
    and second kind integrals (epsilon = arcsin sqrt((1-n)/(1-m)), m' = 1-m):

        d > r:  1/4 - (2 pi)^-1 n/(1+sqrt(1-n)) sqrt(1-m/n) K(m)
                    - (2 pi)^-1 {[E(m)-K(m)] F(eps|m') + K(m) E(eps|m')}
        d < r:  1/4 - (2 pi)^-1 (1+sqrt(1-n)) sqrt(1-m/n) K(m)
                    + (2 pi)^-1 {[E(m)-K(m)] F(eps|m') + K(m) E(eps|m')}

    The third-kind forms and the Macklin form are kept as cross-check paths;
    all three agree to roundoff away from d = r.

Near-boundary arithmetic: (1-n), (1-m) and (1-m/n) are always computed from
the geometry ((d-r)/(d+r), (L^2+(d-r)^2)/(L^2+(d+r)^2), L/sqrt(L^2+(d+r)^2)),
never as subtractions from 1, so d -> r and L -> 0 keep full precision. The
same applies inside the kernels: every elliptic call goes through the
*_from_parts entries with sin, cos^2, 1 - m sin^2 and 1 - n sin^2 expressed
as exact products of geometry factors (see EllipticParams), never recovered
from a rounded angle. Rebuilding them from the angle costs up to eight
digits near the corners (d -> r, L -> 0) where those factors vanish.

Special values (the formulas above degenerate there, exact limits are used):
omega_cyl0 = 1/4 at d = r with L > 0, and 0 at L = 0; omega_circ at L = 0 is
{0, 1/4, 1/2} for d {>, =, <} r; on axis omega_circ = (1 - L/sqrt(L^2+r^2))/2;
at d = r omega_circ = 1/4 - sqrt(1-m1) K(m1)/(2 pi) with m1 = 4r^2/(L^2+4r^2).
Note omega_cyl0 is discontinuous at the corner (d -> r+, L -> 0).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from . import elliptic
from .elliptic import Amplitude, Characteristic, Parameter
from .errors import DivergentError, DomainError, OnAxisError
from .geometry import CanonicalConfig, CylinderSpec, SignedTermList, SourcePoint, TermKind, decompose

__all__ = [
    "Method",
    "SolidAngle",
    "EllipticParams",
    "MacklinParams",
    "params_from_geometry",
    "macklin_params",
    "method_policy",
    "omega_cyl0",
    "omega_cyl0_series",
    "omega_circ",
    "omega_circ_third_kind",
    "omega_circ_macklin",
    "omega_total",
]

_TWO_PI = 2.0 * math.pi
# heuristic kernel-tolerance x conditioning budget for the closed elliptic forms,
# not a rigorous bound
_ERR_ELLIPTIC = 1e-11
_ERR_SPECIAL = 1e-13
_VALUE_GUARD = 1e-12


class Method(enum.Enum):
    ELLIPTIC = "elliptic"
    SERIES = "series"
    SPECIAL = "special"
    QUADRATURE = "quadrature"
    MONTECARLO = "montecarlo"


@dataclass(frozen=True)
class SolidAngle:
    """Normalized solid angle (fraction of 4*pi) with method tag and error estimate."""

    value: float
    method: Method
    err_estimate: float

    def __post_init__(self):
        band = max(_VALUE_GUARD, 4.0 * self.err_estimate)
        if not -band <= self.value <= 1.0 + band:
            raise DomainError(
                f"solid angle {self.value!r} outside [0, 1] past the error band {band!r}"
            )
        object.__setattr__(self, "value", min(1.0, max(0.0, self.value)))

    @property
    def steradians(self) -> float:
        return 4.0 * math.pi * self.value


@dataclass(frozen=True)
class EllipticParams:
    """Stable parameter bundle shared by the closed forms.

    gamma_o/phi_o exist only for d >= r (lateral-surface geometry), epsilon
    only for m < 1 (equivalently m_prime > 0, which is what the code tests:
    m itself may round up to 1.0 while the complement is still resolved);
    the unused entries are None.

    Besides the angles themselves the bundle carries the Carlson-ready parts
    of each amplitude as exact products of geometry factors:

        sin^2(gamma_o) = (d+r)/2d      cos^2(gamma_o) = (d-r)/2d
        1 - m sin^2(gamma_o) = (L^2 + (d-r)(d+r)) / (L^2 + (d+r)^2)
        1 - n sin^2(gamma_o) = (d-r)/(d+r)
        sin^2(eps) = (d-r)^2 (L^2+(d+r)^2) / ((d+r)^2 (L^2+(d-r)^2))
        cos^2(eps) = 4 r d L^2 / ((d+r)^2 (L^2+(d-r)^2))
        1 - m' sin^2(eps) = n exactly (so no field is needed for it)

    These go straight into the elliptic *_from_parts entries; see the module
    docstring for why.
    """

    m: Parameter
    n: Characteristic
    m_prime: float
    gamma_o: Amplitude | None
    epsilon: Amplitude | None
    phi_o: float | None
    sqrt_one_minus_n: float
    sqrt_one_minus_m_over_n: float
    one_minus_n: float
    sin_gamma_o: float | None
    cos2_gamma_o: float | None
    y_gamma_o: float | None
    p_gamma_o: float | None
    sin_epsilon: float | None
    cos2_epsilon: float | None


@dataclass(frozen=True)
class MacklinParams:
    """Amplitudes of the Macklin disc form; theta always dominates |psi|."""

    alpha: float  # d / L
    beta: float  # r / L
    theta: float
    psi: float

    def __post_init__(self):
        slack = 4.0 * 2.220446049250313e-16
        if not 0.0 <= self.theta <= math.pi / 2 + slack:
            raise DomainError(f"theta must lie in [0, pi/2]; got {self.theta!r}")
        if not abs(self.psi) <= math.pi / 2 + slack:
            raise DomainError(f"psi must lie in [-pi/2, pi/2]; got {self.psi!r}")
        if self.theta + slack < abs(self.psi):
            raise DomainError(f"expected theta >= |psi|; got {self.theta!r} < |{self.psi!r}|")


def params_from_geometry(cfg: CanonicalConfig) -> EllipticParams:
    """Compute m, n and companions from (L, r, d) without 1-x subtractions."""
    L, r, d = cfg.L, cfg.r, cfg.d
    if d == 0.0:
        raise OnAxisError(
            "elliptic parametrization is undefined on the axis (d = 0); "
            "omega_circ handles that case in closed form"
        )
    s = d + r
    t = d - r
    den_m = L * L + s * s
    den_t = L * L + t * t
    n = Characteristic(4.0 * r * d / (s * s))
    m = Parameter(min(4.0 * r * d / den_m, n.n))
    m_prime = den_t / den_m
    sqrt_one_minus_n = abs(t) / s
    one_minus_n = (t / s) * (t / s)
    sqrt_one_minus_m_over_n = L / math.hypot(L, s)

    phi_o = gamma_o = sin_gamma_o = cos2_gamma_o = y_gamma_o = p_gamma_o = None
    if d >= r:
        phi_o = math.asin(min(1.0, r / d))
        gamma_o = Amplitude((math.pi / 2 + phi_o) / 2.0)
        # half-angle of pi/2 + phi_o, so sin^2/cos^2 close over (d +- r)/2d
        sin_gamma_o = min(1.0, math.sqrt(s / (2.0 * d)))
        cos2_gamma_o = t / (2.0 * d)
        y_gamma_o = (L * L + t * s) / den_m
        p_gamma_o = t / s

    epsilon = sin_epsilon = cos2_epsilon = None
    if m_prime > 0.0:
        sin2 = min(1.0, (t * t * den_m) / (s * s * den_t))  # (1-n)/(1-m)
        sin_epsilon = math.sqrt(sin2)
        cos2_epsilon = 4.0 * r * d * L * L / (s * s * den_t)
        epsilon = Amplitude(math.asin(sin_epsilon))

    return EllipticParams(
        m=m,
        n=n,
        m_prime=m_prime,
        gamma_o=gamma_o,
        epsilon=epsilon,
        phi_o=phi_o,
        sqrt_one_minus_n=sqrt_one_minus_n,
        sqrt_one_minus_m_over_n=sqrt_one_minus_m_over_n,
        one_minus_n=one_minus_n,
        sin_gamma_o=sin_gamma_o,
        cos2_gamma_o=cos2_gamma_o,
        y_gamma_o=y_gamma_o,
        p_gamma_o=p_gamma_o,
        sin_epsilon=sin_epsilon,
        cos2_epsilon=cos2_epsilon,
    )


def method_policy(cfg: CanonicalConfig) -> Method:
    """Deterministic route selection for the canonical evaluators.

    SPECIAL whenever an exact limit applies (L = 0, d = r, d = 0); SERIES in
    the near-tangent region sqrt(d^2 - r^2) < L/10 where the elliptic form
    loses digits to cancellation; ELLIPTIC otherwise.
    """
    L, r, d = cfg.L, cfg.r, cfg.d
    if L == 0.0 or d == 0.0 or d == r:
        return Method.SPECIAL
    if d > r and (d - r) * (d + r) < (L * L) / 100.0:
        return Method.SERIES
    return Method.ELLIPTIC


def omega_cyl0(cfg: CanonicalConfig, method: Method | None = None) -> SolidAngle:
    """Lateral surface of height L from a base-plane source at d >= r.

    The result lies in [0, 1/4]. method forces ELLIPTIC or SERIES in the
    regular region; exact limits (L = 0, d = r) are always taken as SPECIAL.
    """
    L, r, d = cfg.L, cfg.r, cfg.d
    if d < r:
        raise DomainError(f"omega_cyl0 requires d >= r (source outside the shell); got d={d!r} < r={r!r}")
    if method not in (None, Method.ELLIPTIC, Method.SERIES):
        raise DomainError(f"omega_cyl0 method must be ELLIPTIC or SERIES; got {method!r}")

    if L == 0.0:
        return SolidAngle(0.0, Method.SPECIAL, 0.0)
    if d == r:
        # rho vanishes identically: a quarter sphere for any L > 0
        return SolidAngle(0.25, Method.SPECIAL, _ERR_SPECIAL)

    route = method if method is not None else method_policy(cfg)
    if route is Method.SERIES:
        return omega_cyl0_series(cfg)

    p = params_from_geometry(cfg)
    n_f = p.n.n
    third = elliptic.incomplete_Pi_from_parts(
        1.0, 0.0, p.m_prime, p.one_minus_n, n_f
    ) - elliptic.incomplete_Pi_from_parts(
        p.sin_gamma_o, p.cos2_gamma_o, p.y_gamma_o, p.p_gamma_o, n_f
    )
    first = elliptic.complete_K_from_complement(p.m_prime) - elliptic.incomplete_F_from_parts(
        p.sin_gamma_o, p.cos2_gamma_o, p.y_gamma_o
    )
    value = p.sqrt_one_minus_m_over_n * (p.sqrt_one_minus_n * third - first) / _TWO_PI
    return SolidAngle(value, Method.ELLIPTIC, _ERR_ELLIPTIC)


def omega_cyl0_series(cfg: CanonicalConfig, terms: int = 3) -> SolidAngle:
    """Large-L series for omega_cyl0, truncated at `terms` in {1, 2, 3}.

    Termwise integration of the defining integral in powers of 1/L^2:

        omega = (2 pi)^-1 { phi_o
                 - 1/2 [ r d cos(phi_o) - r^2 (pi/2 - phi_o) ] / L^2
                 + 3/8 [ r d (d^2 + 2 r^2) cos(phi_o)
                         - r^2 (r^2 + 2 d^2) (pi/2 - phi_o) ] / L^4 - ... }

    Valid for sqrt(d^2 - r^2) < L; err_estimate is the first omitted term's
    magnitude, or the last included one when all three are used (no further
    coefficients are available).
    """
    L, r, d = cfg.L, cfg.r, cfg.d
    if d < r:
        raise DomainError(f"omega_cyl0_series requires d >= r; got d={d!r} < r={r!r}")
    if L <= 0.0:
        raise DivergentError(f"the 1/L^2 expansion has no L = 0 limit; got L={L!r}")
    if terms not in (1, 2, 3):
        raise DomainError(f"terms must be 1, 2 or 3 (three coefficients exist); got {terms!r}")

    x = min(1.0, r / d)
    phi_o = math.asin(x)
    resid = math.acos(x)  # pi/2 - phi_o, without cancellation
    rd_cos = r * math.sqrt(max(0.0, (d - r) * (d + r)))  # r d cos(phi_o)
    inv_L2 = 1.0 / (L * L)

    t1 = phi_o
    t2 = -0.5 * (rd_cos - r * r * resid) * inv_L2
    t3 = 0.375 * (rd_cos * (d * d + 2.0 * r * r) - r * r * (r * r + 2.0 * d * d) * resid) * inv_L2 * inv_L2

    total = t1
    if terms >= 2:
        total += t2
    if terms == 3:
        total += t3
    err = abs((t2, t3, t3)[terms - 1]) / _TWO_PI
    return SolidAngle(max(0.0, total / _TWO_PI), Method.SERIES, err)


def _omega_circ_equal_distance(L: float, r: float) -> float:
    # d = r, L > 0: both complete integrals collapse onto m1 = 4 r^2 / (L^2 + 4 r^2).
    # Work with the complement (L/hypot)^2 so K stays finite when m1 rounds to 1.
    sqrt_m1c = L / math.hypot(L, 2.0 * r)
    m1c = sqrt_m1c * sqrt_m1c
    if m1c == 0.0:
        # sqrt_m1c * K underflows past the last digit of 1/4
        return 0.25
    return 0.25 - sqrt_m1c * elliptic.complete_K_from_complement(m1c) / _TWO_PI


def omega_circ(cfg: CanonicalConfig) -> SolidAngle:
    """End disc of radius r at axial distance L, source at radial distance d.

    Default evaluation uses the first/second-kind form; exact limits (L = 0,
    d = 0, d = r) take their closed expressions.
    """
    L, r, d = cfg.L, cfg.r, cfg.d
    if L == 0.0:
        value = 0.0 if d > r else (0.25 if d == r else 0.5)
        return SolidAngle(value, Method.SPECIAL, 0.0)
    if d == 0.0:
        return SolidAngle(0.5 * (1.0 - L / math.hypot(L, r)), Method.SPECIAL, _ERR_SPECIAL)
    if d == r:
        return SolidAngle(_omega_circ_equal_distance(L, r), Method.SPECIAL, _ERR_SPECIAL)

    p = params_from_geometry(cfg)
    K = elliptic.complete_K_from_complement(p.m_prime)
    E = elliptic.complete_E_from_complement(p.m_prime)
    # the incomplete integrals carry parameter m', so their y = 1 - m' sin^2(eps)
    # collapses to n exactly (m' sin^2(eps) = (d-r)^2/(d+r)^2 algebraically)
    F_eps = elliptic.incomplete_F_from_parts(p.sin_epsilon, p.cos2_epsilon, p.n.n)
    E_eps = elliptic.incomplete_E_from_parts(p.sin_epsilon, p.cos2_epsilon, p.n.n, p.m_prime)
    cross = (E - K) * F_eps + K * E_eps
    s_n = p.sqrt_one_minus_n
    radial = p.sqrt_one_minus_m_over_n * K / _TWO_PI
    if d > r:
        value = 0.25 - (p.n.n / (1.0 + s_n)) * radial - cross / _TWO_PI
    else:
        value = 0.25 - (1.0 + s_n) * radial + cross / _TWO_PI
    return SolidAngle(value, Method.ELLIPTIC, _ERR_ELLIPTIC)


def omega_circ_third_kind(cfg: CanonicalConfig) -> SolidAngle:
    """Cross-check path for omega_circ using complete third-kind integrals.

    Regular region only: L > 0, 0 < d != r (the limits are owned by
    omega_circ).
    """
    L, r, d = cfg.L, cfg.r, cfg.d
    if L <= 0.0:
        raise DomainError(f"omega_circ_third_kind requires L > 0; got L={L!r}")
    if d == 0.0:
        raise OnAxisError("omega_circ_third_kind is undefined on the axis; use omega_circ")
    if d == r:
        raise DivergentError(
            "complete Pi(n; m) diverges at n = 1 (d = r); use omega_circ's equal-distance form"
        )
    p = params_from_geometry(cfg)
    Pi = elliptic.incomplete_Pi_from_parts(1.0, 0.0, p.m_prime, p.one_minus_n, p.n.n)
    K = elliptic.complete_K_from_complement(p.m_prime)
    s = p.sqrt_one_minus_m_over_n
    if d > r:
        value = s * (p.sqrt_one_minus_n * Pi - K) / _TWO_PI
    else:
        value = 0.5 - s * (p.sqrt_one_minus_n * Pi + K) / _TWO_PI
    return SolidAngle(value, Method.ELLIPTIC, _ERR_ELLIPTIC)


def macklin_params(cfg: CanonicalConfig) -> MacklinParams:
    """Amplitudes (theta, psi) of the Macklin disc form; requires L > 0."""
    L, r, d = cfg.L, cfg.r, cfg.d
    if L <= 0.0:
        raise DomainError(f"macklin amplitudes require L > 0; got L={L!r}")
    alpha = d / L
    beta = r / L
    sq1a = math.hypot(1.0, alpha)
    A = math.hypot(1.0, alpha + beta)
    B = beta + sq1a
    C = math.hypot(1.0, alpha - beta)
    theta = math.asin(min(1.0, A / B))
    # sin(psi) = (sqrt(1+alpha^2) - beta)/C, with the difference expanded to
    # its sign-revealing quotient so beta ~ sqrt(1+alpha^2) cannot cancel
    sin_psi = ((1.0 + alpha * alpha) - beta * beta) / ((sq1a + beta) * C)
    psi = math.asin(max(-1.0, min(1.0, sin_psi)))
    return MacklinParams(alpha=alpha, beta=beta, theta=theta, psi=psi)


def omega_circ_macklin(cfg: CanonicalConfig) -> SolidAngle:
    """Second cross-check path for omega_circ (first/second kind throughout).

    With alpha = d/L, beta = r/L and m' = 1 - m:

        4 pi omega = 2 pi + 2 [K(m) - E(m)] [F(theta|m') + F(psi|m')]
                   - 2 K(m) { E(theta|m') + E(psi|m')
                              + 2 beta / (sqrt(1+(alpha+beta)^2)
                                          (beta + sqrt(1+alpha^2))) }

    psi < 0 (source closer than the disc rim is wide) enters through the odd
    extension F(-psi) = -F(psi). d = r is rejected per contract; callers are
    routed to omega_circ's equal-distance form.
    """
    L, r, d = cfg.L, cfg.r, cfg.d
    if L <= 0.0:
        raise DomainError(f"omega_circ_macklin requires L > 0; got L={L!r}")
    if d == r:
        raise DivergentError(
            "omega_circ_macklin rejects d = r; use omega_circ's equal-distance form"
        )
    mp = macklin_params(cfg)
    alpha, beta = mp.alpha, mp.beta
    u = math.hypot(1.0, alpha)
    A = math.hypot(1.0, alpha + beta)
    B = beta + u
    C = math.hypot(1.0, alpha - beta)
    m_prime = (C * C) / (A * A)

    # cos^2 and y = 1 - m' sin^2 of both amplitudes share the factors
    # g_minus = 2 beta (sqrt(1+alpha^2) - alpha) and g_plus with +alpha:
    # B^2 - A^2 = g_minus, B^2 - C^2 = g_plus, A^2 - (sqrt(1+a^2)-beta)^2 = g_plus
    g_minus = 2.0 * beta / (u + alpha)
    g_plus = 2.0 * beta * (u + alpha)

    K = elliptic.complete_K_from_complement(m_prime)
    E = elliptic.complete_E_from_complement(m_prime)

    s_theta = min(1.0, A / B)
    c2_theta = g_minus / (B * B)
    y_theta = g_plus / (B * B)
    F_sum = elliptic.incomplete_F_from_parts(s_theta, c2_theta, y_theta)
    E_sum = elliptic.incomplete_E_from_parts(s_theta, c2_theta, y_theta, m_prime)

    num_psi = (1.0 + alpha * alpha) - beta * beta  # sign of sin(psi)
    s_psi = min(1.0, abs(num_psi) / ((u + beta) * C))
    c2_psi = g_minus / (C * C)
    y_psi = g_plus / (A * A)
    sign = 1.0 if num_psi >= 0.0 else -1.0
    F_sum += sign * elliptic.incomplete_F_from_parts(s_psi, c2_psi, y_psi)
    E_sum += sign * elliptic.incomplete_E_from_parts(s_psi, c2_psi, y_psi, m_prime)

    tail = 2.0 * beta / (A * B)
    omega_4pi = _TWO_PI + 2.0 * (K - E) * F_sum - 2.0 * K * (E_sum + tail)
    return SolidAngle(omega_4pi / (2.0 * _TWO_PI), Method.ELLIPTIC, _ERR_ELLIPTIC)


def omega_total(
    cyl: CylinderSpec,
    src: SourcePoint,
    method: Method | None = None,
    decomposition: SignedTermList | None = None,
) -> SolidAngle:
    """Whole-surface solid angle at an arbitrary source position.

    Decomposes the position (see geometry.decompose) and sums the canonical
    terms. method forces the omega_cyl0 route (ELLIPTIC or SERIES) where the
    region allows it; the reported tag is ELLIPTIC if any term used it, then
    SERIES, then SPECIAL. Pass a precomputed decomposition to avoid repeating
    it.
    """
    dec = decomposition if decomposition is not None else decompose(cyl, src)
    total = 0.0
    err = 0.0
    used: set[Method] = set()
    for term in dec:
        if term.kind is TermKind.CONSTANT:
            total += term.coefficient * term.constant_value
            continue
        sub = CanonicalConfig(term.L_eff, cyl.r, src.d)
        if term.kind is TermKind.CYL0:
            part = omega_cyl0(sub, method=method)
        else:
            part = omega_circ(sub)
        total += term.coefficient * part.value
        err += part.err_estimate
        used.add(part.method)

    if Method.ELLIPTIC in used:
        tag = Method.ELLIPTIC
    elif Method.SERIES in used:
        tag = Method.SERIES
    else:
        tag = Method.SPECIAL
    return SolidAngle(total, tag, err)
