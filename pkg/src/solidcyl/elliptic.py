"""Legendre elliptic integrals on Carlson symmetric forms.

Everything here uses the PARAMETER convention: the second argument of K, E,
F, Pi is

    m = k**2 = sin(alpha)**2

where k is the modulus and alpha the modular angle. Conversions:

    K(m)       = F(pi/2 | m)
    F(phi | m) = integral_0^phi dt / sqrt(1 - m sin^2 t)
    E(phi | m) = integral_0^phi sqrt(1 - m sin^2 t) dt
    Pi(n; phi | m) = integral_0^phi dt / ((1 - n sin^2 t) sqrt(1 - m sin^2 t))

A caller holding a modulus k must pass m = k*k; a caller holding a modular
angle alpha must pass m = sin(alpha)**2. Mixing conventions is the classic
silent bug with these functions, hence the reminder.

The accuracy-bearing backend is Carlson's duplication theorem applied to the
symmetric forms R_F, R_C, R_D, R_J (scalar double precision, fixed machine
epsilon termination, not configurable). The Legendre-style wrappers reduce to

    F(phi|m)       = sin(phi) R_F(cos^2 phi, 1 - m sin^2 phi, 1)
    E(phi|m)       = F(phi|m) - (m/3) sin^3(phi) R_D(cos^2 phi, 1 - m sin^2 phi, 1)
    Pi(n; phi|m)   = F(phi|m) + (n/3) sin^3(phi)
                       R_J(cos^2 phi, 1 - m sin^2 phi, 1, 1 - n sin^2 phi)

with 1 - m sin^2 phi evaluated as (1 - m) + m cos^2 phi so the dangerous
corner m -> 1, phi -> pi/2 keeps full precision.

Delivered relative accuracy is a few ulp for R_F/R_D and slightly worse for
R_J; the advertised budgets are 1e-13 for K, E, F, incomplete E and 1e-12 for
Pi. Independent cross-checks (AGM, quadrature of the defining integrals,
mpmath) live in the oracle module and the test suite, never on this path.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass

from .errors import DivergentError, DomainError

__all__ = [
    "Parameter",
    "Characteristic",
    "Amplitude",
    "carlson_rf",
    "carlson_rc",
    "carlson_rd",
    "carlson_rj",
    "complete_K",
    "complete_E",
    "complete_Pi",
    "incomplete_F",
    "incomplete_E",
    "incomplete_Pi",
    "complete_K_from_complement",
    "complete_E_from_complement",
    "incomplete_F_from_parts",
    "incomplete_E_from_parts",
    "incomplete_Pi_from_parts",
]

_EPS = sys.float_info.epsilon
# values this far outside the closed domain are treated as roundoff and clamped
_GUARD = 4.0 * _EPS
_HALF_PI = math.pi / 2.0
_MAX_ITER = 200


def _clamp_unit(value: float, name: str) -> float:
    """Snap roundoff-level excursions outside [0, 1] back to the boundary."""
    v = float(value)
    if math.isnan(v) or v < -_GUARD or v > 1.0 + _GUARD:
        raise DomainError(f"{name} must lie in [0, 1] (guard band 4*eps); got {value!r}")
    return min(1.0, max(0.0, v))


@dataclass(frozen=True)
class Parameter:
    """Elliptic parameter m = k^2, clamped to [0, 1] within a 4*eps guard band."""

    m: float

    def __post_init__(self):
        object.__setattr__(self, "m", _clamp_unit(self.m, "parameter m"))


@dataclass(frozen=True)
class Characteristic:
    """Third-kind characteristic n, clamped to [0, 1] within a 4*eps guard band."""

    n: float

    def __post_init__(self):
        object.__setattr__(self, "n", _clamp_unit(self.n, "characteristic n"))


@dataclass(frozen=True)
class Amplitude:
    """Amplitude angle phi in [0, pi/2], clamped within a 4*eps guard band."""

    phi: float

    def __post_init__(self):
        v = float(self.phi)
        if math.isnan(v) or v < -_GUARD or v > _HALF_PI + _GUARD:
            raise DomainError(f"amplitude phi must lie in [0, pi/2]; got {self.phi!r}")
        object.__setattr__(self, "phi", min(_HALF_PI, max(0.0, v)))


def _param(m) -> float:
    return m.m if isinstance(m, Parameter) else Parameter(m).m


def _char(n) -> float:
    return n.n if isinstance(n, Characteristic) else Characteristic(n).n


def _amp(phi) -> float:
    return phi.phi if isinstance(phi, Amplitude) else Amplitude(phi).phi


def _check_rf_args(x: float, y: float, z: float) -> None:
    if x < 0.0 or y < 0.0 or z < 0.0:
        raise DomainError(f"carlson arguments must be nonnegative; got ({x!r}, {y!r}, {z!r})")
    if (x == 0.0) + (y == 0.0) + (z == 0.0) > 1:
        raise DomainError("at most one of x, y, z may be zero (integral diverges)")


def carlson_rf(x: float, y: float, z: float) -> float:
    """Carlson R_F(x,y,z) = (1/2) integral_0^inf dt / sqrt((t+x)(t+y)(t+z)).

    Duplication: the argument triple is repeatedly replaced by
    (x+lam)/4 with lam = sqrt(x)sqrt(y) + sqrt(x)sqrt(z) + sqrt(y)sqrt(z),
    which leaves R_F invariant up to the factor 1/sqrt(4); once the iterates
    agree to the termination criterion a degree-7 Taylor tail is summed.
    Nonnegative arguments, at most one zero.
    """
    x, y, z = float(x), float(y), float(z)
    _check_rf_args(x, y, z)
    A0 = (x + y + z) / 3.0
    q = (3.0 * _EPS) ** (-0.125) * max(abs(A0 - x), abs(A0 - y), abs(A0 - z))
    A, xn, yn, zn = A0, x, y, z
    pow4 = 1.0
    for _ in range(_MAX_ITER):
        if pow4 * q < abs(A):
            break
        sx, sy, sz = math.sqrt(xn), math.sqrt(yn), math.sqrt(zn)
        lam = sx * (sy + sz) + sy * sz
        A = (A + lam) / 4.0
        xn = (xn + lam) / 4.0
        yn = (yn + lam) / 4.0
        zn = (zn + lam) / 4.0
        pow4 /= 4.0
    else:  # pragma: no cover - termination is geometric
        raise DomainError("carlson_rf duplication failed to converge")
    X = (A0 - x) * pow4 / A
    Y = (A0 - y) * pow4 / A
    Z = -X - Y
    E2 = X * Y - Z * Z
    E3 = X * Y * Z
    series = 1.0 + E3 * (1.0 / 14.0 + 3.0 * E3 / 104.0) + E2 * (
        -0.1 + E2 / 24.0 - 3.0 * E3 / 44.0 - 5.0 * E2 * E2 / 208.0 + E2 * E3 / 16.0
    )
    return series / math.sqrt(A)


def carlson_rc(x: float, y: float) -> float:
    """Degenerate form R_C(x,y) = R_F(x,y,y), by closed formulas. x >= 0, y > 0."""
    x, y = float(x), float(y)
    if x < 0.0 or y <= 0.0:
        raise DomainError(f"carlson_rc requires x >= 0 and y > 0; got ({x!r}, {y!r})")
    if x == y:
        return 1.0 / math.sqrt(x)
    if y > x:
        d = y - x
        if x == 0.0:
            return _HALF_PI / math.sqrt(d)
        return math.atan(math.sqrt(d / x)) / math.sqrt(d)
    # atanh(w) with w = sqrt(1 - y/x) is ill-conditioned as w -> 1; expand it
    # through 1 - w^2 = y/x instead: atanh(w) = log1p(w) + log(x/y)/2
    d = x - y
    w = math.sqrt(d / x)
    return (math.log1p(w) + 0.5 * math.log(x / y)) / math.sqrt(d)


def carlson_rd(x: float, y: float, z: float) -> float:
    """Carlson R_D(x,y,z) = (3/2) integral_0^inf dt / (sqrt((t+x)(t+y)) (t+z)^{3/2}).

    x, y >= 0 with at most one zero; z > 0.
    """
    x, y, z = float(x), float(y), float(z)
    if x < 0.0 or y < 0.0 or z <= 0.0:
        raise DomainError(f"carlson_rd requires x, y >= 0 and z > 0; got ({x!r}, {y!r}, {z!r})")
    if x == 0.0 and y == 0.0:
        raise DomainError("carlson_rd diverges when both x and y are zero")
    A0 = (x + y + 3.0 * z) / 5.0
    q = (0.25 * _EPS) ** (-0.125) * max(abs(A0 - x), abs(A0 - y), abs(A0 - z))
    A, xn, yn, zn = A0, x, y, z
    pow4 = 1.0
    acc = 0.0
    for _ in range(_MAX_ITER):
        if pow4 * q < abs(A):
            break
        sx, sy, sz = math.sqrt(xn), math.sqrt(yn), math.sqrt(zn)
        lam = sx * (sy + sz) + sy * sz
        acc += pow4 / (sz * (zn + lam))
        A = (A + lam) / 4.0
        xn = (xn + lam) / 4.0
        yn = (yn + lam) / 4.0
        zn = (zn + lam) / 4.0
        pow4 /= 4.0
    else:  # pragma: no cover
        raise DomainError("carlson_rd duplication failed to converge")
    X = (A0 - x) * pow4 / A
    Y = (A0 - y) * pow4 / A
    Z = -(X + Y) / 3.0
    E2 = X * Y - 6.0 * Z * Z
    E3 = (3.0 * X * Y - 8.0 * Z * Z) * Z
    E4 = 3.0 * (X * Y - Z * Z) * Z * Z
    E5 = X * Y * Z * Z * Z
    series = (
        1.0
        - 3.0 * E2 / 14.0
        + E3 / 6.0
        + 9.0 * E2 * E2 / 88.0
        - 3.0 * E4 / 22.0
        - 9.0 * E2 * E3 / 52.0
        + 3.0 * E5 / 26.0
        - E2 * E2 * E2 / 16.0
        + 3.0 * E3 * E3 / 40.0
        + 3.0 * E2 * E4 / 20.0
        + 45.0 * E2 * E2 * E3 / 272.0
        - 9.0 * (E3 * E4 + E2 * E5) / 68.0
    )
    return pow4 * series / (A * math.sqrt(A)) + 3.0 * acc


def carlson_rj(x: float, y: float, z: float, p: float) -> float:
    """Carlson R_J(x,y,z,p), the third-kind carrier. Circular case only: p > 0.

    x, y, z nonnegative with at most one zero. Each duplication step absorbs a
    piece of the integral through R_C(1, 1 + e_n).
    """
    x, y, z, p = float(x), float(y), float(z), float(p)
    _check_rf_args(x, y, z)
    if p <= 0.0:
        raise DomainError(f"carlson_rj requires p > 0 (circular case); got p={p!r}")
    A0 = (x + y + z + 2.0 * p) / 5.0
    delta = (p - x) * (p - y) * (p - z)
    q = (0.2 * _EPS) ** (-0.125) * max(abs(A0 - x), abs(A0 - y), abs(A0 - z), abs(A0 - p))
    A, xn, yn, zn, pn = A0, x, y, z, p
    pow4 = 1.0
    acc = 0.0
    for _ in range(_MAX_ITER):
        if pow4 * q < abs(A):
            break
        sx, sy, sz, sp = math.sqrt(xn), math.sqrt(yn), math.sqrt(zn), math.sqrt(pn)
        lam = sx * (sy + sz) + sy * sz
        dn = (sp + sx) * (sp + sy) * (sp + sz)
        en = delta * pow4 * pow4 * pow4 / (dn * dn)
        acc += pow4 / dn * carlson_rc(1.0, 1.0 + en)
        A = (A + lam) / 4.0
        xn = (xn + lam) / 4.0
        yn = (yn + lam) / 4.0
        zn = (zn + lam) / 4.0
        pn = (pn + lam) / 4.0
        pow4 /= 4.0
    else:  # pragma: no cover
        raise DomainError("carlson_rj duplication failed to converge")
    X = (A0 - x) * pow4 / A
    Y = (A0 - y) * pow4 / A
    Z = (A0 - z) * pow4 / A
    P = -(X + Y + Z) / 2.0
    E2 = X * Y + X * Z + Y * Z - 3.0 * P * P
    E3 = X * Y * Z + 2.0 * E2 * P + 4.0 * P * P * P
    E4 = (2.0 * X * Y * Z + E2 * P + 3.0 * P * P * P) * P
    E5 = X * Y * Z * P * P
    series = (
        1.0
        - 3.0 * E2 / 14.0
        + E3 / 6.0
        + 9.0 * E2 * E2 / 88.0
        - 3.0 * E4 / 22.0
        - 9.0 * E2 * E3 / 52.0
        + 3.0 * E5 / 26.0
        - E2 * E2 * E2 / 16.0
        + 3.0 * E3 * E3 / 40.0
        + 3.0 * E2 * E4 / 20.0
        + 45.0 * E2 * E2 * E3 / 272.0
        - 9.0 * (E3 * E4 + E2 * E5) / 68.0
    )
    return pow4 * series / (A * math.sqrt(A)) + 6.0 * acc


def _sin_cos2(phi: float) -> tuple[float, float]:
    # phi == pi/2 reduces exactly to the complete case; cos(float(pi/2)) is
    # otherwise a 6e-17 residue that would blur the complete/incomplete split
    if phi == _HALF_PI:
        return 1.0, 0.0
    c = math.cos(phi)
    return math.sin(phi), c * c


# The *_from_parts evaluators take the Carlson arguments directly instead of
# (phi, m, n).  Callers that know exact product expressions for sin(phi),
# cos^2(phi), y = 1 - m sin^2(phi) and p = 1 - n sin^2(phi) must use these:
# rebuilding y or p from a rounded angle or from 1 - n loses up to half the
# significand when the true value is near zero, and that error is NOT damped
# by the integral (dPi/dn blows up as p -> 0).  The (phi, m) wrappers below
# delegate here, so both spellings agree exactly.


def _check_parts(s: float, c2: float, y: float) -> None:
    if not (0.0 <= s <= 1.0) or c2 < 0.0 or y < 0.0:
        raise DomainError(
            f"invalid integrand parts: sin={s!r}, cos^2={c2!r}, y={y!r}"
        )


def complete_K_from_complement(m_prime: float) -> float:
    """K(m) evaluated from m' = 1 - m, exact when the caller knows m' directly."""
    if m_prime < 0.0 or m_prime > 1.0:
        raise DomainError(f"complement must lie in [0, 1]; got {m_prime!r}")
    if m_prime == 0.0:
        raise DivergentError("complete_K requires m < 1: K(m) diverges as m -> 1")
    return carlson_rf(0.0, m_prime, 1.0)


def complete_E_from_complement(m_prime: float) -> float:
    """E(m) evaluated from m' = 1 - m."""
    if m_prime < 0.0 or m_prime > 1.0:
        raise DomainError(f"complement must lie in [0, 1]; got {m_prime!r}")
    if m_prime == 0.0:
        return 1.0
    m = 1.0 - m_prime
    return carlson_rf(0.0, m_prime, 1.0) - (m / 3.0) * carlson_rd(0.0, m_prime, 1.0)


def incomplete_F_from_parts(s: float, c2: float, y: float) -> float:
    """F(phi | m) from s = sin(phi), c2 = cos^2(phi), y = 1 - m sin^2(phi)."""
    _check_parts(s, c2, y)
    if y == 0.0:
        raise DivergentError("incomplete_F diverges at m = 1, phi = pi/2")
    return s * carlson_rf(c2, y, 1.0)


def incomplete_E_from_parts(s: float, c2: float, y: float, m: float) -> float:
    """E(phi | m) from parts; m only scales the R_D term so its rounding is benign."""
    _check_parts(s, c2, y)
    if y == 0.0:
        if c2 == 0.0:
            return 1.0
        raise DomainError("y = 0 with cos^2 > 0 implies m > 1")
    f = s * carlson_rf(c2, y, 1.0)
    if m == 0.0:
        return f
    return f - (m / 3.0) * s * s * s * carlson_rd(c2, y, 1.0)


def incomplete_Pi_from_parts(s: float, c2: float, y: float, p: float, n: float) -> float:
    """Pi(n; phi | m) from parts, with p = 1 - n sin^2(phi) supplied exactly.

    p is the argument that controls the divergence as n -> 1; passing it as a
    ratio of exact products instead of 1 - n is the whole point of this entry.
    """
    _check_parts(s, c2, y)
    if p < 0.0:
        raise DomainError(f"1 - n sin^2(phi) must be >= 0; got {p!r}")
    if p == 0.0:
        raise DivergentError("incomplete_Pi diverges at n = 1, phi = pi/2")
    if y == 0.0:
        raise DivergentError("incomplete_Pi diverges at m = 1, phi = pi/2")
    f = s * carlson_rf(c2, y, 1.0)
    if n == 0.0:
        return f
    return f + (n / 3.0) * s * s * s * carlson_rj(c2, y, 1.0, p)


def complete_K(m) -> float:
    """Complete elliptic integral of the first kind, K(m) = F(pi/2 | m)."""
    m = _param(m)
    if m == 1.0:
        raise DivergentError("complete_K requires m < 1: K(m) diverges as m -> 1")
    return carlson_rf(0.0, 1.0 - m, 1.0)


def complete_E(m) -> float:
    """Complete elliptic integral of the second kind, E(m) = E(pi/2 | m)."""
    m = _param(m)
    return complete_E_from_complement(1.0 - m)


def incomplete_F(phi, m) -> float:
    """Incomplete first-kind integral F(phi | m); m = 1 allowed for phi < pi/2."""
    phi = _amp(phi)
    m = _param(m)
    s, c2 = _sin_cos2(phi)
    return incomplete_F_from_parts(s, c2, (1.0 - m) + m * c2)


def incomplete_E(phi, m) -> float:
    """Incomplete second-kind integral E(phi | m)."""
    phi = _amp(phi)
    m = _param(m)
    s, c2 = _sin_cos2(phi)
    return incomplete_E_from_parts(s, c2, (1.0 - m) + m * c2, m)


def incomplete_Pi(n, phi, m) -> float:
    """Incomplete third-kind integral Pi(n; phi | m) for n, m in [0, 1].

    Diverges (and raises) when n = 1 or m = 1 together with phi = pi/2.
    Any ordering of n and m is accepted; 1 - n sin^2 > 0 keeps R_J in its
    circular case either way.
    """
    n = _char(n)
    phi = _amp(phi)
    m = _param(m)
    s, c2 = _sin_cos2(phi)
    y = (1.0 - m) + m * c2
    p = (1.0 - n) + n * c2
    return incomplete_Pi_from_parts(s, c2, y, p, n)


def complete_Pi(n, m) -> float:
    """Complete third-kind integral Pi(n; m) = Pi(n; pi/2 | m), n < 1, m < 1.

    Same reduction as incomplete_Pi with (sin, cos) = (1, 0), so the two agree
    exactly at phi = pi/2.
    """
    return incomplete_Pi(n, _HALF_PI, m)
