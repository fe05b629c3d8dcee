"""Randomized self-verification suites.

Each suite draws configurations from a seeded generator, evaluates a
cross-check (formula vs formula, formula vs oracle, or an invariant) and
reports the worst deviation it saw together with the configuration that
produced it. The CLI's verify command runs all suites and fails on any
violation; the test suite reuses them with fault injection to prove they
can actually catch a broken build.

Suites deliberately call through the module objects (solid_angle.omega_circ
and friends) instead of binding the functions at import time, so a
monkeypatched implementation is what gets verified.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from . import elliptic, oracle, solid_angle
from .errors import DomainError
from .geometry import CanonicalConfig, CylinderSpec, SourcePoint

__all__ = ["SuiteResult", "DEFAULT_TOLERANCES", "run_suite", "run_all", "SUITES"]

DEFAULT_TOLERANCES = {
    "disc_cross": 1e-10,  # pairwise relative (abs floor 1e-14), three disc paths
    "cyl0_quad": 1e-9,  # absolute, elliptic vs phi-form quadrature
    "cyl0_pair": 1e-10,  # absolute, phi-form vs gamma-form quadrature
    "legendre": 1e-12,  # relative residual of the Legendre relation
    "agm": 1e-13,  # relative, complete_K vs AGM iteration
    "trivial_identities": 1e-14,
    "scale_invariance": 1e-12,  # absolute, omega is dimensionless
    "end_swap": 1e-12,  # absolute
    "omega_range": 0.0,  # any escape from [0, 1] is a failure
    "discontinuity": 1e-3,  # omega_cyl0(L -> 0, d > r) must collapse
}


@dataclass(frozen=True)
class SuiteResult:
    name: str
    checks: int
    max_dev: float
    tolerance: float
    worst: str
    passed: bool

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return (
            f"{tag} {self.name}: {self.checks} checks, "
            f"max deviation {self.max_dev:.3e} (tol {self.tolerance:.3e}) at {self.worst}"
        )


class _Worst:
    def __init__(self):
        self.dev = 0.0
        self.where = "n/a"

    def update(self, dev: float, where: str) -> None:
        if dev > self.dev:
            self.dev = dev
            self.where = where


def _log_uniform(rng: random.Random, lo: float, hi: float) -> float:
    return math.exp(rng.uniform(math.log(lo), math.log(hi)))


def _disc_ratio(rng: random.Random) -> float:
    # d/r in [0.01, 100] staying clear of the equal-distance band
    while True:
        x = _log_uniform(rng, 0.01, 100.0)
        if not 0.999 <= x <= 1.001:
            return x


def _rel(a: float, b: float) -> float:
    scale = max(abs(a), abs(b))
    if scale == 0.0:
        return 0.0
    return abs(a - b) / scale


def _rel_floored(a: float, b: float) -> float:
    # relative deviation with an absolute floor of tol * 1e-4: the disc forms
    # are offsets from 1/4, so as omega -> 0 their agreement is absolute
    # (~1e-15), not relative, and a pure ratio would fail on roundoff alone
    return abs(a - b) / max(abs(a), abs(b), 1e-4)


def suite_disc_cross(points: int, rng: random.Random, tol: float) -> SuiteResult:
    worst = _Worst()
    for _ in range(points):
        cfg = CanonicalConfig(_log_uniform(rng, 0.01, 100.0), 1.0, _disc_ratio(rng))
        a = solid_angle.omega_circ(cfg).value
        b = solid_angle.omega_circ_third_kind(cfg).value
        c = solid_angle.omega_circ_macklin(cfg).value
        dev = max(_rel_floored(a, b), _rel_floored(a, c), _rel_floored(b, c))
        worst.update(dev, f"(L={cfg.L!r}, r=1.0, d={cfg.d!r})")
    return SuiteResult("disc_cross", points, worst.dev, tol, worst.where, worst.dev <= tol)


def suite_cyl0_quad(points: int, rng: random.Random, tol: float) -> SuiteResult:
    worst = _Worst()
    for _ in range(points):
        cfg = CanonicalConfig(_log_uniform(rng, 1e-3, 100.0), 1.0, 1.0 + _log_uniform(rng, 1e-6, 99.0))
        a = solid_angle.omega_cyl0(cfg, method=solid_angle.Method.ELLIPTIC).value
        q = oracle.quad_cyl0_phi(cfg, tol=1e-12)
        worst.update(abs(a - q), f"(L={cfg.L!r}, r=1.0, d={cfg.d!r})")
    return SuiteResult("cyl0_quad", points, worst.dev, tol, worst.where, worst.dev <= tol)


def suite_cyl0_pair(points: int, rng: random.Random, tol: float) -> SuiteResult:
    worst = _Worst()
    for _ in range(points):
        cfg = CanonicalConfig(_log_uniform(rng, 1e-3, 100.0), 1.0, 1.0 + _log_uniform(rng, 1e-6, 99.0))
        p = oracle.quad_cyl0_phi(cfg, tol=1e-12)
        g = oracle.quad_cyl0_gamma(cfg, tol=1e-12)
        worst.update(abs(p - g), f"(L={cfg.L!r}, r=1.0, d={cfg.d!r})")
    return SuiteResult("cyl0_pair", points, worst.dev, tol, worst.where, worst.dev <= tol)


def suite_legendre(points: int, rng: random.Random, tol: float) -> SuiteResult:
    # E(m) K(1-m) + E(1-m) K(m) - K(m) K(1-m) = pi/2
    worst = _Worst()
    for _ in range(points):
        m = rng.uniform(1e-6, 1.0 - 1e-6)
        lhs = (
            elliptic.complete_E(m) * elliptic.complete_K(1.0 - m)
            + elliptic.complete_E(1.0 - m) * elliptic.complete_K(m)
            - elliptic.complete_K(m) * elliptic.complete_K(1.0 - m)
        )
        worst.update(abs(lhs - math.pi / 2) / (math.pi / 2), f"m={m!r}")
    return SuiteResult("legendre", points, worst.dev, tol, worst.where, worst.dev <= tol)


def suite_agm(points: int, rng: random.Random, tol: float) -> SuiteResult:
    worst = _Worst()
    for _ in range(points):
        m = 1.0 - _log_uniform(rng, 1e-10, 1.0)
        dev = _rel(elliptic.complete_K(m), oracle.agm_complete_first_kind(m))
        worst.update(dev, f"m={m!r}")
    return SuiteResult("agm", points, worst.dev, tol, worst.where, worst.dev <= tol)


def suite_trivial_identities(points: int, rng: random.Random, tol: float) -> SuiteResult:
    worst = _Worst()
    for _ in range(max(points, 8)):
        phi = rng.uniform(0.0, math.pi / 2)
        m = rng.uniform(0.0, 0.999999)
        worst.update(abs(elliptic.incomplete_F(phi, 0.0) - phi), f"F(phi|0), phi={phi!r}")
        worst.update(
            _rel(elliptic.incomplete_Pi(0.0, phi, m), elliptic.incomplete_F(phi, m)),
            f"Pi(0;phi|m), phi={phi!r}, m={m!r}",
        )
    worst.update(abs(elliptic.complete_E(1.0) - 1.0), "E(1)")
    worst.update(abs(elliptic.complete_K(0.0) - math.pi / 2), "K(0)")
    worst.update(abs(elliptic.complete_E(0.0) - math.pi / 2), "E(0)")
    return SuiteResult(
        "trivial_identities", max(points, 8) * 2 + 3, worst.dev, tol, worst.where, worst.dev <= tol
    )


def _random_source(rng: random.Random, L: float) -> SourcePoint:
    return SourcePoint(_log_uniform(rng, 0.01, 100.0), rng.uniform(-2.0 * L, 3.0 * L))


def suite_scale_invariance(points: int, rng: random.Random, tol: float) -> SuiteResult:
    worst = _Worst()
    for _ in range(points):
        L = _log_uniform(rng, 0.01, 100.0)
        cyl = CylinderSpec(L, 1.0)
        src = _random_source(rng, L)
        k = _log_uniform(rng, 1e-3, 1e3)
        a = solid_angle.omega_total(cyl, src).value
        b = solid_angle.omega_total(
            CylinderSpec(k * cyl.L, k * cyl.r), SourcePoint(k * src.d, k * src.z)
        ).value
        # absolute: omega is already a dimensionless fraction of 4 pi
        worst.update(abs(a - b), f"(L={L!r}, r=1.0, d={src.d!r}, z={src.z!r}, k={k!r})")
    return SuiteResult("scale_invariance", points, worst.dev, tol, worst.where, worst.dev <= tol)


def suite_end_swap(points: int, rng: random.Random, tol: float) -> SuiteResult:
    # reflecting the source through the cylinder midplane preserves omega
    worst = _Worst()
    for _ in range(points):
        L = _log_uniform(rng, 0.01, 100.0)
        cyl = CylinderSpec(L, 1.0)
        src = _random_source(rng, L)
        a = solid_angle.omega_total(cyl, src).value
        b = solid_angle.omega_total(cyl, SourcePoint(src.d, L - src.z)).value
        worst.update(abs(a - b), f"(L={L!r}, r=1.0, d={src.d!r}, z={src.z!r})")
    return SuiteResult("end_swap", points, worst.dev, tol, worst.where, worst.dev <= tol)


def suite_omega_range(points: int, rng: random.Random, tol: float) -> SuiteResult:
    worst = _Worst()
    checks = 0
    for _ in range(points):
        L = _log_uniform(rng, 0.01, 100.0)
        cyl = CylinderSpec(L, 1.0)
        src = _random_source(rng, L)
        v = solid_angle.omega_total(cyl, src).value
        escape = max(0.0 - v, v - 1.0, 0.0)
        worst.update(escape, f"(L={L!r}, r=1.0, d={src.d!r}, z={src.z!r})")
        checks += 1
    for src in (SourcePoint(0.5, 0.0), SourcePoint(1.0, 0.0), SourcePoint(1.0, 0.5)):
        v = solid_angle.omega_total(CylinderSpec(1.0, 1.0), src).value
        escape = max(0.0 - v, v - 1.0, 0.0)
        worst.update(escape, f"(L=1.0, r=1.0, d={src.d!r}, z={src.z!r})")
        checks += 1
    return SuiteResult("omega_range", checks, worst.dev, tol, worst.where, worst.dev <= tol)


def suite_discontinuity(points: int, rng: random.Random, tol: float) -> SuiteResult:
    # the two iterated limits at the (d=r, L=0) corner disagree: L -> 0 first
    # collapses the lateral view to 0, d -> r first pins it at 1/4
    del points, rng
    on_edge = solid_angle.omega_cyl0(CanonicalConfig(1e-9, 1.0, 1.0)).value
    off_edge = solid_angle.omega_cyl0(CanonicalConfig(1e-9, 1.0, 1.0 + 1e-4)).value
    dev = max(abs(on_edge - 0.25), off_edge)
    where = f"omega(d=r)={on_edge!r}, omega(d=r+1e-4)={off_edge!r} at L=1e-9"
    return SuiteResult("discontinuity", 2, dev, tol, where, dev <= tol)


SUITES = {
    "disc_cross": suite_disc_cross,
    "cyl0_quad": suite_cyl0_quad,
    "cyl0_pair": suite_cyl0_pair,
    "legendre": suite_legendre,
    "agm": suite_agm,
    "trivial_identities": suite_trivial_identities,
    "scale_invariance": suite_scale_invariance,
    "end_swap": suite_end_swap,
    "omega_range": suite_omega_range,
    "discontinuity": suite_discontinuity,
}

# quadrature-heavy suites get a reduced share of the point budget
_POINT_SCALE = {"cyl0_quad": 0.5, "cyl0_pair": 0.2, "scale_invariance": 0.5, "end_swap": 0.5}


def run_suite(name: str, points: int, seed: int, tolerance: float | None = None) -> SuiteResult:
    if name not in SUITES:
        raise DomainError(f"unknown verification suite {name!r}; known: {sorted(SUITES)}")
    tol = DEFAULT_TOLERANCES[name] if tolerance is None else tolerance
    n = max(1, int(points * _POINT_SCALE.get(name, 1.0)))
    # string seeds hash through sha512, so child streams are stable across runs
    rng = random.Random(f"{seed}:{name}")
    return SUITES[name](n, rng, tol)


def run_all(points: int = 200, seed: int = 0, overrides: dict[str, float] | None = None) -> list[SuiteResult]:
    overrides = overrides or {}
    for key in overrides:
        if key not in SUITES:
            raise DomainError(f"unknown tolerance override {key!r}; known: {sorted(SUITES)}")
    return [run_suite(name, points, seed, overrides.get(name)) for name in SUITES]
