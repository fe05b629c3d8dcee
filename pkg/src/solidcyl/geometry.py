"""Cylinder/source geometry and decomposition into canonical sub-problems.

Conventions: the cylinder is a finite right circular solid of height L and
radius r. The source position is given by its radial distance d from the
cylinder axis and its axial coordinate z, with z = 0 at the near end-circle
plane and z = L at the far one. Everything downstream is evaluated on
canonical configurations (L_eff, r, d) where the source sits in the plane of
one end circle, so an arbitrary position reduces to a short signed sum of

    CYL0  -- lateral surface of height L_eff seen from its own base plane,
    CIRC  -- end disc at axial distance L_eff,
    CONSTANT -- an exact fraction of the sphere, for enclosed/boundary cases.

The case split (after reflecting z -> L - z so only the near half remains):

    d >= r, z <= 0     [+CYL0(L+|z|), -CYL0(|z|), +CIRC(|z|)]
    d >= r, 0 < z < L  [+CYL0(z), +CYL0(L-z)]
    d <  r, z < 0      [+CIRC(|z|)]          (only the near disc is visible)
    d <  r, 0 < z < L  [CONSTANT 1]          (source enclosed)

Exact boundary ties are measure-zero and resolved by documented conventions:
a source on an end face inside the rim (d < r, z in {0, L}) gets the outside
limit 1/2, not the inside limit 1; a source exactly on a rim (d = r,
z in {0, L}) sees the tangent quarter space, 1/4. Both are emitted as
CONSTANT terms because the CYL0/CIRC limits that meet there disagree. A
source on the lateral surface strictly between the end planes needs no
special casing: the CYL0 branch already yields 1/4 + 1/4 = 1/2.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from .errors import DomainError

__all__ = [
    "CylinderSpec",
    "SourcePoint",
    "CanonicalConfig",
    "TermKind",
    "Term",
    "SignedTermList",
    "decompose",
    "scale",
]


def _require_finite(value: float, name: str) -> float:
    v = float(value)
    if not math.isfinite(v):
        raise DomainError(f"{name} must be finite; got {value!r}")
    return v


@dataclass(frozen=True)
class CylinderSpec:
    """Finite right circular cylinder: height L >= 0, radius r > 0."""

    L: float
    r: float

    def __post_init__(self):
        object.__setattr__(self, "L", _require_finite(self.L, "height L"))
        object.__setattr__(self, "r", _require_finite(self.r, "radius r"))
        if self.L < 0.0:
            raise DomainError(f"height L must be >= 0; got {self.L!r}")
        if self.r <= 0.0:
            raise DomainError(f"radius r must be > 0; got {self.r!r}")


@dataclass(frozen=True)
class SourcePoint:
    """Point source at radial distance d >= 0 from the axis, axial coordinate z."""

    d: float
    z: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "d", _require_finite(self.d, "radial distance d"))
        object.__setattr__(self, "z", _require_finite(self.z, "axial coordinate z"))
        if self.d < 0.0:
            raise DomainError(f"radial distance d must be >= 0; got {self.d!r}")


@dataclass(frozen=True)
class CanonicalConfig:
    """Source-in-end-plane configuration (L, r, d).

    L is the axial extent: lateral-surface height for CYL0 terms, source-to-
    disc-plane distance for CIRC terms. d >= r is additionally required by the
    CYL0 evaluators, not here, since CIRC terms are valid for any d >= 0.
    """

    L: float
    r: float
    d: float

    def __post_init__(self):
        object.__setattr__(self, "L", _require_finite(self.L, "axial extent L"))
        object.__setattr__(self, "r", _require_finite(self.r, "radius r"))
        object.__setattr__(self, "d", _require_finite(self.d, "radial distance d"))
        if self.L < 0.0:
            raise DomainError(f"axial extent L must be >= 0; got {self.L!r}")
        if self.r <= 0.0:
            raise DomainError(f"radius r must be > 0; got {self.r!r}")
        if self.d < 0.0:
            raise DomainError(f"radial distance d must be >= 0; got {self.d!r}")


class TermKind(enum.Enum):
    CYL0 = "cyl0"
    CIRC = "circ"
    CONSTANT = "constant"


@dataclass(frozen=True)
class Term:
    """One signed canonical contribution: coefficient * kind(L_eff)."""

    coefficient: int  # +1 or -1
    kind: TermKind
    L_eff: float = 0.0
    constant_value: float = 0.0  # meaningful for kind CONSTANT only

    def __post_init__(self):
        if self.coefficient not in (-1, 1):
            raise DomainError(f"term coefficient must be +1 or -1; got {self.coefficient!r}")
        if self.L_eff < 0.0:
            raise DomainError(f"term L_eff must be >= 0; got {self.L_eff!r}")
        if self.kind is TermKind.CONSTANT and not 0.0 <= self.constant_value <= 1.0:
            raise DomainError(f"constant_value must lie in [0, 1]; got {self.constant_value!r}")

    def describe(self) -> str:
        sign = "+" if self.coefficient > 0 else "-"
        if self.kind is TermKind.CONSTANT:
            return f"{sign}constant({self.constant_value:g})"
        return f"{sign}{self.kind.value}(L_eff={self.L_eff:g})"


@dataclass(frozen=True)
class SignedTermList:
    """Decomposition result: at most three signed canonical terms."""

    cylinder: CylinderSpec
    source: SourcePoint
    terms: tuple[Term, ...] = field(default=())

    def __post_init__(self):
        if not 1 <= len(self.terms) <= 3:
            raise DomainError(f"decomposition must have 1..3 terms; got {len(self.terms)}")

    def __iter__(self):
        return iter(self.terms)

    def describe(self) -> str:
        return " ".join(t.describe() for t in self.terms)


def _constant(cyl: CylinderSpec, src: SourcePoint, value: float) -> SignedTermList:
    return SignedTermList(cyl, src, (Term(1, TermKind.CONSTANT, 0.0, value),))


def decompose(cyl: CylinderSpec, src: SourcePoint) -> SignedTermList:
    """Split an arbitrary source position into canonical signed terms.

    The mirror half z > L/2 is reflected (z -> L - z) first so one code path
    serves both ends; total solid angle is invariant under the end swap.
    """
    L, r = cyl.L, cyl.r
    d, z = src.d, src.z
    if z > L / 2.0:
        z = L - z

    if d < r:
        if z < 0.0:
            return SignedTermList(cyl, src, (Term(1, TermKind.CIRC, -z),))
        if z == 0.0:
            # on an end face: outside limit (inside limit would be 1)
            return _constant(cyl, src, 0.5)
        return _constant(cyl, src, 1.0)

    if d == r and z == 0.0:
        # on a rim: tangent quarter space
        return _constant(cyl, src, 0.25)

    if z <= 0.0:
        return SignedTermList(
            cyl,
            src,
            (
                Term(1, TermKind.CYL0, L - z),
                Term(-1, TermKind.CYL0, -z),
                Term(1, TermKind.CIRC, -z),
            ),
        )
    return SignedTermList(
        cyl,
        src,
        (
            Term(1, TermKind.CYL0, z),
            Term(1, TermKind.CYL0, L - z),
        ),
    )


def scale(cfg: CanonicalConfig, k: float) -> CanonicalConfig:
    """Uniformly rescale all lengths by k > 0; the solid angle is invariant."""
    k = _require_finite(k, "scale factor k")
    if k <= 0.0:
        raise DomainError(f"scale factor k must be > 0; got {k!r}")
    return CanonicalConfig(cfg.L * k, cfg.r * k, cfg.d * k)
