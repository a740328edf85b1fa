"""Long-range channel models and boundary-phase bookkeeping.

Two models are implemented:

* ``coulomb``: an attractive -1/r potential outside the reaction zone
  r < r0. Closed channels (kinetic energy below zero) carry an effective
  quantum number nu = (-2 eps)^(-1/2); the decaying channel wave picks the
  boundary phase theta = -pi*nu (mod pi).
* ``hard_wall``: a free region terminated by an infinite wall at r = L,
  restricted to s-wave channels where the pair (sin kr, -cos kr)/sqrt(k)
  is closed form. Here theta = -kL (mod pi).

The sign convention ties together three contracts that must agree: the
unit Wronskian W(f, g) = +1 of the basis pair, the secular system
[K(E) + R(E)] Z = 0 with R = tan(Theta), and the requirement that
F = cos(theta) f - sin(theta) g satisfies the outer boundary condition at
every energy. Only theta = -pi*nu (resp. -kL) mod pi satisfies all three
at once.

For sign-stable root scanning the phase is also exposed unfolded, through
nu itself: cos(pi nu) and sin(pi nu) are continuous in energy, while the
folded representative in (-pi/2, pi/2] jumps by pi at half-integers.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import OpenChannel, ValidationError
from .grids import RadialGrid, log_grid, uniform_grid

COULOMB = "coulomb"
HARD_WALL = "hard_wall"

# Coulomb log grids never start exactly at r = 0.
R_MIN_FLOOR = 1e-2

# Default mesh steps; chosen so the integrator phase error stays orders of
# magnitude below the 1e-8 overlap tolerances (see tests/test_radial_coulomb).
DEFAULT_STEP_X = 1e-4
DEFAULT_STEP_R = 1e-3


@dataclass(frozen=True)
class ChannelSet:
    """Channel thresholds (hartree, ascending) and angular momenta."""

    thresholds: np.ndarray
    angular_momentum: np.ndarray

    def __post_init__(self):
        t = np.atleast_1d(np.asarray(self.thresholds, dtype=float))
        l = np.atleast_1d(np.asarray(self.angular_momentum, dtype=int))
        object.__setattr__(self, "thresholds", t)
        object.__setattr__(self, "angular_momentum", l)
        if t.size < 1:
            raise ValidationError("need at least one channel")
        if l.size != t.size:
            raise ValidationError("thresholds and angular momenta differ in length")
        if np.any(np.diff(t) < 0):
            raise ValidationError("thresholds must be ascending")
        if np.any(l < 0):
            raise ValidationError("angular momenta must be >= 0")

    @property
    def count(self) -> int:
        return int(self.thresholds.size)


@dataclass(frozen=True)
class LongRangeModel:
    """Radial problem outside the reaction zone: kind, cutoff r0 and grid."""

    kind: str
    r0: float
    grid: RadialGrid
    wall_radius: float | None = None

    def __post_init__(self):
        if self.kind not in (COULOMB, HARD_WALL):
            raise ValidationError(f"unknown model kind {self.kind!r}")
        if self.r0 < 0.0:
            raise ValidationError("r0 must be >= 0")
        if self.kind == HARD_WALL:
            if self.wall_radius is None or self.wall_radius <= self.r0:
                raise ValidationError("hard wall needs wall_radius > r0")

    def potential(self, r: np.ndarray) -> np.ndarray:
        """Long-range potential without the centrifugal term."""
        r = np.asarray(r, dtype=float)
        if self.kind == COULOMB:
            return -1.0 / r
        return np.zeros_like(r)

    def check_angular_momentum(self, l: int) -> None:
        if self.kind == HARD_WALL and l != 0:
            raise ValidationError("hard-wall channels are s-wave only (l = 0)")


def coulomb_model(r0: float, r_max: float, step_x: float = DEFAULT_STEP_X) -> LongRangeModel:
    r_min = max(r0, R_MIN_FLOOR)
    return LongRangeModel(COULOMB, r0, log_grid(r_min, r_max, step_x))


def hard_wall_model(r0: float, wall_radius: float, step: float = DEFAULT_STEP_R) -> LongRangeModel:
    grid = uniform_grid(r0, wall_radius, step)
    return LongRangeModel(HARD_WALL, r0, grid, wall_radius=wall_radius)


def coulomb_r_max(nu_max: float, safety: float = 3.0) -> float:
    """Outer radius large enough that the decaying tail is fully resolved.

    safety * (outer turning point 2 nu^2) dominates for nu >~ 15; the
    additive term keeps the WKB tail action above ~60 for small nu.
    """
    return max(safety * 2.0 * nu_max**2, 2.0 * nu_max**2 + 60.0 * nu_max)


# -- phase index ---------------------------------------------------------------

def phase_index(model: LongRangeModel, eps) -> np.ndarray | float:
    """Phase index nu for kinetic energy eps.

    coulomb: nu = (-2 eps)^(-1/2), defined for closed channels (eps < 0);
    hard_wall: nu = k L / pi with k = sqrt(2 eps), defined for eps > 0.
    Hydrogenic levels (resp. wall modes) sit at integer nu.
    """
    eps_arr = np.asarray(eps, dtype=float)
    if model.kind == COULOMB:
        if np.any(eps_arr >= 0.0):
            raise OpenChannel("coulomb channel must be closed (kinetic energy < 0)")
        nu = (-2.0 * eps_arr) ** -0.5
    else:
        if np.any(eps_arr <= 0.0):
            raise OpenChannel("hard-wall channel needs positive kinetic energy")
        nu = np.sqrt(2.0 * eps_arr) * model.wall_radius / np.pi
    return nu if np.ndim(eps) else float(nu)


def split_phase_index(nu):
    """Split nu into the nearest integer n and remainder m in [-1/2, 1/2).

    The split is exact in floating point, so sin(pi nu) = (-1)^n sin(pi m)
    holds to full precision even for large nu.
    """
    nu = np.asarray(nu, dtype=float)
    n = np.floor(nu + 0.5)
    m = nu - n
    return n, m


def folded_trig(nu):
    """(cos theta, sin theta) for the folded phase theta = -pi*m in (-pi/2, pi/2]."""
    _, m = split_phase_index(nu)
    return np.cos(np.pi * m), -np.sin(np.pi * m)


def continuous_trig(nu):
    """(cos(pi nu), -sin(pi nu)), continuous in energy; used by the root scan."""
    n, m = split_phase_index(nu)
    sign = np.where(np.asarray(n, dtype=int) % 2 == 0, 1.0, -1.0)
    return sign * np.cos(np.pi * m), -sign * np.sin(np.pi * m)


def folded_theta(nu):
    """Boundary phase folded into (-pi/2, pi/2]."""
    _, m = split_phase_index(nu)
    return -np.pi * m


def effective_q_log(model: LongRangeModel, eps: float, l: int, x: np.ndarray) -> np.ndarray:
    """q(x) for the transformed equation y'' = q y on the log mesh x = ln r.

    With u = sqrt(r) y the radial equation -u''/2 + V_eff u = eps u maps to
    y'' = [2 r^2 (V - eps) + (l + 1/2)^2] y.
    """
    r = np.exp(x)
    return 2.0 * r * r * (model.potential(r) - eps) + (l + 0.5) ** 2


def outer_turning_point(eps: float, l: int) -> float:
    """Outer zero of q(x) for the Coulomb model (classically allowed boundary)."""
    nu2 = -1.0 / (2.0 * eps)
    disc = max(0.0, 1.0 - (l + 0.5) ** 2 / nu2)
    return nu2 * (1.0 + np.sqrt(disc))
