"""Radial channel solutions, boundary phases and overlap evaluators.

Conventions (atomic units throughout):

* The basis pair (f, g) has unit Wronskian W(f, g) = f g' - f' g = +1.
  For the hard wall the pair is closed form, f = sin(kr)/sqrt(k) and
  g = -cos(kr)/sqrt(k). For the Coulomb model f is the regular solution,
  evaluated through Kummer's 1F1 and rescaled to a balanced envelope
  (the overall pair scale is a free smooth convention; balancing keeps
  the common amplitude of the pair free of near-zero dips), and g is the
  partner pinned by the requirement that the decaying combination sits
  exactly at the boundary phase returned by ``theta_phase``.
* The channel wave F = cos(theta) f - sin(theta) g satisfies the outer
  boundary condition at every closed-channel energy. For the Coulomb
  model F is produced by inward integration of the transformed equation
  on the log mesh, then scaled onto the combination through the Wronskian
  identity W(f, F) = -sin(theta), which is exact and stays conditioned
  arbitrarily close to hydrogenic energies.
* Radial overlaps of same-channel waves at different energies reduce to a
  boundary term: <F1|F2> = [F1 F2' - F1' F2](r0) / (2 (eps2 - eps1)).
  The factor 2 follows from -F''/2 + V F = eps F via Green's identity;
  ``quadrature_overlap`` is the independent check of that reduction.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson
from scipy.special import hyp1f1

from . import _kernels
from .errors import (
    BoundaryMismatch,
    ChannelMismatch,
    DegenerateEnergies,
    DegenerateSeed,
    GridMismatch,
    NonUniformGrid,
    NumericalBlowup,
    OpenChannel,
    ValidationError,
)
from .grids import LOGARITHMIC, UNIFORM, RadialGrid
from .models import (
    HARD_WALL,
    LongRangeModel,
    effective_q_log,
    folded_theta,
    folded_trig,
    outer_turning_point,
    phase_index,
)

# WKB action beyond the turning point at which the inward integration starts;
# the tail amplitude there is ~e^-45 of the wave maximum.
_TAIL_ACTION = 45.0

# |sin theta| below which the channel wave is matched directly onto the
# regular solution instead of through the Wronskian identity.
_SIN_SWITCH = 1e-7

# |sin theta| below which the pair partner g switches to the synthetic
# quarter-phase companion (the smooth partner is convention limited there).
_SIN_PAIR_SWITCH = 1e-6

# Pair samples stop once the common amplitude grows e^6 past its oscillatory
# envelope: beyond that the f g' - f' g cancellation cannot resolve 1 in
# float64 and the pair carries no joint information anyway.
_LOG_AMP_GROWTH_CAP = 6.0

_DERIV_STENCIL = np.array(
    [-49.0 / 20.0, 6.0, -15.0 / 2.0, 20.0 / 3.0, -15.0 / 4.0, 6.0 / 5.0, -1.0 / 6.0]
)


@dataclass(frozen=True)
class FGPair:
    """Unit-Wronskian basis pair sampled on (a prefix of) the model grid."""

    l: int
    energy: float
    grid: RadialGrid
    f_values: np.ndarray
    g_values: np.ndarray
    f_r0: float
    g_r0: float
    f_deriv_r0: float
    g_deriv_r0: float
    channel: int = 0


@dataclass(frozen=True)
class ChannelWave:
    """Decaying channel wave F with its boundary data at r0."""

    l: int
    energy: float
    theta: float
    grid: RadialGrid
    values: np.ndarray | None
    F_r0: float
    Fprime_r0: float
    channel: int = 0

    @property
    def boundary_r(self) -> float:
        return self.grid.r_min


# ---------------------------------------------------------------------------
# generic Numerov driver (uniform r grids)
# ---------------------------------------------------------------------------

def numerov_integrate(potential, energy: float, grid: RadialGrid, direction: str,
                      seed) -> np.ndarray:
    """Propagate -u''/2 + V_eff u = eps u across a uniform grid.

    ``potential`` is the effective radial potential, either a callable of r
    or an array on the grid nodes. ``seed`` holds the first two values in
    integration order (at r_min for outward, at r_max for inward). The
    returned samples are always in ascending-r order.
    """
    if grid.spacing_rule != UNIFORM:
        raise NonUniformGrid("numerov_integrate requires a uniform grid")
    if direction not in ("outward", "inward"):
        raise ValidationError("direction must be 'outward' or 'inward'")
    s0, s1 = float(seed[0]), float(seed[1])
    if not (np.isfinite(s0) and np.isfinite(s1)):
        raise ValidationError("seed values must be finite")
    v = potential(grid.nodes) if callable(potential) else np.asarray(potential, dtype=float)
    if v.shape != grid.nodes.shape:
        raise GridMismatch("potential samples do not match the grid")
    if s0 == 0.0 and s1 == 0.0:
        warnings.warn("both seed values are zero; returning the zero solution",
                      DegenerateSeed)
        return np.zeros(grid.size)
    q = 2.0 * (v - energy)
    h = grid.step
    if direction == "outward":
        return _kernels.numerov_uniform(np.ascontiguousarray(q), h, s0, s1)
    y = _kernels.numerov_uniform(np.ascontiguousarray(q[::-1]), h, s0, s1)
    return y[::-1]


def _end_derivative(y: np.ndarray, h: float) -> float:
    """O(h^6) one-sided first derivative at y[0]."""
    return float(np.dot(_DERIV_STENCIL, y[:7]) / h)


# ---------------------------------------------------------------------------
# regular-solution boundary data (Coulomb)
# ---------------------------------------------------------------------------

def coulomb_regular(eps, l: int, r):
    """Value and radial derivative of the regular Coulomb solution.

    Whittaker-M normalization, evaluated through Kummer's confluent series;
    accurate to ~1e-12 relative over the closed-channel range used here.
    """
    eps = np.asarray(eps, dtype=float)
    if np.any(eps >= 0.0):
        raise OpenChannel("regular-solution data requires a closed channel")
    nu = (-2.0 * eps) ** -0.5
    z = 2.0 * np.asarray(r, dtype=float) / nu
    a = l + 1.0 - nu
    b = 2.0 * l + 2.0
    m0 = hyp1f1(a, b, z)
    m1 = hyp1f1(a + 1.0, b + 1.0, z)
    pref = np.exp(-z / 2.0) * z ** (l + 1.0)
    val = pref * m0
    dval = pref * (m0 * (-0.5 + (l + 1.0) / z) + (a / b) * m1) * (2.0 / nu)
    return val, dval


class _Anchor:
    """Boundary data of the balanced regular solution at r0.

    The raw Whittaker-M normalization makes the unit-Wronskian partner's
    envelope 1/f-scale, which is numerically hostile; dividing f by
    c = (local envelope) * sqrt(k_x) puts both pair members on a common
    O(k_x^-1/2) envelope without moving the boundary phase.
    """

    __slots__ = ("r0", "x0", "k0x", "scale", "f0", "fp0", "yf0", "yfp0",
                 "cos_t", "sin_t", "theta", "nu")

    def __init__(self, model: LongRangeModel, eps: float, l: int):
        grid = model.grid
        self.r0 = grid.r_min
        self.x0 = float(grid.log_nodes[0])
        q0 = float(effective_q_log(model, eps, l, np.array([self.x0]))[0])
        self.k0x = np.sqrt(max(abs(q0), 1e-12))
        self.nu = phase_index(model, eps)
        self.theta = float(folded_theta(self.nu))
        ct, st = folded_trig(self.nu)
        self.cos_t, self.sin_t = float(ct), float(st)
        f0, fp0 = (float(v) for v in coulomb_regular(eps, l, self.r0))
        sr = np.sqrt(self.r0)
        yf0 = f0 / sr
        yfp0 = sr * fp0 - f0 / (2.0 * sr)
        envelope = np.hypot(yf0, yfp0 / self.k0x)
        self.scale = envelope * np.sqrt(self.k0x)
        self.f0 = f0 / self.scale
        self.fp0 = fp0 / self.scale
        self.yf0 = yf0 / self.scale
        self.yfp0 = yfp0 / self.scale


# ---------------------------------------------------------------------------
# boundary phase
# ---------------------------------------------------------------------------

def theta_phase(model: LongRangeModel, eps: float, l: int = 0) -> float:
    """Boundary phase theta in (-pi/2, pi/2] with tan(theta) = R(eps).

    coulomb: theta = -pi nu mod pi with nu = (-2 eps)^(-1/2); zeros of
    tan(theta) sit exactly at the hydrogenic energies -1/(2 n^2).
    hard_wall: theta = -kL mod pi.
    """
    model.check_angular_momentum(l)
    nu = phase_index(model, eps)
    return float(folded_theta(nu))


# ---------------------------------------------------------------------------
# inward integration (Coulomb channel waves)
# ---------------------------------------------------------------------------

def _inward_start_index(x: np.ndarray, q: np.ndarray, eps: float, l: int) -> int:
    """First mesh index whose WKB action beyond the turning point exceeds
    the tail budget; integration starts there with a vanishing seed."""
    n = x.size
    h = x[1] - x[0]
    rt = outer_turning_point(eps, l)
    xt = np.log(rt)
    if xt >= x[-1]:
        return n - 1
    kap = np.sqrt(np.maximum(q, 0.0))
    s = np.concatenate(([0.0], np.cumsum(0.5 * (kap[1:] + kap[:-1]) * h)))
    s = s - np.interp(xt, x, s)
    i = int(np.searchsorted(s, _TAIL_ACTION))
    return min(max(i, min(n - 1, 24)), n - 1)


def _integrate_decaying(model: LongRangeModel, eps: float, l: int, stride: int = 1):
    """Inward log-mesh integration of the decaying solution.

    Returns (y, istart, u0, up0) with y the transformed samples (u = sqrt(r) y)
    normalized to unit maximum, zero beyond the start index.
    """
    grid = model.grid
    x = grid.log_nodes[::stride]
    h = x[1] - x[0]
    q = effective_q_log(model, eps, l, x)
    istart = _inward_start_index(x, q, eps, l)
    y = np.zeros(x.size)
    seg = _kernels.numerov_uniform(np.ascontiguousarray(q[: istart + 1][::-1]), h, 0.0, 1e-120)
    y[: istart + 1] = seg[::-1]
    peak = np.argmax(np.abs(y))
    u_scale = np.abs(y[peak]) * np.exp(x[peak] / 2.0)
    if not np.isfinite(u_scale) or u_scale == 0.0:
        raise NumericalBlowup("inward integration produced no usable amplitude")
    y /= u_scale
    yp0 = _end_derivative(y, h)
    u0 = np.exp(x[0] / 2.0) * y[0]
    up0 = np.exp(-x[0] / 2.0) * (yp0 + 0.5 * y[0])
    return y, istart, u0, up0


def _match_scale(anchor: _Anchor, u0: float, up0: float) -> float:
    """Scale factor putting the inward solution onto cos(t) f - sin(t) g.

    Uses W(f, F) = -sin(theta); near hydrogenic energies (|sin theta| -> 0)
    the wave is parallel to the regular solution and the scale is taken
    from a direct least-squares match instead.
    """
    w_fu = anchor.f0 * up0 - anchor.fp0 * u0
    cancel = abs(w_fu) / max(abs(anchor.f0 * up0) + abs(anchor.fp0 * u0), 1e-300)
    if abs(anchor.sin_t) >= _SIN_SWITCH and cancel > 1e-9:
        lam = -anchor.sin_t / w_fu
    else:
        lam = anchor.cos_t * (anchor.f0 * u0 + anchor.fp0 * up0) / (u0 * u0 + up0 * up0)
    if not np.isfinite(lam) or lam == 0.0:
        raise NumericalBlowup("boundary match failed")
    return lam


def channel_wave(model: LongRangeModel, eps: float, l: int = 0, channel: int = 0,
                 keep_values: bool = True, verify: bool = True) -> ChannelWave:
    """Decaying channel wave F = cos(theta) f - sin(theta) g.

    For the Coulomb model F comes from inward integration (the decaying
    solution is inward stable) and is scaled onto the combination at r0;
    ``verify=True`` repeats the boundary data on a twice-coarser mesh and
    raises BoundaryMismatch when the two disagree beyond 1e-6, which flags
    an under-resolved grid. Samples with tail amplitude below ~1e-19 of
    the maximum are stored as exact zeros.
    """
    model.check_angular_momentum(l)
    grid = model.grid
    if model.kind == HARD_WALL:
        theta = theta_phase(model, eps, l)
        k = np.sqrt(2.0 * eps)
        vals = np.sin(k * grid.nodes + theta) / np.sqrt(k) if keep_values else None
        F0 = float(np.sin(k * grid.r_min + theta) / np.sqrt(k))
        Fp0 = float(np.sqrt(k) * np.cos(k * grid.r_min + theta))
        return ChannelWave(l, float(eps), theta, grid, vals, F0, Fp0, channel)

    anchor = _Anchor(model, eps, l)
    y, istart, u0, up0 = _integrate_decaying(model, eps, l)
    lam = _match_scale(anchor, u0, up0)
    F0, Fp0 = lam * u0, lam * up0
    if verify:
        _, _, v0, vp0 = _integrate_decaying(model, eps, l, stride=2)
        lam2 = _match_scale(anchor, v0, vp0)
        # O(h^4) scheme: the coarse/fine difference is ~15x the fine error
        err = np.hypot(lam2 * v0 - F0, lam2 * vp0 - Fp0) / np.hypot(F0, Fp0) / 15.0
        if err > 1e-6:
            raise BoundaryMismatch(
                f"estimated boundary-data error {err:.2e} exceeds 1e-6; "
                "the radial grid step is too large for this energy")
    vals = None
    if keep_values:
        vals = lam * np.exp(grid.log_nodes / 2.0) * y
    return ChannelWave(l, float(eps), anchor.theta, grid, vals, float(F0), float(Fp0),
                       channel)


# ---------------------------------------------------------------------------
# basis pair
# ---------------------------------------------------------------------------

def milne_pair(model: LongRangeModel, eps: float, l: int = 0, channel: int = 0) -> FGPair:
    """Unit-Wronskian pair (f, g) on the model grid.

    hard_wall: closed form sin/cos pair. coulomb: the pair is anchored at
    r0 with exact regular-solution data and propagated by the
    phase-amplitude method, w'' + k^2 w = w^-3 with f = w sin(phi),
    g = -w cos(phi) and phi' = w^-2; the returned samples stop where the
    amplitude would overflow (the pair is only jointly meaningful up to
    there), while the boundary data at r0 is always exact. Within ~1e-6 of
    a hydrogenic energy the partner g degrades to an arbitrary
    unit-Wronskian companion (its smooth continuation is a 0/0 limit
    there); the Wronskian contract is unaffected.
    """
    model.check_angular_momentum(l)
    grid = model.grid
    if model.kind == HARD_WALL:
        if eps <= 0.0:
            raise OpenChannel("hard-wall pair needs positive kinetic energy")
        k = np.sqrt(2.0 * eps)
        sk = np.sqrt(k)
        f = np.sin(k * grid.nodes) / sk
        g = -np.cos(k * grid.nodes) / sk
        r0 = grid.r_min
        return FGPair(l, float(eps), grid, f, g,
                      float(np.sin(k * r0) / sk), float(-np.cos(k * r0) / sk),
                      float(sk * np.cos(k * r0)), float(sk * np.sin(k * r0)), channel)

    if eps >= 0.0:
        raise OpenChannel("coulomb pair needs a closed channel")
    anchor = _Anchor(model, eps, l)
    _, _, u0, up0 = _integrate_decaying(model, eps, l)
    lam = _match_scale(anchor, u0, up0)
    F0, Fp0 = lam * u0, lam * up0
    if abs(anchor.sin_t) >= _SIN_PAIR_SWITCH:
        g0 = (anchor.cos_t * anchor.f0 - F0) / anchor.sin_t
        gp0 = (anchor.cos_t * anchor.fp0 - Fp0) / anchor.sin_t
        sr = np.sqrt(anchor.r0)
        yg0 = g0 / sr
        ygp0 = sr * gp0 - g0 / (2.0 * sr)
    else:
        # quarter-phase synthetic companion (balanced, exact unit Wronskian)
        a2 = anchor.yf0**2 + (anchor.yfp0 / anchor.k0x) ** 2
        yg0 = -anchor.yfp0 / (anchor.k0x**2 * a2)
        ygp0 = anchor.yf0 / a2
        sr = np.sqrt(anchor.r0)
        g0 = sr * yg0
        gp0 = (ygp0 + 0.5 * yg0) / sr

    w0 = np.hypot(anchor.yf0, yg0)
    dw0 = (anchor.yf0 * anchor.yfp0 + yg0 * ygp0) / w0
    phi0 = float(np.arctan2(anchor.yf0, -yg0))
    x = grid.log_nodes
    h = x[1] - x[0]
    xm = np.empty(2 * x.size - 1)
    xm[0::2] = x
    xm[1::2] = 0.5 * (x[:-1] + x[1:])
    qm = effective_q_log(model, eps, l, xm)
    lw, _, phi = _kernels.milne_rk4(np.ascontiguousarray(qm), h, w0, dw0, phi0)
    over = lw > np.min(lw) + _LOG_AMP_GROWTH_CAP
    cap = int(np.argmax(over)) if over.any() else lw.size
    if cap < 8:
        raise NumericalBlowup("amplitude left the representable range immediately")
    sl = slice(0, cap)
    amp = np.exp(lw[sl] + 0.5 * x[sl])
    f_vals = amp * np.sin(phi[sl])
    g_vals = -amp * np.cos(phi[sl])
    sub = grid if cap == x.size else RadialGrid(grid.nodes[sl], LOGARITHMIC,
                                                log_nodes=x[sl])
    return FGPair(l, float(eps), sub, f_vals, g_vals,
                  anchor.f0, g0, anchor.fp0, gp0, channel)


def pair_wronskian(pair: FGPair) -> np.ndarray:
    """W(f, g) on the pair grid via centered O(h^4) derivatives."""
    nodes = pair.grid.nodes
    if pair.grid.spacing_rule == LOGARITHMIC:
        x = pair.grid.log_nodes
        h = x[1] - x[0]
        yf = pair.f_values / np.sqrt(nodes)
        yg = pair.g_values / np.sqrt(nodes)
        dyf = _central_derivative(yf, h)
        dyg = _central_derivative(yg, h)
        # W in r equals W in the transformed variable
        return yf * dyg - dyf * yg
    h = pair.grid.step
    df = _central_derivative(pair.f_values, h)
    dg = _central_derivative(pair.g_values, h)
    return pair.f_values * dg - df * pair.g_values


def _central_derivative(y: np.ndarray, h: float) -> np.ndarray:
    d = np.empty_like(y)
    d[2:-2] = (8.0 * (y[3:-1] - y[1:-3]) - (y[4:] - y[:-4])) / (12.0 * h)
    d[0] = np.dot(_DERIV_STENCIL, y[:7]) / h
    d[1] = np.dot(_DERIV_STENCIL, y[1:8]) / h
    d[-2] = -np.dot(_DERIV_STENCIL, y[-8:-1][::-1]) / h
    d[-1] = -np.dot(_DERIV_STENCIL, y[-7:][::-1]) / h
    return d


# ---------------------------------------------------------------------------
# overlaps
# ---------------------------------------------------------------------------

def wronskian_overlap(w1: ChannelWave, w2: ChannelWave, r0: float) -> float:
    """Same-channel overlap from boundary data alone.

    <F1|F2> over [r0, outer boundary] equals
    [F1(r0) F2'(r0) - F1'(r0) F2(r0)] / (2 (eps2 - eps1)).
    """
    if w1.channel != w2.channel or w1.l != w2.l:
        raise ChannelMismatch("overlap requires waves from the same channel")
    if abs(w1.energy - w2.energy) <= 1e-12:
        raise DegenerateEnergies("energies coincide; use quadrature_overlap")
    tol = 1e-9 * max(1.0, abs(r0))
    if abs(w1.boundary_r - r0) > tol or abs(w2.boundary_r - r0) > tol:
        raise GridMismatch("boundary data is not stored at the requested r0")
    num = w1.F_r0 * w2.Fprime_r0 - w1.Fprime_r0 * w2.F_r0
    return float(num / (2.0 * (w2.energy - w1.energy)))


def quadrature_overlap(w1: ChannelWave, w2: ChannelWave) -> float:
    """Direct quadrature of F1 F2 over the grid; the independent oracle."""
    if w1.values is None or w2.values is None:
        raise ValidationError("waves were built without samples")
    if not w1.grid.same_as(w2.grid):
        raise GridMismatch("waves live on different grids")
    prod = w1.values * w2.values
    if w1.grid.spacing_rule == LOGARITHMIC:
        return float(simpson(prod * w1.grid.nodes, x=w1.grid.log_nodes))
    return float(simpson(prod, x=w1.grid.nodes))


def channel_norm(w: ChannelWave) -> float:
    """Quadrature norm integral of F^2 over [r0, outer boundary]."""
    return quadrature_overlap(w, w)
