"""Radial sample grids.

Two spacing rules are supported: uniform in r (used by the hard-wall model)
and uniform in x = ln r (used by the Coulomb model, where the sampled
oscillation wavelength grows roughly like r). Logarithmic grids keep the
exact uniform x mesh alongside the r nodes so that integrators never have
to re-derive it from log(nodes).
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ValidationError

UNIFORM = "uniform"
LOGARITHMIC = "logarithmic"

# Relative tolerance on equal spacing for uniform grids.
_SPACING_RTOL = 1e-12


@dataclass(frozen=True)
class RadialGrid:
    """Strictly increasing radial sample points with a declared spacing rule."""

    nodes: np.ndarray
    spacing_rule: str
    log_nodes: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        object.__setattr__(self, "nodes", nodes)
        if nodes.ndim != 1 or nodes.size < 2:
            raise ValidationError("grid needs at least two nodes")
        if nodes[0] < 0.0:
            raise ValidationError("r_min must be >= 0")
        d = np.diff(nodes)
        if np.any(d <= 0.0):
            raise ValidationError("grid nodes must be strictly increasing")
        if self.spacing_rule == UNIFORM:
            h = np.mean(d)
            # tolerance floor: node rounding alone perturbs differences by ulps
            tol = max(_SPACING_RTOL * h, 8.0 * np.finfo(float).eps * abs(nodes[-1]))
            if np.max(np.abs(d - h)) > tol:
                raise ValidationError("uniform grid has varying spacing")
        elif self.spacing_rule == LOGARITHMIC:
            if self.log_nodes is None:
                object.__setattr__(self, "log_nodes", np.log(nodes))
            x = self.log_nodes
            hx = np.mean(np.diff(x))
            tol = max(_SPACING_RTOL * abs(hx), 8.0 * np.finfo(float).eps * abs(x[-1]) + 8e-16)
            if np.max(np.abs(np.diff(x) - hx)) > tol:
                raise ValidationError("logarithmic grid not uniform in ln r")
        else:
            raise ValidationError(f"unknown spacing rule {self.spacing_rule!r}")

    @property
    def r_min(self) -> float:
        return float(self.nodes[0])

    @property
    def r_max(self) -> float:
        return float(self.nodes[-1])

    @property
    def size(self) -> int:
        return self.nodes.size

    @property
    def step(self) -> float:
        """Uniform step: in r for uniform grids, in ln r for logarithmic ones."""
        if self.spacing_rule == UNIFORM:
            return float(self.nodes[1] - self.nodes[0])
        return float(self.log_nodes[1] - self.log_nodes[0])

    def same_as(self, other: "RadialGrid") -> bool:
        return (
            self is other
            or (
                self.spacing_rule == other.spacing_rule
                and self.nodes.size == other.nodes.size
                and np.array_equal(self.nodes, other.nodes)
            )
        )


def uniform_grid(r_min: float, r_max: float, step: float) -> RadialGrid:
    if r_max <= r_min:
        raise ValidationError("r_max must exceed r_min")
    if step <= 0.0:
        raise ValidationError("step must be positive")
    n = int(np.ceil((r_max - r_min) / step)) + 1
    nodes = np.linspace(r_min, r_max, n)
    return RadialGrid(nodes, UNIFORM)


def log_grid(r_min: float, r_max: float, step_x: float) -> RadialGrid:
    if r_min <= 0.0:
        raise ValidationError("logarithmic grid needs r_min > 0")
    if r_max <= r_min:
        raise ValidationError("r_max must exceed r_min")
    if step_x <= 0.0:
        raise ValidationError("step must be positive")
    x0, x1 = np.log(r_min), np.log(r_max)
    n = int(np.ceil((x1 - x0) / step_x)) + 1
    x = np.linspace(x0, x1, n)
    return RadialGrid(np.exp(x), LOGARITHMIC, log_nodes=x)
