"""Pure-numpy implementations of the propagation kernels.

The three-term Numerov recurrence is cast as a banded triangular solve so
that LAPACK does the sequential sweep; this keeps the fallback within a
small factor of the compiled core. The Milne amplitude integrator is a
plain RK4 loop (the amplitude is smooth and only enters the basis-pair
construction, never the per-state hot path).
"""
from __future__ import annotations

import numpy as np
from scipy.linalg import solve_banded

from ..errors import Overflow

BACKEND = "pure"

OVERFLOW_LIMIT = 1e300


def numerov_uniform(q: np.ndarray, h: float, y0: float, y1: float) -> np.ndarray:
    """Propagate y'' = q(x) y across a uniform mesh from its first two values.

    q is given in integration order; integrating inward means passing the
    reversed array (the scheme is reflection symmetric). Local truncation
    error is O(h^6). Raises Overflow once |y| passes 1e300.
    """
    q = np.asarray(q, dtype=float)
    n = q.size
    if n < 2:
        raise ValueError("need at least two mesh points")
    if n == 2:
        return np.array([y0, y1])
    t = (h * h / 12.0) * q
    # Row 0 and 1 pin the seeds; row j >= 2 encodes
    #   -(1 - t[j-2]) y[j-2] + 2 (1 + 5 t[j-1]) y[j-1] - (1 - t[j]) y[j] = 0,
    # a lower-triangular banded system solved by one LAPACK sweep.
    ab = np.zeros((3, n))
    rhs = np.zeros(n)
    ab[0, 0] = 1.0
    ab[0, 1] = 1.0
    ab[0, 2:] = -(1.0 - t[2:])
    ab[1, 1 : n - 1] = 2.0 * (1.0 + 5.0 * t[1 : n - 1])
    ab[2, 0 : n - 2] = -(1.0 - t[0 : n - 2])
    rhs[0], rhs[1] = y0, y1
    y = solve_banded((2, 0), ab, rhs)
    bad = ~np.isfinite(y)
    if bad.any() or np.max(np.abs(y)) > OVERFLOW_LIMIT:
        raise Overflow("solution magnitude exceeded 1e300; renormalize the seed")
    return y


def milne_rk4(q_half: np.ndarray, h: float, w0: float, dw0: float, phi0: float):
    """Integrate the amplitude equation w'' = q w + w^-3 with phi' = w^-2.

    Worked in log-amplitude variables so the exponential growth beyond a
    turning point cannot overflow. ``q_half`` holds q at nodes and midpoints
    (2n - 1 values, node j at index 2j). Returns (ln w, w'/w, phi) on the
    n nodes.
    """
    q_half = np.asarray(q_half, dtype=float)
    if q_half.size % 2 == 0:
        raise ValueError("q_half must have odd length (nodes plus midpoints)")
    n = (q_half.size + 1) // 2
    lw = np.empty(n)
    m = np.empty(n)
    phi = np.empty(n)
    lw[0] = np.log(w0)
    m[0] = dw0 / w0
    phi[0] = phi0

    def rhs(qv, state):
        l_, m_, _ = state
        e2 = np.exp(-2.0 * l_)
        return np.array([m_, qv - m_ * m_ + e2 * e2, e2])

    state = np.array([lw[0], m[0], phi[0]])
    for j in range(n - 1):
        qa, qm, qb = q_half[2 * j], q_half[2 * j + 1], q_half[2 * j + 2]
        k1 = rhs(qa, state)
        k2 = rhs(qm, state + 0.5 * h * k1)
        k3 = rhs(qm, state + 0.5 * h * k2)
        k4 = rhs(qb, state + h * k3)
        state = state + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        lw[j + 1], m[j + 1], phi[j + 1] = state
    return lw, m, phi
