"""Kernel backend selection.

The compiled extension is preferred when present; otherwise the pure-numpy
fallback with identical signatures is used. ``BACKEND`` reports which one
is active, and ``backends()`` exposes both for the benchmark suite.
"""

from . import pure as _pure

try:
    from . import _core as _impl
except ImportError:
    _impl = _pure

BACKEND = _impl.BACKEND
numerov_uniform = _impl.numerov_uniform
milne_rk4 = _impl.milne_rk4


def backends() -> dict:
    """Importable kernel backends keyed by name."""
    found = {"pure": _pure}
    if _impl is not _pure:
        found["cython"] = _impl
    return found
