"""Backend selection for the numeric hot loops.

The compiled extension ``lojparam._ckernels`` is used when it was built;
otherwise the numpy fallback in ``lojparam._pykernels`` is loaded.  Both
expose the same functions.  ``use_backend`` switches at runtime (tests and
benchmarks compare the two).
"""

import logging

from . import _pykernels

log = logging.getLogger(__name__)

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

_BACKENDS = {"python": _pykernels}
if _ckernels is not None:
    _BACKENDS["cython"] = _ckernels

BACKEND = "cython" if _ckernels is not None else "python"
_impl = _BACKENDS[BACKEND]


def available_backends():
    return sorted(_BACKENDS)


def use_backend(name):
    """Select ``"cython"`` or ``"python"``; returns the previous backend name."""
    global BACKEND, _impl
    if name not in _BACKENDS:
        raise ValueError(f"backend {name!r} not available (have {available_backends()})")
    prev = BACKEND
    BACKEND, _impl = name, _BACKENDS[name]
    log.debug("kernel backend: %s", name)
    return prev


def aberth(coeffs, tol, maxiter):
    return _impl.aberth(coeffs, tol, maxiter)


def initial_points(coeffs):
    return _impl.initial_points(coeffs)


def horner(coeffs, z):
    return _impl.horner(coeffs, z)


def winding(coeffs, center, radius, nodes):
    return _impl.winding(coeffs, complex(center), float(radius), int(nodes))


def eval_multi(exps, coeffs, pts):
    return _impl.eval_multi(exps, coeffs, pts)


def restrict_line(exps, coeffs, p, v, deg):
    return _impl.restrict_line(exps, coeffs, p, v, int(deg))


def nearest_roots(exps, coeffs, z, dirs, deg, tol=1e-12, maxiter=200):
    return _impl.nearest_roots(exps, coeffs, z, dirs, int(deg), float(tol), int(maxiter))
