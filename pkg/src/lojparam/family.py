"""Parametric families ``f_t``: how local invariants and zero sets move with t.

Every check evaluates a property at ``t0`` and at sample parameters, then
discovers the neighbourhood of ``t0`` on which the property holds: samples
are taken in order of increasing ``|t - t0|`` and the longest initial run
that satisfies the property gives the threshold.  A family passes when
that run contains at least two samples (or all of them, if fewer).
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.spatial.distance import directed_hausdorff

from . import kernels
from .errors import (
    BoundaryRootError,
    DimensionError,
    EmptyZeroSetError,
    PreconditionError,
    ProbeInstabilityError,
    PropernessError,
    SliceInconsistencyError,
    ZeroPolynomialError,
)
from .gaussrat import GaussRat
from .local import (
    check_properness,
    choose_weierstrass_frame,
    dist_to_zero_set,
    local_degree_cycle,
    weierstrass_slice_degree,
    _base_points,
)
from .loj import verify_inequality
from .poly import MultiPoly, ParamFamily, Region, order_at, restrict_to_line, shift
from .rng import generator
from .uni import UniPoly, all_roots, clusters_in_disc, count_roots_in_disc, squarefree_decomposition

SAMPLING_NOTE = "finitely many testing discs and sample parameters; density is not certified"


def parse_t_grid(grid, t0=0) -> list:
    """Parameter samples from a list or a ``geometric:<ratio>,<count>[,<scale>]`` spec.

    The geometric form gives ``t_k = t0 + scale * ratio**k`` for
    ``k = 1..count`` (scale defaults to 1).
    """
    if isinstance(grid, str):
        kind, _, rest = grid.partition(":")
        if kind.strip() != "geometric":
            raise ValueError(f"unknown grid spec {grid!r}")
        parts = [p.strip() for p in rest.split(",")]
        if len(parts) not in (2, 3):
            raise ValueError("geometric grid needs <ratio>,<count>[,<scale>]")
        ratio, count = float(parts[0]), int(parts[1])
        scale = complex(parts[2]) if len(parts) == 3 else 1.0
        if not 0 < abs(ratio) < 1 or count < 1:
            raise ValueError("geometric grid needs 0 < |ratio| < 1 and count >= 1")
        base = complex(t0)
        out = [base + scale * ratio**k for k in range(1, count + 1)]
        return [v.real if v.imag == 0 else v for v in out]
    return list(grid)


def _c(t) -> complex:
    return complex(t)


@dataclass(frozen=True)
class TestingDisc:
    """Disc ``{anchor + s * direction : |s| < radius}`` transversal to ``Z_{f_t0}``."""

    anchor: tuple
    direction: tuple
    radius: float

    __test__ = False  # not a pytest class

    def __post_init__(self):
        anchor = tuple(self.anchor)
        direction = tuple(self.direction)
        if len(anchor) != len(direction):
            raise DimensionError("anchor and direction differ in length")
        if all(complex(v) == 0 for v in direction):
            raise ValueError("zero direction")
        if not (self.radius > 0 and math.isfinite(self.radius)):
            raise ValueError("radius must be positive")
        object.__setattr__(self, "anchor", anchor)
        object.__setattr__(self, "direction", direction)
        object.__setattr__(self, "radius", float(self.radius))

    def slice(self, f: MultiPoly) -> UniPoly:
        return restrict_to_line(f, self.anchor, self.direction)

    def validate(self, f0: MultiPoly) -> None:
        """Check that the only zeros of ``f0`` on the closed disc sit at the anchor."""
        g = self.slice(f0)
        if g.is_zero():
            raise PreconditionError("the testing line lies inside the zero set")
        if g.degree < 1 or abs(complex(g.coeffs[0])) > 1e-10 * float(np.max(np.abs(g.array))):
            raise PreconditionError("the anchor is not a zero of f_t0")
        cl = clusters_in_disc(g, 0j, self.radius * (1 + 1e-9))
        if len(cl) != 1 or abs(cl[0].center) > 1e-8 * self.radius:
            raise PreconditionError(
                f"not a testing disc: f_t0 has zeros {[c.center for c in cl]} on the closed disc"
            )

    def to_json(self) -> dict:
        return {
            "anchor": [[_c(a).real, _c(a).imag] for a in self.anchor],
            "direction": [[_c(v).real, _c(v).imag] for v in self.direction],
            "radius": self.radius,
        }


@dataclass(frozen=True)
class ConvergenceReport:
    """Per-parameter values of one quantity and the discovered threshold.

    ``per_t`` is a tuple of dicts, one per sample in ``t_samples`` order,
    each holding ``"t"``, the quantity under ``quantity`` and whether the
    tested property holds there (``"ok"``).  The value at ``t0`` is stored
    separately in ``at_t0``.
    """

    kind: str
    quantity: str
    t0: complex
    t_samples: tuple
    per_t: tuple
    at_t0: dict
    verdict: bool
    stabilization_threshold: float
    details: dict = field(default_factory=dict)
    seed: int = 0

    def __post_init__(self):
        if len(self.per_t) != len(self.t_samples):
            raise ValueError("per_t must cover every t sample")

    def values(self) -> dict:
        """``{t: quantity}`` including ``t0``."""
        out = {self.t0: self.at_t0[self.quantity]}
        for t, row in zip(self.t_samples, self.per_t):
            out[t] = row[self.quantity]
        return out

    def table(self) -> list[tuple]:
        """Rows ``(t, quantity)``: ``t0`` first, then the samples in order."""
        rows = [(self.t0, self.at_t0[self.quantity])]
        rows += [(t, r[self.quantity]) for t, r in zip(self.t_samples, self.per_t)]
        return rows

    def to_json(self) -> dict:
        def enc(row):
            return {k: ([v.real, v.imag] if isinstance(v, complex) else v) for k, v in row.items()}

        return {
            "kind": self.kind,
            "quantity": self.quantity,
            "t0": [self.t0.real, self.t0.imag],
            "t_samples": [[t.real, t.imag] for t in self.t_samples],
            "at_t0": enc(self.at_t0),
            "per_t": [enc(r) for r in self.per_t],
            "verdict": self.verdict,
            "stabilization_threshold": self.stabilization_threshold,
            "details": self.details,
            "seed": self.seed,
        }


def discover_threshold(ts: Sequence[complex], t0: complex, ok: Sequence[bool]) -> tuple[float, int]:
    """Largest ``|t - t0|`` of the initial run of passing samples, nearest first.

    Returns ``(threshold, run_length)``; the threshold is 0 for an empty run.
    """
    order = sorted(range(len(ts)), key=lambda i: (abs(ts[i] - t0), i))
    run = 0
    thr = 0.0
    for i in order:
        if not ok[i]:
            break
        run += 1
        thr = abs(ts[i] - t0)
    return float(thr), run


def _assemble(kind, quantity, fam_t0, ts, rows, row0, seed, details=None) -> ConvergenceReport:
    ts = tuple(_c(t) for t in ts)
    t0 = _c(fam_t0)
    thr, run = discover_threshold(ts, t0, [r["ok"] for r in rows])
    need = min(2, len(ts))
    verdict = bool(row0.get("ok", True)) and run >= need
    det = dict(details or {})
    det["run_length"] = run
    return ConvergenceReport(kind, quantity, t0, ts, tuple(rows), row0, verdict, thr, det, seed)


def _space_base_point(fam: ParamFamily, check_vanishing: bool) -> tuple:
    a = fam.base_point if fam.base_point is not None else (0,) * fam.space_nvars
    if check_vanishing:
        dataclasses.replace(fam, base_point=a).fixed_base_point()
    return tuple(a)


def _specialize(fam: ParamFamily, t) -> MultiPoly:
    f = fam.at(t)
    if f.is_zero():
        raise ZeroPolynomialError(f"f_t vanishes identically at t = {t}")
    return f


# ----------------------------------------------------------------------
# order and local degree


def order_profile(fam: ParamFamily, t_grid, drop_tol: float = 1e-12) -> ConvergenceReport:
    """``ord_a f_t`` along the grid; the property is ``ord_a f_t <= ord_a f_t0``.

    Raises
    ------
    ZeroPolynomialError
        Some ``f_t`` vanishes identically.
    """
    a = _space_base_point(fam, False)
    ts = [t for t in parse_t_grid(t_grid, fam.t0) if _c(t) != _c(fam.t0)]
    k0 = order_at(_specialize(fam, fam.t0), a, drop_tol)
    row0 = {"t": _c(fam.t0), "order": k0, "ok": True}
    rows = []
    for t in ts:
        k = order_at(_specialize(fam, t), a, drop_tol)
        rows.append({"t": _c(t), "order": k, "ok": k <= k0})
    return _assemble("order_profile", "order", fam.t0, ts, rows, row0, 0, {"base_point": _pt(a)})


def _pt(a) -> list:
    return [[_c(x).real, _c(x).imag] for x in a]


def _adaptive_local_degree(f, a, probe_radius, seed, shrink_steps=4) -> tuple[int, float]:
    # the local degree is a germ invariant, so a smaller probe is always valid
    r = probe_radius
    for step in range(shrink_steps + 1):
        try:
            return local_degree_cycle(f, a, r, seed=seed), r
        except ProbeInstabilityError:
            if step == shrink_steps:
                raise
            r /= 8
    raise AssertionError("unreachable")


def local_degree_semicontinuity(fam: ParamFamily, t_grid, probe_radius: float = 1e-3, seed: int = 0) -> ConvergenceReport:
    """``deg_a Z_{f_t}`` along the grid; the property is ``deg_a Z_{f_t} <= deg_a Z_{f_t0}``.

    ``f(t, a)`` must vanish for every t.  When a probe is unstable at some
    ``t`` (another zero sits at the probe radius) the radius is divided by 8,
    up to four times.
    """
    a = _space_base_point(fam, True)
    ts = [t for t in parse_t_grid(t_grid, fam.t0) if _c(t) != _c(fam.t0)]
    d0, r0 = _adaptive_local_degree(_specialize(fam, fam.t0), a, probe_radius, seed)
    row0 = {"t": _c(fam.t0), "degree": d0, "probe_radius": r0, "ok": True}
    rows = []
    for t in ts:
        d, r = _adaptive_local_degree(_specialize(fam, t), a, probe_radius, seed)
        rows.append({"t": _c(t), "degree": d, "probe_radius": r, "ok": d <= d0})
    return _assemble("local_degree_semicontinuity", "degree", fam.t0, ts, rows, row0, seed,
                     {"base_point": _pt(a)})


# ----------------------------------------------------------------------
# set convergence


def zero_set_cloud(f: MultiPoly, window: Region, grid_density: int = 32) -> np.ndarray:
    """Points of ``Z_f`` in the window as rows of real coordinates (``2 m`` columns).

    The first ``m - 1`` coordinates run over a square grid of spacing
    ``radius / grid_density`` inside ``V``; over each grid point the roots in
    the last coordinate that fall inside ``W`` are kept.
    """
    m = f.nvars
    if window.nvars != m:
        raise DimensionError("window dimension differs from nvars")
    ff = f.to_float()
    cw, rw = window.center[-1], window.radii[-1]
    if m == 1:
        bases = np.zeros((1, 0), dtype=np.complex128)
    else:
        h = window.radius / grid_density
        axes = []
        for c, r in zip(window.center[:-1], window.radii[:-1]):
            k = int(math.floor(r / h))
            g = np.arange(-k, k + 1) * h
            zz = (g[:, None] + 1j * g[None, :]).ravel()
            axes.append(c + zz[np.abs(zz) <= r])
        mesh = np.meshgrid(*axes, indexing="ij")
        bases = np.stack([x.ravel() for x in mesh], axis=1)
    # fibre polynomial coefficients c_j(x) for every base point
    deg = ff.degree_in(m - 1)
    coef = np.zeros((len(bases), deg + 1), dtype=np.complex128)
    for e, c in ff.terms.items():
        mono = np.prod(bases ** np.array(e[:-1]), axis=1) if m > 1 else np.ones(1)
        coef[:, e[-1]] += c * mono
    pts = []
    for x, c in zip(bases, coef):
        big = float(np.max(np.abs(c))) if len(c) else 0.0
        if big == 0.0:
            raise PropernessError(f"f(x, .) vanishes identically at x = {x}")
        n = deg
        while n > 0 and abs(c[n]) <= 1e-14 * big:
            n -= 1
        if n == 0:
            continue
        roots, _, _ = kernels.aberth(c[: n + 1], 1e-12, 200)
        for r in roots[np.abs(roots - cw) <= rw]:
            pts.append(np.concatenate([x, [r]]))
    if not pts:
        return np.zeros((0, 2 * m))
    z = np.array(pts)
    return np.concatenate([z.real, z.imag], axis=1)


def hausdorff_gap(a: np.ndarray, b: np.ndarray) -> float:
    """Symmetric Hausdorff distance between two point clouds."""
    if len(a) == 0 or len(b) == 0:
        raise EmptyZeroSetError("zero set has no points in the window")
    return float(max(directed_hausdorff(a, b)[0], directed_hausdorff(b, a)[0]))


def _non_increasing(vals: Sequence[float], factor: float = 1.5) -> bool:
    return all(b <= factor * a + 1e-15 for a, b in zip(vals, vals[1:]))


def kuratowski_check(fam: ParamFamily, t_sequence, window: Region, grid_density: int = 32, seed: int = 0) -> ConvergenceReport:
    """Sampled Hausdorff gap between ``Z_{f_t}`` and ``Z_{f_t0}`` inside a window.

    The verdict needs the gaps to be non-increasing along the sequence up to
    a factor 1.5 and the last gap to be below the grid resolution
    ``window.radius / grid_density``.  The threshold is discovered on the
    property ``gap < resolution``.

    Raises
    ------
    PropernessError
        ``Z_{f_t0}`` meets the lateral boundary of the window.
    EmptyZeroSetError
        Some zero set has no points in the window.
    """
    f0 = _specialize(fam, fam.t0)
    check_properness(f0, window, _base_points(window, 8, seed, False), seed=seed)
    resolution = window.radius / grid_density
    ts = [t for t in parse_t_grid(t_sequence, fam.t0)]
    cloud0 = zero_set_cloud(f0, window, grid_density)
    if len(cloud0) == 0:
        raise EmptyZeroSetError("Z_{f_t0} has no points in the window")
    rows = []
    for t in ts:
        gap = hausdorff_gap(zero_set_cloud(_specialize(fam, t), window, grid_density), cloud0)
        rows.append({"t": _c(t), "hausdorff_gap": gap, "ok": gap < resolution})
    gaps = [r["hausdorff_gap"] for r in rows]
    row0 = {"t": _c(fam.t0), "hausdorff_gap": 0.0, "ok": True}
    rep = _assemble("kuratowski", "hausdorff_gap", fam.t0, ts, rows, row0, seed,
                    {"resolution": resolution, "grid_density": grid_density, "window": window.to_json()})
    verdict = bool(gaps) and _non_increasing(gaps) and gaps[-1] < resolution
    return dataclasses.replace(rep, verdict=verdict)


def distance_continuity_check(
    fam: ParamFamily,
    probe_points,
    t_sequence,
    n_directions: int = 16,
    seed: int = 0,
    window: Region | None = None,
    tol: float | None = None,
) -> ConvergenceReport:
    """``max_x |dist(x, Z_{f_t}) - dist(x, Z_{f_t0})|`` over probe points along a sequence.

    ``tol`` defaults to ``1e-3`` times the window radius (or times the
    largest probe norm, at least 1, without a window).  The verdict needs the
    last gap below ``tol`` and gaps non-increasing up to a factor 1.5.
    """
    probes = [tuple(p) if np.ndim(p) else (p,) for p in probe_points]
    if not probes:
        raise ValueError("need at least one probe point")
    if tol is None:
        scale = window.radius if window is not None else max(1.0, max(float(np.linalg.norm(np.array(p, dtype=complex))) for p in probes))
        tol = 1e-3 * scale
    ts = list(parse_t_grid(t_sequence, fam.t0))

    def dists(f):
        out = []
        for p in probes:
            d = dist_to_zero_set(f, p, n_directions, seed).value
            if math.isinf(d):
                raise EmptyZeroSetError("zero set not reached from a probe point")
            out.append(d)
        return np.array(out)

    d0 = dists(_specialize(fam, fam.t0))
    rows = []
    for t in ts:
        gap = float(np.max(np.abs(dists(_specialize(fam, t)) - d0)))
        rows.append({"t": _c(t), "dist_gap": gap, "ok": gap < tol})
    row0 = {"t": _c(fam.t0), "dist_gap": 0.0, "ok": True}
    rep = _assemble("distance_continuity", "dist_gap", fam.t0, ts, rows, row0, seed,
                    {"tol": tol, "probe_distances_t0": d0.tolist(), "n_directions": n_directions})
    gaps = [r["dist_gap"] for r in rows]
    verdict = bool(gaps) and _non_increasing(gaps) and gaps[-1] < tol
    return dataclasses.replace(rep, verdict=verdict)


# ----------------------------------------------------------------------
# cycle convergence through testing discs


def tworzewski_check(fam: ParamFamily, disc: TestingDisc, t_sequence, seed: int = 0) -> ConvergenceReport:
    """Intersection number of ``Z_{f_t}`` with a testing disc along a sequence.

    The property at ``t`` is equality with the degree at ``t0``; roots on the
    disc boundary raise :class:`~lojparam.errors.BoundaryRootError`.
    """
    f0 = _specialize(fam, fam.t0)
    disc.validate(f0)
    d0 = count_roots_in_disc(disc.slice(f0).to_float(), 0j, disc.radius)
    ts = list(parse_t_grid(t_sequence, fam.t0))
    rows = []
    for t in ts:
        g = disc.slice(_specialize(fam, t))
        if g.is_zero():
            raise PreconditionError(f"testing line inside Z_f_t at t = {t}")
        d = count_roots_in_disc(g.to_float(), 0j, disc.radius)
        rows.append({"t": _c(t), "degree": d, "ok": d == d0})
    row0 = {"t": _c(fam.t0), "degree": d0, "ok": True}
    return _assemble("tworzewski", "degree", fam.t0, ts, rows, row0, seed,
                     {"disc": disc.to_json(), "note": SAMPLING_NOTE})


def fibre_family(g: MultiPoly, s0=0, param_name: str = "s") -> ParamFamily:
    """The family ``f(s, x) = g(x) - s`` whose zero sets are the fibres of ``g``."""
    if g.degree < 1:
        raise PreconditionError("g must be non-constant")
    terms = {(0,) + e: c for e, c in g.terms.items()}
    e = (1,) + (0,) * g.nvars
    terms[e] = terms.get(e, 0) - 1
    poly = MultiPoly(terms, g.nvars + 1, g.exact, (param_name,) + g.names)
    return ParamFamily(poly, 0, s0)


def fibre_cycle_convergence(g: MultiPoly, s0, disc: TestingDisc, s_sequence, seed: int = 0) -> ConvergenceReport:
    """Convergence of the fibres ``g^{-1}(s)`` to ``g^{-1}(s0)`` through a testing disc."""
    rep = tworzewski_check(fibre_family(g, s0), disc, s_sequence, seed)
    return rep


# ----------------------------------------------------------------------
# properness of plane-curve intersections


def _sylvester_det(p: list, q: list):
    """Resultant of two polynomials (ascending coefficient lists) over Q(i)."""
    m, n = len(p) - 1, len(q) - 1
    size = m + n
    zero = GaussRat(0)
    rows = []
    for i in range(n):
        rows.append([zero] * i + list(reversed(p)) + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + list(reversed(q)) + [zero] * (size - n - 1 - i))
    det = GaussRat(1)
    for col in range(size):
        piv = next((r for r in range(col, size) if rows[r][col] != 0), None)
        if piv is None:
            return zero
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            det = -det
        det = det * rows[col][col]
        inv = GaussRat(1) / rows[col][col]
        for r in range(col + 1, size):
            if rows[r][col] != 0:
                k = rows[r][col] * inv
                rows[r] = [a - k * b for a, b in zip(rows[r], rows[col])]
    return det


def _fibre_coeffs(f: MultiPoly, u) -> list:
    """Coefficients in the second variable of ``f(u, w)``, exact."""
    d = f.degree_in(1)
    out = [GaussRat(0)] * (d + 1)
    for e, c in f.terms.items():
        out[e[1]] = out[e[1]] + c * u ** e[0]
    return out


def _interpolate(xs: list, ys: list) -> UniPoly:
    """Exact Newton interpolation through ``(xs[i], ys[i])``."""
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    out = [coef[-1]]
    for i in range(n - 2, -1, -1):
        # out * (z - xs[i]) + coef[i]
        new = [GaussRat(0)] * (len(out) + 1)
        for k, c in enumerate(out):
            new[k + 1] = new[k + 1] + c
            new[k] = new[k] - c * xs[i]
        new[0] = new[0] + coef[i]
        out = new
    return UniPoly(out, exact=True)


def resultant_in_second(fx: MultiPoly, fy: MultiPoly) -> UniPoly:
    """``Res_w(fx(u, w), fy(u, w))`` as an exact polynomial in ``u``.

    Evaluated at enough integer points and interpolated; both inputs must
    have constant leading coefficients in ``w``.
    """
    npts = fx.degree * fy.degree + 1
    xs = [GaussRat(k) for k in range(npts)]
    ys = [_sylvester_det(_fibre_coeffs(fx, u), _fibre_coeffs(fy, u)) for u in xs]
    return _interpolate(xs, ys)


def _shear(f: MultiPoly, lam) -> MultiPoly:
    # (x, y) = (u + lam w, w)
    return f.compose_affine([[1, lam], [0, 1]])


def _lead_constant(g: MultiPoly) -> bool:
    d = g.degree_in(1)
    return all(e[0] == 0 for e in g.terms if e[1] == d) and d == g.degree


def plane_intersections(fx: MultiPoly, fy: MultiPoly, seed: int = 0, max_tries: int = 8) -> list[tuple]:
    """Common zeros of two plane curves, or :class:`PropernessError` if they share a component.

    A random shear ``x = u + lam w, y = w`` makes both leading coefficients
    in ``w`` constant; the exact resultant in ``u`` then vanishes
    identically exactly when the curves have a common component.
    """
    if fx.nvars != 2 or fy.nvars != 2:
        raise DimensionError("plane curves need two variables")
    fx, fy = fx.to_exact(), fy.to_exact()
    if fx.degree < 1 or fy.degree < 1:
        return []
    rng = generator(seed, 0x5E4)
    for _ in range(max_tries):
        lam = GaussRat.dyadic(complex(rng.standard_normal(), rng.standard_normal()), 6)
        gx, gy = _shear(fx, lam), _shear(fy, lam)
        if _lead_constant(gx) and _lead_constant(gy):
            break
    else:
        raise PropernessError("no shear made the leading coefficients constant")
    res = resultant_in_second(gx, gy)
    if res.is_zero():
        raise PropernessError("the curves share a component (resultant vanishes identically)")
    pts = []
    if res.degree < 1:
        return pts
    gxf, gyf = gx.to_float(), gy.to_float()
    for _, q in squarefree_decomposition(res):
        if q.degree < 1:
            continue
        for u in all_roots(q.to_float()):
            cx = np.array([complex(c) for c in _fibre_coeffs_float(gxf, u)])
            cy = np.array([complex(c) for c in _fibre_coeffs_float(gyf, u)])
            ws = all_roots(UniPoly(list(cx), exact=False)) if len(cx) > 1 else np.array([])
            if len(ws) == 0:
                continue
            vals = np.abs(np.polyval(cy[::-1], ws)) / (np.polyval(np.abs(cy[::-1]), np.abs(ws)) + 1e-300)
            w = complex(ws[int(np.argmin(vals))])
            pts.append((u + complex(lam) * w, w))
    # merge numerically coincident points
    out: list[tuple] = []
    for p in pts:
        if all(abs(p[0] - q[0]) + abs(p[1] - q[1]) > 1e-8 for q in out):
            out.append(p)
    out.sort(key=lambda p: (p[0].real, p[0].imag, p[1].real, p[1].imag))
    return out


def _fibre_coeffs_float(f: MultiPoly, u: complex) -> list:
    d = f.degree_in(1)
    out = [0j] * (d + 1)
    for e, c in f.terms.items():
        out[e[1]] += c * u ** e[0]
    return out


def properness_persistence_check(
    famX: ParamFamily, famY: ParamFamily, window: Region, t_sequence, seed: int = 0
) -> ConvergenceReport:
    """Finiteness of ``Z_{X_t} ∩ Z_{Y_t}`` for plane-curve families along a sequence.

    Raises
    ------
    PropernessError
        The intersection at ``t0`` is not finite (common component).
    """
    if famX.space_nvars != 2 or famY.space_nvars != 2:
        raise DimensionError("properness persistence is implemented for plane curves")
    if _c(famX.t0) != _c(famY.t0):
        raise PreconditionError("families must share t0")

    def count(t):
        pts = plane_intersections(_specialize(famX, t), _specialize(famY, t), seed)
        return sum(1 for p in pts if window.contains(p))

    try:
        n0 = count(famX.t0)
    except PropernessError as exc:
        raise PropernessError(f"intersection at t0 is not proper: {exc}") from exc
    ts = list(parse_t_grid(t_sequence, famX.t0))
    rows = []
    for t in ts:
        try:
            rows.append({"t": _c(t), "intersections": count(t), "ok": True})
        except PropernessError as exc:
            rows.append({"t": _c(t), "intersections": None, "ok": False, "error": str(exc)})
    row0 = {"t": _c(famX.t0), "intersections": n0, "ok": True}
    return _assemble("properness_persistence", "intersections", famX.t0, ts, rows, row0, seed,
                     {"window": window.to_json()})


# ----------------------------------------------------------------------
# uniform exponent


def uniform_exponent_verify(
    fam: ParamFamily,
    t_grid,
    window: Region,
    n_samples: int = 512,
    seed: int = 0,
) -> ConvergenceReport:
    """Check that ``alpha = ord_a f_t0`` works for every ``f_t`` near ``t0``.

    A Weierstrass frame for ``f_t0`` fixes a box ``V x W``.  For each sample
    ``t`` the zero set of ``f_t`` must avoid ``V x dW``, its slice degree over
    the box must equal ``alpha``, and the shell check of
    ``|f_t| >= c(t) dist^alpha`` must hold; ``c(t)`` is the worst sampled
    ratio and is reported for every ``t``, inside the threshold or not.  ``window`` is the sampling region (centred at ``a``).

    Raises
    ------
    PreconditionError
        ``f(t, a)`` does not vanish identically in ``t``.
    ZeroPolynomialError
        Some ``f_t`` vanishes identically.
    """
    a = _space_base_point(fam, True)
    f0 = _specialize(fam, fam.t0)
    alpha = order_at(f0, a)
    frame = choose_weierstrass_frame(f0, a, seed)
    ts = [t for t in parse_t_grid(t_grid, fam.t0) if _c(t) != _c(fam.t0)]

    def one(f):
        row = {"c_of_t": None, "delta": None, "loj_verdict": None}
        try:
            rep = weierstrass_slice_degree(frame.transform(f), frame.box, seed=seed)
            row["delta"] = rep.delta
            proper = True
        except (PropernessError, SliceInconsistencyError, EmptyZeroSetError, BoundaryRootError) as exc:
            row["error"] = str(exc)
            proper = False
        # c(t) does not depend on the frame, so it is reported for every t
        lr = verify_inequality(f, a, alpha, window, n_samples, seed)
        row["c_of_t"] = lr.worst_ratio_c
        row["loj_verdict"] = lr.verdict
        row["decay_slope"] = lr.decay_slope
        row["ok"] = bool(proper and row["delta"] == alpha and row["loj_verdict"] and row["c_of_t"] > 0)
        return row

    row0 = {"t": _c(fam.t0), **one(f0)}
    rows = [{"t": _c(t), **one(_specialize(fam, t))} for t in ts]
    details = {"alpha": alpha, "frame": frame.to_json(), "window": window.to_json()}
    return _assemble("uniform_exponent", "c_of_t", fam.t0, ts, rows, row0, seed, details)


__all__ = [
    "ConvergenceReport",
    "TestingDisc",
    "discover_threshold",
    "distance_continuity_check",
    "fibre_cycle_convergence",
    "fibre_family",
    "hausdorff_gap",
    "kuratowski_check",
    "local_degree_semicontinuity",
    "order_profile",
    "parse_t_grid",
    "plane_intersections",
    "properness_persistence_check",
    "resultant_in_second",
    "tworzewski_check",
    "uniform_exponent_verify",
    "zero_set_cloud",
]
