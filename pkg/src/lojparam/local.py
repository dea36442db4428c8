"""Local invariants of a hypersurface germ ``Z_f`` at a point.

The degree counts intersect ``Z_f`` with random complex lines passing close
to the point and count the roots of the restriction in a small disc, with
multiplicity for the cycle degree and without it for the reduced degree.
Genericity is made falsifiable: every count is repeated over independent
probes and two probe radii and must agree.

>>> x, y = MultiPoly.variables(2)
>>> local_degree_cycle(x * y, (0, 0))
2
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import (
    BoundaryRootError,
    EmptyZeroSetError,
    FrameError,
    NotARootError,
    ProbeInstabilityError,
    PropernessError,
    SliceInconsistencyError,
    WindingError,
    ZeroPolynomialError,
)
from .gaussrat import GaussRat
from .poly import INFINITE, MultiPoly, Region, _check_point, evaluate, order_at, restrict_to_line
from .rng import dyadic_vector, generator, unit_vectors
from .uni import RootCluster, UniPoly, all_roots, clusters_in_disc, count_roots_in_disc

PROBE_RADIUS = 1e-3
PROBE_OFFSET = 0.01  # offset of the probe line, as a fraction of the probe radius
PROBE_CLEARANCE = 4.0  # other zeros on the line through the point must be this many radii away
MAX_REDRAWS = 50
PROPERNESS_TOL = 1e-8
ROOT_RESIDUAL_TOL = 1e-10
BOUNDARY_NODES = 256
BOUNDARY_REL_TOL = 1e-6  # fibre roots this close to dW (relative) violate properness
AUDIT_POINTS = 32  # extra base points near dV checked when choosing a frame


def _require_nonzero(f: MultiPoly) -> None:
    if f.is_zero():
        raise ZeroPolynomialError("f vanishes identically")


def _require_root(f: MultiPoly, a) -> list:
    a = _check_point(f, a)
    if f.exact:
        a = [GaussRat.coerce(x) for x in a]
        val = evaluate(f, a)
        if val != 0:
            raise NotARootError(f"f(a) = {complex(val)} is not zero")
        return a
    val = complex(evaluate(f, a))
    if abs(val) > ROOT_RESIDUAL_TOL * max(f.max_abs_coeff(), 1.0):
        raise NotARootError(f"f(a) = {val} is not zero")
    return a


def _orthogonal(rng: np.random.Generator, v: np.ndarray) -> np.ndarray:
    w = unit_vectors(rng, 1, len(v))[0]
    w = w - np.vdot(v, w) * v
    return w / np.linalg.norm(w)


def _far_from_other_zeros(f: MultiPoly, a: list, v, radius: float) -> bool:
    """True when ``s -> f(a + s v)`` has no zero other than ``s = 0`` within ``4 R``."""
    g = restrict_to_line(f, a, v)
    if g.is_zero():
        return False
    c = list(g.coeffs)
    if g.exact:
        while c and c[0] == 0:
            c.pop(0)
    else:
        big = max(abs(x) for x in c)
        while c and abs(c[0]) <= 1e-12 * big:
            c.pop(0)
    if len(c) < 2:
        return True
    rest = UniPoly(c, exact=g.exact)
    return float(np.min(np.abs(all_roots(rest.to_float())))) >= PROBE_CLEARANCE * radius


def _probe_line(f: MultiPoly, a: list, radius: float, rng: np.random.Generator) -> UniPoly:
    """Restriction of ``f`` to a random line passing at distance ``0.01 R`` from ``a``.

    Directions along which the line through ``a`` meets another zero of
    ``f`` within ``4 R`` are redrawn: for them the probe ball is not small
    enough to isolate the germ.
    """
    m = f.nvars
    for _ in range(MAX_REDRAWS):
        v = unit_vectors(rng, 1, m)[0]
        w = _orthogonal(rng, v) if m > 1 else np.zeros(1, dtype=complex)
        vq = dyadic_vector(v) if f.exact else list(v)
        if _far_from_other_zeros(f, a, vq, radius):
            break
    else:
        raise ProbeInstabilityError(f"no probe direction isolates the germ at radius {radius}")
    eps = PROBE_OFFSET * radius
    if f.exact:
        # dyadic directions keep the restriction exact and cheap
        eq = GaussRat.coerce(eps)
        wq = dyadic_vector(w)
        p = [GaussRat.coerce(ai) + eq * wi for ai, wi in zip(a, wq)]
        return restrict_to_line(f, p, vq)
    p = np.array([complex(ai) for ai in a]) + eps * w
    return restrict_to_line(f, list(p), vq)


def _probe_counts(f: MultiPoly, a, probe_radius: float, trials: int, seed: int) -> list[tuple[int, int]]:
    """``(with multiplicity, distinct)`` root counts for every trial and radius."""
    _require_nonzero(f)
    a = _require_root(f, a)
    if trials < 1:
        raise ValueError("trials must be positive")
    if not probe_radius > 0:
        raise ValueError("probe_radius must be positive")
    out = []
    for k in range(trials):
        g = _probe_line(f, a, probe_radius, generator(seed, k))
        if g.is_zero():
            raise ProbeInstabilityError(f"probe line {k} lies inside the zero set")
        for r in (probe_radius, probe_radius / 2):
            cl = clusters_in_disc(g, 0j, r)
            out.append((sum(c.multiplicity for c in cl), len(cl)))
    return out


def _stable(counts: list[int], what: str) -> int:
    if len(set(counts)) != 1:
        raise ProbeInstabilityError(f"{what} counts disagree across probes/radii: {counts}")
    if counts[0] < 1:
        raise ProbeInstabilityError(f"{what} probe found no intersection near the point")
    return counts[0]


def local_degree_cycle(f: MultiPoly, a, probe_radius: float = PROBE_RADIUS, trials: int = 5, seed: int = 0) -> int:
    """Local degree of the zero cycle ``Z_f`` at ``a``.

    Counts, with multiplicity, the intersections of ``Z_f`` with a generic
    line passing near ``a`` inside a disc of radius ``probe_radius``.

    Raises
    ------
    ZeroPolynomialError
        If ``f`` is identically zero.
    NotARootError
        If ``f(a) != 0``.
    ProbeInstabilityError
        If the counts differ between trials or between the two radii.
    """
    counts = _probe_counts(f, a, probe_radius, trials, seed)
    return _stable([c[0] for c in counts], "cycle")


def local_degree_set(f: MultiPoly, a, probe_radius: float = PROBE_RADIUS, trials: int = 5, seed: int = 0) -> int:
    """Local degree of the reduced zero set at ``a`` (distinct intersections)."""
    counts = _probe_counts(f, a, probe_radius, trials, seed)
    return _stable([c[1] for c in counts], "set")


# ----------------------------------------------------------------------
# distance to the zero set


@dataclass(frozen=True)
class DistanceEstimate:
    """Upper bound ``value`` for ``dist(query, Z_f)`` realized by ``witness``."""

    value: float
    witness: tuple | None
    directions_used: int
    seed: int = 0

    def to_json(self) -> dict:
        return {
            "value": None if math.isinf(self.value) else self.value,
            "witness": None if self.witness is None else [[w.real, w.imag] for w in self.witness],
            "directions_used": self.directions_used,
            "seed": self.seed,
        }


REFINE_STEPS = 3


def _sweep(f: MultiPoly, z: np.ndarray, dirs: np.ndarray) -> np.ndarray:
    """Nearest zero of ``f`` along each line ``z + s v``; rows of nan when none."""
    exps, coeffs = f.float_arrays()
    s = kernels.nearest_roots(exps, coeffs, z, dirs, max(f.degree, 0))
    return z[None, :] + s[:, None] * dirs


def _normalize(dirs: np.ndarray) -> np.ndarray:
    n = np.linalg.norm(dirs, axis=1)
    ok = n > 0
    out = np.zeros_like(dirs)
    out[ok] = dirs[ok] / n[ok, None]
    return out[ok]


def sweep_directions(f: MultiPoly, z, n_directions: int, seed: int, extra_directions=None) -> np.ndarray:
    """Deterministic directions first, then ``n_directions`` seeded random ones.

    The random block is drawn one direction at a time from one stream, so a
    larger ``n_directions`` extends the list instead of replacing it.
    """
    z = np.asarray(z, dtype=np.complex128)
    m = len(z)
    first = [-z, np.conj(f.gradient(z))]
    if extra_directions is not None:
        first.extend(np.asarray(extra_directions, dtype=np.complex128).reshape(-1, m))
    raw = generator(seed, 0xD15).standard_normal((n_directions, m, 2))
    rand = raw[..., 0] + 1j * raw[..., 1]
    return np.concatenate([_normalize(np.array(first)), _normalize(rand)])


def dist_to_zero_set(f: MultiPoly, z, n_directions: int = 16, seed: int = 0, extra_directions=None) -> DistanceEstimate:
    """Line-sweep upper bound for the distance from ``z`` to ``f^{-1}(0)``.

    Along each direction the root of ``s -> f(z + s v)`` of smallest modulus
    gives a zero of ``f``; each such zero is then refined by sweeping along
    the conjugate gradient at it (the normal of the zero set), which is
    where the nearest point lies.  The reported value is the smallest
    ``|z - witness|`` over every candidate.  Each direction is refined on its
    own, so adding directions can only lower the value.

    Parameters
    ----------
    f : MultiPoly
        Nonzero polynomial.
    z : point
        Query point.
    n_directions : int
        Number of random directions (in addition to the direction toward the
        origin and the conjugate gradient at ``z``).
    seed : int
    extra_directions : array_like, optional
        Further fixed directions tried before the random ones.

    Returns
    -------
    DistanceEstimate
        ``value`` is ``inf`` and ``witness`` is ``None`` when no line meets
        the zero set.
    """
    _require_nonzero(f)
    if n_directions < 0:
        raise ValueError("n_directions must be nonnegative")
    zq = np.array([complex(x) for x in _check_point(f, z)], dtype=np.complex128)
    ff = f.to_float()
    dirs = sweep_directions(ff, zq, n_directions, seed, extra_directions)
    best, witness = math.inf, None
    if len(dirs):
        cands = [_sweep(ff, zq, dirs)]
        cur = cands[0]
        for _ in range(REFINE_STEPS):
            ok = np.all(np.isfinite(cur), axis=1)
            if not ok.any():
                break
            nd = np.zeros_like(cur)
            nd[ok] = np.conj(ff.gradient_many(cur[ok]))
            norms = np.linalg.norm(nd, axis=1)
            good = ok & (norms > 0)
            nxt = np.full_like(cur, complex(math.nan, math.nan))
            if good.any():
                nxt[good] = _sweep(ff, zq, nd[good] / norms[good, None])
            cands.append(nxt)
            cur = np.where(np.all(np.isfinite(nxt), axis=1)[:, None], nxt, cur)
        pts = np.concatenate(cands)
        pts = pts[np.all(np.isfinite(pts), axis=1)]
        if len(pts):
            d = np.linalg.norm(pts - zq[None, :], axis=1)
            i = int(np.argmin(d))
            best, witness = float(d[i]), tuple(complex(c) for c in pts[i])
    return DistanceEstimate(best, witness, int(len(dirs)), seed)


# ----------------------------------------------------------------------
# Weierstrass slices


@dataclass(frozen=True)
class SliceCycleReport:
    """Roots of ``f(x, .)`` inside the fibre disc ``W`` over a generic ``x``."""

    base_point: tuple
    roots: tuple
    delta: int
    covering_number_d: int
    seed: int = 0
    box: Region | None = None

    def __post_init__(self):
        if self.delta != sum(c.multiplicity for c in self.roots):
            raise ValueError("delta must equal the sum of multiplicities")
        if not 1 <= self.covering_number_d <= self.delta:
            raise ValueError("need 1 <= d <= delta")
        if self.covering_number_d != len(self.roots):
            raise ValueError("d must equal the number of root clusters")

    def to_json(self) -> dict:
        return {
            "base_point": [[complex(b).real, complex(b).imag] for b in self.base_point],
            "roots": [c.to_json() for c in self.roots],
            "delta": self.delta,
            "covering_number_d": self.covering_number_d,
            "seed": self.seed,
            "box": None if self.box is None else self.box.to_json(),
        }


def _fibre(f: MultiPoly, x) -> UniPoly:
    m = f.nvars
    e = [0] * m
    e[-1] = 1
    return restrict_to_line(f, list(x) + [0], e)


def _base_points(box: Region, n: int, seed: int, exact: bool) -> list:
    m = box.nvars
    if m == 1:
        return [()]
    vbox = Region(box.center[:-1], box.radii[:-1])
    pts = vbox.sample(generator(seed, 0xBA5E), n)
    if exact:
        return [tuple(dyadic_vector(p, 30)) for p in pts]
    return [tuple(complex(c) for c in p) for p in pts]


def _boundary_base_points(box: Region, n: int, seed: int, exact: bool) -> list:
    """Base points on the boundary of ``V``, where fibre roots move furthest."""
    m = box.nvars - 1
    if m == 0:
        return []
    rng = generator(seed, 0xED6E)
    c = np.array(box.center[:-1])
    r = np.array(box.radii[:-1])
    ang = np.exp(2j * np.pi * rng.random((n, m)))
    pts = c + r * ang  # distinguished boundary
    half = n // 2
    inner = Region(box.center[:-1], box.radii[:-1]).sample(rng, half)
    which = rng.integers(0, m, size=half)
    inner[np.arange(half), which] = pts[np.arange(half), which]
    pts[:half] = inner
    if exact:
        return [tuple(dyadic_vector(p, 30)) for p in pts]
    return [tuple(complex(v) for v in p) for p in pts]


def check_properness(f: MultiPoly, box: Region, base_points, nodes: int = BOUNDARY_NODES, seed: int = 0) -> float:
    """Ratio of min ``|f|`` on ``{x} x dW`` to max ``|f|`` on the box.

    Raises :class:`PropernessError` when it is at most the properness
    tolerance for any of the given base points.
    """
    ff = f.to_float()
    m = f.nvars
    cw, rw = box.center[-1], box.radii[-1]
    circle = cw + rw * np.exp(2j * np.pi * (np.arange(nodes) + 0.5) / nodes)
    bmin = math.inf
    bmax = 0.0
    for x in base_points:
        pts = np.empty((nodes, m), dtype=np.complex128)
        pts[:, :-1] = np.array([complex(c) for c in x])
        pts[:, -1] = circle
        vals = np.abs(ff.eval_many(pts))
        bmin = min(bmin, float(vals.min()))
        bmax = max(bmax, float(vals.max()))
        # a zero on dW can fall between the nodes; catch it from the fibre roots
        g = _fibre(ff, x)
        if g.degree >= 1:
            near = np.abs(np.abs(all_roots(g) - cw) - rw)
            if near.min() <= BOUNDARY_REL_TOL * rw:
                raise PropernessError(f"a zero of f(x, .) lies on dW at x = {x}")
    inner = np.abs(ff.eval_many(box.sample(generator(seed, 0xB0C5), 512)))
    scale = max(bmax, float(inner.max()))
    if scale == 0 or bmin <= PROPERNESS_TOL * scale:
        raise PropernessError(
            f"zero set meets V x dW: min |f| on the lateral boundary {bmin:.3g} vs max {scale:.3g}"
        )
    return bmin / scale


def weierstrass_slice_degree(f: MultiPoly, box: Region, n_base_points: int = 5, seed: int = 0) -> SliceCycleReport:
    """Degree ``delta`` and covering number ``d`` of ``Z_f`` over a box ``V x W``.

    The last variable is the fibre coordinate.  For generic base points
    ``x`` in ``V`` the roots of ``f(x, .)`` inside ``W`` are clustered with
    multiplicity; ``delta`` is their total and ``d`` the number of distinct
    roots.  The argument principle on ``dW`` cross-checks ``delta``.

    Raises
    ------
    PropernessError
        The zero set comes numerically close to ``V x dW``.
    SliceInconsistencyError
        Base points disagree about ``(delta, d)``, or the contour count
        disagrees with the clusters.
    EmptyZeroSetError
        No zeros over the box.
    """
    _require_nonzero(f)
    if box.nvars != f.nvars:
        raise ValueError("box dimension differs from nvars")
    if n_base_points < 1:
        raise ValueError("n_base_points must be positive")
    return _slice_over(f, box, _base_points(box, n_base_points, seed, f.exact), seed)


def _slice_over(f: MultiPoly, box: Region, bps: list, seed: int) -> SliceCycleReport:
    check_properness(f, box, bps, seed=seed)
    cw, rw = box.center[-1], box.radii[-1]
    seen = None
    first = None
    for x in bps:
        g = _fibre(f, x)
        if g.is_zero():
            raise PropernessError(f"f(x, .) vanishes identically at x = {x}")
        cl = clusters_in_disc(g, cw, rw) if g.degree >= 1 else []
        delta = sum(c.multiplicity for c in cl)
        if g.degree >= 1:
            try:
                wind = count_roots_in_disc(g.to_float(), cw, rw)
            except (BoundaryRootError, WindingError) as exc:
                raise PropernessError(f"contour count on dW failed at x = {x}: {exc}") from exc
            if wind != delta:
                raise SliceInconsistencyError(f"contour count {wind} differs from cluster count {delta}")
        key = (delta, len(cl))
        if seen is None:
            seen, first = key, (x, cl)
        elif key != seen:
            raise SliceInconsistencyError(f"(delta, d) = {key} at {x} but {seen} at {first[0]}")
    if seen[0] == 0:
        raise EmptyZeroSetError("f has no zeros over the box")
    x, cl = first
    return SliceCycleReport(tuple(complex(c) for c in x), tuple(cl), seen[0], seen[1], seed, box)


# ----------------------------------------------------------------------
# frames


def _exact_solve(a: list[list], b: list[list]) -> list[list]:
    """Solve ``a X = b`` over Q(i) by Gauss-Jordan elimination."""
    n = len(a)
    m = [list(ra) + list(rb) for ra, rb in zip(a, b)]
    for col in range(n):
        piv = next(r for r in range(col, n) if m[r][col] != 0)
        m[col], m[piv] = m[piv], m[col]
        inv = GaussRat(1) / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                k = m[r][col]
                m[r] = [x - k * y for x, y in zip(m[r], m[col])]
    return [row[n:] for row in m]


def cayley_unitary(rng: np.random.Generator, n: int, exact: bool = True, bits: int = 8):
    """Random unitary ``(I - A)(I + A)^{-1}`` with ``A`` skew-Hermitian.

    With ``exact=True`` the entries of ``A`` are dyadic, so the result is an
    exactly unitary matrix over Q(i).
    """
    b = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    a = (b - b.conj().T) / 2
    if not exact:
        eye = np.eye(n)
        return (eye - a) @ np.linalg.inv(eye + a)
    aq = [[GaussRat.dyadic(complex(a[i, j]), bits) for j in range(n)] for i in range(n)]
    for i in range(n):
        aq[i][i] = GaussRat(0, aq[i][i].im)
        for j in range(i):
            aq[i][j] = -aq[j][i].conjugate()
    one = GaussRat(1)
    zero = GaussRat(0)
    ipa = [[(one if i == j else zero) + aq[i][j] for j in range(n)] for i in range(n)]
    ima = [[(one if i == j else zero) - aq[i][j] for j in range(n)] for i in range(n)]
    # U = (I - A)(I + A)^{-1}; the two factors commute, so solve (I + A) U = I - A
    return _exact_solve(ipa, ima)


@dataclass(frozen=True)
class WeierstrassFrame:
    """Unitary frame ``x = origin + matrix @ y`` and a box ``V x W`` in ``y``.

    In the frame the last coordinate axis meets ``Z_f`` at the origin with
    multiplicity ``order`` and the zero set stays away from ``V x dW``.
    """

    matrix: tuple
    origin: tuple
    box: Region
    order: int
    seed: int
    attempts: int
    report: SliceCycleReport | None = field(default=None, compare=False)

    def transform(self, f: MultiPoly) -> MultiPoly:
        """``f`` in frame coordinates: ``y -> f(origin + matrix @ y)``."""
        return f.compose_affine(self.matrix, self.origin)

    def __iter__(self):
        return iter((self.matrix, self.box))

    def to_json(self) -> dict:
        return {
            "matrix": [[[complex(x).real, complex(x).imag] for x in row] for row in self.matrix],
            "origin": [[complex(x).real, complex(x).imag] for x in self.origin],
            "box": self.box.to_json(),
            "order": self.order,
            "seed": self.seed,
            "attempts": self.attempts,
        }


def _axis_restriction(g: MultiPoly) -> UniPoly:
    e = [0] * g.nvars
    e[-1] = 1
    return restrict_to_line(g, [0] * g.nvars, e)


def choose_weierstrass_frame(
    f: MultiPoly,
    a,
    seed: int = 0,
    max_radius: float = 0.5,
    max_attempts: int = 20,
    n_base_points: int = 5,
) -> WeierstrassFrame:
    """Unitary coordinates at ``a`` in which ``Z_f`` is a proper covering of degree ``ord_a f``.

    Each attempt draws a random unitary frame, checks that the last axis
    meets ``Z_f`` with multiplicity ``order_at(f, a)``, takes ``W`` half way
    to the next zero on that axis and shrinks ``V`` until the slice degree
    over the box is stable and equals the order.

    Raises
    ------
    FrameError
        No attempt succeeded; the message lists why each one failed.
    """
    _require_nonzero(f)
    a = _require_root(f, a)
    k = order_at(f, a)
    if k == INFINITE:
        raise ZeroPolynomialError("f vanishes identically up to tolerance")
    n = f.nvars
    origin = tuple(GaussRat.coerce(x) for x in a) if f.exact else tuple(complex(x) for x in a)
    failures = []
    for attempt in range(1, max_attempts + 1):
        rng = generator(seed, 0xF7A, attempt)
        u = cayley_unitary(rng, n, exact=f.exact)
        g = f.compose_affine(u, origin)
        h = _axis_restriction(g)
        lowest = next((i for i, c in enumerate(h.coeffs) if c != 0), None) if h.exact else None
        if not h.exact:
            arr = h.array
            big = float(np.max(np.abs(arr))) if len(arr) else 0.0
            lowest = next((i for i, c in enumerate(arr) if abs(c) > 1e-12 * big), None)
        if lowest != k:
            failures.append(f"attempt {attempt}: axis order {lowest} != {k}")
            continue
        others = [r for r in all_roots(h.to_float())] if h.degree > 0 else []
        others = [abs(r) for r in others if abs(r) > 1e-6] if h.degree > k else []
        rw = min(max_radius, min(others) / 2) if others else max_radius
        rv = rw
        for _ in range(12):
            box = Region((0j,) * n, (rv,) * (n - 1) + (rw,))
            try:
                rep = weierstrass_slice_degree(g, box, n_base_points, seed)
                if n > 1 and rep.delta == k:
                    # audit near dV before accepting the box
                    _slice_over(g, box, _boundary_base_points(box, AUDIT_POINTS, seed, g.exact), seed)
            except (PropernessError, SliceInconsistencyError, EmptyZeroSetError) as exc:
                failures.append(f"attempt {attempt}, V radius {rv:.3g}: {exc}")
            else:
                if rep.delta == k:
                    return WeierstrassFrame(tuple(tuple(r) for r in u), origin, box, int(k), seed, attempt, rep)
                failures.append(f"attempt {attempt}, V radius {rv:.3g}: delta {rep.delta} != {k}")
            if n == 1:
                break
            rv /= 4
    raise FrameError("no Weierstrass frame found:\n" + "\n".join(failures[-10:]))


__all__ = [
    "DistanceEstimate",
    "SliceCycleReport",
    "WeierstrassFrame",
    "RootCluster",
    "cayley_unitary",
    "check_properness",
    "choose_weierstrass_frame",
    "dist_to_zero_set",
    "local_degree_cycle",
    "local_degree_set",
    "sweep_directions",
    "weierstrass_slice_degree",
]
