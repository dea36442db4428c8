"""Univariate complex polynomials: roots, clusters, disc counts, multiplicities.

Coefficients are stored in ascending order.  A ``UniPoly`` is either exact
(coefficients are :class:`~lojparam.gaussrat.GaussRat`) or float (Python
``complex``).  Exact polynomials additionally support division, gcd and
square-free decomposition, which give multiplicities without tolerances.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import kernels
from .errors import (
    BoundaryRootError,
    DegreeError,
    NotARootError,
    RootFindingError,
    WindingError,
    ZeroPolynomialError,
)
from .gaussrat import GaussRat

ROOT_TOL = 1e-12
MAX_ITER = 200
CONTOUR_NODES = 512
MAX_CONTOUR_NODES = 1 << 16


def _is_exact_scalar(x) -> bool:
    return isinstance(x, (GaussRat, int)) or (
        hasattr(x, "numerator") and hasattr(x, "denominator") and not isinstance(x, float)
    )


@dataclass(frozen=True)
class UniPoly:
    """Univariate polynomial ``sum_k coeffs[k] * z**k``.

    Trailing zero coefficients are trimmed, so ``coeffs[-1]`` is the nonzero
    leading coefficient.  The zero polynomial has ``coeffs == ()`` and
    degree -1.
    """

    coeffs: tuple
    exact: bool = False

    def __init__(self, coeffs: Sequence, exact: bool | None = None):
        coeffs = list(coeffs)
        if exact is None:
            exact = all(_is_exact_scalar(c) for c in coeffs)
        if exact:
            cs = [GaussRat.coerce(c) for c in coeffs]
        else:
            cs = [complex(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "exact", bool(exact))

    @classmethod
    def from_roots(cls, roots, lead=1) -> "UniPoly":
        c = [lead]
        for r in roots:
            nxt = [0] * (len(c) + 1)
            for k, ck in enumerate(c):
                nxt[k + 1] = nxt[k + 1] + ck
                nxt[k] = nxt[k] - r * ck
            c = nxt
        return cls(c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def array(self) -> np.ndarray:
        return np.array([complex(c) for c in self.coeffs], dtype=np.complex128)

    def is_zero(self) -> bool:
        return not self.coeffs

    def to_float(self) -> "UniPoly":
        return self if not self.exact else UniPoly([complex(c) for c in self.coeffs], exact=False)

    def __call__(self, z):
        acc = 0 if self.exact else 0j
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def derivative(self, k: int = 1) -> "UniPoly":
        c = list(self.coeffs)
        for _ in range(k):
            c = [c[j] * j for j in range(1, len(c))]
        return UniPoly(c, exact=self.exact)

    def monic(self) -> "UniPoly":
        if self.is_zero():
            raise ZeroPolynomialError("zero polynomial has no monic form")
        lead = self.coeffs[-1]
        return UniPoly([c / lead for c in self.coeffs], exact=self.exact)

    def __mul__(self, other: "UniPoly") -> "UniPoly":
        if self.is_zero() or other.is_zero():
            return UniPoly([], exact=self.exact and other.exact)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return UniPoly(out, exact=self.exact and other.exact)

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        b = list(other.coeffs) + [0] * (n - len(other.coeffs))
        return UniPoly([x - y for x, y in zip(a, b)], exact=self.exact and other.exact)

    def __repr__(self):
        return f"UniPoly({list(self.coeffs)!r}, exact={self.exact})"


@dataclass(frozen=True)
class RootCluster:
    center: complex
    multiplicity: int
    radius: float = 0.0
    residual: float = 0.0

    def to_json(self) -> dict:
        return {
            "center": [self.center.real, self.center.imag],
            "multiplicity": self.multiplicity,
            "radius": self.radius,
            "residual": self.residual,
        }


# ----------------------------------------------------------------------
# exact polynomial algebra over Q(i)


def exact_divmod(a: UniPoly, b: UniPoly) -> tuple[UniPoly, UniPoly]:
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    r = list(a.coeffs)
    db = b.degree
    lead = b.coeffs[-1]
    q = [GaussRat(0)] * max(len(r) - db, 0)
    for k in range(len(r) - 1 - db, -1, -1):
        coef = r[k + db] / lead
        q[k] = coef
        if coef:
            for j, bj in enumerate(b.coeffs):
                r[k + j] = r[k + j] - coef * bj
    return UniPoly(q, exact=True), UniPoly(r[:db], exact=True)


def exact_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd of two exact polynomials (Euclid over Q(i))."""
    while not b.is_zero():
        _, r = exact_divmod(a, b)
        a, b = b, r
    return a.monic() if not a.is_zero() else a


def squarefree_decomposition(p: UniPoly) -> list[tuple[int, UniPoly]]:
    """Yun's algorithm: ``p = lead * prod q_i**i`` with coprime square-free q_i.

    Returns ``[(i, q_i), ...]`` for the non-constant factors only.
    """
    if not p.exact:
        raise TypeError("square-free decomposition needs exact coefficients")
    if p.degree < 1:
        return []
    dp = p.derivative()
    a = exact_gcd(p, dp)
    b = exact_divmod(p, a)[0]
    c = exact_divmod(dp, a)[0]
    d = c - b.derivative()
    out = []
    i = 1
    while b.degree > 0:
        a = exact_gcd(b, d)
        if a.degree > 0:
            out.append((i, a))
        b = exact_divmod(b, a)[0]
        c = exact_divmod(d, a)[0]
        d = c - b.derivative()
        i += 1
    return out


# ----------------------------------------------------------------------
# numeric root finding


def root_radius_bound(p: UniPoly) -> float:
    """Fujiwara's upper bound on the moduli of the roots of ``p``."""
    c = p.array
    n = len(c) - 1
    if n < 1:
        return 0.0
    lead = abs(c[-1])
    terms = [(abs(c[n - k]) / lead) ** (1.0 / k) for k in range(1, n)]
    terms.append((abs(c[0]) / (2.0 * lead)) ** (1.0 / n))
    return 2.0 * max(terms)


def default_cluster_tol(p: UniPoly) -> float:
    scale = root_radius_bound(p)
    return 1e-6 * (scale if scale > 0 else 1.0)


def all_roots(p: UniPoly, tol: float = ROOT_TOL, maxiter: int = MAX_ITER) -> np.ndarray:
    """All ``deg(p)`` roots, repeated according to multiplicity.

    Exact zero roots are split off first; the rest come from the Aberth
    iteration of :mod:`lojparam.kernels`.  Raises :class:`RootFindingError`
    if some root's backward error stays above ``tol`` after ``maxiter``
    sweeps.
    """
    if p.degree < 1:
        raise DegreeError(f"all_roots needs degree >= 1, got {p.degree}")
    c = p.array
    big = float(np.max(np.abs(c)))
    if not p.exact and abs(c[-1]) <= 1e-14 * big:
        raise DegreeError("near-degenerate leading coefficient")
    nz = 0
    while p.coeffs[nz] == 0:
        nz += 1
    c = c[nz:]
    zeros = np.zeros(nz, dtype=np.complex128)
    n = len(c) - 1
    if n == 0:
        return zeros
    if n == 1:
        return np.concatenate([zeros, [-c[0] / c[1]]])
    roots, it, worst = kernels.aberth(c, tol, maxiter)
    if worst > tol:
        raise RootFindingError(
            f"Aberth iteration stopped after {it} sweeps with backward error {worst:.3e} > {tol:.1e}"
        )
    return np.concatenate([zeros, roots])


def cluster_roots(roots, cluster_tol: float, p: UniPoly | None = None) -> list[RootCluster]:
    """Single-linkage clusters of ``roots`` at distance ``cluster_tol``.

    Clusters come back sorted by (real, imag) of their centers.  When ``p`` is
    given, each cluster's residual is ``|p(center)|``.
    """
    roots = np.asarray(roots, dtype=np.complex128)
    n = len(roots)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(roots[i] - roots[j]) <= cluster_tol:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    out = []
    for members in groups.values():
        pts = roots[members]
        center = complex(np.mean(pts))
        radius = float(np.max(np.abs(pts - center)))
        residual = abs(complex(p(center))) if p is not None else 0.0
        out.append(RootCluster(center, len(members), radius, residual))
    out.sort(key=lambda c: (c.center.real, c.center.imag))
    return out


def count_roots_in_disc(
    p: UniPoly,
    center: complex,
    radius: float,
    tol: float = ROOT_TOL,
    nodes: int = CONTOUR_NODES,
) -> int:
    """Number of roots of ``p`` in the open disc, by the argument principle.

    The trapezoidal sum of ``p'(z)/p(z) dz / (2 pi i)`` is doubled in nodes
    until two successive values agree within 0.05; the result must be within
    0.1 of an integer.
    """
    if p.is_zero():
        raise ZeroPolynomialError("cannot count roots of the zero polynomial")
    if p.degree == 0:
        return 0
    c = p.array
    prev, rel = kernels.winding(c, center, radius, nodes)
    if rel <= 10.0 * tol:
        raise BoundaryRootError(
            f"root within ~{10 * tol:.0e} (relative) of the circle |z-{center}|={radius}"
        )
    while True:
        nodes *= 2
        cur, rel = kernels.winding(c, center, radius, nodes)
        if abs(cur - prev) < 0.05:
            break
        if nodes >= MAX_CONTOUR_NODES:
            raise WindingError(f"winding sum did not stabilise ({prev} vs {cur} at {nodes} nodes)")
        prev = cur
    k = round(cur.real)
    if abs(cur - k) > 0.1:
        raise WindingError(f"winding sum {cur} is not within 0.1 of an integer")
    return int(k)


def _derivative_scale(c: np.ndarray, r: complex, k: int) -> tuple[complex, float]:
    """Value of the k-th derivative at r and its coefficient scale at |r|."""
    n = len(c) - 1
    val = 0j
    scale = 0.0
    ar = abs(r)
    for j in range(n, k - 1, -1):
        f = math.perm(j, k)
        val = val * r + c[j] * f
        scale = scale * ar + abs(c[j]) * f
    return val, scale


def multiplicity_at(p: UniPoly, r, deriv_tol: float = 1e-8) -> int:
    """Multiplicity of ``r`` as a root of ``p``.

    Exact polynomials with an exact ``r`` use repeated exact division by
    ``z - r``.  Otherwise the smallest k >= 1 whose k-th derivative exceeds
    ``deriv_tol`` times its coefficient scale is returned.
    """
    if p.degree < 1:
        raise DegreeError("multiplicity needs a non-constant polynomial")
    if p.exact and _is_exact_scalar(r):
        r = GaussRat.coerce(r)
        lin = UniPoly([-r, 1], exact=True)
        k = 0
        q = p
        while q.degree >= 1:
            quo, rem = exact_divmod(q, lin)
            if not rem.is_zero():
                break
            k += 1
            q = quo
        if k == 0:
            raise NotARootError(f"{r} is not a root")
        return k
    c = p.array
    r = complex(r)
    val, scale = _derivative_scale(c, r, 0)
    if abs(val) > deriv_tol * scale:
        raise NotARootError(f"|p({r})| = {abs(val):.3e} exceeds {deriv_tol:.1e} x scale")
    for k in range(1, p.degree + 1):
        val, scale = _derivative_scale(c, r, k)
        if abs(val) > deriv_tol * scale:
            return k
    return p.degree


def inclusion_clusters(p: UniPoly, roots) -> list[RootCluster]:
    """Cluster approximations by overlapping inclusion discs.

    Disc i is centred at r_i with radius ``n * |W_i|``, where W_i is the
    Weierstrass correction ``p(r_i) / (lead * prod_{j != i} (r_i - r_j))``
    with ``|p(r_i)|`` inflated by its rounding-error bound.  A connected
    component of k overlapping discs holds exactly k roots, so components are
    reported as clusters of multiplicity k.
    """
    roots = np.asarray(roots, dtype=np.complex128)
    n = len(roots)
    if n == 0:
        return []
    c = p.array
    lead = c[-1]
    vals, _ = kernels.horner(c, roots)
    absc = np.abs(c)
    rad = np.empty(n)
    for i in range(n):
        s = 0.0
        ar = abs(roots[i])
        for ck in absc[::-1]:
            s = s * ar + ck
        num = abs(vals[i]) + 4.0 * n * 2.220446049250313e-16 * s
        diffs = roots[i] - np.delete(roots, i)
        den = abs(lead) * float(np.prod(np.abs(diffs))) if n > 1 else abs(lead)
        if num == 0.0:
            rad[i] = 0.0
        else:
            rad[i] = n * num / den if den > 0 else math.inf
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(roots[i] - roots[j]) <= rad[i] + rad[j]:
                parent[max(find(i), find(j))] = min(find(i), find(j))
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    out = []
    for members in groups.values():
        pts = roots[members]
        center = complex(np.mean(pts))
        out.append(RootCluster(center, len(members), float(np.max(np.abs(pts - center))),
                               abs(complex(p(center)))))
    out.sort(key=lambda c: (c.center.real, c.center.imag))
    return out


def clusters_in_disc(
    p: UniPoly,
    center: complex,
    radius: float,
    cluster_tol: float | None = None,
    tol: float = ROOT_TOL,
) -> list[RootCluster]:
    """Root clusters of ``p`` strictly inside a disc, with multiplicities.

    Exact polynomials go through the square-free decomposition, so
    multiplicities need no tolerance.  Float polynomials are clustered with
    ``cluster_tol`` when given, else by :func:`inclusion_clusters`.
    """
    if p.is_zero():
        raise ZeroPolynomialError("zero polynomial has no isolated roots")
    if p.degree < 1:
        return []
    center = complex(center)
    out = []
    if p.exact:
        for mult, q in squarefree_decomposition(p):
            for r in all_roots(q.to_float(), tol):
                if abs(r - center) < radius:
                    out.append(RootCluster(complex(r), mult, 0.0, abs(complex(p(GaussRat.coerce(complex(r)))))))
        out.sort(key=lambda c: (c.center.real, c.center.imag))
        return out
    roots = all_roots(p, tol)
    if cluster_tol is None:
        clusters = inclusion_clusters(p, roots)
    else:
        clusters = cluster_roots(roots, cluster_tol, p)
    for cl in clusters:
        if abs(cl.center - center) < radius:
            out.append(cl)
    return out
