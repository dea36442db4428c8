"""Pure-Python/numpy implementations of the numeric kernels.

Every function here has a twin with the same signature in ``_ckernels.pyx``.
Both follow the same operation order, so results agree to rounding.
"""

import cmath
import math

import numpy as np

EPS = 2.220446049250313e-16
_SIGMA = 0.4


def initial_points(coeffs):
    """Aberth starting points placed on the circles of the Newton polygon."""
    n = len(coeffs) - 1
    logs = []
    for k in range(n + 1):
        a = abs(coeffs[k])
        logs.append(math.log(a) if a > 0.0 else -math.inf)
    # upper convex hull of (k, log|c_k|), left to right
    hull = []
    for k in range(n + 1):
        if logs[k] == -math.inf:
            continue
        while len(hull) >= 2:
            i, j = hull[-2], hull[-1]
            # drop j if it lies on or below the segment i -> k
            if (logs[j] - logs[i]) * (k - i) <= (logs[k] - logs[i]) * (j - i):
                hull.pop()
            else:
                break
        hull.append(k)
    z = np.empty(n, dtype=np.complex128)
    pos = 0
    for h in range(len(hull) - 1):
        i, j = hull[h], hull[h + 1]
        m = j - i
        u = math.exp((logs[i] - logs[j]) / m)
        for l in range(m):
            ang = 2.0 * math.pi * l / m + 2.0 * math.pi * i / n + _SIGMA
            z[pos] = u * complex(math.cos(ang), math.sin(ang))
            pos += 1
    return z


def aberth(coeffs, tol, maxiter):
    """Simultaneous Aberth-Ehrlich iteration (Gauss-Seidel sweep order).

    ``coeffs`` are ascending with ``coeffs[0] != 0`` and ``coeffs[-1] != 0``.
    Returns ``(roots, iterations, max_backward_error)`` where the backward
    error of a root r is ``|p(r)| / sum_k |c_k| |r|^k``.
    """
    c = [complex(x) for x in coeffs]
    ac = [abs(x) for x in c]
    n = len(c) - 1
    roots = [complex(x) for x in initial_points(coeffs)]
    done = [False] * n
    stop = 8.0 * n * EPS
    it = 0
    for it in range(1, maxiter + 1):
        for i in range(n):
            if done[i]:
                continue
            z = roots[i]
            p = c[n]
            dp = 0j
            az = abs(z)
            s = ac[n]
            for k in range(n - 1, -1, -1):
                dp = dp * z + p
                p = p * z + c[k]
                s = s * az + ac[k]
            if abs(p) <= stop * s:
                done[i] = True
                continue
            sm = 0j
            for j in range(n):
                if j != i:
                    d = z - roots[j]
                    if d == 0:
                        d = complex(EPS * (az + 1.0), 0.0)
                    sm += 1.0 / d
            den = dp - p * sm
            if den == 0:
                w = complex(1e-8 * (az + 1.0), 0.0)
            else:
                w = p / den
            roots[i] = z - w
            if abs(w) <= EPS * abs(roots[i]):
                done[i] = True
        if all(done):
            break
    worst = 0.0
    for i in range(n):
        z = roots[i]
        p = c[n]
        az = abs(z)
        s = ac[n]
        for k in range(n - 1, -1, -1):
            p = p * z + c[k]
            s = s * az + ac[k]
        worst = max(worst, abs(p) / s)
    return np.array(roots, dtype=np.complex128), it, worst


def horner(coeffs, z):
    """Values and first derivatives of a univariate polynomial at points z."""
    z = np.asarray(z, dtype=np.complex128)
    p = np.full(z.shape, coeffs[-1], dtype=np.complex128)
    dp = np.zeros(z.shape, dtype=np.complex128)
    for k in range(len(coeffs) - 2, -1, -1):
        dp = dp * z + p
        p = p * z + coeffs[k]
    return p, dp


def winding(coeffs, center, radius, nodes):
    """Trapezoidal argument-principle sum over the circle |z - center| = radius.

    Returns ``(sum, min_relative_modulus)`` where the latter is
    ``min |p(z)| / sum_k |c_k| |z|^k`` over the nodes.
    """
    theta = 2.0 * math.pi * np.arange(nodes) / nodes
    u = radius * np.exp(1j * theta)
    z = center + u
    p, dp = horner(coeffs, z)
    az = np.abs(z)
    s = np.full(z.shape, abs(coeffs[-1]))
    for k in range(len(coeffs) - 2, -1, -1):
        s = s * az + abs(coeffs[k])
    total = complex(np.mean(dp * u / p))
    return total, float(np.min(np.abs(p) / s))


def eval_multi(exps, coeffs, pts):
    """Evaluate a sparse polynomial at each row of ``pts``."""
    pts = np.asarray(pts, dtype=np.complex128)
    if pts.ndim == 1:
        pts = pts[None, :]
    if len(coeffs) == 0:
        return np.zeros(pts.shape[0], dtype=np.complex128)
    mono = np.prod(pts[:, None, :] ** exps[None, :, :], axis=2)
    return mono @ coeffs


def _linear_powers(a, b, emax):
    # (a + b s)^e for e = 0..emax, ascending coefficient arrays
    out = [np.ones(1, dtype=np.complex128)]
    lin = np.array([a, b], dtype=np.complex128)
    for _ in range(emax):
        out.append(np.convolve(out[-1], lin))
    return out


def restrict_line(exps, coeffs, p, v, deg):
    """Coefficients (ascending, length deg+1) of s -> f(p + s v)."""
    out = np.zeros(deg + 1, dtype=np.complex128)
    if len(coeffs) == 0:
        return out
    nv = exps.shape[1]
    emax = exps.max(axis=0) if exps.size else np.zeros(nv, dtype=np.int64)
    pw = [_linear_powers(complex(p[i]), complex(v[i]), int(emax[i])) for i in range(nv)]
    for t in range(len(coeffs)):
        acc = np.array([coeffs[t]], dtype=np.complex128)
        for i in range(nv):
            e = int(exps[t, i])
            if e:
                acc = np.convolve(acc, pw[i][e])
        out[: len(acc)] += acc
    return out


def nearest_roots(exps, coeffs, z, dirs, deg, tol, maxiter):
    """For each direction v, the root s of f(z + s v) of smallest modulus.

    Entries are ``nan`` when the restriction has no roots.  Leading
    coefficients below ``1e-14`` of the largest one are treated as zero.
    """
    out = np.full(dirs.shape[0], complex(math.nan, math.nan), dtype=np.complex128)
    for d in range(dirs.shape[0]):
        c = restrict_line(exps, coeffs, z, dirs[d], deg)
        big = float(np.max(np.abs(c))) if len(c) else 0.0
        if big == 0.0:
            continue
        n = len(c) - 1
        while n > 0 and abs(c[n]) <= 1e-14 * big:
            n -= 1
        if n == 0:
            continue
        if c[0] == 0:
            out[d] = 0j
            continue
        c = c[: n + 1]
        if n == 1:
            out[d] = -c[0] / c[1]
            continue
        r, _, _ = aberth(c, tol, maxiter)
        out[d] = cluster_mean(c, r, int(np.argmin(np.abs(r))))
    return out


def cluster_mean(c, roots, best):
    """Mean of the approximations whose (doubled) inclusion discs chain to ``roots[best]``.

    A k-fold root comes back as k approximations spread by about eps**(1/k).
    Their mean is then polished by Newton steps on the (k-1)-th derivative,
    which has a simple root there.
    """
    n = len(c) - 1
    rad = np.empty(n)
    for i, r in enumerate(roots):
        p, dp = horner(c, r)
        s = np.polyval(np.abs(c[::-1]), abs(r))
        rad[i] = math.inf if dp == 0 else 2 * n * (abs(p) + 4 * n * EPS * s) / abs(dp)
    member = np.zeros(n, dtype=bool)
    member[best] = True
    grew = True
    while grew:
        grew = False
        for j in np.flatnonzero(~member):
            near = np.abs(roots[member] - roots[j]) <= rad[member] + rad[j]
            if near.any():
                member[j] = True
                grew = True
    m = complex(np.mean(roots[member]))
    k = int(member.sum())
    if k == 1:
        return m
    spread = float(np.max(np.abs(roots[member] - m)))
    # the (k-1)-th derivative has a simple root at the cluster
    der = np.array([c[j + k - 1] * math.prod(range(j + 1, j + k)) for j in range(n - k + 2)])
    r = m
    for _ in range(4):
        pv, dpv = horner(der, r)
        if dpv == 0:
            break
        step = complex(pv / dpv)
        r -= step
        if abs(step) <= EPS * abs(r):
            break
    return r if abs(r - m) <= spread else m
