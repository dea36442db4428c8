# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled numeric kernels; same contracts as ``lojparam._pykernels``."""

import numpy as np

from libc.math cimport log, exp, cos, sin, hypot, fabs, INFINITY, NAN, M_PI

cdef double EPS = 2.220446049250313e-16
cdef double SIGMA = 0.4


cdef inline double cabs_(double complex z) nogil:
    return hypot(z.real, z.imag)


cdef void _initial_points(const double complex[::1] c, double complex[::1] z, long[::1] hull, double[::1] logs):
    cdef Py_ssize_t n = c.shape[0] - 1
    cdef Py_ssize_t k, i, j, h, m, l, pos, nh = 0
    cdef double a, u, ang
    for k in range(n + 1):
        a = cabs_(c[k])
        logs[k] = log(a) if a > 0.0 else -INFINITY
    for k in range(n + 1):
        if logs[k] == -INFINITY:
            continue
        while nh >= 2:
            i = hull[nh - 2]
            j = hull[nh - 1]
            if (logs[j] - logs[i]) * (k - i) <= (logs[k] - logs[i]) * (j - i):
                nh -= 1
            else:
                break
        hull[nh] = k
        nh += 1
    pos = 0
    for h in range(nh - 1):
        i = hull[h]
        j = hull[h + 1]
        m = j - i
        u = exp((logs[i] - logs[j]) / m)
        for l in range(m):
            ang = 2.0 * M_PI * l / m + 2.0 * M_PI * i / n + SIGMA
            z[pos] = u * (cos(ang) + 1j * sin(ang))
            pos += 1


def initial_points(coeffs):
    cdef double complex[::1] c = np.ascontiguousarray(coeffs, dtype=np.complex128)
    cdef Py_ssize_t n = c.shape[0] - 1
    z = np.empty(n, dtype=np.complex128)
    _initial_points(c, z, np.empty(n + 1, dtype=np.int_), np.empty(n + 1, dtype=np.float64))
    return z


cdef int _aberth(const double complex[::1] c, double complex[::1] roots, char[::1] done,
                 double[::1] ac, int maxiter, double* worst_out):
    cdef Py_ssize_t n = c.shape[0] - 1
    cdef Py_ssize_t i, j, k
    cdef double complex z, p, dp, sm, d, den, w
    cdef double az, s, stop = 8.0 * n * EPS, worst
    cdef int it = 0, alldone
    for k in range(n + 1):
        ac[k] = cabs_(c[k])
        done[k] = 0
    for it in range(1, maxiter + 1):
        alldone = 1
        for i in range(n):
            if done[i]:
                continue
            z = roots[i]
            p = c[n]
            dp = 0
            az = cabs_(z)
            s = ac[n]
            for k in range(n - 1, -1, -1):
                dp = dp * z + p
                p = p * z + c[k]
                s = s * az + ac[k]
            if cabs_(p) <= stop * s:
                done[i] = 1
                continue
            sm = 0
            for j in range(n):
                if j != i:
                    d = z - roots[j]
                    if d == 0:
                        d = EPS * (az + 1.0)
                    sm = sm + 1.0 / d
            den = dp - p * sm
            if den == 0:
                w = 1e-8 * (az + 1.0)
            else:
                w = p / den
            roots[i] = z - w
            if cabs_(w) <= EPS * cabs_(roots[i]):
                done[i] = 1
            else:
                alldone = 0
        if alldone:
            for i in range(n):
                if not done[i]:
                    alldone = 0
                    break
        if alldone:
            break
    worst = 0.0
    for i in range(n):
        z = roots[i]
        p = c[n]
        az = cabs_(z)
        s = ac[n]
        for k in range(n - 1, -1, -1):
            p = p * z + c[k]
            s = s * az + ac[k]
        if cabs_(p) / s > worst:
            worst = cabs_(p) / s
    worst_out[0] = worst
    return it


def aberth(coeffs, double tol, int maxiter):
    cdef double complex[::1] c = np.ascontiguousarray(coeffs, dtype=np.complex128)
    cdef Py_ssize_t n = c.shape[0] - 1
    cdef double worst = 0.0
    roots = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] r = roots
    _initial_points(c, r, np.empty(n + 1, dtype=np.int_), np.empty(n + 1, dtype=np.float64))
    it = _aberth(c, r, np.empty(n + 1, dtype=np.int8), np.empty(n + 1, dtype=np.float64),
                 maxiter, &worst)
    return roots, it, worst


def horner(coeffs, z):
    cdef double complex[::1] c = np.ascontiguousarray(coeffs, dtype=np.complex128)
    shape = np.shape(z)
    cdef double complex[::1] zf = np.ascontiguousarray(z, dtype=np.complex128).reshape(-1)
    cdef Py_ssize_t m = zf.shape[0], n = c.shape[0] - 1, i, k
    pa = np.empty(m, dtype=np.complex128)
    da = np.empty(m, dtype=np.complex128)
    cdef double complex[::1] po = pa
    cdef double complex[::1] do = da
    cdef double complex p, dp, x
    for i in range(m):
        x = zf[i]
        p = c[n]
        dp = 0
        for k in range(n - 1, -1, -1):
            dp = dp * x + p
            p = p * x + c[k]
        po[i] = p
        do[i] = dp
    if shape == ():
        return pa[0], da[0]
    return pa.reshape(shape), da.reshape(shape)


def winding(coeffs, double complex center, double radius, int nodes):
    cdef double complex[::1] c = np.ascontiguousarray(coeffs, dtype=np.complex128)
    cdef Py_ssize_t n = c.shape[0] - 1, i, k
    cdef double complex u, x, p, dp, total = 0
    cdef double th, az, s, rel, best = INFINITY
    for i in range(nodes):
        th = 2.0 * M_PI * i / nodes
        u = radius * (cos(th) + 1j * sin(th))
        x = center + u
        p = c[n]
        dp = 0
        az = cabs_(x)
        s = cabs_(c[n])
        for k in range(n - 1, -1, -1):
            dp = dp * x + p
            p = p * x + c[k]
            s = s * az + cabs_(c[k])
        total = total + dp * u / p
        rel = cabs_(p) / s
        if rel < best:
            best = rel
    return complex(total / nodes), best


def eval_multi(exps, coeffs, pts):
    cdef long[:, ::1] e = np.ascontiguousarray(exps, dtype=np.int_)
    cdef double complex[::1] cf = np.ascontiguousarray(coeffs, dtype=np.complex128)
    pa = np.ascontiguousarray(pts, dtype=np.complex128)
    if pa.ndim == 1:
        pa = pa[None, :]
    cdef double complex[:, ::1] P = pa
    cdef Py_ssize_t npts = P.shape[0], nv = P.shape[1], nt = cf.shape[0]
    cdef Py_ssize_t q, t, i, k, emax = 0
    for t in range(nt):
        for i in range(nv):
            if e[t, i] > emax:
                emax = e[t, i]
    out = np.zeros(npts, dtype=np.complex128)
    cdef double complex[::1] o = out
    pw_arr = np.empty((nv, emax + 1), dtype=np.complex128)
    cdef double complex[:, ::1] pw = pw_arr
    cdef double complex acc, mono
    for q in range(npts):
        for i in range(nv):
            pw[i, 0] = 1
            for k in range(1, emax + 1):
                pw[i, k] = pw[i, k - 1] * P[q, i]
        acc = 0
        for t in range(nt):
            mono = cf[t]
            for i in range(nv):
                mono = mono * pw[i, e[t, i]]
            acc = acc + mono
        o[q] = acc
    return out


cdef void _restrict(const long[:, ::1] e, const double complex[::1] cf,
                    const double complex[::1] p, const double complex[::1] v,
                    double complex[::1] out, double complex[:, :, ::1] lp,
                    double complex[::1] acc, double complex[::1] tmp, Py_ssize_t emax):
    # lp[i, e, :] holds (p_i + v_i s)^e
    cdef Py_ssize_t nv = e.shape[1], nt = cf.shape[0], deg = out.shape[0] - 1
    cdef Py_ssize_t i, k, j, t, ex, la, lb
    for k in range(deg + 1):
        out[k] = 0
    for i in range(nv):
        for k in range(emax + 1):
            for j in range(emax + 1):
                lp[i, k, j] = 0
        lp[i, 0, 0] = 1
        for k in range(1, emax + 1):
            lp[i, k, 0] = lp[i, k - 1, 0] * p[i]
            for j in range(1, k + 1):
                lp[i, k, j] = lp[i, k - 1, j] * p[i] + lp[i, k - 1, j - 1] * v[i]
    for t in range(nt):
        acc[0] = cf[t]
        la = 1
        for i in range(nv):
            ex = e[t, i]
            if ex == 0:
                continue
            lb = ex + 1
            for k in range(la + lb - 1):
                tmp[k] = 0
            for k in range(la):
                for j in range(lb):
                    tmp[k + j] = tmp[k + j] + acc[k] * lp[i, ex, j]
            la = la + lb - 1
            for k in range(la):
                acc[k] = tmp[k]
        for k in range(la):
            out[k] = out[k] + acc[k]


def restrict_line(exps, coeffs, p, v, Py_ssize_t deg):
    cdef long[:, ::1] e = np.ascontiguousarray(exps, dtype=np.int_)
    cdef double complex[::1] cf = np.ascontiguousarray(coeffs, dtype=np.complex128)
    cdef Py_ssize_t nv = e.shape[1]
    cdef Py_ssize_t emax = int(np.max(exps)) if np.size(exps) else 0
    out = np.zeros(deg + 1, dtype=np.complex128)
    if cf.shape[0] == 0:
        return out
    _restrict(e, cf, np.ascontiguousarray(p, dtype=np.complex128),
              np.ascontiguousarray(v, dtype=np.complex128), out,
              np.zeros((nv, emax + 1, emax + 1), dtype=np.complex128),
              np.zeros(deg + 2, dtype=np.complex128), np.zeros(deg + 2, dtype=np.complex128), emax)
    return out

cdef double complex _cluster_mean(const double complex[::1] c, double complex[::1] roots, Py_ssize_t n,
                                  Py_ssize_t best_i, double[::1] rad, char[::1] member, double complex[::1] der):
    # average of the approximations whose inclusion discs chain to roots[best_i],
    # polished by Newton on the derivative that has a simple root there
    cdef Py_ssize_t i, j, k, q, it
    cdef double complex p, dp, r, m, step
    cdef double s, ar, spread, fac
    cdef bint grew = True
    for i in range(n):
        r = roots[i]
        ar = cabs_(r)
        p = c[n]
        dp = 0
        s = cabs_(c[n])
        for k in range(n - 1, -1, -1):
            dp = dp * r + p
            p = p * r + c[k]
            s = s * ar + cabs_(c[k])
        if dp == 0:
            rad[i] = INFINITY
        else:
            rad[i] = 2 * n * (cabs_(p) + 4 * n * EPS * s) / cabs_(dp)
        member[i] = 0
    member[best_i] = 1
    while grew:
        grew = False
        for j in range(n):
            if member[j]:
                continue
            for i in range(n):
                if member[i] and cabs_(roots[i] - roots[j]) <= rad[i] + rad[j]:
                    member[j] = 1
                    grew = True
                    break
    m = 0
    k = 0
    for i in range(n):
        if member[i]:
            m = m + roots[i]
            k += 1
    m = m / k
    if k == 1:
        return m
    spread = 0.0
    for i in range(n):
        if member[i] and cabs_(roots[i] - m) > spread:
            spread = cabs_(roots[i] - m)
    for j in range(n - k + 2):
        fac = 1.0
        for q in range(j + 1, j + k):
            fac *= q
        der[j] = c[j + k - 1] * fac
    r = m
    for it in range(4):
        p = der[n - k + 1]
        dp = 0
        for q in range(n - k, -1, -1):
            dp = dp * r + p
            p = p * r + der[q]
        if dp == 0:
            break
        step = p / dp
        r = r - step
        if cabs_(step) <= EPS * cabs_(r):
            break
    if cabs_(r - m) <= spread:
        return r
    return m


def nearest_roots(exps, coeffs, z, dirs, Py_ssize_t deg, double tol, int maxiter):
    cdef long[:, ::1] e = np.ascontiguousarray(exps, dtype=np.int_)
    cdef double complex[::1] cf = np.ascontiguousarray(coeffs, dtype=np.complex128)
    cdef double complex[::1] zz = np.ascontiguousarray(z, dtype=np.complex128)
    cdef double complex[:, ::1] D = np.ascontiguousarray(dirs, dtype=np.complex128)
    cdef Py_ssize_t nd = D.shape[0], nv = e.shape[1], d, k, n, best_i
    cdef Py_ssize_t emax = int(np.max(exps)) if np.size(exps) else 0
    result = np.full(nd, complex(NAN, NAN), dtype=np.complex128)
    cdef double complex[::1] res = result
    if cf.shape[0] == 0:
        return result
    cdef double complex[::1] c = np.zeros(deg + 1, dtype=np.complex128)
    cdef double complex[:, :, ::1] lp = np.zeros((nv, emax + 1, emax + 1), dtype=np.complex128)
    cdef double complex[::1] acc = np.zeros(deg + 2, dtype=np.complex128)
    cdef double complex[::1] tmp = np.zeros(deg + 2, dtype=np.complex128)
    cdef double complex[::1] roots = np.zeros(deg + 1, dtype=np.complex128)
    cdef char[::1] done = np.zeros(deg + 1, dtype=np.int8)
    cdef double[::1] ac = np.zeros(deg + 1, dtype=np.float64)
    cdef long[::1] hull = np.zeros(deg + 1, dtype=np.int_)
    cdef double[::1] logs = np.zeros(deg + 1, dtype=np.float64)
    cdef double[::1] rad = np.zeros(deg + 1, dtype=np.float64)
    cdef char[::1] member = np.zeros(deg + 1, dtype=np.int8)
    cdef double big, worst, m, bm
    for d in range(nd):
        _restrict(e, cf, zz, D[d], c, lp, acc, tmp, emax)
        big = 0.0
        for k in range(deg + 1):
            if cabs_(c[k]) > big:
                big = cabs_(c[k])
        if big == 0.0:
            continue
        n = deg
        while n > 0 and cabs_(c[n]) <= 1e-14 * big:
            n -= 1
        if n == 0:
            continue
        if c[0] == 0:
            res[d] = 0
            continue
        if n == 1:
            res[d] = -c[0] / c[1]
            continue
        _initial_points(c[: n + 1], roots[:n], hull, logs)
        _aberth(c[: n + 1], roots[:n], done, ac, maxiter, &worst)
        best_i = 0
        bm = cabs_(roots[0])
        for k in range(1, n):
            m = cabs_(roots[k])
            if m < bm:
                bm = m
                best_i = k
        res[d] = _cluster_mean(c[: n + 1], roots, n, best_i, rad, member, tmp)
    return result
