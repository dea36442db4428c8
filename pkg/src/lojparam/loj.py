"""Sampling checks of Łojasiewicz inequalities ``|f| >= c dist(., Z_f)^alpha``.

Points are drawn on dyadic shells around the base point.  Every shell uses
the same angles, scaled by ``2**-k``, so for a germ dominated by its initial
form the shell minima of ``|f| / dist^alpha`` settle to a constant when
``alpha`` is the right exponent and decay geometrically when it is too small.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import (
    InsufficientShellsError,
    NonMonicError,
    PreconditionError,
)
from .local import SliceCycleReport, _require_nonzero, _require_root, dist_to_zero_set
from .poly import MultiPoly, Region
from .rng import generator

N_SHELLS = 8
N_DIRECTIONS = 8
DECAY_FACTOR = 0.5
SLICE_THRESHOLD = 1 - 1e-6
MIN_REGRESSION_SHELLS = 4


@dataclass(frozen=True)
class ShellSamples:
    """Sample points with ``log|f|`` and ``log dist`` recorded per point.

    ``shell`` holds the shell index of each row and ``radii`` the shell radii.
    """

    points: np.ndarray
    shell: np.ndarray
    radii: tuple
    log_abs_f: np.ndarray
    log_dist: np.ndarray

    @property
    def n_samples(self) -> int:
        return len(self.points)

    def log_ratios(self, alpha: float) -> np.ndarray:
        return self.log_abs_f - alpha * self.log_dist


@dataclass(frozen=True)
class LojReport:
    """Outcome of a sampled Łojasiewicz check.

    ``shell_profile`` lists ``(shell radius, min ratio on the shell)``;
    ``worst_ratio_c`` is the smallest of those minima and ``worst_sample``
    the point attaining it.  ``decay_slope`` is the least-squares slope of
    ``log2`` of the shell minima against the shell index (about ``-0.5``
    per shell when the exponent is half a unit too small).
    """

    alpha: float
    region: Region
    n_samples: int
    worst_ratio_c: float
    worst_sample: tuple
    shell_profile: tuple
    verdict: bool
    decay_slope: float = 0.0
    seed: int = 0
    samples: ShellSamples | None = field(default=None, repr=False, compare=False)

    def to_json(self) -> dict:
        return {
            "alpha": self.alpha,
            "region": self.region.to_json(),
            "n_samples": self.n_samples,
            "worst_ratio_c": self.worst_ratio_c,
            "worst_sample": [[z.real, z.imag] for z in self.worst_sample],
            "shell_profile": [[r, c] for r, c in self.shell_profile],
            "verdict": self.verdict,
            "decay_slope": self.decay_slope,
            "seed": self.seed,
        }


def _check_center(a, region: Region) -> None:
    if len(a) != region.nvars:
        raise PreconditionError("region dimension differs from the point")
    if any(abs(complex(x) - c) > 1e-12 * max(1.0, abs(c)) for x, c in zip(a, region.center)):
        raise PreconditionError("region must be centred at the base point")


def _log_dist(f: MultiPoly, pts: np.ndarray, n_directions: int, seed: int, extra=None) -> np.ndarray:
    out = np.empty(len(pts))
    for i, z in enumerate(pts):
        d = dist_to_zero_set(f, z, n_directions, seed, extra).value
        out[i] = math.log(d) if d > 0 else -math.inf
    return out


@lru_cache(maxsize=64)
def _shell_samples_cached(f, a, region, n_samples, seed, n_shells, n_directions) -> ShellSamples:
    m = f.nvars
    n_shells = min(n_shells, n_samples)
    per = n_samples // n_shells
    rng = generator(seed, 0x5A3)
    # one set of angles reused on every shell keeps the shells self-similar
    ang = np.exp(2j * np.pi * rng.random((per, m)))
    base = np.array(region.radii) * ang
    pts, shell, radii = [], [], []
    for k in range(n_shells):
        scale = 2.0 ** -k
        pts.append(np.array(a) + scale * base)
        shell.append(np.full(per, k))
        radii.append(region.radius * scale)
    pts = np.concatenate(pts)
    shell = np.concatenate(shell)
    ff = f.to_float()
    absf = np.abs(ff.eval_many(pts))
    with np.errstate(divide="ignore"):
        log_f = np.log(absf)
    log_d = _log_dist(ff, pts, n_directions, seed)
    keep = np.isfinite(log_f) & np.isfinite(log_d)  # drop points on the zero set
    return ShellSamples(pts[keep], shell[keep], tuple(radii), log_f[keep], log_d[keep])


def shell_samples(
    f: MultiPoly,
    a,
    region: Region,
    n_samples: int = 512,
    seed: int = 0,
    n_shells: int = N_SHELLS,
    n_directions: int = N_DIRECTIONS,
) -> ShellSamples:
    """Dyadic-shell samples around ``a`` with ``|f|`` and the distance to ``Z_f``.

    Results are cached, so checks at several exponents share one sample set.
    """
    _require_nonzero(f)
    a = tuple(complex(x) for x in _require_root(f, a))
    _check_center(a, region)
    if n_samples < 1 or n_shells < 1:
        raise ValueError("n_samples and n_shells must be positive")
    return _shell_samples_cached(f, a, region, int(n_samples), int(seed), int(n_shells), int(n_directions))


def non_decaying(minima) -> bool:
    """True when no shell minimum falls below half of an earlier (larger-radius) one."""
    best = -math.inf
    for m in minima:
        if best > -math.inf and m < math.log(DECAY_FACTOR) + best:
            return False
        best = max(best, m)
    return True


def report_from_samples(s: ShellSamples, alpha: float, region: Region, seed: int = 0) -> LojReport:
    """Evaluate exponent ``alpha`` on a recorded sample set."""
    if s.n_samples == 0:
        raise PreconditionError("every sample fell on the zero set")
    lr = s.log_ratios(alpha)
    profile, mins = [], []
    for k, r in enumerate(s.radii):
        sel = s.shell == k
        if sel.any():
            mn = float(lr[sel].min())
            mins.append((k, mn))
            profile.append((r, math.exp(mn)))
    i = int(np.argmin(lr))
    ks = np.array([k for k, _ in mins], dtype=float)
    ms = np.array([m for _, m in mins]) / math.log(2)
    slope = float(np.polyfit(ks, ms, 1)[0]) if len(ks) >= 2 else 0.0
    return LojReport(
        alpha=float(alpha),
        region=region,
        n_samples=s.n_samples,
        worst_ratio_c=math.exp(float(lr[i])),
        worst_sample=tuple(complex(c) for c in s.points[i]),
        shell_profile=tuple(profile),
        verdict=non_decaying([m for _, m in mins]),
        decay_slope=slope,
        seed=seed,
        samples=s,
    )


def verify_inequality(
    f: MultiPoly,
    a,
    alpha: float,
    region: Region,
    n_samples: int = 512,
    seed: int = 0,
    n_shells: int = N_SHELLS,
    n_directions: int = N_DIRECTIONS,
) -> LojReport:
    """Check ``|f(z)| >= c dist(z, Z_f)^alpha`` near ``a`` by shell sampling.

    Shell ``k`` has radius ``region.radius * 2**-k``.  The verdict holds when
    the shell minima of the ratio never drop below half of the largest
    minimum seen on an outer shell; a too-small exponent makes the minima
    decay geometrically and fails this test.

    Raises
    ------
    ZeroPolynomialError, NotARootError, PreconditionError
    """
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    s = shell_samples(f, a, region, n_samples, seed, n_shells, n_directions)
    if len(set(s.shell.tolist())) < 2:
        raise PreconditionError("need at least two non-empty shells")
    return report_from_samples(s, alpha, region, seed)


def estimate_exponent(
    f: MultiPoly,
    a,
    region: Region,
    n_samples: int = 512,
    seed: int = 0,
    n_shells: int = N_SHELLS,
    n_directions: int = N_DIRECTIONS,
    max_iter: int = 10,
) -> float:
    """Least-squares slope of ``log|f|`` against ``log dist`` over the worst sample per shell.

    Which sample is worst depends on the exponent, so the selection and the
    fit are alternated until the selection stops changing.

    Raises
    ------
    InsufficientShellsError
        Fewer than four non-empty shells.
    """
    s = shell_samples(f, a, region, n_samples, seed, n_shells, n_directions)
    shells = sorted(set(s.shell.tolist()))
    if len(shells) < MIN_REGRESSION_SHELLS:
        raise InsufficientShellsError(f"{len(shells)} shells, need {MIN_REGRESSION_SHELLS}")
    idx = [np.flatnonzero(s.shell == k) for k in shells]
    # start from the sample with the smallest |f| on each shell
    pick = [int(ii[np.argmin(s.log_abs_f[ii])]) for ii in idx]
    alpha = math.nan
    for _ in range(max_iter):
        alpha = float(np.polyfit(s.log_dist[pick], s.log_abs_f[pick], 1)[0])
        lr = s.log_ratios(alpha)
        new = [int(ii[np.argmin(lr[ii])]) for ii in idx]
        if new == pick:
            break
        pick = new
    return alpha


def _monic_in_last(f: MultiPoly) -> bool:
    d = f.degree_in(f.nvars - 1)
    lead = {e: c for e, c in f.terms.items() if e[-1] == d}
    one = (0,) * (f.nvars - 1) + (d,)
    if set(lead) != {one}:
        return False
    c = lead[one]
    return c == 1 if f.exact else abs(complex(c) - 1) <= 1e-12


def verify_slice_inequality(
    f: MultiPoly,
    box: Region,
    report: SliceCycleReport,
    n_samples: int = 4096,
    seed: int = 0,
    n_directions: int = N_DIRECTIONS,
) -> LojReport:
    """Check ``|f(x, t)| >= dist((x, t), Z_f)^delta`` with constant one on the box.

    ``f`` must be monic in its last variable.  The vertical direction is
    always among the sweep directions, so the distance estimate never
    exceeds the distance to the nearest root in the fibre.

    Raises
    ------
    NonMonicError
        The leading coefficient in the last variable is not the constant 1.
    """
    _require_nonzero(f)
    if box.nvars != f.nvars:
        raise PreconditionError("box dimension differs from nvars")
    if not _monic_in_last(f):
        raise NonMonicError("f must be monic in the last variable; divide by the leading coefficient")
    delta = report.delta
    ff = f.to_float()
    pts = box.sample(generator(seed, 0x511CE), n_samples)
    vertical = np.zeros(f.nvars, dtype=np.complex128)
    vertical[-1] = 1
    with np.errstate(divide="ignore"):
        log_f = np.log(np.abs(ff.eval_many(pts)))
    log_d = _log_dist(ff, pts, n_directions, seed, vertical)
    keep = np.isfinite(log_f) & np.isfinite(log_d)
    pts, log_f, log_d = pts[keep], log_f[keep], log_d[keep]
    # shells by normalized polydisc distance from the box centre
    rel = np.max(np.abs(pts - np.array(box.center)) / np.array(box.radii), axis=1)
    shell = np.clip(np.floor(-np.log2(np.maximum(rel, 1e-300))), 0, N_SHELLS - 1).astype(int)
    radii = tuple(box.radius * 2.0 ** -k for k in range(N_SHELLS))
    s = ShellSamples(pts, shell, radii, log_f, log_d)
    rep = report_from_samples(s, delta, box, seed)
    ok = rep.worst_ratio_c >= SLICE_THRESHOLD
    return LojReport(rep.alpha, box, rep.n_samples, rep.worst_ratio_c, rep.worst_sample,
                     rep.shell_profile, ok, rep.decay_slope, seed, s)


__all__ = [
    "LojReport",
    "ShellSamples",
    "estimate_exponent",
    "non_decaying",
    "report_from_samples",
    "shell_samples",
    "verify_inequality",
    "verify_slice_inequality",
]
