"""Sparse multivariate polynomials over C, exact or floating point.

A :class:`MultiPoly` maps exponent tuples to coefficients.  In exact mode the
coefficients are :class:`~lojparam.gaussrat.GaussRat`; in float mode they are
Python ``complex``.  Exact mode is what order and degree claims are checked
against; float mode feeds the samplers through :mod:`lojparam.kernels`.

>>> x, y = MultiPoly.variables(2)
>>> f = y**2 - x**3
>>> order_at(f, (0, 0))
2
"""

from __future__ import annotations

import ast
import math
import numbers
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import kernels
from .errors import DimensionError, PreconditionError, ZeroPolynomialError
from .gaussrat import GaussRat
from .uni import UniPoly

INFINITE = math.inf
DROP_TOL = 1e-12


def _exact_scalar(x) -> bool:
    return isinstance(x, (GaussRat, numbers.Rational))


def _default_names(n: int) -> tuple[str, ...]:
    if n <= 3:
        return ("x", "y", "z")[:n]
    return tuple(f"x{i + 1}" for i in range(n))


class MultiPoly:
    """Immutable sparse polynomial in ``nvars`` variables.

    Zero coefficients are never stored.  ``exact`` is inferred from the
    coefficients unless given; forcing ``exact=True`` converts floats by
    their exact binary value.
    """

    __slots__ = ("nvars", "terms", "exact", "names", "_arrays", "_horner", "_hash", "_grad")

    def __init__(
        self,
        terms: Mapping[tuple, object],
        nvars: int,
        exact: bool | None = None,
        names: Sequence[str] | None = None,
    ):
        if nvars < 1:
            raise DimensionError("nvars must be positive")
        if exact is None:
            exact = all(_exact_scalar(c) for c in terms.values())
        clean = {}
        for e, c in terms.items():
            e = tuple(int(k) for k in e)
            if len(e) != nvars or min(e, default=0) < 0:
                raise DimensionError(f"exponent {e} does not fit {nvars} variables")
            c = GaussRat.coerce(c) if exact else complex(c)
            if c != 0:
                if not math.isfinite(abs(complex(c))):
                    raise ValueError("non-finite coefficient")
                clean[e] = c
        self.nvars = nvars
        self.terms = MappingProxyType(dict(sorted(clean.items())))
        self.exact = bool(exact)
        self.names = tuple(names) if names is not None else _default_names(nvars)
        if len(self.names) != nvars:
            raise DimensionError("one name per variable required")
        self._arrays = None
        self._horner = None
        self._hash = None
        self._grad = None

    # construction -----------------------------------------------------
    @classmethod
    def variables(cls, n: int, names: Sequence[str] | None = None) -> tuple["MultiPoly", ...]:
        out = []
        for i in range(n):
            e = [0] * n
            e[i] = 1
            out.append(cls({tuple(e): 1}, n, exact=True, names=names))
        return tuple(out)

    @classmethod
    def constant(cls, c, nvars: int, names: Sequence[str] | None = None) -> "MultiPoly":
        return cls({(0,) * nvars: c}, nvars, names=names)

    @classmethod
    def parse(cls, expr: str, names: Sequence[str]) -> "MultiPoly":
        """Build a polynomial from a Python-syntax expression.

        Supports ``+ - * **``, division by constants, integer/decimal/imaginary
        literals (``2j``) and the names in ``names``; ``I`` is the imaginary
        unit.  Decimal literals are read exactly (``0.1`` is 1/10).
        """
        names = tuple(names)
        gens = dict(zip(names, cls.variables(len(names), names)))
        n = len(names)

        def const(v):
            return cls.constant(v, n, names)

        def ev(node):
            if isinstance(node, ast.Expression):
                return ev(node.body)
            if isinstance(node, ast.Constant):
                v = node.value
                if isinstance(v, bool) or not isinstance(v, (int, float, complex)):
                    raise ValueError(f"unsupported literal {v!r}")
                if isinstance(v, float):
                    return const(Fraction(repr(v)))
                if isinstance(v, complex):
                    return const(GaussRat(Fraction(repr(v.real)), Fraction(repr(v.imag))))
                return const(v)
            if isinstance(node, ast.Name):
                if node.id in gens:
                    return gens[node.id]
                if node.id == "I":
                    return const(GaussRat(0, 1))
                raise ValueError(f"unknown variable {node.id!r}")
            if isinstance(node, ast.UnaryOp):
                v = ev(node.operand)
                if isinstance(node.op, ast.USub):
                    return -v
                if isinstance(node.op, ast.UAdd):
                    return v
            if isinstance(node, ast.BinOp):
                a, b = ev(node.left), ev(node.right)
                if isinstance(node.op, ast.Add):
                    return a + b
                if isinstance(node.op, ast.Sub):
                    return a - b
                if isinstance(node.op, ast.Mult):
                    return a * b
                if isinstance(node.op, ast.Pow):
                    k = b.constant_value()
                    if k is None or k.im != 0 or k.re.denominator != 1 or k.re < 0:
                        raise ValueError("exponents must be nonnegative integer constants")
                    return a ** int(k.re)
                if isinstance(node.op, ast.Div):
                    k = b.constant_value()
                    if k is None or k == 0:
                        raise ValueError("only division by nonzero constants is supported")
                    return a * (GaussRat(1) / k)
            raise ValueError(f"unsupported syntax: {ast.dump(node)}")

        return ev(ast.parse(expr.replace("^", "**"), mode="eval"))

    def constant_value(self):
        """The constant (as GaussRat/complex) if the polynomial is constant, else None."""
        if not self.terms:
            return GaussRat(0) if self.exact else 0j
        if len(self.terms) == 1 and (0,) * self.nvars in self.terms:
            return self.terms[(0,) * self.nvars]
        return None

    # basic properties -------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=-1)

    def max_abs_coeff(self) -> float:
        return max((abs(complex(c)) for c in self.terms.values()), default=0.0)

    def to_float(self) -> "MultiPoly":
        if not self.exact:
            return self
        return MultiPoly({e: complex(c) for e, c in self.terms.items()}, self.nvars, False, self.names)

    def to_exact(self) -> "MultiPoly":
        if self.exact:
            return self
        return MultiPoly(dict(self.terms), self.nvars, True, self.names)

    def with_names(self, names: Sequence[str]) -> "MultiPoly":
        return MultiPoly(dict(self.terms), self.nvars, self.exact, names)

    def float_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """``(exponents, coefficients)`` as int64 / complex128 arrays (cached)."""
        if self._arrays is None:
            if self.terms:
                exps = np.array(list(self.terms), dtype=np.int64).reshape(len(self.terms), self.nvars)
            else:
                exps = np.zeros((0, self.nvars), dtype=np.int64)
            coeffs = np.array([complex(c) for c in self.terms.values()], dtype=np.complex128)
            self._arrays = (np.ascontiguousarray(exps), coeffs)
        return self._arrays

    # arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise DimensionError("polynomials live in different numbers of variables")
            return other
        if isinstance(other, numbers.Complex):
            return MultiPoly.constant(other, self.nvars, self.names)
        return NotImplemented

    def _combine(self, other, sign):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        exact = self.exact and other.exact
        out = dict(self.terms) if exact else {e: complex(c) for e, c in self.terms.items()}
        for e, c in other.terms.items():
            c = c if exact else complex(c)
            out[e] = out.get(e, 0) + sign * c
        return MultiPoly(out, self.nvars, exact, self.names)

    def __add__(self, other):
        return self._combine(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        return self._combine(other, -1)

    def __rsub__(self, other):
        return (-self)._combine(other, 1)

    def __neg__(self):
        return MultiPoly({e: -c for e, c in self.terms.items()}, self.nvars, self.exact, self.names)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        exact = self.exact and other.exact
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                prod = c1 * c2 if exact else complex(c1) * complex(c2)
                out[e] = out.get(e, 0) + prod
        return MultiPoly(out, self.nvars, exact, self.names)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers")
        result = MultiPoly.constant(1, self.nvars, self.names)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.nvars == other.nvars and dict(self.terms) == dict(other.terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, tuple(self.terms.items())))
        return self._hash

    def derivative(self, i: int) -> "MultiPoly":
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = c * e[i]
        return MultiPoly(out, self.nvars, self.exact, self.names)

    def gradient(self, z) -> np.ndarray:
        """Complex gradient at one point (float)."""
        return self.gradient_many(np.reshape(z, (1, self.nvars)))[0]

    def gradient_many(self, pts) -> np.ndarray:
        """Gradients at each row of ``pts``; shape ``(len(pts), nvars)``."""
        if self._grad is None:
            self._grad = [self.derivative(i).to_float().float_arrays() for i in range(self.nvars)]
        pts = np.ascontiguousarray(pts, dtype=np.complex128).reshape(-1, self.nvars)
        return np.stack([kernels.eval_multi(e, c, pts) for e, c in self._grad], axis=1)

    # evaluation -------------------------------------------------------
    def __call__(self, *z):
        if len(z) == 1 and not isinstance(z[0], numbers.Complex):
            z = tuple(z[0])
        return evaluate(self, z)

    def eval_many(self, pts) -> np.ndarray:
        """Float evaluation at each row of ``pts`` (compiled kernel)."""
        exps, coeffs = self.float_arrays()
        pts = np.ascontiguousarray(pts, dtype=np.complex128)
        if pts.ndim == 1:
            pts = pts.reshape(-1, self.nvars)
        if pts.shape[1] != self.nvars:
            raise DimensionError(f"points have {pts.shape[1]} coordinates, expected {self.nvars}")
        return kernels.eval_multi(exps, coeffs, pts)

    def _horner_tree(self):
        # nested {exponent of leading var: subtree} for recursive Horner
        if self._horner is None:

            def build(items, depth):
                if depth == self.nvars:
                    return sum((c for _, c in items), GaussRat(0) if self.exact else 0j)
                groups: dict[int, list] = {}
                for e, c in items:
                    groups.setdefault(e[depth], []).append((e, c))
                return {k: build(v, depth + 1) for k, v in groups.items()}

            self._horner = build(list(self.terms.items()), 0)
        return self._horner

    def compose_affine(self, matrix, offset=None) -> "MultiPoly":
        """``g(y) = f(offset + matrix @ y)``.  Exact when every entry is exact."""
        n = self.nvars
        rows = [list(r) for r in matrix]
        if len(rows) != n:
            raise DimensionError("matrix must be nvars x nvars")
        offset = list(offset) if offset is not None else [0] * n
        entries = [x for r in rows for x in r] + offset
        exact = self.exact and all(_exact_scalar(x) for x in entries)
        ys = MultiPoly.variables(n, self.names)
        if not exact:
            ys = tuple(y.to_float() for y in ys)
        lin = []
        for i in range(n):
            acc = MultiPoly.constant(offset[i], n, self.names)
            for j in range(n):
                if rows[i][j] != 0:
                    acc = acc + rows[i][j] * ys[j]
            lin.append(acc if exact else acc.to_float())
        f = self if exact else self.to_float()
        out = MultiPoly({}, n, exact, self.names)
        for e, c in f.terms.items():
            term = MultiPoly.constant(c, n, self.names)
            for i, k in enumerate(e):
                if k:
                    term = term * lin[i] ** k
            out = out + term
        return out

    def __repr__(self):
        return f"MultiPoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0])):
            mono = "*".join(
                (n if k == 1 else f"{n}**{k}") for n, k in zip(self.names, e) if k
            )
            coeff = str(c) if self.exact else repr(c)
            if not mono:
                parts.append(coeff)
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{coeff}*{mono}")
        return " + ".join(parts)


# ----------------------------------------------------------------------
# operations


def _check_point(f: MultiPoly, z) -> list:
    z = list(z)
    if len(z) != f.nvars:
        raise DimensionError(f"point has {len(z)} coordinates, polynomial has {f.nvars} variables")
    return z


def evaluate(f: MultiPoly, z):
    """Value of ``f`` at ``z`` by nested Horner evaluation.

    Exact when ``f`` and ``z`` are exact, otherwise a Python ``complex``.
    """
    z = _check_point(f, z)
    exact = f.exact and all(_exact_scalar(x) for x in z)
    if exact:
        z = [GaussRat.coerce(x) for x in z]
    else:
        z = [complex(x) for x in z]
    zero = GaussRat(0) if exact else 0j

    def horner(node, depth):
        if depth == f.nvars:
            return node if exact else complex(node)
        acc = zero
        prev = None
        for k in sorted(node, reverse=True):
            if prev is not None:
                acc = acc * z[depth] ** (prev - k)
            acc = acc + horner(node[k], depth + 1)
            prev = k
        if prev:
            acc = acc * z[depth] ** prev
        return acc

    if f.is_zero():
        return zero
    return horner(f._horner_tree(), 0)


def _binomial_row(a, e: int, exact: bool) -> list:
    # coefficients of (x + a)^e, ascending in x
    return [math.comb(e, j) * a ** (e - j) for j in range(e + 1)]


def shift(f: MultiPoly, a) -> MultiPoly:
    """``g(x) = f(x + a)``, expanded exactly in exact mode."""
    a = _check_point(f, a)
    exact = f.exact and all(_exact_scalar(x) or isinstance(x, (float, complex)) for x in a)
    if exact:
        a = [GaussRat.coerce(x) for x in a]
    else:
        a = [complex(x) for x in a]
    if all(x == 0 for x in a):
        return f if exact or not f.exact else f.to_float()
    rows = [
        [_binomial_row(a[i], k, exact) for k in range(f.degree_in(i) + 1)] for i in range(f.nvars)
    ]
    out: dict = {}
    for e, c in f.terms.items():
        c = c if exact else complex(c)
        partial = {(): c}
        for i, k in enumerate(e):
            row = rows[i][k]
            nxt = {}
            for pe, pc in partial.items():
                for j, bj in enumerate(row):
                    if bj != 0:
                        ne = pe + (j,)
                        nxt[ne] = nxt.get(ne, 0) + pc * bj
            partial = nxt
        for ne, nc in partial.items():
            out[ne] = out.get(ne, 0) + nc
    return MultiPoly(out, f.nvars, exact, f.names)


def order_at(f: MultiPoly, a, drop_tol: float = DROP_TOL):
    """Order of vanishing of ``f`` at ``a``: lowest total degree of ``f(x + a)``.

    Float mode ignores terms whose coefficient is at most ``drop_tol`` times
    the largest one.  Returns :data:`INFINITE` when every term drops.
    """
    g = shift(f, a)
    if not g.terms:
        return INFINITE
    if g.exact:
        return min(sum(e) for e in g.terms)
    cutoff = drop_tol * g.max_abs_coeff()
    degs = [sum(e) for e, c in g.terms.items() if abs(c) > cutoff]
    return min(degs) if degs else INFINITE


def restrict_to_line(f: MultiPoly, p, v) -> UniPoly:
    """The univariate polynomial ``s -> f(p + s v)``."""
    p = _check_point(f, p)
    v = _check_point(f, v)
    if all(x == 0 for x in v):
        raise ValueError("zero direction")
    exact = f.exact and all(_exact_scalar(x) for x in p + v)
    if not exact:
        exps, coeffs = f.float_arrays()
        c = kernels.restrict_line(exps, coeffs, np.array(p, dtype=np.complex128),
                                  np.array(v, dtype=np.complex128), max(f.degree, 0))
        return UniPoly(list(c), exact=False)
    p = [GaussRat.coerce(x) for x in p]
    v = [GaussRat.coerce(x) for x in v]
    pw = []
    for i in range(f.nvars):
        row = [[GaussRat(1)]]
        for _ in range(f.degree_in(i)):
            prev = row[-1]
            nxt = [GaussRat(0)] * (len(prev) + 1)
            for j, c in enumerate(prev):
                nxt[j] = nxt[j] + c * p[i]
                nxt[j + 1] = nxt[j + 1] + c * v[i]
            row.append(nxt)
        pw.append(row)
    out = [GaussRat(0)] * (max(f.degree, 0) + 1)
    for e, c in f.terms.items():
        acc = [c]
        for i, k in enumerate(e):
            if k:
                lin = pw[i][k]
                nxt = [GaussRat(0)] * (len(acc) + len(lin) - 1)
                for j1, a1 in enumerate(acc):
                    for j2, a2 in enumerate(lin):
                        nxt[j1 + j2] = nxt[j1 + j2] + a1 * a2
                acc = nxt
        for j, cj in enumerate(acc):
            out[j] = out[j] + cj
    return UniPoly(out, exact=True)


# ----------------------------------------------------------------------
# regions and parametric families


@dataclass(frozen=True)
class Region:
    """Closed polydisc: ``|z_i - center_i| <= radii_i`` for every i."""

    center: tuple
    radii: tuple

    def __post_init__(self):
        center = tuple(complex(c) for c in self.center)
        radii = tuple(float(r) for r in self.radii)
        if len(center) != len(radii):
            raise DimensionError("center and radii differ in length")
        if any(not (r > 0) or not math.isfinite(r) for r in radii):
            raise ValueError("radii must be positive and finite")
        object.__setattr__(self, "center", center)
        object.__setattr__(self, "radii", radii)

    @classmethod
    def ball(cls, center, radius: float) -> "Region":
        center = tuple(center)
        return cls(center, (radius,) * len(center))

    @property
    def nvars(self) -> int:
        return len(self.center)

    @property
    def radius(self) -> float:
        return max(self.radii)

    def contains(self, z) -> bool:
        return all(abs(complex(zi) - c) <= r for zi, c, r in zip(z, self.center, self.radii))

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        """``n`` points uniform in the polydisc (area measure per coordinate)."""
        m = self.nvars
        rad = np.sqrt(rng.random((n, m))) * np.array(self.radii)
        ang = 2 * np.pi * rng.random((n, m))
        return np.array(self.center) + rad * np.exp(1j * ang)

    def to_json(self) -> dict:
        return {"center": [[c.real, c.imag] for c in self.center], "radii": list(self.radii)}


@dataclass(frozen=True)
class ParamFamily:
    """Polynomial ``f(t, x)`` with one designated parameter variable.

    ``param`` indexes the parameter among ``poly``'s variables; ``t0`` is the
    limit parameter and ``base_point`` (space coordinates only) an optional
    point with ``f(t, base_point) == 0`` for all t.
    """

    poly: MultiPoly
    param: int = 0
    t0: object = 0
    base_point: tuple | None = None
    space_names: tuple = field(init=False, repr=False)

    def __post_init__(self):
        if not 0 <= self.param < self.poly.nvars:
            raise DimensionError("param index out of range")
        if self.poly.nvars < 2:
            raise DimensionError("a family needs a parameter and at least one space variable")
        names = tuple(n for i, n in enumerate(self.poly.names) if i != self.param)
        object.__setattr__(self, "space_names", names)
        if self.base_point is not None:
            bp = tuple(self.base_point)
            if len(bp) != self.space_nvars:
                raise DimensionError("base point must have one coordinate per space variable")
            object.__setattr__(self, "base_point", bp)
        if specialize_parameter(self, self.t0).is_zero():
            raise ZeroPolynomialError("f_{t0} vanishes identically")

    @classmethod
    def from_space_poly(cls, g: MultiPoly, t0=0, base_point=None, param_name: str = "t") -> "ParamFamily":
        """Constant family ``f(t, x) = g(x)`` with the parameter prepended."""
        terms = {(0,) + e: c for e, c in g.terms.items()}
        poly = MultiPoly(terms, g.nvars + 1, g.exact, (param_name,) + g.names)
        return cls(poly, 0, t0, base_point)

    @property
    def space_nvars(self) -> int:
        return self.poly.nvars - 1

    @property
    def exact(self) -> bool:
        return self.poly.exact

    def at(self, t) -> MultiPoly:
        return specialize_parameter(self, t)

    def fixed_base_point(self) -> tuple:
        """The base point after checking that ``f(t, a)`` vanishes for every t."""
        if self.base_point is None:
            raise PreconditionError("family has no base point")
        a = list(self.base_point)
        full = a[: self.param] + [0] + a[self.param:]
        g = shift(self.poly, full)
        tol = 0 if g.exact else DROP_TOL * max(g.max_abs_coeff(), 1e-300)
        for e, c in g.terms.items():
            if all(k == 0 for i, k in enumerate(e) if i != self.param) and abs(complex(c)) > tol:
                raise PreconditionError("f(t, base_point) does not vanish identically in t")
        return self.base_point


def specialize_parameter(fam: ParamFamily, t) -> MultiPoly:
    """``f_t``: the family with the parameter fixed to ``t``."""
    poly = fam.poly
    exact = poly.exact and (_exact_scalar(t) or isinstance(t, (float, complex)))
    tt = GaussRat.coerce(t) if exact else complex(t)
    out: dict = {}
    for e, c in poly.terms.items():
        k = e[fam.param]
        rest = e[: fam.param] + e[fam.param + 1:]
        val = (c if exact else complex(c)) * tt**k
        out[rest] = out.get(rest, 0) + val
    return MultiPoly(out, poly.nvars - 1, exact, fam.space_names)


def to_exact_point(z: Iterable) -> list:
    return [GaussRat.coerce(x) for x in z]
