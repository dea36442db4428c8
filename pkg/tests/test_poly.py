import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import CORPUS, origin
from lojparam import (
    INFINITE,
    MultiPoly,
    ParamFamily,
    Region,
    evaluate,
    order_at,
    restrict_to_line,
    shift,
    specialize_parameter,
)
from lojparam.errors import DimensionError, ZeroPolynomialError
from lojparam.gaussrat import GaussRat

x, y = MultiPoly.variables(2, ["x", "y"])
t, tx = MultiPoly.variables(2, ["t", "x"])
(x1,) = MultiPoly.variables(1, ["x"])


def exact_polys(nvars=2, max_deg=4, min_order=0):
    coeff = st.builds(GaussRat, st.integers(-3, 3), st.integers(-2, 2))
    exp = st.tuples(*[st.integers(0, max_deg)] * nvars).filter(
        lambda e: min_order <= sum(e) <= max_deg
    )
    terms = st.dictionaries(exp, coeff, min_size=1, max_size=6)
    return terms.map(lambda d: MultiPoly(d, nvars, exact=True)).filter(lambda f: not f.is_zero())


points = st.tuples(*[st.builds(GaussRat, st.integers(-3, 3), st.integers(-3, 3))] * 2)


# --- evaluate ------------------------------------------------------------

def test_evaluate_examples():
    assert evaluate(x * y, (2, 3)) == 6
    assert evaluate(x**2 + y**2, (0, 0)) == 0
    assert evaluate(t * tx + tx**2, (1, 1)) == 2


def test_evaluate_dimension_mismatch():
    with pytest.raises(DimensionError):
        evaluate(x * y, (1,))


def test_evaluate_float_matches_numpy():
    f = (3 * x**2 * y - y**5 + 2j * x).to_float()
    rng = np.random.default_rng(1)
    pts = rng.normal(size=(20, 2)) + 1j * rng.normal(size=(20, 2))
    direct = [3 * a * a * b - b**5 + 2j * a for a, b in pts]
    assert np.allclose([evaluate(f, p) for p in pts], direct, rtol=1e-13)
    assert np.allclose(f.eval_many(pts), direct, rtol=1e-13)


# --- shift ---------------------------------------------------------------

def test_shift_examples():
    assert shift(x1**2, (1,)) == x1**2 + 2 * x1 + 1
    f = x**3 - 2 * x * y
    assert shift(f, (0, 0)) == f
    assert shift(x * y, (1, 0)) == x * y + y


@given(exact_polys(), points)
def test_shift_roundtrip_exact(f, a):
    assert shift(shift(f, a), [-c for c in a]) == f


@given(exact_polys(), points, points)
def test_shift_is_translation(f, a, z):
    zz = [p + q for p, q in zip(z, a)]
    assert evaluate(shift(f, a), z) == evaluate(f, zz)


# --- order_at --------------------------------------------------------------

def test_order_examples():
    assert order_at(t * tx + tx**2, (0, 0)) == 2
    assert order_at(x, (0, 0)) == 1
    assert order_at(3 * x**2 * y + y**5, (0, 0)) == 3
    assert order_at(x1**2, (1,)) == 0


def test_order_of_zero_polynomial_is_infinite():
    assert order_at(MultiPoly({}, 2), (0, 0)) is INFINITE


def test_order_float_drop_tol():
    # shifting a float polynomial leaves roundoff-sized constant terms
    f = ((x - 0.1) ** 2 * (y - 0.3) + (x - 0.1) ** 2).to_float()
    assert order_at(f, (0.1, 0.3)) == 2
    assert order_at(f, (0.1, 0.3), drop_tol=0) < 2
    g = (x**2 + 1e-15 * x).to_float()
    assert order_at(g, (0, 0)) == 2
    assert order_at(g, (0, 0), drop_tol=0) == 1


@given(exact_polys(), exact_polys(), points)
def test_order_additive_under_products(f, g, a):
    assert order_at(f * g, a) == order_at(f, a) + order_at(g, a)


@given(exact_polys(), exact_polys(), points)
def test_order_of_sum(f, g, a):
    s = f + g
    of, og = order_at(f, a), order_at(g, a)
    os_ = order_at(s, a)
    if s.is_zero():
        assert os_ is INFINITE
        return
    assert os_ >= min(of, og)
    if of != og:
        assert os_ == min(of, og)


def _random_invertible(rng, n):
    while True:
        m = rng.integers(-3, 4, size=(n, n))
        if round(np.linalg.det(m)) != 0:
            return [[GaussRat(int(v)) for v in row] for row in m]


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_order_invariant_under_linear_change(name):
    f = CORPUS[name]
    a = origin(f)
    o = order_at(f, a)
    rng = np.random.default_rng(abs(hash(name)) % 2**32)
    for _ in range(50):
        m = _random_invertible(rng, f.nvars)
        assert order_at(f.compose_affine(m), a) == o


# --- restrict_to_line ----------------------------------------------------

def test_restrict_examples():
    assert restrict_to_line(x * y, (0, 0), (1, 1)).coeffs == (0, 0, 1)
    assert restrict_to_line(y - x**2, (0, 0), (1, 0)).coeffs == (0, 0, -1)
    assert restrict_to_line(x**2 + y**2, (0, 1), (0, 1)).coeffs == (1, 2, 1)


def test_restrict_zero_direction():
    with pytest.raises(ValueError):
        restrict_to_line(x * y, (0, 0), (0, 0))


@settings(max_examples=60)
@given(exact_polys(max_deg=6), st.integers(0, 2**31))
def test_restrict_then_evaluate_float(f, seed):
    ff = f.to_float()
    rng = np.random.default_rng(seed)
    p = rng.normal(size=2) + 1j * rng.normal(size=2)
    v = rng.normal(size=2) + 1j * rng.normal(size=2)
    u = restrict_to_line(ff, p, v)
    for s in rng.normal(size=5) + 1j * rng.normal(size=5):
        direct = evaluate(ff, p + s * v)
        scale = sum(abs(c) * np.prod(np.abs(p + s * v) ** np.array(e)) for e, c in ff.terms.items())
        assert abs(u(s) - direct) <= 1e-10 * max(scale, 1e-300)


@given(exact_polys(), points, points)
def test_restrict_exact_matches_evaluate(f, p, v):
    if all(c == 0 for c in v):
        return
    u = restrict_to_line(f, p, v)
    s = GaussRat(1, 2)
    assert u(s) == evaluate(f, [pi + s * vi for pi, vi in zip(p, v)])


# --- families --------------------------------------------------------------

def test_specialize_examples():
    fam = ParamFamily(t * tx + tx**2)
    (xs,) = MultiPoly.variables(1, ["x"])
    assert specialize_parameter(fam, 1) == xs + xs**2
    assert specialize_parameter(fam, 0) == xs**2
    const = ParamFamily.from_space_poly(xs**2)
    for tv in (0, 0.3, 2j):
        assert specialize_parameter(const, tv) == xs**2


def test_family_rejects_vanishing_t0():
    with pytest.raises(ZeroPolynomialError):
        ParamFamily(t * tx)


def test_family_base_point_check():
    fam = ParamFamily(t * tx + tx**2, base_point=(0,))
    assert fam.fixed_base_point() == (0,)
    from lojparam.errors import PreconditionError

    with pytest.raises(PreconditionError):
        ParamFamily(tx**2 - t, base_point=(0,)).fixed_base_point()


# --- construction ------------------------------------------------------------

def test_canonical_sparse_form():
    f = MultiPoly({(1, 0): 1, (0, 1): 0, (2, 0): GaussRat(0)}, 2)
    assert dict(f.terms) == {(1, 0): GaussRat(1)}
    assert (x - x).is_zero()


def test_dimension_checks():
    with pytest.raises(DimensionError):
        MultiPoly({(1,): 1}, 2)
    with pytest.raises(DimensionError):
        MultiPoly({(-1, 0): 1}, 2)
    with pytest.raises(ValueError):
        MultiPoly({(1, 0): float("nan")}, 2)


def test_parse_is_exact():
    f = MultiPoly.parse("0.1*x**2 - I*y + 3/4", ["x", "y"])
    assert f.exact
    assert f.terms[(2, 0)] == GaussRat(1) / 10
    assert f.terms[(0, 1)] == GaussRat(0, -1)


def test_region_validation():
    with pytest.raises(ValueError):
        Region((0,), (0.0,))
    with pytest.raises(DimensionError):
        Region((0, 0), (1.0,))
    r = Region.ball((0, 0), 0.5)
    pts = r.sample(np.random.default_rng(0), 100)
    assert all(r.contains(p) for p in pts)


def test_gradient_matches_derivatives():
    f = (x**3 * y - 2 * y**2).to_float()
    z = (0.3 + 0.1j, -0.7)
    g = f.gradient(z)
    assert np.allclose(g, [evaluate(f.derivative(0), z), evaluate(f.derivative(1), z)], rtol=1e-14)
