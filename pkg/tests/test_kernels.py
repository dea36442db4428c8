import numpy as np
import pytest

from corpus import CORPUS, origin
from lojparam import MultiPoly, dist_to_zero_set, kernels, local_degree_cycle, order_at
from lojparam import _pykernels as py

cy = pytest.importorskip("lojparam._ckernels")


@pytest.fixture
def python_backend():
    prev = kernels.use_backend("python")
    yield
    kernels.use_backend(prev)


def _rand_c(rng, *shape):
    return rng.normal(size=shape) + 1j * rng.normal(size=shape)


def test_backend_selection():
    assert "python" in kernels.available_backends()
    with pytest.raises(ValueError):
        kernels.use_backend("fortran")


@pytest.mark.parametrize("seed", range(8))
def test_aberth_backends_agree(seed):
    c = _rand_c(np.random.default_rng(seed), 8)
    r1, _, w1 = py.aberth(c, 1e-12, 200)
    r2, _, w2 = cy.aberth(c, 1e-12, 200)
    assert w1 <= 1e-12 and w2 <= 1e-12
    for z in r1:
        assert np.min(np.abs(r2 - z)) <= 1e-9


def test_horner_and_winding_agree():
    rng = np.random.default_rng(3)
    c = _rand_c(rng, 6)
    for z in _rand_c(rng, 5):
        assert np.allclose(py.horner(c, z), cy.horner(c, z), rtol=1e-13)
    a = py.winding(c, 0.1 + 0.2j, 1.3, 512)
    b = cy.winding(c, 0.1 + 0.2j, 1.3, 512)
    assert abs(a[0] - b[0]) <= 1e-10 and abs(a[1] - b[1]) <= 1e-10 * max(1.0, abs(a[1]))


def test_eval_and_restrict_agree():
    rng = np.random.default_rng(4)
    f = MultiPoly.parse("x**3*y - 2*y**2*z + I*z**4 - 1", ["x", "y", "z"]).to_float()
    exps, coeffs = f.float_arrays()
    pts = _rand_c(rng, 30, 3)
    assert np.allclose(py.eval_multi(exps, coeffs, pts), cy.eval_multi(exps, coeffs, pts), rtol=1e-13)
    p, v = _rand_c(rng, 3), _rand_c(rng, 3)
    assert np.allclose(py.restrict_line(exps, coeffs, p, v, 4), cy.restrict_line(exps, coeffs, p, v, 4), rtol=1e-13)


@pytest.mark.parametrize("expr", ["x*y", "y**2 - x**3", "(x+y)**2*(y - x**3)", "x**2"])
def test_nearest_roots_agree(expr):
    rng = np.random.default_rng(5)
    f = MultiPoly.parse(expr, ["x", "y"]).to_float()
    exps, coeffs = f.float_arrays()
    z = 0.05 * _rand_c(rng, 2)
    dirs = _rand_c(rng, 12, 2)
    dirs /= np.linalg.norm(dirs, axis=1)[:, None]
    a = py.nearest_roots(exps, coeffs, z, dirs, f.degree, 1e-12, 200)
    b = cy.nearest_roots(exps, coeffs, z, dirs, f.degree, 1e-12, 200)
    assert np.allclose(a, b, atol=1e-12, equal_nan=True)


def test_high_level_results_match_on_fallback(python_backend):
    f = CORPUS["(x+y)^2(y-x^3)"]
    a = origin(f)
    assert kernels.BACKEND == "python"
    assert local_degree_cycle(f, a) == order_at(f, a)
    d = dist_to_zero_set(MultiPoly.parse("x*y", ["x", "y"]), (0.3, 0.1j))
    assert abs(d.value - 0.1) <= 1e-10
