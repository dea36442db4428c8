import math

import numpy as np
import pytest

from corpus import FAMILIES
from lojparam import (
    MultiPoly,
    ParamFamily,
    Region,
    TestingDisc,
    distance_continuity_check,
    fibre_cycle_convergence,
    kuratowski_check,
    local_degree_semicontinuity,
    order_at,
    order_profile,
    properness_persistence_check,
    tworzewski_check,
    uniform_exponent_verify,
    verify_inequality,
    weierstrass_slice_degree,
)
from lojparam.errors import (
    BoundaryRootError,
    EmptyZeroSetError,
    PreconditionError,
    PropernessError,
    ZeroPolynomialError,
)
from lojparam.family import (
    ConvergenceReport,
    discover_threshold,
    hausdorff_gap,
    parse_t_grid,
    plane_intersections,
)

t, x = MultiPoly.variables(2, ["t", "x"])
T3, X3, Y3 = MultiPoly.variables(3, ["t", "x", "y"])

FAM_TX2 = ParamFamily(t * x + x**2)
FAM_TX3 = ParamFamily(t * x + x**3)
FAM_X2 = ParamFamily(x**2 + 0 * t)
FAM_X2_MINUS_T = ParamFamily(x**2 - t)
FAM_Y_TX = ParamFamily(Y3 - T3 * X3)
FOURS = [4.0**-k for k in range(1, 11)]


def geometric(k0, k1, base=4.0):
    return [base**-k for k in range(k0, k1 + 1)]


# --- grids and thresholds -----------------------------------------------------------

def test_parse_t_grid():
    assert parse_t_grid("geometric:0.5,3") == [0.5, 0.25, 0.125]
    assert parse_t_grid("geometric:0.5,2,0.1", t0=1) == [1.05, 1.025]
    assert parse_t_grid([0.1, 0.2j]) == [0.1, 0.2j]
    for bad in ("geometric:2,3", "geometric:0.5", "linear:0.5,3", "geometric:0.5,0"):
        with pytest.raises(ValueError):
            parse_t_grid(bad)


def test_discover_threshold():
    ts = [0.5, 0.25, 0.125, 0.0625]
    assert discover_threshold(ts, 0, [True] * 4) == (0.5, 4)
    assert discover_threshold(ts, 0, [False, True, True, True]) == (0.25, 3)
    assert discover_threshold(ts, 0, [True, True, True, False]) == (0.0, 0)
    assert discover_threshold([], 0, []) == (0.0, 0)


def test_report_covers_samples():
    with pytest.raises(ValueError):
        ConvergenceReport("k", "q", 0j, (0.1,), (), {"q": 1}, True, 0.0)


# --- order profile --------------------------------------------------------------------

def test_order_profile_examples():
    rep = order_profile(FAM_TX2, [0, 0.1, 0.5])
    assert rep.values() == {0j: 2, 0.1 + 0j: 1, 0.5 + 0j: 1}
    assert rep.verdict
    rep = order_profile(FAM_TX3, [0, 0.1])
    assert rep.values() == {0j: 3, 0.1 + 0j: 1} and rep.verdict
    rep = order_profile(FAM_X2, "geometric:0.5,8")
    assert set(rep.values().values()) == {2} and rep.verdict
    assert len(rep.per_t) == len(rep.t_samples) == 8


def test_order_profile_detects_growth():
    # ord f_t = 2 > ord f_0 = 1 for t != 0: the semicontinuity property fails
    fam = ParamFamily(x - t * x + x**2)
    rep = order_profile(fam, [1.0])
    assert rep.values()[1 + 0j] == 2 and not rep.verdict


def test_order_profile_zero_member():
    fam = ParamFamily((1 - t) * x)
    with pytest.raises(ZeroPolynomialError):
        order_profile(fam, [0.5, 1])


@pytest.mark.parametrize("name", sorted(FAMILIES))
def test_order_semicontinuity_on_families(name):
    fam, _ = FAMILIES[name]
    rep = order_profile(fam, "geometric:0.5,8")
    k0 = rep.at_t0["order"]
    assert rep.verdict
    assert all(r["order"] <= k0 for r in rep.per_t if abs(r["t"]) <= rep.stabilization_threshold)


# --- local degree semicontinuity ---------------------------------------------------------

def test_local_degree_semicontinuity_examples():
    rep = local_degree_semicontinuity(FAM_TX2, [0.1, 0.01, 0.001])
    assert rep.at_t0["degree"] == 2
    assert all(r["degree"] == 1 for r in rep.per_t) and rep.verdict
    rep = local_degree_semicontinuity(ParamFamily(X3 * Y3 + 0 * T3), "geometric:0.5,5")
    assert set(rep.values().values()) == {2} and rep.verdict
    rep = local_degree_semicontinuity(FAM_TX3, [0.1, 0.01])
    assert rep.values() == {0j: 3, 0.1 + 0j: 1, 0.01 + 0j: 1} and rep.verdict


def test_local_degree_semicontinuity_needs_vanishing_base_point():
    with pytest.raises(PreconditionError):
        local_degree_semicontinuity(FAM_X2_MINUS_T, [0.1])


@pytest.mark.parametrize("name", sorted(FAMILIES))
def test_degree_matches_order_on_families(name):
    fam, _ = FAMILIES[name]
    deg = local_degree_semicontinuity(fam, "geometric:0.5,6")
    ords = order_profile(fam, "geometric:0.5,6")
    assert deg.verdict
    assert deg.values() == ords.values()


# --- Kuratowski ---------------------------------------------------------------------------

def test_kuratowski_closed_form_roots():
    rep = kuratowski_check(FAM_X2_MINUS_T, FOURS, Region((0,), (1.0,)))
    for tk, row in zip(FOURS, rep.per_t):
        assert abs(row["hausdorff_gap"] - math.sqrt(tk)) <= 1e-6
    assert rep.verdict
    assert rep.details["resolution"] == 1 / 32


def _grid(h, r):
    k = int(math.floor(r / h))
    g = np.arange(-k, k + 1) * h
    z = (g[:, None] + 1j * g[None, :]).ravel()
    return z[np.abs(z) <= r]


def _brute_hausdorff(a, b):
    d = np.sqrt(((a[:, None, :] - b[None, :, :]) ** 2).sum(axis=2))
    return max(d.min(axis=1).max(), d.min(axis=0).max())


def test_kuratowski_lines_brute_force():
    window = Region((0, 0), (1.0, 1.0))
    ts = [0.2, 0.1, 0.05, 0.02, 0.01]
    rep = kuratowski_check(FAM_Y_TX, ts, window, grid_density=16)
    xs = _grid(1 / 16, 1.0)
    base = np.stack([xs.real, np.zeros_like(xs.real), xs.imag, np.zeros_like(xs.real)], axis=1)
    for tk, row in zip(ts, rep.per_t):
        ys = tk * xs
        keep = np.abs(ys) <= 1.0
        line = np.stack([xs.real, ys.real, xs.imag, ys.imag], axis=1)[keep]
        assert abs(row["hausdorff_gap"] - _brute_hausdorff(line, base)) <= 1e-9
    gaps = [r["hausdorff_gap"] for r in rep.per_t]
    # linear in t: the largest |t x| on the grid
    assert np.allclose(np.array(gaps) / np.array(ts), gaps[0] / ts[0], rtol=1e-9)
    assert rep.verdict


def test_kuratowski_constant_family():
    rep = kuratowski_check(FAM_X2, FOURS[:4], Region((0,), (1.0,)))
    assert all(r["hausdorff_gap"] == 0 for r in rep.per_t) and rep.verdict


def test_kuratowski_errors():
    with pytest.raises(PropernessError):
        kuratowski_check(ParamFamily(x - 1 + t * x), [0.1], Region((0,), (1.0,)))
    with pytest.raises(EmptyZeroSetError):
        kuratowski_check(ParamFamily(x - 2 - t), [0.1], Region((0,), (1.0,)))
    with pytest.raises(EmptyZeroSetError):
        hausdorff_gap(np.zeros((0, 2)), np.zeros((3, 2)))


# --- Tworzewski -------------------------------------------------------------------------------

def test_tworzewski_examples():
    rep = tworzewski_check(FAM_X2_MINUS_T, TestingDisc((0,), (1,), 0.5), geometric(2, 10))
    assert set(rep.values().values()) == {2} and rep.verdict
    rep = tworzewski_check(FAM_Y_TX, TestingDisc((1, 0), (0, 1), 0.5), [0.4, 0.2, 0.1, 0.05])
    assert set(rep.values().values()) == {1} and rep.verdict
    fam = ParamFamily(Y3**2 - (1 + T3) * X3**2)
    rep = tworzewski_check(fam, TestingDisc((1, 1), (0, 1), 0.5), "geometric:0.5,8")
    assert set(rep.values().values()) == {1} and rep.verdict
    # explicit roots of the slice (1 + s)^2 = 1 + t
    for row in rep.per_t:
        roots = [-1 + math.sqrt(1 + row["t"].real), -1 - math.sqrt(1 + row["t"].real)]
        assert row["degree"] == sum(abs(r) < 0.5 for r in roots)


def test_tworzewski_boundary_root():
    with pytest.raises(BoundaryRootError):
        tworzewski_check(FAM_X2_MINUS_T, TestingDisc((0,), (1,), 0.5), FOURS)


def test_tworzewski_detects_jump():
    # a second zero enters the disc only away from t0
    fam = ParamFamily(x * (x - MultiPoly.parse("3/5", ["t", "x"]) + t))
    rep = tworzewski_check(fam, TestingDisc((0,), (1,), 0.5), [0.02, 0.05, 0.2, 0.4])
    assert [r["degree"] for r in rep.per_t] == [1, 1, 2, 2]
    assert rep.verdict and rep.stabilization_threshold == 0.05
    rep = tworzewski_check(fam, TestingDisc((0,), (1,), 0.5), [0.05, 0.2, 0.4])
    assert not rep.verdict


def test_testing_disc_validation():
    with pytest.raises(PreconditionError):
        TestingDisc((0,), (1,), 0.5).validate(MultiPoly.parse("x*(x-1/5)", ["x"]))
    with pytest.raises(PreconditionError):
        TestingDisc((0.5,), (1,), 0.1).validate(MultiPoly.parse("x", ["x"]))
    with pytest.raises(ValueError):
        TestingDisc((0,), (0,), 0.5)
    with pytest.raises(ValueError):
        TestingDisc((0,), (1,), -1)


@pytest.mark.parametrize("name", sorted(FAMILIES))
def test_tworzewski_on_families(name):
    fam, (anchor, direction, radius) = FAMILIES[name]
    rep = tworzewski_check(fam, TestingDisc(anchor, direction, radius), geometric(2, 10, 2.0))
    assert rep.verdict and rep.stabilization_threshold > 0
    assert all(r["degree"] == rep.at_t0["degree"] for r in rep.per_t
               if abs(r["t"]) <= rep.stabilization_threshold)


# --- fibres ----------------------------------------------------------------------------------

def test_fibre_examples():
    (gx,) = MultiPoly.variables(1, ["x"])
    rep = fibre_cycle_convergence(gx**2, 0, TestingDisc((0,), (1,), 1.0), FOURS)
    assert set(rep.values().values()) == {2} and rep.verdict
    rep = fibre_cycle_convergence(gx, 0, TestingDisc((0,), (1,), 1.0), FOURS)
    assert set(rep.values().values()) == {1} and rep.verdict
    u, v = MultiPoly.variables(2, ["x", "y"])
    g = u**3 + u * v
    disc = TestingDisc((1, -1), (0, 1), 0.5)
    rep = fibre_cycle_convergence(g, 0, disc, "geometric:0.5,8,0.9")
    assert rep.verdict
    # the slice of g - s along the disc is s' - s: one root at s' = s
    for row in rep.per_t:
        assert row["degree"] == int(abs(row["t"]) < 0.5)


def test_fibre_matches_manual_family():
    u, v = MultiPoly.variables(2, ["x", "y"])
    g = u**3 + u * v
    disc = TestingDisc((1, -1), (0, 1), 0.5)
    manual = ParamFamily(MultiPoly.parse("x**3 + x*y - s", ["s", "x", "y"]))
    a = fibre_cycle_convergence(g, 0, disc, "geometric:0.5,8,0.9", seed=3)
    b = tworzewski_check(manual, disc, "geometric:0.5,8,0.9", seed=3)
    assert a.to_json() == b.to_json()


def test_fibre_constant_g():
    with pytest.raises(PreconditionError):
        fibre_cycle_convergence(MultiPoly.constant(1, 1), 0, TestingDisc((0,), (1,), 1.0), [0.1])


# --- distance continuity ------------------------------------------------------------------------

def test_distance_continuity_roots():
    ts = geometric(3, 12)
    rep = distance_continuity_check(FAM_X2_MINUS_T, [0.3], ts)
    for tk, row in zip(ts, rep.per_t):
        assert abs(row["dist_gap"] - math.sqrt(tk)) <= 1e-10
    assert rep.verdict
    assert abs(rep.details["probe_distances_t0"][0] - 0.3) <= 1e-12


def test_distance_continuity_line():
    ts = [0.5, 0.25, 0.1, 0.05, 0.01]
    rep = distance_continuity_check(FAM_Y_TX, [(0, 0.2)], ts)
    for tk, row in zip(ts, rep.per_t):
        exact = 0.2 - 0.2 / math.sqrt(1 + tk**2)
        assert abs(row["dist_gap"] - exact) <= 1e-10
    assert rep.verdict


def test_distance_continuity_constant():
    rep = distance_continuity_check(FAM_X2, [0.3, -0.1j], FOURS[:5])
    assert all(r["dist_gap"] == 0 for r in rep.per_t) and rep.verdict


def test_distance_continuity_empty():
    with pytest.raises(EmptyZeroSetError):
        distance_continuity_check(ParamFamily(1 + t * x), [0.3], [0.1])


# --- properness persistence ---------------------------------------------------------------------

WINDOW2 = Region((0, 0), (1.0, 1.0))


def test_properness_examples():
    ts = [0.5, 0.25, 0.1]
    rep = properness_persistence_check(ParamFamily(Y3 - X3 - T3), ParamFamily(Y3 + 0 * T3), WINDOW2, ts)
    assert set(rep.values().values()) == {1} and rep.verdict
    famX = ParamFamily(Y3 - T3 * X3)
    famY = ParamFamily(Y3 - X3**2 + 0 * T3)
    rep = properness_persistence_check(famX, famY, WINDOW2, ts)
    assert rep.verdict and rep.at_t0["intersections"] == 1
    assert all(r["intersections"] == 2 for r in rep.per_t)


def test_plane_intersections_substitution_oracle():
    u, v = MultiPoly.variables(2, ["x", "y"])
    for tk in (0.5, 0.25, 0.1):
        pts = plane_intersections(v - MultiPoly.parse(str(tk), ["x", "y"]) * u, v - u**2)
        expected = sorted([(0j, 0j), (complex(tk), complex(tk**2))], key=lambda p: p[0].real)
        assert len(pts) == 2
        for p, q in zip(pts, expected):
            assert abs(p[0] - q[0]) + abs(p[1] - q[1]) <= 1e-9


def test_properness_common_component():
    fam = ParamFamily(Y3 + 0 * T3)
    with pytest.raises(PropernessError):
        properness_persistence_check(fam, fam, WINDOW2, [0.1])


# --- uniform exponent -----------------------------------------------------------------------------

WINDOW1 = Region.ball((0,), 0.1)


def test_uniform_tx_plus_x2():
    rep = uniform_exponent_verify(FAM_TX2, [0.1, 0.05, 0.02, 0.01], WINDOW1)
    assert rep.details["alpha"] == 2 and rep.verdict
    row = rep.per_t[0]
    assert row["c_of_t"] > 0 and row["delta"] == 2
    # oracle: |x (x + t)| / min(|x|, |x + t|)^2 on the same samples
    lr = verify_inequality(FAM_TX2.at(0.1), (0,), 2, WINDOW1)
    z = lr.samples.points[:, 0]
    ratio = np.abs(z * (z + 0.1)) / np.minimum(np.abs(z), np.abs(z + 0.1)) ** 2
    assert abs(ratio.min() - row["c_of_t"]) <= 1e-9 * ratio.min()


def test_uniform_constant_family():
    rep = uniform_exponent_verify(FAM_X2, "geometric:0.5,4", WINDOW1)
    assert rep.verdict and rep.details["alpha"] == 2
    assert all(abs(c - 1) <= 1e-12 for c in rep.values().values())


def test_uniform_tx_plus_x3():
    rep = uniform_exponent_verify(FAM_TX3, "geometric:0.5,8", WINDOW1)
    assert rep.verdict and rep.details["alpha"] == 3
    inside = [r for r in rep.per_t if abs(r["t"]) <= rep.stabilization_threshold]
    assert len(inside) >= 2 and all(r["delta"] == 3 and r["c_of_t"] > 0 for r in inside)


def test_uniform_requires_vanishing_base_point():
    with pytest.raises(PreconditionError):
        uniform_exponent_verify(FAM_X2_MINUS_T, [0.1], WINDOW1)


@pytest.mark.parametrize("name", sorted(FAMILIES))
def test_slice_degree_coincidence(name):
    fam, _ = FAMILIES[name]
    rep = uniform_exponent_verify(fam, "geometric:0.5,6", Region.ball((0,) * fam.space_nvars, 0.1), n_samples=128)
    alpha = order_at(fam.at(fam.t0), (0,) * fam.space_nvars)
    assert rep.verdict and rep.details["alpha"] == alpha
    for r in rep.per_t:
        if abs(r["t"]) <= rep.stabilization_threshold:
            assert r["delta"] == alpha and r["c_of_t"] > 0
