import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from harmext import tennis
from harmext.errors import DomainError
from harmext.tennis import PI, HALF_PI, QUARTER_PI, TWO_PI

PS = [1.0, 5.0, 20.0, 50.0]


def test_q_examples():
    assert tennis.q(0.0, 7.0) == 1.0
    assert tennis.q(HALF_PI, 7.0) == pytest.approx(1.0, abs=1e-15)
    assert tennis.q(QUARTER_PI, 1.0) == pytest.approx(0.5, abs=1e-15)
    with pytest.raises(DomainError):
        tennis.q(2.0, 1.0)
    with pytest.raises(ValueError):
        tennis.q(0.5, 0.0)


@given(st.floats(0.01, HALF_PI - 0.01), st.floats(0.1, 50), st.floats(1.01, 3))
def test_q_range_and_decreasing_in_p(phi, p, factor):
    a, b = tennis.q(phi, p), tennis.q(phi, p * factor)
    assert 0 < a <= 1
    assert b < a or b == 0.0


@pytest.mark.parametrize("p", PS)
def test_g_examples(p):
    for t in np.linspace(0, TWO_PI, 17):
        assert tennis.g(0.0, t, p) == t
        assert abs(tennis.g(HALF_PI, t, p) - t) < 1e-12
    for phi in np.linspace(0, HALF_PI, 9):
        assert tennis.g(phi, HALF_PI, p) == HALF_PI


def test_g_base_value():
    assert tennis.g(QUARTER_PI, QUARTER_PI, 1.0) == pytest.approx(HALF_PI * 0.5**0.5, abs=1e-15)
    assert abs(tennis.g(QUARTER_PI, QUARTER_PI, 1.0) - 1.110721) < 1e-6


@pytest.mark.parametrize("p", [1.0, 5.0, 20.0])
def test_g_strictly_increasing(p):
    t = np.linspace(0, TWO_PI, 512)
    for phi in np.linspace(0, PI, 33):
        vals = np.array([tennis.g(phi, s, p) for s in t])
        assert np.all(np.diff(vals) > 0)
        assert vals[0] == 0.0 and vals[-1] == TWO_PI
        assert tennis.g(phi, PI, p) == PI


def test_g_non_decreasing_large_p():
    # at p = 50, q ~ 1e-15 near phi = pi/4 and consecutive values of g can
    # coincide in floating point; the map stays non-decreasing
    t = np.linspace(0, TWO_PI, 512)
    for phi in np.linspace(0, PI, 33):
        vals = np.array([tennis.g(phi, s, 50.0) for s in t])
        assert np.all(np.diff(vals) >= 0)


@pytest.mark.parametrize("p", PS)
def test_g_branch_junctions(p):
    # g behaves like alpha^q near the seams, so one-sided perturbations are
    # not informative; compare the two defining formulas at each junction
    for phi in np.linspace(0, PI, 33):
        base = tennis._g_quadrant(phi, HALF_PI, p)            # theta = pi/2, first rule
        assert abs(base - (PI - tennis._g_quadrant(phi, HALF_PI, p))) < 1e-12
        assert abs((PI - tennis._g_quadrant(phi, 0.0, p))
                   - (PI + tennis._g_quadrant(phi, 0.0, p))) < 1e-12  # theta = pi
    for alpha in np.linspace(0, HALF_PI, 65):
        north = tennis._g_base(HALF_PI, alpha, p)
        south = HALF_PI - tennis._g_base(HALF_PI, HALF_PI - alpha, p)
        assert abs(north - south) < 1e-12


def test_g_inverse_examples():
    for y in (0.3, 2.0, 5.5):
        assert tennis.g_inverse(0.0, y, 3.0) == pytest.approx(y, abs=1e-12)
    assert abs(tennis.g_inverse(QUARTER_PI, tennis.g(QUARTER_PI, 1.0, 5), 5) - 1.0) < 1e-10
    assert tennis.g_inverse(1.0, 0.0, 5.0) == 0.0


def test_h_examples():
    for p in PS:
        for phi in np.linspace(0, PI, 9):
            assert abs(tennis.h(phi, 0.75 * PI, p) - phi) < 1e-12
        for t in np.linspace(0, TWO_PI, 9):
            assert tennis.h(0.0, t, p) == 0.0
            assert tennis.h(PI, t, p) == PI
    assert tennis.h(HALF_PI, QUARTER_PI, 1.0) == pytest.approx(HALF_PI, abs=1e-15)


def test_h_pi_quarter_is_not_identity():
    # h_{pi/4}(0) = pi (1/4)^(1 + p pi) is small but not 0
    v = tennis.h(QUARTER_PI, 0.0, 1.0)
    assert v == pytest.approx(PI * 0.25 ** (1 + PI), rel=1e-12)
    assert v > 0


@pytest.mark.parametrize("p", PS)
def test_h_monotone_in_phi_and_continuous(p):
    phis = np.linspace(0, PI, 512)
    for t in np.linspace(0, TWO_PI, 17):
        vals = np.array([tennis.h(phi, t, p) for phi in phis])
        assert np.all(np.diff(vals) >= 0)
    for phi in np.linspace(0, PI, 33):
        for t in (QUARTER_PI, HALF_PI, PI):
            assert abs(tennis.h(phi, t - 1e-13, p) - tennis.h(phi, t + 1e-13, p)) < 1e-9
        assert tennis.h(phi, 0.0, p) == tennis.h(phi, TWO_PI, p)


def test_h_strictly_increasing_moderate_p():
    phis = np.linspace(0, PI, 512)
    for t in np.linspace(0, TWO_PI, 17):
        vals = np.array([tennis.h(phi, t, 1.0) for phi in phis])
        assert np.all(np.diff(vals) > 0)


def test_k_examples():
    for p in PS:
        for t in np.linspace(0, TWO_PI, 9):
            assert tennis.k(0.0, t, p) == (0.0, t)
            assert tennis.k(PI, t, p) == (PI, t)
        phi2, theta2 = tennis.k(HALF_PI, HALF_PI, p)
        assert theta2 == HALF_PI
        assert phi2 == pytest.approx(PI - PI * 0.5 ** (1 + p * PI), abs=1e-15)


def test_f_sphere_poles_and_symmetry(rng, backend):
    poles = np.array([[0.0, 0, 1], [0, 0, -1]])
    assert np.array_equal(tennis.f_sphere(poles, 5.0), poles)
    x = tennis.random_sphere_points(20, rng)
    fx = tennis.f_sphere(x, 5.0)
    fm = tennis.f_sphere(x * [-1, 1, 1], 5.0)
    assert np.max(np.abs(fm[:, 0] + fx[:, 0])) == 0.0
    assert np.max(np.abs(np.linalg.norm(fx, axis=1) - 1)) < 1e-12


def test_f_sphere_agrees_with_k(rng):
    x = tennis.random_sphere_points(200, rng)
    fx = tennis.f_sphere(x, 5.0)
    phi, theta = tennis.to_spherical(x)
    kk = np.array([tennis.k(a, b, 5.0) for a, b in zip(phi, theta)])
    assert np.max(np.abs(tennis.to_cartesian(kk[:, 0], kk[:, 1]) - fx)) < 1e-12


def test_f_sphere_rejects_off_sphere():
    with pytest.raises(DomainError):
        tennis.f_sphere([1.0, 1.0, 0.0], 1.0)


def test_backend_parity_sphere_map(rng):
    from harmext import _backend
    if len(_backend.available()) < 2:
        pytest.skip("compiled backend not built")
    x = tennis.random_sphere_points(5000, rng)
    out = {}
    for name in ("cython", "python"):
        prev = _backend.use(name)
        try:
            out[name] = tennis.f_sphere(x, 20.0)
        finally:
            _backend.use(prev)
    assert np.max(np.abs(out["cython"] - out["python"])) < 1e-12


def test_f_star_examples():
    for p in (1.0, 50.0):
        assert np.array_equal(tennis.f_star([0.0, 0, 0, 1], p), [0, 0, 0, 1])
        assert np.array_equal(tennis.f_star([1.0, 0, 0, 0], p), [1, 0, 0, 0])
    out = tennis.f_star([0.8, 0, 0, 0, 0.6], 5.0)
    assert np.allclose(out, [0.8, 0, 0, 0, 0.6], atol=1e-15)
    with pytest.raises(ValueError):
        tennis.f_star([0.0, 0.0, 1.0], 1.0)


def test_f_star_norm(rng):
    x = tennis.random_sphere_points(50, rng, dim=6)
    y = tennis.SphereHomeoN(5.0, 6)(x)
    assert np.max(np.abs(np.linalg.norm(y, axis=1) - 1)) < 1e-12
    assert np.array_equal(y[:, :3], x[:, :3])


@pytest.mark.parametrize("p", PS)
def test_identity_suite(p):
    rep = tennis.identity_suite(p)
    assert all(v < 1e-12 for v in rep.values()), rep


@pytest.mark.parametrize("p", [1.0, 5.0])
def test_bijectivity_grid(p):
    from scipy.spatial import cKDTree
    phis = np.linspace(0, PI, 66)[1:-1]
    thetas = np.linspace(0, TWO_PI, 128, endpoint=False)
    P, T = np.meshgrid(phis, thetas, indexing="ij")
    img = tennis.f_sphere(tennis.to_cartesian(P, T).reshape(-1, 3), p)
    d, _ = cKDTree(img).query(img, k=2)
    if p == 1.0:
        assert d[:, 1].min() > 0
    else:
        # at p = 5, h puts some images within 1e-16 of a pole in angle and
        # they round to the same double; every other image is distinct
        near_pole = 1.0 - np.abs(img[:, 2]) < 1e-15
        assert np.all(d[~near_pole, 1] > 0)
    for phi, theta in [(0.3, 1.0), (1.2, 4.0), (2.5, 2.2), (1.0, 5.9)]:
        k2 = tennis.k(phi, theta, p)
        back = tennis.k_inverse(*k2, p)
        assert abs(back[0] - phi) < 1e-9 and abs(back[1] - theta) < 1e-9


def test_pointwise_limits():
    # a point with x, y, z > 0 is dragged towards the south pole as p grows
    x = np.array([0.5, 0.4, math.sqrt(1 - 0.41)])
    z3 = [tennis.f_sphere(x, p)[2] for p in (1, 10, 100, 1000)]
    # once the image reaches the pole in floating point it stays there
    assert np.all(np.diff(z3) <= 0) and z3[-1] < -0.99
    z3s = [tennis.f_sphere(x * [1, 1, -1], p)[2] for p in (1, 10, 100, 1000)]
    assert np.all(np.diff(z3s) >= 0) and z3s[-1] > 0.99
