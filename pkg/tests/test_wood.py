import numpy as np
import pytest

from harmext import diffops, wood


def test_eval_examples():
    assert wood.eval3(0.0, 0.0, 0.0) == (0.0, 0.0, 0.0)
    assert wood.eval3(1.0, 2.0, 3.0) == (-20.0, -7.0, 3.0)
    assert wood.eval3(1.0, 0.0, 0.0) == (1.0, 0.0, 0.0)


def test_invert_examples():
    assert wood.invert3(0.0, 0.0, 0.0) == (0.0, 0.0, 0.0)
    assert np.allclose(wood.invert3(-20.0, -7.0, 3.0), (1, 2, 3), atol=1e-12)
    assert np.allclose(wood.invert3(8.0, 0.0, 0.0), (2, 0, 0), atol=1e-15)
    assert wood.real_cbrt(-8.0) == -2.0


def test_det_examples():
    assert wood.jacobian_det3(0.0, 5.0, -1.0) == 0.0
    assert wood.jacobian_det3(2.0, 0.0, 0.0) == 12.0
    assert wood.jacobian_det3(-1.0, 0.0, 0.0) == 3.0


def test_evalN_examples(rng):
    P = rng.uniform(-2, 2, (10, 3))
    assert np.array_equal(wood.evalN(P), wood.field3(P))
    assert np.array_equal(wood.evalN([7.0, 9, 1, 2, 3]), [7, 9, -20, -7, 3])
    assert np.array_equal(wood.evalN(np.zeros(4)), np.zeros(4))
    with pytest.raises(ValueError):
        wood.evalN([1.0, 2.0])


def test_harmonicity(rng):
    lap = wood.harmonicity_report(3, rng.uniform(-2, 2, (50, 3)))
    assert np.all(lap < 1e-5)
    lap5 = wood.harmonicity_report(5, rng.uniform(-2, 2, (20, 5)))
    assert np.all(lap5 < 1e-5)
    # the third component is linear: its second differences cancel exactly
    assert lap[2] < 1e-12


def test_image_round_trip(rng):
    W = rng.uniform(-10, 10, (1000, 3))
    err = np.abs(wood.field3(wood.invertN(W)) - W)
    assert np.max(err / np.maximum(1.0, np.abs(W))) < 1e-12


def test_source_round_trip_off_degenerate_plane(rng):
    # near x = 0 the cube root amplifies the rounding of f(p) by ~1/(3 x^2);
    # away from that plane the composition is accurate to 1e-9
    P = rng.uniform(-10, 10, (1000, 3))
    P = P[np.abs(P[:, 0]) > 0.5]
    assert np.max(np.abs(wood.invertN(wood.field3(P)) - P)) < 1e-9


def test_source_round_trip_floor_is_conditioning():
    # f(p) rounded once, then inverted in exact arithmetic: the error is still
    # far above eps, so the loss comes from the map, not from the inverse
    from fractions import Fraction
    p = np.array([8.85e-5, -1.0029, -0.695])
    a, b, c = wood.eval3(*p)
    x = np.cbrt(float(Fraction(a) - Fraction(b) * Fraction(c)))
    assert abs(x - p[0]) > 1e-10


def test_fd_det_matches(rng):
    P = rng.uniform(-1, 1, (100, 3))
    P *= (3 * rng.uniform(0, 1, 100) / np.linalg.norm(P, axis=1))[:, None]
    J = diffops.jacobian_field(wood.field3, P)
    assert np.max(np.abs(np.linalg.det(J) - wood.jacobian_det3(*P.T))) < 1e-5


def test_degeneracy_locus(rng):
    P = rng.uniform(-3, 3, (20, 3))
    P[:, 0] = 0.0
    assert np.all(wood.jacobian_det3(*P.T) == 0.0)
    J = diffops.jacobian_field(wood.field3, P)
    assert np.max(np.abs(np.linalg.det(J))) < 1e-6
    Q = rng.uniform(0.1, 3, (20, 3))
    assert np.all(wood.jacobian_det3(*Q.T) > 0)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_verification_report(n):
    rep = wood.verification_report(n)
    assert wood.report_passes(rep)
    assert rep["zero_set_det_max"] == 0.0
