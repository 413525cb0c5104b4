import math

import pytest

ps = pytest.importorskip("polyspec")

D = ps.BoundaryCondition.Dirichlet
N = ps.BoundaryCondition.Neumann


def test_rectangle_eigenvalues():
    assert ps.eigenvalues(ps.Shape.rectangle(math.pi, math.pi), D, 10.0) == pytest.approx(
        [(2.0, 1), (5.0, 2), (8.0, 1), (10.0, 2)]
    )


def test_unit_square_determinant():
    z = ps.zeta_prime_zero(ps.Shape.square(1.0))
    assert z["agree"]
    oracle = 0.5 * math.log(8 * math.pi**1.5 / math.gamma(0.25) ** 2)
    assert z["value"] == pytest.approx(oracle, rel=1e-13)
    assert ps.determinant(ps.Shape.square(1.0)) == pytest.approx(math.exp(-oracle), rel=1e-13)


def test_epstein_sum_of_two_squares():
    catalan = 0.915965594177219015054603514932
    z = ps.epstein_zeta(1, 0, 1, 2.0)
    assert z["value"] == pytest.approx(4 * (math.pi**2 / 6) * catalan, rel=1e-12)


def test_heat_methods_and_constants():
    shape = ps.Shape.equilateral(1.0)
    a = ps.heat_trace(shape, N, 0.1, ps.HeatMethod.ThetaForm)["value"]
    b = ps.heat_trace(shape, N, 0.1, ps.HeatMethod.DirectEigenSum)["value"]
    assert abs(a - b) <= 1e-12 * max(1.0, abs(a))
    assert ps.heat_constant_term(ps.Shape.hemi_equilateral(1.0), D) == (5, 12)


def test_torus_and_errors():
    assert ps.torus_heat_trace([[1.0, 0.0], [0.0, 1.0]], 0.1)["agree"]
    with pytest.raises(ValueError):
        ps.Shape.square(-1.0)
    with pytest.raises(ValueError):
        ps.spectral_zeta(ps.Shape.square(1.0), 1.0)


def test_acceptance_subset():
    for cid in (2, 5, 9):
        assert ps.acceptance_check(cid)["passed"]
