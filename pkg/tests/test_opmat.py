import math

import numpy as np
import pytest

from cwvo.basis import WaveletBasis, phi_vector, psi_vector
from cwvo.caputo_oracle import caputo_vo_monomial
from cwvo.opmat import (
    MonomialChangeFactor,
    OrderFunction,
    condition_estimate_inf,
    derivative_matrix,
    derivative_matrix_power,
    monomial_change_factor,
    monomial_change_matrix,
    vo_monomial_matrix,
    vo_wavelet_matrix,
)


def constant_order(v: float, q: int = 1) -> OrderFunction:
    return OrderFunction(q=q, value=lambda x, t: v)


def test_derivative_matrix_small_case_entries():
    # k=0, M=3: only (2,1) and (3,2) couple; (3,1) has even index sum
    D = derivative_matrix(WaveletBasis(k=0, M=3))
    ref = np.array([[0.0, 0.0, 0.0], [2.0 * math.sqrt(2.0), 0.0, 0.0], [0.0, 8.0, 0.0]])
    assert np.abs(D - ref).max() < 1e-14


def test_derivative_matrix_block_structure():
    b = WaveletBasis(k=2, M=3)
    D = derivative_matrix(b)
    blocks = [D[3 * n : 3 * n + 3, 3 * n : 3 * n + 3] for n in range(4)]
    for blk in blocks[1:]:
        assert np.array_equal(blk, blocks[0])
    mask = np.ones_like(D, dtype=bool)
    for n in range(4):
        mask[3 * n : 3 * n + 3, 3 * n : 3 * n + 3] = False
    assert np.all(D[mask] == 0.0)


@pytest.mark.parametrize("k,M", [(0, 2), (0, 5), (1, 3), (2, 4)])
def test_derivative_matrix_nilpotent(k, M):
    b = WaveletBasis(k=k, M=M)
    assert np.all(derivative_matrix_power(b, M) == 0.0)


def test_derivative_matrix_power_validation():
    b = WaveletBasis(k=0, M=3)
    with pytest.raises(ValueError):
        derivative_matrix_power(b, 0)
    D = derivative_matrix(b)
    assert np.array_equal(derivative_matrix_power(b, 2), D @ D)


def test_derivative_matrix_against_finite_differences():
    b = WaveletBasis(k=1, M=5)
    D = derivative_matrix(b)
    h = 1e-6
    for t in (0.1, 0.3, 0.6, 0.9):
        fd = (psi_vector(b, t + h) - psi_vector(b, t - h)) / (2.0 * h)
        assert np.abs(D @ psi_vector(b, t) - fd).max() <= 1e-5


def test_change_matrix_reconstructs_monomials():
    rng = np.random.default_rng(7)
    for k, M in [(0, 5), (1, 4), (2, 3)]:
        b = WaveletBasis(k=k, M=M)
        P = monomial_change_matrix(b)
        for t in rng.uniform(0.0, 1.0, 50):
            err = np.abs(phi_vector(b, t) - P @ psi_vector(b, t)).max()
            assert err <= 1e-10


def test_change_matrix_constant_row():
    # the constant monomial needs exactly 1/psi_00 of the first wavelet
    P = monomial_change_matrix(WaveletBasis(k=0, M=3))
    assert P[0, 0] == pytest.approx(math.sqrt(math.pi / 2.0), rel=1e-14)
    assert np.all(P[0, 1:] == 0.0)


def test_change_factor_round_trip():
    b = WaveletBasis(k=1, M=4)
    factor = monomial_change_factor(b)
    assert isinstance(factor, MonomialChangeFactor)
    rng = np.random.default_rng(3)
    v = rng.standard_normal(b.m_hat)
    assert np.abs(factor.solve(factor.matrix @ v) - v).max() < 1e-11


def test_vo_monomial_matrix_matches_closed_form():
    # k=0 blocks hold global monomials, so T Phi(t) must equal the
    # closed-form fractional derivative of each monomial at t
    b = WaveletBasis(k=0, M=6)
    order = constant_order(0.6)
    for t in (0.25, 0.5, 0.75):
        lhs = vo_monomial_matrix(b, order, 0.0, t) @ phi_vector(b, t)
        ref = [caputo_vo_monomial(m, order, 0.0, t) for m in range(6)]
        assert np.abs(lhs - np.array(ref)).max() <= 1e-12


def test_vo_monomial_matrix_diagonal_and_bracket():
    b = WaveletBasis(k=1, M=5)
    order = OrderFunction(q=2, value=lambda x, t: 1.5)
    T = vo_monomial_matrix(b, order, 0.0, 1.0)
    diag = np.diag(T)
    expected_block = [0.0, 0.0, 2.0 / math.gamma(1.5), 6.0 / math.gamma(2.5), 24.0 / math.gamma(3.5)]
    assert diag[:5].tolist() == pytest.approx(expected_block, rel=1e-12)
    assert diag[5:].tolist() == pytest.approx(expected_block, rel=1e-12)
    assert np.all(T == np.diag(diag))


def test_vo_matrices_reject_bad_time_and_bracket():
    b = WaveletBasis(k=0, M=4)
    with pytest.raises(ValueError):
        vo_monomial_matrix(b, constant_order(0.5), 0.0, 0.0)
    with pytest.raises(ValueError):
        vo_wavelet_matrix(b, constant_order(0.5), 0.0, -0.1)
    with pytest.raises(ValueError):
        # order value escapes its declared bracket
        vo_wavelet_matrix(b, constant_order(1.2, q=1), 0.0, 0.5)
    with pytest.raises(ValueError):
        OrderFunction(q=0, value=lambda x, t: 0.5)


def test_vo_wavelet_matrix_integer_order_reduction():
    b = WaveletBasis(k=1, M=4)
    D = derivative_matrix(b)
    order = constant_order(1.0)
    for t in (0.25, 0.5, 0.75):
        pt = psi_vector(b, t)
        Q = vo_wavelet_matrix(b, order, 0.0, t)
        assert np.abs(Q @ pt - D @ pt).max() <= 1e-9


def test_vo_wavelet_matrix_shared_factor_identical():
    b = WaveletBasis(k=1, M=4)
    order = constant_order(0.8)
    factor = monomial_change_factor(b)
    a = vo_wavelet_matrix(b, order, 0.1, 0.4, factor)
    c = vo_wavelet_matrix(b, order, 0.1, 0.4)
    assert np.array_equal(a, c)


@pytest.mark.filterwarnings("ignore::scipy.linalg.LinAlgWarning")
def test_condition_estimate_scales():
    assert condition_estimate_inf(np.eye(4)) == pytest.approx(1.0, rel=1e-12)
    est = condition_estimate_inf(np.diag([1.0, 1e-8]))
    assert est == pytest.approx(1e8, rel=1e-6)
    assert condition_estimate_inf(np.zeros((3, 3))) == math.inf
    singular = np.array([[1.0, 2.0], [2.0, 4.0]])
    assert condition_estimate_inf(singular) > 1e15
