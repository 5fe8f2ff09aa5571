import numpy as np
import pytest

from poset_oam.crossed_product import (
    CrossedProductAlgebra,
    build_algebra,
    build_clock,
    build_shift,
    span_rank,
    verify_relations,
)


def test_clock_small():
    np.testing.assert_array_equal(build_clock(2), np.diag([1, -1]))
    np.testing.assert_array_equal(build_clock(4), np.diag([1, 1j, -1, -1j]))


@pytest.mark.parametrize("N", [1, 0])
def test_rejects_trivial_group(N):
    with pytest.raises(ValueError):
        build_clock(N)
    with pytest.raises(ValueError):
        build_shift(N)


def test_shift():
    np.testing.assert_array_equal(build_shift(2), [[0, 1], [1, 0]])
    np.testing.assert_array_equal(build_shift(3) @ [1, 0, 0], [0, 1, 0])
    np.testing.assert_array_equal(np.linalg.matrix_power(build_shift(3), 3), np.eye(3))


def test_n2_exact():
    alg = build_algebra(2)
    # hand multiplication: U V U^-1 = [[0,-1],[-1,0]] = -V
    np.testing.assert_array_equal(alg.U @ alg.V @ alg.U.conj().T, -alg.V)
    rep = verify_relations(alg)
    assert (rep.clock_power, rep.shift_power, rep.commutation) == (0.0, 0.0, 0.0)


def test_n8_passes():
    assert verify_relations(build_algebra(8), tol=1e-12).passed(1e-12)


def test_identity_clock_fails():
    alg = build_algebra(3)
    broken = CrossedProductAlgebra(3, alg.lam, np.eye(3, dtype=complex), alg.V)
    rep = verify_relations(broken)
    assert rep.commutation == pytest.approx(abs(alg.lam - 1), rel=1e-14)
    assert not rep.passed(1e-10)


def test_dimension_mismatch():
    alg = build_algebra(3)
    with pytest.raises(ValueError):
        verify_relations(CrossedProductAlgebra(3, alg.lam, alg.U, np.eye(4)))


@pytest.mark.parametrize("N", [2, 5, 64, 1024])
def test_unitarity(N):
    U, V = build_clock(N), build_shift(N)
    assert np.max(np.abs(U.conj().T @ U - np.eye(N))) < 1e-12
    assert np.max(np.abs(V.conj().T @ V - np.eye(N))) < 1e-12


@pytest.mark.parametrize("N", [3, 7, 16])
def test_trace_of_clock_powers(N):
    U = build_clock(N)
    assert np.trace(np.linalg.matrix_power(U, 0)) == N
    for k in range(1, N):
        assert abs(np.trace(np.linalg.matrix_power(U, k))) < 1e-12


@pytest.mark.parametrize("N", range(2, 9))
def test_span_rank(N):
    assert span_rank(build_algebra(N)) == N * N
