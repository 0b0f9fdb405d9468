import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qbaker import oracle
from qbaker.closedform import mean_position, t_power_matrix
from qbaker.dyadic import BitString

ATOL = oracle.STRUCTURAL_TOL


def test_qft_one_qubit_is_hadamard():
    h = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
    np.testing.assert_allclose(oracle.qft(1), h, atol=1e-15)


@pytest.mark.parametrize("n", range(0, 9))
def test_qft_unitary(n):
    assert oracle.unitarity_residual(oracle.qft(n)) <= ATOL


def test_qft_zero_column_uniform():
    f = oracle.qft(4)
    np.testing.assert_allclose(f[:, 0], np.full(16, 0.25), atol=1e-15)


def test_antiperiodic_qft_scalar_case():
    np.testing.assert_allclose(oracle.antiperiodic_qft(0), [[1j]], atol=1e-15)


def test_partial_fourier_extremes():
    np.testing.assert_allclose(oracle.partial_fourier(0, 3), oracle.qft(3), atol=1e-15)
    np.testing.assert_allclose(oracle.partial_fourier(3, 3), np.eye(8), atol=1e-15)
    with pytest.raises(ValueError):
        oracle.partial_fourier(4, 3)


@pytest.mark.parametrize("n", range(1, 9))
def test_baker_unitary_is_unitary(n):
    assert oracle.unitarity_residual(oracle.baker_unitary(n)) <= ATOL


@pytest.mark.parametrize("n", range(1, 9))
def test_baker_unitary_matches_single_step_formula(n):
    assert oracle.max_abs(oracle.baker_unitary(n) - t_power_matrix(n, 1)) <= ATOL


def test_baker_unitary_one_qubit():
    np.testing.assert_allclose(oracle.baker_unitary(1),
                               (1 - 1j) / 2 * np.array([[1, 1j], [1j, 1]]), atol=1e-15)


def test_momentum_one_qubit():
    np.testing.assert_allclose(oracle.momentum_operator(1),
                               [[0.5, -0.25], [-0.25, 0.5]], atol=1e-15)


def test_position_spectrum():
    np.testing.assert_allclose(np.diag(oracle.position_operator(2)).real,
                               [1 / 8, 3 / 8, 5 / 8, 7 / 8])


@pytest.mark.parametrize("n", range(1, 7))
def test_weyl_commutation(n):
    u, v = oracle.weyl_pair(n)
    assert oracle.max_abs(u @ v - oracle.weyl_phase(n) * v @ u) <= ATOL
    assert oracle.unitarity_residual(u) <= ATOL
    assert oracle.unitarity_residual(v) <= ATOL


def test_v_translates_position_forward():
    _, v = oracle.weyl_pair(3)
    e0 = np.zeros(8)
    e0[0] = 1
    moved = v @ e0
    assert abs(moved[1]) == pytest.approx(1.0)


def test_vacuum_one_qubit():
    raw = np.exp([-1 / 32, -9 / 32])
    np.testing.assert_allclose(oracle.vacuum_state(1), raw / np.linalg.norm(raw), atol=1e-15)


@pytest.mark.parametrize("n", [1, 4, 8])
def test_vacuum_normalized_and_decreasing(n):
    psi = oracle.vacuum_state(n)
    assert np.linalg.norm(psi) == pytest.approx(1.0, abs=1e-12)
    assert np.all(np.diff(psi.real) < 0)


def test_coherent_state_at_origin_is_vacuum():
    c = oracle.coherent_state(0, 0, 5)
    np.testing.assert_allclose(c.vector, oracle.vacuum_state(5), atol=1e-12)
    assert c.alpha == 0


@given(st.integers(-5, 5), st.integers(-5, 5), st.integers(1, 6))
def test_coherent_state_normalized(x, v, n):
    c = oracle.coherent_state(x, v, n)
    assert np.linalg.norm(c.vector) == pytest.approx(1.0, abs=1e-12)
    assert c.alpha == complex(x, v)


def test_coherent_state_displacement_shifts_profile():
    psi = oracle.coherent_state(1, 0, 3).vector
    np.testing.assert_allclose(np.abs(psi), np.abs(np.roll(oracle.vacuum_state(3), 1)), atol=1e-12)


def test_oracle_mean_position_examples():
    xi = BitString.from_str("110")
    assert oracle.oracle_mean_position(xi, 0) == pytest.approx((6 + 0.5) / 8, abs=ATOL)
    assert oracle.oracle_mean_position(xi, 3) == pytest.approx(0.5, abs=ATOL)
    assert oracle.oracle_mean_position(xi, 1) == pytest.approx(0.625, abs=ATOL)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6).flatmap(lambda n: st.tuples(
    st.integers(0, 2**n - 1).map(lambda j: BitString.from_int(j, n)),
    st.integers(0, 4 * n + 2))))
def test_oracle_agrees_with_closed_form(args):
    xi, n = args
    got = oracle.oracle_mean_position(xi, n)
    assert got == pytest.approx(float(mean_position(xi, n)), abs=oracle.CROSS_MODULE_TOL)


def test_oracle_table_matches_single_calls():
    table = oracle.oracle_mean_positions(3, 6)
    xi = BitString.from_str("011")
    for s in range(7):
        assert table[s, xi.value] == pytest.approx(oracle.oracle_mean_position(xi, s), abs=1e-12)


def test_coherent_mean():
    q = oracle.position_eigenvalues(3)
    expected = float(np.abs(oracle.vacuum_state(3)) ** 2 @ q)
    assert oracle.oracle_coherent_mean(0, 0, 0, 3) == pytest.approx(expected, abs=ATOL)
    for n in range(6):
        assert 0 < oracle.oracle_coherent_mean(2, 1, n, 4) < 1


def test_caps():
    with pytest.raises(ValueError):
        oracle.baker_unitary(oracle.MAX_QUBITS + 1)
    with pytest.raises(ValueError):
        oracle.oracle_mean_position(BitString((0,) * (oracle.MAX_ORACLE_QUBITS + 1)), 1)
    with pytest.raises(ValueError):
        oracle.oracle_mean_position(BitString((0, 1)), oracle.MAX_ORACLE_STEPS + 1)


def test_dump_operator_csv():
    import io

    buf = io.StringIO()
    oracle.dump_operator_csv(oracle.qft(1), buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "row,col,re,im"
    assert len(lines) == 5
