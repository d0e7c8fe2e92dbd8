import numpy as np
import pytest

import resourcekit as rk
from resourcekit.errors import (
    BadIndex,
    DimensionMismatch,
    NotHermitian,
    NotPSD,
    TraceDeviation,
)

from oracles import brute_force_partial_trace


def test_validate_maximally_mixed_qubit():
    rho = rk.validate(np.eye(2) / 2, [2])
    assert rho.dims == (2,)
    assert rho.purity() == pytest.approx(0.5, abs=1e-12)


def test_validate_rejects_indefinite_matrix():
    # eigenvalues are 0.5 +/- 0.6 = 1.1 and -0.1
    with pytest.raises(NotPSD):
        rk.validate([[0.5, 0.6], [0.6, 0.5]], [2])


def test_validate_random_ginibre_rechecked_independently():
    rho = rk.random_mixed([2, 2], 4, seed=123)
    # independent re-check of every invariant on the stored matrix
    assert np.abs(rho.data - rho.data.conj().T).max() <= 1e-10
    assert np.linalg.eigvalsh(rho.data).min() >= -1e-10
    assert abs(np.trace(rho.data).real - 1.0) <= 1e-10


def test_validate_error_cases():
    with pytest.raises(NotHermitian):
        rk.validate([[0.5, 0.5], [0.0, 0.5]], [2])
    with pytest.raises(TraceDeviation):
        rk.validate(np.eye(2), [2])
    with pytest.raises(DimensionMismatch):
        rk.validate(np.eye(4) / 4, [3])
    with pytest.raises(DimensionMismatch):
        rk.validate(np.ones((2, 3)) / 3, [2])


def test_validate_clamps_small_negative_eigenvalue():
    u = rk.random_unitary(3, seed=5)
    w = np.array([0.7, 0.3 + 5e-11, -5e-11])
    rho = rk.validate((u * w) @ u.conj().T, [3])
    assert np.linalg.eigvalsh(rho.data).min() >= -1e-14
    assert abs(np.trace(rho.data).real - 1.0) <= 1e-12


def test_frac_power_identity_and_projector():
    eye = rk.validate(np.eye(4) / 4, [4])
    for t in (0.3, 0.5, 1.0):
        assert np.abs(rk.frac_power(eye, t) - 4.0 ** -t * np.eye(4)).max() <= 1e-12
    proj = rk.basis_pure([3], 1).projector()
    assert np.abs(rk.frac_power(proj, 0.4) - proj.data).max() <= 1e-12


def test_frac_power_sqrt_squares_back():
    rho = rk.random_mixed([4], 4, seed=7)
    half = rk.frac_power(rho, 0.5)
    assert np.abs(half @ half - rho.data).max() <= 1e-9


def test_frac_power_edge_exponents():
    rho = rk.random_mixed([3], 3, seed=8)
    assert np.abs(rk.frac_power(rho, 1.0) - rho.data).max() <= 1e-12
    with pytest.raises(ValueError):
        rk.frac_power(rho, 0.0)
    with pytest.raises(ValueError):
        rk.frac_power(rho, 1.5)


def test_frac_power_unitary_covariance():
    rho = rk.random_mixed([4], 3, seed=11)
    u = rk.random_unitary(4, seed=12)
    rotated = rk.validate(u @ rho.data @ u.conj().T, [4])
    lhs = rk.frac_power(rotated, 0.6)
    rhs = u @ rk.frac_power(rho, 0.6) @ u.conj().T
    assert np.abs(lhs - rhs).max() <= 1e-9


def test_tensor_block_embedding_and_trace():
    rho = rk.random_mixed([2], 2, seed=3)
    zero = rk.basis_pure([2], 0).projector()
    prod = rk.tensor(rho, zero)
    assert prod.dims == (2, 2)
    assert np.abs(prod.data[::2, ::2] - rho.data).max() <= 1e-15
    eye = rk.validate(np.eye(2) / 2, [2])
    assert np.abs(rk.tensor(eye, eye).data - np.eye(4) / 4).max() <= 1e-15
    assert np.trace(prod.data).real == pytest.approx(1.0, abs=1e-12)


def test_partial_trace_product_state():
    a = rk.random_mixed([2], 2, seed=21)
    b = rk.random_mixed([3], 3, seed=22)
    joint = rk.tensor(a, b)
    assert np.abs(rk.partial_trace(joint, [0]).data - a.data).max() <= 1e-10
    assert np.abs(rk.partial_trace(joint, [1]).data - b.data).max() <= 1e-10


def test_partial_trace_bell_state():
    bell = rk.pure_state([1, 0, 0, 1], (2, 2)).projector()
    red = rk.partial_trace(bell, [0])
    assert np.abs(red.data - np.eye(2) / 2).max() <= 1e-12


def test_partial_trace_matches_brute_force():
    rho = rk.random_mixed([2, 3, 2], 10, seed=33)
    got = rk.partial_trace(rho, [0, 2]).data
    want = brute_force_partial_trace(rho.data, [2, 3, 2], [0, 2])
    assert np.abs(got - want).max() <= 1e-12


def test_partial_trace_bad_index():
    rho = rk.random_mixed([2, 2], 4, seed=1)
    with pytest.raises(BadIndex):
        rk.partial_trace(rho, [])
    with pytest.raises(BadIndex):
        rk.partial_trace(rho, [2])


def test_random_generation_deterministic():
    a = rk.random_mixed([2, 2], 3, seed=99)
    b = rk.random_mixed([2, 2], 3, seed=99)
    assert a.data.tobytes() == b.data.tobytes()
    pa = rk.random_pure([4], seed=17)
    pb = rk.random_pure([4], seed=17)
    assert pa.amps.tobytes() == pb.amps.tobytes()


def test_random_mixed_rank_one_is_pure():
    rho = rk.random_mixed([4], 1, seed=55)
    assert rho.purity() == pytest.approx(1.0, abs=1e-9)


def test_haar_mean_is_maximally_mixed():
    # first moment of the Haar measure: averaging many pure projectors
    rng = np.random.default_rng(2024)
    z = rng.standard_normal((10_000, 2)) + 1j * rng.standard_normal((10_000, 2))
    z /= np.linalg.norm(z, axis=1, keepdims=True)
    mean = np.einsum('ni,nj->ij', z, z.conj()) / z.shape[0]
    assert np.abs(mean - np.eye(2) / 2).max() <= 0.05


def test_pure_state_phase_canonicalization():
    psi = rk.pure_state(np.array([0.0, -1j, 1.0]) / np.sqrt(2))
    lead = psi.amps[np.flatnonzero(np.abs(psi.amps) > 1e-12)[0]]
    assert lead.imag == pytest.approx(0.0, abs=1e-15)
    assert lead.real > 0
    with pytest.raises(DimensionMismatch):
        rk.pure_state([0.0, 0.0])


def test_spectral_decomposition():
    rho = rk.random_mixed([4], 4, seed=77)
    spec = rk.spectral(rho)
    assert (np.diff(spec.eigenvalues) <= 1e-15).all()
    rebuilt = (spec.eigenvectors * spec.eigenvalues) @ spec.eigenvectors.conj().T
    assert np.abs(rebuilt - rho.data).max() <= 1e-9
    gram = spec.eigenvectors.conj().T @ spec.eigenvectors
    assert np.abs(gram - np.eye(4)).max() <= 1e-9


def test_json_round_trip_is_bitwise():
    rho = rk.random_mixed([2, 2], 4, seed=4)
    again = rk.state_from_json(rk.state_to_json(rho))
    assert again.dims == rho.dims
    assert again.data.tobytes() == rho.data.tobytes()


def test_json_refuses_invalid_matrix(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"dims": [2], "matrix": [[[0.5, 0], [0.6, 0]], [[0.6, 0], [0.5, 0]]]}')
    with pytest.raises(NotPSD):
        rk.load_state(path)


def test_save_load_round_trip(tmp_path):
    rho = rk.random_mixed([3], 2, seed=31)
    path = tmp_path / "state.json"
    rk.save_state(rho, path)
    again = rk.load_state(path)
    assert again.data.tobytes() == rho.data.tobytes()


def test_trace_distance():
    a = rk.basis_pure([2], 0).projector()
    b = rk.basis_pure([2], 1).projector()
    assert rk.trace_distance(a, b) == pytest.approx(1.0, abs=1e-12)
    assert rk.trace_distance(a, a) == pytest.approx(0.0, abs=1e-12)
