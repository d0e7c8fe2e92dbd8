import numpy as np
import pytest

import resourcekit as rk
from resourcekit.errors import ChannelInvalid, DimensionMismatch
from resourcekit.feasible import coherent_rank_pure, factorize_pure


def test_identity_channel_is_identity():
    rho = rk.random_mixed([3], 3, seed=1)
    out = rk.apply(rk.identity_channel(3), rho)
    assert np.abs(out.data - rho.data).max() <= 1e-12


def test_full_dephasing_keeps_diagonal():
    rho = rk.random_mixed([4], 4, seed=2)
    out = rk.apply(rk.dephasing_channel(4), rho)
    assert np.abs(out.data - np.diag(np.diag(rho.data))).max() <= 1e-12


def test_random_channel_preserves_trace():
    rho = rk.random_mixed([3], 3, seed=3)
    chan = rk.random_channel(3, 3, seed=4)
    out = rk.apply(chan, rho)
    assert abs(np.trace(out.data).real - 1.0) <= 1e-10


def test_selective_projective_measurement_of_plus():
    plus = rk.pure_state([1, 1]).projector()
    outcomes = rk.selective_apply(rk.dephasing_channel(2), plus)
    assert len(outcomes) == 2
    for i, (p, post) in enumerate(outcomes):
        assert p == pytest.approx(0.5, abs=1e-12)
        assert np.abs(post.data - rk.basis_pure([2], i).projector().data).max() <= 1e-12


def test_selective_unitary_single_outcome():
    rho = rk.random_mixed([2], 2, seed=5)
    u = rk.random_unitary(2, seed=6)
    outcomes = rk.selective_apply(rk.unitary_channel(u), rho)
    assert len(outcomes) == 1
    assert outcomes[0][0] == pytest.approx(1.0, abs=1e-12)


def test_selective_resums_to_apply():
    rho = rk.random_mixed([3], 3, seed=7)
    chan = rk.random_channel(3, 3, seed=8)
    direct = rk.apply(chan, rho).data
    resummed = sum(p * post.data for p, post in rk.selective_apply(chan, rho))
    assert np.abs(direct - resummed).max() <= 1e-10


def test_monomial_single_outcome_is_diagonal_phase_unitary():
    chan = rk.make_monomial_incoherent(4, 1, seed=9)
    assert chan.outcomes == 1
    k = chan.kraus[0]
    off = k - np.diag(np.diag(k))
    assert np.abs(off).max() == 0.0
    assert np.abs(np.abs(np.diag(k)) - 1.0).max() <= 1e-12


def test_monomial_keeps_basis_states_diagonal():
    chan = rk.make_monomial_incoherent(3, 3, seed=10)
    for i in range(3):
        for _, post in rk.selective_apply(chan, rk.basis_pure([3], i).projector()):
            off = post.data - np.diag(np.diag(post.data))
            assert np.abs(off).max() <= 1e-12


def test_monomial_never_increases_coherence_rank():
    for trial in range(20):
        chan = rk.make_monomial_incoherent(4, 1 + trial % 3, seed=[11, trial])
        psi = rk.random_pure([4], seed=[12, trial])
        rank_in = coherent_rank_pure(psi)
        for k in chan.kraus:
            amps = k @ psi.amps
            if np.linalg.norm(amps) <= 1e-12:
                continue
            assert coherent_rank_pure(rk.pure_state(amps, (4,))) <= rank_in


def test_local_product_identity_and_unitaries():
    ident = rk.make_local_product([rk.identity_channel(2), rk.identity_channel(2)])
    rho = rk.random_mixed([2, 2], 4, seed=13)
    assert np.abs(rk.apply(ident, rho).data - rho.data).max() <= 1e-12
    u1 = rk.unitary_channel(rk.random_unitary(2, seed=14))
    u2 = rk.unitary_channel(rk.random_unitary(2, seed=15))
    combo = rk.make_local_product([u1, u2])
    assert combo.outcomes == 1
    assert combo.tag == "local_product"


def test_local_product_dephasing_tensor_identity():
    chan = rk.make_local_product([rk.dephasing_channel(2), rk.identity_channel(2)])
    assert chan.outcomes == 2
    acc = sum(k.conj().T @ k for k in chan.kraus)
    assert np.abs(acc - np.eye(4)).max() <= 1e-10


def test_local_product_preserves_product_structure():
    a = rk.random_pure([2], seed=16)
    b = rk.random_pure([2], seed=17)
    prod = rk.tensor(a.projector(), b.projector())
    chan = rk.make_local_product([rk.random_channel(2, 2, seed=18),
                                  rk.random_channel(2, 2, seed=19)])
    for _, post in rk.selective_apply(chan, prod):
        spec = rk.spectral(post)
        psi = rk.PureState(post.dims, spec.eigenvectors[:, 0].copy())
        assert spec.eigenvalues[0] >= 1.0 - 1e-10
        fac = factorize_pure(psi, tol=1e-8)
        assert fac.separability_depth == 2


def test_kraus_validation_errors():
    with pytest.raises(ChannelInvalid):
        rk.kraus_channel([np.eye(2) * 0.5])
    with pytest.raises(ChannelInvalid):
        rk.kraus_channel([])
    with pytest.raises(ChannelInvalid):
        rk.kraus_channel([np.eye(2) / np.sqrt(2), np.eye(2) / np.sqrt(2)], tag="unitary")
    hadamard = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
    with pytest.raises(ChannelInvalid):
        rk.kraus_channel([hadamard], tag="monomial_incoherent")
    with pytest.raises(DimensionMismatch):
        rk.apply(rk.identity_channel(3), rk.random_mixed([2], 2, seed=20))


def test_amplitude_damping_is_monomial():
    k0 = np.array([[1, 0], [0, np.sqrt(0.5)]], dtype=complex)
    k1 = np.array([[0, np.sqrt(0.5)], [0, 0]], dtype=complex)
    chan = rk.kraus_channel([k0, k1], tag="monomial_incoherent")
    assert chan.tag == "monomial_incoherent"


def test_channel_json_round_trip():
    chan = rk.make_local_product([rk.dephasing_channel(2), rk.identity_channel(2)])
    again = rk.channel_from_json(rk.channel_to_json(chan))
    assert again.tag == "local_product"
    assert again.outcomes == chan.outcomes
    for a, b in zip(again.kraus, chan.kraus):
        assert np.abs(a - b).max() == 0.0


def test_random_channel_deterministic():
    a = rk.random_channel(3, 2, seed=21)
    b = rk.random_channel(3, 2, seed=21)
    for ka, kb in zip(a.kraus, b.kraus):
        assert ka.tobytes() == kb.tobytes()
