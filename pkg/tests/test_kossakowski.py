import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lindform import kossakowski, sun_basis, superop
from lindform.errors import InvalidDissipatorError, NonGKLSRepresentableError
from lindform.randmat import random_hermitian, random_psd

GAMMA = 0.8
# Amplitude damping 0 -> 1 written out by hand in row-major order
# (rho00, rho01, rho10, rho11).
DECAY = np.array(
    [
        [-GAMMA, 0, 0, 0],
        [0, -GAMMA / 2, 0, 0],
        [0, 0, -GAMMA / 2, 0],
        [GAMMA, 0, 0, 0],
    ]
)
# sigma_minus = (F_1 - i F_2)/sqrt(2), so a_ik = (GAMMA/2) c_i conj(c_k) with c = (1, -i, 0)
DECAY_A = 0.5 * GAMMA * np.array([[1, 1j, 0], [-1j, 1, 0], [0, 0, 0]])
DEPHASING = np.diag([0, -GAMMA, -GAMMA, 0])
DEPHASING_A = np.diag([0, 0, GAMMA])


@pytest.mark.parametrize("mat, expected", [(DECAY, DECAY_A), (DEPHASING, DEPHASING_A)])
def test_two_level_hand_oracles(mat, expected):
    L = superop.dissipator(mat, 2)
    assert np.allclose(kossakowski.kossakowski_trace(L).A, expected, atol=1e-14)
    assert np.allclose(kossakowski.kossakowski_via_coherence(L).A, expected, atol=1e-14)
    assert np.allclose(kossakowski.reconstruct_dissipator(expected).matrix, mat, atol=1e-14)


def test_reconstruct_matches_direct_gkls_sum():
    rng = np.random.default_rng(5)
    a = random_hermitian(rng, 8)
    g = sun_basis.generate_basis(3).generators
    rho = random_psd(rng, 3)

    direct = np.zeros((3, 3), dtype=complex)
    for i in range(8):
        for k in range(8):
            direct += 0.5 * a[i, k] * (2 * g[i] @ rho @ g[k] - rho @ g[k] @ g[i] - g[k] @ g[i] @ rho)
    L = kossakowski.reconstruct_dissipator(a)
    assert np.allclose(superop.apply(L, rho), direct)
    assert superop.validate_dissipator(L).passed


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.sampled_from([2, 3]))
def test_both_methods_invert_reconstruction(seed, n):
    a = random_hermitian(np.random.default_rng(seed), n * n - 1)
    L = kossakowski.reconstruct_dissipator(a)
    assert np.allclose(kossakowski.kossakowski_trace(L).A, a, atol=1e-12)
    assert np.allclose(kossakowski.kossakowski_via_coherence(L).A, a, atol=1e-12)


def test_trace_method_handles_four_levels():
    a = random_psd(np.random.default_rng(6), 15)
    L = kossakowski.reconstruct_dissipator(a)
    assert np.allclose(kossakowski.kossakowski_trace(L).A, a, atol=1e-12)


def test_ordering_does_not_change_A():
    a = random_hermitian(np.random.default_rng(7), 8)
    L = kossakowski.reconstruct_dissipator(a, ordering=superop.paper_v3())
    assert L.ordering == superop.paper_v3()
    assert np.allclose(kossakowski.kossakowski_trace(L).A, a, atol=1e-12)


def test_coherence_form_generates_coherence_dynamics():
    rng = np.random.default_rng(8)
    L = kossakowski.reconstruct_dissipator(random_psd(rng, 8))
    basis = sun_basis.generate_basis(3)
    form = kossakowski.coherence_form(L)
    rho = random_psd(rng, 3)
    rho /= np.trace(rho)
    direct = basis.coherence_vector(superop.apply(L, rho))
    assert np.allclose(form.derivative(basis.coherence_vector(rho)), direct)


def test_tensor_shapes_and_rank():
    t = kossakowski.tensor_for(3)
    assert t.T_square.shape == (64, 64)
    assert t.T_aug.shape == (72, 64)
    sv = t.square_singular_values
    assert np.sum(sv < 1e-10 * sv.max()) == 8
    # for qubits the antisymmetric part of A only feeds the drive vector
    t2 = kossakowski.tensor_for(2)
    assert np.sum(t2.square_singular_values < 1e-10) == 3
    assert t2.T_aug.shape == (12, 9)


def test_tensor_against_first_principles_trace():
    # T[s, m, i, k] = Tr(F_s D_ik[F_m]) with D_ik the single-term GKLS dissipator
    g = sun_basis.generate_basis(3).generators
    t = kossakowski.tensor_for(3).T_square.reshape(8, 8, 8, 8)
    rng = np.random.default_rng(9)
    for s, m, i, k in rng.integers(0, 8, size=(40, 4)):
        dik = 0.5 * (2 * g[i] @ g[m] @ g[k] - g[m] @ g[k] @ g[i] - g[k] @ g[i] @ g[m])
        assert t[s, m, i, k] == pytest.approx(np.trace(g[s] @ dik), abs=1e-13)


def test_sum_rule_small_residual():
    for n in (2, 3):
        assert sun_basis.check_sum_rule(sun_basis.su_n(n)[1], kossakowski.tensor_for(n)) < 1e-12


def test_invalid_dissipator_rejected():
    with pytest.raises(InvalidDissipatorError):
        kossakowski.kossakowski_trace(superop.dissipator(-np.eye(4), 2))


def test_hamiltonian_part_is_not_gkls_representable():
    h = np.diag([0.5, -0.5])
    decay = superop.dissipator(DECAY, 2)
    L = superop.from_map(lambda rho: decay(rho) - 1j * (h @ rho - rho @ h), 2)
    assert superop.validate_dissipator(L).passed
    with pytest.raises(NonGKLSRepresentableError):
        kossakowski.kossakowski_via_coherence(L)
