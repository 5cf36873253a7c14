import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gpchannels.channels import (
    EigenvalueVector,
    GeneralizedPauliChannel,
    WeylChannel,
    apply,
    apply_weyl,
    canonical_mub,
    channel_from_json,
    channel_to_json,
    choi_matrix,
    classical_map_t,
    eigenvalues_from_probabilities,
    fujiwara_algoet_margin,
    gpc_to_weyl,
    is_completely_positive,
    kraus_probability_multiset,
    probabilities_from_eigenvalues,
    require_cp,
    tensor,
    weyl_kraus_terms,
)
from gpchannels.errors import (
    InvalidDistributionError,
    NotCompletelyPositiveError,
    UnsupportedDimensionError,
)

REF_PROBS = [0.25, 0.5, 0.25, 0.0]


def random_density(rng, d):
    a = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    rho = a @ a.conj().T
    return rho / np.trace(rho)


def test_channel_validates_probability_count():
    with pytest.raises(ValueError):
        GeneralizedPauliChannel(2, [0.5, 0.5])


def test_channel_validates_distribution():
    with pytest.raises(InvalidDistributionError):
        GeneralizedPauliChannel(2, [0.7, 0.5, -0.1, -0.1])


def test_channel_rejects_dimension_one():
    with pytest.raises(UnsupportedDimensionError):
        GeneralizedPauliChannel(1, [0.5, 0.5, 0.0])


def test_eigenvalue_vector_box():
    EigenvalueVector(3, [1.0, -0.5, 0.0, 0.2])  # boundary values fine
    with pytest.raises(ValueError):
        EigenvalueVector(3, [1.2, 0.0, 0.0, 0.0])
    with pytest.raises(ValueError):
        EigenvalueVector(3, [0.0, -0.6, 0.0, 0.0])


def test_eigenvalue_vector_clips_boundary_noise():
    e = EigenvalueVector(2, [1.0 + 1e-12, -1.0 - 1e-12, 0.0])
    assert e.values[0] == 1.0
    assert e.values[1] == -1.0


def test_reference_channel_eigenvalues():
    e = eigenvalues_from_probabilities(GeneralizedPauliChannel(2, REF_PROBS))
    assert np.allclose(e.values, [0.5, 0.0, -0.5], atol=1e-15)


@given(st.integers(min_value=2, max_value=6), st.integers(min_value=0, max_value=10**9))
@settings(max_examples=40, deadline=None)
def test_probability_round_trip(d, seed):
    rng = np.random.default_rng(seed)
    p = rng.dirichlet(np.ones(d + 2))
    c = GeneralizedPauliChannel(d, p)
    back = probabilities_from_eigenvalues(eigenvalues_from_probabilities(c))
    assert np.allclose(back.probabilities, c.probabilities, atol=1e-12)


def test_cp_margin_signs():
    assert fujiwara_algoet_margin(EigenvalueVector(2, [0.5, 0.0, -0.5])) == pytest.approx(0.0, abs=1e-15)
    assert fujiwara_algoet_margin(EigenvalueVector(2, [0.2, 0.1, 0.0])) > 0
    # the identity channel is an extreme point: margin exactly zero
    assert fujiwara_algoet_margin(EigenvalueVector(2, [1.0, 1.0, 1.0])) == 0.0
    assert fujiwara_algoet_margin(EigenvalueVector(2, [0.9, 0.9, -0.9])) < 0


def test_require_cp_raises():
    with pytest.raises(NotCompletelyPositiveError):
        require_cp(EigenvalueVector(2, [0.9, 0.9, -0.9]))


def test_probabilities_from_noncp_eigenvalues_raise():
    with pytest.raises(NotCompletelyPositiveError):
        probabilities_from_eigenvalues(EigenvalueVector(2, [0.9, 0.9, -0.9]))


def test_identity_channel_acts_trivially(rng):
    d = 3
    c = GeneralizedPauliChannel(d, [1.0] + [0.0] * (d + 1))
    m = canonical_mub(d)
    rho = random_density(rng, d)
    assert np.allclose(apply(c, m, rho), rho, atol=1e-12)


def test_uniform_channel_depolarizes(rng):
    # equal weight on identity and every basis family sends all states to I/d
    d = 3
    c = GeneralizedPauliChannel(d, np.full(d + 2, 1.0 / (d + 2)))
    e = eigenvalues_from_probabilities(c)
    m = canonical_mub(d)
    rho = random_density(rng, d)
    out = apply(c, m, rho)
    lam = e.values[0]
    assert np.allclose(e.values, lam, atol=1e-15)
    expect = lam * rho + (1 - lam) * np.eye(d) / d
    assert np.allclose(out, expect, atol=1e-12)


def test_apply_preserves_trace_and_hermiticity(rng):
    d = 5
    p = rng.dirichlet(np.ones(d + 2))
    c = GeneralizedPauliChannel(d, p)
    m = canonical_mub(d)
    rho = random_density(rng, d)
    out = apply(c, m, rho)
    assert np.trace(out) == pytest.approx(1.0, abs=1e-12)
    assert np.allclose(out, out.conj().T, atol=1e-12)


@pytest.mark.parametrize("d", (2, 3, 5))
def test_apply_matches_weyl_route(d, rng):
    p = rng.dirichlet(np.ones(d + 2))
    c = GeneralizedPauliChannel(d, p)
    m = canonical_mub(d)
    rho = random_density(rng, d)
    assert np.allclose(apply(c, m, rho), apply_weyl(gpc_to_weyl(c), rho), atol=1e-10)


def test_gpc_to_weyl_dim4_round_trip(rng):
    p = rng.dirichlet(np.ones(6))
    c = GeneralizedPauliChannel(4, p)
    w = gpc_to_weyl(c)
    assert w.dimension == 4
    assert w.parts == 2
    # weights: identity once, each family spread over 3 labels
    weights, ops = weyl_kraus_terms(w)
    assert weights.size == 16
    assert np.allclose(weights.sum(), 1.0, atol=1e-12)
    rho = random_density(rng, 4)
    out = apply_weyl(w, rho)
    assert np.trace(out) == pytest.approx(1.0, abs=1e-12)
    m = canonical_mub(4)
    assert np.allclose(out, apply(c, m, rho), atol=1e-10)


def test_gpc_to_weyl_rejects_unsupported_dimension():
    c = GeneralizedPauliChannel(6, np.full(8, 1.0 / 8))
    with pytest.raises(UnsupportedDimensionError):
        gpc_to_weyl(c)


def test_kraus_probability_multiset_layout():
    c = GeneralizedPauliChannel(2, REF_PROBS)
    mult = kraus_probability_multiset(c)
    assert mult.size == 4
    assert mult[0] == pytest.approx(0.25)
    assert np.allclose(np.sort(mult), [0.0, 0.25, 0.25, 0.5])


def test_weyl_kraus_terms_are_unitary():
    w = gpc_to_weyl(GeneralizedPauliChannel(3, np.full(5, 0.2)))
    weights, ops = weyl_kraus_terms(w)
    assert weights.size == 9 and ops.shape == (9, 3, 3)
    for u in ops:
        assert np.allclose(u @ u.conj().T, np.eye(3), atol=1e-12)


def test_tensor_weights_are_kron():
    a = gpc_to_weyl(GeneralizedPauliChannel(2, REF_PROBS))
    pair = tensor(a, a)
    assert pair.dimension == 4
    assert np.allclose(pair.probabilities, np.kron(a.probabilities, a.probabilities))


def test_tensor_accepts_gpc_inputs():
    c = GeneralizedPauliChannel(2, REF_PROBS)
    pair = tensor(c, c)
    assert pair.dimension == 4
    assert pair.probabilities.size == 16


def test_choi_matrix_properties(rng):
    c = GeneralizedPauliChannel(3, rng.dirichlet(np.ones(5)))
    choi = choi_matrix(c)
    assert choi.shape == (9, 9)
    assert np.trace(choi) == pytest.approx(1.0, abs=1e-12)
    assert np.linalg.eigvalsh(choi).min() >= -1e-12


def test_choi_spectrum_is_weight_multiset(rng):
    c = GeneralizedPauliChannel(3, rng.dirichlet(np.ones(5)))
    evs = np.sort(np.linalg.eigvalsh(choi_matrix(c)))
    expect = np.sort(kraus_probability_multiset(c))
    assert np.allclose(evs, expect, atol=1e-9)


def test_classical_map_rows_are_stochastic():
    e = EigenvalueVector(3, [0.4, 0.2, 0.1, 0.0])
    for alpha in range(1, 5):
        t = classical_map_t(e, alpha)
        assert t.shape == (3, 3)
        assert np.allclose(t.sum(axis=1), 1.0, atol=1e-12)
        assert t.min() >= -1e-12


def test_classical_map_structure():
    lam = 0.5
    t = classical_map_t(EigenvalueVector(2, [lam, 0.0, -0.5]), 1)
    assert np.allclose(t, [[0.75, 0.25], [0.25, 0.75]], atol=1e-15)


def test_channel_json_round_trip():
    c = GeneralizedPauliChannel(3, [0.2, 0.3, 0.25, 0.15, 0.1])
    again = channel_from_json(channel_to_json(c))
    assert again.dimension == 3
    assert np.allclose(again.probabilities, c.probabilities, atol=1e-15)


def test_weyl_channel_validates_size():
    with pytest.raises(ValueError):
        WeylChannel(2, 1, [0.5, 0.5])


def test_canonical_mub_caches_and_covers_dim4():
    assert canonical_mub(4).n_bases == 5
    assert canonical_mub(3) is canonical_mub(3)
    with pytest.raises(UnsupportedDimensionError):
        canonical_mub(6)
