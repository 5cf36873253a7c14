import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gpchannels.capacity import (
    capacity_bounds,
    capacity_from_fidelity,
    channel_fidelity_extremes,
    classical_capacity_exact,
    holevo_lower_bound,
    holevo_lower_via_classical,
    holevo_upper_bound,
    holevo_upper_bound_weyl,
    pauli_classical_capacity,
    zeta_components_p_form,
    zeta_vector,
)
from gpchannels.channels import (
    EigenvalueVector,
    GeneralizedPauliChannel,
    eigenvalues_from_probabilities,
    gpc_to_weyl,
    probabilities_from_eigenvalues,
    tensor,
)
from gpchannels.errors import NotCompletelyPositiveError
from gpchannels.selfcheck import sample_cp_eigenvalues

LN2, LN3, LN5 = np.log(2.0), np.log(3.0), np.log(5.0)
REF = GeneralizedPauliChannel(2, [0.25, 0.5, 0.25, 0.0])
REF_EIGS = eigenvalues_from_probabilities(REF)


def test_reference_lower_bound_value():
    low, alpha = holevo_lower_bound(REF_EIGS)
    assert low == pytest.approx(0.75 * LN3 - LN2, abs=1e-12)
    assert alpha == 1  # largest-magnitude eigenvalue sits in basis 1


def test_reference_upper_bound_value():
    up, comps = holevo_upper_bound(REF_EIGS)
    assert up == pytest.approx(0.75 * LN3 - LN2, abs=1e-12)
    assert np.allclose(comps.zeta, [0.75, 0.25], atol=1e-12)


def test_lower_bound_routes_agree(cp_sampler, rng):
    for d in (2, 3, 4):
        for lam in cp_sampler(d, 30, rng):
            e = EigenvalueVector(d, lam)
            a, _ = holevo_lower_bound(e)
            b = holevo_lower_via_classical(e)
            assert a == pytest.approx(b, abs=1e-10)


def test_bounds_reject_noncp_input():
    with pytest.raises(NotCompletelyPositiveError):
        holevo_lower_bound(EigenvalueVector(2, [0.9, 0.9, -0.9]))
    with pytest.raises(NotCompletelyPositiveError):
        holevo_upper_bound(EigenvalueVector(2, [0.9, 0.9, -0.9]))


def test_zeta_vector_blocks():
    mult = [0.25, 0.5, 0.25, 0.0]
    assert np.allclose(zeta_vector(mult, 2), [0.75, 0.25])
    with pytest.raises(ValueError):
        zeta_vector([0.5, 0.5], 2)


def test_zeta_components_sum_to_one(cp_sampler, rng):
    for d in (2, 3, 4, 5):
        for lam in cp_sampler(d, 20, rng):
            _, comps = holevo_upper_bound(EigenvalueVector(d, lam))
            assert comps.zeta.sum() == pytest.approx(1.0, abs=1e-12)
            assert np.all(np.diff(comps.zeta) <= 1e-12)  # non-increasing
            assert 1 <= comps.region <= d


def test_zeta_matches_sorted_multiset(cp_sampler, rng):
    # closed-form blocks against brute-force sort-and-sum
    for d in (2, 3, 4, 5, 6):
        for lam in cp_sampler(d, 20, rng):
            e = EigenvalueVector(d, lam)
            c = probabilities_from_eigenvalues(e)
            mult = np.concatenate([[c.probabilities[0]],
                                   np.repeat(c.probabilities[1:] / (d - 1), d - 1)])
            _, comps = holevo_upper_bound(e)
            assert np.allclose(comps.zeta, zeta_vector(mult, d), atol=1e-12)


def test_p_form_and_lambda_form_agree(cp_sampler, rng):
    for d in (2, 3, 4, 5):
        for lam in cp_sampler(d, 20, rng):
            e = EigenvalueVector(d, lam)
            a = holevo_upper_bound(e)[1]
            b = zeta_components_p_form(probabilities_from_eigenvalues(e))
            assert a.region == b.region
            assert np.allclose(a.zeta, b.zeta, atol=1e-12)
            assert np.allclose(a.plain_blocks, b.plain_blocks, atol=1e-12)
            assert np.allclose(a.shifted_blocks, b.shifted_blocks, atol=1e-12)
            assert np.allclose(a.straddle_blocks, b.straddle_blocks, atol=1e-12)
            assert np.allclose(a.merged_blocks, b.merged_blocks, atol=1e-12)


def test_region_boundary_continuity():
    # sum of eigenvalues equal to one of them: adjacent assemblies coincide
    # dyadic entries keep the boundary sums exact in floating point
    cases = [
        (3, [0.25, 0.125, -0.0625, -0.1875], 1, 2),         # sum = lambda_2
        (3, [0.25, 0.0625, -0.125, -0.3125], 2, 3),         # sum = lambda_3
        (4, [0.25, 0.09375, 0.03125, -0.125, -0.21875], 2, 3),  # sum = lambda_3
    ]
    for d, lam, r_low, r_high in cases:
        e = EigenvalueVector(d, lam)
        assert abs(e.values.sum() - np.sort(e.values)[::-1][r_high - 1]) < 1e-15
        _, comps = holevo_upper_bound(e)
        assert comps.region == r_low  # ties resolve downward
        assert np.allclose(comps.zeta_for_region(r_low),
                           comps.zeta_for_region(r_high), atol=1e-10)


def test_zeta_for_region_range_check():
    _, comps = holevo_upper_bound(REF_EIGS)
    with pytest.raises(ValueError):
        comps.zeta_for_region(0)
    with pytest.raises(ValueError):
        comps.zeta_for_region(3)


def test_weyl_route_matches_closed_form(cp_sampler, rng):
    for d in (2, 3, 5):
        for lam in cp_sampler(d, 10, rng):
            e = EigenvalueVector(d, lam)
            up, _ = holevo_upper_bound(e)
            w = gpc_to_weyl(probabilities_from_eigenvalues(e))
            assert up == pytest.approx(holevo_upper_bound_weyl(w), abs=1e-12)


def test_bounds_are_ordered(cp_sampler, rng):
    for d in (2, 3, 4, 5):
        for lam in cp_sampler(d, 50, rng):
            b = capacity_bounds(EigenvalueVector(d, lam))
            assert b.chi_low <= b.chi_up + 1e-9
            assert 0.0 <= b.chi_low <= np.log(d) + 1e-12


def test_qubit_bounds_always_coincide(cp_sampler, rng):
    for lam in cp_sampler(2, 100, rng):
        b = capacity_bounds(EigenvalueVector(2, lam))
        assert b.coincide
        assert b.exact_capacity == pytest.approx(b.chi_low, abs=1e-12)


def test_two_copy_reference_values():
    pair = tensor(REF, REF)
    assert np.allclose(zeta_vector(pair.probabilities, 4),
                       [10 / 16, 5 / 16, 1 / 16, 0.0], atol=1e-12)
    up_pair = holevo_upper_bound_weyl(pair)
    assert up_pair == pytest.approx(15 / 16 * LN5 - 11 / 8 * LN2, abs=1e-12)
    up_single, _ = holevo_upper_bound(REF_EIGS)
    assert up_pair > 2 * up_single + 1e-3  # strictly superadditive here


def test_depolarizing_capacity_exact():
    # all eigenvalues equal: both bounds collapse to the same expression
    d, lam = 3, 0.4
    e = EigenvalueVector(d, [lam] * (d + 1))
    cap = classical_capacity_exact(e)
    a = (1 + (d - 1) * lam) / d
    expect = a * np.log(d * a) + (1 - a) * np.log(d * (1 - a) / (d - 1))
    assert cap == pytest.approx(expect, abs=1e-12)


def test_exact_capacity_none_when_gap():
    e = EigenvalueVector(3, [0.5, 0.2, 0.1, 0.1])
    assert classical_capacity_exact(e) is None
    b = capacity_bounds(e)
    assert not b.coincide and b.exact_capacity is None


def test_pauli_closed_form_qubit_only():
    with pytest.raises(ValueError):
        pauli_classical_capacity(EigenvalueVector(3, [0.1, 0.1, 0.1, 0.1]))


def test_fidelity_extremes_and_capacity():
    f_min, f_max = channel_fidelity_extremes(REF_EIGS)
    assert f_min == pytest.approx(0.25)
    assert f_max == pytest.approx(0.75)
    # here |min| = max so both fidelities give the same capacity
    assert capacity_from_fidelity(f_min) == pytest.approx(
        pauli_classical_capacity(REF_EIGS), abs=1e-12)
    assert capacity_from_fidelity(f_max) == pytest.approx(
        pauli_classical_capacity(REF_EIGS), abs=1e-12)


def test_capacity_from_fidelity_domain():
    assert capacity_from_fidelity(1.0) == pytest.approx(LN2, abs=1e-15)
    assert capacity_from_fidelity(0.5) == pytest.approx(0.0, abs=1e-15)
    with pytest.raises(ValueError):
        capacity_from_fidelity(1.2)


@given(st.integers(min_value=0, max_value=10**9))
@settings(max_examples=30, deadline=None)
def test_upper_bound_between_zero_and_max(seed):
    rng = np.random.default_rng(seed)
    lam = sample_cp_eigenvalues(3, 1, rng)[0]
    up, _ = holevo_upper_bound(EigenvalueVector(3, lam))
    assert -1e-12 <= up <= LN3 + 1e-12
