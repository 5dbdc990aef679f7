from __future__ import annotations

import math

import numpy as np
import pytest

from entbounds.errors import DomainError
from entbounds.linalg import partial_trace
from entbounds.measures import concurrence_pure, concurrence_two_qubit, coa_two_qubit, three_qubit_profile
from entbounds.states import (
    EXAMPLE1_MONOGAMY,
    EXAMPLE1_POLYGAMY,
    ThreeQubitCanonical,
    build_canonical,
    example1_monogamy_state,
    example1_polygamy_state,
    haar_amplitudes,
    random_mixed_two_qubit,
    sample_haar_pure,
)


def test_canonical_basis_state():
    psi = build_canonical(ThreeQubitCanonical((1.0, 0.0, 0.0, 0.0, 0.0)))
    expected = np.zeros(8)
    expected[0] = 1
    np.testing.assert_array_equal(psi.amplitudes, expected)


def test_canonical_ghz_like():
    s = 1 / math.sqrt(2)
    psi = build_canonical(ThreeQubitCanonical((s, 0.0, 0.0, 0.0, s)))
    assert concurrence_pure(psi).value == pytest.approx(1.0, abs=1e-14)


def test_phase_placement():
    c = ThreeQubitCanonical((0.6, 0.8, 0.0, 0.0, 0.0), phi=math.pi / 2)
    psi = build_canonical(c)
    assert psi.amplitudes[4] == pytest.approx(0.8j)


@pytest.mark.parametrize(
    "lambdas,phi",
    [((0.5, 0.5, 0.5, 0.5, 0.5), 0.0), ((1.0, 0.0, 0.0, 0.0), 0.0), ((1.0, 0.0, 0.0, 0.0, -0.0 - 1e-3), 0.0), ((1.0, 0, 0, 0, 0), 4.0)],
)
def test_canonical_validation(lambdas, phi):
    with pytest.raises(DomainError):
        ThreeQubitCanonical(lambdas, phi)


def test_monogamy_example_state(mono_closed_forms):
    psi = example1_monogamy_state()
    assert np.vdot(psi.amplitudes, psi.amplitudes).real == pytest.approx(1.0, abs=1e-15)
    assert EXAMPLE1_MONOGAMY.lambdas[1] == 0.0
    c1 = concurrence_two_qubit(partial_trace(psi, (0, 1))).value
    c2 = concurrence_two_qubit(partial_trace(psi, (0, 2))).value
    c = concurrence_pure(psi).value
    assert abs(c1 - mono_closed_forms["C_AB1"]) < 1e-10
    assert abs(c**2 - c1**2 - c2**2) < 1e-10


def test_polygamy_example_state(poly_closed_forms):
    psi = example1_polygamy_state()
    sq = [x * x for x in EXAMPLE1_POLYGAMY.lambdas]
    assert sq == pytest.approx([18 / 72, 1 / 72, 36 / 72, 16 / 72, 1 / 72], abs=1e-15)
    ca = concurrence_pure(psi).value
    assert abs(ca - poly_closed_forms["Ca_A|B1B2"]) < 1e-10
    a1 = coa_two_qubit(partial_trace(psi, (0, 1))).value
    a2 = coa_two_qubit(partial_trace(psi, (0, 2))).value
    assert a1**2 + a2**2 == pytest.approx(108 / 144, abs=1e-12)
    assert a1**2 + a2**2 - ca**2 == pytest.approx(2 / 144, abs=1e-12)


@pytest.mark.parametrize("phi", [0.0, 0.7, math.pi])
def test_polygamy_values_do_not_depend_on_phase(phi):
    psi = build_canonical(ThreeQubitCanonical(EXAMPLE1_POLYGAMY.lambdas, phi))
    prof = three_qubit_profile(psi.amplitudes[None, :])
    assert prof["Ca_AB1"][0] == pytest.approx(math.sqrt(34) / 12, abs=1e-12)
    assert prof["Ca_AB2"][0] == pytest.approx(math.sqrt(74) / 12, abs=1e-12)


# -- Haar sampling ------------------------------------------------------------------


def test_haar_deterministic():
    a = sample_haar_pure(3, seed=99, index=5)
    b = sample_haar_pure(3, seed=99, index=5)
    np.testing.assert_array_equal(a.amplitudes, b.amplitudes)
    c = sample_haar_pure(3, seed=99, index=6)
    assert not np.allclose(a.amplitudes, c.amplitudes)


def test_haar_stack_matches_single_draws():
    stack = haar_amplitudes(3, seed=4, count=5, start=10)
    for j in range(5):
        np.testing.assert_array_equal(stack[j], sample_haar_pure(3, seed=4, index=10 + j).amplitudes)


@pytest.mark.parametrize("n", [1, 5])
def test_haar_qubit_range(n):
    with pytest.raises(DomainError):
        sample_haar_pure(n, seed=0)


def test_haar_mean_marginal_purity():
    # two qubits: E[Tr ρ_A²] = (dA + dB)/(dA dB + 1) = 4/5
    amps = haar_amplitudes(2, seed=2024, count=100_000)
    m = amps.reshape(-1, 2, 2)
    rho = m @ np.swapaxes(m.conj(), 1, 2)
    purity = np.sum(np.abs(rho) ** 2, axis=(1, 2))
    half_width = 3 * purity.std() / math.sqrt(purity.size)
    assert abs(purity.mean() - 0.8) < 0.005
    assert half_width < 0.005


def test_haar_ckw():
    prof = three_qubit_profile(haar_amplitudes(3, seed=11, count=2000))
    assert np.min(prof["C_A|B1B2"] ** 2 - prof["C_AB1"] ** 2 - prof["C_AB2"] ** 2) >= -1e-9


def test_random_mixed_state_is_state():
    rho = random_mixed_two_qubit(seed=5, index=2)
    assert np.trace(rho).real == pytest.approx(1.0)
    assert np.linalg.eigvalsh(rho).min() > -1e-12
    np.testing.assert_array_equal(rho, random_mixed_two_qubit(seed=5, index=2))
