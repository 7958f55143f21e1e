"""
Tests for site energies, Fock energies, overlaps and the Fock basis
"""
import math

import numpy as np
import pytest

from lattice_povm.core import (
    coherent_overlap,
    coherent_state_weight,
    composition_batches,
    composition_count,
    fock_coherent_overlap,
    fock_energy,
    iter_compositions,
    povm_weight,
    site_energies,
)
from lattice_povm.exceptions import InputError, RefusalError
from lattice_povm.models import CoherentSpec, FockConfig, LatticeSpec


def test_site_energies_alternate_at_half_ratio():
    eps = site_energies(LatticeSpec(M=4, V2=1.0, kappa_ratio=0.5))
    np.testing.assert_allclose(eps, [1.0, 0.0, 1.0, 0.0], atol=1e-15)


def test_site_energies_third_ratio():
    eps = site_energies(LatticeSpec(M=3, V2=2.0, kappa_ratio=1.0 / 3.0))
    np.testing.assert_allclose(eps, [1.5, 1.5, 0.0], atol=1e-14)


def test_site_energies_vanish_without_secondary_lattice():
    np.testing.assert_array_equal(site_energies(LatticeSpec(M=7, V2=0.0, kappa_ratio=0.3)), np.zeros(7))


def test_site_energies_periodic_in_ratio_and_offsets():
    base = site_energies(LatticeSpec(M=9, V2=3.0, kappa_ratio=0.3))
    shifted = site_energies(LatticeSpec(M=9, V2=3.0, kappa_ratio=1.3))
    np.testing.assert_allclose(base, shifted, atol=1e-12)
    offsets = tuple(float(i) for i in range(9))
    with_offsets = site_energies(LatticeSpec(M=9, V2=3.0, kappa_ratio=0.3, extra_offsets=offsets))
    np.testing.assert_allclose(with_offsets - base, offsets)


@pytest.mark.parametrize(
    "k,eps,U,expected",
    [
        ((1, 1, 1), (0.0, 0.0, 0.0), 7.0, 0.0),
        ((2, 0), (0.0, 0.0), 3.0, 3.0),
        ((1, 1), (0.0, 5.0), 11.0, 5.0),
    ],
)
def test_fock_energy_examples(k, eps, U, expected):
    assert fock_energy(k, np.array(eps), U) == expected


def test_fock_energy_permutation_covariant():
    rng = np.random.default_rng(5)
    k = rng.integers(0, 5, size=6)
    eps = rng.uniform(0, 10, size=6)
    perm = rng.permutation(6)
    assert fock_energy(k[perm], eps[perm], 2.5) == pytest.approx(fock_energy(k, eps, 2.5))


def test_fock_energy_length_mismatch():
    with pytest.raises(InputError):
        fock_energy((1, 2), np.zeros(3), 1.0)


def test_fock_energy_ignores_hopping():
    spec_a = LatticeSpec(M=3, V2=1.0, J=0.0)
    spec_b = LatticeSpec(M=3, V2=1.0, J=4.0)
    k = FockConfig.of([1, 2, 0])
    assert fock_energy(k, site_energies(spec_a), 1.0) == fock_energy(k, site_energies(spec_b), 1.0)


def test_coherent_overlap_examples():
    a = CoherentSpec(xi=(0.5, 0.5), phi=(0.0, 0.0))
    assert coherent_overlap(a, a, 7) == pytest.approx(1.0)
    b = CoherentSpec(xi=(0.5, 0.5), phi=(0.0, math.pi))
    assert abs(coherent_overlap(a, b, 3)) < 1e-15
    c = CoherentSpec(xi=(0.5, 0.5), phi=(0.0, -math.pi / 2))
    # phi_2 - phi'_2 = pi/2: (1/2 + i/2)^2 = i/2
    assert coherent_overlap(a, c, 2) == pytest.approx(0.5j)


def test_coherent_overlap_bounded_and_decreasing():
    rng = np.random.default_rng(11)
    for _ in range(20):
        xi_a, xi_b = rng.dirichlet(np.ones(4)), rng.dirichlet(np.ones(4))
        a = CoherentSpec(xi=tuple(xi_a / xi_a.sum()), phi=tuple(rng.uniform(0, 6, 4)))
        b = CoherentSpec(xi=tuple(xi_b / xi_b.sum()), phi=tuple(rng.uniform(0, 6, 4)))
        magnitudes = [abs(coherent_overlap(a, b, N)) for N in range(1, 8)]
        assert max(magnitudes) <= 1.0 + 1e-12
        assert all(x >= y for x, y in zip(magnitudes, magnitudes[1:]))


def test_coherent_overlap_site_mismatch():
    with pytest.raises(InputError):
        coherent_overlap(CoherentSpec.uniform(2), CoherentSpec.uniform(3), 2)


def test_fock_coherent_overlap_examples():
    single = fock_coherent_overlap((5,), CoherentSpec(xi=(1.0,), phi=(0.3,)))
    assert abs(single) == pytest.approx(1.0)
    assert single == pytest.approx(np.exp(1j * 5 * 0.3))
    assert fock_coherent_overlap((1, 1), CoherentSpec.uniform(2)) == pytest.approx(math.sqrt(2) / 2)
    assert fock_coherent_overlap((1, 1), CoherentSpec(xi=(1.0, 0.0), phi=(0.0, 0.0))) == 0j


def test_povm_weight_examples():
    assert povm_weight((4,), CoherentSpec(xi=(1.0,), phi=(0.0,))) == pytest.approx(1.0)
    assert povm_weight((1, 1), CoherentSpec.uniform(2)) == pytest.approx(0.5)
    assert povm_weight((3, 0, 0), CoherentSpec(xi=(1.0, 0.0, 0.0), phi=(0.0, 0.0, 0.0))) == pytest.approx(1.0)


def test_povm_weight_is_phase_independent_and_matches_overlap():
    rng = np.random.default_rng(2)
    xi = rng.dirichlet(np.ones(3))
    xi = xi / xi.sum()
    k = (2, 0, 3)
    weights = []
    for _ in range(3):
        c = CoherentSpec(xi=tuple(xi), phi=tuple(rng.uniform(0, 6, 3)))
        weights.append(povm_weight(k, c))
        assert abs(fock_coherent_overlap(k, c)) ** 2 == pytest.approx(weights[-1], rel=1e-12)
    assert weights[0] == pytest.approx(weights[1], rel=1e-12)


def test_povm_weight_survives_large_instances():
    """N=170 on M=130 sites stays finite in log space."""
    k = np.zeros(130, dtype=int)
    k[:40] = 2
    k[40:] = 1
    weight = povm_weight(k, CoherentSpec.uniform(130))
    assert np.isfinite(weight)
    assert 0.0 < weight < 1.0


@pytest.mark.parametrize("M", [1, 2, 3, 4])
@pytest.mark.parametrize("N", [0, 1, 3, 6])
def test_povm_weights_sum_to_one_over_basis(M, N):
    rng = np.random.default_rng(M * 10 + N)
    xi = rng.dirichlet(np.ones(M)) if M > 1 else np.ones(1)
    xi = xi / xi.sum()
    c = CoherentSpec(xi=tuple(xi), phi=(0.0,) * M)
    assert math.fsum(povm_weight(k, c) for k in iter_compositions(N, M)) == pytest.approx(1.0, abs=1e-12)


def test_coherent_state_weight_matches_overlap():
    reference = CoherentSpec(xi=(0.2, 0.3, 0.5), phi=(0.1, 1.0, 0.0))
    other = CoherentSpec(xi=(0.5, 0.25, 0.25), phi=(2.0, 0.5, 0.0))
    stacked = coherent_state_weight(reference, 4, other.xi_array[None, :], other.phi_array[None, :])
    assert stacked[0] == pytest.approx(abs(coherent_overlap(other, reference, 4)) ** 2)


def test_composition_enumeration():
    assert composition_count(4, 3) == 15
    compositions = list(iter_compositions(2, 2))
    assert compositions == [(0, 2), (1, 1), (2, 0)]
    assert len(list(iter_compositions(4, 3))) == 15
    assert all(sum(k) == 4 for k in iter_compositions(4, 3))


def test_composition_batches_refuse_above_cap():
    with pytest.raises(RefusalError) as excinfo:
        list(composition_batches(170, 130, cap=1000))
    assert excinfo.value.cap == 1000
    assert excinfo.value.required == composition_count(170, 130)


def test_composition_batches_cover_basis():
    batches = list(composition_batches(5, 3, cap=100, batch_size=4))
    stacked = np.vstack(batches)
    assert stacked.shape == (21, 3)
    assert [tuple(row) for row in stacked] == list(iter_compositions(5, 3))
