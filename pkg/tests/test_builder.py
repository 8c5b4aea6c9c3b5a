"""Tests for symmetric kets and the cloner output builder.

Frozen expectation vectors below were produced with the subset-enumeration
oracle (expand_gm_decomposed's route): the j-th sector of the basis-clone
output carries the sign (-1)^j from the orthogonal-complement convention
perp(|0>) = -|1>, so magnitudes follow the equal-weight expansion while the
signs alternate per sector.
"""

import math

import numpy as np
import pytest

from gmclone.builder import (
    GMParameters,
    StateVector,
    _symmetric_ket_binomial,
    _symmetric_ket_permutation,
    build_gm,
    build_gm_basis,
    expand_gm_decomposed,
    gamma,
    symmetric_ket,
    symmetrize,
)
from gmclone.errors import DomainError, ResourceLimitError, ZeroProjectionError
from gmclone.qubit import Qubit, equatorial_qubit, make_qubit, perp

INV_SQRT2 = 1 / math.sqrt(2)
INV_SQRT3 = 1 / math.sqrt(3)
INV_SQRT6 = 1 / math.sqrt(6)


def _state(num_qubits, pairs):
    amps = np.zeros(2**num_qubits, dtype=np.complex128)
    for bits, value in pairs.items():
        amps[int(bits, 2)] = value
    return StateVector(num_qubits, amps)


def random_qubit(rng):
    return make_qubit(
        complex(rng.normal(), rng.normal()), complex(rng.normal(), rng.normal())
    )


class TestGamma:
    def test_single_clone(self):
        assert gamma(1, 0) == 1.0

    def test_two_clone_values(self):
        assert abs(gamma(2, 0) - math.sqrt(2 / 3)) < 1e-15
        assert abs(gamma(2, 1) - math.sqrt(1 / 3)) < 1e-15

    @pytest.mark.parametrize("M", range(1, 21))
    def test_completeness(self, M):
        total = sum(gamma(M, j) ** 2 for j in range(M))
        assert abs(total - 1.0) < 1e-14

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            gamma(2, 2)
        with pytest.raises(DomainError):
            gamma(2, -1)
        with pytest.raises(DomainError):
            gamma(0, 0)

    def test_values_strictly_decreasing(self):
        for M in range(2, 11):
            values = [gamma(M, j) for j in range(M)]
            assert all(a > b for a, b in zip(values, values[1:]))


class TestSymmetrize:
    def test_two_qubit_example(self):
        out = symmetrize(_state(2, {"01": 1.0}))
        expected = _state(2, {"01": INV_SQRT2, "10": INV_SQRT2})
        np.testing.assert_allclose(out.amplitudes, expected.amplitudes, atol=1e-14)

    def test_already_symmetric_invariant(self):
        out = symmetrize(_state(3, {"000": 1.0}))
        np.testing.assert_allclose(
            out.amplitudes, _state(3, {"000": 1.0}).amplitudes, atol=1e-14
        )

    def test_three_qubit_average(self):
        out = symmetrize(_state(3, {"001": 1.0}))
        expected = _state(3, {"001": INV_SQRT3, "010": INV_SQRT3, "100": INV_SQRT3})
        np.testing.assert_allclose(out.amplitudes, expected.amplitudes, atol=1e-14)

    def test_antisymmetric_rejected(self):
        singlet = _state(2, {"01": INV_SQRT2, "10": -INV_SQRT2})
        with pytest.raises(ZeroProjectionError):
            symmetrize(singlet)

    def test_factorial_guard(self):
        with pytest.raises(ResourceLimitError):
            symmetrize(StateVector(10, np.ones(2**10, dtype=np.complex128) / 32))

    def test_output_is_permutation_invariant(self, rng):
        n = 4
        amps = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
        out = symmetrize(StateVector(n, amps)).amplitudes.reshape((2,) * n)
        swapped = out.transpose(1, 0, 2, 3)
        np.testing.assert_allclose(out, swapped, atol=1e-12)


class TestSymmetricKet:
    def test_one_perp_factor_carries_sign(self):
        out = symmetric_ket(2, 1, Qubit(1, 0))
        expected = _state(2, {"01": -INV_SQRT2, "10": -INV_SQRT2})
        np.testing.assert_allclose(out.amplitudes, expected.amplitudes, atol=1e-14)

    def test_all_input_factors(self):
        out = symmetric_ket(3, 0, Qubit(1, 0))
        np.testing.assert_allclose(
            out.amplitudes, _state(3, {"000": 1.0}).amplitudes, atol=1e-14
        )

    def test_all_perp_factors_square_sign(self):
        out = symmetric_ket(2, 2, Qubit(1, 0))
        np.testing.assert_allclose(
            out.amplitudes, _state(2, {"11": 1.0}).amplitudes, atol=1e-14
        )

    def test_equal_weights_for_basis_input(self):
        out = symmetric_ket(4, 2, Qubit(1, 0))
        support = np.nonzero(np.abs(out.amplitudes) > 1e-13)[0]
        assert len(support) == math.comb(4, 2)
        np.testing.assert_allclose(
            np.abs(out.amplitudes[support]), 1 / math.sqrt(6), atol=1e-14
        )

    @pytest.mark.parametrize("n", range(2, 9))
    def test_construction_paths_agree(self, n, rng):
        # permutation averaging vs the binomial construction, exact match
        js = range(n + 1) if n <= 6 else (0, 1, n // 2, n)
        for j in js:
            q = random_qubit(rng)
            u, v = q.components(), perp(q).components()
            a = _symmetric_ket_permutation(n, j, u, v)
            b = _symmetric_ket_binomial(n, j, u, v)
            np.testing.assert_allclose(a, b, atol=1e-12)

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            symmetric_ket(2, 3, Qubit(1, 0))
        with pytest.raises(DomainError):
            symmetric_ket(0, 0, Qubit(1, 0))


class TestBuildGM:
    def test_single_clone_is_identity(self, rng):
        q = random_qubit(rng)
        out = build_gm(GMParameters(1, q))
        np.testing.assert_allclose(out.amplitudes, q.components(), atol=1e-14)

    def test_two_clones_of_zero(self):
        out = build_gm_basis(2, 0)
        expected = _state(
            3,
            {"001": math.sqrt(2 / 3), "010": -INV_SQRT6, "100": -INV_SQRT6},
        )
        np.testing.assert_allclose(out.amplitudes, expected.amplitudes, atol=1e-14)

    def test_two_clones_of_one(self):
        out = build_gm_basis(2, 1)
        expected = _state(
            3,
            {"110": math.sqrt(2 / 3), "101": -INV_SQRT6, "011": -INV_SQRT6},
        )
        np.testing.assert_allclose(out.amplitudes, expected.amplitudes, atol=1e-14)

    @pytest.mark.parametrize("M", range(1, 7))
    def test_normalized(self, M, rng):
        q = equatorial_qubit(rng.uniform(0, 2 * np.pi))
        assert abs(build_gm(GMParameters(M, q)).norm() - 1.0) < 1e-10

    def test_rejects_bad_clone_count(self):
        with pytest.raises(DomainError):
            GMParameters(0, Qubit(1, 0))

    @pytest.mark.parametrize("M", range(1, 7))
    def test_permutation_symmetry_within_sectors(self, M, rng):
        # any transposition of two clone positions or two anticlone
        # positions leaves the state invariant
        n = 2 * M - 1
        for _ in range(3):
            q = equatorial_qubit(rng.uniform(0, 2 * np.pi))
            tensor = build_gm(GMParameters(M, q)).amplitudes.reshape((2,) * n)
            if M >= 2:
                i, j = rng.choice(M, size=2, replace=False)
                axes = list(range(n))
                axes[i], axes[j] = axes[j], axes[i]
                np.testing.assert_allclose(
                    tensor, tensor.transpose(axes), atol=1e-12
                )
            if M >= 3:
                i, j = rng.choice(np.arange(M, n), size=2, replace=False)
                axes = list(range(n))
                axes[i], axes[j] = axes[j], axes[i]
                np.testing.assert_allclose(
                    tensor, tensor.transpose(axes), atol=1e-12
                )


class TestBuildGMBasis:
    def test_supports_m2(self):
        support0 = {
            format(i, "03b")
            for i in np.nonzero(np.abs(build_gm_basis(2, 0).amplitudes) > 1e-13)[0]
        }
        support1 = {
            format(i, "03b")
            for i in np.nonzero(np.abs(build_gm_basis(2, 1).amplitudes) > 1e-13)[0]
        }
        assert support0 == {"001", "010", "100"}
        assert support1 == {"110", "101", "011"}

    def test_single_clone_basis(self):
        np.testing.assert_allclose(
            build_gm_basis(1, 0).amplitudes, [1.0, 0.0], atol=1e-15
        )

    @pytest.mark.parametrize("M", range(1, 11))
    def test_popcounts_and_disjoint_supports(self, M):
        n = 2 * M - 1
        support0 = np.nonzero(np.abs(build_gm_basis(M, 0).amplitudes) > 1e-13)[0]
        support1 = np.nonzero(np.abs(build_gm_basis(M, 1).amplitudes) > 1e-13)[0]
        assert all(bin(i).count("1") == M - 1 for i in support0)
        assert all(bin(i).count("1") == M for i in support1)
        assert not set(support0) & set(support1)

    @pytest.mark.parametrize("M", range(1, 11))
    def test_coefficient_degeneracy_structure(self, M):
        # One magnitude per j-sector, gamma_j / sqrt(multiplicity); sectors
        # can collide (at M=3, j=1 and j=2 share 1/sqrt(18)), so the number
        # of distinct magnitudes is at most M, not exactly M.
        amps = build_gm_basis(M, 0).amplitudes
        support = np.nonzero(np.abs(amps) > 1e-13)[0]
        for idx in support:
            j = bin(idx >> (M - 1)).count("1")  # ones in the clone sector
            predicted = gamma(M, j) / math.sqrt(
                math.comb(M, j) * math.comb(M - 1, j)
            )
            assert abs(abs(amps[idx]) - predicted) < 1e-13
        distinct = np.unique(np.round(np.abs(amps[support]), 12))
        assert len(distinct) <= M

    def test_rejects_bad_bit(self):
        with pytest.raises(DomainError):
            build_gm_basis(2, 2)


class TestExpandOracle:
    def test_single_clone_equatorial(self):
        out = expand_gm_decomposed(1, make_qubit(INV_SQRT2, INV_SQRT2))
        np.testing.assert_allclose(
            out.amplitudes, [INV_SQRT2, INV_SQRT2], atol=1e-14
        )

    def test_basis_input_matches_builder(self):
        out = expand_gm_decomposed(2, Qubit(1, 0))
        np.testing.assert_allclose(
            out.amplitudes, build_gm_basis(2, 0).amplitudes, atol=1e-14
        )

    def test_equatorial_matches_builder(self):
        q = make_qubit(INV_SQRT2, INV_SQRT2)
        a = build_gm(GMParameters(2, q))
        b = expand_gm_decomposed(2, q)
        assert abs(abs(a.overlap(b)) - 1.0) < 1e-10

    @pytest.mark.parametrize("M", range(1, 6))
    def test_route_equivalence_random_equatorial(self, M, rng):
        for _ in range(10):
            q = equatorial_qubit(rng.uniform(0, 2 * np.pi))
            a = build_gm(GMParameters(M, q))
            b = expand_gm_decomposed(M, q)
            assert abs(abs(a.overlap(b)) - 1.0) < 1e-10
