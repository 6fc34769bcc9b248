import numpy as np
import pytest

from qlattice import hilbert as hb


def state(i, d=2):
    return hb.pure_state(hb.basis_ket(d, i))


PLUS = hb.ket([1, 1])
MINUS = hb.ket([1, -1])
PAULI_Z = np.diag([1.0, -1.0]).astype(complex)


class TestMakeDensity:
    def test_maximally_mixed(self):
        rho = hb.make_density(np.eye(2) / 2)
        assert rho.dim == 2

    def test_pure_projector(self):
        rho = hb.make_density([[1, 0], [0, 0]])
        assert hb.is_pure(rho)

    def test_negative_eigenvalue_rejected(self):
        with pytest.raises(ValueError, match="negative eigenvalue"):
            hb.make_density(np.diag([1.2, -0.2]))

    def test_non_hermitian_rejected(self):
        with pytest.raises(ValueError):
            hb.make_density([[0.5, 1], [0, 0.5]])

    def test_wrong_trace_rejected(self):
        with pytest.raises(ValueError, match="trace"):
            hb.make_density(np.eye(2))

    def test_round_off_negative_clipped(self):
        m = np.diag([1.0 + 5e-10, -5e-10])
        rho = hb.make_density(m)
        assert np.linalg.eigvalsh(rho.mat).min() >= 0


class TestBornMean:
    def test_z_on_ground_state(self):
        assert hb.born_mean(state(0), PAULI_Z) == pytest.approx(1.0, abs=1e-12)

    def test_z_on_maximally_mixed(self):
        assert hb.born_mean(hb.maximally_mixed(2), PAULI_Z) == pytest.approx(0.0, abs=1e-12)

    def test_z_on_plus(self):
        # direct 2x2 trace: |+><+| has equal diagonal, so tr(rho Z) = 0
        assert hb.born_mean(hb.pure_state(PLUS), PAULI_Z) == pytest.approx(0.0, abs=1e-12)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            hb.born_mean(hb.maximally_mixed(3), PAULI_Z)

    def test_non_selfadjoint_observable(self):
        with pytest.raises(ValueError):
            hb.born_mean(hb.maximally_mixed(2), [[0, 1], [0, 0]])


class TestPurity:
    def test_pure(self):
        assert hb.purity(state(0)) == pytest.approx(1.0, abs=1e-12)
        assert hb.is_pure(state(0))

    def test_maximally_mixed(self):
        assert hb.purity(hb.maximally_mixed(2)) == pytest.approx(0.5, abs=1e-12)
        assert not hb.is_pure(hb.maximally_mixed(2))

    def test_half_half_mixture(self):
        rho = hb.make_density(0.5 * state(0).mat + 0.5 * hb.pure_state(PLUS).mat)
        # hand oracle: tr(rho^2) = 0.75 for this mixture
        assert hb.purity(rho) == pytest.approx(0.75, abs=1e-12)
        assert not hb.is_pure(rho)


class TestSuperpose:
    def test_trivial_combination(self):
        k = hb.superpose([1, 0], [hb.basis_ket(2, 0), hb.basis_ket(2, 1)])
        assert np.allclose(k.amps, [1, 0])

    def test_plus_state(self):
        k = hb.superpose([1 / np.sqrt(2), 1 / np.sqrt(2)],
                         [hb.basis_ket(2, 0), hb.basis_ket(2, 1)])
        assert np.allclose(k.amps, PLUS.amps)

    def test_cancellation_rejected(self):
        with pytest.raises(ValueError, match="zero vector"):
            hb.superpose([1, -1], [hb.basis_ket(2, 0), hb.basis_ket(2, 0)])

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            hb.superpose([], [])


class TestTensorAndPartialTrace:
    def test_mixed_tensor_mixed(self):
        t = hb.tensor(hb.maximally_mixed(2), hb.maximally_mixed(2))
        assert t.isclose(hb.maximally_mixed(4))

    def test_product_of_basis_projectors(self):
        t = hb.tensor(state(0), state(1))
        expected = np.zeros((4, 4))
        expected[1, 1] = 1
        assert np.allclose(t.mat, expected)

    def test_purity_multiplicative(self):
        rng = np.random.default_rng(7)
        a = hb.random_density(2, rng)
        b = hb.random_density(3, rng)
        assert hb.purity(hb.tensor(a, b)) == pytest.approx(hb.purity(a) * hb.purity(b), abs=1e-10)

    def test_round_trip(self):
        rng = np.random.default_rng(11)
        for d1, d2 in [(2, 2), (2, 3), (3, 4)]:
            a, b = hb.random_density(d1, rng), hb.random_density(d2, rng)
            assert hb.partial_trace(hb.tensor(a, b), (d1, d2), 2).isclose(a)
            assert hb.partial_trace(hb.tensor(a, b), (d1, d2), 1).isclose(b)

    def test_singlet_reduces_to_mixed(self):
        singlet = hb.symmetrize(hb.basis_ket(2, 0), hb.basis_ket(2, 1), hb.FERMION)
        red = hb.partial_trace(hb.pure_state(singlet), (2, 2), 2)
        assert red.isclose(hb.maximally_mixed(2))
        assert hb.purity(red) == pytest.approx(0.5, abs=1e-12)

    def test_trace_out_first(self):
        red = hb.partial_trace(hb.maximally_mixed(4), (2, 2), 1)
        assert red.isclose(hb.maximally_mixed(2))

    def test_bad_factorization(self):
        with pytest.raises(ValueError):
            hb.partial_trace(hb.maximally_mixed(4), (3, 2), 1)


class TestPermutationOperator:
    def test_swaps_basis_tensor(self):
        p = hb.permutation_operator(2)
        v01 = np.kron(hb.basis_ket(2, 0).amps, hb.basis_ket(2, 1).amps)
        v10 = np.kron(hb.basis_ket(2, 1).amps, hb.basis_ket(2, 0).amps)
        assert np.array_equal(p @ v01, v10)

    @pytest.mark.parametrize("n", range(2, 6))
    def test_involution_exact(self, n):
        p = hb.permutation_operator(n)
        assert np.array_equal(p @ p, np.eye(n * n))

    def test_eigenvalue_multiset_n2(self):
        w = np.sort(np.linalg.eigvalsh(hb.permutation_operator(2).real))
        assert np.allclose(w, [-1, 1, 1, 1])


class TestSymmetrize:
    def test_fermionic_singlet(self):
        s = hb.symmetrize(hb.basis_ket(2, 0), hb.basis_ket(2, 1), hb.FERMION)
        assert np.allclose(s.amps, [0, 1 / np.sqrt(2), -1 / np.sqrt(2), 0])

    def test_bosonic_diagonal(self):
        s = hb.symmetrize(hb.basis_ket(2, 0), hb.basis_ket(2, 0), hb.BOSON)
        assert np.allclose(s.amps, [1, 0, 0, 0])

    def test_pauli_degenerate(self):
        with pytest.raises(ValueError, match="zero vector"):
            hb.symmetrize(hb.basis_ket(2, 0), hb.basis_ket(2, 0), hb.FERMION)

    @pytest.mark.parametrize("sign", [hb.BOSON, hb.FERMION])
    def test_lands_in_sector(self, sign):
        rng = np.random.default_rng(3)
        for _ in range(20):
            phi, psi = hb.random_ket(3, rng), hb.random_ket(3, rng)
            v = hb.symmetrize(phi, psi, sign)
            p = hb.permutation_operator(3)
            s = 1 if sign == hb.BOSON else -1
            assert np.abs(p @ v.amps - s * v.amps).max() <= 1e-9


class TestSectorSpace:
    @pytest.mark.parametrize("n", range(1, 7))
    def test_dimensions(self, n):
        assert hb.sector_space(n, hb.BOSON).sector_dim == n * (n + 1) // 2
        assert hb.sector_space(n, hb.FERMION).sector_dim == n * (n - 1) // 2

    def test_fermionic_n2_is_singlet(self):
        sec = hb.sector_space(2, hb.FERMION)
        assert sec.sector_dim == 1
        singlet = hb.symmetrize(hb.basis_ket(2, 0), hb.basis_ket(2, 1), hb.FERMION)
        assert abs(abs(sec.basis[0].amps @ singlet.amps.conj()) - 1) <= 1e-12

    def test_empty_fermionic_sector(self):
        sec = hb.sector_space(1, hb.FERMION)
        assert sec.is_empty

    @pytest.mark.parametrize("n", range(2, 6))
    def test_isometry_and_eigenvectors(self, n):
        for sign in (hb.BOSON, hb.FERMION):
            sec = hb.sector_space(n, sign)
            iso = sec.isometry
            assert np.abs(iso.conj().T @ iso - np.eye(sec.sector_dim)).max() <= 1e-12
            p = hb.permutation_operator(n)
            s = 1 if sign == hb.BOSON else -1
            for k in sec.basis:
                assert np.abs(p @ k.amps - s * k.amps).max() <= 1e-12

    @pytest.mark.parametrize("n", range(1, 7))
    def test_sector_dims_sum_to_square(self, n):
        total = (hb.sector_space(n, hb.BOSON).sector_dim
                 + hb.sector_space(n, hb.FERMION).sector_dim)
        assert total == n * n


class TestSeparability:
    def test_product_state(self):
        rng = np.random.default_rng(5)
        rho = hb.tensor(hb.random_density(2, rng), hb.random_density(2, rng))
        assert hb.is_separable_ppt(rho, (2, 2)) is hb.Separability.SEPARABLE

    def test_singlet_entangled(self):
        singlet = hb.pure_state(
            hb.symmetrize(hb.basis_ket(2, 0), hb.basis_ket(2, 1), hb.FERMION))
        assert hb.is_separable_ppt(singlet, (2, 2)) is hb.Separability.ENTANGLED
        w = np.linalg.eigvalsh(hb.partial_transpose(singlet.mat, (2, 2)))
        assert w.min() == pytest.approx(-0.5, abs=1e-12)

    def test_werner_boundary(self):
        singlet = hb.pure_state(
            hb.symmetrize(hb.basis_ket(2, 0), hb.basis_ket(2, 1), hb.FERMION))
        for p, expected in [(1 / 3 - 1e-6, hb.Separability.SEPARABLE),
                            (1 / 3 + 1e-6, hb.Separability.ENTANGLED)]:
            w = hb.make_density(p * singlet.mat + (1 - p) * np.eye(4) / 4)
            assert hb.is_separable_ppt(w, (2, 2)) is expected

    def test_large_dims_undecided(self):
        assert hb.is_separable_ppt(hb.maximally_mixed(9), (3, 3)) is hb.Separability.UNDECIDED


def test_fermionic_reduced_states_always_mixed():
    rng = np.random.default_rng(17)
    for n in range(2, 6):
        sec = hb.sector_space(n, hb.FERMION)
        for _ in range(50):
            amp = rng.standard_normal(sec.sector_dim) + 1j * rng.standard_normal(sec.sector_dim)
            amp /= np.linalg.norm(amp)
            rho = hb.make_density(np.outer(sec.isometry @ amp, (sec.isometry @ amp).conj()))
            pur = hb.purity(hb.partial_trace(rho, (n, n), 2))
            assert pur <= 0.5 + 1e-9
            assert pur < 1 - 1e-6
