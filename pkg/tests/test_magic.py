import numpy as np
import pytest

from pentaks import (
    StateVector,
    ValidationError,
    aligned_pentagram,
    canonical_decompose,
    concurrence,
    concurrence_two_qubit,
    eigensystem,
    from_magic_basis,
    regular_pentagram,
    tailor_pentagram,
    to_magic_basis,
)
from pentaks.magic import MAGIC_BASIS_4D

GOLDEN = (1 + np.sqrt(5)) / 2


def haar_state(rng, dim):
    raw = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return raw / np.linalg.norm(raw)


def random_su2(rng):
    raw = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    q, r = np.linalg.qr(raw)
    q = q @ np.diag(np.diag(r) / np.abs(np.diag(r)))
    return q / np.sqrt(np.linalg.det(q))


def random_so3(rng):
    q, r = np.linalg.qr(rng.normal(size=(3, 3)))
    q = q @ np.diag(np.sign(np.diag(r)))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


class TestCanonicalDecomposition:
    def test_real_vector(self):
        result = canonical_decompose(StateVector([1.0, 0.0, 0.0]))
        assert result.sigma == 0.0
        assert np.allclose(result.x, [1.0, 0.0, 0.0])

    def test_equal_weight(self):
        x0 = np.array([1.0, 0.0, 0.0])
        y0 = np.array([0.0, 1.0, 0.0])
        psi = (x0 + 1j * y0) / np.sqrt(2)
        result = canonical_decompose(StateVector(psi))
        assert abs(result.sigma - np.pi / 4) < 1e-12

    def test_coherent_state(self):
        psi = StateVector(np.array([1.0, 1.0j, 0.0]) / np.sqrt(2))
        result = canonical_decompose(psi)
        assert abs(result.sigma - np.pi / 4) < 1e-12
        assert concurrence(psi) < 1e-12

    def test_round_trip_and_frame(self):
        rng = np.random.default_rng(10)
        for _ in range(300):
            psi = haar_state(rng, 3)
            result = canonical_decompose(psi)
            assert 0.0 <= result.sigma <= np.pi / 4 + 1e-12
            assert abs(result.x @ result.x - 1.0) < 1e-10
            assert abs(result.y @ result.y - 1.0) < 1e-10
            assert abs(result.x @ result.y) < 1e-10
            fidelity = abs(np.vdot(result.reassemble(), psi))
            assert fidelity > 1.0 - 1e-12

    def test_concurrence_equals_cos_two_sigma(self):
        rng = np.random.default_rng(11)
        for _ in range(200):
            psi = haar_state(rng, 3)
            result = canonical_decompose(psi)
            assert abs(concurrence(psi) - np.cos(2 * result.sigma)) < 1e-10

    def test_rejects_unnormalised(self):
        with pytest.raises(ValidationError):
            canonical_decompose(np.array([1.0, 1.0, 0.0]))


class TestConcurrence:
    def test_real_vectors_have_full_concurrence(self):
        rng = np.random.default_rng(12)
        for _ in range(50):
            real = rng.normal(size=3)
            real /= np.linalg.norm(real)
            assert abs(concurrence(real.astype(complex)) - 1.0) < 1e-12

    def test_rotation_invariance(self):
        rng = np.random.default_rng(13)
        for _ in range(100):
            psi = haar_state(rng, 3)
            rotated = random_so3(rng) @ psi
            assert abs(concurrence(psi) - concurrence(rotated)) < 1e-10


class TestMagicBasisMap:
    def test_basis_matrix_is_unitary(self):
        gram = MAGIC_BASIS_4D.conj().T @ MAGIC_BASIS_4D
        assert np.max(np.abs(gram - np.eye(4))) < 1e-14

    def test_bell_state_maximal(self):
        bell = StateVector(np.array([1.0, 0.0, 0.0, 1.0]) / np.sqrt(2))
        assert abs(concurrence(to_magic_basis(bell)) - 1.0) < 1e-12

    def test_product_state_classical(self):
        product = StateVector([1.0, 0.0, 0.0, 0.0])
        assert concurrence(to_magic_basis(product)) < 1e-12

    def test_matches_two_qubit_concurrence(self):
        rng = np.random.default_rng(14)
        for _ in range(200):
            psi = haar_state(rng, 4)
            image = to_magic_basis(psi)
            assert abs(concurrence(image) - concurrence_two_qubit(psi)) < 1e-10

    def test_random_products_have_zero_concurrence(self):
        rng = np.random.default_rng(15)
        for _ in range(100):
            psi = np.kron(haar_state(rng, 2), haar_state(rng, 2))
            assert concurrence(to_magic_basis(psi)) < 1e-10

    def test_local_unitaries_act_orthogonally(self):
        rng = np.random.default_rng(16)
        for _ in range(50):
            local = np.kron(random_su2(rng), random_su2(rng))
            image = MAGIC_BASIS_4D.conj().T @ local @ MAGIC_BASIS_4D
            assert np.max(np.abs(image.imag)) < 1e-10
            real = image.real
            assert np.max(np.abs(real @ real.T - np.eye(4))) < 1e-10

    def test_round_trip(self):
        rng = np.random.default_rng(17)
        psi = StateVector(haar_state(rng, 4))
        back = from_magic_basis(to_magic_basis(psi))
        assert np.max(np.abs(back.amplitudes - psi.amplitudes)) < 1e-12


class TestTailoredPentagram:
    def test_coherent_state_sits_on_the_bound(self):
        psi = StateVector(np.array([1.0, 1.0j, 0.0]) / np.sqrt(2))
        result = tailor_pentagram(psi)
        assert abs(result.expectation - 2.0) < 1e-10
        assert not result.violates

    def test_real_state_with_regular_pentagram(self):
        # aligning the regular pentagram instead of the tailored one
        # drives a real state to the maximal violation sqrt(5)
        rng = np.random.default_rng(18)
        x = rng.normal(size=3)
        x /= np.linalg.norm(x)
        decomposition = canonical_decompose(x.astype(complex))
        regular_angle = float(np.arcsin(np.sqrt(GOLDEN - 1)))
        pentagram = aligned_pentagram(decomposition.x, decomposition.y, regular_angle)
        expectation = pentagram.operator.expectation(x.astype(complex))
        assert abs(expectation - np.sqrt(5)) < 1e-9
        assert abs(regular_pentagram().spectrum().max - np.sqrt(5)) < 1e-9

    def test_expectation_identity(self):
        rng = np.random.default_rng(19)
        for _ in range(200):
            psi = haar_state(rng, 3)
            result = tailor_pentagram(psi)
            spectrum, _ = eigensystem(result.pentagram.operator)
            identity = spectrum.eigenvalues[0] * np.cos(result.sigma) ** 2
            identity += spectrum.eigenvalues[1] * np.sin(result.sigma) ** 2
            assert abs(result.expectation - identity) < 1e-10

    def test_violation_iff_nonclassical(self):
        rng = np.random.default_rng(20)
        for _ in range(300):
            psi = haar_state(rng, 3)
            result = tailor_pentagram(psi)
            assert result.violates == (result.concurrence > 1e-8)
            if result.concurrence > 1e-8:
                assert result.expectation > 2.0

    def test_small_angle_expansion(self):
        rng = np.random.default_rng(21)
        for epsilon in (0.02, 0.05, 0.1):
            for _ in range(30):
                psi = haar_state(rng, 3)
                result = tailor_pentagram(psi, epsilon=epsilon)
                if result.concurrence < 2 * epsilon ** 2:
                    continue  # adaptive cap engaged, expansion not at epsilon
                predicted = 2.0 + epsilon ** 2 * result.concurrence
                assert abs(result.expectation - predicted) < 8.0 * epsilon ** 4

    def test_epsilon_range_validated(self):
        psi = StateVector([1.0, 0.0, 0.0])
        with pytest.raises(ValidationError):
            tailor_pentagram(psi, epsilon=0.5)
        with pytest.raises(ValidationError):
            tailor_pentagram(psi, epsilon=0.0)

    def test_output_is_valid_pentagram(self):
        rng = np.random.default_rng(22)
        for _ in range(20):
            result = tailor_pentagram(haar_state(rng, 3))
            vectors = result.pentagram.vectors
            for k in range(5):
                assert abs(vectors[k].inner(vectors[(k + 2) % 5])) < 1e-10
