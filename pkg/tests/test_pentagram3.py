import numpy as np
import pytest
from scipy import optimize

from pentaks import (
    NoViolationError,
    Pentagram,
    PentagramParams,
    SingularFamilyError,
    StateVector,
    ValidationError,
    build_family,
    closed_form_overlap_sum,
    degenerate_pentagram,
    eigensystem,
    max_eigenvalue_over_family,
    min_overlap_sum_scan,
    overlap_sum,
    regular_pentagram,
    spectrum_curve,
    violation_cone_angle,
)

GOLDEN = (1 + np.sqrt(5)) / 2
A_MIN = 2.0 - GOLDEN ** -5


def random_params(rng):
    a, b = rng.uniform(0.02, np.pi / 2 - 0.02, 2)
    mu, nu = rng.uniform(0.0, 2 * np.pi, 2)
    return PentagramParams(a, b, mu, nu)


class TestFamilyConstruction:
    def test_degenerate_member(self):
        pentagram = degenerate_pentagram()
        v0, v1 = pentagram.vectors[0], pentagram.vectors[1]
        assert abs(abs(v0.inner(v1)) - 1.0) < 1e-15
        assert abs(pentagram.overlap_sum - 2.0) < 1e-12
        assert pentagram.is_degenerate()

    def test_regular_member(self):
        pentagram = regular_pentagram()
        assert abs(pentagram.overlap_sum - A_MIN) < 1e-10
        assert pentagram.is_regular()
        assert not pentagram.is_degenerate()

    def test_random_members_satisfy_orthogonality(self):
        rng = np.random.default_rng(0)
        for _ in range(1000):
            pentagram = build_family(random_params(rng))
            for k in range(5):
                overlap = abs(pentagram.vectors[k].inner(pentagram.vectors[(k + 2) % 5]))
                assert overlap < 1e-12

    def test_singular_corner_raises(self):
        with pytest.raises(SingularFamilyError):
            build_family(PentagramParams(np.pi / 2, np.pi / 2))

    def test_param_range_validation(self):
        with pytest.raises(ValidationError):
            PentagramParams(-0.1, 0.5)
        with pytest.raises(ValidationError):
            PentagramParams(0.5, 0.5, mu=7.0)

    def test_pentagram_rejects_broken_orthogonality(self):
        good = regular_pentagram()
        vectors = list(good.vectors)
        vectors[0] = StateVector.normalized([1.0, 0.3, 0.0])
        with pytest.raises(ValidationError):
            Pentagram(tuple(vectors))


class TestOverlapSum:
    def test_matches_closed_form(self):
        rng = np.random.default_rng(1)
        for _ in range(300):
            params = random_params(rng)
            direct = overlap_sum(build_family(params))
            assert abs(direct - closed_form_overlap_sum(params.a, params.b)) < 1e-10

    def test_range(self):
        rng = np.random.default_rng(2)
        for _ in range(300):
            value = overlap_sum(build_family(random_params(rng)))
            assert A_MIN - 1e-9 <= value <= 2.0 + 1e-9

    def test_trace_identities(self):
        rng = np.random.default_rng(3)
        for _ in range(200):
            pentagram = build_family(random_params(rng))
            mat = pentagram.operator.entries
            A = pentagram.overlap_sum
            assert abs(np.trace(mat).real - 5.0) < 1e-9
            assert abs(np.trace(mat @ mat).real - (5 + 2 * A)) < 1e-8
            assert abs(np.trace(mat @ mat @ mat).real - (5 + 6 * A)) < 1e-8


class TestSpectrumCurve:
    def test_degenerate_endpoint(self):
        assert spectrum_curve(0.0) == (2.0, 2.0, 1.0)

    def test_golden_point(self):
        s = np.sqrt(GOLDEN - 1.0)
        lam0, lam_plus, lam_minus = spectrum_curve(s)
        assert abs(lam_plus - np.sqrt(5)) < 1e-12
        assert abs(lam0 - (5 - np.sqrt(5)) / 2) < 1e-12
        assert abs(lam_minus - (5 - np.sqrt(5)) / 2) < 1e-12

    def test_small_angle_expansion(self):
        eps = 0.01
        lam0, lam_plus, _ = spectrum_curve(np.sin(eps))
        assert abs(lam_plus - (2 + eps ** 2)) < 1e-6
        assert abs(lam0 - (2 - eps ** 2)) < 1e-6

    def test_matches_eigensystem(self):
        rng = np.random.default_rng(4)
        for s in rng.uniform(0.05, 0.95, 50):
            angle = float(np.arcsin(s))
            pentagram = build_family(PentagramParams(angle, angle))
            spectrum, _ = eigensystem(pentagram.operator)
            curve = np.sort(spectrum_curve(s))[::-1]
            assert np.max(np.abs(np.array(spectrum.eigenvalues) - curve)) < 1e-9

    def test_domain_check(self):
        with pytest.raises(ValidationError):
            spectrum_curve(1.5)


class TestSpectrumProperties:
    def test_spectrum_function_of_overlap_sum_alone(self):
        rng = np.random.default_rng(5)
        for _ in range(50):
            params = random_params(rng)
            first = build_family(params)
            target = first.overlap_sum
            if target > 2.0 - 1e-6:
                continue

            # find a different-looking member with the same overlap sum
            def gap(b):
                return closed_form_overlap_sum(params.a * 0.7 + 0.2, b) - target

            bracket = None
            grid = np.linspace(0.01, np.pi / 2 - 0.01, 400)
            values = [gap(b) for b in grid]
            for i in range(len(grid) - 1):
                if values[i] == 0 or values[i] * values[i + 1] < 0:
                    bracket = (grid[i], grid[i + 1])
                    break
            if bracket is None:
                continue
            solved = optimize.brentq(gap, *bracket, xtol=1e-14)
            second = build_family(
                PentagramParams(params.a * 0.7 + 0.2, solved, 0.3, 5.1)
            )
            assert abs(second.overlap_sum - target) < 1e-10
            lam1 = np.array(eigensystem(first.operator)[0].eigenvalues)
            lam2 = np.array(eigensystem(second.operator)[0].eigenvalues)
            assert np.max(np.abs(lam1 - lam2)) < 1e-8

    def test_minimum_eigenvalue_at_least_one(self):
        rng = np.random.default_rng(6)
        for _ in range(300):
            pentagram = build_family(random_params(rng))
            spectrum, _ = eigensystem(pentagram.operator)
            assert spectrum.min >= 1.0 - 1e-9


class TestScans:
    def test_min_overlap_sum(self):
        params, value = min_overlap_sum_scan(128)
        assert abs(value - A_MIN) < 1e-9
        assert abs(np.sin(params.a) ** 2 - (GOLDEN - 1)) < 1e-3
        assert abs(np.sin(params.b) ** 2 - (GOLDEN - 1)) < 1e-3

    def test_max_eigenvalue_full_family(self):
        params, value = max_eigenvalue_over_family(24)
        assert abs(value - np.sqrt(5)) < 1e-6
        assert abs(np.sin(params.a) ** 2 - (GOLDEN - 1)) < 1e-3
        assert abs(np.sin(params.b) ** 2 - (GOLDEN - 1)) < 1e-3
        assert abs(build_family(params).overlap_sum - A_MIN) < 1e-6

    def test_symmetric_restriction_reaches_same_maximum(self):
        _, full = max_eigenvalue_over_family(16)
        _, restricted = max_eigenvalue_over_family(256, symmetric_only=True)
        assert abs(full - restricted) < 1e-6
        assert abs(restricted - np.sqrt(5)) < 1e-6


class TestViolationCone:
    def test_regular_cone_angle(self):
        # independent root solve of lmax cos^2 + lmin sin^2 = 2
        lam_max, lam_min = np.sqrt(5), (5 - np.sqrt(5)) / 2

        def boundary(theta):
            return (
                lam_max * np.cos(theta) ** 2 + lam_min * np.sin(theta) ** 2 - 2.0
            )

        expected = np.degrees(optimize.brentq(boundary, 0.0, np.pi / 2, xtol=1e-14))
        computed = violation_cone_angle(regular_pentagram())
        assert abs(computed - expected) < 1e-9
        # the printed figure truncates the exact 31.717... downward
        assert int(computed) == 31

    def test_degenerate_has_no_cone(self):
        with pytest.raises(NoViolationError):
            violation_cone_angle(degenerate_pentagram())

    def test_pentagram_nodes_do_not_violate(self):
        pentagram = regular_pentagram()
        mean_overlap = pentagram.overlap_sum / 5.0
        for vector in pentagram.vectors:
            expectation = pentagram.operator.expectation(vector)
            assert expectation < 2.0
            # <k|Sigma|k> = 1 + 2p for a regular pentagram, p = PHI^-2
            assert abs(expectation - (1.0 + 2.0 * mean_overlap)) < 1e-10
            assert abs(expectation - (1.0 + 2.0 * GOLDEN ** -2)) < 1e-10
