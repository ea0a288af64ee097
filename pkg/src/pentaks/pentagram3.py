"""The three-dimensional pentagram family.

A pentagram is five unit vectors with <k|k+2> = 0 cyclically; its operator
is the sum of the five rank-1 projectors.  Every 3D pentagram is unitarily
equivalent to a member of a four-angle family, and its spectrum is fixed
by a single scalar: the neighbour overlap sum

    A = sum_k |<k|k+1>|^2
      = 2 - sin^2(a) sin^2(b) cos^2(a) cos^2(b) / (1 - sin^2(a) sin^2(b)),

whose eigenvalues solve the characteristic cubic

    x^3 - 5 x^2 + (10 - A) x + 3A - 10 = 0.

A ranges over [2 - 1/PHI^5, 2]: the lower end is the regular pentagram
(sin^2 a = sin^2 b = PHI - 1, largest eigenvalue sqrt(5)), the upper end
the degenerate pentagrams with spectrum (2, 2, 1) that never violate the
classical bound <Sigma> <= 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy import optimize

from ._kernels import get_backend
from .errors import NoViolationError, SingularFamilyError, ValidationError
from .spectral import (
    GOLDEN_MEAN,
    HermitianOperator,
    Spectrum,
    StateVector,
    cubic_roots,
    eigensystem,
)

OVERLAP_SUM_MIN = 2.0 - GOLDEN_MEAN ** -5
OVERLAP_SUM_MAX = 2.0
REGULAR_ANGLE = float(np.arcsin(np.sqrt(GOLDEN_MEAN - 1.0)))

PENTAGRAM_ORTHOGONALITY_TOL = 1e-10
REGULARITY_TOL = 1e-8
DEGENERACY_OVERLAP_TOL = 1e-10


@dataclass(frozen=True)
class PentagramParams:
    """Four angles labelling the 3D pentagram family."""

    a: float
    b: float
    mu: float = 0.0
    nu: float = 0.0

    def __post_init__(self):
        for name in ("a", "b"):
            value = float(getattr(self, name))
            if not 0.0 <= value <= np.pi / 2 + 1e-12:
                raise ValidationError(f"angle {name}={value!r} outside [0, pi/2]")
            object.__setattr__(self, name, value)
        for name in ("mu", "nu"):
            value = float(getattr(self, name))
            if not 0.0 <= value < 2.0 * np.pi + 1e-12:
                raise ValidationError(f"phase {name}={value!r} outside [0, 2*pi)")
            object.__setattr__(self, name, value)

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.a, self.b, self.mu, self.nu)


@dataclass(frozen=True)
class Pentagram:
    """Five unit vectors with <k|k+2> = 0 (indices mod 5)."""

    vectors: tuple[StateVector, ...]
    params: PentagramParams | None = None

    def __post_init__(self):
        vectors = tuple(self.vectors)
        if len(vectors) != 5:
            raise ValidationError("a pentagram is made of exactly five vectors")
        dims = {v.dim for v in vectors}
        if len(dims) != 1:
            raise ValidationError("pentagram vectors must share one dimension")
        for k in range(5):
            overlap = abs(vectors[k].inner(vectors[(k + 2) % 5]))
            if overlap > PENTAGRAM_ORTHOGONALITY_TOL:
                raise ValidationError(
                    f"pentagram orthogonality <{k}|{(k + 2) % 5}> = {overlap:.3e} exceeds tolerance"
                )
        object.__setattr__(self, "vectors", vectors)

    @property
    def dim(self) -> int:
        return self.vectors[0].dim

    @cached_property
    def operator(self) -> HermitianOperator:
        """The pentagram operator: sum of the five projectors."""
        return HermitianOperator.from_projectors(self.vectors)

    @cached_property
    def neighbour_overlaps(self) -> tuple[float, ...]:
        """The five moduli-squared |<k|k+1>|^2."""
        return tuple(
            float(abs(self.vectors[k].inner(self.vectors[(k + 1) % 5])) ** 2)
            for k in range(5)
        )

    @cached_property
    def overlap_sum(self) -> float:
        return float(sum(self.neighbour_overlaps))

    def spectrum(self) -> Spectrum:
        return eigensystem(self.operator)[0]

    def is_regular(self, tol: float = REGULARITY_TOL) -> bool:
        """All five non-orthogonal overlap moduli agree within tol."""
        moduli = [np.sqrt(p) for p in self.neighbour_overlaps]
        return max(moduli) - min(moduli) <= tol

    def is_degenerate(self, tol: float = DEGENERACY_OVERLAP_TOL) -> bool:
        """Two projectors coincide: some non-orthogonal |<j|k>| > 1 - tol."""
        for j in range(5):
            for k in (j + 1, j + 4):
                if abs(self.vectors[j].inner(self.vectors[k % 5])) > 1.0 - tol:
                    return True
        return False


def build_family(params: PentagramParams) -> Pentagram:
    """Construct the family pentagram for the given four angles.

    The five column vectors are, with s_a = sin a etc. and
    D = sqrt(1 - s_a^2 s_b^2):

        |0> = (1, 0, 0)
        |1> = (cos a, 0, e^{i mu} sin a)
        |2> = (0, cos b, e^{i nu} sin b)
        |3> = (0, 1, 0)
        |4> = (e^{-i mu} s_a c_b, e^{-i nu} c_a s_b, -c_a c_b) / D
    """
    if not isinstance(params, PentagramParams):
        params = PentagramParams(*params)
    a, b, mu, nu = params.as_tuple()
    sa, ca = np.sin(a), np.cos(a)
    sb, cb = np.sin(b), np.cos(b)
    denom = 1.0 - (sa * sb) ** 2
    if denom <= 1e-12:
        raise SingularFamilyError(
            f"family is singular at sin^2(a) sin^2(b) = {1 - denom!r}"
        )
    root = np.sqrt(denom)
    vectors = (
        StateVector([1.0, 0.0, 0.0]),
        StateVector([ca, 0.0, np.exp(1j * mu) * sa]),
        StateVector([0.0, cb, np.exp(1j * nu) * sb]),
        StateVector([0.0, 1.0, 0.0]),
        StateVector(
            np.array([np.exp(-1j * mu) * sa * cb, np.exp(-1j * nu) * ca * sb, -ca * cb])
            / root
        ),
    )
    return Pentagram(vectors, params=params)


def overlap_sum(pentagram: Pentagram) -> float:
    """Direct neighbour overlap sum A = sum_k |<k|k+1>|^2.

    For 3D pentagrams the result always lies in [2 - 1/PHI^5, 2].
    """
    total = pentagram.overlap_sum
    if pentagram.dim == 3 and not (
        OVERLAP_SUM_MIN - 1e-9 <= total <= OVERLAP_SUM_MAX + 1e-9
    ):
        raise ValidationError(f"overlap sum {total!r} outside the 3D pentagram range")
    return total


def closed_form_overlap_sum(a: float, b: float) -> float:
    """A(a, b) in closed form; the phases mu, nu drop out of the moduli."""
    sa2 = np.sin(a) ** 2
    sb2 = np.sin(b) ** 2
    denom = 1.0 - sa2 * sb2
    if denom <= 1e-14:
        return 2.0
    return float(2.0 - sa2 * sb2 * (1.0 - sa2) * (1.0 - sb2) / denom)


def characteristic_cubic(overlap_sum_value: float) -> tuple[float, float, float]:
    """Monic cubic coefficients (c2, c1, c0) satisfied by the spectrum."""
    A = float(overlap_sum_value)
    return (-5.0, 10.0 - A, 3.0 * A - 10.0)


def spectrum_from_overlap_sum(overlap_sum_value: float) -> Spectrum:
    """Descending pentagram spectrum from the overlap sum alone."""
    return Spectrum(cubic_roots(characteristic_cubic(overlap_sum_value)), 3)


def spectrum_curve(s: float) -> tuple[float, float, float]:
    """Eigenvalues (lambda_0, lambda_+, lambda_-) of the real symmetric
    pentagram with sin a = sin b = s, as explicit functions of s:

        lambda_0   = 2 - s^2
        lambda_+/- = (3 + s^2)/2 +/- sqrt((1 + 3s^2 - 5s^4 + s^6)/(1 + s^2))/2
    """
    if not 0.0 <= s <= 1.0:
        raise ValidationError(f"curve parameter s={s!r} outside [0, 1]")
    s2 = s * s
    lam0 = 2.0 - s2
    radical = np.sqrt((1.0 + 3.0 * s2 - 5.0 * s2 ** 2 + s2 ** 3) / (1.0 + s2))
    lam_plus = (3.0 + s2) / 2.0 + radical / 2.0
    lam_minus = (3.0 + s2) / 2.0 - radical / 2.0
    return (float(lam0), float(lam_plus), float(lam_minus))


def _grid_axes(points: int) -> tuple[np.ndarray, np.ndarray]:
    angles = np.linspace(0.0, np.pi / 2, points)
    phases = np.linspace(0.0, 2.0 * np.pi, points, endpoint=False)
    return angles, phases


def _family_lambda_max_exact(x: np.ndarray) -> float:
    """Largest eigenvalue through the full construction; -inf off-domain."""
    a, b, mu, nu = x
    if not (0.0 <= a <= np.pi / 2 and 0.0 <= b <= np.pi / 2):
        return -np.inf
    try:
        pentagram = build_family(PentagramParams(a, b, mu % (2 * np.pi), nu % (2 * np.pi)))
    except (ValidationError, SingularFamilyError):
        return -np.inf
    return pentagram.spectrum().max


def max_eigenvalue_over_family(
    grid: int = 64,
    refine: bool = True,
    symmetric_only: bool = False,
    backend: str | None = None,
) -> tuple[PentagramParams, float]:
    """Global maximum of the largest eigenvalue over the family.

    Coarse scan (``grid`` points per angle, full four-angle grid unless
    ``symmetric_only`` restricts to mu = nu = 0, a = b) followed by
    Nelder-Mead refinement through the exact construction.  Ties on the
    grid resolve to the lexicographically smallest parameter tuple.
    """
    kernel = get_backend(backend)
    angles, phases = _grid_axes(grid)

    if symmetric_only:
        A_vals, lams = kernel.family_spectra(
            angles, angles, np.zeros_like(angles), np.zeros_like(angles)
        )
        best = int(np.argmax(lams[:, 0]))
        best_params = PentagramParams(angles[best], angles[best], 0.0, 0.0)
        best_value = float(lams[best, 0])
    else:
        best_value = -np.inf
        best_index = None
        chunk = max(1, 2 ** 22 // 8)
        shape = (grid, grid, grid, grid)
        total = grid ** 4
        for start in range(0, total, chunk):
            idx = np.arange(start, min(start + chunk, total))
            ia, ib, imu, inu = np.unravel_index(idx, shape)
            A_vals, lams = kernel.family_spectra(
                angles[ia], angles[ib], phases[imu], phases[inu]
            )
            local = int(np.argmax(lams[:, 0]))
            if lams[local, 0] > best_value:
                best_value = float(lams[local, 0])
                best_index = idx[local]
        ia, ib, imu, inu = np.unravel_index(best_index, shape)
        best_params = PentagramParams(angles[ia], angles[ib], phases[imu], phases[inu])

    if refine:
        result = optimize.minimize(
            lambda x: -_family_lambda_max_exact(x),
            np.array(best_params.as_tuple()),
            method="Nelder-Mead",
            options={"xatol": 1e-10, "fatol": 1e-13, "maxiter": 4000},
        )
        a, b, mu, nu = result.x
        best_params = PentagramParams(
            min(max(a, 0.0), np.pi / 2),
            min(max(b, 0.0), np.pi / 2),
            mu % (2 * np.pi),
            nu % (2 * np.pi),
        )
        best_value = float(-result.fun)
    return best_params, best_value


def min_overlap_sum_scan(
    grid: int = 256, refine: bool = True, backend: str | None = None
) -> tuple[PentagramParams, float]:
    """Minimum of A over the real family (mu = nu = 0) on a grid x grid
    scan of (a, b) plus Nelder-Mead refinement of the direct overlap sum."""
    kernel = get_backend(backend)
    angles, _ = _grid_axes(grid)
    aa, bb = np.meshgrid(angles, angles, indexing="ij")
    flat_a, flat_b = aa.ravel(), bb.ravel()
    A_vals, _ = kernel.family_spectra(
        flat_a, flat_b, np.zeros_like(flat_a), np.zeros_like(flat_a)
    )
    best = int(np.argmin(A_vals))
    params = PentagramParams(flat_a[best], flat_b[best], 0.0, 0.0)
    best_value = float(A_vals[best])

    if refine:

        def objective(x):
            a, b = x
            if not (0.0 < a < np.pi / 2 and 0.0 < b < np.pi / 2):
                return np.inf
            return build_family(PentagramParams(a, b)).overlap_sum

        result = optimize.minimize(
            objective,
            np.array([params.a, params.b]),
            method="Nelder-Mead",
            options={"xatol": 1e-10, "fatol": 1e-14, "maxiter": 2000},
        )
        params = PentagramParams(result.x[0], result.x[1], 0.0, 0.0)
        best_value = float(result.fun)
    return params, best_value


def violation_cone_angle(pentagram: Pentagram) -> float:
    """Half-angle (degrees) of the cone of guaranteed violation.

    Every real unit vector within this angle of the top eigenvector has
    expectation above the classical bound 2.  The boundary solves

        lambda_max cos^2(theta) + lambda_min sin^2(theta) = 2,

    lambda_min being the worst direction orthogonal to the top
    eigenvector.  Raises NoViolationError when lambda_max <= 2.
    """
    spectrum = pentagram.spectrum()
    lam_max, lam_min = spectrum.max, spectrum.min
    if lam_max <= 2.0 + 1e-12:
        raise NoViolationError(
            f"largest eigenvalue {lam_max!r} does not exceed the classical bound"
        )
    cos2 = (2.0 - lam_min) / (lam_max - lam_min)
    return float(np.degrees(np.arccos(np.sqrt(cos2))))


def regular_pentagram() -> Pentagram:
    """The golden-ratio cone configuration: sin^2 a = sin^2 b = PHI - 1."""
    return build_family(PentagramParams(REGULAR_ANGLE, REGULAR_ANGLE))


def degenerate_pentagram() -> Pentagram:
    """The a = b = 0 member: two coincident projector pairs, spectrum (2,2,1)."""
    return build_family(PentagramParams(0.0, 0.0))
