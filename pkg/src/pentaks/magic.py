"""Magic-basis machinery: canonical real/imaginary splits and concurrence.

In the bases where the physically relevant rotation group acts by real
matrices (the Cartesian basis for spin 1, the Hill-Wootters magic basis
for two qubits) every state splits, up to global phase, as

    psi = cos(sigma) x + i sin(sigma) y,

with x, y real orthonormal and sigma in [0, pi/4].  The concurrence
C = |sum_k psi_k^2| = cos(2 sigma) is invariant under those rotations and
vanishes exactly on the "classical" orbit: spin coherent states in
dimension 3, separable states in dimension 4.  Real vectors have C = 1.

The tailored pentagram construction aligns a real symmetric pentagram's
top two eigenvectors with (x, y); the resulting expectation value is
lambda_1 cos^2(sigma) + lambda_2 sin^2(sigma), which exceeds the
classical bound 2 precisely when C > 0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .pentagram3 import Pentagram, PentagramParams, build_family
from .spectral import StateVector, eigensystem

DEFAULT_TAILOR_ANGLE = 0.05
COHERENCE_TOL = 1e-12

# Hill-Wootters magic basis, columns expressed in the two-qubit product
# basis |00>, |01>, |10>, |11>.
MAGIC_BASIS_4D = np.array(
    [
        [1.0, 1.0j, 0.0, 0.0],
        [0.0, 0.0, 1.0j, 1.0],
        [0.0, 0.0, 1.0j, -1.0],
        [1.0, -1.0j, 0.0, 0.0],
    ],
    dtype=complex,
) / np.sqrt(2.0)


@dataclass(frozen=True)
class CanonicalDecomposition:
    """Representative psi ~ cos(sigma) x + i sin(sigma) y of a ray."""

    x: np.ndarray
    y: np.ndarray
    sigma: float

    def reassemble(self) -> np.ndarray:
        return np.cos(self.sigma) * self.x + 1j * np.sin(self.sigma) * self.y


def _vec(state) -> np.ndarray:
    return state.amplitudes if isinstance(state, StateVector) else np.asarray(state, dtype=complex)


def concurrence(state) -> float:
    """C = |sum_k psi_k^2| for magic-basis coordinates; in [0, 1]."""
    psi = _vec(state)
    return float(abs(np.sum(psi * psi)))


def concurrence_two_qubit(state) -> float:
    """Concurrence 2|ad - bc| of a pure two-qubit state in the product basis."""
    psi = _vec(state)
    if psi.size != 4:
        raise ValidationError("two-qubit concurrence needs a dimension-4 state")
    return float(2.0 * abs(psi[0] * psi[3] - psi[1] * psi[2]))


def to_magic_basis(state) -> StateVector:
    """Coordinates of a product-basis two-qubit state in the magic basis.

    Local unitaries act on the image by real orthogonal matrices, and the
    magic-basis concurrence of the image equals 2|ad - bc| of the input.
    """
    psi = _vec(state)
    if psi.size != 4:
        raise ValidationError("the magic-basis map is defined for dimension 4")
    return StateVector(MAGIC_BASIS_4D.conj().T @ psi)


def from_magic_basis(coords) -> StateVector:
    """Inverse of to_magic_basis."""
    vec = _vec(coords)
    if vec.size != 4:
        raise ValidationError("the magic-basis map is defined for dimension 4")
    return StateVector(MAGIC_BASIS_4D @ vec)


def _orthogonal_filler(x: np.ndarray) -> np.ndarray:
    """Deterministic real unit vector orthogonal to real unit x."""
    trial = np.zeros_like(x)
    trial[int(np.argmin(np.abs(x)))] = 1.0
    trial = trial - (trial @ x) * x
    return trial / np.linalg.norm(trial)


def canonical_decompose(state) -> CanonicalDecomposition:
    """Split a unit vector as cos(sigma) x + i sin(sigma) y.

    The global phase is fixed so that sum_k psi_k^2 is real nonnegative,
    which makes x and y orthogonal with cos(sigma) = |x|, sin(sigma) = |y|.
    For sigma = 0 the imaginary direction is arbitrary and a deterministic
    orthogonal unit vector is supplied; for sigma = pi/4 any orthonormal
    pair of the spanned real plane is acceptable and the phase choice
    fixes one.  The pair sign is normalised so the first sizeable
    component of x is positive.
    """
    psi = _vec(state)
    norm = np.linalg.norm(psi)
    if abs(norm - 1.0) > 1e-10:
        raise ValidationError("canonical decomposition expects a unit vector")
    bilinear = complex(np.sum(psi * psi))
    big_c = abs(bilinear)
    phase = np.exp(-0.5j * np.angle(bilinear)) if big_c > 1e-16 else 1.0 + 0.0j
    rep = phase * psi
    x, y = rep.real.copy(), rep.imag.copy()
    sigma = 0.5 * float(np.arccos(np.clip(big_c, 0.0, 1.0)))
    x_norm, y_norm = np.linalg.norm(x), np.linalg.norm(y)
    x = x / x_norm
    if y_norm > COHERENCE_TOL:
        y = y / y_norm
    else:
        y = _orthogonal_filler(x)
    sign_source = x if abs(x[np.argmax(np.abs(x))]) > 0 else y
    if sign_source[int(np.argmax(np.abs(sign_source)))] < 0:
        x, y = -x, -y
    x.setflags(write=False)
    y.setflags(write=False)
    return CanonicalDecomposition(x=x, y=y, sigma=sigma)


def aligned_pentagram(x: np.ndarray, y: np.ndarray, angle: float) -> Pentagram:
    """Real pentagram whose top eigenvector is x and second eigenvector y.

    Rotates the real symmetric family member at a = b = angle so that its
    eigenframe lands on (x, y, x cross y).  angle = 0 yields the aligned
    degenerate pentagram with operator 2(xx^T + yy^T) + zz^T, whose
    expectation is exactly 2 on the whole real plane span(x, y).
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    z = np.cross(x, y)
    if angle == 0.0:
        columns = [x, x, y, y, -z]
        return Pentagram(tuple(StateVector(c.astype(complex)) for c in columns))
    base = build_family(PentagramParams(angle, angle, 0.0, 0.0))
    _, eigvecs = eigensystem(base.operator)
    frame = np.column_stack([v.real for v in eigvecs])
    rotation = np.column_stack([x, y, z]) @ frame.T
    return Pentagram(
        tuple(StateVector(rotation @ v.amplitudes.real) for v in base.vectors)
    )


@dataclass(frozen=True)
class TailoredPentagram:
    """Result of tailoring a pentagram inequality to one state."""

    pentagram: Pentagram
    expectation: float
    sigma: float
    concurrence: float
    violates: bool


def tailor_pentagram(state, epsilon: float = DEFAULT_TAILOR_ANGLE) -> TailoredPentagram:
    """Tailor a pentagram operator to a dimension-3 magic-basis state.

    For non-coherent states the real symmetric family pentagram at
    a = b = min(epsilon, sqrt(C/2)) is rotated so its top eigenvectors
    align with the state's canonical (x, y); the cap keeps the spectral
    gap comfortably above the state's concurrence scale so that
    <Sigma> - 2 ~ (lambda_1 - lambda_2) C / 2 stays positive.  Coherent
    states (C = 0) receive the aligned degenerate pentagram, for which
    the expectation equals the classical bound exactly.
    """
    if not 0.0 < epsilon <= 0.2:
        raise ValidationError(f"tailoring angle {epsilon!r} outside (0, 0.2]")
    psi = _vec(state)
    if psi.size != 3:
        raise ValidationError("tailored pentagrams are built for dimension 3")
    decomposition = canonical_decompose(psi)
    big_c = concurrence(psi)
    if big_c <= COHERENCE_TOL:
        pentagram = aligned_pentagram(decomposition.x, decomposition.y, 0.0)
    else:
        effective = min(epsilon, float(np.sqrt(big_c / 2.0)))
        pentagram = aligned_pentagram(decomposition.x, decomposition.y, effective)
    expectation = pentagram.operator.expectation(psi)
    return TailoredPentagram(
        pentagram=pentagram,
        expectation=expectation,
        sigma=decomposition.sigma,
        concurrence=big_c,
        violates=bool(expectation > 2.0 + 1e-12),
    )
