"""Vectors, Hermitian operators and exact small-dimension spectral tools.

Everything here is specialised to complex dimensions 3 and 4: unit state
vectors, Hermitian operators built from rank-1 projectors, descending real
spectra, closed-form cubic root extraction and the 3D orthogonal
complement.  All values are immutable after construction and all functions
are pure, so they are safe to share between threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DegeneracyError, DomainError, ValidationError

NORM_TOL = 1e-12
HERMITICITY_TOL = 1e-12
ORTHOGONALITY_TOL = 1e-10
PHASE_TOL = 1e-8
DEGENERACY_TOL = 1e-9

GOLDEN_MEAN = (1.0 + np.sqrt(5.0)) / 2.0


def _as_vector(values, dims=(3, 4)) -> np.ndarray:
    vec = np.asarray(values, dtype=complex).reshape(-1)
    if vec.size not in dims:
        raise ValidationError(f"vector dimension must be one of {dims}, got {vec.size}")
    return vec


def fix_phase(vec: np.ndarray) -> np.ndarray:
    """Multiply by a global phase so the first component with modulus
    above PHASE_TOL becomes real positive.  Makes rays reproducible."""
    for component in vec:
        if abs(component) > PHASE_TOL:
            return vec * (component.conjugate() / abs(component))
    return vec


@dataclass(frozen=True)
class StateVector:
    """Unit-norm complex vector of dimension 3 or 4."""

    amplitudes: np.ndarray

    def __init__(self, amplitudes):
        vec = _as_vector(amplitudes)
        norm = np.linalg.norm(vec)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValidationError(f"state vector norm {norm!r} differs from 1 by more than {NORM_TOL}")
        vec.setflags(write=False)
        object.__setattr__(self, "amplitudes", vec)

    @classmethod
    def normalized(cls, values) -> "StateVector":
        """Build a StateVector from any nonzero vector by rescaling."""
        vec = _as_vector(values)
        norm = np.linalg.norm(vec)
        if norm < 1e-14:
            raise ValidationError("cannot normalise the zero vector")
        return cls(vec / norm)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def inner(self, other: "StateVector | np.ndarray") -> complex:
        """Hermitian inner product <self|other>."""
        other_vec = other.amplitudes if isinstance(other, StateVector) else np.asarray(other)
        return complex(np.vdot(self.amplitudes, other_vec))

    def projector(self) -> np.ndarray:
        """Rank-1 projector |v><v| as a plain array."""
        return np.outer(self.amplitudes, self.amplitudes.conj())


@dataclass(frozen=True)
class HermitianOperator:
    """Dense Hermitian matrix of dimension 3 or 4."""

    entries: np.ndarray

    def __init__(self, entries):
        mat = np.asarray(entries, dtype=complex)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValidationError(f"operator must be square, got shape {mat.shape}")
        if mat.shape[0] not in (3, 4):
            raise ValidationError(f"operator dimension must be 3 or 4, got {mat.shape[0]}")
        if np.max(np.abs(mat - mat.conj().T)) > HERMITICITY_TOL:
            raise ValidationError("operator is not Hermitian within 1e-12")
        mat.setflags(write=False)
        object.__setattr__(self, "entries", mat)

    @classmethod
    def from_projectors(cls, vectors) -> "HermitianOperator":
        """Sum of rank-1 projectors onto the given unit vectors."""
        mats = [np.outer(v.amplitudes, v.amplitudes.conj()) if isinstance(v, StateVector)
                else np.outer(np.asarray(v), np.asarray(v).conj()) for v in vectors]
        return cls(sum(mats))

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def trace(self) -> float:
        return float(np.trace(self.entries).real)

    def expectation(self, state: StateVector | np.ndarray) -> float:
        """Real quadratic form <psi|op|psi>."""
        vec = state.amplitudes if isinstance(state, StateVector) else np.asarray(state)
        return float(np.real(np.vdot(vec, self.entries @ vec)))


@dataclass(frozen=True)
class Spectrum:
    """Descending real eigenvalue list of a Hermitian operator."""

    eigenvalues: tuple[float, ...]
    dim: int = field(default=0)

    def __post_init__(self):
        vals = tuple(float(v) for v in self.eigenvalues)
        dim = self.dim or len(vals)
        if len(vals) != dim:
            raise ValidationError("spectrum length must equal the dimension")
        if any(vals[i] < vals[i + 1] - 1e-12 for i in range(len(vals) - 1)):
            raise ValidationError("eigenvalues must be in descending order")
        object.__setattr__(self, "eigenvalues", vals)
        object.__setattr__(self, "dim", dim)

    @property
    def max(self) -> float:
        return self.eigenvalues[0]

    @property
    def min(self) -> float:
        return self.eigenvalues[-1]

    def sum(self) -> float:
        return float(sum(self.eigenvalues))


def eigensystem(op: HermitianOperator | np.ndarray) -> tuple[Spectrum, list[np.ndarray]]:
    """Full eigendecomposition with descending eigenvalues.

    Returns the spectrum together with the matching orthonormal
    eigenvectors.  Each eigenvector carries the deterministic phase
    convention of fix_phase; inside a degenerate block any orthonormal
    basis may be returned.
    """
    if not isinstance(op, HermitianOperator):
        op = HermitianOperator(op)
    values, columns = np.linalg.eigh(op.entries)
    order = np.argsort(values)[::-1]
    values = values[order]
    vectors = [fix_phase(columns[:, i].copy()) for i in order]
    return Spectrum(tuple(values), op.dim), vectors


def cubic_roots(coefficients) -> tuple[float, float, float]:
    """Real roots of the monic cubic x^3 + c2 x^2 + c1 x + c0, descending.

    Uses the trigonometric form of Cardano's method, which is exact for
    the three-real-root regime the pentagram characteristic polynomial
    lives in.  Raises DomainError when the discriminant shows genuinely
    complex roots.
    """
    c2, c1, c0 = (float(c) for c in coefficients)
    # depressed form t^3 + p t + q with x = t - c2/3
    shift = -c2 / 3.0
    p = c1 - c2 * c2 / 3.0
    q = 2.0 * c2 ** 3 / 27.0 - c2 * c1 / 3.0 + c0
    discriminant = -4.0 * p ** 3 - 27.0 * q * q
    scale = max(1.0, abs(p) ** 3, q * q)
    if discriminant < -1e-12 * scale:
        raise DomainError(f"cubic has complex roots (discriminant {discriminant!r})")
    if p > -1e-14:
        # triple (or numerically fused) real root
        root = shift + np.cbrt(-q)
        return (root, root, root)
    m = 2.0 * np.sqrt(-p / 3.0)
    arg = np.clip(3.0 * q / (p * m), -1.0, 1.0)
    phi = np.arccos(arg) / 3.0
    trig = sorted((m * np.cos(phi - 2.0 * np.pi * k / 3.0) + shift for k in range(3)), reverse=True)
    # Trig roots lose half the digits near a double root.  Newton-polish
    # the isolated root (always simple, hence well conditioned), then
    # deflate: the remaining quadratic recovers the close pair exactly.
    isolated = trig[0] if trig[0] - trig[1] >= trig[1] - trig[2] else trig[2]
    for _ in range(2):
        slope = 3.0 * isolated ** 2 + 2.0 * c2 * isolated + c1
        if abs(slope) < 1e-30:
            break
        isolated -= (isolated ** 3 + c2 * isolated ** 2 + c1 * isolated + c0) / slope
    b_quad = c2 + isolated
    c_quad = c1 + isolated * b_quad
    quad_disc = max(b_quad * b_quad - 4.0 * c_quad, 0.0)
    half = np.sqrt(quad_disc) / 2.0
    roots = (isolated, -b_quad / 2.0 + half, -b_quad / 2.0 - half)
    return tuple(sorted((float(r) for r in roots), reverse=True))


def orthogonal_complement_3d(v1: StateVector | np.ndarray, v2: StateVector | np.ndarray) -> StateVector:
    """The unique ray orthogonal to two independent vectors in dimension 3.

    The result is the conjugated cross product, normalised and carrying
    the fix_phase convention.  Near-parallel inputs raise DegeneracyError;
    the squared cross-product norm equals the Hermitian Gram determinant,
    so the 1e-10 threshold matches the documented precondition.
    """
    a = v1.amplitudes if isinstance(v1, StateVector) else _as_vector(v1)
    b = v2.amplitudes if isinstance(v2, StateVector) else _as_vector(v2)
    if a.size != 3 or b.size != 3:
        raise ValidationError("orthogonal complement is defined for dimension 3 only")
    w = np.conj(np.cross(a, b))
    gram = float(np.real(np.vdot(w, w)))
    if gram <= 1e-10:
        raise DegeneracyError("input vectors are too close to parallel to define a complement")
    return StateVector(fix_phase(w / np.sqrt(gram)))
