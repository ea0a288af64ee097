"""Four-dimensional pentagrams: separable and maximally entangled classes.

Two-qubit pentagram vectors can be chosen separable (concurrence 0) or
real in the magic basis (maximally entangled, concurrence 1).  Regular
means all five non-orthogonal overlap moduli coincide.  The separable
regular pentagram is unique with spectrum near (2.148, 1.470, 1.240,
0.142); the entangled ones come in two classes, the embedded 3D regular
pentagram (sqrt(5), 1.382, 1.382, 0) and a doubly-wound configuration
with spectrum (1.809, 1.809, 0.691, 0.691) that never violates the
classical bound.  Solutions are found by multi-start least squares on
the orthogonality and regularity residuals.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .errors import NotApplicableError, SearchFailedError, ValidationError
from .magic import concurrence_two_qubit, from_magic_basis
from .orthograph import OrthogonalityGraph, induced_pentagons
from .pentagram3 import Pentagram
from .spectral import HermitianOperator, Spectrum, StateVector, eigensystem

SEPARABLE_REGULAR_SPECTRUM = (2.148, 1.470, 1.240, 0.142)
ENTANGLED_REGULAR_SPECTRA = (
    (2.236, 1.382, 1.382, 0.0),
    (1.809, 1.809, 0.691, 0.691),
)

RESIDUAL_COST_TOL = 1e-18
DEFAULT_RESTART_BUDGET = 100


@dataclass(frozen=True)
class Pentagram4Class:
    """A classified dimension-4 pentagram with its spectrum."""

    kind: str
    pentagram: Pentagram
    spectrum: Spectrum

    def __post_init__(self):
        if self.kind not in ("separable", "maximally-entangled"):
            raise ValidationError(f"unknown pentagram class {self.kind!r}")
        tol = 1e-8
        for vec in self.pentagram.vectors:
            c = concurrence_two_qubit(vec)
            if self.kind == "separable" and c > tol:
                raise ValidationError(f"separable class holds a vector with concurrence {c!r}")
            if self.kind == "maximally-entangled" and c < 1.0 - tol:
                raise ValidationError(f"entangled class holds a vector with concurrence {c!r}")


def _pentagram_from_columns(columns) -> Pentagram:
    return Pentagram(tuple(StateVector.normalized(c) for c in columns))


def _regularity_residuals(vectors) -> list[float]:
    overlaps = [abs(np.vdot(vectors[k], vectors[(k + 1) % 5])) ** 2 for k in range(5)]
    mean = float(np.mean(overlaps))
    return [p - mean for p in overlaps]


def _separable_vectors(x: np.ndarray) -> list[np.ndarray]:
    out = []
    for k in range(5):
        ta, pa, tb, pb = x[4 * k : 4 * k + 4]
        alice = np.array([np.cos(ta), np.sin(ta) * np.exp(1j * pa)])
        bob = np.array([np.cos(tb), np.sin(tb) * np.exp(1j * pb)])
        out.append(np.kron(alice, bob))
    return out


def _separable_residuals(x: np.ndarray) -> np.ndarray:
    vectors = _separable_vectors(x)
    residuals = []
    for k in range(5):
        overlap = np.vdot(vectors[k], vectors[(k + 2) % 5])
        residuals += [overlap.real, overlap.imag]
    residuals += _regularity_residuals(vectors)
    return np.asarray(residuals)


def separable_regular(seed: int = 4, restarts: int = DEFAULT_RESTART_BUDGET) -> Pentagram4Class:
    """Find the unique regular pentagram made of product vectors.

    Each vector is a product of two qubit states with a free phase per
    factor; a trust-region least-squares solve drives the orthogonality
    and regularity residuals to zero.  Raises SearchFailedError when the
    restart budget is exhausted (a regression signal, the basin is large).
    """
    rng = np.random.Generator(np.random.Philox(key=int(seed) & (2 ** 64 - 1)))
    for _ in range(restarts):
        start = rng.uniform(0.0, np.pi, size=20)
        result = optimize.least_squares(
            _separable_residuals, start, method="trf", xtol=1e-15, ftol=1e-15, gtol=1e-15
        )
        if result.cost < RESIDUAL_COST_TOL:
            pentagram = _pentagram_from_columns(_separable_vectors(result.x))
            spectrum, _ = eigensystem(pentagram.operator)
            return Pentagram4Class("separable", pentagram, spectrum)
    raise SearchFailedError(f"no separable regular pentagram in {restarts} restarts")


def _entangled_residuals(x: np.ndarray) -> np.ndarray:
    vectors = x.reshape(5, 4)
    residuals = [float(vectors[k] @ vectors[k]) - 1.0 for k in range(5)]
    residuals += [float(vectors[k] @ vectors[(k + 2) % 5]) for k in range(5)]
    residuals += _regularity_residuals(vectors)
    return np.asarray(residuals)


def entangled_regular(
    seed: int = 9, restarts: int = DEFAULT_RESTART_BUDGET
) -> tuple[Pentagram4Class, Pentagram4Class]:
    """Find both regular pentagrams with real magic-basis vectors.

    Real vectors in the magic basis are the maximally entangled states,
    so the search runs over real unit 4-vectors.  Solutions are bucketed
    by spectrum; the search stops once both known classes appear.  The
    pentagram vectors are returned in product-basis coordinates.
    """
    rng = np.random.Generator(np.random.Philox(key=int(seed) & (2 ** 64 - 1)))
    found: dict[int, Pentagram4Class] = {}
    for _ in range(restarts):
        start = rng.normal(size=20)
        result = optimize.least_squares(
            _entangled_residuals, start, method="trf", xtol=1e-15, ftol=1e-15, gtol=1e-15
        )
        if result.cost >= RESIDUAL_COST_TOL:
            continue
        real_vectors = result.x.reshape(5, 4)
        real_vectors /= np.linalg.norm(real_vectors, axis=1, keepdims=True)
        columns = [from_magic_basis(row).amplitudes for row in real_vectors]
        pentagram = _pentagram_from_columns(columns)
        spectrum, _ = eigensystem(pentagram.operator)
        for which, target in enumerate(ENTANGLED_REGULAR_SPECTRA):
            if which not in found and np.max(
                np.abs(np.array(spectrum.eigenvalues) - np.array(target))
            ) < 5e-3:
                found[which] = Pentagram4Class("maximally-entangled", pentagram, spectrum)
        if len(found) == 2:
            return found[0], found[1]
    raise SearchFailedError(
        f"found {len(found)} of 2 entangled regular classes in {restarts} restarts"
    )


def cabello_pentagon_spectra(graph: OrthogonalityGraph | None = None):
    """Spectra of the pentagram operators of every induced pentagon.

    Defaults to the 18-ray set.  Returns a list of (node subset,
    Spectrum), in the lexicographic order of the subsets.
    """
    if graph is None:
        from .orthograph import cabello18

        graph = cabello18()
    if graph.realization is None:
        raise ValidationError("pentagon spectra need a realized graph")
    results = []
    for subset in induced_pentagons(graph):
        operator = HermitianOperator.from_projectors(
            [graph.realization[i] for i in subset]
        )
        results.append((subset, eigensystem(operator)[0]))
    return results


def haar_states(rng: np.random.Generator, count: int, dim: int) -> np.ndarray:
    """Haar-uniform unit vectors as rows, via normalised complex normals."""
    raw = rng.normal(size=(count, dim)) + 1j * rng.normal(size=(count, dim))
    return raw / np.linalg.norm(raw, axis=1, keepdims=True)


@dataclass(frozen=True)
class ConjectureReport:
    """Empirical screening of pentagon inequalities over random states."""

    samples: int
    seed: int
    dim: int
    pentagon_count: int
    violating_fraction: float
    min_max_expectation: float
    argmin_state: StateVector
    refined_min: float
    refined_state: StateVector

    @property
    def all_states_violate(self) -> bool:
        return self.refined_min > 2.0


def conjecture_scan(
    graph: OrthogonalityGraph, samples: int, seed: int
) -> ConjectureReport:
    """Sample Haar states, track max_G <Sigma_G> over pentagon subgraphs.

    Reports the violating fraction and the smallest per-state maximum
    seen, then tightens that minimum with a local Nelder-Mead descent
    from the worst sample.  Deterministic for a given seed.  Raises
    NotApplicableError when the graph has no induced pentagon.
    """
    if graph.realization is None:
        raise ValidationError("conjecture scan needs a realized graph")
    pentagons = induced_pentagons(graph)
    if not pentagons:
        raise NotApplicableError("graph has no induced pentagon")
    dim = graph.realization[0].dim
    operators = np.stack(
        [
            sum(graph.realization[i].projector() for i in subset)
            for subset in pentagons
        ]
    )
    rng = np.random.Generator(np.random.Philox(key=int(seed) & (2 ** 64 - 1)))
    states = haar_states(rng, samples, dim)
    expectations = np.einsum("sd,pde,se->sp", states.conj(), operators, states).real
    per_state_max = expectations.max(axis=1)
    worst = int(np.argmin(per_state_max))

    def objective(x: np.ndarray) -> float:
        psi = x[:dim] + 1j * x[dim:]
        norm = np.linalg.norm(psi)
        if norm < 1e-9:
            return np.inf
        psi = psi / norm
        return float(
            np.max(np.einsum("d,pde,e->p", psi.conj(), operators, psi).real)
        )

    start = np.concatenate([states[worst].real, states[worst].imag])
    result = optimize.minimize(
        objective,
        start,
        method="Nelder-Mead",
        options={"xatol": 1e-10, "fatol": 1e-13, "maxiter": 8000},
    )
    refined = result.x[:dim] + 1j * result.x[dim:]
    refined /= np.linalg.norm(refined)
    return ConjectureReport(
        samples=int(samples),
        seed=int(seed),
        dim=int(dim),
        pentagon_count=len(pentagons),
        violating_fraction=float(np.mean(per_state_max > 2.0)),
        min_max_expectation=float(per_state_max[worst]),
        argmin_state=StateVector(states[worst]),
        refined_min=float(min(result.fun, per_state_max[worst])),
        refined_state=StateVector(refined),
    )
