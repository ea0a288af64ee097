"""Paradoxes derived from the ten-node subgraph.

The probability p = |<psi_u|psi_d>|^2 of the two-pentagon subgraph obeys
<psi_d|Sigma_u|psi_d> = p + 2, where Sigma_u is the upper pentagram
operator: the two triads each resolve one unit of probability.  Its
maximum over all realizations is 1/9, reached by the box-game
configuration, which also drives the run-selection game: the preparer
can postselect exactly the runs in which the opener found the particle.
Adding a single outlier node in dimension 4 yields the Hardy graph,
where the same identity bounds the paradoxical probability by 1/PHI^5.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .errors import CollapseError, DegeneracyError, ValidationError
from .magic import concurrence_two_qubit
from .orthograph import (
    OrthogonalityGraph,
    ks_upper_pentagon_labels,
    realize_ks_subgraph,
    validate_graph,
)
from .pentagram3 import Pentagram, PentagramParams, build_family
from .spectral import GOLDEN_MEAN, HermitianOperator, StateVector

HARDY_MAX_PROBABILITY = GOLDEN_MEAN ** -5


def _upper_operator(graph: OrthogonalityGraph) -> HermitianOperator:
    return HermitianOperator.from_projectors(
        [graph.vector(label) for label in ks_upper_pentagon_labels()]
    )


def ks_probability(graph: OrthogonalityGraph) -> float:
    """p = |<psi_u|psi_d>|^2 of a realized ten-node subgraph."""
    psi_u = graph.vector("psi_u")
    psi_d = graph.vector("psi_d")
    return float(abs(psi_u.inner(psi_d)) ** 2)


def ks_identity_residual(graph: OrthogonalityGraph) -> float:
    """|<psi_d|Sigma_u|psi_d> - (p + 2)| for a realized subgraph."""
    psi_d = graph.vector("psi_d")
    expectation = _upper_operator(graph).expectation(psi_d)
    return float(abs(expectation - (ks_probability(graph) + 2.0)))


def _ks_probability_of_params(x) -> float:
    a, b, mu, nu = x
    if not (1e-6 < a < np.pi / 2 - 1e-6 and 1e-6 < b < np.pi / 2 - 1e-6):
        return -1.0
    try:
        upper = build_family(PentagramParams(a, b, mu % (2 * np.pi), nu % (2 * np.pi)))
        graph = realize_ks_subgraph(upper)
    except (ValidationError, DegeneracyError):
        return -1.0
    return ks_probability(graph)


def maximize_ks_probability(
    grid: int = 64, real_only: bool = False
) -> tuple[PentagramParams, float]:
    """Maximum of p over upper-pentagon family parameters.

    Grid scan over the real slice (mu = nu = 0) plus Nelder-Mead
    refinement; with ``real_only`` false the refinement runs over all
    four angles, confirming phases do not help.  The optimum is 1/9.
    """
    angles = np.linspace(0.02, np.pi / 2 - 0.02, grid)
    best_val, best_ab = -1.0, None
    for a in angles:
        for b in angles:
            val = _ks_probability_of_params((a, b, 0.0, 0.0))
            if val > best_val:
                best_val, best_ab = val, (a, b)
    if real_only:
        result = optimize.minimize(
            lambda x: -_ks_probability_of_params((x[0], x[1], 0.0, 0.0)),
            np.array(best_ab),
            method="Nelder-Mead",
            options={"xatol": 1e-10, "fatol": 1e-14, "maxiter": 4000},
        )
        params = PentagramParams(result.x[0], result.x[1], 0.0, 0.0)
    else:
        result = optimize.minimize(
            lambda x: -_ks_probability_of_params(x),
            np.array([best_ab[0], best_ab[1], 0.0, 0.0]),
            method="Nelder-Mead",
            options={"xatol": 1e-10, "fatol": 1e-14, "maxiter": 6000},
        )
        params = PentagramParams(
            result.x[0], result.x[1], result.x[2] % (2 * np.pi), result.x[3] % (2 * np.pi)
        )
    return params, float(-result.fun)


# -- the run-selection game -------------------------------------------------


@dataclass(frozen=True)
class GameStats:
    """Tally of a simulated run-selection game."""

    runs: int
    selected: int
    wins_among_selected: int
    rng_seed: int

    def __post_init__(self):
        if not self.wins_among_selected <= self.selected <= self.runs:
            raise ValidationError("game tallies must satisfy wins <= selected <= runs")


def av_game(runs: int, seed: int) -> GameStats:
    """Simulate the two-box run-selection game.

    The particle is prepared in (|box1> + |box2> + |no box>)/sqrt(3); the
    opener checks one box chosen uniformly, leaving |box_i> when the
    particle is found and the normalised projection onto the complement
    when it is not; the preparer then measures the projector onto
    (1, 1, -1)/sqrt(3) and keeps the run on "yes".  Among kept runs the
    particle was always found, and a ninth of all runs are kept.

    Randomness comes from a counter-based Philox stream keyed by ``seed``;
    run i consumes the i-th entry of each draw block, so results are
    bit-reproducible for a given (seed, runs).
    """
    if not isinstance(runs, (int, np.integer)) or runs < 1:
        raise ValidationError(f"runs must be a positive integer, got {runs!r}")
    psi_u = np.full(3, 1.0) / np.sqrt(3.0)
    found_states = (np.array([1.0, 0.0, 0.0]), np.array([0.0, 1.0, 0.0]))
    psi_d = StateVector.normalized([1.0, 1.0, -1.0]).amplitudes.real

    def not_found_state(box: int) -> np.ndarray:
        projected = psi_u - (found_states[box] @ psi_u) * found_states[box]
        return projected / np.linalg.norm(projected)

    p_found = np.array([float((found_states[i] @ psi_u) ** 2) for i in range(2)])
    p_yes_found = np.array([float((psi_d @ found_states[i]) ** 2) for i in range(2)])
    p_yes_missed = np.array([float((psi_d @ not_found_state(i)) ** 2) for i in range(2)])

    rng = np.random.Generator(np.random.Philox(key=int(seed) & (2 ** 64 - 1)))
    boxes = rng.integers(0, 2, size=runs)
    found = rng.random(runs) < p_found[boxes]
    yes_prob = np.where(found, p_yes_found[boxes], p_yes_missed[boxes])
    selected = rng.random(runs) < yes_prob
    return GameStats(
        runs=int(runs),
        selected=int(np.count_nonzero(selected)),
        wins_among_selected=int(np.count_nonzero(selected & found)),
        rng_seed=int(seed),
    )


# -- Hardy's paradox ---------------------------------------------------------

HARDY_LABELS = (
    "a1b1",
    "~a1~b2",
    "~a2b2",
    "a2~b2",
    "~a2~b1",
    "a1~b2",
    "~a2b1",
    "a2b2",
    "Psi",
)

# upper pentagon cycle, then the two completions, the outlier, the state
_HARDY_EDGES_BY_LABEL = (
    ("a1b1", "~a1~b2"),
    ("~a1~b2", "~a2b2"),
    ("~a2b2", "a2~b2"),
    ("a2~b2", "~a2~b1"),
    ("~a2~b1", "a1b1"),
    ("a1~b2", "~a1~b2"),
    ("a1~b2", "~a2b2"),
    ("a1~b2", "a2b2"),
    ("~a2b2", "a2b2"),
    ("~a1~b2", "a2b2"),
    ("~a2b1", "a2~b2"),
    ("~a2b1", "~a2~b1"),
    ("~a2b1", "a2b2"),
    ("a2~b2", "a2b2"),
    ("~a2~b1", "a2b2"),
    ("Psi", "a1~b2"),
    ("Psi", "~a2b1"),
    ("Psi", "a2b2"),
)

_HARDY_BASES_BY_LABEL = (
    ("~a1~b2", "~a2b2", "a1~b2", "a2b2"),
    ("a2~b2", "~a2~b1", "~a2b1", "a2b2"),
)

HARDY_UPPER_LABELS = ("a1b1", "~a1~b2", "~a2b2", "a2~b2", "~a2~b1")


@dataclass(frozen=True)
class HardyParams:
    """Bloch angles of the two measurement bases per side."""

    alpha1: float
    alpha2: float
    beta1: float
    beta2: float

    def as_tuple(self):
        return (self.alpha1, self.alpha2, self.beta1, self.beta2)


@dataclass(frozen=True)
class HardyGraph:
    """Nine realized nodes: separable pentagon, completions, outlier, state."""

    params: HardyParams
    graph: OrthogonalityGraph

    def vector(self, label: str) -> StateVector:
        return self.graph.vector(label)

    def upper_operator(self) -> HermitianOperator:
        return HermitianOperator.from_projectors(
            [self.vector(label) for label in HARDY_UPPER_LABELS]
        )

    def probability(self) -> float:
        """p = |<a1b1|Psi>|^2, the paradoxical joint probability."""
        return float(abs(self.vector("a1b1").inner(self.vector("Psi"))) ** 2)

    def zero_constraint_residuals(self) -> tuple[float, float, float]:
        """The three joint probabilities required to vanish."""
        psi = self.vector("Psi")
        return tuple(
            float(abs(self.vector(label).inner(psi)) ** 2)
            for label in ("a1~b2", "~a2b1", "a2b2")
        )


def _qubit(theta: float) -> np.ndarray:
    return np.array([np.cos(theta), np.sin(theta)])


def _qubit_perp(theta: float) -> np.ndarray:
    return np.array([-np.sin(theta), np.cos(theta)])


def hardy_construct(params: HardyParams) -> HardyGraph:
    """Realize the nine-node Hardy graph from real product measurements.

    The four non-apex pentagon vectors, the two completions and the
    outlier are products of eigenstates of the two dichotomic
    observables per side; all of them are orthogonal to the outlier
    except the apex a1b1, confining seven of the nine states to a
    three-dimensional subspace.  The system state is the unique ray
    orthogonal to both completions and the outlier, which enforces the
    three zero-probability constraints identically.
    """
    a1, a2, b1, b2 = (float(v) for v in params.as_tuple())
    if (
        abs(np.sin(a1 - a2)) < 1e-8
        or abs(np.sin(b1 - b2)) < 1e-8
    ):
        raise DegeneracyError("measurement pairs must be non-parallel on each side")
    if abs(np.cos(a1 - a2) * np.cos(b1 - b2)) < 1e-8:
        raise CollapseError("apex orthogonal to the outlier collapses the construction")
    alice = {"a1": _qubit(a1), "~a1": _qubit_perp(a1), "a2": _qubit(a2), "~a2": _qubit_perp(a2)}
    bob = {"b1": _qubit(b1), "~b1": _qubit_perp(b1), "b2": _qubit(b2), "~b2": _qubit_perp(b2)}

    def product(alice_key: str, bob_key: str) -> np.ndarray:
        return np.kron(alice[alice_key], bob[bob_key])

    vectors = {
        "a1b1": product("a1", "b1"),
        "~a1~b2": product("~a1", "~b2"),
        "~a2b2": product("~a2", "b2"),
        "a2~b2": product("a2", "~b2"),
        "~a2~b1": product("~a2", "~b1"),
        "a1~b2": product("a1", "~b2"),
        "~a2b1": product("~a2", "b1"),
        "a2b2": product("a2", "b2"),
    }
    constraints = np.stack([vectors["a1~b2"], vectors["~a2b1"], vectors["a2b2"]])
    _, singular, basis = np.linalg.svd(constraints)
    if singular[-1] < 1e-10:
        raise DegeneracyError("orthogonality constraints do not pin the system state")
    psi = basis[-1]
    vectors["Psi"] = psi / np.linalg.norm(psi)

    index = {label: i for i, label in enumerate(HARDY_LABELS)}
    graph = OrthogonalityGraph(
        node_labels=HARDY_LABELS,
        edges=tuple((index[i], index[j]) for i, j in _HARDY_EDGES_BY_LABEL),
        bases=tuple(tuple(index[i] for i in basis) for basis in _HARDY_BASES_BY_LABEL),
        realization=tuple(
            StateVector(vectors[label].astype(complex)) for label in HARDY_LABELS
        ),
    )
    validate_graph(graph)
    hardy = HardyGraph(params=params, graph=graph)
    residuals = hardy.zero_constraint_residuals()
    if max(residuals) > 1e-10:
        raise ValidationError(f"zero-probability constraints violated: {residuals}")
    for label in HARDY_LABELS[:-1]:
        if concurrence_two_qubit(hardy.vector(label)) > 1e-8:
            raise ValidationError(f"node {label} is unexpectedly entangled")
    return hardy


def _hardy_probability(x) -> float:
    try:
        return hardy_construct(HardyParams(*x)).probability()
    except (DegeneracyError, CollapseError, ValidationError):
        return -1.0


def hardy_maximize(restarts: int = 10, seed: int = 20) -> tuple[HardyParams, float]:
    """Maximize the paradoxical probability over measurement angles.

    Multi-start Nelder-Mead over the four Bloch angles; the exact optimum
    is 1/PHI^5 ~ 0.0902, attained when both sides separate their two
    measurement directions by the golden angle sin^2 = PHI - 1.
    """
    rng = np.random.Generator(np.random.Philox(key=int(seed) & (2 ** 64 - 1)))
    best_params, best_val = None, -1.0
    for _ in range(restarts):
        start = rng.uniform(0.15, np.pi / 2 - 0.15, size=4) * np.array([1, 0, 1, 0])
        start += rng.uniform(-0.05, 0.05, size=4)
        result = optimize.minimize(
            lambda x: -_hardy_probability(x),
            start,
            method="Nelder-Mead",
            options={"xatol": 1e-11, "fatol": 1e-15, "maxiter": 6000},
        )
        if -result.fun > best_val:
            best_val = float(-result.fun)
            best_params = HardyParams(*(float(v) for v in result.x))
    return best_params, best_val
