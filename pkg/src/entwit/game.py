"""State-guessing game built from an entanglement witness.

A coordinator prepares W1 with probability alpha/(alpha+beta) or W2 with
probability beta/(alpha+beta), where H^T = beta W2 - alpha W1.  The players
guess W1 on `yes` and W2 on `no`, scoring +1 or -1.  Any separable effect
scores at most (beta-alpha)/(alpha+beta); the entangled resource fed
through the scheme scores strictly more.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    InconsistentWitness,
    InvalidArgument,
    NotAWitness,
    UncertifiedWitness,
)
from .linalg import DensityState, Effect, Operator, eig_hermitian, require_bipartite, transpose_full
from .scheme import build_scheme, clamp_probability, yes_probability_4party
from .separability import Certification, Witness
from .states import random_separable_effect

BALANCE_SLACK = 1e-9
RECONSTRUCTION_TOL = 1e-10


@dataclass(frozen=True)
class GameSpec:
    w1: DensityState
    w2: DensityState
    alpha: float
    beta: float
    h_t: Operator

    def __post_init__(self) -> None:
        if not (self.w1.dims == self.w2.dims == self.h_t.dims):
            raise DimensionMismatch("w1, w2 and h_t must share dims")
        if self.alpha <= 0.0 or self.beta < self.alpha - BALANCE_SLACK:
            raise InconsistentWitness(
                f"need 0 < alpha <= beta, got alpha={self.alpha!r}, beta={self.beta!r}"
            )
        residual = (self.h_t - (self.beta * self.w2 - self.alpha * self.w1)).frobenius()
        if residual > RECONSTRUCTION_TOL * max(1.0, self.h_t.frobenius()):
            raise InconsistentWitness(f"beta*w2 - alpha*w1 misses h_t by {residual:.3g}")

    @property
    def dims(self) -> tuple[int, int]:
        return self.h_t.dims

    @property
    def prior_w1(self) -> float:
        return self.alpha / (self.alpha + self.beta)

    @property
    def prior_w2(self) -> float:
        return self.beta / (self.alpha + self.beta)


@dataclass(frozen=True)
class GameReport:
    """Outcome of a Monte Carlo tournament next to its analytic comparators.

    ``quantum_payoff`` is the exact expected payoff of the simulated
    strategy; ``best_available`` is the larger of that and the classical
    bound, since a poor resource may score below the trivial strategy.
    """

    classical_bound: float
    quantum_payoff: float
    advantage: float
    mc_estimate: float
    mc_stderr: float
    rounds: int
    seed: int
    strategy: str
    best_available: float


def decompose_witness(wit: Witness, allow_heuristic: bool = False) -> GameSpec:
    """Spectral split H^T = H+ - H-, with alpha = tr H-, beta = tr H+."""
    if wit.certification is not Certification.EXACT and not allow_heuristic:
        raise UncertifiedWitness(
            f"{wit.certification.value} witness rejected; pass allow_heuristic to accept it"
        )
    require_bipartite(wit.h)
    h_t = transpose_full(wit.h)
    evals, evecs = eig_hermitian(h_t)
    pos = np.clip(evals, 0.0, None)
    neg = np.clip(-evals, 0.0, None)
    alpha, beta = float(neg.sum()), float(pos.sum())
    if alpha == 0.0:
        raise NotAWitness("operator is positive semidefinite and cannot witness entanglement")
    if wit.value_on_target >= 0.0:
        raise NotAWitness(f"witness value on target is {wit.value_on_target:.3g}, not negative")
    if alpha > beta + BALANCE_SLACK:
        raise InconsistentWitness(
            f"alpha = {alpha:.6g} exceeds beta = {beta:.6g}; the operator is negative on "
            "a separable state"
        )
    if beta == 0.0:
        raise InconsistentWitness("witness has no positive part")

    def normalized(weights: np.ndarray, total: float) -> DensityState:
        mat = (evecs * (weights / total)) @ evecs.conj().T
        return DensityState(h_t.dims, 0.5 * (mat + mat.conj().T))

    return GameSpec(
        w1=normalized(neg, alpha),
        w2=normalized(pos, beta),
        alpha=alpha,
        beta=beta,
        h_t=h_t,
    )


def _check_dims(g: GameSpec, op: Operator) -> None:
    if op.dims != g.dims:
        raise DimensionMismatch(f"operator dims {op.dims} do not match game dims {g.dims}")


def payoff_of_effect(g: GameSpec, f: Operator) -> float:
    _check_dims(g, f)
    total = g.alpha + g.beta
    return (g.beta - g.alpha) / total - 2.0 / total * g.h_t.expectation(f)


def payoff_direct(g: GameSpec, f: Operator) -> float:
    """Expected payoff summed over the two preparations, without the witness."""
    _check_dims(g, f)
    p1 = g.w1.expectation(f)
    p2 = g.w2.expectation(f)
    return g.prior_w1 * (p1 - (1.0 - p1)) + g.prior_w2 * ((1.0 - p2) - p2)


def classical_bound(g: GameSpec) -> float:
    return (g.beta - g.alpha) / (g.alpha + g.beta)


def quantum_payoff(g: GameSpec, rho: DensityState) -> float:
    _check_dims(g, rho)
    return payoff_of_effect(g, build_scheme(rho).effective)


def _play(p_yes1: float, p_yes2: float, prior1: float, rounds: int, rng: np.random.Generator) -> float:
    """Sum of +-1 payoffs over ``rounds`` independent rounds."""
    is_w1 = rng.random(rounds) < prior1
    yes = rng.random(rounds) < np.where(is_w1, p_yes1, p_yes2)
    correct = yes == is_w1
    return float(2 * np.count_nonzero(correct) - rounds)


def simulate(
    g: GameSpec,
    rounds: int,
    seed: int,
    *,
    effect: Effect | None = None,
    resource: DensityState | None = None,
    workers: int = 1,
) -> GameReport:
    """Play ``rounds`` rounds with exactly one of ``effect`` or ``resource``.

    With a resource, each round's outcome comes from the four-party scheme.
    ``workers == 1`` draws everything from ``default_rng(seed)`` and is
    bit-reproducible; more workers split the rounds over child streams
    spawned from ``SeedSequence(seed)``.
    """
    if rounds < 1:
        raise InvalidArgument(f"rounds must be >= 1, got {rounds}")
    if workers < 1:
        raise InvalidArgument(f"workers must be >= 1, got {workers}")
    if (effect is None) == (resource is None):
        raise InvalidArgument("give exactly one of effect= or resource=")

    if resource is not None:
        _check_dims(g, resource)
        scheme = build_scheme(resource)
        p1 = yes_probability_4party(scheme, g.w1)
        p2 = yes_probability_4party(scheme, g.w2)
        exact = quantum_payoff(g, resource)
        strategy = "resource"
    else:
        _check_dims(g, effect)
        p1 = clamp_probability(g.w1.expectation(effect))
        p2 = clamp_probability(g.w2.expectation(effect))
        exact = payoff_of_effect(g, effect)
        strategy = "effect"

    if workers == 1:
        total = _play(p1, p2, g.prior_w1, rounds, np.random.default_rng(seed))
    else:
        children = np.random.SeedSequence(seed).spawn(workers)
        shares = [rounds // workers + (1 if k < rounds % workers else 0) for k in range(workers)]

        def shard(job: tuple[int, np.random.SeedSequence]) -> float:
            n, child = job
            return _play(p1, p2, g.prior_w1, n, np.random.default_rng(child)) if n else 0.0

        with ThreadPoolExecutor(max_workers=workers) as pool:
            total = sum(pool.map(shard, zip(shares, children)))

    mean = total / rounds
    bound = classical_bound(g)
    return GameReport(
        classical_bound=bound,
        quantum_payoff=exact,
        advantage=exact - bound,
        mc_estimate=mean,
        mc_stderr=math.sqrt(max(1.0 - mean * mean, 0.0) / rounds),
        rounds=rounds,
        seed=seed,
        strategy=strategy,
        best_available=max(exact, bound),
    )


def verify_separable_ceiling(
    g: GameSpec, samples: int, rng: np.random.Generator, max_terms: int = 4
) -> float:
    """Best payoff over random separable effects; -inf when ``samples`` is 0."""
    best = -math.inf
    for _ in range(samples):
        terms = int(rng.integers(1, max_terms + 1))
        f = random_separable_effect(g.dims, terms, rng)
        best = max(best, payoff_of_effect(g, f))
    return best
