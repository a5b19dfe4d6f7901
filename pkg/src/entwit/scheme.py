"""Non-bilocal yes-no measurement driven by a shared bipartite resource.

Alice holds A (resource) and A' (target), Bob holds B and B'.  Each
projects their pair onto the maximally entangled vector and the joint
outcome is the logical AND of the two local outcomes.  On a target W this
fires with probability tr(W rho^T) / (n m), i.e. the pair effectively
measures rho^T / (n m) on W.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch
from .linalg import (
    DensityState,
    Effect,
    Operator,
    identity,
    kron,
    partial_trace,
    permute_subsystems,
    require_bipartite,
    transpose_full,
)
from .states import max_entangled_projector, singlet, werner

# (A, B, A', B') -> (A, A', B, B')
ALICE_BOB_ORDER = (0, 2, 1, 3)

PROBABILITY_SLACK = 1e-8


@dataclass(frozen=True)
class SchemeInstance:
    rho: DensityState
    projector_a: Effect
    projector_b: Effect
    effective: Effect

    @property
    def dims(self) -> tuple[int, int]:
        return self.rho.dims


def build_scheme(rho: DensityState) -> SchemeInstance:
    n, m = require_bipartite(rho)
    return SchemeInstance(
        rho=rho,
        projector_a=max_entangled_projector(n),
        projector_b=max_entangled_projector(m),
        effective=Effect.from_operator(transpose_full(rho) / (n * m)),
    )


def clamp_probability(p: float) -> float:
    if p < -PROBABILITY_SLACK or p > 1.0 + PROBABILITY_SLACK:
        raise ValueError(f"probability {p!r} outside [0, 1] beyond rounding slack")
    return min(max(p, 0.0), 1.0)


def yes_probability_4party(s: SchemeInstance, w: DensityState) -> float:
    """Probability that both local projections succeed, from the full four-party state."""
    if w.dims != s.dims:
        raise DimensionMismatch(f"target dims {w.dims} do not match resource dims {s.dims}")
    joint = four_party_state(s, w)
    measurement = kron(s.projector_a, s.projector_b)
    return clamp_probability(joint.expectation(measurement))


def yes_probability(s: SchemeInstance, w: DensityState) -> float:
    """Shortcut through the effective operator; agrees with the four-party value."""
    if w.dims != s.dims:
        raise DimensionMismatch(f"target dims {w.dims} do not match resource dims {s.dims}")
    return clamp_probability(w.expectation(s.effective))


def sample_outcome(s: SchemeInstance, w: DensityState, rng: np.random.Generator) -> bool:
    """One run of the scheme; True means `yes`."""
    return bool(rng.random() < yes_probability_4party(s, w))


def sample_outcomes(
    s: SchemeInstance, w: DensityState, size: int, rng: np.random.Generator
) -> np.ndarray:
    return rng.random(size) < yes_probability_4party(s, w)


def werner_identity_check(w: DensityState) -> tuple[float, float]:
    """Both sides of the imperfect-teleportation identity for a two-qubit W.

    lhs: Bob measures the singlet projector on (1/2) W + (1/4) I (x) tr_A(W).
    rhs: tr(W rho_Werner).
    """
    if w.dims != (2, 2):
        raise DimensionMismatch(f"Werner identity needs a 2x2 state, got dims {w.dims}")
    received = 0.5 * w + 0.25 * kron(identity((2,)), partial_trace(w, {1}))
    lhs = received.expectation(singlet())
    rhs = w.expectation(werner())
    return lhs, rhs


def four_party_state(s: SchemeInstance, w: DensityState) -> Operator:
    """rho (x) W reordered to Alice-then-Bob, dims (n, n, m, m)."""
    return permute_subsystems(kron(s.rho, w), ALICE_BOB_ORDER)
