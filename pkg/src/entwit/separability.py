"""PPT test, entanglement witnesses and Gilbert-style separable approximation."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidArgument, NoPptViolation, NotAWitness
from .linalg import (
    TOL_PSD,
    DensityState,
    Operator,
    eig_hermitian,
    identity,
    partial_trace,
    partial_transpose,
    require_bipartite,
)
from .states import random_product_state


class Provenance(str, enum.Enum):
    PPT_EIGENVECTOR = "PPT_EIGENVECTOR"
    CLOSEST_SEPARABLE = "CLOSEST_SEPARABLE"


class Certification(str, enum.Enum):
    EXACT = "EXACT"
    HEURISTIC = "HEURISTIC"


@dataclass(frozen=True)
class Witness:
    """Hermitian H with tr(H rho) < 0 on its target and tr(H D) >= 0 on separable D.

    Only ``EXACT`` witnesses carry an analytic guarantee of the second
    property; ``HEURISTIC`` ones were checked against sampled product states.
    """

    h: Operator
    value_on_target: float
    provenance: Provenance
    certification: Certification


@dataclass
class SeparableApproximation:
    sigma: DensityState
    components: list[tuple[np.ndarray, np.ndarray]]
    weights: np.ndarray
    distance: float
    history: list[float] = field(default_factory=list)


def is_ppt(w: Operator, tol: float = TOL_PSD) -> tuple[bool, float]:
    """Peres-Horodecki test on subsystem B; returns (verdict, smallest PT eigenvalue)."""
    require_bipartite(w)
    evals, _ = eig_hermitian(partial_transpose(w, 1))
    lmin = float(evals[-1])
    return lmin >= -tol, lmin


def witness_from_ppt(rho: DensityState, tol: float = TOL_PSD, order: str = "row") -> Witness:
    """Witness H = (|psi><psi|)^{T_B} from the most negative PT eigenvector of ``rho``.

    For product D = A (x) B, tr(H D) = <psi| A (x) B^T |psi> >= 0, so the
    certificate is exact.  When the negative eigenvalue is degenerate the
    first eigenvector of the cluster in solver order is used and the
    witness is not unique.
    """
    require_bipartite(rho)
    evals, evecs = eig_hermitian(partial_transpose(rho, 1), order=order)
    lmin = float(evals[-1])
    if lmin >= -tol:
        raise NoPptViolation(
            f"state has positive partial transpose (min eigenvalue {lmin:.3g}); "
            "no PPT witness exists"
        )
    cluster = np.flatnonzero(evals <= lmin + 1e-12)
    psi = evecs[:, cluster[0]]
    proj = Operator(rho.dims, np.outer(psi, psi.conj()))
    h = partial_transpose(proj, 1)
    return Witness(
        h=h,
        value_on_target=rho.expectation(h),
        provenance=Provenance.PPT_EIGENVECTOR,
        certification=Certification.EXACT,
    )


def _top_vectors(mats: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    mats = 0.5 * (mats + np.conj(np.swapaxes(mats, -1, -2)))
    w, v = np.linalg.eigh(mats)
    return w[:, -1], v[:, :, -1]


def best_product_vector(
    x: Operator,
    rng: np.random.Generator,
    restarts: int = 8,
    alternations: int = 20,
) -> tuple[float, np.ndarray, np.ndarray]:
    """Approximately maximize <ab|X|ab> over unit product vectors.

    Alternating ascent: with b fixed the optimal a is the top eigenvector of
    (I (x) <b|) X (I (x) |b>), and symmetrically.  Restarts run as one batch;
    ties go to the lowest restart index.
    """
    n, m = require_bipartite(x)
    t = x.data.reshape(n, m, n, m)
    b = rng.standard_normal((restarts, m)) + 1j * rng.standard_normal((restarts, m))
    b /= np.linalg.norm(b, axis=1, keepdims=True)
    for _ in range(alternations):
        _, a = _top_vectors(np.einsum("rm,imjn,rn->rij", b.conj(), t, b))
        vals, b = _top_vectors(np.einsum("ri,imjn,rj->rmn", a.conj(), t, a))
    best = int(np.argmax(vals))
    return float(vals[best]), a[best], b[best]


def closest_separable(
    rho: DensityState,
    iters: int,
    rng: np.random.Generator,
    restarts: int = 8,
    alternations: int = 20,
) -> SeparableApproximation:
    """Gilbert iteration towards the Hilbert-Schmidt-closest separable state.

    Starts from the product of the marginals.  Each step moves sigma towards
    the product state that best correlates with rho - sigma, with the step
    length chosen by exact line search, so the distance never increases.
    """
    if iters < 1:
        raise InvalidArgument(f"iters must be >= 1, got {iters}")
    n, m = require_bipartite(rho)
    rho_a = partial_trace(rho, {0}).data
    rho_b = partial_trace(rho, {1}).data
    sigma = np.kron(rho_a, rho_b)
    components = [(rho_a, rho_b)]
    weights = [1.0]
    target = rho.data
    history = [float(np.linalg.norm(target - sigma))]

    for _ in range(iters):
        diff = target - sigma
        _, a, b = best_product_vector(Operator((n, m), diff), rng, restarts, alternations)
        ab = np.kron(a, b)
        step_dir = np.outer(ab, ab.conj()) - sigma
        denom = float(np.real(np.vdot(step_dir, step_dir)))
        if denom > 0.0:
            # minimizer of ||diff - t * step_dir||^2
            step = min(max(float(np.real(np.vdot(step_dir, diff))) / denom, 0.0), 1.0)
        else:
            step = 0.0
        if step > 0.0:
            sigma = (1.0 - step) * sigma + step * np.outer(ab, ab.conj())
            weights = [wgt * (1.0 - step) for wgt in weights]
            weights.append(step)
            components.append((np.outer(a, a.conj()), np.outer(b, b.conj())))
        history.append(min(float(np.linalg.norm(target - sigma)), history[-1]))

    sigma = 0.5 * (sigma + sigma.conj().T)
    return SeparableApproximation(
        sigma=DensityState((n, m), sigma),
        components=components,
        weights=np.asarray(weights),
        distance=history[-1],
        history=history,
    )


def witness_from_separable_approximation(
    rho: DensityState,
    approx: SeparableApproximation,
    rng: np.random.Generator,
    restarts: int = 64,
    alternations: int = 50,
    tol: float = TOL_PSD,
) -> Witness:
    """Heuristic witness H = sigma - rho + c I.

    ``c`` is the largest product-state expectation of rho - sigma found by
    ascent, which makes tr(H D) >= 0 on every product state the search
    could reach; nothing is proven about the rest.
    """
    diff = Operator(rho.dims, rho.data - approx.sigma.data)
    c, _, _ = best_product_vector(diff, rng, restarts, alternations)
    h = -diff + max(c, 0.0) * identity(rho.dims)
    value = rho.expectation(h)
    if value >= -tol:
        raise NotAWitness(
            f"separable approximation does not separate the state (tr(H rho) = {value:.3g})"
        )
    return Witness(
        h=h,
        value_on_target=value,
        provenance=Provenance.CLOSEST_SEPARABLE,
        certification=Certification.HEURISTIC,
    )


def min_on_product_states(h: Operator, samples: int, rng: np.random.Generator) -> float:
    """Smallest tr(H D) over ``samples`` random product states D."""
    require_bipartite(h)
    return min(
        random_product_state(h.dims, rng).expectation(h) for _ in range(samples)
    )
