"""Named states and seeded random instances."""

from __future__ import annotations

import math
import re
from typing import Sequence

import numpy as np

from .errors import InvalidArgument, InvalidDimension
from .linalg import DensityState, Effect, Operator, identity, kron_all


def singlet() -> DensityState:
    rho = np.zeros((4, 4))
    rho[1, 1] = rho[2, 2] = 0.5
    rho[1, 2] = rho[2, 1] = -0.5
    return DensityState((2, 2), rho)


def werner() -> DensityState:
    return DensityState((2, 2), 0.5 * singlet().data + np.eye(4) / 8)


def max_entangled_vector(n: int) -> np.ndarray:
    """Amplitudes of (1/sqrt(n)) sum_i |i>|i> in the big-endian basis."""
    if n < 1:
        raise InvalidDimension(f"dimension must be >= 1, got {n}")
    psi = np.zeros(n * n, dtype=complex)
    psi[np.arange(n) * (n + 1)] = 1.0 / math.sqrt(n)
    return psi


def max_entangled_projector(n: int) -> Effect:
    psi = max_entangled_vector(n)
    return Effect((n, n), np.outer(psi, psi.conj()))


def maximally_mixed(dims: Sequence[int]) -> DensityState:
    op = identity(dims)
    return DensityState(op.dims, op.data / op.total)


_MAXENT = re.compile(r"^maxent:(\d+)$")


def named_state(name: str) -> DensityState:
    """Resolve a keyword: ``singlet``, ``werner``, ``maxent:n`` or ``mixed:nxm``."""
    if name == "singlet":
        return singlet()
    if name == "werner":
        return werner()
    match = _MAXENT.match(name)
    if match:
        p = max_entangled_projector(int(match.group(1)))
        return DensityState(p.dims, p.data)
    if name.startswith("mixed:"):
        return maximally_mixed(parse_dims(name[len("mixed:"):]))
    raise InvalidArgument(f"unknown state keyword {name!r}")


def parse_dims(text: str) -> tuple[int, ...]:
    try:
        dims = tuple(int(part) for part in text.lower().split("x"))
    except ValueError:
        raise InvalidArgument(f"cannot parse dimensions {text!r}; expected e.g. 2x3") from None
    if any(d < 1 for d in dims):
        raise InvalidDimension(f"dimensions must be positive, got {dims}")
    return dims


def ginibre(d: int, rng: np.random.Generator) -> np.ndarray:
    return rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))


def random_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary via QR with the diagonal phase fix."""
    q, r = np.linalg.qr(ginibre(d, rng))
    diag = np.diag(r)
    return q * (diag / np.abs(diag))


def random_density(dims: Sequence[int], rng: np.random.Generator) -> DensityState:
    dims = tuple(dims)
    g = ginibre(math.prod(dims), rng)
    rho = g @ g.conj().T
    return DensityState(dims, rho / np.trace(rho).real)


def random_pure_state(dims: Sequence[int], rng: np.random.Generator) -> DensityState:
    dims = tuple(dims)
    d = math.prod(dims)
    psi = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    psi /= np.linalg.norm(psi)
    return DensityState(dims, np.outer(psi, psi.conj()))


def random_product_state(dims: Sequence[int], rng: np.random.Generator) -> DensityState:
    op = kron_all(random_density((d,), rng) for d in dims)
    return DensityState(op.dims, op.data)


def _random_local_effect(d: int, rng: np.random.Generator) -> np.ndarray:
    u = random_unitary(d, rng)
    return (u * rng.uniform(0.0, 1.0, size=d)) @ u.conj().T


def random_separable_effect(
    dims: Sequence[int], terms: int, rng: np.random.Generator
) -> Effect:
    """Sum of ``terms`` product effects, globally rescaled so that F <= I."""
    dims = tuple(dims)
    if terms < 1:
        raise InvalidArgument(f"terms must be >= 1, got {terms}")
    total = np.zeros((math.prod(dims),) * 2, dtype=complex)
    for _ in range(terms):
        factors = [Operator((d,), _random_local_effect(d, rng)) for d in dims]
        total += kron_all(factors).data
    total = 0.5 * (total + total.conj().T)
    total /= max(1.0, float(np.linalg.eigvalsh(total)[-1]))
    return Effect(dims, total)
