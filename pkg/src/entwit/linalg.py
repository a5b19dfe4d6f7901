"""Dense operators on multipartite Hilbert spaces.

Matrices are stored in the computational product basis with big-endian
subsystem ordering: for dims ``(n, m)`` the basis vector ``|i, mu>`` sits at
index ``i * m + mu``.  Every transpose in the package is taken relative to
this basis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DimensionMismatch,
    InvalidDimension,
    InvalidSubsystemSelection,
    NotADensityState,
    NotAnEffect,
    NotHermitian,
)

TOL_HERM = 1e-9
TOL_TRACE = 1e-9
TOL_PSD = 1e-9
TOL_EIG = 1e-10


@dataclass(frozen=True, eq=False)
class Operator:
    """Square complex matrix tagged with its subsystem dimensions."""

    dims: tuple[int, ...]
    data: np.ndarray

    def __post_init__(self) -> None:
        dims = tuple(int(d) for d in np.atleast_1d(self.dims))
        if not dims or any(d < 1 for d in dims):
            raise InvalidDimension(f"subsystem dimensions must be positive, got {dims}")
        data = np.array(self.data, dtype=complex)
        total = math.prod(dims)
        if data.shape != (total, total):
            raise DimensionMismatch(
                f"matrix of shape {data.shape} does not match dims {dims} (side {total})"
            )
        data.setflags(write=False)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "data", data)

    @property
    def total(self) -> int:
        return self.data.shape[0]

    @property
    def n_subsystems(self) -> int:
        return len(self.dims)

    def trace(self) -> complex:
        return complex(np.trace(self.data))

    def dagger(self) -> Operator:
        return Operator(self.dims, self.data.conj().T)

    def is_hermitian(self, tol: float = TOL_HERM) -> bool:
        return bool(np.max(np.abs(self.data - self.data.conj().T), initial=0.0) <= tol)

    def expectation(self, other: Operator) -> float:
        """Real part of tr(self @ other); both operands must share dims."""
        _require_same_dims(self, other)
        # tr(AB) = sum_ij A_ij B_ji
        return float(np.real(np.sum(self.data * other.data.T)))

    def frobenius(self) -> float:
        return float(np.linalg.norm(self.data))

    def allclose(self, other: Operator, atol: float = 1e-12) -> bool:
        return self.dims == other.dims and bool(np.allclose(self.data, other.data, rtol=0, atol=atol))

    def as_operator(self) -> Operator:
        return Operator(self.dims, self.data)

    def __add__(self, other: Operator) -> Operator:
        _require_same_dims(self, other)
        return Operator(self.dims, self.data + other.data)

    def __sub__(self, other: Operator) -> Operator:
        _require_same_dims(self, other)
        return Operator(self.dims, self.data - other.data)

    def __matmul__(self, other: Operator) -> Operator:
        _require_same_dims(self, other)
        return Operator(self.dims, self.data @ other.data)

    def __mul__(self, scalar: complex) -> Operator:
        return Operator(self.dims, self.data * scalar)

    __rmul__ = __mul__

    def __truediv__(self, scalar: complex) -> Operator:
        return Operator(self.dims, self.data / scalar)

    def __neg__(self) -> Operator:
        return Operator(self.dims, -self.data)

    def __repr__(self) -> str:
        return f"{type(self).__name__}(dims={self.dims})"


@dataclass(frozen=True, eq=False, repr=False)
class DensityState(Operator):
    """Hermitian, positive semidefinite, unit-trace operator."""

    def __post_init__(self) -> None:
        super().__post_init__()
        if not self.is_hermitian():
            raise NotADensityState("density state must be Hermitian")
        if abs(self.trace() - 1.0) > TOL_TRACE:
            raise NotADensityState(f"density state must have unit trace, got {self.trace():.3g}")
        lmin = float(np.linalg.eigvalsh(self.data)[0])
        if lmin < -TOL_PSD:
            raise NotADensityState(f"density state has negative eigenvalue {lmin:.3g}")

    @classmethod
    def from_operator(cls, op: Operator) -> DensityState:
        return cls(op.dims, op.data)


@dataclass(frozen=True, eq=False, repr=False)
class Effect(Operator):
    """Yes-no measurement operator F with 0 <= F <= I."""

    def __post_init__(self) -> None:
        super().__post_init__()
        if not self.is_hermitian():
            raise NotAnEffect("effect must be Hermitian")
        ev = np.linalg.eigvalsh(self.data)
        if ev[0] < -TOL_PSD or ev[-1] > 1.0 + TOL_PSD:
            raise NotAnEffect(f"effect spectrum [{ev[0]:.3g}, {ev[-1]:.3g}] leaves [0, 1]")

    @classmethod
    def from_operator(cls, op: Operator) -> Effect:
        return cls(op.dims, op.data)


def identity(dims: Sequence[int]) -> Operator:
    dims = tuple(dims)
    return Operator(dims, np.eye(math.prod(dims)))


def _require_same_dims(a: Operator, b: Operator) -> None:
    if a.dims != b.dims:
        raise DimensionMismatch(f"operator dims differ: {a.dims} vs {b.dims}")


def require_bipartite(op: Operator) -> tuple[int, int]:
    if op.n_subsystems != 2:
        raise InvalidSubsystemSelection(f"expected a bipartite operator, got dims {op.dims}")
    return op.dims


def _tensor(a: Operator) -> np.ndarray:
    """View as a rank-2k tensor with axes (row_0..row_{k-1}, col_0..col_{k-1})."""
    return a.data.reshape(a.dims + a.dims)


def kron(a: Operator, b: Operator) -> Operator:
    return Operator(a.dims + b.dims, np.kron(a.data, b.data))


def kron_all(ops: Iterable[Operator]) -> Operator:
    ops = list(ops)
    out = ops[0]
    for op in ops[1:]:
        out = kron(out, op)
    return out


def partial_trace(a: Operator, keep: Iterable[int]) -> Operator:
    """Trace out every subsystem not in ``keep``; kept subsystems stay in ascending order."""
    k = a.n_subsystems
    keep = sorted(set(int(i) for i in keep))
    if not keep or len(keep) == k or keep[0] < 0 or keep[-1] >= k:
        raise InvalidSubsystemSelection(
            f"keep must be a nonempty proper subset of range({k}), got {keep}"
        )
    t = _tensor(a)
    # trace from the highest index down so lower axis positions stay valid
    n_left = k
    for idx in reversed(range(k)):
        if idx in keep:
            continue
        t = np.trace(t, axis1=idx, axis2=idx + n_left)
        n_left -= 1
    dims = tuple(a.dims[i] for i in keep)
    side = math.prod(dims)
    return Operator(dims, t.reshape(side, side))


def partial_transpose(a: Operator, sub: int) -> Operator:
    k = a.n_subsystems
    if not 0 <= sub < k:
        raise InvalidSubsystemSelection(f"subsystem {sub} out of range for {k} subsystems")
    axes = list(range(2 * k))
    axes[sub], axes[k + sub] = axes[k + sub], axes[sub]
    return Operator(a.dims, _tensor(a).transpose(axes).reshape(a.total, a.total))


def transpose_full(a: Operator) -> Operator:
    return Operator(a.dims, a.data.T)


def permute_subsystems(a: Operator, perm: Sequence[int]) -> Operator:
    """Reorder tensor factors: subsystem ``j`` of the result is subsystem ``perm[j]`` of ``a``."""
    k = a.n_subsystems
    perm = [int(p) for p in perm]
    if sorted(perm) != list(range(k)):
        raise InvalidSubsystemSelection(f"{perm} is not a permutation of range({k})")
    axes = perm + [k + p for p in perm]
    return Operator(
        tuple(a.dims[p] for p in perm),
        _tensor(a).transpose(axes).reshape(a.total, a.total),
    )


def inverse_permutation(perm: Sequence[int]) -> list[int]:
    inv = [0] * len(perm)
    for j, p in enumerate(perm):
        inv[p] = j
    return inv


def jacobi_eigh(
    matrix: np.ndarray,
    order: str = "row",
    tol: float = 1e-14,
    max_sweeps: int = 100,
) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi diagonalization of a complex Hermitian matrix.

    ``order`` selects the sweep ordering of the (p, q) pivots: ``"row"``
    visits pairs row by row, ``"column"`` column by column.  Returns the
    eigenvalues in descending order and the eigenvectors as columns.
    """
    a = np.array(matrix, dtype=complex)
    d = a.shape[0]
    v = np.eye(d, dtype=complex)
    if order == "row":
        pairs = [(p, q) for p in range(d - 1) for q in range(p + 1, d)]
    elif order == "column":
        pairs = [(p, q) for q in range(1, d) for p in range(q)]
    else:
        raise ValueError(f"unknown sweep order {order!r}")

    scale = np.linalg.norm(a)
    for _ in range(max_sweeps):
        off = np.linalg.norm(a - np.diag(np.diag(a)))
        if off <= tol * scale:
            break
        for p, q in pairs:
            apq = a[p, q]
            mag = abs(apq)
            if mag <= 1e-300 or mag <= 1e-18 * scale:
                continue
            # unitary phase on column q makes the pivot real, then a real rotation zeroes it
            phase = apq / mag
            theta = (a[q, q].real - a[p, p].real) / (2.0 * mag)
            if abs(theta) > 1e150:
                t = 0.5 / theta
            else:
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
            c = 1.0 / math.sqrt(t * t + 1.0)
            s = t * c
            rot = np.array([[c, s], [-s * phase.conjugate(), c * phase.conjugate()]])
            idx = [p, q]
            a[:, idx] = a[:, idx] @ rot
            a[idx, :] = rot.conj().T @ a[idx, :]
            a[p, q] = a[q, p] = 0.0
            v[:, idx] = v[:, idx] @ rot
    else:
        raise RuntimeError("Jacobi iteration did not converge")

    w = np.real(np.diag(a))
    perm = np.argsort(-w, kind="stable")
    return w[perm], v[:, perm]


def eig_hermitian(a: Operator, order: str = "row") -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (descending) and orthonormal eigenvector columns of a Hermitian operator."""
    if not a.is_hermitian():
        raise NotHermitian("eig_hermitian requires a Hermitian operator")
    herm = 0.5 * (a.data + a.data.conj().T)
    return jacobi_eigh(herm, order=order)


def operator_to_dict(a: Operator) -> dict:
    return {
        "dims": list(a.dims),
        "entries": [[[float(z.real), float(z.imag)] for z in row] for row in a.data],
    }


def operator_from_dict(obj: dict, cls: type[Operator] = Operator) -> Operator:
    """Inverse of :func:`operator_to_dict`; ``cls`` adds DensityState/Effect validation."""
    dims = obj["dims"]
    entries = np.asarray(obj["entries"], dtype=float)
    if entries.ndim != 3 or entries.shape[2] != 2 or entries.shape[0] != entries.shape[1]:
        raise DimensionMismatch(f"entries must be a square array of [re, im] pairs, got {entries.shape}")
    return cls(tuple(dims), entries[..., 0] + 1j * entries[..., 1])
