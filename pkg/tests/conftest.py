"""Shared fixtures and brute-force oracles.

The oracles below loop over explicit basis indices and never call the
reshape/transpose machinery they are used to check.
"""

import itertools
import math

import numpy as np
import pytest

from entwit.linalg import Operator


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_matrix(d, rng, hermitian=False):
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return g + g.conj().T if hermitian else g


def random_operator(dims, rng, hermitian=False):
    return Operator(tuple(dims), random_matrix(math.prod(dims), rng, hermitian))


def multi_indices(dims):
    return list(itertools.product(*(range(d) for d in dims)))


def flat(idx, dims):
    out = 0
    for i, d in zip(idx, dims):
        out = out * d + i
    return out


def kron_oracle(a, b):
    n, m = a.shape[0], b.shape[0]
    out = np.zeros((n * m, n * m), dtype=complex)
    for i, j, k, l in itertools.product(range(n), range(n), range(m), range(m)):
        out[i * m + k, j * m + l] = a[i, j] * b[k, l]
    return out


def partial_trace_oracle(x, dims, keep):
    keep = sorted(keep)
    traced = [k for k in range(len(dims)) if k not in keep]
    kdims = [dims[k] for k in keep]
    side = math.prod(kdims)
    out = np.zeros((side, side), dtype=complex)
    for r in multi_indices(kdims):
        for c in multi_indices(kdims):
            total = 0j
            for t in multi_indices([dims[k] for k in traced]):
                row = [0] * len(dims)
                col = [0] * len(dims)
                for pos, k in enumerate(keep):
                    row[k], col[k] = r[pos], c[pos]
                for pos, k in enumerate(traced):
                    row[k] = col[k] = t[pos]
                total += x[flat(row, dims), flat(col, dims)]
            out[flat(r, kdims), flat(c, kdims)] = total
    return out


def partial_transpose_oracle(x, dims, sub):
    out = np.zeros_like(x, dtype=complex)
    for r in multi_indices(dims):
        for c in multi_indices(dims):
            r2, c2 = list(r), list(c)
            r2[sub], c2[sub] = c[sub], r[sub]
            out[flat(r, dims), flat(c, dims)] = x[flat(r2, dims), flat(c2, dims)]
    return out


def permute_oracle(x, dims, perm):
    new_dims = [dims[p] for p in perm]
    out = np.zeros_like(x, dtype=complex)
    for r in multi_indices(dims):
        for c in multi_indices(dims):
            out[flat([r[p] for p in perm], new_dims), flat([c[p] for p in perm], new_dims)] = x[
                flat(r, dims), flat(c, dims)
            ]
    return out


SWAP_2 = np.array(
    [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=float
)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
