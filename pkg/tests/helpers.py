"""Shared generators for the test suite.

Rank-deficient matrices are always built as products of random factors of
prescribed rank, never by thresholding noise, so every test knows the exact
rank of its input.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg

from liepinv.graded import GradedAlgebra
from liepinv.numcore import QuaternionMatrix


def random_complex(rng, *shape) -> np.ndarray:
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_matrix_with_rank(rng, rows: int, cols: int, rank: int) -> np.ndarray:
    """Product of factors with prescribed exact rank."""
    if rank == 0:
        return np.zeros((rows, cols), dtype=complex)
    return random_complex(rng, rows, rank) @ random_complex(rng, rank, cols)


def random_unitary(rng, n: int) -> np.ndarray:
    q, r = np.linalg.qr(random_complex(rng, n, n))
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_quaternion_matrix(rng, rows: int, cols: int) -> QuaternionMatrix:
    return QuaternionMatrix(rng.standard_normal((rows, cols, 4)))


def compact_group_element(alg: GradedAlgebra, rng, scale: float = 0.5) -> np.ndarray:
    """exp of a random skew-Hermitian degree-0 element: unitary, grading-preserving."""
    x = alg.random_element(0, rng) * scale
    x = (x - x.conj().T) / 2.0
    x = alg.project(x)
    return scipy.linalg.expm(x)


def levi_group_element(alg: GradedAlgebra, rng, scale: float = 0.4) -> np.ndarray:
    """exp of a random degree-0 element: grading-preserving, generically non-unitary."""
    return scipy.linalg.expm(alg.project(alg.random_element(0, rng) * scale))


def partitions(n: int):
    """All partitions of n as weakly decreasing tuples."""
    if n == 0:
        yield ()
        return
    for first in range(n, 0, -1):
        for rest in partitions(n - first):
            if not rest or rest[0] <= first:
                yield (first,) + rest


def jordan_nilpotent(partition) -> np.ndarray:
    """Nilpotent matrix in Jordan normal form for the given partition."""
    n = sum(partition)
    e = np.zeros((n, n), dtype=complex)
    pos = 0
    for part in partition:
        for i in range(part - 1):
            e[pos + i, pos + i + 1] = 1.0
        pos += part
    return e


def centralizer_positive_directions(alg, e, h, degree=None) -> np.ndarray:
    """Independent oracle for the direction space of the characteristic set.

    Computes ker(ad e) intersected with the positive ad(h)-weight spaces of
    the degree-0 part (the whole algebra in the ungraded case), directly from
    the centralizer rather than from the solver's constraint kernel.
    """
    from liepinv.numcore import rank_decomposition

    basis = alg.basis(0) if degree else alg.basis()
    br_e = np.einsum("ab,kbc->kac", e, basis) - np.einsum("kab,bc->kac", basis, e)
    ade = np.einsum("jab,kab->jk", alg.basis().conj(), br_e)
    cent = rank_decomposition(ade).kernel  # coords of z(e) inside `basis`
    if cent.shape[1] == 0:
        return np.zeros((0, alg.ambient_dim, alg.ambient_dim), dtype=complex)
    br_h = np.einsum("ab,kbc->kac", h, basis) - np.einsum("kab,bc->kac", basis, h)
    adh = np.einsum("jab,kab->jk", basis.conj(), br_h)
    adh_cent = cent.conj().T @ adh @ cent
    eigvals, eigvecs = np.linalg.eig(adh_cent)
    keep = eigvecs[:, eigvals.real > 0.5]
    if keep.shape[1] == 0:
        return np.zeros((0, alg.ambient_dim, alg.ambient_dim), dtype=complex)
    coords = cent @ keep
    return np.einsum("kj,kab->jab", coords, basis)


def random_exact_complex(rng, sizes, ranks) -> list[np.ndarray]:
    """Chain maps with prescribed ranks and numerically exact zero compositions."""
    k = len(sizes)
    maps: list[np.ndarray] = []
    for i in range(k - 1):
        d_from, d_to = sizes[i + 1], sizes[i]
        rank = ranks[i]
        if i == 0:
            maps.append(random_matrix_with_rank(rng, d_to, d_from, rank))
            continue
        left = maps[-1]
        from liepinv.numcore import rank_decomposition

        kernel = rank_decomposition(left).kernel  # inside the domain of `left`
        if rank > kernel.shape[1]:
            raise ValueError("rank too large for an exact complex")
        inner = random_matrix_with_rank(rng, kernel.shape[1], d_from, rank)
        maps.append(kernel @ inner)
    return maps


def complex_rank_profiles(sizes, rng, tries: int = 20):
    """A random admissible rank tuple: m_{i-1} + m_i <= d_i, not all zero if possible."""
    k = len(sizes)
    for _ in range(tries):
        ranks = []
        for i in range(k - 1):
            cap = min(sizes[i], sizes[i + 1])
            if i > 0:
                cap = min(cap, sizes[i] - ranks[i - 1])
            ranks.append(int(rng.integers(0, cap + 1)))
        if any(ranks):
            return ranks
    return [0] * (k - 1)


def reachable_orbit_labels(symmetry: str, dim_v: int, dim_u: int):
    """All (a, b) reachable for maps U -> V with the standard form on V."""
    labels = []
    for a in range(0, min(dim_v, dim_u) + 1):
        for b in range(0, a + 1):
            if symmetry == "symmetric":
                if a + b <= dim_v:
                    labels.append((a, b))
            else:
                if (a - b) % 2 == 0 and (a - b) // 2 + b <= dim_v // 2:
                    labels.append((a, b))
    return labels


def standard_form(symmetry: str, dim_v: int):
    from liepinv.forms import SKEW, SYMMETRIC, BilinearForm

    if symmetry == "symmetric":
        return BilinearForm(SYMMETRIC, np.eye(dim_v, dtype=complex))
    half = dim_v // 2
    j = np.zeros((dim_v, dim_v))
    j[:half, half:] = np.eye(half)
    j[half:, :half] = -np.eye(half)
    return BilinearForm(SKEW, j.astype(complex))


def compositions(n: int, min_parts: int = 1):
    """All ordered compositions of n (into at least min_parts parts)."""
    out = []
    for bits in range(1 << (n - 1)):
        parts = []
        run = 1
        for i in range(n - 1):
            if bits & (1 << i):
                parts.append(run)
                run = 1
            else:
                run += 1
        parts.append(run)
        if len(parts) >= min_parts:
            out.append(tuple(parts))
    return out
