"""Deterministic dense linear algebra over complex scalars.

Everything here is a thin, tolerance-aware layer over LAPACK (through
numpy/scipy): numerical ranks, orthonormal kernel/image bases, adjoints,
and equality-constrained least squares.  Quaternion matrices are supported
through their standard complex embedding; there is deliberately no native
quaternion factorization.

All inputs must be finite; all outputs are fresh arrays.  Every function is
pure, so concurrent use is safe.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import EmbeddingMismatch, InconsistentConstraints, ShapeMismatch

__all__ = [
    "Tolerance",
    "DEFAULT_TOL",
    "as_matrix",
    "adjoint",
    "frob",
    "RankDecomposition",
    "rank_decomposition",
    "solve_least_squares_constrained",
    "Quaternion",
    "QuaternionMatrix",
]


@dataclass(frozen=True)
class Tolerance:
    """Numerical policy: rank cutoff and residual acceptance.

    rank_rtol is a relative singular-value cutoff (sigma <= rank_rtol * sigma_max
    counts as zero); residual_tol is the relative residual below which a
    verification condition is accepted.  Both must lie in (0, 1e-3].
    """

    rank_rtol: float = 1e-10
    residual_tol: float = 1e-9

    def __post_init__(self):
        for name in ("rank_rtol", "residual_tol"):
            value = getattr(self, name)
            if not (0.0 < value <= 1e-3):
                raise ValueError(f"{name} must be in (0, 1e-3], got {value!r}")


DEFAULT_TOL = Tolerance()


def as_matrix(a, dtype=complex) -> np.ndarray:
    """Coerce to a 2-d array of the given dtype, rejecting non-finite entries."""
    m = np.array(a, dtype=dtype, order="C")
    if m.ndim == 1:
        m = m.reshape(1, -1)
    if m.ndim != 2:
        raise ShapeMismatch(f"expected a matrix, got ndim={m.ndim}")
    if m.size and not np.all(np.isfinite(m)):
        raise ValueError("matrix contains non-finite entries")
    return m


def adjoint(a) -> np.ndarray:
    """Conjugate transpose."""
    return as_matrix(a).conj().T.copy()


def frob(a) -> float:
    """Frobenius norm, 0.0 for empty arrays."""
    a = np.asarray(a)
    return float(np.linalg.norm(a)) if a.size else 0.0


class RankDecomposition(NamedTuple):
    """Numerical rank with orthonormal kernel and image bases (as columns)."""

    rank: int
    kernel: np.ndarray  # shape (cols, cols - rank)
    image: np.ndarray   # shape (rows, rank)


def rank_decomposition(a, tol: Tolerance = DEFAULT_TOL) -> RankDecomposition:
    """Rank, kernel basis and image basis of ``a`` by SVD.

    Singular values sigma <= rank_rtol * sigma_max are treated as zero.  The
    kernel columns are right singular vectors of the discarded values, the
    image columns are left singular vectors of the kept ones; both families
    are orthonormal.  A zero (or empty) matrix has rank 0 and full kernel.
    """
    a = as_matrix(a)
    m, n = a.shape
    if m == 0 or n == 0:
        return RankDecomposition(0, np.eye(n, dtype=complex), np.zeros((m, 0), complex))
    u, s, vh = np.linalg.svd(a, full_matrices=True)
    cutoff = tol.rank_rtol * (s[0] if s.size else 0.0)
    rank = int(np.sum(s > cutoff))
    return RankDecomposition(rank, vh[rank:].conj().T.copy(), u[:, :rank].copy())


def solve_least_squares_constrained(
    objective,
    target,
    constraints,
    rhs,
    tol: Tolerance = DEFAULT_TOL,
) -> np.ndarray:
    """Minimize ``|M x - t|`` subject to ``C x = d``, minimal-norm among minimizers.

    The constraint system is eliminated through its minimal-norm particular
    solution and an orthonormal kernel basis, after which an ordinary
    minimal-norm least-squares solve in the reduced variables gives the
    answer.  Because the particular solution is orthogonal to the kernel of
    ``C``, minimal norm in the reduced variable is minimal norm in ``x``.

    Raises
    ------
    InconsistentConstraints
        If no x satisfies ``C x = d`` within the residual tolerance.
    ArithmeticError
        If the first-order optimality residual of the solution is large
        (indicates catastrophic scaling; does not occur for sane inputs).
    """
    m_mat = as_matrix(objective)
    c_mat = as_matrix(constraints)
    t = np.asarray(target, dtype=complex).reshape(-1)
    d = np.asarray(rhs, dtype=complex).reshape(-1)
    n = m_mat.shape[1]
    if c_mat.shape[1] != n:
        raise ShapeMismatch(
            f"objective has {n} columns but constraints have {c_mat.shape[1]}"
        )
    if t.shape[0] != m_mat.shape[0] or d.shape[0] != c_mat.shape[0]:
        raise ShapeMismatch("right-hand side lengths do not match")

    # Every least-squares subproblem uses the package rank policy as its
    # singular value cutoff; keeping tiny directions would blow up the
    # minimal-norm solution along numerically invisible subspaces.
    if c_mat.shape[0] == 0:
        x_part = np.zeros(n, dtype=complex)
        null = np.eye(n, dtype=complex)
    else:
        x_part = np.linalg.lstsq(c_mat, d, rcond=tol.rank_rtol)[0]
        gap = frob(c_mat @ x_part - d)
        scale = 1.0 + frob(d) + frob(c_mat) * frob(x_part)
        if gap > tol.residual_tol * scale:
            raise InconsistentConstraints(
                f"constraint residual {gap:.3e} exceeds {tol.residual_tol:.1e} * {scale:.3e}"
            )
        null = rank_decomposition(c_mat, tol).kernel

    if null.shape[1]:
        z = np.linalg.lstsq(m_mat @ null, t - m_mat @ x_part, rcond=tol.rank_rtol)[0]
        x = x_part + null @ z
    else:
        x = x_part

    # First-order optimality: the gradient of the objective must be
    # orthogonal to the feasible directions.
    grad = m_mat.conj().T @ (m_mat @ x - t)
    kkt = frob(null.conj().T @ grad)
    kkt_scale = 1.0 + frob(m_mat) * (frob(m_mat) * frob(x) + frob(t))
    if kkt > tol.residual_tol * kkt_scale:
        raise ArithmeticError(f"KKT residual {kkt:.3e} above tolerance")
    return x


# ---------------------------------------------------------------------------
# Quaternions and their complex embedding
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Quaternion:
    """Quaternion a + b*i + c*j + d*k with real components."""

    a: float = 0.0
    b: float = 0.0
    c: float = 0.0
    d: float = 0.0

    def __post_init__(self):
        if not all(np.isfinite((self.a, self.b, self.c, self.d))):
            raise ValueError("quaternion components must be finite")

    def conjugate(self) -> "Quaternion":
        return Quaternion(self.a, -self.b, -self.c, -self.d)

    def __add__(self, other: "Quaternion") -> "Quaternion":
        return Quaternion(self.a + other.a, self.b + other.b,
                          self.c + other.c, self.d + other.d)

    def __mul__(self, other: "Quaternion") -> "Quaternion":
        a1, b1, c1, d1 = self.a, self.b, self.c, self.d
        a2, b2, c2, d2 = other.a, other.b, other.c, other.d
        return Quaternion(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )

    def norm(self) -> float:
        return float(np.sqrt(self.a**2 + self.b**2 + self.c**2 + self.d**2))

    def as_array(self) -> np.ndarray:
        return np.array([self.a, self.b, self.c, self.d])


def _hamilton(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Componentwise Hamilton product of (..., 4) arrays."""
    a1, b1, c1, d1 = np.moveaxis(p, -1, 0)
    a2, b2, c2, d2 = np.moveaxis(q, -1, 0)
    return np.stack(
        [
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        ],
        axis=-1,
    )


class QuaternionMatrix:
    """Dense quaternion matrix stored as a (rows, cols, 4) float array.

    Entry (i, j) is data[i, j] = (a, b, c, d) for a + b*i + c*j + d*k.  The
    complex embedding maps each entry to the 2x2 block
    ``[[a+bi, c+di], [-c+di, a-bi]]``; it is an algebra homomorphism and
    intertwines quaternionic conjugate-transposition with the complex adjoint.
    """

    def __init__(self, data):
        arr = np.array(data, dtype=float)
        if arr.ndim != 3 or arr.shape[2] != 4:
            raise ShapeMismatch("expected an array of shape (rows, cols, 4)")
        if arr.size and not np.all(np.isfinite(arr)):
            raise ValueError("quaternion matrix contains non-finite entries")
        self.data = arr
        self.data.setflags(write=False)

    # -- construction ------------------------------------------------------

    @classmethod
    def from_entries(cls, entries) -> "QuaternionMatrix":
        """Build from a nested list of Quaternion objects or 4-sequences."""
        rows = []
        for row in entries:
            rows.append([
                q.as_array() if isinstance(q, Quaternion) else np.asarray(q, float)
                for q in row
            ])
        return cls(np.array(rows, dtype=float).reshape(len(rows), -1, 4))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "QuaternionMatrix":
        return cls(np.zeros((rows, cols, 4)))

    @classmethod
    def eye(cls, n: int) -> "QuaternionMatrix":
        data = np.zeros((n, n, 4))
        data[np.arange(n), np.arange(n), 0] = 1.0
        return cls(data)

    # -- basic structure ---------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape[0], self.data.shape[1]

    def entry(self, i: int, j: int) -> Quaternion:
        return Quaternion(*self.data[i, j])

    def conjugate_transpose(self) -> "QuaternionMatrix":
        out = np.transpose(self.data, (1, 0, 2)).copy()
        out[..., 1:] *= -1.0
        return QuaternionMatrix(out)

    def __matmul__(self, other: "QuaternionMatrix") -> "QuaternionMatrix":
        if self.shape[1] != other.shape[0]:
            raise ShapeMismatch(f"cannot multiply {self.shape} by {other.shape}")
        # sum_k p[i,k] * q[k,j], Hamilton product per term
        prod = _hamilton(self.data[:, :, None, :], other.data[None, :, :, :])
        return QuaternionMatrix(prod.sum(axis=1))

    def norm(self) -> float:
        return frob(self.data)

    def allclose(self, other: "QuaternionMatrix", atol: float = 1e-12) -> bool:
        return self.shape == other.shape and bool(
            np.allclose(self.data, other.data, atol=atol)
        )

    # -- complex embedding -------------------------------------------------

    def embed(self) -> np.ndarray:
        """Complex matrix of shape (2*rows, 2*cols) realizing this matrix."""
        rows, cols = self.shape
        a, b, c, d = np.moveaxis(self.data, -1, 0)
        z = a + 1j * b
        w = c + 1j * d
        out = np.empty((2 * rows, 2 * cols), dtype=complex)
        out[0::2, 0::2] = z
        out[0::2, 1::2] = w
        out[1::2, 0::2] = -w.conj()
        out[1::2, 1::2] = z.conj()
        return out

    @classmethod
    def from_embedding(cls, m, tol: Tolerance = DEFAULT_TOL) -> "QuaternionMatrix":
        """Invert :meth:`embed`, checking the block structure numerically.

        Raises EmbeddingMismatch if ``m`` is not within tolerance of the image
        of the embedding.
        """
        m = as_matrix(m)
        if m.shape[0] % 2 or m.shape[1] % 2:
            raise EmbeddingMismatch("embedded matrix must have even dimensions")
        z = m[0::2, 0::2]
        w = m[0::2, 1::2]
        z2 = m[1::2, 1::2]
        w2 = m[1::2, 0::2]
        defect = max(frob(z2 - z.conj()), frob(w2 + w.conj()))
        if defect > tol.residual_tol * (1.0 + frob(m)):
            raise EmbeddingMismatch(
                f"block-structure defect {defect:.3e} exceeds tolerance"
            )
        data = np.stack([z.real, z.imag, w.real, w.imag], axis=-1)
        return cls(data)
