"""Classical Moore-Penrose inverse over C, R and H, with a four-condition verifier.

Two independent constructions are provided on purpose:

* :func:`pinv` restricts the map to the Hermitian orthocomplement of its
  kernel, inverts that bijection onto the image, and extends by zero on the
  orthocomplement of the image (built from kernel/image bases only);
* :func:`pinv_factorization` goes through a column-pivoted QR rank
  factorization A = B C and the closed formula C*(CC*)^-1 (B*B)^-1 B*.

Their agreement is what turns the uniqueness of the Moore-Penrose inverse
into a test instead of an assumption.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import ShapeMismatch
from .numcore import (
    DEFAULT_TOL,
    QuaternionMatrix,
    Tolerance,
    as_matrix,
    frob,
    rank_decomposition,
)

__all__ = [
    "PenroseReport",
    "pinv",
    "pinv_factorization",
    "verify_penrose",
    "pinv_real",
    "pinv_quaternion",
]


@dataclass(frozen=True)
class PenroseReport:
    """Relative residuals of the four Penrose conditions for a pair (A, X).

    recover_a   |AXA - A| / (1 + |A|)
    recover_x   |XAX - X| / (1 + |X|)
    hermitian_ax  |AX - (AX)*| / (1 + |AX|)
    hermitian_xa  |XA - (XA)*| / (1 + |XA|)

    Each residual is normalized by its own natural scale so that ``passed``
    is symmetric under swapping A and X.
    """

    recover_a: float
    recover_x: float
    hermitian_ax: float
    hermitian_xa: float
    passed: bool

    def residuals(self) -> tuple[float, float, float, float]:
        return (self.recover_a, self.recover_x, self.hermitian_ax, self.hermitian_xa)

    def max_residual(self) -> float:
        return max(self.residuals())


def pinv(a, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Moore-Penrose inverse built intrinsically from kernel and image bases."""
    a = as_matrix(a)
    m, n = a.shape
    dec = rank_decomposition(a, tol)
    if dec.rank == 0:
        return np.zeros((n, m), dtype=complex)
    # Orthocomplement of the kernel = kernel of the adjoint of the kernel basis.
    coimage = rank_decomposition(dec.kernel.conj().T, tol).kernel  # (n, r)
    restricted = dec.image.conj().T @ a @ coimage                  # (r, r), invertible
    return coimage @ np.linalg.solve(restricted, dec.image.conj().T)


def pinv_factorization(a, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Moore-Penrose inverse via a rank factorization from column-pivoted QR."""
    a = as_matrix(a)
    m, n = a.shape
    if m == 0 or n == 0:
        return np.zeros((n, m), dtype=complex)
    q, r, piv = scipy.linalg.qr(a, mode="economic", pivoting=True)
    diag = np.abs(np.diag(r))
    top = diag[0] if diag.size else 0.0
    rank = int(np.sum(diag > tol.rank_rtol * top))
    if rank == 0:
        return np.zeros((n, m), dtype=complex)
    b = q[:, :rank]                      # orthonormal columns, so B*B = I
    c = np.zeros((rank, n), dtype=complex)
    c[:, piv] = r[:rank, :]
    ch = c.conj().T
    return ch @ np.linalg.solve(c @ ch, b.conj().T)


def verify_penrose(a, x, tol: Tolerance = DEFAULT_TOL) -> PenroseReport:
    """Evaluate the four Penrose conditions for the pair (a, x)."""
    a = as_matrix(a)
    x = as_matrix(x)
    if x.shape != (a.shape[1], a.shape[0]):
        raise ShapeMismatch(
            f"candidate inverse must have shape {(a.shape[1], a.shape[0])}, got {x.shape}"
        )
    ax = a @ x
    xa = x @ a
    r1 = frob(ax @ a - a) / (1.0 + frob(a))
    r2 = frob(xa @ x - x) / (1.0 + frob(x))
    r3 = frob(ax - ax.conj().T) / (1.0 + frob(ax))
    r4 = frob(xa - xa.conj().T) / (1.0 + frob(xa))
    passed = max(r1, r2, r3, r4) <= tol.residual_tol
    return PenroseReport(r1, r2, r3, r4, passed)


def pinv_real(a, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Moore-Penrose inverse of a real matrix, returned as a real matrix.

    Computed through the complex engine; the discarded imaginary mass must be
    below tolerance (it is zero in exact arithmetic).
    """
    a = np.asarray(a, dtype=float)
    result = pinv(as_matrix(a), tol)
    drift = frob(result.imag)
    if drift > tol.residual_tol * (1.0 + frob(result)):
        raise ArithmeticError(f"imaginary drift {drift:.3e} on a real input")
    return result.real.copy()


def pinv_quaternion(q: QuaternionMatrix, tol: Tolerance = DEFAULT_TOL) -> QuaternionMatrix:
    """Moore-Penrose inverse of a quaternion matrix via the complex embedding.

    The embedding intertwines quaternionic adjoints with complex adjoints, so
    the complex Penrose inverse of the embedded matrix is the embedding of the
    quaternionic one; EmbeddingMismatch from the un-embedding would signal an
    internal bug.
    """
    return QuaternionMatrix.from_embedding(pinv(q.embed(), tol), tol)
