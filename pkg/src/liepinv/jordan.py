"""Jordan pairs over short graded algebras: triple products and Moore-Penrose inverses.

A short grading g = g_{-1} + g_0 + g_{+1} makes (g_{+1}, g_{-1}) a Jordan
pair under {x, y, z} = [[x, y], z] / 2.  The module provides the Killing
pairing Tr{x, y, .}, Cartan involutions (antilinear maps exchanging the two
components), the positive Hermitian form H(x, y) = B(x, omega(y)), and the
Moore-Penrose inverse characterized by

    (*)   {A A+ A} = A,  {A+ A A+} = A+,
    (**)  {A A+ .} and {A+ A .} are Hermitian for H.

The primary construction route is the sl2 one (norm-minimal characteristic);
a damped Newton-Schulz iteration on the pair equations is provided as an
independent refinement oracle.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotShortGrading, WrongComponent
from .graded import GradedAlgebra, bracket, mp_inverse_short
from .numcore import Tolerance, as_matrix, frob

__all__ = [
    "JordanPair",
    "CartanInvolution",
    "triple_product",
    "killing_pairing",
    "pairing_matrix",
    "standard_cartan_involution",
    "cartan_involution_from_group",
    "mp_inverse_jordan",
    "verify_jordan_mp",
    "JordanMpReport",
    "jordan_mp_fixed_point",
]


class JordanPair:
    """The pair (V+, V-) = (g_{+1}, g_{-1}) of a short graded algebra."""

    def __init__(self, algebra: GradedAlgebra):
        if not algebra.is_short:
            raise NotShortGrading(f"{algebra!r} has degrees {algebra.degrees}")
        if algebra.degree_dimension(1) == 0:
            raise NotShortGrading(f"{algebra!r} has trivial degree +1 part")
        self.algebra = algebra
        self.basis_plus = algebra.basis(1)
        self.basis_minus = algebra.basis(-1)

    @property
    def dim(self) -> int:
        return self.basis_plus.shape[0]

    def component_of(self, x, tol: Tolerance | None = None) -> int:
        """+1 or -1 depending on which component x lies in (0 for zero)."""
        degree = self.algebra.homogeneous_degree(x, tol)
        if degree is None:
            return 0
        if degree not in (-1, 1):
            raise WrongComponent(f"element has degree {degree}, not +-1")
        return degree

    def require_component(self, x, sign: int, tol: Tolerance | None = None) -> np.ndarray:
        x = as_matrix(x)
        got = self.component_of(x, tol)
        if got not in (0, sign):
            raise WrongComponent(f"element lies in V_{got:+d}, expected V_{sign:+d}")
        return x

    def _basis(self, sign: int) -> np.ndarray:
        return self.basis_plus if sign > 0 else self.basis_minus

    def coords(self, x, sign: int) -> np.ndarray:
        return np.einsum("kab,ab->k", self._basis(sign).conj(), as_matrix(x))

    def from_coords(self, v, sign: int) -> np.ndarray:
        return np.einsum("k,kab->ab", np.asarray(v, dtype=complex), self._basis(sign))

    def operator_matrix(self, x, y, sign: int) -> np.ndarray:
        """Coordinate matrix of z -> {x, y, z} on V_sign (x in V_sign, y opposite)."""
        basis = self._basis(sign)
        xy = bracket(as_matrix(x), as_matrix(y))
        images = 0.5 * (
            np.einsum("ab,kbc->kac", xy, basis) - np.einsum("kab,bc->kac", basis, xy)
        )
        # column k holds the coordinates of the image of the k-th basis element
        return np.einsum("jab,kab->jk", basis.conj(), images)


def triple_product(pair: JordanPair, x, y, z, tol: Tolerance | None = None) -> np.ndarray:
    """{x, y, z} = [[x, y], z] / 2 with x, z in one component and y in the other."""
    zero = np.zeros((pair.algebra.ambient_dim,) * 2, dtype=complex)
    sign = pair.component_of(x, tol) or pair.component_of(z, tol)
    if sign == 0:
        sign = 1
    x = pair.require_component(x, sign, tol)
    z = pair.require_component(z, sign, tol)
    y = pair.require_component(y, -sign, tol)
    if frob(x) == 0.0 or frob(y) == 0.0:
        # [[x,y],z] already vanishes; avoid needless work
        if frob(z) == 0.0:
            return zero
    return 0.5 * bracket(bracket(x, y), z)


def killing_pairing(pair: JordanPair, x, y, tol: Tolerance | None = None) -> complex:
    """B(x, y) = Tr of z -> {x, y, z} on the component of x."""
    sign = pair.component_of(x, tol)
    if sign == 0:
        return 0.0 + 0.0j
    x = pair.require_component(x, sign, tol)
    y = pair.require_component(y, -sign, tol)
    return complex(np.trace(pair.operator_matrix(x, y, sign)))


def pairing_matrix(pair: JordanPair) -> np.ndarray:
    """Matrix K[i, j] = B(b+_i, b-_j) of the Killing pairing in the fixed bases."""
    dim = pair.dim
    out = np.empty((dim, pair.basis_minus.shape[0]), dtype=complex)
    for j in range(pair.basis_minus.shape[0]):
        for i in range(dim):
            out[i, j] = np.trace(
                pair.operator_matrix(pair.basis_plus[i], pair.basis_minus[j], 1)
            )
    return out


@dataclass(frozen=True)
class CartanInvolution:
    """Antilinear involution exchanging V+ and V-, stored as coordinate matrices.

    omega(x) for x in V+ has V- coordinates omega_plus @ conj(coords(x)), and
    symmetrically for omega_minus; omega is triple-product equivariant and
    H(x) = B(x, omega(x)) is positive definite.
    """

    omega_plus: np.ndarray
    omega_minus: np.ndarray

    def apply(self, pair: JordanPair, x, tol: Tolerance | None = None) -> np.ndarray:
        sign = pair.component_of(x, tol)
        if sign == 0:
            return np.zeros_like(as_matrix(x))
        mat = self.omega_plus if sign > 0 else self.omega_minus
        return pair.from_coords(mat @ pair.coords(x, sign).conj(), -sign)


def _involution_from_map(pair: JordanPair, apply_plus, apply_minus) -> CartanInvolution:
    dim_p = pair.dim
    dim_m = pair.basis_minus.shape[0]
    omega_plus = np.empty((dim_m, dim_p), dtype=complex)
    for i in range(dim_p):
        omega_plus[:, i] = pair.coords(apply_plus(pair.basis_plus[i]), -1)
    omega_minus = np.empty((dim_p, dim_m), dtype=complex)
    for i in range(dim_m):
        omega_minus[:, i] = pair.coords(apply_minus(pair.basis_minus[i]), 1)
    return CartanInvolution(omega_plus, omega_minus)


def standard_cartan_involution(pair: JordanPair) -> CartanInvolution:
    """The involution induced by the compact conjugation: omega(x) = adjoint(x)."""
    conj_t = lambda x: x.conj().T  # noqa: E731
    return _involution_from_map(pair, conj_t, conj_t)


def cartan_involution_from_group(pair: JordanPair, g) -> CartanInvolution:
    """Involution induced by the compact form conjugated with a Levi group element g."""
    g = as_matrix(g)
    g_inv = np.linalg.inv(g)
    move = lambda x: g @ (g_inv @ x @ g).conj().T @ g_inv  # noqa: E731
    return _involution_from_map(pair, move, move)


def gram_matrix(pair: JordanPair, inv: CartanInvolution, sign: int = 1) -> np.ndarray:
    """Gram matrix of H(x, y) = B(x, omega(y)) on the chosen component."""
    k = pairing_matrix(pair)
    return k @ inv.omega_plus if sign > 0 else k.T @ inv.omega_minus


@dataclass(frozen=True)
class JordanMpReport:
    """Residuals of (*) and the Hermitian defects of the two operators in (**)."""

    recover_a: float
    recover_x: float
    hermitian_ax: float
    hermitian_xa: float
    passed: bool

    def residuals(self) -> tuple[float, float, float, float]:
        return (self.recover_a, self.recover_x, self.hermitian_ax, self.hermitian_xa)

    def max_residual(self) -> float:
        return max(self.residuals())


def mp_inverse_jordan(
    pair: JordanPair, inv: CartanInvolution, a, tol: Tolerance | None = None
) -> np.ndarray:
    """The unique element satisfying (*) and (**), via the sl2 route.

    Existence and uniqueness come with the short grading; the result is
    verified against the pair equations before being returned.
    """
    tol = tol or pair.algebra.tol
    a = as_matrix(a)
    if frob(a) == 0.0:
        return np.zeros_like(a)
    sign = pair.component_of(a, tol)
    a = pair.require_component(a, sign, tol)
    x = mp_inverse_short(pair.algebra, a, tol)
    report = verify_jordan_mp(pair, inv, a, x, tol)
    if not report.passed:
        raise ArithmeticError(
            f"sl2-route inverse failed the pair equations: {report.residuals()}"
        )
    return x


def verify_jordan_mp(
    pair: JordanPair, inv: CartanInvolution, a, x, tol: Tolerance | None = None
) -> JordanMpReport:
    """Evaluate (*) and (**) for a candidate pair (a, x)."""
    tol = tol or pair.algebra.tol
    a = as_matrix(a)
    x = as_matrix(x)
    sign = pair.component_of(a, tol)
    if sign == 0:
        sign = -pair.component_of(x, tol) or 1
    r1 = frob(triple_product(pair, a, x, a, tol) - a) / (1.0 + frob(a))
    r2 = frob(triple_product(pair, x, a, x, tol) - x) / (1.0 + frob(x))

    op_ax = pair.operator_matrix(a, x, sign)
    op_xa = pair.operator_matrix(x, a, -sign)
    gram_a = gram_matrix(pair, inv, sign)
    gram_x = gram_matrix(pair, inv, -sign)
    d1 = op_ax.T @ gram_a - gram_a @ op_ax.conj()
    d2 = op_xa.T @ gram_x - gram_x @ op_xa.conj()
    r3 = frob(d1) / (1.0 + frob(gram_a) * frob(op_ax))
    r4 = frob(d2) / (1.0 + frob(gram_x) * frob(op_xa))
    passed = max(r1, r2, r3, r4) <= tol.residual_tol
    return JordanMpReport(r1, r2, r3, r4, passed)


def jordan_mp_fixed_point(
    pair: JordanPair,
    inv: CartanInvolution,
    a,
    scale: float = 1.0,
    max_iter: int = 150,
    tol: Tolerance | None = None,
) -> np.ndarray:
    """Solve the pair equations by a guarded Newton-Schulz refinement.

    Iterates X <- 2X - {X, A, X} from X0 = scale * omega(A) / nu, where nu is
    the operator norm of z -> {A, omega(A), z}; any scale in (0, 1] converges
    to the Moore-Penrose inverse.  The raw iteration eventually amplifies
    roundoff along directions annihilated by A (components there double each
    step), so the refinement tracks the best iterate by recovery residual and
    stops as soon as the residual turns upward after convergence.  This route
    is independent of the sl2 construction and is used to test uniqueness.
    """
    tol = tol or pair.algebra.tol
    a = as_matrix(a)
    if frob(a) == 0.0:
        return np.zeros_like(a)
    if not 0.0 < scale <= 1.0:
        raise ValueError("scale must lie in (0, 1]")
    sign = pair.component_of(a, tol)
    a = pair.require_component(a, sign, tol)
    omega_a = inv.apply(pair, a, tol)
    nu = np.linalg.norm(pair.operator_matrix(a, omega_a, sign), 2)
    x = (scale / nu) * omega_a

    best = x
    best_res = np.inf
    for _ in range(max_iter):
        cubic = 0.5 * bracket(bracket(x, a), x)
        res = frob(cubic - x) / (1.0 + frob(x))
        if res < best_res:
            best, best_res = x, res
        if best_res <= 1e-15:
            break
        if res > 10.0 * best_res and best_res <= 1e-8:
            break  # roundoff takeover after convergence
        # project back into the opposite component: ambient matmul roundoff
        # outside it would otherwise be doubled every step
        x = pair.from_coords(pair.coords(2.0 * x - cubic, -sign), -sign)
    return best
