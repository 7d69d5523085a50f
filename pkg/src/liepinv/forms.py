"""Closed-form Moore-Penrose inverses for forms, vectors and Hermitian matrices.

Covers the intrinsic constructions that accompany the short gradings of the
orthogonal and symplectic algebras: symmetric/skew bilinear forms, vectors in
a space with a bilinear scalar product, vectors in a real pseudo-Euclidean
space, and (skew-)Hermitian matrices over R, C and H.  Each inverse comes
with a verifier that evaluates its defining conditions, most of them through
an explicit sl2-triple in the matching block realization.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import classical
from .errors import ShapeMismatch, SymmetryViolation
from .graded import GradedAlgebra, Sl2Triple, bracket
from .numcore import DEFAULT_TOL, QuaternionMatrix, Tolerance, as_matrix, frob, rank_decomposition

__all__ = [
    "SYMMETRIC",
    "SKEW",
    "BilinearForm",
    "form_pinv",
    "verify_form_pinv",
    "vector_pinv",
    "vector_triple",
    "verify_vector_pinv",
    "PseudoEuclideanSpace",
    "pseudo_euclidean_pinv",
    "pseudo_euclidean_triple",
    "verify_pseudo_euclidean_pinv",
    "hermitian_pinv",
    "verify_hermitian_pinv",
    "TripleReport",
    "HermitianPinvReport",
]

SYMMETRIC = "symmetric"
SKEW = "skew"


@dataclass(frozen=True)
class BilinearForm:
    """A symmetric or skew-symmetric bilinear form given by its Gram matrix."""

    symmetry: str
    gram: np.ndarray

    def __post_init__(self):
        if self.symmetry not in (SYMMETRIC, SKEW):
            raise ValueError(f"symmetry must be {SYMMETRIC!r} or {SKEW!r}")
        gram = as_matrix(self.gram)
        if gram.shape[0] != gram.shape[1]:
            raise ShapeMismatch("Gram matrix must be square")
        sign = 1.0 if self.symmetry == SYMMETRIC else -1.0
        defect = frob(gram.T - sign * gram)
        if defect > DEFAULT_TOL.residual_tol * (1.0 + frob(gram)):
            raise SymmetryViolation(
                f"Gram matrix is not {self.symmetry} (defect {defect:.3e})"
            )
        object.__setattr__(self, "gram", gram)

    @property
    def dim(self) -> int:
        return self.gram.shape[0]


def form_pinv(form: BilinearForm, tol: Tolerance = DEFAULT_TOL) -> BilinearForm:
    """Moore-Penrose inverse form, built from the kernel/annihilator geometry.

    With K an orthonormal kernel basis of the Gram matrix W, the annihilator
    of the kernel is spanned by an orthonormal A with ker(K^T) = span(A); the
    inverse of the induced nondegenerate form lives there and is extended by
    zero on the Hermitian orthocomplement:

        W+ = conj(A) (A* W conj(A))^{-1} A*.

    The result has the same symmetry and satisfies the Penrose conditions
    with W, hence coincides with the matrix pseudoinverse of W.
    """
    w = form.gram
    n = form.dim
    kernel = rank_decomposition(w, tol).kernel
    if kernel.shape[1] == n:
        return BilinearForm(form.symmetry, np.zeros((n, n), dtype=complex))
    ann = rank_decomposition(kernel.T, tol).kernel  # basis of Ann(Ker w)
    ann_c = ann.conj()
    core = ann.conj().T @ w @ ann_c
    w_plus = ann_c @ np.linalg.solve(core, ann.conj().T)
    sign = 1.0 if form.symmetry == SYMMETRIC else -1.0
    sym_defect = frob(w_plus.T - sign * w_plus)
    if sym_defect > tol.residual_tol * (1.0 + frob(w_plus)):
        raise SymmetryViolation(
            f"inverse form lost its symmetry class (defect {sym_defect:.3e})"
        )
    w_plus = (w_plus + sign * w_plus.T) / 2.0
    return BilinearForm(form.symmetry, w_plus)


def verify_form_pinv(
    form: BilinearForm, candidate: BilinearForm, tol: Tolerance = DEFAULT_TOL
) -> classical.PenroseReport:
    """Penrose residuals of the Gram matrices (symmetry classes must match)."""
    if candidate.symmetry != form.symmetry:
        raise SymmetryViolation("candidate inverse has the wrong symmetry class")
    return classical.verify_penrose(form.gram, candidate.gram, tol)


# ---------------------------------------------------------------------------
# Vectors with a bilinear scalar product
# ---------------------------------------------------------------------------


def _as_vector(v) -> np.ndarray:
    v = np.asarray(v, dtype=complex).reshape(-1)
    if v.size and not np.all(np.isfinite(v)):
        raise ValueError("vector contains non-finite entries")
    return v


def vector_pinv(v, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Moore-Penrose inverse of a vector for the standard bilinear product.

    Three cases: 2v/(v,v) when (v,v) is nonzero; conj(v)/(conj(v),v) for a
    nonzero isotropic v; zero at zero.  The isotropy decision is relative:
    |(v,v)| <= residual_tol * (conj(v), v).  Near-isotropic vectors are
    genuine discontinuity points of the formula.
    """
    v = _as_vector(v)
    herm = float(np.vdot(v, v).real)
    if herm == 0.0:
        return np.zeros_like(v)
    bil = complex(v @ v)
    if abs(bil) > tol.residual_tol * herm:
        return 2.0 * v / bil
    return v.conj() / herm


def vector_triple(v, w) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """The triple (e_v, [e_v, f_w], f_w) in the short vector grading of so_{d+2}."""
    v = _as_vector(v)
    w = _as_vector(w)
    if v.shape != w.shape or v.size == 0:
        raise ShapeMismatch("vectors must share a positive dimension")
    alg = GradedAlgebra("so", (1, v.size, 1))
    e = alg.element_from_block(1, 2, v.reshape(1, -1))
    f = alg.element_from_block(2, 1, w.reshape(-1, 1))
    return e, bracket(e, f), f


@dataclass(frozen=True)
class TripleReport:
    """sl2 residuals plus the compact-form defect of the characteristic."""

    triple_residual: float
    characteristic_defect: float
    passed: bool


def verify_vector_pinv(v, w, tol: Tolerance = DEFAULT_TOL) -> TripleReport:
    """Check that w inverts v: homogeneous sl2-triple with Hermitian h."""
    v = _as_vector(v)
    w = _as_vector(w)
    if frob(v) == 0.0 and frob(w) == 0.0:
        return TripleReport(0.0, 0.0, True)
    e, h, f = vector_triple(v, w)
    triple = Sl2Triple.from_elements(e, h, f)
    defect = frob(h - h.conj().T) / (1.0 + frob(h))
    passed = triple.max_residual() <= tol.residual_tol and defect <= tol.residual_tol
    return TripleReport(triple.max_residual(), defect, passed)


# ---------------------------------------------------------------------------
# Pseudo-Euclidean vectors
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PseudoEuclideanSpace:
    """R^{n+m} with the product {u, v} = (u, I v), I = diag(Id_n, -Id_m)."""

    n: int
    m: int

    def __post_init__(self):
        if self.n < 0 or self.m < 0 or self.n + self.m == 0:
            raise ValueError("signature must be nonnegative with positive total dimension")

    @property
    def dim(self) -> int:
        return self.n + self.m

    @property
    def signature_matrix(self) -> np.ndarray:
        return np.diag(np.concatenate([np.ones(self.n), -np.ones(self.m)]))


def _as_real_vector(space: PseudoEuclideanSpace, v) -> np.ndarray:
    v = np.asarray(v, dtype=float).reshape(-1)
    if v.shape[0] != space.dim:
        raise ShapeMismatch(f"vector must have dimension {space.dim}, got {v.shape[0]}")
    if v.size and not np.all(np.isfinite(v)):
        raise ValueError("vector contains non-finite entries")
    return v


def pseudo_euclidean_pinv(
    space: PseudoEuclideanSpace, v, tol: Tolerance = DEFAULT_TOL
) -> np.ndarray:
    """Three-case inverse for pseudo-Euclidean vectors.

    -v/{v,v} off the null cone; -Iv/(2(v,v)) for nonzero null vectors; zero
    at zero.  Signs follow the source convention for this grading; see
    :func:`pseudo_euclidean_triple` for the normalization that realizes them
    as an sl2-triple.
    """
    v = _as_real_vector(space, v)
    euclid = float(v @ v)
    if euclid == 0.0:
        return np.zeros_like(v)
    ivector = space.signature_matrix @ v
    pseudo = float(v @ ivector)
    if abs(pseudo) > tol.residual_tol * euclid:
        return -v / pseudo
    return -ivector / (2.0 * euclid)


def pseudo_euclidean_triple(
    space: PseudoEuclideanSpace, v, w
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Realize (v, w) as (e, [e, f], f) in the graded realization of so(n+1, m+1).

    The ambient form is [[0,0,1],[0,I,0],[1,0,0]] on R^{1+(n+m)+1}; a vector
    v enters degree +1 as (row v, column -Iv), and the degree -1 leg of the
    inverse w is labeled by p = -2 I w, the normalization under which the
    stated inverse formulas satisfy the sl2 relations with h in the symmetric
    part of the Levi.
    """
    v = _as_real_vector(space, v)
    w = _as_real_vector(space, w)
    d = space.dim
    ivec = space.signature_matrix
    e = np.zeros((d + 2, d + 2))
    e[0, 1 : d + 1] = v
    e[1 : d + 1, d + 1] = -ivec @ v
    p = -2.0 * (ivec @ w)
    f = np.zeros((d + 2, d + 2))
    f[1 : d + 1, 0] = p
    f[d + 1, 1 : d + 1] = -(ivec @ p)
    return e, bracket(e, f), f


def verify_pseudo_euclidean_pinv(
    space: PseudoEuclideanSpace, v, w, tol: Tolerance = DEFAULT_TOL
) -> TripleReport:
    """Check the defining conditions: sl2 relations with real symmetric h."""
    v = _as_real_vector(space, v)
    w = _as_real_vector(space, w)
    if frob(v) == 0.0 and frob(w) == 0.0:
        return TripleReport(0.0, 0.0, True)
    e, h, f = pseudo_euclidean_triple(space, v, w)
    triple = Sl2Triple.from_elements(e, h, f)
    defect = (frob(h - h.T) + frob(h.imag)) / (1.0 + frob(h))
    passed = triple.max_residual() <= tol.residual_tol and defect <= tol.residual_tol
    return TripleReport(triple.max_residual(), defect, passed)


# ---------------------------------------------------------------------------
# Hermitian and skew-Hermitian matrices over R, C, H
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HermitianPinvReport:
    """Residuals of A A+ A = A, A+ A A+ = A+, [A, A+] = 0 plus class defect."""

    recover_a: float
    recover_x: float
    commutator: float
    class_defect: float
    passed: bool

    def max_residual(self) -> float:
        return max(self.recover_a, self.recover_x, self.commutator, self.class_defect)


def _hermitian_class(a: np.ndarray, tol: Tolerance) -> str:
    scale = 1.0 + frob(a)
    herm = frob(a - a.conj().T)
    skew = frob(a + a.conj().T)
    if herm <= tol.residual_tol * scale:
        return "hermitian"
    if skew <= tol.residual_tol * scale:
        return "skew-hermitian"
    raise SymmetryViolation(
        f"matrix is neither Hermitian nor skew-Hermitian "
        f"(defects {herm:.3e} / {skew:.3e})"
    )


def hermitian_pinv(a, tol: Tolerance = DEFAULT_TOL):
    """Pseudoinverse of a (skew-)Hermitian matrix, staying in its class.

    Accepts a complex/real ndarray or a QuaternionMatrix (handled through the
    complex embedding, which translates the symmetry class verbatim).  The
    result commutes with the input because both are functions of the same
    normal matrix.
    """
    if isinstance(a, QuaternionMatrix):
        emb = a.embed()
        _hermitian_class(emb, tol)
        return QuaternionMatrix.from_embedding(hermitian_pinv(emb, tol), tol)
    a = as_matrix(a)
    kind = _hermitian_class(a, tol)
    x = classical.pinv(a, tol)
    sign = 1.0 if kind == "hermitian" else -1.0
    x = (x + sign * x.conj().T) / 2.0
    return x


def verify_hermitian_pinv(a, x, tol: Tolerance = DEFAULT_TOL) -> HermitianPinvReport:
    """Evaluate the three commuting-pseudoinverse conditions for (a, x)."""
    if isinstance(a, QuaternionMatrix):
        a = a.embed()
    if isinstance(x, QuaternionMatrix):
        x = x.embed()
    a = as_matrix(a)
    x = as_matrix(x)
    if x.shape != (a.shape[1], a.shape[0]):
        raise ShapeMismatch("candidate inverse has the wrong shape")
    kind = _hermitian_class(a, tol)
    sign = 1.0 if kind == "hermitian" else -1.0
    r1 = frob(a @ x @ a - a) / (1.0 + frob(a))
    r2 = frob(x @ a @ x - x) / (1.0 + frob(x))
    comm = frob(a @ x - x @ a) / (1.0 + frob(a) * frob(x))
    cls = frob(x - sign * x.conj().T) / (1.0 + frob(x))
    passed = max(r1, r2, comm, cls) <= tol.residual_tol
    return HermitianPinvReport(r1, r2, comm, cls, passed)
