"""Moore-Penrose theory for maps into a space with a symmetric or symplectic form.

For F in Hom(U, V) with V carrying a nondegenerate symmetric or skew form,
the orbit of F under the natural group action is labeled by (a, b): the rank
of F and the radical dimension of the form restricted to the image.  An
inverse G satisfying

    (*)   GF and FG - (FG)#  are Hermitian,
    (**)  F = 2 FGF - (FG)# F   and   G = 2 GFG - G (FG)#,

exists exactly when b = 0 or b = a; both constructive branches are
implemented, and the excluded middle is certified numerically through the
graded embedding on U* + V + U (the minimal characteristic of the embedded
element has a strictly positive Hermitian defect).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateForm, NotMoorePenroseOrbit, ShapeMismatch
from .forms import SYMMETRIC, BilinearForm
from .graded import GradedAlgebra, minimal_characteristic
from .numcore import DEFAULT_TOL, Tolerance, as_matrix, frob, rank_decomposition

__all__ = [
    "OrbitLabel",
    "FormAdjointReport",
    "sharp",
    "classify_orbit",
    "mp_inverse_homform",
    "verify_homform",
    "embedding_algebra",
    "hom_element",
    "hom_coelement",
    "CLASSICAL_MAXIMAL_PARABOLIC_TABLE",
]


@dataclass(frozen=True)
class OrbitLabel:
    """Orbit invariants: a = rank(F), b = dim of the radical of the restricted form."""

    a: int
    b: int

    def __post_init__(self):
        if not 0 <= self.b <= self.a:
            raise ValueError(f"invalid orbit label (a={self.a}, b={self.b})")

    @property
    def has_inverse(self) -> bool:
        return self.b == 0 or self.b == self.a


@dataclass(frozen=True)
class FormAdjointReport:
    """Relative residuals of conditions (*) and (**) for a pair (F, G)."""

    residual_gf_hermitian: float
    residual_fg_diff_hermitian: float
    residual_star1: float
    residual_star2: float
    passed: bool

    def residuals(self) -> tuple[float, float, float, float]:
        return (
            self.residual_gf_hermitian,
            self.residual_fg_diff_hermitian,
            self.residual_star1,
            self.residual_star2,
        )

    def max_residual(self) -> float:
        return max(self.residuals())


def sharp(form: BilinearForm, a, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Adjoint with respect to the form: omega(Ax, y) = omega(x, A# y).

    Computed as gram^{-1} A^T gram; the form must be nondegenerate.
    """
    a = as_matrix(a)
    w = form.gram
    if a.shape != w.shape:
        raise ShapeMismatch(f"operator must be {w.shape}, got {a.shape}")
    if rank_decomposition(w, tol).rank < form.dim:
        raise DegenerateForm("sharp adjoint requires a nondegenerate form")
    return np.linalg.solve(w, a.T @ w)


def classify_orbit(form: BilinearForm, f_mat, tol: Tolerance = DEFAULT_TOL) -> OrbitLabel:
    """Orbit label (a, b) of F: rank and radical dimension of omega on Im F."""
    f_mat = as_matrix(f_mat)
    if f_mat.shape[0] != form.dim:
        raise ShapeMismatch(f"map must have {form.dim} rows, got {f_mat.shape[0]}")
    if rank_decomposition(form.gram, tol).rank < form.dim:
        raise DegenerateForm("orbit classification requires a nondegenerate form")
    dec = rank_decomposition(f_mat, tol)
    if dec.rank == 0:
        return OrbitLabel(0, 0)
    restricted = dec.image.T @ form.gram @ dec.image
    # rank of the restricted form is judged against the ambient form's scale:
    # a totally isotropic image leaves only roundoff noise in `restricted`
    singular = np.linalg.svd(restricted, compute_uv=False)
    cutoff = tol.rank_rtol * np.linalg.norm(form.gram, 2)
    return OrbitLabel(dec.rank, dec.rank - int(np.sum(singular > cutoff)))


def _standard_symmetry(form: BilinearForm, tol: Tolerance) -> None:
    """The constructive branches assume the standard identity / symplectic gram."""
    n = form.dim
    if form.symmetry == SYMMETRIC:
        expected = np.eye(n)
    else:
        if n % 2:
            raise DegenerateForm("skew form needs even dimension")
        expected = np.zeros((n, n))
        expected[: n // 2, n // 2 :] = np.eye(n // 2)
        expected[n // 2 :, : n // 2] = -np.eye(n // 2)
    if frob(form.gram - expected) > tol.residual_tol * (1.0 + frob(form.gram)):
        raise ValueError(
            "mp_inverse_homform expects the standard identity (symmetric) or "
            "block-symplectic (skew) Gram matrix"
        )


def embedding_algebra(form: BilinearForm, dim_u: int) -> GradedAlgebra:
    """Graded so/sp realization on U* + V + U whose degree 1 part is Hom(U, V)."""
    kind = "so" if form.symmetry == SYMMETRIC else "sp"
    return GradedAlgebra(kind, (dim_u, form.dim, dim_u))


def generic_orbit_map(
    form: BilinearForm, a: int, b: int, dim_u: int
) -> np.ndarray:
    """A representative of the orbit O(a, b) in general Hermitian position.

    The image is spanned by b isotropic radical generators together with a
    nondegenerate part, and for 0 < b < a the first nondegenerate generator is
    tilted into the radical direction so that the two are not orthogonal for
    the Hermitian product.  On such representatives the inverse never exists
    when 0 < b < a; orbits of maps with Hermitian-orthogonal splittings can
    contain special elements that do satisfy the inverse equations even
    though the orbit as a whole is not Moore-Penrose.
    """
    _standard_symmetry(form, DEFAULT_TOL)
    n = form.dim
    if not (0 <= b <= a <= min(n, dim_u)):
        raise ValueError(f"unreachable label (a={a}, b={b}) for dim V={n}, dim U={dim_u}")
    cols = []
    if form.symmetry == SYMMETRIC:
        if a + b > n:
            raise ValueError(f"label (a={a}, b={b}) needs a + b <= dim V = {n}")
        r = a - b
        radical = [
            _unit(n, r + 2 * j) + 1j * _unit(n, r + 2 * j + 1) for j in range(b)
        ]
        nondeg = [_unit(n, i) for i in range(r)]
    else:
        if (a - b) % 2:
            raise ValueError("skew forms force a - b to be even")
        half = n // 2
        r = (a - b) // 2
        if r + b > half or a > n:
            raise ValueError(f"label (a={a}, b={b}) does not fit in dim V = {n}")
        radical = [_unit(n, r + j) for j in range(b)]
        nondeg = []
        for i in range(r):
            nondeg.extend([_unit(n, i), _unit(n, half + i)])
    if radical and nondeg:
        nondeg[0] = nondeg[0] + radical[0]
    cols = nondeg + radical
    f_mat = np.zeros((n, dim_u), dtype=complex)
    for j, c in enumerate(cols):
        f_mat[:, j] = c
    return f_mat


def _unit(n: int, i: int) -> np.ndarray:
    v = np.zeros(n, dtype=complex)
    v[i] = 1.0
    return v


def hom_element(alg: GradedAlgebra, f_mat) -> np.ndarray:
    """Degree +1 element of the embedding realizing F in Hom(U, V)."""
    return alg.element_from_block(2, 3, f_mat)


def hom_coelement(alg: GradedAlgebra, g_mat) -> np.ndarray:
    """Degree -1 element realizing G in Hom(V, U).

    The label carries a factor 2: with f = hom_coelement(G), the sl2
    relations of (e, [e, f], f) are exactly conditions (**) for (F, G).
    """
    return alg.element_from_block(3, 2, 2.0 * as_matrix(g_mat))


def mp_inverse_homform(
    form: BilinearForm, f_mat, tol: Tolerance = DEFAULT_TOL
) -> np.ndarray:
    """Constructive inverse on the orbits that admit one (b = 0 or b = a).

    b = 0: G inverts the restriction of F onto its image and vanishes on the
    omega-orthocomplement of the image.  b = a: the image is totally
    isotropic; G vanishes on gram * conj(Im F) and on the common complement,
    and equals half the inverse of the restriction on Im F.  Orbits with
    0 < b < a raise NotMoorePenroseOrbit carrying the Hermitian-defect
    certificate of the embedded minimal characteristic.
    """
    f_mat = as_matrix(f_mat)
    _standard_symmetry(form, tol)
    n, k = f_mat.shape
    if n != form.dim:
        raise ShapeMismatch(f"map must have {form.dim} rows, got {n}")
    label = classify_orbit(form, f_mat, tol)
    a, b = label.a, label.b
    if not label.has_inverse:
        # The exception is an orbit statement, so the certificate is computed
        # at the general-position representative of O(a, b): its embedded
        # minimal characteristic has a strictly positive Hermitian defect.
        alg = embedding_algebra(form, k)
        witness = generic_orbit_map(form, a, b, k)
        res = minimal_characteristic(alg, hom_element(alg, witness), 1, tol)
        raise NotMoorePenroseOrbit(a, b, res.hermitian_defect)
    if a == 0:
        return np.zeros((k, n), dtype=complex)

    dec = rank_decomposition(f_mat, tol)
    image = dec.image                                             # (n, a)
    coimage = rank_decomposition(dec.kernel.conj().T, tol).kernel  # (k, a)
    restricted = image.conj().T @ f_mat @ coimage                  # (a, a)

    if b == 0:
        perp = rank_decomposition(image.T @ form.gram, tol).kernel  # omega-complement
        basis = np.hstack([image, perp])
        lead = coimage @ np.linalg.solve(restricted, np.eye(a))
    else:
        polar = form.gram @ image.conj()
        rest = rank_decomposition(np.hstack([image, polar]).conj().T, tol).kernel
        basis = np.hstack([image, polar, rest])
        lead = coimage @ np.linalg.solve(restricted, np.eye(a)) / 2.0
    if rank_decomposition(basis, tol).rank < n:
        raise DegenerateForm("image decomposition of V failed to span")
    padded = np.hstack([lead, np.zeros((k, n - a), dtype=complex)])
    g_mat = np.linalg.solve(basis.T, padded.T).T
    report = verify_homform(form, f_mat, g_mat, tol)
    if not report.passed:
        raise ArithmeticError(
            f"constructed inverse failed verification: residuals {report.residuals()}"
        )
    return g_mat


def verify_homform(
    form: BilinearForm, f_mat, g_mat, tol: Tolerance = DEFAULT_TOL
) -> FormAdjointReport:
    """Residuals of (*) and (**) for a candidate pair (F, G)."""
    f_mat = as_matrix(f_mat)
    g_mat = as_matrix(g_mat)
    if g_mat.shape != (f_mat.shape[1], f_mat.shape[0]):
        raise ShapeMismatch(
            f"G must have shape {(f_mat.shape[1], f_mat.shape[0])}, got {g_mat.shape}"
        )
    gf = g_mat @ f_mat
    fg = f_mat @ g_mat
    fg_sharp = sharp(form, fg, tol)
    diff = fg - fg_sharp
    r1 = frob(gf - gf.conj().T) / (1.0 + frob(gf))
    r2 = frob(diff - diff.conj().T) / (1.0 + frob(diff))
    r3 = frob(2.0 * fg @ f_mat - fg_sharp @ f_mat - f_mat) / (1.0 + frob(f_mat))
    r4 = frob(2.0 * g_mat @ fg - g_mat @ fg_sharp - g_mat) / (1.0 + frob(g_mat))
    passed = max(r1, r2, r3, r4) <= tol.residual_tol
    return FormAdjointReport(r1, r2, r3, r4, passed)


# Which maximal parabolic subgroups of the orthogonal and symplectic groups
# are Moore-Penrose (Bourbaki numbering of simple roots).  Ships as static
# documentation; the exhaustive small-dimension classification in the test
# suite spot-checks it through classify_orbit / mp_inverse_homform.
CLASSICAL_MAXIMAL_PARABOLIC_TABLE = (
    {
        "group": "SO(2n+1), type B_n",
        "moore_penrose_roots": ("alpha_1", "alpha_n"),
        "abelian_radical_roots": ("alpha_1", "alpha_n"),
        "note": "every Moore-Penrose maximal parabolic has abelian unipotent radical",
    },
    {
        "group": "SO(2n), type D_n",
        "moore_penrose_roots": ("alpha_1", "alpha_{n-1}", "alpha_n"),
        "abelian_radical_roots": ("alpha_1", "alpha_{n-1}", "alpha_n"),
        "note": "every Moore-Penrose maximal parabolic has abelian unipotent radical",
    },
    {
        "group": "Sp(2n), type C_n",
        "moore_penrose_roots": ("alpha_1", "alpha_2", "alpha_{n-1}", "alpha_n"),
        "abelian_radical_roots": ("alpha_n",),
        "note": "alpha_1, alpha_2, alpha_{n-1} are Moore-Penrose without abelian radical",
    },
)
