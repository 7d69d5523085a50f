"""Block-graded classical matrix Lie algebras and their Moore-Penrose theory.

A :class:`GradedAlgebra` is sl_n, so_n or sp_n realized as ambient complex
matrices, together with a Z-grading by block position: entry block (i, j)
carries degree j - i.  For so/sp the defining bilinear form is the split
(anti-block-diagonal) one adapted to the block structure, which is what makes
every graded component nonzero and turns the compact-form condition
"h in i*k0" into a plain Hermitian-defect test: the conjugation
theta(X) = -X* preserves the algebra, swaps degrees m and -m, and fixes the
compact form of the degree-0 part.

On top of the algebra the module provides: brackets, Killing forms,
completion of a homogeneous nilpotent to the norm-minimal sl2-triple,
Moore-Penrose inverses in short gradings, the raising-space criterion for
Moore-Penrose orbits, nilpotent orbit heights, and the per-block multidegree
check for parabolic subalgebras of sl_n.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import (
    NoTriple,
    NotInAlgebra,
    NotNilpotent,
    NotShortGrading,
    ShapeMismatch,
    SymmetryViolation,
    UnsupportedBlock,
    ZeroElement,
)
from .numcore import (
    DEFAULT_TOL,
    Tolerance,
    as_matrix,
    frob,
    rank_decomposition,
    solve_least_squares_constrained,
)

__all__ = [
    "GradedAlgebra",
    "Sl2Triple",
    "CharacteristicResult",
    "bracket",
    "compact_conjugation",
    "killing_form",
    "minimal_characteristic",
    "mp_inverse_short",
    "annihilates_positive_part",
    "is_mp_element",
    "orbit_height",
    "is_mp_orbit",
    "multidegree_characteristic",
    "mp_check_multidegree",
]

_BASIS_CUTOFF = 1e-12


def bracket(x, y) -> np.ndarray:
    """Matrix commutator [x, y] = xy - yx."""
    x = as_matrix(x)
    y = as_matrix(y)
    if x.shape != y.shape or x.shape[0] != x.shape[1]:
        raise ShapeMismatch(f"bracket needs equal square shapes, got {x.shape}, {y.shape}")
    return x @ y - y @ x


def compact_conjugation(x) -> np.ndarray:
    """Conjugation theta(X) = -X* fixing the compact real form."""
    return -as_matrix(x).conj().T


def _orthonormal_rows(stack: np.ndarray) -> np.ndarray:
    """Orthonormal basis (as matrices) of the span of a stack of matrices."""
    count, n, _ = stack.shape
    flat = stack.reshape(count, n * n)
    u, s, vh = np.linalg.svd(flat, full_matrices=False)
    rank = int(np.sum(s > _BASIS_CUTOFF * s[0])) if s.size else 0
    return vh[:rank].reshape(rank, n, n).copy()


class GradedAlgebra:
    """A classical matrix Lie algebra with a block Z-grading.

    Parameters
    ----------
    kind : {"sl", "so", "sp"}
    blocks : sequence of positive block sizes d_1..d_k (1-based positions in
        the API).  For so/sp the sizes must be palindromic, and for sp an odd
        middle block must have even size; the defining form pairs block i
        with block k+1-i.
    """

    def __init__(self, kind: str, blocks, tol: Tolerance = DEFAULT_TOL):
        kind = str(kind).lower()
        if kind not in ("sl", "so", "sp"):
            raise ValueError(f"kind must be 'sl', 'so' or 'sp', got {kind!r}")
        blocks = tuple(int(d) for d in blocks)
        if not blocks or any(d <= 0 for d in blocks):
            raise ValueError(f"block sizes must be positive, got {blocks}")
        self.kind = kind
        self.blocks = blocks
        self.ambient_dim = sum(blocks)
        self.tol = tol

        k = len(blocks)
        if kind in ("so", "sp"):
            if blocks != blocks[::-1]:
                raise ValueError(f"{kind} grading needs palindromic blocks, got {blocks}")
            if kind == "sp" and k % 2 == 1 and blocks[k // 2] % 2 != 0:
                raise ValueError("sp grading needs an even-sized middle block")

        starts = np.concatenate([[0], np.cumsum(blocks)])
        self._starts = starts
        self._block_of = np.repeat(np.arange(k), blocks)

        self.form = self._build_form()
        self._form_inv = None
        if self.form is not None:
            # split forms square to +I (so) or -I (sp)
            self._form_inv = self.form if kind == "so" else -self.form

        self._build_basis()

    # -- construction helpers ------------------------------------------------

    def _build_form(self):
        if self.kind == "sl":
            return None
        n = self.ambient_dim
        k = len(self.blocks)
        form = np.zeros((n, n))
        for i in range(k):
            j = k - 1 - i
            ri = slice(self._starts[i], self._starts[i + 1])
            cj = slice(self._starts[j], self._starts[j + 1])
            d = self.blocks[i]
            if i == j:
                if self.kind == "so":
                    form[ri, cj] = np.eye(d)
                else:
                    half = d // 2
                    mid = np.zeros((d, d))
                    mid[:half, half:] = np.eye(half)
                    mid[half:, :half] = -np.eye(half)
                    form[ri, cj] = mid
            elif self.kind == "so":
                form[ri, cj] = np.eye(d)
            else:
                form[ri, cj] = np.eye(d) if i < j else -np.eye(d)
        return form

    def _tau(self, x: np.ndarray) -> np.ndarray:
        """Involution of gl_n whose fixed space is the algebra (so/sp only)."""
        return -self._form_inv @ x.T @ self.form

    def _build_basis(self):
        n = self.ambient_dim
        k = len(self.blocks)
        per_degree: dict[int, list[np.ndarray]] = {m: [] for m in range(-(k - 1), k)}
        for bi in range(k):
            for bj in range(k):
                m = bj - bi
                rows = range(self._starts[bi], self._starts[bi + 1])
                cols = range(self._starts[bj], self._starts[bj + 1])
                for a in rows:
                    for b in cols:
                        unit = np.zeros((n, n))
                        unit[a, b] = 1.0
                        if self.kind == "sl":
                            if a == b:
                                unit -= np.eye(n) / n
                            cand = unit
                        else:
                            cand = (unit + self._tau(unit)) / 2.0
                        if frob(cand) > _BASIS_CUTOFF:
                            per_degree[m].append(cand)

        basis_parts = []
        degrees = []
        self._deg_slice: dict[int, slice] = {}
        pos = 0
        for m in sorted(per_degree):
            cands = per_degree[m]
            if cands:
                part = _orthonormal_rows(np.array(cands))
            else:
                part = np.zeros((0, n, n))
            basis_parts.append(part.astype(complex))
            degrees.extend([m] * part.shape[0])
            self._deg_slice[m] = slice(pos, pos + part.shape[0])
            pos += part.shape[0]
        self._basis = np.concatenate(basis_parts, axis=0)
        self._degrees = np.array(degrees, dtype=int)

        expected = {
            "sl": n * n - 1,
            "so": n * (n - 1) // 2,
            "sp": n * (n + 1) // 2,
        }[self.kind]
        if self.dim != expected:
            raise AssertionError(
                f"basis construction produced dim {self.dim}, expected {expected}"
            )

    # -- structure -----------------------------------------------------------

    @property
    def dim(self) -> int:
        return self._basis.shape[0]

    @property
    def degrees(self) -> list[int]:
        """Degrees m with nonzero component g_m, ascending."""
        return [m for m, s in sorted(self._deg_slice.items()) if s.stop > s.start]

    @property
    def is_short(self) -> bool:
        return all(abs(m) <= 1 for m in self.degrees)

    def degree_dimension(self, m: int) -> int:
        s = self._deg_slice.get(m)
        return 0 if s is None else s.stop - s.start

    def basis(self, m: int | None = None) -> np.ndarray:
        """Orthonormal homogeneous basis matrices, all or of a single degree."""
        if m is None:
            return self._basis
        s = self._deg_slice.get(m)
        if s is None:
            return np.zeros((0, self.ambient_dim, self.ambient_dim), dtype=complex)
        return self._basis[s]

    def block_slice(self, i: int) -> slice:
        """Index range of 1-based block i."""
        if not 1 <= i <= len(self.blocks):
            raise ValueError(f"block index {i} out of range 1..{len(self.blocks)}")
        return slice(self._starts[i - 1], self._starts[i])

    def block_component(self, x, i: int, j: int) -> np.ndarray:
        x = self._check_ambient(x)
        return x[self.block_slice(i), self.block_slice(j)].copy()

    @cached_property
    def _degree_mask(self) -> np.ndarray:
        """mask[a, b] = block degree of entry (a, b)."""
        return self._block_of[None, :] - self._block_of[:, None]

    def _check_ambient(self, x) -> np.ndarray:
        x = as_matrix(x)
        n = self.ambient_dim
        if x.shape != (n, n):
            raise ShapeMismatch(f"expected an ambient {n}x{n} matrix, got {x.shape}")
        return x

    # -- membership and coordinates -------------------------------------------

    def coordinates(self, x) -> np.ndarray:
        """Coordinates in the orthonormal basis (a projection for x outside)."""
        x = self._check_ambient(x)
        return np.einsum("kab,ab->k", self._basis.conj(), x)

    def from_coordinates(self, v) -> np.ndarray:
        v = np.asarray(v, dtype=complex).reshape(-1)
        if v.shape[0] != self.dim:
            raise ShapeMismatch(f"expected {self.dim} coordinates, got {v.shape[0]}")
        return np.einsum("k,kab->ab", v, self._basis)

    def project(self, x) -> np.ndarray:
        return self.from_coordinates(self.coordinates(x))

    def membership_residual(self, x) -> float:
        return frob(self._check_ambient(x) - self.project(x))

    def require_member(self, x) -> np.ndarray:
        x = self._check_ambient(x)
        res = self.membership_residual(x)
        if res > self.tol.residual_tol * (1.0 + frob(x)):
            raise NotInAlgebra(
                f"membership residual {res:.3e} exceeds tolerance for {self.kind}{self.blocks}"
            )
        return x

    def degree_component(self, x, m: int) -> np.ndarray:
        x = self._check_ambient(x)
        return np.where(self._degree_mask == m, x, 0.0)

    def homogeneous_degree(self, x, tol: Tolerance | None = None) -> int | None:
        """Degree of a homogeneous element, None for zero; errors if mixed."""
        tol = tol or self.tol
        x = self.require_member(x)
        scale = frob(x)
        if scale == 0.0:
            return None
        present = [
            m for m in self.degrees
            if frob(self.degree_component(x, m)) > tol.residual_tol * scale
        ]
        if len(present) != 1:
            raise ValueError(f"element is not homogeneous; degrees with mass: {present}")
        return present[0]

    # -- algebra operations ----------------------------------------------------

    def ad(self, x) -> np.ndarray:
        """Matrix of ad(x) on the orthonormal basis of the algebra."""
        x = self._check_ambient(x)
        br = np.einsum("ab,kbc->kac", x, self._basis) - np.einsum(
            "kab,bc->kac", self._basis, x
        )
        return np.einsum("jab,kab->jk", self._basis.conj(), br)

    def killing(self, x, y) -> complex:
        """Killing form B(x, y) = Tr(ad x . ad y) on the algebra."""
        x = self.require_member(x)
        y = self.require_member(y)
        return complex(np.einsum("ij,ji->", self.ad(x), self.ad(y)))

    def element_from_block(self, i: int, j: int, block) -> np.ndarray:
        """The unique algebra element of degree j - i whose (i, j) block is given.

        For so/sp the element also carries the form-determined partner block;
        if (i, j) is self-paired under the form, the block itself must satisfy
        the induced (skew-)symmetry, else SymmetryViolation is raised.
        """
        if i == j:
            raise ValueError("element_from_block needs i != j")
        block = as_matrix(block)
        di = self.blocks[i - 1]
        dj = self.blocks[j - 1]
        if block.shape != (di, dj):
            raise ShapeMismatch(f"block ({i},{j}) must be {di}x{dj}, got {block.shape}")
        n = self.ambient_dim
        x = np.zeros((n, n), dtype=complex)
        x[self.block_slice(i), self.block_slice(j)] = block
        if self.kind == "sl":
            return x
        k = len(self.blocks)
        self_paired = (k + 1 - j, k + 1 - i) == (i, j)
        out = x + self._tau(x)
        if self_paired:
            out /= 2.0
        got = out[self.block_slice(i), self.block_slice(j)]
        if frob(got - block) > 1e-10 * (1.0 + frob(block)):
            raise SymmetryViolation(
                f"block ({i},{j}) of {self.kind}{self.blocks} requires the "
                "form-induced symmetry; given block violates it"
            )
        return out

    def random_element(self, m: int | None, rng: np.random.Generator) -> np.ndarray:
        """Random element of g_m (or of the whole algebra for m=None)."""
        b = self.basis(m)
        coef = rng.standard_normal(b.shape[0]) + 1j * rng.standard_normal(b.shape[0])
        if b.shape[0] == 0:
            return np.zeros((self.ambient_dim, self.ambient_dim), dtype=complex)
        return np.einsum("k,kab->ab", coef, b)

    def __repr__(self):
        return f"GradedAlgebra({self.kind!r}, {self.blocks})"


def killing_form(alg: GradedAlgebra, x, y) -> complex:
    """Module-level alias for :meth:`GradedAlgebra.killing`."""
    return alg.killing(x, y)


# ---------------------------------------------------------------------------
# sl2-triples and characteristics
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Sl2Triple:
    """Elements (e, h, f) with the bracket relations as testable residuals.

    The residuals are relative: each defect norm is divided by
    1 + |e| + |h| + |f|.  The zero triple is legal and has zero residuals.
    """

    e: np.ndarray
    h: np.ndarray
    f: np.ndarray
    residuals: tuple[float, float, float]

    @classmethod
    def from_elements(cls, e, h, f) -> "Sl2Triple":
        e, h, f = (as_matrix(m) for m in (e, h, f))
        scale = 1.0 + frob(e) + frob(h) + frob(f)
        res = (
            frob(bracket(e, f) - h) / scale,
            frob(bracket(h, e) - 2.0 * e) / scale,
            frob(bracket(h, f) + 2.0 * f) / scale,
        )
        return cls(e, h, f, res)

    def max_residual(self) -> float:
        return max(self.residuals)

    def passes(self, tol: Tolerance = DEFAULT_TOL) -> bool:
        return self.max_residual() <= tol.residual_tol


@dataclass(frozen=True)
class CharacteristicResult:
    """Norm-minimal characteristic of a nilpotent element with its completion."""

    triple: Sl2Triple
    hermitian_defect: float
    is_hermitian: bool

    @property
    def e(self) -> np.ndarray:
        return self.triple.e

    @property
    def h(self) -> np.ndarray:
        return self.triple.h

    @property
    def f(self) -> np.ndarray:
        return self.triple.f


def _coords_in(basis: np.ndarray, x: np.ndarray) -> np.ndarray:
    return np.einsum("kab,ab->k", basis.conj(), x)


def _minimal_triple(
    alg: GradedAlgebra,
    e: np.ndarray,
    neg_basis: np.ndarray,
    res_basis: np.ndarray,
    h_basis: np.ndarray,
    tol: Tolerance,
) -> CharacteristicResult:
    """Shared engine: minimize |h|_F over {h = [e, y] : [[e, y], e] = 2e}.

    Every h in that affine set is a genuine characteristic (completion lemma),
    and for homogeneous e the set is exactly the homogeneous characteristics,
    so the Frobenius minimizer is the one orthogonal to the direction space.
    The second leg f is recovered from the joint linear system
    [e, f] = h, [h, f] = -2f, which has a unique solution.
    """
    n = alg.ambient_dim
    zero = np.zeros((n, n), dtype=complex)
    if frob(e) == 0.0:
        return CharacteristicResult(Sl2Triple.from_elements(zero, zero, zero), 0.0, True)
    if neg_basis.shape[0] == 0:
        raise NoTriple("search space for the opposite leg is empty")

    br_e = np.einsum("ab,kbc->kac", e, neg_basis) - np.einsum(
        "kab,bc->kac", neg_basis, e
    )  # [e, y_k]
    m_obj = np.einsum("jab,kab->jk", h_basis.conj(), br_e)
    # [[e, y_k], e] = [h_k, e] = h_k e - e h_k
    br2 = np.einsum("kab,bc->kac", br_e, e) - np.einsum("ab,kbc->kac", e, br_e)
    c_mat = np.einsum("jab,kab->jk", res_basis.conj(), br2)
    d = 2.0 * _coords_in(res_basis, e)
    try:
        y = solve_least_squares_constrained(
            m_obj, np.zeros(m_obj.shape[0]), c_mat, d, tol
        )
    except Exception as exc:  # noqa: BLE001 - re-raise with domain meaning
        raise NoTriple(f"sl2 completion system is inconsistent: {exc}") from exc

    h = np.einsum("k,kab->ab", y, br_e)

    # recover f: [e, f] = h  and  [h, f] = -2 f, both inside the neg span
    br_h = np.einsum("ab,kbc->kac", h, neg_basis) - np.einsum(
        "kab,bc->kac", neg_basis, h
    )
    h_on_neg = np.einsum("jab,kab->jk", neg_basis.conj(), br_h)
    a_top = m_obj
    a_bot = h_on_neg + 2.0 * np.eye(neg_basis.shape[0])
    a_full = np.vstack([a_top, a_bot])
    b_full = np.concatenate([_coords_in(h_basis, h), np.zeros(neg_basis.shape[0])])
    fc = np.linalg.lstsq(a_full, b_full, rcond=tol.rank_rtol)[0]
    gap = frob(a_full @ fc - b_full)
    if gap > tol.residual_tol * (1.0 + frob(h) + frob(e)):
        raise NoTriple(f"f-recovery residual {gap:.3e} above tolerance")
    f = np.einsum("k,kab->ab", fc, neg_basis)

    triple = Sl2Triple.from_elements(e, h, f)
    defect = frob(h - h.conj().T)
    hermitian = defect <= tol.residual_tol * (1.0 + frob(h))
    return CharacteristicResult(triple, defect, hermitian)


def minimal_characteristic(
    alg: GradedAlgebra,
    e,
    degree: int | None = None,
    tol: Tolerance | None = None,
) -> CharacteristicResult:
    """Complete a nilpotent e to the sl2-triple of minimal-norm characteristic.

    For degree k != 0 the opposite leg is searched in g_{-k} (e must be
    homogeneous of degree k).  Degree 0 means the ungraded problem: the search
    space is the whole algebra and e must be nilpotent.  The minimized
    quantity is the positive Hermitian energy of the characteristic, which in
    these realizations is a fixed positive multiple of the squared Frobenius
    norm.
    """
    tol = tol or alg.tol
    e = alg.require_member(e)
    if degree is None:
        degree = alg.homogeneous_degree(e, tol)
        if degree is None:
            degree = 0
    if degree == 0:
        _require_nilpotent(alg, e, tol)
        neg = alg.basis()
        res = alg.basis()
        h_basis = alg.basis()
    else:
        inferred = alg.homogeneous_degree(e, tol)
        if inferred is not None and inferred != degree:
            raise ValueError(f"element has degree {inferred}, expected {degree}")
        neg = alg.basis(-degree)
        res = alg.basis(degree)
        h_basis = alg.basis(0)
    return _minimal_triple(alg, e, neg, res, h_basis, tol)


def characteristic_direction_space(
    alg: GradedAlgebra, e, degree: int | None = None, tol: Tolerance | None = None
) -> np.ndarray:
    """Orthonormal basis of the direction space of the characteristic affine set.

    The homogeneous characteristics of e form an affine space; its direction
    space is {[e, y] : y opposite, [[e, y], e] = 0}, computed here from the
    kernel of the completion constraint.  Returns a (count, n, n) stack;
    empty when the characteristic is unique.
    """
    tol = tol or alg.tol
    e = alg.require_member(e)
    if degree is None:
        degree = alg.homogeneous_degree(e, tol) or 0
    neg = alg.basis(-degree) if degree != 0 else alg.basis()
    res = alg.basis(degree) if degree != 0 else alg.basis()
    if frob(e) == 0.0 or neg.shape[0] == 0:
        return np.zeros((0, alg.ambient_dim, alg.ambient_dim), dtype=complex)
    br_e = np.einsum("ab,kbc->kac", e, neg) - np.einsum("kab,bc->kac", neg, e)
    br2 = np.einsum("kab,bc->kac", br_e, e) - np.einsum("ab,kbc->kac", e, br_e)
    c_mat = np.einsum("jab,kab->jk", res.conj(), br2)
    null = rank_decomposition(c_mat, tol).kernel  # directions in y-coordinates
    if null.shape[1] == 0:
        return np.zeros((0, alg.ambient_dim, alg.ambient_dim), dtype=complex)
    deltas = np.einsum("kj,kab->jab", null, br_e)
    return _orthonormal_rows(deltas)


def mp_inverse_short(alg: GradedAlgebra, e, tol: Tolerance | None = None) -> np.ndarray:
    """Moore-Penrose inverse of a homogeneous element of a short grading.

    The minimal characteristic of any e in g_{+1} or g_{-1} of a short grading
    is Hermitian, so the returned f of its triple is the unique MP-inverse.
    """
    tol = tol or alg.tol
    if not alg.is_short:
        raise NotShortGrading(f"grading of {alg!r} has degrees {alg.degrees}")
    e = alg.require_member(e)
    degree = alg.homogeneous_degree(e, tol)
    if degree is None:
        return np.zeros_like(e)
    if degree == 0:
        raise ValueError("element must lie in g_{+1} or g_{-1}")
    result = minimal_characteristic(alg, e, degree, tol)
    if not result.is_hermitian:
        raise ArithmeticError(
            f"minimal characteristic unexpectedly non-Hermitian "
            f"(defect {result.hermitian_defect:.3e}) in a short grading"
        )
    return result.f


def annihilates_positive_part(
    alg: GradedAlgebra, e, h, tol: Tolerance | None = None
) -> bool:
    """Raising-space criterion: does ad(e) kill the positive ad(h)-part of g_0?

    h must be a characteristic of e (any homogeneous triple works; the answer
    does not depend on the choice).  The degree-0 part of the algebra is
    graded by the integer eigenvalues of ad(h); the orbit of e is
    Moore-Penrose exactly when ad(e) annihilates every positive eigenspace.
    """
    tol = tol or alg.tol
    e = alg.require_member(e)
    h = alg.require_member(h)
    zero_basis = alg.basis(0)
    if zero_basis.shape[0] == 0:
        return True
    br_h = np.einsum("ab,kbc->kac", h, zero_basis) - np.einsum(
        "kab,bc->kac", zero_basis, h
    )
    ad_h = np.einsum("jab,kab->jk", zero_basis.conj(), br_h)
    eigvals, eigvecs = np.linalg.eig(ad_h)
    e_norm = frob(e)
    for idx in np.nonzero(eigvals.real > 0.5)[0]:
        vec = eigvecs[:, idx]
        x = np.einsum("k,kab->ab", vec, zero_basis)
        if frob(bracket(e, x)) > tol.residual_tol * (1.0 + e_norm) * (1.0 + frob(x)):
            return False
    return True


def is_mp_element(
    alg: GradedAlgebra,
    e,
    degree: int | None = None,
    tol: Tolerance | None = None,
    cross_check: bool = True,
) -> bool:
    """Whether e admits a homogeneous sl2-triple with Hermitian characteristic.

    Decided through the minimal characteristic.  With cross_check the
    raising-space criterion is evaluated on the same triple: a positive
    criterion forces a Hermitian characteristic (the whole orbit is
    Moore-Penrose), and a violation of that implication raises
    ArithmeticError.  The converse is not asserted: an orbit that is not
    Moore-Penrose can still contain special elements in Hermitian position,
    so criterion False with a Hermitian characteristic is a legitimate
    outcome, not a numerical failure.
    """
    tol = tol or alg.tol
    result = minimal_characteristic(alg, e, degree, tol)
    if cross_check and frob(result.e) > 0.0:
        crit = annihilates_positive_part(alg, e, result.h, tol)
        if crit and not result.is_hermitian:
            raise ArithmeticError(
                f"raising-space criterion holds but the minimal characteristic "
                f"has Hermitian defect {result.hermitian_defect:.3e}"
            )
    return result.is_hermitian


def _require_nilpotent(alg: GradedAlgebra, e: np.ndarray, tol: Tolerance) -> np.ndarray:
    ad_e = alg.ad(e)
    top = np.linalg.norm(ad_e, 2) if ad_e.size else 0.0
    if top == 0.0:
        return ad_e
    power = np.eye(ad_e.shape[0], dtype=complex)
    for _ in range(alg.dim):
        power = power @ ad_e
    if np.linalg.norm(power, 2) > tol.residual_tol * top**alg.dim:
        raise NotNilpotent("ad(e)^dim does not vanish within tolerance")
    return ad_e


def orbit_height(alg: GradedAlgebra, e, tol: Tolerance | None = None) -> int:
    """Height of the nilpotent orbit: the largest k with ad(e)^k != 0.

    Powers are compared against residual_tol * |ad(e)|^k so the decision is
    scale-invariant; the zero element has height 0.
    """
    tol = tol or alg.tol
    e = alg.require_member(e)
    ad_e = _require_nilpotent(alg, e, tol)
    top = np.linalg.norm(ad_e, 2) if ad_e.size else 0.0
    if top == 0.0:
        return 0
    height = 0
    power = np.eye(ad_e.shape[0], dtype=complex)
    for k in range(1, alg.dim + 1):
        power = power @ ad_e
        if np.linalg.norm(power, 2) > tol.residual_tol * top**k:
            height = k
        else:
            break
    return height


def is_mp_orbit(alg: GradedAlgebra, e, tol: Tolerance | None = None) -> bool:
    """Whether the adjoint orbit of a nonzero nilpotent is Moore-Penrose.

    Equivalent to the orbit having height exactly 2.
    """
    tol = tol or alg.tol
    e = alg.require_member(e)
    if frob(e) == 0.0:
        raise ZeroElement("the zero element does not generate a nilpotent orbit")
    return orbit_height(alg, e, tol) == 2


def multidegree_characteristic(
    alg: GradedAlgebra, i: int, j: int, e, tol: Tolerance | None = None
) -> CharacteristicResult:
    """Minimal characteristic for an element supported on the single block (i, j).

    This is the per-multidegree problem of a parabolic of sl_n: the opposite
    leg is searched in the transposed block (j, i) only.
    """
    tol = tol or alg.tol
    if alg.kind != "sl":
        raise ValueError("multidegree checks are defined for sl gradings")
    if i == j:
        raise ValueError("block position must be off-diagonal")
    e = alg.require_member(e)
    inside = np.zeros_like(e)
    sl_i, sl_j = alg.block_slice(i), alg.block_slice(j)
    inside[sl_i, sl_j] = e[sl_i, sl_j]
    outside = frob(e - inside)
    if outside > tol.residual_tol * (1.0 + frob(e)):
        raise UnsupportedBlock(
            f"element has mass {outside:.3e} outside block ({i},{j})"
        )
    n = alg.ambient_dim
    neg = []
    for a in range(alg._starts[j - 1], alg._starts[j]):
        for b in range(alg._starts[i - 1], alg._starts[i]):
            unit = np.zeros((n, n), dtype=complex)
            unit[a, b] = 1.0
            neg.append(unit)
    neg_basis = np.array(neg)
    res_basis = alg.basis(j - i)
    return _minimal_triple(alg, e, neg_basis, res_basis, alg.basis(0), tol)


def mp_check_multidegree(
    alg: GradedAlgebra, i: int, j: int, e, tol: Tolerance | None = None
) -> bool:
    """Moore-Penrose property of a single-block element of a parabolic of sl_n."""
    return multidegree_characteristic(alg, i, j, e, tol).is_hermitian
