import numpy as np
import pytest

from liepinv import classical
from liepinv.errors import SymmetryViolation
from liepinv.forms import (
    SKEW,
    SYMMETRIC,
    BilinearForm,
    PseudoEuclideanSpace,
    form_pinv,
    hermitian_pinv,
    pseudo_euclidean_pinv,
    pseudo_euclidean_triple,
    vector_pinv,
    vector_triple,
    verify_form_pinv,
    verify_hermitian_pinv,
    verify_pseudo_euclidean_pinv,
    verify_vector_pinv,
)
from liepinv.graded import Sl2Triple
from liepinv.numcore import frob

from helpers import random_complex, random_matrix_with_rank, random_quaternion_matrix


def random_form(rng, symmetry, n, rank):
    a = random_matrix_with_rank(rng, n, n, rank) if rank else np.zeros((n, n), complex)
    gram = a + a.T if symmetry == SYMMETRIC else a - a.T
    return BilinearForm(symmetry, gram)


class TestFormPinv:
    def test_symmetric_diagonal(self):
        form = BilinearForm(SYMMETRIC, np.diag([2.0, 0.0]).astype(complex))
        out = form_pinv(form)
        assert out.symmetry == SYMMETRIC
        assert frob(out.gram - np.diag([0.5, 0.0])) < 1e-12

    def test_skew_invertible(self):
        j = np.array([[0.0, 1.0], [-1.0, 0.0]], dtype=complex)
        out = form_pinv(BilinearForm(SKEW, j))
        assert frob(out.gram + j) < 1e-12

    def test_zero_form(self):
        out = form_pinv(BilinearForm(SYMMETRIC, np.zeros((3, 3))))
        assert frob(out.gram) == 0.0

    def test_symmetry_validated(self):
        with pytest.raises(SymmetryViolation):
            BilinearForm(SKEW, np.eye(2))

    def test_involution(self):
        rng = np.random.default_rng(70)
        for symmetry in (SYMMETRIC, SKEW):
            for _ in range(10):
                n = int(rng.integers(2, 7))
                rank = int(rng.integers(0, n + 1))
                form = random_form(rng, symmetry, n, rank)
                back = form_pinv(form_pinv(form))
                assert frob(back.gram - form.gram) <= 1e-8 * (1.0 + frob(form.gram))

    def test_agrees_with_classical_pinv(self):
        rng = np.random.default_rng(71)
        for symmetry in (SYMMETRIC, SKEW):
            for n in range(2, 7):
                for rank in range(0, n + 1):
                    form = random_form(rng, symmetry, n, rank)
                    out = form_pinv(form)
                    expected = classical.pinv(form.gram)
                    assert frob(out.gram - expected) <= 1e-9 * (1.0 + frob(expected))
                    assert verify_form_pinv(form, out).passed


class TestVectorPinv:
    def test_zero(self):
        assert frob(vector_pinv(np.zeros(3))) == 0.0

    def test_anisotropic(self):
        out = vector_pinv(np.array([3.0, 4.0]))
        assert frob(out - np.array([6.0 / 25.0, 8.0 / 25.0])) < 1e-14

    def test_isotropic(self):
        out = vector_pinv(np.array([1.0, 1.0j]))
        assert frob(out - np.array([0.5, -0.5j])) < 1e-14

    def test_involution_three_cases(self):
        rng = np.random.default_rng(72)
        vectors = [
            random_complex(rng, 4),                      # anisotropic a.s.
            np.array([1.0, 1.0j, 0.0, 0.0]),             # isotropic
            np.zeros(4, dtype=complex),
        ]
        z = random_complex(rng, 1)[0]
        vectors.append(np.array([z, 1j * z, 3.0, 4.0j]))  # random isotropic-ish mix
        for v in vectors:
            assert frob(vector_pinv(vector_pinv(v)) - v) <= 1e-10 * (1.0 + frob(v))

    def test_scaling(self):
        rng = np.random.default_rng(73)
        v = random_complex(rng, 3)
        for _ in range(5):
            c = random_complex(rng, 1)[0]
            assert frob(vector_pinv(c * v) - vector_pinv(v) / c) < 1e-12

    def test_sl2_embedding(self):
        rng = np.random.default_rng(74)
        for v in (random_complex(rng, 3), np.array([1.0, 1.0j]), random_complex(rng, 5)):
            report = verify_vector_pinv(v, vector_pinv(v))
            assert report.passed

    def test_triple_elements_live_in_grading(self):
        v = np.array([3.0, 4.0])
        e, h, f = vector_triple(v, vector_pinv(v))
        t = Sl2Triple.from_elements(e, h, f)
        assert t.passes()
        assert frob(h - h.conj().T) < 1e-12


class TestPseudoEuclidean:
    def test_zero(self):
        space = PseudoEuclideanSpace(1, 1)
        assert frob(pseudo_euclidean_pinv(space, [0.0, 0.0])) == 0.0

    def test_timelike_unit(self):
        space = PseudoEuclideanSpace(1, 1)
        out = pseudo_euclidean_pinv(space, [1.0, 0.0])
        assert frob(out - np.array([-1.0, 0.0])) < 1e-14

    def test_null_vector(self):
        space = PseudoEuclideanSpace(1, 1)
        out = pseudo_euclidean_pinv(space, [1.0, 1.0])
        assert frob(out - np.array([-0.25, 0.25])) < 1e-14

    def test_involution(self):
        rng = np.random.default_rng(75)
        space = PseudoEuclideanSpace(2, 2)
        vectors = [rng.standard_normal(4) for _ in range(5)]
        vectors.append(np.array([1.0, 0.0, 1.0, 0.0]))  # null
        for v in vectors:
            back = pseudo_euclidean_pinv(space, pseudo_euclidean_pinv(space, v))
            assert frob(back - v) <= 1e-10 * (1.0 + frob(v))

    def test_sl2_with_symmetric_characteristic(self):
        rng = np.random.default_rng(76)
        for n, m in [(1, 1), (2, 1), (2, 3)]:
            space = PseudoEuclideanSpace(n, m)
            for _ in range(5):
                v = rng.standard_normal(n + m)
                report = verify_pseudo_euclidean_pinv(space, v, pseudo_euclidean_pinv(space, v))
                assert report.passed
            null = np.zeros(n + m)
            null[0] = 1.0
            null[n] = 1.0
            report = verify_pseudo_euclidean_pinv(space, null, pseudo_euclidean_pinv(space, null))
            assert report.passed

    def test_triple_is_real(self):
        space = PseudoEuclideanSpace(2, 1)
        v = np.array([1.0, 2.0, 3.0])
        e, h, f = pseudo_euclidean_triple(space, v, pseudo_euclidean_pinv(space, v))
        assert frob(h.imag) == 0.0
        assert frob(h - h.T) < 1e-12
        assert Sl2Triple.from_elements(e, h, f).passes()


class TestHermitianPinv:
    def test_own_inverse(self):
        a = np.diag([1.0, -1.0]).astype(complex)
        assert frob(hermitian_pinv(a) - a) < 1e-12

    def test_spectral_inversion(self):
        a = np.diag([2.0, 0.0]).astype(complex)
        assert frob(hermitian_pinv(a) - np.diag([0.5, 0.0])) < 1e-12

    def test_real_skew(self):
        a = np.array([[0.0, 1.0], [-1.0, 0.0]])
        assert frob(hermitian_pinv(a) - np.array([[0.0, -1.0], [1.0, 0.0]])) < 1e-12

    def test_rejects_unstructured(self):
        with pytest.raises(SymmetryViolation):
            hermitian_pinv(np.array([[1.0, 2.0], [0.0, 1.0]]))

    def test_commutator_property(self):
        rng = np.random.default_rng(77)
        for _ in range(10):
            n = int(rng.integers(2, 6))
            r = int(rng.integers(1, n + 1))
            base = random_matrix_with_rank(rng, n, r, r)
            a = base @ base.conj().T  # Hermitian, rank r
            x = hermitian_pinv(a)
            assert frob(a @ x - x @ a) <= 1e-9 * (1.0 + frob(a) * frob(x))
            report = verify_hermitian_pinv(a, x)
            assert report.passed

    def test_skew_hermitian_class_preserved(self):
        rng = np.random.default_rng(78)
        base = random_complex(rng, 4, 4)
        a = base - base.conj().T
        x = hermitian_pinv(a)
        assert frob(x + x.conj().T) < 1e-12
        assert verify_hermitian_pinv(a, x).passed

    def test_quaternion_hermitian(self):
        rng = np.random.default_rng(79)
        q = random_quaternion_matrix(rng, 3, 3)
        a = q @ q.conjugate_transpose()
        x = hermitian_pinv(a)
        assert verify_hermitian_pinv(a, x).passed
