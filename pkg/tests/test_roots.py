import random
from fractions import Fraction

import pytest

from ocpoly.algebra import AlgebraParams, Octonion, random_octonion
from ocpoly.errors import NotInRMR, UnsupportedDegree
from ocpoly.opoly import OPolynomial
from ocpoly.roots import (ConjClass, class_member, lmr_contains,
                          lmr_describe, lmr_describe_class, lmr_point,
                          lmr_sample, lmr_sample_detailed, multiple_root,
                          reduce_linear, rmr_classes, rmr_contains,
                          rmr_witness, roots)
from ocpoly.scalars import EXACT, REAL


def quad_example(P, basis):
    one, i, j, k, l = basis
    return OPolynomial.make(P, [one - k, i, one])


class TestLinearReduction:
    def test_quadratic_example(self, P, basis):
        one, i, j, k, l = basis
        f = quad_example(P, basis)
        red = reduce_linear(f, ConjClass(Fraction(0), Fraction(1)))
        assert red.E.isclose(i)
        assert red.G.isclose(-k)
        red2 = reduce_linear(f, ConjClass(Fraction(0), Fraction(2)))
        assert red2.E.isclose(i)
        assert red2.G.isclose(-k - one)

    def test_reduction_invariant(self, PR, rng):
        # f and the reduced linear Ex + G agree on every class member
        py_rng = random.Random(rng.randint(0, 10 ** 9))
        for _ in range(100):
            f = OPolynomial.make(
                PR, [random_octonion(PR, py_rng) for _ in range(4)])
            if f.degree < 1:
                continue
            T = py_rng.uniform(-2, 2)
            cls = ConjClass(T, T * T / 4 + py_rng.uniform(0.1, 4))
            red = reduce_linear(f, cls)
            lam = class_member(cls, PR, py_rng)
            lhs = f.eval(lam)
            rhs = red.E * lam + red.G
            assert lhs.isclose(rhs, tol=1e-6)


class TestRoots:
    def test_linear(self, P, basis):
        one, i, j, k, l = basis
        r = roots(OPolynomial.make(P, [j, i]))
        assert len(r.isolated) == 1 and not r.spherical
        assert r.isolated[0][0].isclose(k)

    def test_quadratic_example(self, P, basis):
        one, i, j, k, l = basis
        r = roots(quad_example(P, basis))
        got = sorted(str(lam) for lam, _ in r.isolated)
        assert got == ["-i + j", "j"]
        assert not r.spherical

    def test_spherical(self, P, basis):
        one, i, j, k, l = basis
        f = OPolynomial.make(P, [one, Octonion.zero(P), one])  # x^2 + 1
        r = roots(f)
        assert not r.isolated
        assert len(r.spherical) == 1
        T, N = r.spherical[0].T, r.spherical[0].N
        assert (T, N) == (0, 1)

    def test_central_roots(self, P, basis):
        one, i, j, k, l = basis
        f = OPolynomial.make(P, [-one, Octonion.zero(P), one])  # x^2 - 1
        r = roots(f)
        vals = sorted(float(lam.re()) for lam, _ in r.isolated)
        assert vals == [-1.0, 1.0]

    def test_residuals_random_real(self, PR, rng):
        py_rng = random.Random(4321)
        for _ in range(25):
            coeffs = [random_octonion(PR, py_rng) for _ in range(3)]
            coeffs.append(Octonion.one(PR))
            f = OPolynomial.make(PR, coeffs)
            scale = 1 + max(float(c.abs()) for c in coeffs)
            r = roots(f)
            for lam, _ in r.isolated:
                assert float(f.eval(lam).abs()) < 1e-6 * scale
            for cls in r.spherical:
                lam = class_member(cls, PR, py_rng)
                assert float(f.eval(lam).abs()) < 1e-6 * scale


class TestRMR:
    def test_classes(self, P, basis):
        f = quad_example(P, basis)
        cls = sorted((c.T, c.N) for c in rmr_classes(f))
        assert cls == [(0, 1), (0, 2)]

    def test_contains_conjugates_of_roots(self, P, basis):
        one, i, j, k, l = basis
        f = OPolynomial.make(P, [j, i])
        for mu in (k, -k, i, -i):  # all in the class (0,1)
            assert rmr_contains(f, mu)
        assert not rmr_contains(f, 2 * k)

    def test_witness_produces_root(self, P, basis):
        one, i, j, k, l = basis
        f = OPolynomial.make(P, [j, i])
        for mu in (-k, i, l):
            c = rmr_witness(f, mu)
            assert f.scale_right(c).eval(mu).is_zero()

    def test_witness_not_in_rmr(self, P, basis):
        one, i, j, k, l = basis
        f = OPolynomial.make(P, [j, i])
        with pytest.raises(NotInRMR):
            rmr_witness(f, one + k)

    def test_multiple_root_sides(self, P, basis):
        one, i, j, k, l = basis
        f = OPolynomial.make(P, [j, i])
        cls = ConjClass(Fraction(0), Fraction(1))
        mr_r = multiple_root(f, cls, l, "right")
        assert mr_r.isclose(-k)
        assert f.scale_right(l).eval(mr_r).is_zero()
        mr_l = multiple_root(f, cls, l, "left")
        assert f.scale_left(l).eval(mr_l).is_zero()

    def test_multiple_root_random_scalars(self, P, basis, rng):
        one, i, j, k, l = basis
        f = quad_example(P, basis)
        cls = ConjClass(Fraction(0), Fraction(1))
        for _ in range(30):
            c = random_octonion(P, rng)
            if c.is_zero():
                continue
            mu = multiple_root(f, cls, c, "right")
            assert f.scale_right(c).eval(mu).is_zero()
            mu = multiple_root(f, cls, c, "left")
            assert f.scale_left(c).eval(mu).is_zero()


class TestLMR:
    def test_describe_quadratic_example(self, P, basis):
        one, i, j, k, l = basis
        f = quad_example(P, basis)
        desc = lmr_describe_class(f, ConjClass(Fraction(0), Fraction(1)))
        assert desc.kind == "parametrized"
        assert desc.e_inv_g.isclose(-j)
        assert desc.g_e_inv.isclose(j)
        assert desc.comm_norm == 4

    def test_single_point_class(self, P, basis):
        one, i, j, k, l = basis
        # commuting E, G: f = x^2 + 1x + (1+i) reduced on a class where
        # E and G land in the same complex line gives a lone point
        f = OPolynomial.make(P, [j, i])
        descs = lmr_describe(f)
        assert len(descs) == 1

    def test_sample_points_are_left_multiple_roots(self, P, basis):
        one, i, j, k, l = basis
        f = quad_example(P, basis)
        desc = lmr_describe_class(f, ConjClass(Fraction(0), Fraction(1)))
        for a, b, c, mu in lmr_sample_detailed(desc, 50, seed=3):
            assert f.scale_left(c).eval(mu).is_zero()

    def test_contains_checkpoints(self, PR, basis_r):
        one, i, j, k, l = basis_r
        f = quad_example(PR, basis_r)
        desc = lmr_describe_class(f, ConjClass(0.0, 1.0))
        for pt in (j, -j, l, -l):
            assert lmr_contains(desc, pt)
        # mid-sphere points with the right ell-part size are members too
        mid = (j + l) * (1 / float((j + l).abs()))
        assert lmr_contains(desc, mid)
        # same class, but with an i-component the parametrization never hits
        off = (i + j) * (1 / float((i + j).abs()))
        assert not lmr_contains(desc, off)
        # wrong class entirely
        assert not lmr_contains(desc, 2 * j)

    def test_samples_pass_contains(self, P, basis):
        one, i, j, k, l = basis
        f = quad_example(P, basis)
        desc = lmr_describe_class(f, ConjClass(Fraction(0), Fraction(1)))
        PR = AlgebraParams.octonions(REAL)
        fr = OPolynomial.from_json(f.to_json(), REAL)
        descr = lmr_describe_class(fr, ConjClass(0.0, 1.0))
        for mu in lmr_sample(desc, 40, seed=9):
            mur = Octonion.make(PR, [float(c) for c in mu.coords])
            assert lmr_contains(descr, mur)

    def test_lmr_within_companion_classes(self, P, rng):
        # left multiple roots always stay inside the companion's classes
        for _ in range(20):
            f = OPolynomial.make(P, [random_octonion(P, rng)
                                     for _ in range(3)])
            if f.degree < 1:
                continue
            try:
                descs = lmr_describe(f)
            except UnsupportedDegree:
                continue  # companion irreducible over Q
            classes = {(c.T, c.N) for c in rmr_classes(f)}
            for d in descs:
                assert (d.cls.T, d.cls.N) in classes

    def test_whole_class(self, P, basis):
        one, i, j, k, l = basis
        # f = x^2 + 1 vanishes identically on the class (0, 1)
        f = OPolynomial.make(P, [one, Octonion.zero(P), one])
        desc = lmr_describe_class(f, ConjClass(Fraction(0), Fraction(1)))
        assert desc.kind == "whole-class"

    def test_point_formula_endpoints(self, P, basis):
        one, i, j, k, l = basis
        f = quad_example(P, basis)
        desc = lmr_describe_class(f, ConjClass(Fraction(0), Fraction(1)))
        # a = 1, b = 0 recovers the right root -E^{-1}G
        pt = lmr_point(desc, Octonion.one(P), Octonion.zero(P))
        assert pt.isclose(desc.e_inv_g * -1)
        # a = 0, b = 1 recovers -gamma-scaled left end -GE^{-1}
        pt = lmr_point(desc, Octonion.zero(P), Octonion.one(P))
        assert pt.isclose(desc.g_e_inv * -1)
