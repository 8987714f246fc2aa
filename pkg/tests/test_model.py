from fractions import Fraction

import pytest

from temperkit.errors import (ArityError, ConstraintViolationError,
                              SpaceMismatchError)
from temperkit.model import (LinearForm, PLFunction, PairSpec, TorusSpace,
                             WeightModule, deficit, evaluate_pl, rho_function,
                             rho_plus)

F = Fraction


def lf(*coeffs):
    return LinearForm([F(c) for c in coeffs])


class TestLinearForm:
    def test_call(self):
        assert lf(1, -2)((3, 1)) == F(1)
        assert lf("1/2", 0)((1, 7)) == F(1, 2)

    def test_arity_mismatch(self):
        with pytest.raises(ArityError):
            lf(1, 2)((1, 2, 3))
        with pytest.raises(ArityError):
            lf(1, 2) + lf(1, 2, 3)

    def test_arithmetic(self):
        assert lf(1, 2) + lf(0, -1) == lf(1, 1)
        assert lf(1, 2) - lf(1, 2) == lf(0, 0)
        assert -lf(1, -1) == lf(-1, 1)
        assert lf(1, 2).scale(F(1, 2)) == lf("1/2", 1)

    def test_immutable_and_hashable(self):
        f = lf(1, 2)
        with pytest.raises(AttributeError):
            f.coeffs = (F(0),)
        assert len({lf(1, 2), lf(1, 2), lf(2, 1)}) == 2

    def test_sign_normalized(self):
        assert lf(-1, 2).sign_normalized() == lf(1, -2)
        assert lf(0, -3).sign_normalized() == lf(0, 3)
        assert lf(0, 0).sign_normalized() == lf(0, 0)

    def test_primitive(self):
        assert lf("2/3", "-4/3").primitive() == lf(1, -2)
        assert lf(-4, 6).primitive() == lf(2, -3)
        assert lf(0, 0).primitive() == lf(0, 0)

    def test_integer_coeffs(self):
        assert lf("1/2", "1/3").integer_coeffs() == (3, 2)


class TestTorusSpace:
    def test_plain(self):
        s = TorusSpace(3)
        assert s.dim == 3
        assert s.slice_basis() == ((1, 0, 0), (0, 1, 0), (0, 0, 1))

    def test_constraints_rref(self):
        s = TorusSpace(3, [lf(1, 1, 1)])
        assert s.dim == 2
        assert s.contains((1, -1, 0))
        assert not s.contains((1, 0, 0))

    def test_dependent_constraints_rejected(self):
        with pytest.raises(ValueError):
            TorusSpace(3, [lf(1, 1, 0), lf(2, 2, 0)])

    def test_equality_ignores_presentation(self):
        a = TorusSpace(3, [lf(1, 1, 1)])
        b = TorusSpace(3, [lf(2, 2, 2)])
        assert a == b
        assert hash(a) == hash(b)

    def test_reduce_equal_modulo_constraints(self):
        s = TorusSpace(3, [lf(1, 1, 1)])
        # x0 and -x1 - x2 agree on the slice
        assert s.reduce(lf(1, 0, 0)) == s.reduce(lf(0, -1, -1))

    def test_lift_and_basis(self):
        s = TorusSpace(3, [lf(1, 1, 1)])
        basis = s.slice_basis()
        assert len(basis) == 2
        for g in basis:
            assert s.contains(g)
        point = s.lift((2, -1))
        assert s.contains(point)
        assert point == tuple(2 * F(a) - F(b) for a, b in zip(*basis))

    def test_require_point(self):
        s = TorusSpace(2, [lf(1, 1)])
        with pytest.raises(ConstraintViolationError):
            s.require_point((1, 1))
        assert s.require_point((1, -1)) == (F(1), F(-1))


class TestWeightModule:
    def test_merging(self):
        s = TorusSpace(2)
        m = WeightModule(s, [(lf(1, 0), 2), (lf(1, 0), 1), (lf(0, 1), 1)])
        assert m.total_dim == 4
        assert dict(m.weights)[lf(1, 0)] == 3

    def test_merge_modulo_constraints(self):
        s = TorusSpace(2, [lf(1, 1)])
        m = WeightModule(s, [(lf(1, 0), 1), (lf(0, -1), 1)])
        assert len(m.weights) == 1
        assert m.weights[0][1] == 2

    def test_zero_weights_kept(self):
        s = TorusSpace(1)
        m = WeightModule(s, [(lf(0), 3)])
        assert m.total_dim == 3

    def test_positive_multiplicity_required(self):
        s = TorusSpace(1)
        with pytest.raises(ValueError):
            WeightModule(s, [(lf(1), 0)])

    def test_direct_sum_space_mismatch(self):
        a = WeightModule(TorusSpace(1), [(lf(1), 1)])
        b = WeightModule(TorusSpace(2), [(lf(1, 0), 1)])
        with pytest.raises(SpaceMismatchError):
            a.direct_sum(b)

    def test_negated(self):
        s = TorusSpace(2)
        m = WeightModule(s, [(lf(1, -1), 2)])
        assert m.negated().weights == ((lf(-1, 1), 2),)


class TestPLFunction:
    def test_abs_merging_and_sign(self):
        s = TorusSpace(2)
        f = PLFunction(s, [(F(1), lf(1, -1)), (F(2), lf(-1, 1))])
        assert len(f.abs_terms) == 1
        assert f.abs_terms[0][0] == F(3)

    def test_zero_terms_dropped(self):
        s = TorusSpace(2)
        f = PLFunction(s, [(F(1), lf(1, 0)), (F(-1), lf(-1, 0)), (F(5), lf(0, 0))])
        assert f.abs_terms == ()
        assert f.is_zero()

    def test_evaluation(self):
        s = TorusSpace(2)
        f = PLFunction(s, [(F(2), lf(1, -1))], lf(0, 1))
        assert evaluate_pl(f, (3, 1)) == 2 * 2 + 1
        assert f((3, 1)) == 5

    def test_homogeneous(self):
        s = TorusSpace(2)
        f = PLFunction(s, [(F(1), lf(1, 2)), (F(-1), lf(1, 0))], lf(0, 1))
        y = (F(3), F(-2))
        assert f(tuple(5 * c for c in y)) == 5 * f(y)

    def test_add_sub_scale(self):
        s = TorusSpace(2)
        f = PLFunction(s, [(F(1), lf(1, 0))])
        g = PLFunction(s, [(F(1), lf(0, 1))])
        h = f + g - f
        assert h == g
        assert f.scale(3).abs_terms[0][0] == F(3)

    def test_space_mismatch(self):
        f = PLFunction(TorusSpace(1), [(F(1), lf(1))])
        g = PLFunction(TorusSpace(2), [(F(1), lf(1, 0))])
        with pytest.raises(SpaceMismatchError):
            f + g


class TestRho:
    def test_rho_function_coefficients(self):
        s = TorusSpace(1)
        m = WeightModule(s, [(lf(2), 3), (lf(-2), 3), (lf(0), 4)])
        f = rho_function(m)
        # (3/2)|2t| twice merges into one |2t|-class term
        assert f((1,)) == F(6)
        assert f((-1,)) == F(6)

    def test_rho_plus_relation(self):
        # rho(Y) = (rho_plus(Y) + rho_plus(-Y)) / 2
        s = TorusSpace(2)
        m = WeightModule(s, [(lf(1, -1), 2), (lf(1, 1), 1), (lf(-1, 0), 3)])
        f = rho_function(m)
        for y in [(1, 0), (2, -3), (-1, -1), (0, 5)]:
            y = tuple(F(c) for c in y)
            ny = tuple(-c for c in y)
            assert f(y) == F(rho_plus(m, y) + rho_plus(m, ny), 2)

    def test_deficit_with_extra_module(self):
        s = TorusSpace(1)
        h = WeightModule(s, [(lf(2), 1), (lf(-2), 1)], "h")
        g = WeightModule(s, [(lf(1), 1), (lf(-1), 1)], "g/h")
        v = WeightModule(s, [(lf(1), 1)], "V")
        bare = deficit(PairSpec(g_module=g, h_module=h))
        assert bare((1,)) == F(-1)
        with_v = deficit(PairSpec(g_module=g, h_module=h, v_module=v))
        assert with_v((1,)) == F(0)

    def test_pair_spec_space_check(self):
        h = WeightModule(TorusSpace(1), [(lf(1), 1)])
        g = WeightModule(TorusSpace(2), [(lf(1, 0), 1)])
        with pytest.raises(SpaceMismatchError):
            PairSpec(g_module=g, h_module=h)
