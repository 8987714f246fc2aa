import itertools
import random
from fractions import Fraction

import pytest

from temperkit.check import check
from temperkit.errors import BracketClosureError, DecompositionError
from temperkit.generators import (TABLE1_PATTERNS, TABLE2_PATTERNS,
                                  BlockPattern, MatrixPairInput,
                                  build_classical_in_sl, build_product_in_sl,
                                  build_product_in_sp, build_so_pair,
                                  build_sl_block, example_sp21_input,
                                  extract_weights,
                                  matrix_input_for_block_pattern,
                                  parabolic_decomposition, realify)
from temperkit.model import deficit, evaluate_pl, rho_function

F = Fraction


class TestBlockPattern:
    def test_zero_blocks_dropped(self):
        p = BlockPattern((2, 0, 3), ("full", "identity", "full"),
                         frozenset({(0, 2)}))
        assert p.sizes == (2, 3)
        assert p.upper_blocks == frozenset({(0, 1)})

    def test_bracket_closure_enforced(self):
        with pytest.raises(BracketClosureError):
            BlockPattern((1, 1, 1), ("full",) * 3, frozenset({(0, 1), (1, 2)}))

    def test_bad_upper_block(self):
        with pytest.raises(ValueError):
            BlockPattern((1, 1), ("full", "full"), frozenset({(1, 0)}))

    def test_bad_kind(self):
        with pytest.raises(ValueError):
            BlockPattern((1,), ("diagonal",))


class TestDimensionAccounting:
    @pytest.mark.parametrize("name", sorted(TABLE1_PATTERNS))
    def test_table1_dims(self, name):
        for p, q in itertools.product(range(1, 4), repeat=2):
            pattern = TABLE1_PATTERNS[name](p, q)
            spec = build_sl_block(pattern)
            n = pattern.n
            h_dim = sum(s * s for s, k in zip(pattern.sizes, pattern.diagonal_kind)
                        if k == "full")
            h_dim -= sum(1 for k in pattern.diagonal_kind if k == "full")
            h_dim += sum(pattern.sizes[i] * pattern.sizes[j]
                         for i, j in pattern.upper_blocks)
            assert spec.h_module.total_dim == h_dim
            assert spec.h_module.total_dim + spec.g_module.total_dim == n * n - 1

    def test_product_in_sp_dims(self):
        spec = build_product_in_sp((2, 1))
        # sp(m, R) has dimension m(2m+1)
        assert spec.h_module.total_dim == 2 * 5 + 1 * 3
        assert spec.h_module.total_dim + spec.g_module.total_dim == 3 * 7

    def test_so_pair_dims(self):
        spec = build_so_pair(2, 1, 1, 1)
        def so_dim(p, q):
            n = p + q
            return n * (n - 1) // 2
        assert spec.h_module.total_dim == so_dim(2, 1) + so_dim(1, 1)
        assert (spec.h_module.total_dim + spec.g_module.total_dim
                == so_dim(3, 2))

    def test_classical_in_sl_dims(self):
        spec = build_classical_in_sl("so", 2, 2)
        assert spec.h_module.total_dim == 6
        assert spec.h_module.total_dim + spec.g_module.total_dim == 16 - 1
        spec = build_classical_in_sl("sp", 2)
        assert spec.h_module.total_dim == 10
        assert spec.h_module.total_dim + spec.g_module.total_dim == 16 - 1


def slice_weights(module):
    """Weight multiset in slice coordinates, presentation independent."""
    basis = module.space.slice_basis()
    out = {}
    for form, mult in module.weights:
        key = tuple(form(g) for g in basis)
        out[key] = out.get(key, 0) + mult
    return out


class TestCrossOracle:
    """The combinatorial builder and the matrix extractor must agree."""

    @pytest.mark.parametrize("name", sorted(TABLE1_PATTERNS))
    def test_table1_patterns(self, name):
        for p, q in itertools.product(range(1, 4), repeat=2):
            pattern = TABLE1_PATTERNS[name](p, q)
            combinatorial = build_sl_block(pattern)
            extracted = extract_weights(matrix_input_for_block_pattern(pattern))
            assert slice_weights(extracted.h_module) == \
                slice_weights(combinatorial.h_module)
            assert slice_weights(extracted.g_module) == \
                slice_weights(combinatorial.g_module)

    @pytest.mark.parametrize("name", ["H4", "H7", "H10", "H11", "H12"])
    def test_table2_patterns(self, name):
        for p, q, r in itertools.product(range(1, 3), repeat=3):
            pattern = TABLE2_PATTERNS[name](p, q, r)
            combinatorial = build_sl_block(pattern)
            extracted = extract_weights(matrix_input_for_block_pattern(pattern))
            assert slice_weights(extracted.h_module) == \
                slice_weights(combinatorial.h_module)
            assert slice_weights(extracted.g_module) == \
                slice_weights(combinatorial.g_module)


class TestFamilies:
    def test_product_in_sl_permutation_invariance(self):
        a = check(build_product_in_sl((3, 1, 2)), use_symmetry=True)
        b = check(build_product_in_sl((1, 2, 3)), use_symmetry=True)
        assert a.tempered == b.tempered

    def test_product_needs_two_parts(self):
        with pytest.raises(ValueError):
            build_product_in_sl((4,))
        with pytest.raises(ValueError):
            build_product_in_sp((4,))

    def test_realify_doubles(self):
        spec = build_product_in_sl((2, 1))
        doubled = realify(spec)
        assert doubled.g_module.total_dim == 2 * spec.g_module.total_dim
        assert doubled.h_module.total_dim == 2 * spec.h_module.total_dim
        assert doubled.metadata["realified"] is True

    def test_so_pair_torus_rank(self):
        spec = build_so_pair(3, 1, 2, 2)
        assert spec.space.dim == min(3, 1) + min(2, 2)


class TestParabolicDecomposition:
    @pytest.mark.parametrize("pattern_fn,sizes", [
        (TABLE1_PATTERNS["H2"], (2, 3)),
        (TABLE2_PATTERNS["H7"], (1, 2, 2)),
    ])
    def test_identity_at_random_points(self, pattern_fn, sizes):
        pattern = pattern_fn(*sizes)
        spec = build_sl_block(pattern)
        s_mod, ls_mod, uv_mod = parabolic_decomposition(pattern)
        lhs = deficit(spec)
        rhs = (rho_function(ls_mod) + rho_function(uv_mod).scale(2)
               - rho_function(s_mod))
        rng = random.Random(5)
        basis = spec.space.slice_basis()
        for _ in range(50):
            coords = [F(rng.randint(-20, 20), rng.randint(1, 7))
                      for _ in basis]
            y = spec.space.lift(coords)
            assert evaluate_pl(lhs, y) == evaluate_pl(rhs, y)


class TestMatrixMode:
    def test_non_commuting_torus_rejected(self):
        E01 = ((0, 1), (0, 0))
        E10 = ((0, 0), (1, 0))
        ident = ((1, 0), (0, 1))
        with pytest.raises(DecompositionError):
            extract_weights(MatrixPairInput(
                ambient_dim=2, g_basis=(E01, E10), h_basis=(),
                torus_basis=(E01, E10), diagonalizer=ident))

    def test_non_diagonal_torus_rejected(self):
        E01 = ((0, 1), (0, 0))
        ident = ((1, 0), (0, 1))
        with pytest.raises(DecompositionError):
            extract_weights(MatrixPairInput(
                ambient_dim=2, g_basis=(E01,), h_basis=(),
                torus_basis=(E01,), diagonalizer=ident))

    def test_h_outside_g_rejected(self):
        D = ((1, 0), (0, -1))
        E01 = ((0, 1), (0, 0))
        ident = ((1, 0), (0, 1))
        with pytest.raises(ValueError):
            extract_weights(MatrixPairInput(
                ambient_dim=2, g_basis=(D,), h_basis=(E01,),
                torus_basis=(D,), diagonalizer=ident))

    def test_h_not_subalgebra_rejected(self):
        # span{E01, E10} is not bracket-closed inside gl(2)
        D = ((1, 0), (0, -1))
        E01 = ((0, 1), (0, 0))
        E10 = ((0, 0), (1, 0))
        ident = ((1, 0), (0, 1))
        with pytest.raises(BracketClosureError):
            extract_weights(MatrixPairInput(
                ambient_dim=2, g_basis=(D, E01, E10), h_basis=(E01, E10),
                torus_basis=(D,), diagonalizer=ident))

    def test_sp21_weight_data(self):
        spec = extract_weights(example_sp21_input())
        assert spec.space.dim == 1
        assert spec.h_module.total_dim == 13
        assert spec.g_module.total_dim == 8
        h = dict(spec.h_module.weights)
        q = dict(spec.g_module.weights)
        h_by_val = {tuple(f.coeffs): m for f, m in h.items()}
        assert h_by_val[(F(0),)] == 7
        assert h_by_val[(F(2),)] == 3
        assert h_by_val[(F(-2),)] == 3
        q_by_val = {tuple(f.coeffs): m for f, m in q.items()}
        assert q_by_val[(F(1),)] == 4
        assert q_by_val[(F(-1),)] == 4
