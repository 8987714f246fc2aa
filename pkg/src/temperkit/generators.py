"""Weight-data constructors for concrete subalgebra pairs.

Two kinds of constructors live here.  The family builders produce exact
weight multisets from combinatorial descriptions (block patterns inside
sl(n), products inside sp(n), orthogonal pairs, classical subalgebras of
sl(n)).  The matrix extractor computes the same data from explicit rational
matrix bases by simultaneous eigenspace decomposition, and serves as an
independent cross-check of the family builders.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import linalg
from .errors import BracketClosureError, DecompositionError
from .model import (LinearForm, PairSpec, SymmetryBlock, TorusSpace,
                    WeightModule)


def _e(i: int, n: int, s: int = 1) -> LinearForm:
    coeffs = [Fraction(0)] * n
    coeffs[i] = Fraction(s)
    return LinearForm(coeffs)


def _diff(i: int, j: int, n: int) -> LinearForm:
    coeffs = [Fraction(0)] * n
    coeffs[i] = Fraction(1)
    coeffs[j] = Fraction(-1)
    return LinearForm(coeffs)


def _zero(n: int) -> LinearForm:
    return LinearForm([Fraction(0)] * n)


def _module(space: TorusSpace, counter: Counter, name: str) -> WeightModule:
    weights = [(LinearForm(c), m) for c, m in counter.items() if m > 0]
    return WeightModule(space, weights, name)


# ---------------------------------------------------------------------------
# block subalgebras of sl(n)

@dataclass(frozen=True)
class BlockPattern:
    """Shape of a block subalgebra of sl(n): diagonal blocks plus selected
    strictly-upper off-diagonal blocks.

    sizes: block sizes (zero-size blocks are dropped at construction);
    diagonal_kind: per block, "full" (all of gl(size)) or "identity"
    (scalars only); upper_blocks: (i, j) pairs with i < j whose full
    off-diagonal block belongs to the subalgebra.
    """

    sizes: tuple[int, ...]
    diagonal_kind: tuple[str, ...]
    upper_blocks: frozenset = frozenset()

    def __post_init__(self):
        if len(self.sizes) != len(self.diagonal_kind):
            raise ValueError("need one diagonal kind per block")
        for k in self.diagonal_kind:
            if k not in ("full", "identity"):
                raise ValueError(f"unknown diagonal kind {k!r}")
        if any(s < 0 for s in self.sizes):
            raise ValueError("block sizes must be nonnegative")
        keep = [i for i, s in enumerate(self.sizes) if s > 0]
        if len(keep) != len(self.sizes):
            remap = {old: new for new, old in enumerate(keep)}
            uppers = frozenset((remap[i], remap[j]) for i, j in self.upper_blocks
                               if i in remap and j in remap)
            object.__setattr__(self, "sizes", tuple(self.sizes[i] for i in keep))
            object.__setattr__(self, "diagonal_kind",
                               tuple(self.diagonal_kind[i] for i in keep))
            object.__setattr__(self, "upper_blocks", uppers)
        else:
            object.__setattr__(self, "upper_blocks", frozenset(self.upper_blocks))
        k = len(self.sizes)
        for i, j in self.upper_blocks:
            if not (0 <= i < j < k):
                raise ValueError(f"bad upper block ({i},{j})")
        for (i, j), (a, b) in itertools.product(self.upper_blocks, repeat=2):
            if j == a and (i, b) not in self.upper_blocks:
                raise BracketClosureError(
                    f"upper blocks ({i},{j}) and ({a},{b}) require ({i},{b})")

    @property
    def n(self) -> int:
        return sum(self.sizes)

    def block_coords(self) -> list[list[int]]:
        out, start = [], 0
        for s in self.sizes:
            out.append(list(range(start, start + s)))
            start += s
        return out


def _block_torus(pattern: BlockPattern) -> TorusSpace:
    """Ambient R^n with trace-zero full blocks and zeroed identity blocks."""
    n = pattern.n
    constraints = []
    for blk, kind in zip(pattern.block_coords(), pattern.diagonal_kind):
        if kind == "full":
            coeffs = [Fraction(0)] * n
            for a in blk:
                coeffs[a] = Fraction(1)
            constraints.append(LinearForm(coeffs))
        else:
            for a in blk:
                constraints.append(_e(a, n))
    return TorusSpace(n, constraints)


def build_sl_block(pattern: BlockPattern) -> PairSpec:
    """Weight data of a block subalgebra h inside g = sl(n).

    The torus is the diagonal of h with the center of each diagonal block
    removed (temperedness is unchanged by dividing out that center).  The
    g-module is the full sl(n) weight multiset minus the h multiset, so the
    dimension identity dim h + dim g/h = n^2 - 1 holds by construction.
    """
    n = pattern.n
    if n == 0:
        raise ValueError("pattern has no coordinates")
    space = _block_torus(pattern)
    blocks = pattern.block_coords()

    h_counter: Counter = Counter()
    for blk, kind in zip(blocks, pattern.diagonal_kind):
        if kind == "full":
            for a, b in itertools.permutations(blk, 2):
                h_counter[_diff(a, b, n).coeffs] += 1
            h_counter[_zero(n).coeffs] += len(blk) - 1
    for i, j in pattern.upper_blocks:
        for a in blocks[i]:
            for b in blocks[j]:
                h_counter[_diff(a, b, n).coeffs] += 1

    g_counter: Counter = Counter()
    for a, b in itertools.permutations(range(n), 2):
        g_counter[_diff(a, b, n).coeffs] += 1
    g_counter[_zero(n).coeffs] += n - 1
    g_counter.subtract(h_counter)
    if any(m < 0 for m in g_counter.values()):
        raise ValueError("subalgebra multiset exceeds sl(n)")

    symmetry = tuple(SymmetryBlock(tuple(blk), signed=False)
                     for blk, kind in zip(blocks, pattern.diagonal_kind)
                     if kind == "full" and len(blk) > 1)
    return PairSpec(
        g_module=_module(space, g_counter, "g/h"),
        h_module=_module(space, h_counter, "h"),
        metadata={"family": "sl_block", "sizes": list(pattern.sizes),
                  "diagonal_kind": list(pattern.diagonal_kind),
                  "upper_blocks": sorted(pattern.upper_blocks)},
        symmetry=symmetry)


def build_product_in_sl(parts: Sequence[int]) -> PairSpec:
    """sl(n_1) x ... x sl(n_r) block-diagonal inside sl(n)."""
    parts = [int(p) for p in parts]
    if len(parts) < 2:
        raise ValueError("need at least two factors (a single part gives h = g)")
    if any(p < 1 for p in parts):
        raise ValueError("factor sizes must be positive")
    pattern = BlockPattern(tuple(parts), ("full",) * len(parts))
    spec = build_sl_block(pattern)
    return PairSpec(g_module=spec.g_module, h_module=spec.h_module,
                    metadata={"family": "product_in_sl", "parts": parts},
                    symmetry=spec.symmetry)


def build_product_in_sp(parts: Sequence[int]) -> PairSpec:
    """sp(n_1) x ... x sp(n_r) inside sp(n), split real forms.

    Torus = R^n with no constraints; weights are the C_n root data
    (+-e_a +- e_b, +-2e_a) split into within-block (h) and cross-block
    (g/h) parts.
    """
    parts = [int(p) for p in parts]
    if len(parts) < 2:
        raise ValueError("need at least two factors (a single part gives h = g)")
    if any(p < 1 for p in parts):
        raise ValueError("factor sizes must be positive")
    n = sum(parts)
    space = TorusSpace(n)
    blocks, start = [], 0
    for p in parts:
        blocks.append(list(range(start, start + p)))
        start += p

    def sp_counter(coords):
        c: Counter = Counter()
        for a, b in itertools.combinations(coords, 2):
            for sa, sb in itertools.product((1, -1), repeat=2):
                form = LinearForm([Fraction(sa * (i == a)) + Fraction(sb * (i == b))
                                   for i in range(n)])
                c[form.coeffs] += 1
        for a in coords:
            c[_e(a, n, 2).coeffs] += 1
            c[_e(a, n, -2).coeffs] += 1
        c[_zero(n).coeffs] += len(coords)
        return c

    h_counter: Counter = Counter()
    for blk in blocks:
        h_counter.update(sp_counter(blk))
    g_counter = sp_counter(list(range(n)))
    g_counter.subtract(h_counter)
    if any(m < 0 for m in g_counter.values()):
        raise ValueError("subalgebra multiset exceeds sp(n)")
    symmetry = tuple(SymmetryBlock(tuple(blk), signed=True) for blk in blocks)
    return PairSpec(
        g_module=_module(space, g_counter, "g/h"),
        h_module=_module(space, h_counter, "h"),
        metadata={"family": "product_in_sp", "parts": parts},
        symmetry=symmetry)


def _so_dim(p: int, q: int) -> int:
    n = p + q
    return n * (n - 1) // 2


def _so_restricted_counter(p: int, q: int, coords: Sequence[int], n: int) -> Counter:
    """Restricted-root multiset of so(p,q) on its split torus coordinates.

    Root multiplicities are the standard ones for the real form; the zero
    multiplicity is fixed by dimension accounting.
    """
    m = min(p, q)
    d = p + q - 2 * m
    c: Counter = Counter()
    used = 0
    for a, b in itertools.combinations(coords, 2):
        for sa, sb in itertools.product((1, -1), repeat=2):
            form = LinearForm([Fraction(sa * (i == a)) + Fraction(sb * (i == b))
                               for i in range(n)])
            c[form.coeffs] += 1
            used += 1
    for a in coords:
        if d > 0:
            c[_e(a, n).coeffs] += d
            c[_e(a, n, -1).coeffs] += d
            used += 2 * d
    zero = _so_dim(p, q) - used
    if zero < 0:
        raise DecompositionError("so(p,q) multiplicities exceed its dimension")
    if zero > 0:
        c[_zero(n).coeffs] += zero
    return c


def build_so_pair(p1: int, q1: int, p2: int, q2: int) -> PairSpec:
    """so(p1,q1) + so(p2,q2) inside so(p1+p2, q1+q2).

    The torus is a split torus of h, of rank min(p1,q1) + min(p2,q2).  The
    complement g/h is the tensor product of the two defining
    representations, whose weights are written down directly.
    """
    for v in (p1, q1, p2, q2):
        if v < 0:
            raise ValueError("signature entries must be nonnegative")
    m1, m2 = min(p1, q1), min(p2, q2)
    d1 = p1 + q1 - 2 * m1
    d2 = p2 + q2 - 2 * m2
    n = m1 + m2
    space = TorusSpace(n)
    u = list(range(m1))
    v = list(range(m1, n))

    h_counter = _so_restricted_counter(p1, q1, u, n)
    h_counter.update(_so_restricted_counter(p2, q2, v, n))

    g_counter: Counter = Counter()
    for a in u:
        for b in v:
            for sa, sb in itertools.product((1, -1), repeat=2):
                form = LinearForm([Fraction(sa * (i == a)) + Fraction(sb * (i == b))
                                   for i in range(n)])
                g_counter[form.coeffs] += 1
    for a in u:
        if d2 > 0:
            g_counter[_e(a, n).coeffs] += d2
            g_counter[_e(a, n, -1).coeffs] += d2
    for b in v:
        if d1 > 0:
            g_counter[_e(b, n).coeffs] += d1
            g_counter[_e(b, n, -1).coeffs] += d1
    if d1 * d2 > 0:
        g_counter[_zero(n).coeffs] += d1 * d2

    total = sum(h_counter.values()) + sum(g_counter.values())
    if total != _so_dim(p1 + p2, q1 + q2):
        raise DecompositionError("so pair dimensions do not add up")
    symmetry = tuple(SymmetryBlock(tuple(blk), signed=True)
                     for blk in (u, v) if blk)
    return PairSpec(
        g_module=_module(space, g_counter, "g/h"),
        h_module=_module(space, h_counter, "h"),
        metadata={"family": "so_pair", "signature": [p1, q1, p2, q2]},
        symmetry=symmetry)


def build_classical_in_sl(kind: str, *params: int) -> PairSpec:
    """A classical subalgebra inside sl of its defining representation.

    kind "so": so(p,q) inside sl(p+q); kind "sp": sp(m) inside sl(2m).
    The torus is a split torus of h; the sl weights are the pairwise
    differences of the defining-representation weights.
    """
    if kind == "so":
        p, q = params
        if p < 0 or q < 0 or p + q < 2:
            raise ValueError("need p + q >= 2")
        m = min(p, q)
        d = p + q - 2 * m
        space = TorusSpace(m)
        rep = []
        for a in range(m):
            rep.append(_e(a, m))
            rep.append(_e(a, m, -1))
        rep.extend([_zero(m)] * d)
        h_counter = _so_restricted_counter(p, q, list(range(m)), m)
        meta = {"family": "classical_in_sl", "kind": "so", "signature": [p, q]}
    elif kind == "sp":
        (m,) = params
        if m < 1:
            raise ValueError("need m >= 1")
        space = TorusSpace(m)
        rep = []
        for a in range(m):
            rep.append(_e(a, m))
            rep.append(_e(a, m, -1))
        h_counter: Counter = Counter()
        for a, b in itertools.combinations(range(m), 2):
            for sa, sb in itertools.product((1, -1), repeat=2):
                form = LinearForm([Fraction(sa * (i == a)) + Fraction(sb * (i == b))
                                   for i in range(m)])
                h_counter[form.coeffs] += 1
        for a in range(m):
            h_counter[_e(a, m, 2).coeffs] += 1
            h_counter[_e(a, m, -2).coeffs] += 1
        h_counter[_zero(m).coeffs] += m
        meta = {"family": "classical_in_sl", "kind": "sp", "m": m}
    else:
        raise ValueError(f"unknown kind {kind!r}")

    # sl(dim rep) weights: pairwise differences of the rep weights, minus
    # one zero for the removed trace
    g_counter: Counter = Counter()
    for wa, wb in itertools.product(rep, repeat=2):
        g_counter[(wa - wb).coeffs] += 1
    g_counter[_zero(space.ambient_dim).coeffs] -= 1
    g_counter.subtract(h_counter)
    if any(mult < 0 for mult in g_counter.values()):
        raise DecompositionError("h multiset exceeds sl weights")
    symmetry = ((SymmetryBlock(tuple(range(space.ambient_dim)), signed=True),)
                if space.ambient_dim > 0 else ())
    return PairSpec(
        g_module=_module(space, g_counter, "g/h"),
        h_module=_module(space, h_counter, "h"),
        metadata=meta,
        symmetry=symmetry)


def realify(spec: PairSpec) -> PairSpec:
    """View a split complex pair as a real pair: every multiplicity doubles."""
    def double(M: WeightModule) -> WeightModule:
        return WeightModule(M.space, [(f, 2 * m) for f, m in M.weights], M.name)

    meta = dict(spec.metadata)
    meta["realified"] = True
    return PairSpec(
        g_module=double(spec.g_module),
        h_module=double(spec.h_module),
        v_module=double(spec.v_module) if spec.v_module is not None else None,
        metadata=meta,
        symmetry=spec.symmetry)


# ---------------------------------------------------------------------------
# parabolic-relative decomposition of a block pattern

def parabolic_decomposition(pattern: BlockPattern):
    """Weight modules (s, l/s, u/v) for h inside the block upper-triangular
    parabolic with the same block structure.

    s = diagonal part of h, l/s = rest of the block-diagonal Levi,
    u/v = strictly-upper cross blocks not belonging to h.  All three live
    on the torus of build_sl_block(pattern).
    """
    n = pattern.n
    space = _block_torus(pattern)
    blocks = pattern.block_coords()

    s_counter: Counter = Counter()
    l_counter: Counter = Counter()
    for blk, kind in zip(blocks, pattern.diagonal_kind):
        for a, b in itertools.permutations(blk, 2):
            l_counter[_diff(a, b, n).coeffs] += 1
        l_counter[_zero(n).coeffs] += len(blk)
        if kind == "full":
            for a, b in itertools.permutations(blk, 2):
                s_counter[_diff(a, b, n).coeffs] += 1
            s_counter[_zero(n).coeffs] += len(blk) - 1
    ls_counter = l_counter.copy()
    ls_counter.subtract(s_counter)

    uv_counter: Counter = Counter()
    k = len(blocks)
    for i, j in itertools.combinations(range(k), 2):
        if (i, j) in pattern.upper_blocks:
            continue
        for a in blocks[i]:
            for b in blocks[j]:
                uv_counter[_diff(a, b, n).coeffs] += 1

    return (_module(space, s_counter, "s"),
            _module(space, ls_counter, "l/s"),
            _module(space, uv_counter, "u/v"))


# ---------------------------------------------------------------------------
# matrix mode

@dataclass(frozen=True)
class MatrixPairInput:
    """Explicit matrix realization of a pair h inside g in gl(ambient_dim).

    diagonalizer is a rational change of basis Q such that every
    Q^-1 T Q, T in torus_basis, is diagonal; it must be supplied by the
    caller so the whole pipeline stays rational.
    """

    ambient_dim: int
    g_basis: tuple
    h_basis: tuple
    torus_basis: tuple
    diagonalizer: tuple
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        n = self.ambient_dim
        for name in ("g_basis", "h_basis", "torus_basis"):
            mats = tuple(tuple(tuple(Fraction(x) for x in row) for row in M)
                         for M in getattr(self, name))
            object.__setattr__(self, name, mats)
            for M in mats:
                if len(M) != n or any(len(row) != n for row in M):
                    raise ValueError(f"{name} entries must be {n}x{n}")
        Q = tuple(tuple(Fraction(x) for x in row) for row in self.diagonalizer)
        if len(Q) != n or any(len(row) != n for row in Q):
            raise ValueError("diagonalizer must be square of ambient size")
        object.__setattr__(self, "diagonalizer", Q)


def _flat(M) -> list[Fraction]:
    return [x for row in M for x in row]


def extract_weights(inp: MatrixPairInput) -> PairSpec:
    """Joint ad-eigenspace decomposition of h and g/h under the torus.

    Candidate weights are differences of the torus eigenvalue functionals
    on the ambient space; multiplicities are computed by exact rank
    calculations inside each candidate weight space.  Dimension sums are
    checked and a DecompositionError is raised if they do not add up
    (which signals that h or g is not stable under the torus).
    """
    n = inp.ambient_dim
    k = len(inp.torus_basis)
    Q = [list(row) for row in inp.diagonalizer]
    Qi = linalg.mat_inv(Q)

    diags = []
    for T in inp.torus_basis:
        D = linalg.mat_mul(Qi, linalg.mat_mul([list(r) for r in T], Q))
        for a in range(n):
            for b in range(n):
                if a != b and D[a][b] != 0:
                    raise DecompositionError(
                        "torus is not diagonal in the supplied basis")
        diags.append([D[a][a] for a in range(n)])
    for (T1, d1), (T2, d2) in itertools.combinations(zip(inp.torus_basis, diags), 2):
        C = linalg.commutator([list(r) for r in T1], [list(r) for r in T2])
        if any(x != 0 for row in C for x in row):
            raise DecompositionError("torus matrices do not commute")

    mu = [tuple(d[a] for d in diags) for a in range(n)]  # eigen-functionals
    positions: dict[tuple, list[int]] = {}
    for a in range(n):
        for b in range(n):
            alpha = tuple(x - y for x, y in zip(mu[a], mu[b]))
            positions.setdefault(alpha, []).append(a * n + b)

    def conjugated_rows(basis):
        return [
            _flat(linalg.mat_mul(Qi, linalg.mat_mul([list(r) for r in M], Q)))
            for M in basis]

    h_rows = conjugated_rows(inp.h_basis)
    g_rows = conjugated_rows(inp.g_basis)
    dim_h = linalg.rank_of(h_rows)
    dim_g = linalg.rank_of(g_rows)
    if dim_h != len(h_rows) or dim_g != len(g_rows):
        raise ValueError("basis lists must be linearly independent")
    for hr in h_rows:
        if not linalg.in_row_space(g_rows, hr):
            raise ValueError("h is not contained in the span of g")
    for A, B in itertools.combinations(inp.h_basis, 2):
        C = linalg.commutator([list(r) for r in A], [list(r) for r in B])
        if not linalg.in_row_space(h_rows, _flat(
                linalg.mat_mul(Qi, linalg.mat_mul(C, Q)))):
            raise BracketClosureError("h basis does not span a subalgebra")

    def dim_in_weight_space(rows, dim_span, pos):
        """dim of (span of rows) intersected with coordinates pos."""
        outside = [c for c in range(n * n) if c not in set(pos)]
        projected = [[r[c] for c in outside] for r in rows]
        return dim_span - linalg.rank_of(projected)

    space = TorusSpace(k)
    h_weights: Counter = Counter()
    q_weights: Counter = Counter()
    got_h = got_g = 0
    for alpha, pos in positions.items():
        mh = dim_in_weight_space(h_rows, dim_h, pos)
        mg = dim_in_weight_space(g_rows, dim_g, pos)
        got_h += mh
        got_g += mg
        key = tuple(Fraction(x) for x in alpha)
        if mh:
            h_weights[key] += mh
        if mg - mh:
            q_weights[key] += mg - mh
    if got_h != dim_h or got_g != dim_g:
        raise DecompositionError(
            "weight space dimensions do not sum to the algebra dimensions")
    return PairSpec(
        g_module=_module(space, q_weights, "g/h"),
        h_module=_module(space, h_weights, "h"),
        metadata=dict(inp.metadata))


def matrix_input_for_block_pattern(pattern: BlockPattern) -> MatrixPairInput:
    """Explicit sl(n) matrices realizing a block pattern, for cross-checks."""
    n = pattern.n
    blocks = pattern.block_coords()

    def unit(a, b):
        return [[Fraction(int(r == a and c == b)) for c in range(n)]
                for r in range(n)]

    def diag(vec):
        return [[Fraction(vec[r]) if r == c else Fraction(0) for c in range(n)]
                for r in range(n)]

    g_basis = [unit(a, b) for a in range(n) for b in range(n) if a != b]
    g_basis += [diag([1 if i == a else (-1 if i == a + 1 else 0) for i in range(n)])
                for a in range(n - 1)]
    h_basis = []
    for blk, kind in zip(blocks, pattern.diagonal_kind):
        if kind == "full":
            for a, b in itertools.permutations(blk, 2):
                h_basis.append(unit(a, b))
            for a, b in zip(blk, blk[1:]):
                h_basis.append(diag([1 if i == a else (-1 if i == b else 0)
                                     for i in range(n)]))
    for i, j in pattern.upper_blocks:
        for a in blocks[i]:
            for b in blocks[j]:
                h_basis.append(unit(a, b))

    torus = [diag(v) for v in _block_torus(pattern).slice_basis()]
    ident = [[Fraction(int(r == c)) for c in range(n)] for r in range(n)]
    return MatrixPairInput(ambient_dim=n, g_basis=tuple(g_basis),
                           h_basis=tuple(h_basis), torus_basis=tuple(torus),
                           diagonalizer=tuple(ident),
                           metadata={"family": "sl_block_matrices"})


# ---------------------------------------------------------------------------
# quaternionic example: sp(1) + sp(1,1) inside sp(2,1)

_LQ = {
    "1": ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)),
    "i": ((0, -1, 0, 0), (1, 0, 0, 0), (0, 0, 0, -1), (0, 0, 1, 0)),
    "j": ((0, 0, -1, 0), (0, 0, 0, 1), (1, 0, 0, 0), (0, -1, 0, 0)),
    "k": ((0, 0, 0, -1), (0, 0, -1, 0), (0, 1, 0, 0), (1, 0, 0, 0)),
}


def _quat_matrix(entries: dict) -> list[list[Fraction]]:
    """12x12 real matrix from a sparse 3x3 quaternionic matrix.

    entries maps (row, col) to a dict of quaternion units to rational
    coefficients; each unit acts by left multiplication on H = R^4.
    """
    M = [[Fraction(0)] * 12 for _ in range(12)]
    for (r, c), q in entries.items():
        for unit, coeff in q.items():
            L = _LQ[unit]
            for a in range(4):
                for b in range(4):
                    if L[a][b]:
                        M[4 * r + a][4 * c + b] += Fraction(coeff) * L[a][b]
    return M


def _quat_conj(q: dict) -> dict:
    return {u: (c if u == "1" else -c) for u, c in q.items()}


def example_sp21_input() -> MatrixPairInput:
    """sp(1) + sp(1,1) inside sp(2,1), realized in gl(12, R).

    sp(2,1) is the quaternionic matrices X with X* J + J X = 0 for
    J = diag(1, 1, -1); h is the block-diagonal sp(1) (slot 0) plus
    sp(1,1) (slots 1, 2).  The split torus of h is one-dimensional,
    generated by the symmetric pair of real units in slots (1,2), (2,1).
    """
    imag = ("i", "j", "k")
    J = (1, 1, -1)

    def pair_entries(r, c, q):
        # X[c][r] is determined by X[r][c] via the signature
        sign = -J[r] * J[c]
        return {(r, c): q, (c, r): {u: sign * v for u, v in _quat_conj(q).items()}}

    h_basis = []
    for u in imag:  # sp(1): imaginary quaternions in slot 0
        h_basis.append(_quat_matrix({(0, 0): {u: 1}}))
    for slot in (1, 2):  # sp(1,1) diagonal: imaginary in slots 1 and 2
        for u in imag:
            h_basis.append(_quat_matrix({(slot, slot): {u: 1}}))
    for u in ("1",) + imag:  # sp(1,1) off-diagonal pair (1,2)
        h_basis.append(_quat_matrix(pair_entries(1, 2, {u: 1})))

    g_basis = list(h_basis)
    for r, c in ((0, 1), (0, 2)):  # the complement of h in sp(2,1)
        for u in ("1",) + imag:
            g_basis.append(_quat_matrix(pair_entries(r, c, {u: 1})))

    torus = [_quat_matrix({(1, 2): {"1": 1}, (2, 1): {"1": 1}})]
    # eigenvectors: slot-0 coordinates (eigenvalue 0), then sums and
    # differences of slot-1 and slot-2 coordinates (eigenvalues +1, -1)
    Q = [[Fraction(0)] * 12 for _ in range(12)]
    for a in range(4):
        Q[a][a] = Fraction(1)
        Q[4 + a][4 + a] = Fraction(1)
        Q[8 + a][4 + a] = Fraction(1)
        Q[4 + a][8 + a] = Fraction(1)
        Q[8 + a][8 + a] = Fraction(-1)
    return MatrixPairInput(ambient_dim=12, g_basis=tuple(g_basis),
                           h_basis=tuple(h_basis), torus_basis=tuple(torus),
                           diagonalizer=tuple(tuple(row) for row in Q),
                           metadata={"family": "sp21_quaternionic"})


# ---------------------------------------------------------------------------
# named block patterns for the two-block and three-block families

def _uppers(*pairs):
    return frozenset(pairs)


TABLE1_PATTERNS = {
    "H1": lambda p, q: BlockPattern((p, q), ("full", "identity")),
    "H2": lambda p, q: BlockPattern((p, q), ("full", "identity"), _uppers((0, 1))),
    "H3": lambda p, q: BlockPattern((p, q), ("full", "full"), _uppers((0, 1))),
    "H4": lambda p, q: BlockPattern((p, q), ("full", "full")),
}

TABLE2_PATTERNS = {
    "H1": lambda p, q, r: BlockPattern((p, q, r), ("full", "identity", "identity"),
                                       _uppers((0, 2))),
    "H2": lambda p, q, r: BlockPattern((p, q, r), ("identity", "full", "identity"),
                                       _uppers((0, 2))),
    "H3": lambda p, q, r: BlockPattern((p, q, r), ("identity", "full", "identity"),
                                       _uppers((0, 1), (0, 2))),
    "H4": lambda p, q, r: BlockPattern((p, q, r), ("full", "full", "full"),
                                       _uppers((0, 1), (0, 2), (1, 2))),
    "H5": lambda p, q, r: BlockPattern((p, q, r), ("full", "full", "identity")),
    "H6": lambda p, q, r: BlockPattern((p, q, r), ("full", "full", "identity"),
                                       _uppers((0, 2))),
    "H7": lambda p, q, r: BlockPattern((p, q, r), ("full", "full", "identity"),
                                       _uppers((0, 1), (0, 2))),
    "H8": lambda p, q, r: BlockPattern((p, q, r), ("full", "identity", "full"),
                                       _uppers((0, 2))),
    "H9": lambda p, q, r: BlockPattern((p, q, r), ("identity", "full", "full"),
                                       _uppers((0, 1), (0, 2))),
    "H10": lambda p, q, r: BlockPattern((p, q, r), ("full", "full", "full")),
    "H11": lambda p, q, r: BlockPattern((p, q, r), ("full", "full", "full"),
                                        _uppers((0, 2))),
    "H12": lambda p, q, r: BlockPattern((p, q, r), ("full", "full", "full"),
                                        _uppers((0, 1), (0, 2))),
}
