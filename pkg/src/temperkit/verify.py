"""Global nonnegativity decision for homogeneous piecewise-linear functions.

A PLFunction is linear on each full-dimensional cell of the arrangement of
its absolute-value hyperplanes, so it is nonnegative on a cell exactly when
it is nonnegative on the cell's extreme rays and on the common lineality
space.  Enumerating the cells and checking ray values therefore decides
global nonnegativity exactly, yielding either a replayable certificate (all
ray values) or an explicit direction where the function is negative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .cones import enumerate_cells
from .model import LinearForm, PLFunction, SymmetryBlock, TorusSpace, evaluate_pl


@dataclass(frozen=True)
class Chamber:
    """A maximal cone on which the function is linear."""

    sign_vector: tuple[int, ...]           # +1/-1 per hyperplane
    ray_indices: tuple[int, ...]           # indices into the shared ray table
    restricted_linear_form: LinearForm


@dataclass(frozen=True)
class NonnegCertificate:
    hyperplanes: tuple[LinearForm, ...]
    rays: tuple[tuple[Fraction, ...], ...]  # shared ray table, ambient coords
    ray_values: tuple[Fraction, ...]        # f at each ray, all >= 0
    chambers: tuple[Chamber, ...]
    lineality: tuple[tuple[Fraction, ...], ...] = ()
    symmetry_reduced: bool = False
    antipodal_reduced: bool = False


@dataclass(frozen=True)
class Witness:
    direction: tuple[Fraction, ...]
    value: Fraction


def distinct_hyperplanes(f: PLFunction) -> list[LinearForm]:
    """Primitive, sign-normalized, deduplicated forms of the abs terms."""
    seen = {}
    for _, form in f.abs_terms:
        p = form.primitive()
        seen.setdefault(p.coeffs, p)
    return sorted(seen.values(), key=lambda h: h.coeffs)


def _linearization(f: PLFunction, hyperplanes: Sequence[LinearForm],
                   signs: Sequence[int]) -> LinearForm:
    """The linear form equal to f on a cell with the given hyperplane signs."""
    index = {h.coeffs: i for i, h in enumerate(hyperplanes)}
    out = f.linear_term
    for c, form in f.abs_terms:
        i = index[form.primitive().coeffs]
        # form = t * hyperplane with t > 0, so |form| = t * sign * hyperplane
        h = hyperplanes[i]
        t = next(a / b for a, b in zip(form.coeffs, h.coeffs) if b != 0)
        out = out + h.scale(c * t * signs[i])
    return out


def enumerate_chambers(hyperplanes: Sequence[LinearForm], space: TorusSpace,
                       f: Optional[PLFunction] = None,
                       restrict: Sequence[Sequence[int]] = (),
                       antipodal_prune: bool = False):
    """Full-dimensional cells of the arrangement on the torus slice.

    Returns (chambers, ray_table, lineality_basis).  When ``f`` is given the
    chambers carry its per-cell linearization, otherwise the zero form.
    """
    basis = space.slice_basis()
    int_normals = [h.integer_coeffs() for h in hyperplanes]
    complex_ = enumerate_cells(int_normals, basis, restrict=tuple(restrict),
                               antipodal_prune=antipodal_prune)
    ray_index: dict[tuple[int, ...], int] = {}
    ray_table: list[tuple[Fraction, ...]] = []
    chambers = []
    zero = LinearForm([Fraction(0)] * space.ambient_dim)
    for cell in complex_.cells:
        idxs = []
        for vec in cell.rays:
            i = ray_index.get(vec)
            if i is None:
                i = len(ray_table)
                ray_index[vec] = i
                ray_table.append(tuple(Fraction(x) for x in vec))
            idxs.append(i)
        form = _linearization(f, hyperplanes, cell.signs) if f is not None else zero
        chambers.append(Chamber(sign_vector=cell.signs,
                                ray_indices=tuple(idxs),
                                restricted_linear_form=form))
    lineality = tuple(tuple(Fraction(x) for x in g) for g in complex_.lineality)
    return chambers, tuple(ray_table), lineality


def _dominant_restrict(symmetry: Sequence[SymmetryBlock], ambient_dim: int):
    """Inequality normals cutting out one fundamental domain per symmetry block."""
    normals = []
    for block in symmetry:
        coords = block.coords
        for a, b in zip(coords, coords[1:]):
            v = [0] * ambient_dim
            v[a], v[b] = 1, -1
            normals.append(tuple(v))
        if block.signed and coords:
            v = [0] * ambient_dim
            v[coords[-1]] = 1
            normals.append(tuple(v))
    return normals


def _check_symmetry(f: PLFunction, symmetry: Sequence[SymmetryBlock]) -> None:
    """Verify f is invariant under the generators of the symmetry group."""
    n = f.space.ambient_dim

    def transformed(perm_sign):
        def map_form(form):
            out = [Fraction(0)] * n
            for i, c in enumerate(form.coeffs):
                j, s = perm_sign[i]
                out[j] += s * c
            return LinearForm(out)
        space = TorusSpace(n, [map_form(c) for c in f.space.constraints])
        return PLFunction(space, [(c, map_form(a)) for c, a in f.abs_terms],
                          map_form(f.linear_term))

    idmap = [(i, 1) for i in range(n)]
    for block in symmetry:
        coords = block.coords
        for a, b in zip(coords, coords[1:]):
            pm = list(idmap)
            pm[a], pm[b] = (b, 1), (a, 1)
            g = transformed(pm)
            if g.space != f.space or g != f:
                raise ValueError("function is not invariant under the declared symmetry")
        if block.signed and coords:
            pm = list(idmap)
            j = coords[-1]
            pm[j] = (j, -1)
            g = transformed(pm)
            if g.space != f.space or g != f:
                raise ValueError("function is not invariant under the declared symmetry")


def is_nonnegative(f: PLFunction,
                   symmetry: Sequence[SymmetryBlock] = (),
                   antipodal_prune: bool = False):
    """Decide f >= 0 on the whole torus slice, exactly.

    Returns a NonnegCertificate or a Witness.  ``symmetry`` restricts the
    enumeration to one fundamental domain after verifying that f really is
    invariant under the declared group; ``antipodal_prune`` halves the work
    for even f.  Both options change only the certificate size, never the
    verdict.
    """
    space = f.space
    if space.dim == 0:
        return NonnegCertificate(hyperplanes=(), rays=(), ray_values=(),
                                 chambers=(Chamber((), (), f.linear_term),))
    restrict: Sequence = ()
    if symmetry:
        _check_symmetry(f, symmetry)
        restrict = _dominant_restrict(symmetry, space.ambient_dim)
    if antipodal_prune:
        if restrict:
            raise ValueError("symmetry and antipodal pruning cannot be combined")
        if not f.linear_term.is_zero():
            raise ValueError("antipodal pruning requires an even function")
    hyperplanes = distinct_hyperplanes(f)
    if not hyperplanes:
        # purely linear and homogeneous: nonnegative iff identically zero
        for g in space.slice_basis():
            v = f.linear_term(g)
            if v != 0:
                d = g if v < 0 else tuple(-x for x in g)
                d = tuple(Fraction(x) for x in d)
                return Witness(direction=d, value=evaluate_pl(f, d))
        return NonnegCertificate(hyperplanes=(), rays=(), ray_values=(),
                                 chambers=(Chamber((), (), f.linear_term),))
    chambers, ray_table, lineality = enumerate_chambers(
        hyperplanes, space, f=f, restrict=restrict,
        antipodal_prune=antipodal_prune)
    # f restricted to the lineality space is linear; fold its +- generators
    # into the ray table so the certificate is self-contained
    ray_table = list(ray_table)
    ray_values = [evaluate_pl(f, r) for r in ray_table]
    extra = []
    for g in lineality:
        for d in (g, tuple(-x for x in g)):
            extra.append(d)
    for d in extra:
        ray_table.append(d)
        ray_values.append(evaluate_pl(f, d))

    worst = None
    for vec, val in zip(ray_table, ray_values):
        if val < 0 and (worst is None or (val, vec) < worst):
            worst = (val, vec)
    if worst is not None:
        return Witness(direction=worst[1], value=worst[0])
    return NonnegCertificate(hyperplanes=tuple(hyperplanes),
                             rays=tuple(ray_table),
                             ray_values=tuple(ray_values),
                             chambers=tuple(chambers),
                             lineality=lineality,
                             symmetry_reduced=bool(symmetry),
                             antipodal_reduced=antipodal_prune)


_INT64_BOUND = 2 ** 62


def grid_oracle(f: PLFunction, resolution: int) -> Optional[Witness]:
    """Brute-force search for a negative value on an integer grid.

    Evaluates f at every integer point of the closed ball of the given
    l-infinity radius in slice coordinates.  Exact (integer arithmetic
    after clearing denominators); returns the most negative point found, or
    None.  Never authoritative for the nonnegative answer.
    """
    if resolution < 1:
        raise ValueError("resolution must be >= 1")
    space = f.space
    basis = space.slice_basis()
    d = len(basis)
    if d == 0:
        return None
    dens = [f.linear_term.coeffs[i].denominator for i in range(space.ambient_dim)]
    dens += [c.denominator for c, _ in f.abs_terms]
    M = math.lcm(*dens) if dens else 1
    # rows: abs forms in slice coordinates, all integer after scaling
    A = [[int(sum(a * Fraction(b) for a, b in zip(form.coeffs, g)))
          for g in basis] for _, form in f.abs_terms]
    C = [int(c * M) for c, _ in f.abs_terms]
    Lrow = [int(M * sum(a * Fraction(b) for a, b in zip(f.linear_term.coeffs, g)))
            for g in basis]

    max_abs = 0
    for row, c in zip(A, C):
        max_abs += abs(c) * sum(abs(x) for x in row) * resolution
    max_abs += sum(abs(x) for x in Lrow) * resolution
    coords = np.array(np.meshgrid(*([np.arange(-resolution, resolution + 1)] * d),
                                  indexing="ij")).reshape(d, -1).T
    if max_abs < _INT64_BOUND:
        coords64 = coords.astype(np.int64)
        vals = coords64 @ np.array(Lrow, dtype=np.int64)
        if A:
            vals = vals + np.abs(coords64 @ np.array(A, dtype=np.int64).T) \
                @ np.array(C, dtype=np.int64)
        i = int(np.argmin(vals))
        if vals[i] >= 0:
            return None
        best = tuple(int(x) for x in coords[i])
    else:
        best, best_val = None, 0
        for pt in coords:
            v = sum(l * int(x) for l, x in zip(Lrow, pt))
            for row, c in zip(A, C):
                v += c * abs(sum(a * int(x) for a, x in zip(row, pt)))
            if v < best_val:
                best, best_val = tuple(int(x) for x in pt), v
        if best is None:
            return None
    direction = space.lift(best)
    return Witness(direction=direction, value=evaluate_pl(f, direction))
