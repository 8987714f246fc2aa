"""Verdict assembly, family scans, and the tensor-product dictionary."""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .generators import (TABLE1_PATTERNS, TABLE2_PATTERNS, build_classical_in_sl,
                         build_product_in_sl, build_product_in_sp, build_so_pair,
                         build_sl_block, realify)
from .model import PairSpec, deficit, evaluate_pl
from .verify import NonnegCertificate, Witness, distinct_hyperplanes, is_nonnegative


@dataclass(frozen=True)
class Verdict:
    tempered: bool
    evidence: object                     # NonnegCertificate or Witness
    deficit_summary: dict
    spec_echo: dict

    def __post_init__(self):
        assert self.tempered == isinstance(self.evidence, NonnegCertificate)


def check(spec: PairSpec, use_symmetry: bool = False,
          antipodal_prune: bool = False) -> Verdict:
    """Decide the temperedness inequality for a pair, with exact evidence.

    use_symmetry restricts chamber enumeration to one fundamental domain of
    the symmetry group declared on the spec (verified at run time); it
    changes certificate size, never the verdict.
    """
    f = deficit(spec)
    symmetry = spec.symmetry if use_symmetry else ()
    evidence = is_nonnegative(f, symmetry=symmetry,
                              antipodal_prune=antipodal_prune)
    summary = {"hyperplanes": len(distinct_hyperplanes(f)),
               "torus_dim": f.space.dim}
    if isinstance(evidence, NonnegCertificate):
        summary["chambers"] = len(evidence.chambers)
        summary["rays"] = len(evidence.rays)
    else:
        # replay the witness through plain evaluation, independent of the
        # enumeration machinery
        assert evaluate_pl(f, evidence.direction) == evidence.value < 0
    return Verdict(tempered=isinstance(evidence, NonnegCertificate),
                   evidence=evidence,
                   deficit_summary=summary,
                   spec_echo=dict(spec.metadata))


def check_with_module(spec: PairSpec, use_symmetry: bool = False) -> Verdict:
    """Decide the three-term inequality for a pair carrying an extra module."""
    if spec.v_module is None:
        raise ValueError("spec has no extra module; use check()")
    return check(spec, use_symmetry=use_symmetry)


# ---------------------------------------------------------------------------
# family scans

@dataclass(frozen=True)
class ScanPoint:
    params: tuple
    tempered: bool
    predicted: bool
    summary: dict


@dataclass(frozen=True)
class ScanReport:
    family: str
    ranges: dict
    points: tuple[ScanPoint, ...]
    mismatches: tuple[ScanPoint, ...]

    @property
    def clean(self) -> bool:
        return not self.mismatches


def _partitions(n: int, largest: Optional[int] = None):
    """Weakly decreasing partitions of n."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


TABLE1_PREDICATES = {
    "H1": lambda p, q: p <= q + 1,
    "H2": lambda p, q: p == 1,
    "H3": lambda p, q: p == 1 and q == 1,
    "H4": lambda p, q: p <= q + 1 and q <= p + 1,
}

TABLE2_PREDICATES = {
    "H1": lambda p, q, r: p <= q + 1,
    "H2": lambda p, q, r: q <= p + r + 1,
    "H3": lambda p, q, r: q <= r + 1,
    "H4": lambda p, q, r: p == 1 and q == 1 and r == 1,
    "H5": lambda p, q, r: p <= q + r + 1 and q <= p + r + 1,
    "H6": lambda p, q, r: p <= q + 1 and q <= p + r + 1,
    "H7": lambda p, q, r: p == 1 and q <= r + 1,
    "H8": lambda p, q, r: p <= q + 1 and r <= q + 1,
    "H9": lambda p, q, r: q <= r + 1 and r <= q + 1,
    "H10": lambda p, q, r: p <= q + r + 1 and q <= p + r + 1 and r <= p + q + 1,
    "H11": lambda p, q, r: p <= q + 1 and q <= p + r + 1 and r <= q + 1,
    "H12": lambda p, q, r: p == 1 and q <= r + 1 and r <= q + 1,
}


def _scan_table1(pmax: int = 6, qmax: int = 6, patterns: Sequence[str] = ()):
    names = list(patterns) or list(TABLE1_PATTERNS)
    for name in names:
        for p in range(1, pmax + 1):
            for q in range(1, qmax + 1):
                spec = build_sl_block(TABLE1_PATTERNS[name](p, q))
                yield (name, p, q), spec, TABLE1_PREDICATES[name](p, q)


def _scan_table2(max: int = 4, patterns: Sequence[str] = ()):
    names = list(patterns) or list(TABLE2_PATTERNS)
    for name in names:
        for p, q, r in itertools.product(range(1, max + 1), repeat=3):
            spec = build_sl_block(TABLE2_PATTERNS[name](p, q, r))
            yield (name, p, q, r), spec, TABLE2_PREDICATES[name](p, q, r)


def _scan_example52_sl(n: int = 8):
    for total in range(2, n + 1):
        for parts in _partitions(total):
            if len(parts) < 2:
                continue
            yield (parts,), build_product_in_sl(parts), 2 * parts[0] <= total + 1


def _scan_example52_sp(n: int = 4):
    for total in range(2, n + 1):
        for parts in _partitions(total):
            if len(parts) < 2:
                continue
            yield (parts,), build_product_in_sp(parts), 2 * parts[0] <= total


def _scan_example52_so(total: int = 6):
    for p1, q1, p2, q2 in itertools.product(range(1, total + 1), repeat=4):
        if p1 + q1 + p2 + q2 > total:
            continue
        spec = build_so_pair(p1, q1, p2, q2)
        yield (p1, q1, p2, q2), spec, abs(p1 + q1 - p2 - q2) <= 2


def _scan_example51(total: int = 6, rank: int = 4):
    for p in range(1, total):
        for q in range(1, total - p + 1):
            yield ("so_in_sl", p, q), build_classical_in_sl("so", p, q), True
    for m in range(1, rank + 1):
        yield ("sp_in_sl", m), build_classical_in_sl("sp", m), False
    for m in range(1, rank + 1):
        for n in range(1, m + 1):
            yield (("sl_C", m, n), realify(build_product_in_sl((m, n))),
                   abs(m - n) <= 1)
            yield (("so_C", m, n),
                   realify(build_so_pair((m + 1) // 2, m // 2,
                                         (n + 1) // 2, n // 2)),
                   abs(m - n) <= 2)
            yield (("sp_C", m, n), realify(build_product_in_sp((m, n))),
                   m == n)


FAMILIES: dict[str, Callable] = {
    "table1": _scan_table1,
    "table2": _scan_table2,
    "example51": _scan_example51,
    "example52-sl": _scan_example52_sl,
    "example52-sp": _scan_example52_sp,
    "example52-so": _scan_example52_so,
}


def _scan_one(task):
    spec, use_symmetry = task
    v = check(spec, use_symmetry=use_symmetry)
    return v.tempered, v.deficit_summary


def scan_family(family: str, use_symmetry: bool = True, workers: int = 1,
                **ranges) -> ScanReport:
    """Run check over a named parameter family and compare with its
    closed-form predicate.

    Scans enable the symmetry-reduced enumeration by default because the
    large table points are far out of reach of full enumeration; pass
    use_symmetry=False to force full enumeration on small ranges.  workers
    > 1 spreads the points over a process pool; results are deterministic
    either way.
    """
    if family not in FAMILIES:
        raise KeyError(f"unknown family {family!r}; known: {sorted(FAMILIES)}")
    items = list(FAMILIES[family](**ranges))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(
                _scan_one, [(spec, use_symmetry) for _, spec, _ in items]))
    else:
        results = [_scan_one((spec, use_symmetry)) for _, spec, _ in items]
    points = []
    mismatches = []
    for (params, _, predicted), (tempered, summary) in zip(items, results):
        point = ScanPoint(params=params, tempered=tempered,
                          predicted=predicted, summary=summary)
        points.append(point)
        if tempered != predicted:
            mismatches.append(point)
    return ScanReport(family=family, ranges=dict(ranges),
                      points=tuple(points), mismatches=tuple(mismatches))


def render_scan_table(report: ScanReport) -> str:
    """Aligned text table of a scan report."""
    lines = [f"family: {report.family}   points: {len(report.points)}   "
             f"mismatches: {len(report.mismatches)}"]
    header = f"{'params':<28} {'verdict':<12} {'predicted':<12} chambers"
    lines.append(header)
    lines.append("-" * len(header))
    for pt in report.points:
        verdict = "tempered" if pt.tempered else "not tempered"
        predicted = "tempered" if pt.predicted else "not tempered"
        mark = "" if pt.tempered == pt.predicted else "  << MISMATCH"
        chambers = pt.summary.get("chambers", "-")
        lines.append(f"{str(pt.params):<28} {verdict:<12} {predicted:<12} "
                     f"{chambers}{mark}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# tensor products of degenerate principal series

def tensor_product_check(variant: int, *params: int,
                         use_symmetry: bool = True) -> Verdict:
    """Map a tensor-product temperedness question to a block-pattern check.

    variant 1, params (k, l, n): product of the two Grassmannian series
        attached to (k, n-k) and (n-l, l); reduces to the three-block
        pattern H12 with sizes (|k-l|, min(k,l), n-max(k,l)).
    variant 2, params (a, b, c): flag series (a,b,c) against (b+c, a);
        reduces to H11 with sizes (b, a, c).
    variant 3, params (a, b, c): flag series (a,b,c) against (c,b,a);
        reduces to H10 with sizes (a, b, c).
    """
    if variant == 1:
        k, l, n = params
        if not (0 < k < n and 0 < l < n):
            raise ValueError("need 0 < k, l < n")
        sizes = (abs(k - l), min(k, l), n - max(k, l))
        pattern = TABLE2_PATTERNS["H12"](*sizes)
        meta = {"question": "tensor_product", "variant": 1, "k": k, "l": l, "n": n}
    elif variant == 2:
        a, b, c = params
        if min(a, b, c) < 1:
            raise ValueError("need a, b, c >= 1")
        sizes = (b, a, c)
        pattern = TABLE2_PATTERNS["H11"](*sizes)
        meta = {"question": "tensor_product", "variant": 2, "a": a, "b": b, "c": c}
    elif variant == 3:
        a, b, c = params
        if min(a, b, c) < 1:
            raise ValueError("need a, b, c >= 1")
        sizes = (a, b, c)
        pattern = TABLE2_PATTERNS["H10"](*sizes)
        meta = {"question": "tensor_product", "variant": 3, "a": a, "b": b, "c": c}
    else:
        raise ValueError("variant must be 1, 2 or 3")
    spec = build_sl_block(pattern)
    spec = PairSpec(g_module=spec.g_module, h_module=spec.h_module,
                    metadata={**spec.metadata, **meta}, symmetry=spec.symmetry)
    return check(spec, use_symmetry=use_symmetry)
