"""Catalog-wide invariant checks.

Each ``check_*`` function takes explicit catalogs and returns a
:class:`SweepResult` with a count of checked cases and the list of
counterexamples (empty when the invariant holds).
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .algebra import FiniteAlgebra, satisfies
from .points import (
    Point,
    enumerate_point_morphisms,
    enumerate_points_over,
    equalizer_points,
    is_stably_strong,
    is_strong_point,
    probe_catalog,
    product_points,
    pullback_point,
)
from .schreier import (
    WORK_BOUND,
    homogeneous_oracle,
    intrinsic_schreier_check,
    retraction_compatibility,
    retraction_uniqueness_check,
)
from .special import extract_loop, is_group, is_s_special, loop_round_trip
from .terms import DIRECT, GROUP_CONJUGATION, TWISTED


@dataclass
class SweepResult:
    name: str
    checked: int = 0
    counterexamples: list = field(default_factory=list)
    counts: dict = field(default_factory=dict)
    inconsistencies: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples and not self.inconsistencies

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "ok": self.ok,
            "checked": self.checked,
            "counts": dict(sorted(self.counts.items())),
            "counterexamples": [str(c) for c in self.counterexamples[:5]],
            "n_counterexamples": len(self.counterexamples),
            "inconsistencies": self.inconsistencies[:5],
        }


def _points_over(args):
    Y, algebras = args
    return list(enumerate_points_over(Y, algebras))


def all_points(algebras: Sequence[FiniteAlgebra], jobs: int = 1) -> list[Point]:
    """Every point whose base and carrier both come from ``algebras``."""
    algebras = list(algebras)
    tasks = [(Y, algebras) for Y in algebras]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            chunks = list(pool.map(_points_over, tasks))
    else:
        chunks = [_points_over(t) for t in tasks]
    out = [p for chunk in chunks for p in chunk]
    return sorted(out, key=lambda p: p.key)


def schreier_points(points: Iterable[Point]) -> list[tuple[Point, object]]:
    out = []
    for p in points:
        r = intrinsic_schreier_check(p, DIRECT)
        if r:
            out.append((p, r.retraction))
    return out


def check_equivalence(points: Sequence[Point]) -> SweepResult:
    """Decomposition-based intrinsic check vs. the element-wise oracle."""
    res = SweepResult("homogeneous-equivalence")
    for p in points:
        for t, side in ((DIRECT, "right"), (TWISTED, "left")):
            res.checked += 1
            r = intrinsic_schreier_check(p, t)
            o = homogeneous_oracle(p, side)
            if r.inconsistency:
                res.inconsistencies.append(f"{p!r} {t.name}: {r.inconsistency}")
            if (r.retraction is None) != (o is None):
                res.counterexamples.append((p, t.name, "verdict"))
            elif o is not None and o.map != r.retraction.q.map:
                res.counterexamples.append((p, t.name, "retraction"))
            elif o is not None:
                res.counts[f"{side}-homogeneous"] = res.counts.get(f"{side}-homogeneous", 0) + 1
    return res


def check_schreier_strong(points: Sequence[Point]) -> SweepResult:
    res = SweepResult("schreier-implies-strong")
    for p in points:
        templates = [DIRECT, TWISTED]
        if all(satisfies(A, "group") for A in (p.X, p.Y)):
            templates.append(GROUP_CONJUGATION)
        strong = None
        for t in templates:
            res.checked += 1
            r = intrinsic_schreier_check(p, t)
            if not r:
                continue
            res.counts[t.name] = res.counts.get(t.name, 0) + 1
            if strong is None:
                strong = bool(is_strong_point(p))
            if not strong:
                res.counterexamples.append((p, t.name))
    return res


def check_stably_strong(points: Sequence[Point], probe_algebras: Sequence[FiniteAlgebra]) -> SweepResult:
    res = SweepResult("schreier-implies-stably-strong")
    for p, _ in schreier_points(points):
        res.checked += 1
        v = is_stably_strong(p, probe_catalog(p.Y, probe_algebras))
        if not v:
            res.counterexamples.append((p, v.counterexample))
    return res


def check_pullback_stability(points: Sequence[Point], probe_algebras: Sequence[FiniteAlgebra]) -> SweepResult:
    """Pullbacks of Schreier points are Schreier with retraction q∘π_X."""
    res = SweepResult("pullback-stability")
    for p, r in schreier_points(points):
        for probe in probe_catalog(p.Y, probe_algebras, include_identity=False):
            res.checked += 1
            pb = pullback_point(p, probe.g)
            rr = intrinsic_schreier_check(pb.point, DIRECT)
            if not rr:
                res.counterexamples.append((p, probe.g.map, "not schreier"))
                continue
            expected = tuple(pb.kernel_iso(r.q(pb.comparison.g(e))) for e in pb.point.X.elements)
            if rr.retraction.q.map != expected:
                res.counterexamples.append((p, probe.g.map, "retraction"))
    return res


def check_product_stability(points: Sequence[Point]) -> SweepResult:
    """Products of Schreier points are Schreier with the paired retraction."""
    res = SweepResult("product-stability")
    sp = schreier_points(points)
    for p1, r1 in sp:
        for p2, r2 in sp:
            res.checked += 1
            pp = product_points(p1, p2)
            rr = intrinsic_schreier_check(pp, DIRECT)
            if not rr:
                res.counterexamples.append((p1, p2, "not schreier"))
                continue
            m = p2.X.size
            expected = []
            for e in pp.X.elements:
                x1, x2 = divmod(e, m)
                pair = p1.k(r1.q(x1)) * m + p2.k(r2.q(x2))
                expected.append(pp.kernel.index_of(pair))
            if rr.retraction.q.map != tuple(expected):
                res.counterexamples.append((p1, p2, "retraction"))
    return res


def check_equalizer_stability(points: Sequence[Point], max_pairs: int | None = None) -> SweepResult:
    """Equalizers of parallel morphisms between Schreier points are Schreier,
    with retraction the restriction of q."""
    res = SweepResult("equalizer-stability")
    sp = schreier_points(points)
    for p, r in sp:
        for p2, _ in sp:
            ms = enumerate_point_morphisms(p, p2)
            for i, m1 in enumerate(ms):
                for m2 in ms[i:]:
                    if max_pairs is not None and res.checked >= max_pairs:
                        return res
                    res.checked += 1
                    eq = equalizer_points(m1, m2)
                    rr = intrinsic_schreier_check(eq.point, DIRECT)
                    if not rr:
                        res.counterexamples.append((p, p2, m1.g.map, m2.g.map, "not schreier"))
                        continue
                    # restriction of q: e ↦ q(e) must lie in the equalizer kernel
                    L = eq.point.kernel
                    got = [p.k(r.q(eq.E.members[x])) for x in eq.point.X.elements]
                    have = [eq.E.members[L.members[a]] for a in rr.retraction.q.map]
                    if got != have:
                        res.counterexamples.append((p, p2, m1.g.map, m2.g.map, "retraction"))
    return res


def check_uniqueness(points: Sequence[Point], bound: int = WORK_BOUND) -> SweepResult:
    res = SweepResult("retraction-uniqueness")
    for p, r in schreier_points(points):
        if p.K.size ** p.X.size > bound:
            res.counts["skipped-over-bound"] = res.counts.get("skipped-over-bound", 0) + 1
            continue
        res.checked += 1
        u = retraction_uniqueness_check(p, DIRECT, bound)
        if u.count != 1 or u.retractions[0].map != r.q.map:
            res.counterexamples.append((p, u.count))
    return res


def check_compatibility(points: Sequence[Point]) -> SweepResult:
    res = SweepResult("retraction-compatibility")
    sp = [p for p, _ in schreier_points(points)]
    for p in sp:
        for p2 in sp:
            for m in enumerate_point_morphisms(p, p2):
                res.checked += 1
                rep = retraction_compatibility(m, DIRECT)
                if not rep.ok:
                    res.counterexamples.append((p, p2, m.g.map))
    return res


def check_loop_round_trip(algebras: Sequence[FiniteAlgebra]) -> SweepResult:
    res = SweepResult("loop-round-trip")
    for X in algebras:
        for hand, t in (("right", DIRECT), ("left", TWISTED)):
            res.checked += 1
            special = bool(is_s_special(X, t))
            loop = extract_loop(X, hand)
            if special != (loop is not None) or not loop_round_trip(X, hand):
                res.counterexamples.append((X.name, hand))
            elif special:
                res.counts[f"{hand}-loops"] = res.counts.get(f"{hand}-loops", 0) + 1
    return res


def check_special_iff_group(monoids: Sequence[FiniteAlgebra]) -> SweepResult:
    res = SweepResult("s-special-iff-group")
    for M in monoids:
        res.checked += 1
        special = bool(is_s_special(M, DIRECT))
        grp = is_group(M)
        if special != grp:
            res.counterexamples.append((M.name, special, grp))
        if grp:
            res.counts["groups"] = res.counts.get("groups", 0) + 1
    return res


def check_decomposition_soundness(points: Sequence[Point]) -> SweepResult:
    """f(fold(t(a, y), k, s)) = y for every template that applies."""
    res = SweepResult("decomposition-soundness")
    for p in points:
        templates = [DIRECT, TWISTED]
        if all(satisfies(A, "group") for A in (p.X, p.Y)):
            templates.append(GROUP_CONJUGATION)
        for t in templates:
            for a in p.K.elements:
                for y in p.Y.elements:
                    res.checked += 1
                    if p.f(t.fold(a, y, p.k, p.s)) != y:
                        res.counterexamples.append((p, t.name, a, y))
    return res


def check_first_non_strong(points: Sequence[Point]) -> SweepResult:
    """Records the first non-strong point; a finding, not a failure."""
    res = SweepResult("non-strong-points")
    for p in points:
        res.checked += 1
        if not is_strong_point(p):
            res.counts["non-strong"] = res.counts.get("non-strong", 0) + 1
            res.counts.setdefault("first", repr(p))
    return res
