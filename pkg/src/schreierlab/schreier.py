"""Schreier and intrinsic Schreier classification of points.

The intrinsic check for a template ``t`` works by unique decomposition: for
each ``x`` it collects the kernel elements ``a`` with
``fold(t(a, f(x)), k, s) == x`` and succeeds when every such set is a
singleton. The resulting retraction is then re-checked against the two
generator-level axioms directly, and any disagreement is flagged rather than
trusted.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .algebra import SetMap
from .points import Point, PointMorphism, is_strong_point
from .report import Report, Violation
from .terms import (
    DIRECT,
    TWISTED,
    SplittingTemplate,
    for_algebra,
    verify_splitting_identity,
)

WORK_BOUND = 2 ** 24


class SplittingIdentityError(ValueError):
    pass


class WorkBoundExceeded(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Retraction:
    point: Point
    q: SetMap  # X -> K on generators
    template: str = "direct"

    def __call__(self, x: int) -> int:
        return self.q(x)

    def table(self) -> dict[str, str]:
        return self.q.to_dict()

    def in_parent(self) -> tuple[int, ...]:
        """q followed by the kernel embedding, as indices of X."""
        return tuple(self.point.k(a) for a in self.q.map)


@dataclass
class IntrinsicResult:
    template: str
    retraction: Retraction | None
    candidates: dict[int, tuple[int, ...]]
    failure: int | None = None  # first x with |D(x)| != 1
    cross_check: Report | None = None
    inconsistency: str | None = None

    def __bool__(self):
        return self.retraction is not None

    def diagnostic(self, p: Point) -> dict | None:
        if self.failure is None:
            return None
        x = self.failure
        return {
            "element": p.X.label(x),
            "decompositions": [p.K.label(a) for a in self.candidates[x]],
        }


def _prepare(p: Point, t: SplittingTemplate) -> SplittingTemplate:
    t.check_class(p.X, p.Y, p.K)
    rep = verify_splitting_identity(t, p.K, p.Y)
    if not rep.ok:
        v = rep.violations[0]
        raise SplittingIdentityError(f"template {t.name} fails {v.law} on (K, Y) at {v.labels}")
    return for_algebra(t, p.X)


def decompositions(p: Point, t: SplittingTemplate) -> dict[int, tuple[int, ...]]:
    """``D(x)`` for every x: kernel elements whose fold with f(x) returns x."""
    k, s, f = p.k, p.s, p.f
    out: dict[int, list[int]] = {x: [] for x in p.X.elements}
    # index by the folded value: one pass over K × Y
    for y in p.Y.elements:
        for a in p.K.elements:
            x = t.fold(a, y, k, s)
            if f(x) == y:
                out[x].append(a)
    return {x: tuple(v) for x, v in out.items()}


def _is1_at(p: Point, t: SplittingTemplate, x: int, qx: int) -> bool:
    # fold t at (x, x) with legs (k q, s f); only q(x) matters for the left leaf
    left = SetMap(p.X, p.X, tuple(p.k(qx) if z == x else p.X.zero for z in p.X.elements))
    right = SetMap(p.X, p.X, tuple(p.s(p.f(z)) for z in p.X.elements))
    return t.fold(x, x, left, right) == x


def check_is1_is2(p: Point, t: SplittingTemplate, q: SetMap) -> Report:
    """Generator-level iS1 and iS2 for a candidate ``q: X → K``."""
    t = for_algebra(t, p.X)
    rep = Report(subject=f"iS1/iS2 for {t.name}")
    rep.checked.append("iS1")
    kq = SetMap(p.X, p.X, tuple(p.k(q(x)) for x in p.X.elements))
    sf = SetMap(p.X, p.X, tuple(p.s(p.f(x)) for x in p.X.elements))
    for x in p.X.elements:
        got = t.fold(x, x, kq, sf)
        if got != x:
            rep.add(Violation("iS1", (x,), (p.X.label(x),), f"folded to {p.X.label(got)}"))
    rep.checked.append("iS2")
    for a in p.K.elements:
        for y in p.Y.elements:
            got = q(t.fold(a, y, p.k, p.s))
            if got != a:
                rep.add(Violation("iS2", (a, y), (p.K.label(a), p.Y.label(y)),
                                  f"q gave {p.K.label(got)}"))
    return rep


def intrinsic_schreier_check(p: Point, t: SplittingTemplate = DIRECT) -> IntrinsicResult:
    tt = _prepare(p, t)
    D = decompositions(p, tt)
    bad = next((x for x in p.X.elements if len(D[x]) != 1), None)
    if bad is not None:
        return IntrinsicResult(t.name, None, D, bad)
    q = SetMap(p.X, p.K, tuple(D[x][0] for x in p.X.elements))
    cross = check_is1_is2(p, tt, q)
    res = IntrinsicResult(t.name, Retraction(p, q, t.name), D, None, cross)
    if not cross.ok:
        v = cross.violations[0]
        res.inconsistency = (f"unique decomposition succeeded but {v.law} fails at {v.labels}")
    return res


# ---------------------------------------------------------------- element-wise oracle

def homogeneous_oracle(p: Point, side: str = "right") -> SetMap | None:
    """Unique ``a`` with ``x = k(a) + s f(x)`` (right) or ``x = s f(x) + k(a)``
    (left), computed straight from the ``+`` table."""
    X, plus = p.X, p.X.plus
    q = []
    for x in X.elements:
        sfx = p.s(p.f(x))
        if side == "right":
            sols = [a for a in p.K.elements if plus[p.k(a)][sfx] == x]
        else:
            sols = [a for a in p.K.elements if plus[sfx][p.k(a)] == x]
        if len(sols) != 1:
            return None
        q.append(sols[0])
    return SetMap(X, p.K, tuple(q))


# ---------------------------------------------------------------- analysis

@dataclass
class SchreierAnalysis:
    point: Point
    right_homogeneous: Retraction | None
    left_homogeneous: Retraction | None
    strong: bool
    strong_witness: tuple[int, ...] | None
    per_template: dict[str, IntrinsicResult] = field(default_factory=dict)

    @property
    def homogeneous(self) -> bool:
        return self.right_homogeneous is not None and self.left_homogeneous is not None

    @property
    def inconsistencies(self) -> list[str]:
        return [f"{name}: {r.inconsistency}" for name, r in self.per_template.items() if r.inconsistency]


def classify_point(p: Point, templates: tuple[SplittingTemplate, ...] = ()) -> SchreierAnalysis:
    results = {}
    for t in (DIRECT, TWISTED) + tuple(templates):
        if t.name not in results:
            # an inapplicable extra template raises TemplateClassError
            results[t.name] = intrinsic_schreier_check(p, t)
    sv = is_strong_point(p)
    return SchreierAnalysis(
        p,
        results["direct"].retraction,
        results["twisted"].retraction,
        sv.strong,
        None if sv.strong else sv.witness.members,
        results,
    )


def verify_S_axioms(r: Retraction) -> Report:
    """S1-S6 element-wise on ``+``; mirrored when the retraction is left-handed."""
    p, q = r.point, r.q
    X, k, s, f = p.X, p.k, p.s, p.f
    left = r.template == "twisted"

    def add(u, v):
        return X.plus[v][u] if left else X.plus[u][v]

    rep = Report(subject=f"S-axioms ({'left' if left else 'right'})")
    rep.checked.append("S1")
    for x in X.elements:
        if add(k(q(x)), s(f(x))) != x:
            rep.add(Violation("S1", (x,), (X.label(x),)))
    rep.checked.append("S2")
    for a in p.K.elements:
        for y in p.Y.elements:
            if q(add(k(a), s(y))) != a:
                rep.add(Violation("S2", (a, y), (p.K.label(a), p.Y.label(y))))
    rep.checked.append("S3")
    for a in p.K.elements:
        if q(k(a)) != a:
            rep.add(Violation("S3", (a,), (p.K.label(a),)))
    rep.checked.append("S4")
    for y in p.Y.elements:
        if q(s(y)) != p.K.zero:
            rep.add(Violation("S4", (y,), (p.Y.label(y),)))
    rep.checked.append("S5")
    if q(X.zero) != p.K.zero:
        rep.add(Violation("S5", (X.zero,), (X.label(X.zero),)))
    rep.checked.append("S6")
    for a in p.K.elements:
        for y in p.Y.elements:
            u = add(s(y), k(a))
            if add(k(q(u)), s(y)) != u:
                rep.add(Violation("S6", (a, y), (p.K.label(a), p.Y.label(y))))
    return rep


def verify_iS_axioms(r: Retraction, t: SplittingTemplate) -> Report:
    p, q = r.point, r.q
    tt = _prepare(p, t)
    rep = check_is1_is2(p, tt, q)
    rep.subject = f"iS-axioms for {t.name}"
    rep.checked.append("iS3")
    for a in p.K.elements:
        if q(p.k(a)) != a:
            rep.add(Violation("iS3", (a,), (p.K.label(a),)))
    rep.checked.append("iS4")
    for y in p.Y.elements:
        if q(p.s(y)) != p.K.zero:
            rep.add(Violation("iS4", (y,), (p.Y.label(y),)))
    rep.checked.append("iS5")
    if q(p.X.zero) != p.K.zero:
        rep.add(Violation("iS5", (p.X.zero,), (p.X.label(p.X.zero),)))
    # iS6 at generators: u = t(y, a) through (s, k); then t(q(u), y) through (k, s) gives u
    rep.checked.append("iS6")
    for a in p.K.elements:
        for y in p.Y.elements:
            u = tt.fold(y, a, p.s, p.k)
            if tt.fold(q(u), y, p.k, p.s) != u:
                rep.add(Violation("iS6", (a, y), (p.K.label(a), p.Y.label(y))))
    return rep


@dataclass
class UniquenessReport:
    count: int
    retractions: list[SetMap]
    searched: int

    @property
    def unique(self) -> bool:
        return self.count == 1


def retraction_uniqueness_check(p: Point, t: SplittingTemplate = DIRECT,
                                bound: int = WORK_BOUND) -> UniquenessReport:
    """Every ``q: X → K`` satisfying iS1 and iS2, by exhaustive search.

    iS1 only constrains ``q(x)`` pointwise, so candidates are pruned per
    element before the product is walked.
    """
    space = p.K.size ** p.X.size
    if space > bound:
        raise WorkBoundExceeded(f"|K|^|X| = {space} exceeds the work bound {bound}")
    tt = _prepare(p, t)
    options = [[a for a in p.K.elements if _is1_at(p, tt, x, a)] for x in p.X.elements]
    found, searched = [], 0
    for choice in itertools.product(*options):
        searched += 1
        q = SetMap(p.X, p.K, choice)
        if check_is1_is2(p, tt, q).ok:
            found.append(q)
    return UniquenessReport(len(found), found, searched)


def retraction_compatibility(m: PointMorphism, t: SplittingTemplate = DIRECT) -> Report:
    rep = Report(subject=f"retraction compatibility for {t.name}")
    src = intrinsic_schreier_check(m.source, t)
    tgt = intrinsic_schreier_check(m.target, t)
    rep.checked.append("precondition")
    if not src or not tgt:
        which = "source" if not src else "target"
        rep.add(Violation("precondition", (), (), f"{which} point is not intrinsic Schreier"))
        return rep
    rep.checked.append("compatibility")
    gt = m.induced_kernel_map
    q, q2 = src.retraction.q, tgt.retraction.q
    for x in m.source.X.elements:
        if gt(q(x)) != q2(m.g(x)):
            rep.add(Violation("compatibility", (x,), (m.source.X.label(x),)))
    return rep
