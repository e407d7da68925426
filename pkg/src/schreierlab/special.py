"""Special objects: diagonal points, loop structures, protomodular objects."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .algebra import FiniteAlgebra, Homomorphism, SetMap, product, satisfies
from .points import (
    Point,
    enumerate_points_over,
    is_stably_strong,
    probe_catalog,
)
from .schreier import IntrinsicResult, Retraction, intrinsic_schreier_check, verify_iS_axioms
from .terms import DIRECT, TWISTED, SplittingTemplate


class LoopInconsistency(RuntimeError):
    """A retraction that does not yield loop axioms; should never happen."""


class NotAMonoid(ValueError):
    pass


def diagonal_point(X: FiniteAlgebra) -> Point:
    """``X ↣ X×X ⇄ X`` with ``π_2`` and the diagonal; kernel ``⟨1, 0⟩(X)``."""
    P = product(X, X)
    ident = Homomorphism(X, X, tuple(X.elements))
    delta = P.pair(ident, ident)
    return Point(P.pi_right, Homomorphism(X, P.algebra, delta.map), f"diag({X.name})")


def is_s_special(X: FiniteAlgebra, t: SplittingTemplate = DIRECT) -> IntrinsicResult:
    return intrinsic_schreier_check(diagonal_point(X), t)


@dataclass(frozen=True)
class LoopStructure:
    """``x - y`` for right loops; ``-x + y`` stored at ``[x][y]`` for left loops."""

    base: FiniteAlgebra
    table: tuple[tuple[int, ...], ...]
    handedness: str

    def violations(self) -> list[tuple[str, int, int]]:
        X, p, d = self.base, self.base.plus, self.table
        out = []
        for x in X.elements:
            for y in X.elements:
                if self.handedness == "right":
                    if p[d[x][y]][y] != x:
                        out.append(("(x-y)+y=x", x, y))
                    if d[p[x][y]][y] != x:
                        out.append(("(x+y)-y=x", x, y))
                else:
                    if p[x][d[x][y]] != y:
                        out.append(("x+(-x+y)=y", x, y))
                    if d[x][p[x][y]] != y:
                        out.append(("-x+(x+y)=y", x, y))
        return out

    def to_dict(self) -> dict:
        lab = self.base.element_names
        return {
            "handedness": self.handedness,
            "operation": "x-y" if self.handedness == "right" else "-x+y",
            "table": [[lab[v] for v in row] for row in self.table],
        }


def _template(handedness: str) -> SplittingTemplate:
    if handedness not in ("right", "left"):
        raise ValueError("handedness is 'right' or 'left'")
    return DIRECT if handedness == "right" else TWISTED


def extract_loop(X: FiniteAlgebra, handedness: str = "right") -> LoopStructure | None:
    res = is_s_special(X, _template(handedness))
    if not res:
        return None
    r = res.retraction
    n = X.size
    # q lands in {(a, 0)}; read off the first coordinate
    first = [e // n for e in r.in_parent()]
    if handedness == "right":
        table = tuple(tuple(first[x * n + y] for y in X.elements) for x in X.elements)
    else:
        # (u, v) = (v, v) + (a, 0) gives a = -v + u
        table = tuple(tuple(first[u * n + v] for u in X.elements) for v in X.elements)
    loop = LoopStructure(X, table, handedness)
    bad = loop.violations()
    if bad:
        raise LoopInconsistency(f"retraction gives no {handedness} loop: {bad[0]}")
    return loop


def loop_to_retraction(loop: LoopStructure) -> Retraction:
    """The retraction of the diagonal point defined by a loop table."""
    X = loop.base
    p = diagonal_point(X)
    n = X.size
    vals = []
    for e in p.X.elements:
        u, v = divmod(e, n)
        a = loop.table[u][v] if loop.handedness == "right" else loop.table[v][u]
        vals.append(p.kernel.index_of(a * n + X.zero))
    t = _template(loop.handedness)
    return Retraction(p, SetMap(p.X, p.K, tuple(vals)), t.name)


def loop_from_table(X: FiniteAlgebra, table, handedness: str) -> LoopStructure:
    loop = LoopStructure(X, tuple(tuple(int(v) for v in row) for row in table), handedness)
    bad = loop.violations()
    if bad:
        raise ValueError(f"not a {handedness} loop: {bad[0][0]} fails at "
                         f"({X.label(bad[0][1])}, {X.label(bad[0][2])})")
    return loop


def loop_round_trip(X: FiniteAlgebra, handedness: str = "right") -> bool:
    """Loop -> retraction -> axioms, and agreement with the computed retraction."""
    loop = extract_loop(X, handedness)
    if loop is None:
        return True
    r = loop_to_retraction(loop)
    if not verify_iS_axioms(r, _template(handedness)).ok:
        return False
    computed = is_s_special(X, _template(handedness)).retraction
    return computed.q.map == r.q.map


def is_group(M: FiniteAlgebra) -> bool:
    if not satisfies(M, "monoid"):
        raise NotAMonoid(f"{M.name or 'algebra'} is not a monoid")
    return all(v is not None for v in M.inverses)


@dataclass
class ProtomodularVerdict:
    object: FiniteAlgebra
    bound: str
    points_checked: int
    probes: int
    counterexample: Point | None = None
    probe_index: int | None = None

    @property
    def all_strong(self) -> bool:
        return self.counterexample is None

    @property
    def result(self) -> str:
        return "all-points-strong-within-bound" if self.all_strong else "counterexample"


def protomodular_object_check(Y: FiniteAlgebra, catalog: Iterable[FiniteAlgebra],
                              probe_bound: int, bound_label: str = "") -> ProtomodularVerdict:
    """Every point over ``Y`` with carrier in ``catalog`` must stay strong under
    pullback along every probe from algebras of size at most ``probe_bound``."""
    algebras = list(catalog)
    probes = probe_catalog(Y, [Z for Z in algebras if Z.size <= probe_bound])
    label = bound_label or f"{len(algebras)} carriers (max size {max((A.size for A in algebras), default=0)}), probes <= {probe_bound}"
    n = 0
    for p in enumerate_points_over(Y, algebras):
        n += 1
        v = is_stably_strong(p, probes)
        if not v:
            return ProtomodularVerdict(Y, label, n, len(probes), p, v.probes_checked - 1)
    return ProtomodularVerdict(Y, label, n, len(probes))
