"""Points (split epimorphisms with a chosen section) and their morphisms."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .algebra import (
    FiniteAlgebra,
    Homomorphism,
    SignatureMismatch,
    Subalgebra,
    equalizer,
    find_isomorphism,
    homomorphisms,
    identity,
    is_homomorphism,
    kernel,
    product,
    product_map,
    pullback,
    subalgebra_generated,
    trivial_algebra,
    validate_homomorphism,
    zero_map,
)


class PointError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Point:
    """``K ↣ X ⇄ Y`` with ``f s = 1_Y``; the kernel is always recomputed."""

    f: Homomorphism
    s: Homomorphism
    name: str = field(default="", compare=False)

    def __post_init__(self):
        f, s = self.f, self.s
        if s.dom != f.cod or s.cod != f.dom:
            raise PointError("section must go back from the codomain of f to its domain")
        for h, label in ((f, "f"), (s, "s")):
            rep = validate_homomorphism(h)
            if not rep.ok:
                v = rep.violations[0]
                raise PointError(f"{label} is not a homomorphism: {v.detail or v.law} at {v.labels}")
        for y in f.cod.elements:
            if f(s(y)) != y:
                raise PointError(f"f s != 1 at {f.cod.label(y)}")
        k = self.kernel.embedding
        if any(f(k(a)) != f.cod.zero for a in k.dom.elements):
            raise PointError("kernel embedding does not land in the kernel")

    @property
    def X(self) -> FiniteAlgebra:
        return self.f.dom

    @property
    def Y(self) -> FiniteAlgebra:
        return self.f.cod

    @cached_property
    def kernel(self) -> Subalgebra:
        return kernel(self.f)

    @property
    def K(self) -> FiniteAlgebra:
        return self.kernel.algebra

    @property
    def k(self) -> Homomorphism:
        return self.kernel.embedding

    @cached_property
    def key(self) -> tuple:
        return (self.X.size, self.Y.size, self.X.name, self.Y.name, self.f.map, self.s.map)

    def __eq__(self, other):
        return isinstance(other, Point) and self.f == other.f and self.s == other.s

    def __hash__(self):
        return hash((self.f.map, self.s.map, self.X.size, self.Y.size))

    def __repr__(self):
        return f"Point({self.name or self.X.name + '->' + self.Y.name}, f={self.f.map}, s={self.s.map})"

    def describe(self) -> dict:
        return {
            "name": self.name,
            "X": self.X.name,
            "Y": self.Y.name,
            "f": self.f.to_dict(),
            "s": self.s.to_dict(),
            "kernel": self.kernel.labels(),
        }


def make_point(f: Homomorphism, s: Homomorphism, name: str = "") -> Point:
    return Point(Homomorphism(f.dom, f.cod, f.map), Homomorphism(s.dom, s.cod, s.map), name)


def identity_point(X: FiniteAlgebra) -> Point:
    return Point(identity(X), identity(X), f"id({X.name})")


def terminal_point(X: FiniteAlgebra) -> Point:
    T = trivial_algebra(X.signature)
    return Point(zero_map(X, T), zero_map(T, X), f"terminal({X.name})")


def product_projection_point(X: FiniteAlgebra, Y: FiniteAlgebra) -> Point:
    """``X ↣ X×Y ⇄ Y`` with ``π_Y`` and ``⟨0, 1⟩``."""
    P = product(X, Y)
    s = P.pair(zero_map(Y, X), identity(Y))
    return Point(P.pi_right, Homomorphism(Y, P.algebra, s.map), f"proj({X.name},{Y.name})")


@dataclass(frozen=True)
class StrongVerdict:
    strong: bool
    witness: Subalgebra | None = None

    def __bool__(self):
        return self.strong


def is_strong_point(p: Point) -> StrongVerdict:
    """Do the images of the kernel and the section generate X?"""
    seed = set(p.kernel.members) | set(p.s.map)
    sub = subalgebra_generated(p.X, seed)
    if sub.is_whole:
        return StrongVerdict(True)
    return StrongVerdict(False, sub)


@dataclass(frozen=True, eq=False)
class PointMorphism:
    source: Point
    target: Point
    g: Homomorphism
    h: Homomorphism

    def __post_init__(self):
        p, q, g, h = self.source, self.target, self.g, self.h
        if g.dom != p.X or g.cod != q.X or h.dom != p.Y or h.cod != q.Y:
            raise PointError("morphism components do not match the points")
        if not (is_homomorphism(g) and is_homomorphism(h)):
            raise PointError("morphism components must be homomorphisms")
        for x in p.X.elements:
            if q.f(g(x)) != h(p.f(x)):
                raise PointError(f"f' g != h f at {p.X.label(x)}")
        for y in p.Y.elements:
            if g(p.s(y)) != q.s(h(y)):
                raise PointError(f"g s != s' h at {p.Y.label(y)}")

    @cached_property
    def induced_kernel_map(self) -> Homomorphism:
        src, tgt = self.source.kernel, self.target.kernel
        return Homomorphism(src.algebra, tgt.algebra,
                            tuple(tgt.index_of(self.g(x)) for x in src.members))


def identity_morphism(p: Point) -> PointMorphism:
    return PointMorphism(p, p, identity(p.X), identity(p.Y))


@dataclass(frozen=True, eq=False)
class PulledBackPoint:
    point: Point
    comparison: PointMorphism
    pullback: object
    kernel_iso: Homomorphism  # K -> kernel of the new point, a ↦ (0, k(a))


def pullback_point(p: Point, g: Homomorphism) -> PulledBackPoint:
    """Pull ``p`` back along ``g: Z → Y``: the point ``(π_Z, ⟨1_Z, s g⟩)``."""
    if g.cod != p.Y:
        raise SignatureMismatch("probe must land in the base of the point")
    pb = pullback(p.f, g)
    Z = g.dom
    sg = p.s.after(g)
    section = pb.pair(identity(Z), sg)
    q = Point(pb.pi_z, Homomorphism(Z, pb.algebra, section.map), f"pb({p.name or '?'})")
    comparison = PointMorphism(q, p, pb.pi_x, g)
    kmap = tuple(q.kernel.index_of(pb.element(Z.zero, p.k(a))) for a in p.K.elements)
    iso = Homomorphism(p.K, q.K, kmap)
    if len(set(kmap)) != q.K.size or not is_homomorphism(iso):
        raise PointError("pullback kernel is not isomorphic to the original kernel")
    return PulledBackPoint(q, comparison, pb, iso)


@dataclass(frozen=True)
class Probe:
    Z: FiniteAlgebra
    g: Homomorphism


@dataclass(frozen=True)
class StablyStrongVerdict:
    ok: bool
    probes_checked: int
    counterexample: Probe | None = None
    witness: Subalgebra | None = None

    def __bool__(self):
        return self.ok


def probe_catalog(Y: FiniteAlgebra, algebras: Iterable[FiniteAlgebra],
                  include_identity: bool = True) -> list[Probe]:
    """All homomorphisms into ``Y`` from the given algebras."""
    out = [Probe(Y, identity(Y))] if include_identity else []
    for Z in algebras:
        if not Z.signature.same_operations(Y.signature):
            continue
        out.extend(Probe(Z, g) for g in homomorphisms(Z, Y))
    return out


def is_stably_strong(p: Point, probes: Sequence[Probe]) -> StablyStrongVerdict:
    """Strongness of every pullback of ``p`` along the supplied probes only."""
    for n, probe in enumerate(probes):
        if probe.g.cod != p.Y:
            raise SignatureMismatch("probe codomain differs from the base")
        pb = pullback_point(p, probe.g)
        v = is_strong_point(pb.point)
        if not v:
            return StablyStrongVerdict(False, n + 1, probe, v.witness)
    return StablyStrongVerdict(True, len(probes))


def product_points(p1: Point, p2: Point) -> Point:
    PX = product(p1.X, p2.X)
    PY = product(p1.Y, p2.Y)
    f = product_map(p1.f, p2.f, PX, PY)
    s = product_map(p1.s, p2.s, PY, PX)
    return Point(Homomorphism(f.dom, f.cod, f.map), Homomorphism(s.dom, s.cod, s.map),
                 f"({p1.name or '?'})x({p2.name or '?'})")


@dataclass(frozen=True, eq=False)
class EqualizerPoint:
    point: Point
    embedding: PointMorphism
    E: Subalgebra
    W: Subalgebra


def equalizer_points(m1: PointMorphism, m2: PointMorphism) -> EqualizerPoint:
    if m1.source is not m2.source and m1.source != m2.source:
        raise PointError("morphisms must share their source point")
    if m1.target is not m2.target and m1.target != m2.target:
        raise PointError("morphisms must share their target point")
    p = m1.source
    E = equalizer(m1.g, m2.g)
    W = equalizer(m1.h, m2.h)
    EA, WA = E.algebra, W.algebra
    phi = Homomorphism(EA, WA, tuple(W.index_of(p.f(x)) for x in E.members))
    sigma = Homomorphism(WA, EA, tuple(E.index_of(p.s(y)) for y in W.members))
    q = Point(phi, sigma, f"eq({p.name or '?'})")
    # kernel of the restricted point = equalizer of the induced kernel maps
    L = equalizer(m1.induced_kernel_map, m2.induced_kernel_map)
    from_L = sorted(p.kernel.members[a] for a in L.members)
    from_q = sorted(E.members[x] for x in q.kernel.members)
    if from_L != from_q:
        raise PointError("kernel of the equalizer point differs from the kernel-map equalizer")
    emb = PointMorphism(q, p, E.embedding, W.embedding)
    return EqualizerPoint(q, emb, E, W)


def enumerate_points_over(Y: FiniteAlgebra, algebras: Iterable[FiniteAlgebra]) -> Iterator[Point]:
    """Every ``(f, s)`` with ``f s = 1_Y`` and ``X`` drawn from ``algebras``.

    Sections are enumerated first; ``f`` is then searched with its values on
    the image of ``s`` pinned.
    """
    for X in algebras:
        if not X.signature.same_operations(Y.signature) or X.size < Y.size:
            continue
        for s in homomorphisms(Y, X):
            if len(set(s.map)) != Y.size:
                continue
            pins = {s(y): y for y in Y.elements}
            for f in homomorphisms(X, Y, pins):
                yield Point(f, s, f"{X.name}->{Y.name}")


def enumerate_point_morphisms(p: Point, q: Point) -> list[PointMorphism]:
    out = []
    for h in homomorphisms(p.Y, q.Y):
        pins = {}
        clash = False
        for y in p.Y.elements:
            x, v = p.s(y), q.s(h(y))
            if pins.get(x, v) != v:
                clash = True
                break
            pins[x] = v
        if clash:
            continue
        for g in homomorphisms(p.X, q.X, pins):
            if all(q.f(g(x)) == h(p.f(x)) for x in p.X.elements):
                out.append(PointMorphism(p, q, g, h))
    return out


def point_isomorphism(p: Point, q: Point) -> Homomorphism | None:
    """A carrier isomorphism ``X → X'`` commuting with ``f`` and ``s`` over an
    isomorphism of bases, found by brute force; used in tests and reports."""
    base = find_isomorphism(p.Y, q.Y)
    if base is None or p.X.size != q.X.size:
        return None
    for b in homomorphisms(p.Y, q.Y):
        if len(set(b.map)) != p.Y.size:
            continue
        pins = {p.s(y): q.s(b(y)) for y in p.Y.elements}
        for g in homomorphisms(p.X, q.X, pins):
            if len(set(g.map)) == p.X.size and all(q.f(g(x)) == b(p.f(x)) for x in p.X.elements):
                return g
    return None
