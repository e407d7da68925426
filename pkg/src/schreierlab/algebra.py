"""Finite pointed algebras stored as operation tables.

Elements are the dense indices ``0..n-1``; labels are for presentation only.
Every algebra has a distinguished constant (its ``zero``) and a binary
operation for which the constant is a two-sided unit, possibly together with
further unary or binary operations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from . import kernels
from .report import Report, Violation

CLASSES = (
    "unitary-magma",
    "monoid",
    "commutative-monoid",
    "group",
    "heyting-semilattice",
    "custom",
)


class StructureError(ValueError):
    """Malformed tables or maps (as opposed to a violated law)."""


class SignatureMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Signature:
    name: str
    constant: str
    jt_operation: str
    extra_operations: tuple[tuple[str, int], ...] = ()
    equational_class: str = "unitary-magma"

    def __post_init__(self):
        if self.equational_class not in CLASSES:
            raise StructureError(f"unknown equational class {self.equational_class!r}")
        symbols = [self.constant, self.jt_operation] + [s for s, _ in self.extra_operations]
        if len(set(symbols)) != len(symbols):
            raise StructureError(f"operation symbols are not distinct: {symbols}")
        for sym, arity in self.extra_operations:
            if arity not in (1, 2):
                raise StructureError(f"operation {sym!r}: only arities 1 and 2 are supported")

    @property
    def operations(self) -> tuple[tuple[str, int], ...]:
        return ((self.jt_operation, 2),) + tuple(self.extra_operations)

    def arity(self, symbol: str) -> int:
        for sym, ar in self.operations:
            if sym == symbol:
                return ar
        raise KeyError(symbol)

    def same_operations(self, other: "Signature") -> bool:
        return (self.constant, self.operations) == (other.constant, other.operations)


_MAGMA_LIKE = ("unitary-magma", "monoid", "commutative-monoid", "group")


def signature_for(cls: str) -> Signature:
    """Standard signature of a builtin equational class."""
    if cls in _MAGMA_LIKE:
        return Signature(cls, "0", "+", (), cls)
    if cls == "heyting-semilattice":
        # meet is the unital operation, top the constant
        return Signature(cls, "T", "^", (("->", 2),), cls)
    raise StructureError(f"no standard signature for class {cls!r}")


def _freeze(table, arity: int, n: int, symbol: str) -> tuple:
    arr = np.asarray(table)
    if arr.shape != (n,) * arity:
        raise StructureError(
            f"table for {symbol!r} has shape {arr.shape}, expected {(n,) * arity}"
        )
    if arr.size and (arr.min() < 0 or arr.max() >= n):
        raise StructureError(f"table for {symbol!r} has entries outside 0..{n - 1}")
    return tuple(map(tuple, arr.tolist())) if arity == 2 else tuple(arr.tolist())


@dataclass(frozen=True)
class FiniteAlgebra:
    signature: Signature
    element_names: tuple[str, ...]
    zero: int
    tables: tuple[tuple[str, tuple], ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        n = len(self.element_names)
        if n == 0:
            raise StructureError("an algebra needs at least one element")
        if len(set(self.element_names)) != n:
            raise StructureError("element names must be distinct")
        if not 0 <= self.zero < n:
            raise StructureError(f"constant index {self.zero} out of range")
        ops = self.signature.operations
        if tuple(sym for sym, _ in self.tables) != tuple(sym for sym, _ in ops):
            raise StructureError(
                f"tables {[s for s, _ in self.tables]} do not match operations {[s for s, _ in ops]}"
            )
        frozen = tuple((sym, _freeze(tab, ar, n, sym)) for (sym, tab), (_, ar) in zip(self.tables, ops))
        object.__setattr__(self, "tables", frozen)

    @classmethod
    def build(cls, signature: Signature, names: Sequence[str], zero: int | str,
              tables: Mapping[str, object], name: str = "") -> "FiniteAlgebra":
        names = tuple(str(x) for x in names)
        if isinstance(zero, str):
            zero = names.index(zero)
        missing = [s for s, _ in signature.operations if s not in tables]
        extra = [s for s in tables if s not in dict(signature.operations)]
        if missing or extra:
            raise StructureError(f"missing tables {missing}, unexpected tables {extra}")
        ordered = tuple((sym, tables[sym]) for sym, _ in signature.operations)
        return cls(signature, names, zero, ordered, name)

    @property
    def size(self) -> int:
        return len(self.element_names)

    def __len__(self) -> int:
        return len(self.element_names)

    def __repr__(self) -> str:
        return f"FiniteAlgebra({self.name or self.signature.equational_class}, size={self.size})"

    @property
    def elements(self) -> range:
        return range(self.size)

    def label(self, x: int) -> str:
        return self.element_names[x]

    def index(self, label: str) -> int:
        return self.element_names.index(label)

    def table(self, symbol: str) -> tuple:
        for sym, tab in self.tables:
            if sym == symbol:
                return tab
        raise KeyError(symbol)

    @cached_property
    def plus(self) -> tuple:
        return self.tables[0][1]

    def add(self, x: int, y: int) -> int:
        return self.plus[x][y]

    def apply(self, symbol: str, *args: int) -> int:
        tab = self.table(symbol)
        for a in args:
            tab = tab[a]
        return tab

    @cached_property
    def binary_array(self) -> np.ndarray:
        tabs = [tab for (sym, tab), (_, ar) in zip(self.tables, self.signature.operations) if ar == 2]
        return np.ascontiguousarray(np.array(tabs, dtype=np.int32).reshape(len(tabs), self.size, self.size))

    @cached_property
    def unary_array(self) -> np.ndarray:
        tabs = [tab for (sym, tab), (_, ar) in zip(self.tables, self.signature.operations) if ar == 1]
        return np.ascontiguousarray(np.array(tabs, dtype=np.int32).reshape(len(tabs), self.size))

    @cached_property
    def inverses(self) -> tuple[int | None, ...]:
        """Two-sided inverse of each element w.r.t. the unital operation, or None."""
        out = []
        for x in self.elements:
            inv = None
            for y in self.elements:
                if self.plus[x][y] == self.zero and self.plus[y][x] == self.zero:
                    inv = y
                    break
            out.append(inv)
        return tuple(out)

    def with_class(self, cls: str) -> "FiniteAlgebra":
        """Same tables, re-tagged with another equational class."""
        sig = Signature(self.signature.name, self.signature.constant, self.signature.jt_operation,
                        self.signature.extra_operations, cls)
        return FiniteAlgebra(sig, self.element_names, self.zero, self.tables, self.name)

    def to_dict(self) -> dict:
        lab = self.element_names
        tabs = {}
        for (sym, tab), (_, ar) in zip(self.tables, self.signature.operations):
            tabs[sym] = [[lab[v] for v in row] for row in tab] if ar == 2 else [lab[v] for v in tab]
        return {
            "name": self.name,
            "class": self.signature.equational_class,
            "elements": list(lab),
            "constant": lab[self.zero],
            "tables": tabs,
        }


@dataclass(frozen=True)
class SetMap:
    """A total function between carriers; no operations need be preserved."""

    dom: FiniteAlgebra
    cod: FiniteAlgebra
    map: tuple[int, ...]

    def __post_init__(self):
        m = tuple(int(v) for v in self.map)
        if len(m) != self.dom.size:
            raise StructureError(f"map has {len(m)} entries, domain has {self.dom.size}")
        if any(not 0 <= v < self.cod.size for v in m):
            raise StructureError("map sends an element outside the codomain")
        object.__setattr__(self, "map", m)

    def __call__(self, x: int) -> int:
        return self.map[x]

    def after(self, other: "SetMap") -> "SetMap":
        """``self ∘ other``; a homomorphism when both factors are."""
        if other.cod != self.dom:
            raise SignatureMismatch("composition: codomain/domain mismatch")
        cls = Homomorphism if isinstance(self, Homomorphism) and isinstance(other, Homomorphism) else SetMap
        return cls(other.dom, self.cod, tuple(self.map[v] for v in other.map))

    def as_setmap(self) -> "SetMap":
        return SetMap(self.dom, self.cod, self.map)

    def image(self) -> frozenset[int]:
        return frozenset(self.map)

    def to_dict(self) -> dict:
        return {self.dom.label(x): self.cod.label(y) for x, y in enumerate(self.map)}


class Homomorphism(SetMap):
    """A SetMap expected to preserve the constant and every operation.

    Construction only checks totality; use :func:`validate_homomorphism` for
    the preservation laws.
    """


def identity(A: FiniteAlgebra) -> Homomorphism:
    return Homomorphism(A, A, tuple(A.elements))


def zero_map(A: FiniteAlgebra, B: FiniteAlgebra) -> Homomorphism:
    return Homomorphism(A, B, (B.zero,) * A.size)


def trivial_algebra(signature: Signature, label: str = "0") -> FiniteAlgebra:
    tabs = {sym: (np.zeros((1,) * ar, dtype=int)) for sym, ar in signature.operations}
    return FiniteAlgebra.build(signature, [label], 0, tabs, name="trivial")


@dataclass(frozen=True)
class Subalgebra:
    parent: FiniteAlgebra
    members: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(sorted(set(self.members))))

    def __contains__(self, x: int) -> bool:
        return x in self._pos

    def __len__(self) -> int:
        return len(self.members)

    @cached_property
    def _pos(self) -> dict[int, int]:
        return {x: i for i, x in enumerate(self.members)}

    @property
    def is_whole(self) -> bool:
        return len(self.members) == self.parent.size

    def labels(self) -> list[str]:
        return [self.parent.label(x) for x in self.members]

    def is_closed(self) -> bool:
        if self.parent.zero not in self._pos:
            return False
        mem = self.members
        for (sym, tab), (_, ar) in zip(self.parent.tables, self.parent.signature.operations):
            args = itertools.product(mem, repeat=ar)
            for a in args:
                v = tab[a[0]][a[1]] if ar == 2 else tab[a[0]]
                if v not in self._pos:
                    return False
        return True

    @cached_property
    def algebra(self) -> FiniteAlgebra:
        if not self.is_closed():
            raise StructureError("subset is not closed under the operations")
        P, pos, mem = self.parent, self._pos, self.members
        tabs = {}
        for (sym, tab), (_, ar) in zip(P.tables, P.signature.operations):
            if ar == 2:
                tabs[sym] = [[pos[tab[x][y]] for y in mem] for x in mem]
            else:
                tabs[sym] = [pos[tab[x]] for x in mem]
        return FiniteAlgebra.build(P.signature, [P.label(x) for x in mem], pos[P.zero], tabs,
                                   name=f"sub({P.name})")

    @cached_property
    def embedding(self) -> Homomorphism:
        return Homomorphism(self.algebra, self.parent, self.members)

    def index_of(self, x: int) -> int:
        """Index in ``algebra`` of the parent element ``x``."""
        return self._pos[x]


# ---------------------------------------------------------------- validation

def _check_unit(A: FiniteAlgebra, rep: Report) -> None:
    rep.checked.append("unit")
    z, p = A.zero, A.plus
    for x in A.elements:
        if p[x][z] != x or p[z][x] != x:
            rep.add(Violation("unit", (x,), (A.label(x),), "x+0 = x = 0+x fails"))
            return


def _check_assoc(A: FiniteAlgebra, rep: Report, symbol: str | None = None) -> None:
    rep.checked.append("associativity")
    arr = A.binary_array[0] if symbol is None else np.ascontiguousarray(
        np.array(A.table(symbol), dtype=np.int32))
    bad = kernels.assoc_violation(np.ascontiguousarray(arr))
    if bad is not None:
        rep.add(Violation("associativity", tuple(bad), tuple(A.label(v) for v in bad)))


def _check_commutative(A: FiniteAlgebra, rep: Report) -> None:
    rep.checked.append("commutativity")
    for x in A.elements:
        for y in range(x + 1, A.size):
            if A.plus[x][y] != A.plus[y][x]:
                rep.add(Violation("commutativity", (x, y), (A.label(x), A.label(y))))
                return


def _check_inverses(A: FiniteAlgebra, rep: Report) -> None:
    rep.checked.append("inverse")
    for x, inv in enumerate(A.inverses):
        if inv is None:
            rep.add(Violation("inverse", (x,), (A.label(x),), "no two-sided inverse"))
            return


def _check_heyting(A: FiniteAlgebra, rep: Report) -> None:
    m, imp, top = A.plus, A.table("->"), A.zero
    E = A.elements

    def first(law, cond, arity):
        rep.checked.append(law)
        for args in itertools.product(E, repeat=arity):
            if not cond(*args):
                rep.add(Violation(law, args, tuple(A.label(v) for v in args)))
                return

    first("idempotence", lambda x: m[x][x] == x, 1)
    first("imp-self", lambda x: imp[x][x] == top, 1)
    first("imp-meet", lambda x, y: m[x][imp[x][y]] == m[x][y], 2)
    first("imp-absorb", lambda x, y: m[y][imp[x][y]] == y, 2)
    first("imp-distrib", lambda x, y, z: imp[x][m[y][z]] == m[imp[x][y]][imp[x][z]], 3)


def validate_algebra(A: FiniteAlgebra, cls: str | None = None) -> Report:
    """Scan the laws of ``cls`` (default: the declared class) over all tuples."""
    cls = cls or A.signature.equational_class
    rep = Report(subject=f"algebra {A.name or '?'} as {cls}")
    _check_unit(A, rep)
    if cls in ("monoid", "commutative-monoid", "group", "heyting-semilattice"):
        _check_assoc(A, rep)
    if cls in ("commutative-monoid", "heyting-semilattice"):
        _check_commutative(A, rep)
    if cls == "group":
        _check_inverses(A, rep)
    if cls == "heyting-semilattice":
        if "->" not in dict(A.signature.operations):
            rep.add(Violation("signature", (), (), "heyting-semilattice needs '->'"))
        else:
            _check_heyting(A, rep)
    return rep


def satisfies(A: FiniteAlgebra, cls: str) -> bool:
    if cls in ("unitary-magma", "custom"):
        return validate_algebra(A, "unitary-magma").ok
    if cls == "heyting-semilattice" and "->" not in dict(A.signature.operations):
        return False
    return validate_algebra(A, cls).ok


def validate_homomorphism(h: SetMap) -> Report:
    dom, cod = h.dom, h.cod
    rep = Report(subject=f"homomorphism {dom.name or '?'} -> {cod.name or '?'}")
    if not dom.signature.same_operations(cod.signature):
        raise SignatureMismatch("domain and codomain have different signatures")
    rep.checked.append("constant")
    if h(dom.zero) != cod.zero:
        rep.add(Violation("constant", (dom.zero,), (dom.label(dom.zero),), "constant not preserved"))
    for (sym, tab), (_, ar) in zip(dom.tables, dom.signature.operations):
        rep.checked.append(sym)
        ctab = cod.table(sym)
        for args in itertools.product(dom.elements, repeat=ar):
            if ar == 2:
                ok = h(tab[args[0]][args[1]]) == ctab[h(args[0])][h(args[1])]
            else:
                ok = h(tab[args[0]]) == ctab[h(args[0])]
            if not ok:
                rep.add(Violation(sym, args, tuple(dom.label(v) for v in args),
                                  f"operation {sym!r} not preserved"))
                break
    return rep


def is_homomorphism(h: SetMap) -> bool:
    return validate_homomorphism(h).ok


# ---------------------------------------------------------------- generation

def subalgebra_generated(A: FiniteAlgebra, seed: Iterable[int]) -> Subalgebra:
    mask = np.zeros(A.size, dtype=np.uint8)
    for x in seed:
        if not 0 <= x < A.size:
            raise StructureError(f"seed element {x} out of range")
        mask[x] = 1
    mask[A.zero] = 1
    closed = kernels.closure(A.binary_array, A.unary_array, mask)
    return Subalgebra(A, tuple(int(i) for i in np.flatnonzero(closed)))


def kernel(f: SetMap) -> Subalgebra:
    return Subalgebra(f.dom, tuple(x for x in f.dom.elements if f(x) == f.cod.zero))


def equalizer(g: SetMap, h: SetMap) -> Subalgebra:
    if g.dom != h.dom or g.cod != h.cod:
        raise SignatureMismatch("equalizer needs parallel maps")
    return Subalgebra(g.dom, tuple(x for x in g.dom.elements if g(x) == h(x)))


# ---------------------------------------------------------------- limits

@dataclass(frozen=True)
class ProductResult:
    left: FiniteAlgebra
    right: FiniteAlgebra
    algebra: FiniteAlgebra
    pi_left: Homomorphism
    pi_right: Homomorphism

    def element(self, a: int, b: int) -> int:
        return a * self.right.size + b

    def split(self, x: int) -> tuple[int, int]:
        return divmod(x, self.right.size)

    def pair(self, u: SetMap, v: SetMap) -> SetMap:
        """``⟨u, v⟩``; a homomorphism when both components are."""
        if u.dom != v.dom or u.cod != self.left or v.cod != self.right:
            raise SignatureMismatch("pairing needs a span into the factors")
        cls = Homomorphism if isinstance(u, Homomorphism) and isinstance(v, Homomorphism) else SetMap
        return cls(u.dom, self.algebra, tuple(self.element(u(z), v(z)) for z in u.dom.elements))


_IMPLIES = {
    "group": {"group", "monoid", "unitary-magma"},
    "commutative-monoid": {"commutative-monoid", "monoid", "unitary-magma"},
    "heyting-semilattice": {"heyting-semilattice", "commutative-monoid", "monoid", "unitary-magma"},
    "monoid": {"monoid", "unitary-magma"},
    "unitary-magma": {"unitary-magma"},
}


def _common_class(a: str, b: str) -> str:
    common = _IMPLIES.get(a, set()) & _IMPLIES.get(b, set())
    for cls in ("group", "heyting-semilattice", "commutative-monoid", "monoid", "unitary-magma"):
        if cls in common:
            return cls
    return "custom"


def product(A: FiniteAlgebra, B: FiniteAlgebra) -> ProductResult:
    if not A.signature.same_operations(B.signature):
        raise SignatureMismatch("product of algebras with different signatures")
    n, m = A.size, B.size
    names = [f"({a},{b})" for a in A.element_names for b in B.element_names]
    tabs = {}
    for (sym, ta), (_, tb), (_, ar) in zip(A.tables, B.tables, A.signature.operations):
        if ar == 2:
            tabs[sym] = [[ta[i // m][j // m] * m + tb[i % m][j % m] for j in range(n * m)]
                         for i in range(n * m)]
        else:
            tabs[sym] = [ta[i // m] * m + tb[i % m] for i in range(n * m)]
    sig = A.signature
    if A.signature != B.signature:
        sig = Signature(sig.name, sig.constant, sig.jt_operation, sig.extra_operations,
                        _common_class(A.signature.equational_class, B.signature.equational_class))
    P = FiniteAlgebra.build(sig, names, A.zero * m + B.zero, tabs,
                            name=f"{A.name or '?'}x{B.name or '?'}")
    return ProductResult(A, B, P,
                         Homomorphism(P, A, tuple(i // m for i in range(n * m))),
                         Homomorphism(P, B, tuple(i % m for i in range(n * m))))


def product_map(u: SetMap, v: SetMap, dom: ProductResult, cod: ProductResult) -> SetMap:
    """``u × v`` between two products."""
    if u.dom != dom.left or v.dom != dom.right or u.cod != cod.left or v.cod != cod.right:
        raise SignatureMismatch("product_map: factor mismatch")
    cls = Homomorphism if isinstance(u, Homomorphism) and isinstance(v, Homomorphism) else SetMap
    vals = []
    for x in dom.algebra.elements:
        a, b = dom.split(x)
        vals.append(cod.element(u(a), v(b)))
    return cls(dom.algebra, cod.algebra, tuple(vals))


@dataclass(frozen=True)
class PullbackResult:
    """``Z ×_Y X`` with its two projections."""

    f: SetMap
    g: SetMap
    prod: ProductResult
    sub: Subalgebra
    pi_z: Homomorphism
    pi_x: Homomorphism

    @property
    def algebra(self) -> FiniteAlgebra:
        return self.sub.algebra

    def element(self, z: int, x: int) -> int:
        return self.sub.index_of(self.prod.element(z, x))

    def pair(self, u: SetMap, v: SetMap) -> SetMap:
        """Universal map ``⟨u, v⟩`` for a commuting square ``g u = f v``."""
        for w in u.dom.elements:
            if self.g(u(w)) != self.f(v(w)):
                raise StructureError("pairing needs a commuting square")
        cls = Homomorphism if isinstance(u, Homomorphism) and isinstance(v, Homomorphism) else SetMap
        return cls(u.dom, self.algebra, tuple(self.element(u(w), v(w)) for w in u.dom.elements))


def pullback(f: SetMap, g: SetMap) -> PullbackResult:
    """Pullback of ``f: X → Y`` along ``g: Z → Y``."""
    if f.cod != g.cod:
        raise SignatureMismatch("pullback needs a common codomain")
    X, Z = f.dom, g.dom
    prod = product(Z, X)
    members = tuple(prod.element(z, x) for z in Z.elements for x in X.elements if g(z) == f(x))
    sub = Subalgebra(prod.algebra, members)
    P = sub.algebra
    pi_z = Homomorphism(P, Z, tuple(prod.split(e)[0] for e in sub.members))
    pi_x = Homomorphism(P, X, tuple(prod.split(e)[1] for e in sub.members))
    return PullbackResult(f, g, prod, sub, pi_z, pi_x)


# ---------------------------------------------------------------- homs & enumeration

def homomorphisms(dom: FiniteAlgebra, cod: FiniteAlgebra,
                  fixed: Mapping[int, int] | None = None) -> list[Homomorphism]:
    """All homomorphisms ``dom → cod`` (lexicographic in the image vector)."""
    if not dom.signature.same_operations(cod.signature):
        raise SignatureMismatch("homomorphisms between different signatures")
    pins = np.full(dom.size, -1, dtype=np.int32)
    pins[dom.zero] = cod.zero
    for x, y in (fixed or {}).items():
        if pins[x] >= 0 and pins[x] != y:
            return []
        pins[x] = y
    rows = kernels.hom_search(dom.binary_array, cod.binary_array, dom.unary_array,
                              cod.unary_array, pins, cod.size)
    return [Homomorphism(dom, cod, tuple(r)) for r in rows.tolist()]


def find_isomorphism(A: FiniteAlgebra, B: FiniteAlgebra) -> Homomorphism | None:
    if A.size != B.size or not A.signature.same_operations(B.signature):
        return None
    for h in homomorphisms(A, B):
        if len(set(h.map)) == A.size:
            return h
    return None


def _perms_fixing_zero(n: int) -> np.ndarray:
    rows = [(0,) + p for p in itertools.permutations(range(1, n))]
    return np.array(rows, dtype=np.int32).reshape(len(rows), n)


_ENUM_LIMITS = {"unitary-magma": 4, "monoid": 6, "commutative-monoid": 6, "group": 6}


def enumerate_algebras(cls: str, n: int, up_to_iso: bool = True) -> Iterator[FiniteAlgebra]:
    """Every unital table of size ``n`` in class ``cls``, in lexicographic order.

    With ``up_to_iso`` only the lexicographically least table of each orbit
    under permutations fixing 0 is produced.
    """
    if n < 1:
        raise ValueError("algebra size must be at least 1")
    if cls not in _ENUM_LIMITS:
        raise ValueError(f"cannot enumerate class {cls!r}")
    if n > _ENUM_LIMITS[cls]:
        raise ValueError(f"size {n} beyond the enumeration bound {_ENUM_LIMITS[cls]} for {cls}")
    perms = _perms_fixing_zero(n) if up_to_iso else np.zeros((0, n), dtype=np.int32)
    tables = kernels.enumerate_unital(n, cls != "unitary-magma", perms)
    sig = signature_for(cls)
    names = [str(i) for i in range(n)]
    prefix = {"unitary-magma": "mag", "monoid": "mon", "commutative-monoid": "cmon", "group": "grp"}[cls]
    count = 0
    for t in tables:
        A = FiniteAlgebra.build(sig, names, 0, {"+": t}, name=f"{prefix}{n}_{count}")
        if cls in ("commutative-monoid", "group") and not validate_algebra(A).ok:
            continue
        count += 1
        yield A


def catalog(cls: str, max_size: int, up_to_iso: bool = True) -> list[FiniteAlgebra]:
    out: list[FiniteAlgebra] = []
    for n in range(1, max_size + 1):
        out.extend(enumerate_algebras(cls, n, up_to_iso))
    return out
