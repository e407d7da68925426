"""Terms, formal coproduct words and splitting templates.

A term is a tree of operation symbols over a signature. Its leaves are
variables, the constant, template slots (``SlotA``/``SlotB``) or coproduct
leaves (a side plus an element index). Templates are fixed shapes, so
instantiating one at ``(a, b)`` and folding through a pair of legs is just
term evaluation in the legs' common codomain.

The unary symbol ``inv`` is reserved: it reads the algebra's ``inv`` table
when there is one, and otherwise the two-sided inverse for ``+``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence, Union

from .algebra import (
    FiniteAlgebra,
    Homomorphism,
    SetMap,
    SignatureMismatch,
    product,
    satisfies,
    trivial_algebra,
    zero_map,
)
from .report import Report, Violation

INV = "inv"


class TermError(ValueError):
    pass


class TemplateClassError(ValueError):
    """An algebra outside the template's required equational class."""


@dataclass(frozen=True)
class Var:
    index: int


@dataclass(frozen=True)
class Const:
    pass


@dataclass(frozen=True)
class Slot:
    side: str  # "A" or "B"


@dataclass(frozen=True)
class Leaf:
    side: str  # "left" or "right"
    element: int


@dataclass(frozen=True)
class Op:
    symbol: str
    args: tuple

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))


Term = Union[Var, Const, Slot, Leaf, Op]
SLOT_A, SLOT_B = Slot("A"), Slot("B")


def plus(x: Term, y: Term, symbol: str = "+") -> Op:
    return Op(symbol, (x, y))


def inv(x: Term) -> Op:
    return Op(INV, (x,))


def leaves(t: Term):
    if isinstance(t, Op):
        for a in t.args:
            yield from leaves(a)
    else:
        yield t


def _evaluate(A: FiniteAlgebra, t: Term, leaf: Callable[[Term], int]) -> int:
    if isinstance(t, Op):
        vals = [_evaluate(A, a, leaf) for a in t.args]
        if t.symbol == INV and INV not in dict(A.signature.operations):
            if len(vals) != 1:
                raise TermError("inv is unary")
            r = A.inverses[vals[0]]
            if r is None:
                raise TermError(f"element {A.label(vals[0])} has no inverse")
            return r
        try:
            arity = A.signature.arity(t.symbol)
        except KeyError:
            raise TermError(f"operation {t.symbol!r} is not in the signature") from None
        if arity != len(vals):
            raise TermError(f"{t.symbol!r} has arity {arity}, got {len(vals)} arguments")
        return A.apply(t.symbol, *vals)
    if isinstance(t, Const):
        return A.zero
    return leaf(t)


def evaluate_term(A: FiniteAlgebra, t: Term, assignment: Mapping[int, int] | Sequence[int]) -> int:
    """Fold ``t`` through the tables of ``A`` under a variable assignment."""

    def leaf(x):
        if not isinstance(x, Var):
            raise TermError(f"unexpected leaf {x!r} in a plain term")
        try:
            v = assignment[x.index]
        except (KeyError, IndexError):
            raise TermError(f"variable x{x.index} is unassigned") from None
        if not 0 <= v < A.size:
            raise TermError(f"variable x{x.index} assigned out of range")
        return v

    return _evaluate(A, t, leaf)


def extend(fbar: SetMap, word: Term) -> int:
    """Value of the free extension of ``fbar`` on a word over dom(fbar)."""
    return evaluate_term(fbar.cod, word, fbar.map)


# ---------------------------------------------------------------- coproduct words

def fold_coproduct(w: Term, left_leg: SetMap, right_leg: SetMap) -> int:
    """Copair the legs and evaluate the word in their common codomain."""
    C = left_leg.cod
    if right_leg.cod != C:
        raise SignatureMismatch("legs must share a codomain")

    def leaf(x):
        if not isinstance(x, Leaf):
            raise TermError(f"unexpected leaf {x!r} in a coproduct word")
        leg = left_leg if x.side == "left" else right_leg
        if not 0 <= x.element < leg.dom.size:
            raise TermError(f"{x.side} leaf {x.element} out of range")
        return leg(x.element)

    return _evaluate(C, w, leaf)


def render(t: Term, left=None, right=None) -> str:
    if isinstance(t, Op):
        if len(t.args) == 2:
            return f"({render(t.args[0], left, right)} {t.symbol} {render(t.args[1], left, right)})"
        return f"{t.symbol}({render(t.args[0], left, right)})"
    if isinstance(t, Const):
        return "0"
    if isinstance(t, Var):
        return f"x{t.index}"
    if isinstance(t, Slot):
        return f"Slot{t.side}"
    label = (left if t.side == "left" else right)
    name = label.label(t.element) if label is not None else str(t.element)
    return name + ("̲" if t.side == "left" else "̄")


# ---------------------------------------------------------------- templates

@dataclass(frozen=True)
class SplittingTemplate:
    name: str
    required_class: str
    shape: Term

    def __post_init__(self):
        for x in leaves(self.shape):
            if not isinstance(x, (Slot, Const)):
                raise TermError(f"template leaves must be SlotA, SlotB or 0, not {x!r}")

    def instantiate(self, a: int, b: int) -> Term:
        def sub(t):
            if isinstance(t, Op):
                return Op(t.symbol, tuple(sub(x) for x in t.args))
            if isinstance(t, Slot):
                return Leaf("left", a) if t.side == "A" else Leaf("right", b)
            return t

        return sub(self.shape)

    def fold(self, a: int, b: int, left_leg: SetMap, right_leg: SetMap) -> int:
        return fold_coproduct(self.instantiate(a, b), left_leg, right_leg)

    def check_class(self, *algebras: FiniteAlgebra) -> None:
        for A in algebras:
            if not satisfies(A, self.required_class):
                raise TemplateClassError(
                    f"template {self.name!r} needs class {self.required_class}; "
                    f"{A.name or 'algebra'} is not one")

    def to_prefix(self) -> str:
        return to_prefix(self.shape)

    def to_dict(self) -> dict:
        return {"name": self.name, "class": self.required_class, "shape": self.to_prefix()}


def to_prefix(t: Term) -> str:
    if isinstance(t, Op):
        return "(" + " ".join([t.symbol] + [to_prefix(a) for a in t.args]) + ")"
    if isinstance(t, Slot):
        return f"Slot{t.side}"
    if isinstance(t, Const):
        return "0"
    raise TermError(f"cannot print leaf {t!r}")


def parse_shape(text: str) -> Term:
    """Parse a prefix expression such as ``(+ (inv SlotA) SlotB)``."""
    tokens = text.replace("(", " ( ").replace(")", " ) ").split()
    pos = 0

    def parse():
        nonlocal pos
        if pos >= len(tokens):
            raise TermError("unexpected end of shape expression")
        tok = tokens[pos]
        pos += 1
        if tok == "(":
            if pos >= len(tokens):
                raise TermError("unexpected end of shape expression")
            sym = tokens[pos]
            pos += 1
            args = []
            while pos < len(tokens) and tokens[pos] != ")":
                args.append(parse())
            if pos >= len(tokens):
                raise TermError("unbalanced parentheses in shape")
            pos += 1
            if not args:
                raise TermError(f"operation {sym!r} without arguments")
            return Op(sym, tuple(args))
        if tok == ")":
            raise TermError("unexpected ')' in shape")
        if tok == "SlotA":
            return SLOT_A
        if tok == "SlotB":
            return SLOT_B
        if tok == "0":
            return Const()
        raise TermError(f"unknown token {tok!r} in shape")

    t = parse()
    if pos != len(tokens):
        raise TermError("trailing tokens in shape")
    return t


DIRECT = SplittingTemplate("direct", "unitary-magma", plus(SLOT_A, SLOT_B))
TWISTED = SplittingTemplate("twisted", "unitary-magma", plus(SLOT_B, SLOT_A))
GROUP_CONJUGATION = SplittingTemplate(
    "group-conjugation", "group", plus(plus(inv(SLOT_A), SLOT_B), plus(SLOT_A, SLOT_A)))

_LIBRARY = {t.name: t for t in (DIRECT, TWISTED, GROUP_CONJUGATION)}


def template_library(name: str) -> SplittingTemplate:
    try:
        return _LIBRARY[name]
    except KeyError:
        raise KeyError(f"unknown template {name!r}; known: {sorted(_LIBRARY)}") from None


def with_operation(t: SplittingTemplate, symbol: str) -> SplittingTemplate:
    """Rename the binary ``+`` of a template (e.g. to ``^`` for meets)."""

    def sub(x):
        if isinstance(x, Op):
            sym = symbol if x.symbol == "+" else x.symbol
            return Op(sym, tuple(sub(a) for a in x.args))
        return x

    return SplittingTemplate(t.name, t.required_class, sub(t.shape))


def for_algebra(t: SplittingTemplate, A: FiniteAlgebra) -> SplittingTemplate:
    """The template written in ``A``'s unital-operation symbol."""
    op = A.signature.jt_operation
    return t if op == "+" else with_operation(t, op)


def verify_splitting_identity(t: SplittingTemplate, A: FiniteAlgebra, B: FiniteAlgebra) -> Report:
    """Check that folding through ``⟨1,0⟩`` and ``⟨0,1⟩`` returns every pair."""
    t.check_class(A, B)
    t = for_algebra(t, A)
    rep = Report(subject=f"splitting identity of {t.name} on ({A.name or 'A'}, {B.name or 'B'})")
    P = product(A, B)
    left = P.pair(Homomorphism(A, A, tuple(A.elements)), zero_map(A, B))
    right = P.pair(zero_map(B, A), Homomorphism(B, B, tuple(B.elements)))
    rep.checked.append("splitting")
    for a in A.elements:
        for b in B.elements:
            got = t.fold(a, b, left, right)
            if got != P.element(a, b):
                ga, gb = P.split(got)
                rep.add(Violation("splitting", (a, b), (A.label(a), B.label(b)),
                                  f"folded to ({A.label(ga)},{B.label(gb)})"))
    # degenerate pair (A, 0): the template collapses to the counit on A
    rep.checked.append("degenerate")
    T = trivial_algebra(B.signature)
    z = zero_map(T, A)
    idA = Homomorphism(A, A, tuple(A.elements))
    for a in A.elements:
        got = t.fold(a, 0, idA, z)
        if got != a:
            rep.add(Violation("degenerate", (a,), (A.label(a),), f"t at (a,0) gave {A.label(got)}"))
    return rep


# ---------------------------------------------------------------- imaginary morphisms

ImaginaryMorphism = SetMap


def coerce(h: SetMap) -> SetMap:
    """A real morphism viewed as an imaginary one (its values on generators)."""
    return SetMap(h.dom, h.cod, h.map)


def counit(X: FiniteAlgebra) -> SetMap:
    return SetMap(X, X, tuple(X.elements))


def cokleisli_compose(fbar: SetMap, gbar: SetMap) -> SetMap:
    """``gbar ∘ fbar`` for imaginary morphisms; on generators, plain composition."""
    if fbar.cod != gbar.dom:
        raise SignatureMismatch("co-Kleisli composition: codomain/domain mismatch")
    return SetMap(fbar.dom, gbar.cod, tuple(gbar.map[v] for v in fbar.map))


def real_after_imaginary(g: Homomorphism, fbar: SetMap) -> SetMap:
    """``g ∘ fbar``: the imaginary morphism ``g f`` of P(X) → Z."""
    if fbar.cod != g.dom:
        raise SignatureMismatch("composition mismatch")
    return SetMap(fbar.dom, g.cod, tuple(g(fbar(x)) for x in fbar.dom.elements))


def imaginary_after_real(gbar: SetMap, f: Homomorphism) -> SetMap:
    """``gbar ∘ f``: the imaginary morphism ``g P(f)``."""
    if f.cod != gbar.dom:
        raise SignatureMismatch("composition mismatch")
    return SetMap(f.dom, gbar.cod, tuple(gbar(f(x)) for x in f.dom.elements))


# ---------------------------------------------------------------- words in N + N

def enumerate_splittings_at_generator(max_len: int) -> list[tuple[tuple[str, int], ...]]:
    """Alternating block words in ℕ+ℕ whose comparison image is (1, 1).

    A word is a sequence of ``(side, n)`` blocks with ``n >= 1`` and sides
    alternating. Every block value in ``1..max(max_len, 2)`` is tried, so
    the sum filter does the real work.
    """
    if max_len < 1:
        raise ValueError("max_len must be at least 1")
    if max_len > 6:
        raise ValueError("max_len is bounded by 6")
    top = max(max_len, 2)
    out = []
    for length in range(1, max_len + 1):
        for first in ("left", "right"):
            sides = [first if i % 2 == 0 else ("right" if first == "left" else "left")
                     for i in range(length)]
            for values in itertools.product(range(1, top + 1), repeat=length):
                lsum = sum(v for s, v in zip(sides, values) if s == "left")
                rsum = sum(v for s, v in zip(sides, values) if s == "right")
                if (lsum, rsum) == (1, 1):
                    out.append(tuple(zip(sides, values)))
    return out


def render_word(word: Sequence[tuple[str, int]]) -> str:
    return "".join(f"{n}" + ("̲" if side == "left" else "̄") for side, n in word)
