"""Builtin algebras and points, each bundled with its expected verdicts."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable

from .algebra import (
    FiniteAlgebra,
    Homomorphism,
    catalog,
    signature_for,
    trivial_algebra,
    validate_algebra,
)
from .points import Point, identity_point, is_strong_point, product_projection_point
from .schreier import classify_point, intrinsic_schreier_check
from .special import NotAMonoid, diagonal_point, extract_loop, is_group, is_s_special


def cyclic(n: int, name: str | None = None) -> FiniteAlgebra:
    return FiniteAlgebra.build(signature_for("group"), [str(i) for i in range(n)], 0,
                               {"+": [[(i + j) % n for j in range(n)] for i in range(n)]},
                               name=name or f"C{n}")


def klein() -> FiniteAlgebra:
    return FiniteAlgebra.build(signature_for("group"), ["0", "a", "b", "c"], 0,
                               {"+": [[i ^ j for j in range(4)] for i in range(4)]}, name="Klein")


def s3() -> FiniteAlgebra:
    """Permutations of {0,1,2}; ``x + y`` applies y first, then x."""
    perms = [(0, 1, 2), (1, 2, 0), (2, 0, 1), (0, 2, 1), (2, 1, 0), (1, 0, 2)]
    names = ["e", "r", "r2", "s", "sr", "sr2"]
    idx = {p: i for i, p in enumerate(perms)}
    table = [[idx[tuple(x[y[i]] for i in range(3))] for y in perms] for x in perms]
    return FiniteAlgebra.build(signature_for("group"), names, 0, {"+": table}, name="S3")


def magma_counterexample() -> FiniteAlgebra:
    return FiniteAlgebra.build(
        signature_for("unitary-magma"), ["0", "a", "b"], "0",
        {"+": [[0, 1, 2], [1, 0, 0], [2, 0, 0]]}, name="mag-counterexample")


def magma_counterexample_point() -> Point:
    X, Y = magma_counterexample(), cyclic(2)
    f = Homomorphism(X, Y, (0, 1, 1))
    s = Homomorphism(Y, X, (0, 1))
    return Point(f, s, "mag-counterexample-point")


def absorbing_monoid() -> FiniteAlgebra:
    return FiniteAlgebra.build(signature_for("monoid"), ["0", "1"], 0,
                               {"+": [[0, 1], [1, 1]]}, name="absorbing-2")


def heyting_from_order(names: list[str], leq: Callable[[int, int], bool], name: str) -> FiniteAlgebra:
    """Heyting semilattice of a finite lattice given by its order.

    Meet is the greatest lower bound; ``x -> y`` is the greatest ``z`` with
    ``z ∧ x <= y``. The top element is the constant.
    """
    n = len(names)
    E = range(n)

    def greatest(cands):
        cands = list(cands)
        for c in cands:
            if all(leq(d, c) for d in cands):
                return c
        raise ValueError("order is not a lattice")

    meet = [[greatest(z for z in E if leq(z, x) and leq(z, y)) for y in E] for x in E]
    imp = [[greatest(z for z in E if leq(meet[z][x], y)) for y in E] for x in E]
    top = greatest(E)
    return FiniteAlgebra.build(signature_for("heyting-semilattice"), names, top,
                               {"^": meet, "->": imp}, name=name)


def heyting_chain(length: int) -> FiniteAlgebra:
    """Chain listed top first, so the constant has index 0."""
    names = {1: ["T"], 2: ["T", "B"], 3: ["T", "m", "B"], 4: ["T", "u", "m", "B"]}[length]
    # index 0 is the top: x <= y iff x is at least as low in the list
    return heyting_from_order(names, lambda x, y: x >= y, f"heyting-{length}-chain")


def heyting_diamond() -> FiniteAlgebra:
    names = ["T", "p", "q", "B"]
    below = {0: {0, 1, 2, 3}, 1: {1, 3}, 2: {2, 3}, 3: {3}}
    return heyting_from_order(names, lambda x, y: x in below[y], "heyting-diamond")


def heyting_catalog() -> list[FiniteAlgebra]:
    """Hand-curated Heyting semilattices: chains of length 1..4 and the diamond."""
    return [heyting_chain(1), heyting_chain(2), heyting_chain(3), heyting_chain(4), heyting_diamond()]


def builtin_algebras() -> dict[str, FiniteAlgebra]:
    return {
        "trivial": trivial_algebra(signature_for("group"), "0"),
        "c2": cyclic(2),
        "c4": cyclic(4),
        "klein": klein(),
        "s3": s3(),
        "absorbing-2": absorbing_monoid(),
        "mag-counterexample": magma_counterexample(),
        "heyting-2-chain": heyting_chain(2),
        "heyting-3-chain": heyting_chain(3),
        "heyting-4-chain": heyting_chain(4),
        "heyting-diamond": heyting_diamond(),
    }


def builtin_points() -> dict[str, Point]:
    A = builtin_algebras()
    return {
        "c2-diagonal": diagonal_point(A["c2"]),
        "mag-counterexample-point": magma_counterexample_point(),
        "identity-c2": identity_point(A["c2"]),
        "c2xc2-projection": product_projection_point(A["c2"], A["c2"]),
        "heyting-3-chain-diagonal": diagonal_point(A["heyting-3-chain"]),
    }


def full_catalog(monoid_size: int = 4, magma_size: int = 3) -> list[FiniteAlgebra]:
    """Enumerated monoids and unitary magmas, builtins and the Heyting catalog."""
    out = catalog("monoid", monoid_size) + catalog("unitary-magma", magma_size)
    out += [A for key, A in builtin_algebras().items() if key != "trivial"]
    out += heyting_catalog()
    return out


# ---------------------------------------------------------------- expectations

@dataclass
class Expectation:
    check: str
    expected: object
    compute: Callable[[], object]

    def run(self) -> tuple[bool, object]:
        try:
            got = self.compute()
        except Exception as exc:  # noqa: BLE001 - reported as a failed expectation
            got = f"error: {type(exc).__name__}: {exc}"
        return got == self.expected, got


@dataclass
class BuiltinExample:
    name: str
    kind: str  # "algebra" or "point"
    value: object
    expectations: list[Expectation] = field(default_factory=list)


def _witness(rep, law):
    v = rep.failed(law)
    return list(v[0].labels) if v else None


def _q_table(res):
    return None if not res else res.retraction.table()


def _loop_table(X, hand):
    loop = extract_loop(X, hand)
    return None if loop is None else loop.to_dict()["table"]


def _strong(p):
    v = is_strong_point(p)
    return True if v else sorted(v.witness.labels())


def _group_or_rejected(M):
    try:
        return is_group(M)
    except NotAMonoid:
        return "rejected"


def builtin_examples() -> dict[str, BuiltinExample]:
    A = builtin_algebras()
    P = builtin_points()
    c2, c4, mag, chain3 = A["c2"], A["c4"], A["mag-counterexample"], A["heyting-3-chain"]
    ex: dict[str, BuiltinExample] = {}

    def add(name, kind, value, *exps):
        ex[name] = BuiltinExample(name, kind, value, list(exps))

    c2_q = {"(0,0)": "(0,0)", "(0,1)": "(1,0)", "(1,0)": "(1,0)", "(1,1)": "(0,0)"}
    add("c2", "algebra", c2,
        Expectation("valid", True, lambda: validate_algebra(c2).ok),
        Expectation("is_group", True, lambda: is_group(c2)),
        Expectation("s_special_direct", c2_q, lambda: _q_table(is_s_special(c2))),
        Expectation("right_loop", [["0", "1"], ["1", "0"]], lambda: _loop_table(c2, "right")))
    add("c4", "algebra", c4,
        Expectation("is_group", True, lambda: is_group(c4)),
        Expectation("right_loop", [[c4.label((x - y) % 4) for y in range(4)] for x in range(4)],
                    lambda: _loop_table(c4, "right")))
    add("klein", "algebra", A["klein"],
        Expectation("is_group", True, lambda: is_group(A["klein"])))
    add("s3", "algebra", A["s3"],
        Expectation("valid", True, lambda: validate_algebra(A["s3"]).ok),
        Expectation("is_group", True, lambda: is_group(A["s3"])))
    add("absorbing-2", "algebra", A["absorbing-2"],
        Expectation("is_group", False, lambda: is_group(A["absorbing-2"])),
        Expectation("s_special_direct", None, lambda: _q_table(is_s_special(A["absorbing-2"]))))
    add("mag-counterexample", "algebra", mag,
        Expectation("table_row_a", ["a", "0", "0"], lambda: [mag.label(v) for v in mag.plus[1]]),
        Expectation("valid_as_unitary_magma", True, lambda: validate_algebra(mag).ok),
        Expectation("monoid_associativity_witness", ["a", "a", "b"],
                    lambda: _witness(validate_algebra(mag, "monoid"), "associativity")),
        Expectation("is_group", "rejected", lambda: _group_or_rejected(mag)))
    add("heyting-3-chain", "algebra", chain3,
        Expectation("valid", True, lambda: validate_algebra(chain3).ok),
        Expectation("s_special_diagnostic", {"element": "(T,m)", "decompositions": []},
                    lambda: is_s_special(chain3).diagnostic(diagonal_point(chain3))),
        Expectation("right_loop", None, lambda: _loop_table(chain3, "right")))
    add("heyting-diamond", "algebra", A["heyting-diamond"],
        Expectation("valid", True, lambda: validate_algebra(A["heyting-diamond"]).ok))

    diag = P["c2-diagonal"]
    add("c2-diagonal", "point", diag,
        Expectation("right_retraction", c2_q, lambda: _q_table(intrinsic_schreier_check(diag))),
        Expectation("left_homogeneous", True, lambda: classify_point(diag).left_homogeneous is not None),
        Expectation("strong", True, lambda: _strong(diag)))
    mp = P["mag-counterexample-point"]
    add("mag-counterexample-point", "point", mp,
        Expectation("kernel", ["0"], lambda: mp.kernel.labels()),
        Expectation("strong", ["0", "a"], lambda: _strong(mp)),
        Expectation("right_retraction", None, lambda: _q_table(intrinsic_schreier_check(mp))),
        Expectation("diagnostic", {"element": "b", "decompositions": []},
                    lambda: intrinsic_schreier_check(mp).diagnostic(mp)))
    ip = P["identity-c2"]
    add("identity-c2", "point", ip,
        Expectation("right_retraction", {"0": "0", "1": "0"}, lambda: _q_table(intrinsic_schreier_check(ip))),
        Expectation("homogeneous", True, lambda: classify_point(ip).homogeneous))
    pp = P["c2xc2-projection"]
    add("c2xc2-projection", "point", pp,
        Expectation("right_retraction", {"(0,0)": "(0,0)", "(0,1)": "(0,0)", "(1,0)": "(1,0)", "(1,1)": "(1,0)"},
                    lambda: _q_table(intrinsic_schreier_check(pp))),
        Expectation("strong", True, lambda: _strong(pp)))
    return ex


def run_all_expectations() -> list[dict]:
    rows = []
    for name, example in builtin_examples().items():
        for e in example.expectations:
            ok, got = e.run()
            rows.append({"example": name, "check": e.check,
                         "expected": e.expected, "got": got, "ok": ok})
    return rows


def builtin_pairs():
    """All ordered pairs of the four builtin groups."""
    A = builtin_algebras()
    groups = [A[k] for k in ("c2", "c4", "klein", "s3")]
    return list(itertools.product(groups, repeat=2))
