"""JSON file formats for algebras, homomorphisms, points and templates.

Algebra::

    {"name": "C2", "class": "group", "elements": ["0", "1"], "constant": "0",
     "tables": {"+": [["0", "1"], ["1", "0"]]}}

Homomorphism: ``{"dom": REF, "cod": REF, "map": {"label": "label", ...}}``
Point: ``{"name": ..., "f": HOMREF, "s": HOMREF}`` (kernel is recomputed).
Template: ``{"name": ..., "class": ..., "shape": "(+ SlotA SlotB)"}``

A REF is an inline object, a path relative to the referencing file, or
``builtin:<name>``. Unknown fields are rejected.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Any

from .algebra import (
    CLASSES,
    FiniteAlgebra,
    Homomorphism,
    Signature,
    StructureError,
    signature_for,
)
from .points import Point
from .terms import SplittingTemplate, TermError, parse_shape, template_library


class ParseError(ValueError):
    def __init__(self, message: str, source: str = "", line: int | None = None, column: int | None = None):
        where = source
        if line is not None:
            where += f":{line}:{column}"
        super().__init__(f"{where}: {message}" if where else message)
        self.source, self.line, self.column = source, line, column


def _read_json(path: Path) -> Any:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc.strerror}", str(path)) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, str(path), exc.lineno, exc.colno) from None


def content_hash(path: str | Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()[:16]


def _check_fields(obj: Any, required: set[str], optional: set[str], source: str) -> None:
    if not isinstance(obj, dict):
        raise ParseError("expected a JSON object", source)
    missing = required - obj.keys()
    unknown = obj.keys() - required - optional
    if missing:
        raise ParseError(f"missing fields {sorted(missing)}", source)
    if unknown:
        raise ParseError(f"unknown fields {sorted(unknown)}", source)


def _depth(table: Any) -> int:
    d = 0
    while isinstance(table, list):
        d += 1
        table = table[0] if table else None
    return d


def algebra_from_dict(obj: Any, source: str = "") -> FiniteAlgebra:
    _check_fields(obj, {"class", "elements", "constant", "tables"}, {"name"}, source)
    cls = obj["class"]
    if cls not in CLASSES:
        raise ParseError(f"unknown class {cls!r}", source)
    names = obj["elements"]
    if not isinstance(names, list) or not names:
        raise ParseError("'elements' must be a non-empty list", source)
    names = [str(x) for x in names]
    pos = {x: i for i, x in enumerate(names)}
    tables = obj["tables"]
    if not isinstance(tables, dict) or not tables:
        raise ParseError("'tables' must be a non-empty object", source)
    if cls == "custom":
        ops = list(tables)
        sig = Signature("custom", "0", ops[0], tuple((s, _depth(tables[s])) for s in ops[1:]), "custom")
    else:
        sig = signature_for(cls)

    def conv(t, sym):
        if isinstance(t, list):
            return [conv(v, sym) for v in t]
        if str(t) not in pos:
            raise ParseError(f"table {sym!r}: unknown element {t!r}", source)
        return pos[str(t)]

    if str(obj["constant"]) not in pos:
        raise ParseError(f"constant {obj['constant']!r} is not an element", source)
    try:
        converted = {sym: conv(t, sym) for sym, t in tables.items()}
        return FiniteAlgebra.build(sig, names, pos[str(obj["constant"])], converted,
                                   name=str(obj.get("name", "")))
    except StructureError as exc:
        raise ParseError(str(exc), source) from None


def _builtin_algebra(name: str) -> FiniteAlgebra:
    from .catalog import builtin_algebras

    table = builtin_algebras()
    if name not in table:
        raise ParseError(f"unknown builtin algebra {name!r}; known: {sorted(table)}")
    return table[name]


def resolve_algebra(ref: Any, base: Path | None = None) -> FiniteAlgebra:
    if isinstance(ref, dict):
        return algebra_from_dict(ref, str(base or ""))
    if isinstance(ref, str):
        if ref.startswith("builtin:"):
            return _builtin_algebra(ref.split(":", 1)[1])
        path = Path(ref) if base is None or Path(ref).is_absolute() else base / ref
        return algebra_from_dict(_read_json(path), str(path))
    raise ParseError(f"cannot resolve algebra reference {ref!r}")


def load_algebra(path: str | Path) -> FiniteAlgebra:
    return resolve_algebra(str(path))


def hom_from_dict(obj: Any, base: Path | None = None, source: str = "") -> Homomorphism:
    _check_fields(obj, {"dom", "cod", "map"}, {"name"}, source)
    dom = resolve_algebra(obj["dom"], base)
    cod = resolve_algebra(obj["cod"], base)
    m = obj["map"]
    if not isinstance(m, dict):
        raise ParseError("'map' must be an object from labels to labels", source)
    values = []
    for x in dom.element_names:
        if x not in m:
            raise ParseError(f"map has no image for {x!r}", source)
        y = str(m[x])
        if y not in cod.element_names:
            raise ParseError(f"image {y!r} is not an element of the codomain", source)
        values.append(cod.index(y))
    extra = set(map(str, m)) - set(dom.element_names)
    if extra:
        raise ParseError(f"map mentions unknown elements {sorted(extra)}", source)
    return Homomorphism(dom, cod, tuple(values))


def resolve_hom(ref: Any, base: Path | None = None) -> Homomorphism:
    if isinstance(ref, dict):
        return hom_from_dict(ref, base, str(base or ""))
    if isinstance(ref, str):
        path = Path(ref) if base is None or Path(ref).is_absolute() else base / ref
        return hom_from_dict(_read_json(path), path.parent, str(path))
    raise ParseError(f"cannot resolve homomorphism reference {ref!r}")


def load_hom(path: str | Path) -> Homomorphism:
    return resolve_hom(str(path))


def point_from_dict(obj: Any, base: Path | None = None, source: str = "") -> Point:
    _check_fields(obj, {"f", "s"}, {"name"}, source)
    f = resolve_hom(obj["f"], base)
    s = resolve_hom(obj["s"], base)
    return Point(f, s, str(obj.get("name", "")))


def load_point(path: str | Path) -> Point:
    p = str(path)
    if p.startswith("builtin:"):
        from .catalog import builtin_points

        pts = builtin_points()
        key = p.split(":", 1)[1]
        if key not in pts:
            raise ParseError(f"unknown builtin point {key!r}; known: {sorted(pts)}")
        return pts[key]
    path = Path(path)
    return point_from_dict(_read_json(path), path.parent, str(path))


def template_from_dict(obj: Any, source: str = "") -> SplittingTemplate:
    _check_fields(obj, {"name", "class", "shape"}, set(), source)
    if obj["class"] not in CLASSES:
        raise ParseError(f"unknown class {obj['class']!r}", source)
    try:
        return SplittingTemplate(str(obj["name"]), obj["class"], parse_shape(str(obj["shape"])))
    except TermError as exc:
        raise ParseError(str(exc), source) from None


def load_template(ref: str) -> SplittingTemplate:
    """A library template by name, or a template file."""
    try:
        return template_library(ref)
    except KeyError:
        pass
    path = Path(ref)
    if not path.exists():
        raise ParseError(f"{ref!r} is neither a library template nor a file")
    return template_from_dict(_read_json(path), str(path))


def hom_to_dict(h: Homomorphism, dom_ref: Any = None, cod_ref: Any = None) -> dict:
    return {
        "dom": dom_ref if dom_ref is not None else h.dom.to_dict(),
        "cod": cod_ref if cod_ref is not None else h.cod.to_dict(),
        "map": h.to_dict(),
    }


def point_to_dict(p: Point) -> dict:
    X, Y = p.X.to_dict(), p.Y.to_dict()
    return {"name": p.name, "f": hom_to_dict(p.f, X, Y), "s": hom_to_dict(p.s, Y, X)}


def dump(obj: dict, path: str | Path) -> None:
    Path(path).write_text(json.dumps(obj, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")


def sniff(path: str | Path) -> str:
    """Classify a file as 'algebra', 'hom', 'point' or 'template' by its fields."""
    obj = _read_json(Path(path))
    if not isinstance(obj, dict):
        raise ParseError("expected a JSON object", str(path))
    keys = obj.keys()
    if "tables" in keys:
        return "algebra"
    if "map" in keys:
        return "hom"
    if "f" in keys and "s" in keys:
        return "point"
    if "shape" in keys:
        return "template"
    raise ParseError("cannot tell what kind of file this is", str(path))
