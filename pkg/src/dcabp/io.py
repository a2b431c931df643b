"""JSON serialization for fields, linear forms, pencils, ABPs and reports.

Scalars are decimal strings (``"num/den"`` for non-integral rationals).  Key
order is fixed and coefficient maps are sorted by variable index, so equal
objects always serialize to identical bytes.
"""
from __future__ import annotations

import json
from typing import Any, Union

from .abp import Abp, LinMatrix, ScalarAbp
from .algebra import QQ, FieldSpec, LinearForm, prime_field
from .errors import DcAbpError, ParseError
from .pencil import Pencil


def field_to_json(f: FieldSpec) -> dict:
    if f.modulus is None:
        return {"kind": "rational"}
    return {"kind": "prime", "p": str(f.modulus)}


def field_from_json(obj: Any) -> FieldSpec:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ParseError("field must be an object with a 'kind'")
    if obj["kind"] == "rational":
        return QQ
    if obj["kind"] == "prime":
        try:
            return prime_field(int(obj["p"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad prime field {obj!r}: {exc}") from exc
    raise ParseError(f"unknown field kind {obj['kind']!r}")


def linform_to_json(lf: LinearForm) -> dict:
    f = lf.field
    return {
        "const": f.format(lf.const),
        "coeffs": {str(i): f.format(lf.coeffs[i]) for i in sorted(lf.coeffs)},
    }


def linform_from_json(obj: Any, nvars: int, field: FieldSpec) -> LinearForm:
    if not isinstance(obj, dict):
        raise ParseError(f"linear form must be an object, got {type(obj).__name__}")
    const = obj.get("const", "0")
    coeffs = obj.get("coeffs", {})
    if not isinstance(const, str) or not isinstance(coeffs, dict):
        raise ParseError("linear form needs a string 'const' and an object 'coeffs'")
    try:
        parsed = {int(k): field.parse(v) for k, v in coeffs.items()}
        return LinearForm(nvars, field, field.parse(const), parsed)
    except ParseError:
        raise
    except (DcAbpError, TypeError, ValueError) as exc:
        raise ParseError(f"bad linear form {obj!r}: {exc}") from exc


def _header(obj: Any, keys) -> None:
    if not isinstance(obj, dict):
        raise ParseError("expected a JSON object")
    missing = [k for k in keys if k not in obj]
    if missing:
        raise ParseError(f"missing keys {missing}")


def _count(obj, key) -> int:
    v = obj[key]
    if not isinstance(v, int) or isinstance(v, bool) or v < 0:
        raise ParseError(f"{key!r} must be a non-negative integer")
    return v


def pencil_to_json(p: Pencil) -> dict:
    return {
        "s": p.s,
        "nvars": p.nvars,
        "field": field_to_json(p.field),
        "entries": [[linform_to_json(lf) for lf in row] for row in p.entries],
    }


def pencil_from_json(obj: Any) -> Pencil:
    _header(obj, ("s", "nvars", "field", "entries"))
    s, n = _count(obj, "s"), _count(obj, "nvars")
    field = field_from_json(obj["field"])
    rows = obj["entries"]
    if s == 0:
        raise ParseError("pencil size must be >= 1")
    if not isinstance(rows, list) or len(rows) != s or any(not isinstance(r, list) or len(r) != s for r in rows):
        raise ParseError(f"entries must be an {s} x {s} grid")
    return Pencil([[linform_from_json(e, n, field) for e in row] for row in rows], n, field)


def abp_to_json(a: Union[Abp, ScalarAbp]) -> dict:
    if isinstance(a, ScalarAbp):
        return {"nvars": a.nvars, "field": field_to_json(a.field), "scalar": a.field.format(a.value)}
    n, f = a.nvars, a.field
    return {
        "nvars": n,
        "field": field_to_json(f),
        "widths": list(a.widths),
        "b": [linform_to_json(lf) for lf in a.b],
        "c": [linform_to_json(lf) for lf in a.c],
        "mats": [[[linform_to_json(lf) for lf in row] for row in m.dense(n, f)] for m in a.mats],
    }


def abp_from_json(obj: Any) -> Union[Abp, ScalarAbp]:
    _header(obj, ("nvars", "field"))
    n = _count(obj, "nvars")
    field = field_from_json(obj["field"])
    if "scalar" in obj:
        return ScalarAbp(field.parse(obj["scalar"]), n, field)
    _header(obj, ("widths", "b", "c", "mats"))
    widths = obj["widths"]
    try:
        b = [linform_from_json(e, n, field) for e in obj["b"]]
        c = [linform_from_json(e, n, field) for e in obj["c"]]
        mats = []
        for m in obj["mats"]:
            grid = [[linform_from_json(e, n, field) for e in row] for row in m]
            if not grid or any(len(row) != len(grid[0]) for row in grid):
                raise ParseError("transition matrices must be non-empty rectangular grids")
            mats.append(LinMatrix.from_dense(grid))
        a = Abp(b, mats, c, n, field)
    except ParseError:
        raise
    except (DcAbpError, TypeError, IndexError) as exc:
        raise ParseError(f"malformed ABP: {exc}") from exc
    if list(a.widths) != widths:
        raise ParseError(f"widths {widths} do not match the layer shapes {list(a.widths)}")
    return a


def object_to_json(obj) -> dict:
    if isinstance(obj, Pencil):
        return pencil_to_json(obj)
    if isinstance(obj, (Abp, ScalarAbp)):
        return abp_to_json(obj)
    if hasattr(obj, "to_json"):
        return obj.to_json()
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def object_from_json(obj: Any) -> Union[Pencil, Abp, ScalarAbp]:
    """Dispatch on shape: pencils have ``entries``, ABPs have ``mats`` or ``scalar``."""
    if isinstance(obj, dict) and "entries" in obj:
        return pencil_from_json(obj)
    if isinstance(obj, dict) and ("mats" in obj or "scalar" in obj):
        return abp_from_json(obj)
    raise ParseError("JSON is neither a pencil nor an ABP")


def dumps(obj) -> str:
    data = obj if isinstance(obj, (dict, list)) else object_to_json(obj)
    return json.dumps(data, indent=2) + "\n"


def loads(text: str):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    return object_from_json(data)


def load(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return loads(fh.read())
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc


def dump(obj, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps(obj))
