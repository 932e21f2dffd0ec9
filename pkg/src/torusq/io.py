"""Reading and writing action documents (JSON, exact rationals as "p/q" strings)."""
from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any

from .errors import ParseError, ValidationError
from .exactmath import CycloElem, IntMatrix, euler_phi
from .torus import AffineAut, TorusAction

_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")


def parse_rational(text: Any, where: str) -> Fraction:
    if isinstance(text, bool) or not isinstance(text, (str, int)):
        raise ParseError(where, f"expected a rational string 'p/q', got {text!r}")
    s = str(text).strip()
    if not _RATIONAL.match(s):
        raise ParseError(where, f"malformed rational {s!r}")
    if "/" in s and int(s.split("/")[1]) == 0:
        raise ParseError(where, f"zero denominator in {s!r}")
    return Fraction(s)


def format_rational(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _expect(cond: bool, where: str, message: str) -> None:
    if not cond:
        raise ParseError(where, message)


def _int(x: Any, where: str) -> int:
    _expect(isinstance(x, int) and not isinstance(x, bool), where, f"expected an integer, got {x!r}")
    return x


def action_from_dict(doc: Any) -> TorusAction:
    _expect(isinstance(doc, dict), "$", "top level must be an object")
    for key in ("rank", "generators"):
        _expect(key in doc, "$", f"missing key {key!r}")
    name = doc.get("name", "")
    _expect(isinstance(name, str), "name", "must be a string")
    rank = _int(doc["rank"], "rank")
    if rank < 2 or rank % 2:
        raise ValidationError("rank", "must be a positive even integer")
    gens_doc = doc["generators"]
    _expect(isinstance(gens_doc, list), "generators", "must be an array")
    generators = []
    for k, g in enumerate(gens_doc):
        where = f"generators[{k}]"
        _expect(isinstance(g, dict), where, "must be an object")
        _expect("linear" in g, where, "missing key 'linear'")
        lin = g["linear"]
        _expect(isinstance(lin, list) and all(isinstance(r, list) for r in lin), f"{where}.linear",
                "must be an array of arrays")
        if len(lin) != rank or any(len(r) != rank for r in lin):
            raise ValidationError("linear", f"must be {rank}×{rank}")
        rows = [[_int(x, f"{where}.linear[{i}][{j}]") for j, x in enumerate(r)] for i, r in enumerate(lin)]
        trans_doc = g.get("translation", ["0"] * rank)
        _expect(isinstance(trans_doc, list), f"{where}.translation", "must be an array")
        if len(trans_doc) != rank:
            raise ValidationError("translation", f"must have {rank} entries")
        trans = tuple(parse_rational(x, f"{where}.translation[{i}]") for i, x in enumerate(trans_doc))
        h = IntMatrix(rows, cols=rank)
        if abs(h.det()) != 1:
            raise ValidationError("linear", f"generator {k} is not invertible over the integers")
        generators.append(AffineAut(h, trans))
    period = None
    if doc.get("period") is not None:
        pd = doc["period"]
        _expect(isinstance(pd, dict), "period", "must be an object")
        m = _int(pd.get("conductor"), "period.conductor")
        if m < 1:
            raise ValidationError("period", "conductor must be positive")
        mat = pd.get("matrix")
        n = rank // 2
        _expect(isinstance(mat, list), "period.matrix", "must be an array")
        if len(mat) != n or any(not isinstance(r, list) or len(r) != rank for r in mat):
            raise ValidationError("period", f"must be {n}×{rank}")
        deg = euler_phi(m)
        period = []
        for i, r in enumerate(mat):
            row = []
            for j, e in enumerate(r):
                where = f"period.matrix[{i}][{j}]"
                _expect(isinstance(e, list), where, "must be an array of coefficients")
                if len(e) != deg:
                    raise ValidationError("period", f"entry [{i}][{j}] must have {deg} coefficients")
                row.append(CycloElem(m, [parse_rational(c, f"{where}[{q}]") for q, c in enumerate(e)]))
            period.append(row)
    return TorusAction(rank // 2, generators, period, name)


def parse_action(text: str) -> TorusAction:
    """Parse an action document; errors carry a line/column or a field path."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}", exc.msg) from exc
    return action_from_dict(doc)


def action_to_dict(action: TorusAction) -> dict:
    doc: dict[str, Any] = {
        "name": action.name,
        "rank": action.rank,
        "generators": [
            {"linear": g.linear.tolist(), "translation": [format_rational(x) for x in g.translation]}
            for g in action.generators
        ],
    }
    if action.period is not None:
        doc["period"] = {
            "conductor": action.period[0][0].conductor,
            "matrix": [[[format_rational(c) for c in e.coeffs] for e in r] for r in action.period],
        }
    return doc


def dump_action(action: TorusAction) -> str:
    return json.dumps(action_to_dict(action), indent=2) + "\n"
