"""Report records: canonical JSON and an aligned plain-text rendering."""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .catalog import DimValue, Marker, Open
from .invariants import Analysis, albanese_decomposition
from .io import format_rational
from .torus import verify_quotient_free

UNAVAILABLE = "unavailable (lattice tier)"


def plain(value: Any) -> Any:
    """Convert library values to JSON-ready data."""
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value.value if isinstance(value, Marker) else value
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, float):
        return "-inf" if value == float("-inf") else value
    if isinstance(value, DimValue):
        return {"value": str(value), "starred": value.starred}
    if isinstance(value, Open):
        return {"value": "OPEN", "conjectured_starred": value.conjectured.starred, "conjectural": True}
    if isinstance(value, dict):
        return {str(k): plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [plain(v) for v in items]
    raise TypeError(f"cannot serialise {type(value).__name__}")


def to_json(report: dict) -> str:
    return json.dumps(plain(report), sort_keys=True, indent=2) + "\n"


def flatten(data: Any, prefix: str = "") -> list[tuple[str, str]]:
    if isinstance(data, dict):
        if not data:
            return [(prefix, "{}")]
        out = []
        for k in sorted(data):
            out += flatten(data[k], f"{prefix}.{k}" if prefix else str(k))
        return out
    if isinstance(data, list):
        if all(not isinstance(x, (dict, list)) for x in data):
            return [(prefix, "[" + ", ".join(json.dumps(x) if isinstance(x, str) else str(x) for x in data) + "]")]
        out = []
        for i, x in enumerate(data):
            out += flatten(x, f"{prefix}[{i}]")
        return out
    if isinstance(data, bool):
        return [(prefix, "true" if data else "false")]
    if data is None:
        return [(prefix, "null")]
    return [(prefix, str(data))]


def to_text(report: dict) -> str:
    rows = flatten(plain(report))
    width = max((len(k) for k, _ in rows), default=0)
    return "".join(f"{k.ljust(width)}  {v}\n" for k, v in rows)


# -- analysis reports ---------------------------------------------------------

def analysis_report(a: Analysis, cap: int | None = None) -> dict:
    table, cl, rep = a.table, a.classification, a.report
    fix = []
    for i, info in sorted(a.fixpoints.items()):
        fix.append({
            "element": i,
            "order": table.orders[i],
            "nonempty": info.nonempty,
            "dim": info.dim,
            "isolated_count": info.isolated_count,
            "torsion": list(info.torsion.invariant_factors) if info.torsion else None,
        })
    alb = albanese_decomposition(table, cl, cap)
    out = {
        "name": a.action.name,
        "tier": a.tier,
        "group_order": len(table),
        "basis_change": a.basis_change.tolist(),
        "classification": {
            "E": cl.E,
            "F": cl.F,
            "Fprime": cl.Fprime,
            "Fstar": cl.Fstar,
            "quotient_order": cl.quotient_order,
            "fstar_generates_fprime": cl.fstar_generates_fprime,
            "generated_by_E": cl.generated_by_E,
            "generated_by_F": cl.generated_by_F,
            "quotient_free_k2": verify_quotient_free(table, 2, cl),
        },
        "fixpoints": fix,
        "invariants": {
            "n": rep.n,
            "q_prime": rep.q_prime,
            "kappa1_star": rep.kappa1_star,
            "nu1_star": rep.nu1_star,
            "etale": rep.etale,
            "reduction": rep.reduction,
        },
        "pi1": {
            "image_rank": rep.pi1.image_rank,
            "finite": rep.pi1.finite,
            "abelian_exponent_bound": rep.pi1.abelian_exponent_bound,
        },
        "albanese": {
            "base_dim": alb.base_dim,
            "fiber_rank": alb.fiber.rank,
            "fiber_q_prime": alb.fiber_q_prime,
            "note": alb.note,
        },
    }
    if a.tier == "analytic":
        can = a.canonicity
        out["hodge"] = {"h0p": list(a.hodge.hodge), "euler_char": a.hodge.euler_char,
                        "euler_char_direct": a.hodge.euler_char_direct}
        out["canonicity"] = {
            "canonical": can.canonical,
            "kodaira_zero": can.kodaira_zero,
            "uniruled": can.uniruled,
            "min_age": can.min_age_witness[1] if can.min_age_witness else None,
            "min_age_element": can.min_age_witness[0] if can.min_age_witness else None,
            "canonical_torsion_order": can.canonical_torsion_order,
            "quasi_reflections": list(can.quasi_reflections),
            "types": [{"element": i, "type": str(t), "age": t.age} for i, t in sorted(can.types.items())],
        }
    else:
        out["hodge"] = UNAVAILABLE
        out["canonicity"] = UNAVAILABLE
    return out
