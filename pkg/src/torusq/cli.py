"""Command line entry point.

Exit status: 0 on success (OPEN results included), 1 on input or validation
errors, 2 when a resource limit (the group cap) is hit, 3 when a verification
command finds a mismatch.
"""
from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path

from . import catalog, report, symdiff
from .errors import GroupTooLarge, TorusqError
from .invariants import analyze
from .io import parse_action

EXIT_OK, EXIT_INPUT, EXIT_RESOURCE, EXIT_MISMATCH = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _kappa(text: str):
    t = text.strip().lower()
    if t in ("-inf", "-infinity", "neg_inf"):
        return catalog.NEG_INF
    try:
        return int(t)
    except ValueError:
        raise argparse.ArgumentTypeError(f"kappa must be -inf, 0, 1 or 2, got {text!r}")


def _emit(data: dict, as_json: bool) -> None:
    sys.stdout.write(report.to_json(data) if as_json else report.to_text(data))


# -- commands ---------------------------------------------------------------------

def cmd_analyze(args) -> int:
    text = Path(args.file).read_text(encoding="utf-8")
    action = parse_action(text)
    result = analyze(action, cap=args.cap, tier=args.tier)
    _emit(report.analysis_report(result, args.cap), args.json)
    return EXIT_OK


def cmd_verify_cyclic(args) -> int:
    rows = []
    for m in range(args.max_degree + 1):
        c = symdiff.cyclic_descent_dim(args.order, args.weights, m, args.pole)
        rows.append({"m": m, "dimension": c.dimension, "closed_form": c.closed_form_dimension,
                     "agree": c.agree, "vanishing_predicted": m > args.pole * args.order})
    ok = all(r["agree"] and (not r["vanishing_predicted"] or r["dimension"] == 0) for r in rows)
    _emit({"order": args.order, "weights": args.weights, "pole": args.pole, "degrees": rows, "verified": ok},
          args.json)
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_descent_isotrivial(args) -> int:
    rows = []
    for m in range(args.max_degree + 1):
        d = symdiff.isotrivial_descent_basis(args.order, args.epsilon, m)
        rows.append({"m": m, "degree_bound": d.degree_bound, "basis_size": len(d.basis),
                     "basis": [f"s^{k} ds^{m - p} dx^{p}" for k, p in d.basis], "match": d.match})
    ok = all(r["match"] for r in rows)
    _emit({"order": args.order, "epsilon": args.epsilon, "degrees": rows, "verified": ok}, args.json)
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_clebsch_gordan(args) -> int:
    dims = symdiff.clebsch_gordan_dims(args.max_degree)
    rows = [{"m": m, "h0_sym": a, "ratio": b} for m, (a, b) in enumerate(dims)]
    ok = all(a == 1 and b == m + 1 for m, (a, b) in enumerate(dims))
    _emit({"degrees": rows, "verified": ok}, args.json)
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_cap_check(args) -> int:
    rng = random.Random(args.seed)
    trials = []
    for t in range(args.trials):
        bases = symdiff.random_subspaces(rng, args.dims, args.count)
        for m in range(args.max_degree + 1):
            lhs, rhs = symdiff.sym_intersection_dim(bases, m, args.dims)
            trials.append({"trial": t, "m": m, "lhs": lhs, "rhs": rhs, "equal": lhs == rhs})
    ok = all(r["equal"] for r in trials)
    _emit({"dims": args.dims, "count": args.count, "seed": args.seed, "checks": len(trials),
           "failures": [r for r in trials if not r["equal"]], "verified": ok}, args.json)
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_surface(args) -> int:
    spec = catalog.SurfaceSpec(
        kappa=args.kappa,
        genus=args.genus,
        isotrivial=args.isotrivial,
        has_singular_fiber=args.singular_fibers > 0,
        multiple_fibers=tuple(args.multiple_fibers or ()),
        q_prime_hint=args.q_prime,
    )
    res = catalog.surface_invariants(spec)
    _emit({"kappa1": res.kappa1, "nu1": res.nu1, "status": res.status, "rationale": res.rationale}, args.json)
    return EXIT_OK


def cmd_formula(args) -> int:
    if args.which == "abelian-sub":
        k, v = catalog.abelian_submanifold(args.dim, args.ambient)
        data = {"kappa1": k, "nu1": v}
    else:
        res = catalog.complete_intersection(args.dim, args.ambient)
        data = {"kappa1": res, "nu1": res} if isinstance(res, catalog.Marker) else {"kappa1": res[0], "nu1": res[1]}
    _emit({"formula": args.which, "dim": args.dim, "ambient": args.ambient, **data}, args.json)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    parser = _Parser(prog="torusq", description="Invariants of complex torus quotients and symbolic checks.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("analyze", parents=[common], help="analyse an action document")
    p.add_argument("file")
    p.add_argument("--tier", choices=["lattice", "analytic"])
    p.add_argument("--cap", type=int, default=None)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify-cyclic", parents=[common], help="cyclic quotient descent oracle")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--weights", type=_int_list, required=True)
    p.add_argument("--max-degree", type=int, required=True)
    p.add_argument("--pole", type=int, default=0)
    p.set_defaults(func=cmd_verify_cyclic)

    p = sub.add_parser("descent-isotrivial", parents=[common], help="descent through an isotrivial singular fibre")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--epsilon", type=int, choices=[1, -1], required=True)
    p.add_argument("--max-degree", type=int, required=True)
    p.set_defaults(func=cmd_descent_isotrivial)

    p = sub.add_parser("clebsch-gordan", parents=[common], help="dimensions for a non-split rank-2 extension")
    p.add_argument("--max-degree", type=int, required=True)
    p.set_defaults(func=cmd_clebsch_gordan)

    p = sub.add_parser("cap-check", parents=[common], help="Sym^m of an intersection on random subspaces")
    p.add_argument("--dims", type=int, required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--max-degree", type=int, required=True)
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_cap_check)

    p = sub.add_parser("surface", parents=[common], help="cotangent dimensions of a surface")
    p.add_argument("--kappa", type=_kappa, required=True)
    p.add_argument("--genus", type=int, default=0)
    p.add_argument("--isotrivial", action="store_true")
    p.add_argument("--singular-fibers", type=int, default=0)
    p.add_argument("--multiple-fibers", type=_int_list, default=None)
    p.add_argument("--q-prime", type=int, default=None)
    p.set_defaults(func=cmd_surface)

    p = sub.add_parser("formula", parents=[common], help="closed-form values")
    p.add_argument("which", choices=["abelian-sub", "ci"])
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--ambient", type=int, required=True)
    p.set_defaults(func=cmd_formula)
    return parser


def _join_negative_values(argv: list[str]) -> list[str]:
    """Rewrite ``--kappa -inf`` as ``--kappa=-inf`` (argparse reads ``-inf`` as an option)."""
    out, i = [], 0
    while i < len(argv):
        if argv[i] == "--kappa" and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"--kappa={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    argv = _join_negative_values(sys.argv[1:] if argv is None else list(argv))
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"torusq: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except GroupTooLarge as exc:
        print(f"torusq: resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (TorusqError, ValueError, OSError) as exc:
        print(f"torusq: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
