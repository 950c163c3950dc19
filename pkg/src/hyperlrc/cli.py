"""Command-line interface: construct, verify, sweep, tables, repair-sim.

Exit status: 0 when a verified code is optimal or almost optimal (or the
command otherwise succeeded), 2 when only bounds could be certified, 1 on a
rejection or error.  Errors print ``error: <ClassName>: <message>``.
"""
from __future__ import annotations

import argparse
import json
import sys


from . import io as hio
from . import verify as V
from .automorphisms import catalog_group, enumerate_subgroups, group_generate
from .curve import curve_make
from .errors import ConfigError, HyperLRCError
from .lrc import (VARIANTS, LocalCode, RepairGroup, build_code_even, build_code_odd,
                  even_plan, odd_plan)

EXIT_OK, EXIT_REJECT, EXIT_BOUND_ONLY = 0, 1, 2


# ---------------------------------------------------------------------------
# argument helpers

def _roots(spec: str | None) -> dict | None:
    if not spec:
        return None
    out = {}
    for item in spec.split(","):
        if "=" not in item:
            raise ConfigError(f"bad root assignment {item!r}; expected name=value")
        k, v = item.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def _budgets(spec: str | None) -> dict:
    """'1e8' for both strategies, or 'support=1e8,exhaustive=1e9'."""
    if not spec:
        return {}
    try:
        if "=" not in spec:
            v = int(float(spec))
            return {"support_budget": v, "exhaustive_budget": v}
        out = {}
        for item in spec.split(","):
            k, v = item.split("=", 1)
            out[{"support": "support_budget", "exhaustive": "exhaustive_budget"}[k.strip()]] = int(float(v))
        return out
    except (KeyError, ValueError) as e:
        raise ConfigError(f"bad budget {spec!r}") from e


def _ints(spec: str | None) -> list[int] | None:
    if spec is None:
        return None
    try:
        return [int(v) for v in spec.split(",") if v.strip()]
    except ValueError as e:
        raise ConfigError(f"expected comma-separated integers, got {spec!r}") from e


def _extended(v: str) -> bool | None:
    return {"auto": None, "yes": True, "no": False}[v]


def _subgroup(c, spec: str | None, roots):
    """'catalog' (whole group), 'gens:i,j' (catalog generator indices) or 'order:N'
    (first subgroup of that order containing -I)."""
    label, full = catalog_group(c, roots)
    spec = spec or "catalog"
    if spec == "catalog":
        return full
    kind, _, val = spec.partition(":")
    if kind == "gens":
        return group_generate(c, [full.generators[i] for i in _ints(val)])
    if kind == "order":
        subs = enumerate_subgroups(full, True, [int(val)])
        if not subs:
            raise ConfigError(f"{label} has no subgroup of order {val} containing -I")
        return full.subgroup(subs[0])
    raise ConfigError(f"bad subgroup spec {spec!r}")


def _plan(args):
    F = hio.parse_field(args.field)
    c = curve_make(F, args.curve)
    roots = _roots(args.roots)
    if args.variant == "odd":
        return c, odd_plan(c, _subgroup(c, args.subgroup, roots))
    return c, even_plan(c, args.variant)


def _build(plan, args, ell, t, fibers=None):
    if args.variant == "odd":
        return build_code_odd(plan, ell, t, _extended(args.extended), fibers)
    return build_code_even(plan, ell, t, fibers)


def _emit(obj, out: str | None) -> None:
    if out:
        hio.write_json(out, obj)
    else:
        print(json.dumps(obj, sort_keys=True, indent=1))


def _verdict_exit(verdict: str) -> int:
    if verdict in ("optimal", "almost-optimal"):
        return EXIT_OK
    return EXIT_BOUND_ONLY if verdict == "bound-only" else EXIT_REJECT


def _code_from_files(matrix: str, groups: str) -> LocalCode:
    F, G = hio.read_matrix_csv(matrix)
    rec = hio.read_json(groups)
    r, cols, mats, tail = hio.groups_from_record(rec, G.shape[1])
    if mats is None:
        mats = [G[:, g].T[:, :0] for g in cols]
    grp = [RepairGroup(g, M, bool(tl)) for g, M, tl in zip(cols, mats, tail)]
    return LocalCode(F, G, r, grp, [], rec.get("d_lower"), rec.get("plan", {}))


# ---------------------------------------------------------------------------
# commands

def cmd_construct(args) -> int:
    c, plan = _plan(args)
    code = _build(plan, args, args.ell, args.t, _ints(args.fibers))
    rec = hio.code_record(code, c)
    if args.out:
        hio.write_matrix_csv(args.out + ".csv", code.field, code.G)
        hio.write_json(args.out + ".json", rec)
        print(f"wrote {args.out}.csv and {args.out}.json: [{code.n}, {code.k}] r={code.r} "
              f"d_lower={code.d_lower}")
    else:
        _emit(rec, None)
    return EXIT_OK


def cmd_verify(args) -> int:
    code = _code_from_files(args.matrix, args.groups)
    has_mats = all(g.M.shape[1] > 0 for g in code.groups)
    rep = V.classify(code.field, code.G, [g.cols for g in code.groups], code.r, code.d_lower,
                     None if args.strategy == "none" else args.strategy,
                     [g.M for g in code.groups] if has_mats else None,
                     V.repair_sim(code, args.trials, args.seed) if has_mats and args.trials else None,
                     args.threads, k_expected=code.G.shape[0], **_budgets(args.budget))
    if rep.repair_trials and rep.repair_trials.get("mismatches"):
        rep.verdict = "rejected"
    print(rep.row())
    if args.out:
        hio.write_json(args.out, rep.to_json())
    return _verdict_exit(rep.verdict)


def cmd_sweep(args) -> int:
    from .tables import defect_sweep
    _, plan = _plan(args)
    show = None if args.quiet else (lambda row: print(f"ell={row['ell']} t={row['t']} {row['row']}",
                                                      flush=True))
    res = defect_sweep(plan, args.variant, args.max_ell, args.strategy, args.threads, show,
                       **_budgets(args.budget))
    _emit({"schema": hio.SCHEMA, **res}, args.out)
    return EXIT_OK if res["max_defect"] <= 1 else EXIT_REJECT


def cmd_tables(args) -> int:
    from .tables import format_row, run_table
    res = run_table(args.table, args.strategy, args.trials, args.seed,
                    search=not args.no_search, threads=args.threads)
    for row in res:
        print(format_row(row), flush=True)
    if args.out:
        hio.write_json(args.out, {"schema": hio.SCHEMA, "table": args.table, "rows": res})
    if not all(row["match"] for row in res):
        return EXIT_REJECT
    return EXIT_BOUND_ONLY if any(row["verdict"] == "bound-only" for row in res) else EXIT_OK


def cmd_repair_sim(args) -> int:
    code = _code_from_files(args.matrix, args.groups)
    if not all(g.M.shape[1] > 0 for g in code.groups):
        raise ConfigError("repair simulation needs local matrices in the groups file")
    res = V.repair_sim(code, args.trials, args.seed)
    print(f"attempts={res['attempts']} tail_attempts={res['tail_attempts']} "
          f"mismatches={res['mismatches']}")
    if args.out:
        hio.write_json(args.out, res)
    return EXIT_OK if res["mismatches"] == 0 else EXIT_REJECT


# ---------------------------------------------------------------------------

def _add_curve_args(p):
    p.add_argument("--field", required=True, help="e.g. 9, 5^2, or p=5,m=2,modulus=2,4,1")
    p.add_argument("--curve", required=True, help="f(x), e.g. x5+x3+2x")
    p.add_argument("--variant", default="odd", choices=["odd", *VARIANTS])
    p.add_argument("--subgroup", help="catalog | gens:i,j | order:N (odd variant)")
    p.add_argument("--roots", help="root overrides, e.g. omega=1+3*u")
    p.add_argument("--extended", default="auto", choices=["auto", "yes", "no"])


def _add_verify_args(p):
    p.add_argument("--strategy", default="auto", choices=["auto", "support", "exhaustive", "none"])
    p.add_argument("--budget", help="work limit: N or support=N,exhaustive=M")
    p.add_argument("--threads", type=int)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hyperlrc", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("construct", help="build a code and write its matrix and plan")
    _add_curve_args(p)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--fibers", help="plain fiber indices, comma separated")
    p.add_argument("--out", help="output prefix (writes PREFIX.csv and PREFIX.json)")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="verify a generator matrix against its repair groups")
    p.add_argument("matrix")
    p.add_argument("groups")
    _add_verify_args(p)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="defect over all admissible (ell, t)")
    _add_curve_args(p)
    _add_verify_args(p)
    p.add_argument("--max-ell", type=int)
    p.add_argument("--quiet", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("tables", help="rebuild and verify a reference table")
    p.add_argument("table", help="III, IV, V (alias V-r2), VI or VII")
    _add_verify_args(p)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-search", action="store_true", help="use the default fibers only")
    p.add_argument("--out")
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("repair-sim", help="erase and locally recover every position")
    p.add_argument("matrix")
    p.add_argument("groups")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_repair_sim)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except HyperLRCError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_REJECT
    except (OSError, ValueError) as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_REJECT


if __name__ == "__main__":
    sys.exit(main())
