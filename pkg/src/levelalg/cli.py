"""Command-line front end.

Exit status: 0 affirmative, 1 negative, 2 unknown, 64 usage error,
65 input parse error, 70 internal failure.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from typing import Callable

from . import betti, bounds, hvec, invsys, level2, macaulay
from .forms import FormParseError, format_forms, parse_forms

EXIT_OK, EXIT_NO, EXIT_UNKNOWN = 0, 1, 2
EXIT_USAGE, EXIT_PARSE, EXIT_INTERNAL = 64, 65, 70


class UsageError(Exception):
    pass


class ParseError(Exception):
    pass


@dataclass
class Result:
    verdict: str
    code: int
    trace: dict = field(default_factory=dict)
    artifacts: dict = field(default_factory=dict)
    plain: list[str] = field(default_factory=list)


def _tri(v: hvec.Tri) -> tuple[str, int]:
    return v.value, {hvec.Tri.YES: EXIT_OK, hvec.Tri.NO: EXIT_NO, hvec.Tri.UNKNOWN: EXIT_UNKNOWN}[v]


def _yes(b: bool) -> tuple[str, int]:
    return ("Yes", EXIT_OK) if b else ("No", EXIT_NO)


def _csv(v) -> str:
    return ",".join(str(x) for x in v)


def parse_hvector(text: str) -> tuple[int, ...]:
    try:
        h = tuple(int(x) for x in text.replace(" ", "").split(","))
    except ValueError:
        raise ParseError(f"cannot parse h-vector {text!r}; expected comma-separated integers")
    try:
        return hvec.validate_hvector(h)
    except ValueError as exc:
        raise ParseError(str(exc))


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.subcommand} needs " + ", ".join("--" + n for n in missing))


def _h(args):
    _need(args, "h")
    return parse_hvector(args.h)


def _read_forms(path: str, what: str):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {what} file {path}: {exc.strerror}")
    try:
        return parse_forms(text)
    except FormParseError as exc:
        raise ParseError(f"{path}: {exc}")


def _module(args):
    _need(args, "module")
    forms = _read_forms(args.module, "module")
    if any(f.var != "y" for f in forms):
        raise ParseError("module files use the dual variables y1..yr")
    try:
        return invsys.InverseModule(forms)
    except ValueError as exc:
        raise UsageError(str(exc))


def _write_witness(args, name: str, m: invsys.InverseModule, header: str) -> str:
    os.makedirs(args.witness_dir, exist_ok=True)
    path = os.path.join(args.witness_dir, name)
    with open(path, "w") as fh:
        fh.write(format_forms(m.generators, header))
    return path


# ---------------------------------------------------------------------------
# subcommands


def cmd_expand(args) -> Result:
    _need(args, "n", "i")
    if args.n == 0:
        up = macaulay.macaulay_upper(0, args.i)
        return Result("ok", EXIT_OK, {"expansion": "", "upper": up}, plain=["expansion: 0", f"upper: {up}"])
    exp = macaulay.binomial_expand(args.n, args.i)
    up = macaulay.macaulay_upper(args.n, args.i)
    terms = [list(t) for t in exp.terms]
    return Result("ok", EXIT_OK, {"expansion": str(exp), "terms": terms, "upper": up},
                  plain=[f"expansion: {exp}", f"upper: {up}"])


def cmd_oseq(args) -> Result:
    h = _h(args)
    ok = macaulay.is_o_sequence(h)
    trace = {}
    for d in range(1, len(h) - 1):
        cap = macaulay.macaulay_upper(h[d], d)
        if h[d + 1] > cap:
            trace = {"degree": d + 1, "inequality": f"h_{d + 1}={h[d + 1]} > h_{d}^<{d}>={cap}"}
            break
    v, c = _yes(ok)
    return Result(v, c, trace, plain=[f"o-sequence: {v}"] + ([trace["inequality"]] if trace else []))


def cmd_si(args) -> Result:
    h = _h(args)
    e = len(h) - 1
    trace = {"symmetric": hvec.is_symmetric(h),
             "first_difference": hvec.first_difference(h[: e // 2 + 1])}
    v, c = _yes(hvec.is_si_sequence(h))
    return Result(v, c, trace, plain=[f"SI-sequence: {v}", f"first difference: {_csv(trace['first_difference'])}"])


def cmd_gor(args) -> Result:
    h = _h(args)
    v, c = _tri(hvec.is_gorenstein_hvector(h))
    return Result(v, c, {"codim": h[1] if len(h) > 1 else 0}, plain=[f"Gorenstein: {v}"])


def cmd_hvector(args) -> Result:
    m = _module(args)
    h = invsys.hvector_of_module(m)
    return Result("ok", EXIT_OK, {"hvector": list(h), "generators": len(m)}, plain=[_csv(h)])


def cmd_ann(args) -> Result:
    m = _module(args)
    _need(args, "d")
    if args.d < 0:
        raise UsageError("--d must be non-negative")
    basis = invsys.annihilator_component(m, args.d)
    forms = [str(f) for f in basis]
    return Result("ok", EXIT_OK, {"degree": args.d, "dim": len(forms), "basis": forms},
                  plain=[f"dim I_{args.d} = {len(forms)}"] + forms)


def cmd_socle(args) -> Result:
    m = _module(args)
    h, s = invsys.module_profile(m)
    s2 = invsys.socle_vector_via_ideal(m)
    if s != s2:
        raise RuntimeError(f"socle mismatch: module side {s}, ideal side {s2}")
    e = len(h) - 1
    level = all(x == 0 for x in s[:e])
    return Result("ok", EXIT_OK, {"hvector": list(h), "socle": list(s), "level": level, "type": sum(s)},
                  plain=[f"h: {_csv(h)}", f"socle: {_csv(s)}", f"level: {'Yes' if level else 'No'}"])


def cmd_decompose2(args) -> Result:
    h = _h(args)
    pairs = hvec.two_part_decompositions(h)
    rows = [{"g": list(p.g), "tail": list(p.tail), "g_verdict": p.g_verdict.value} for p in pairs]
    v, c = _yes(bool(pairs))
    return Result(v, c, {"count": len(rows), "pairs": rows},
                  plain=[f"{_csv(p.g)} + {_csv(p.tail)}  [{p.g_verdict.value}]" for p in pairs] or ["none"])


def cmd_decompose3(args) -> Result:
    m = _module(args)
    if len(m) != 2:
        raise UsageError("decompose3 needs a module file with exactly two forms")
    f, g = m.generators
    try:
        d = invsys.three_part_decomposition(f, g)
    except ValueError as exc:
        raise UsageError(str(exc))
    trace = {"h": list(d.h), "h_prime": list(d.h_prime), "h_double": list(d.h_double),
             "h_triple": list(d.h_triple), "h_f": list(d.h_f), "h_g": list(d.h_g)}
    return Result("ok", EXIT_OK, trace, plain=[f"{k}: {_csv(v)}" for k, v in trace.items()])


_SCREENS: dict[str, Callable] = {
    "decide": level2.decide,
    "cor22": lambda h, seed=0: level2.screen_cor22(h),
    "thm23": lambda h, seed=0: level2.screen_thm23(h),
    "thm29": level2.thm29_check,
}


def _cert_result(args, cert: level2.Certificate, name: str) -> Result:
    path = None
    if cert.witness is not None:
        path = _write_witness(args, name, cert.witness, f"{cert.stage} witness")
    code = {level2.Verdict.LEVEL: EXIT_OK, level2.Verdict.NOT_LEVEL: EXIT_NO,
            level2.Verdict.UNKNOWN: EXIT_UNKNOWN}[cert.verdict]
    arts = {"witness_file": path} if path else {}
    return Result(cert.verdict.value, code, {"stage": cert.stage, **cert.trace}, arts,
                  plain=cert.to_text(path).rstrip("\n").splitlines())


def cmd_level2(args) -> Result:
    h = _h(args)
    try:
        cert = _SCREENS[args.screen](h, seed=args.seed)
    except ValueError as exc:
        raise UsageError(str(exc))
    return _cert_result(args, cert, f"level2_{'-'.join(map(str, h))}.txt")


def cmd_enumerate(args) -> Result:
    _need(args, "r", "e")
    if args.census:
        rows = []
        plain = []
        for e in range(2, args.e + 1):
            row = level2.census(args.r, e, args.seed)
            rows.append({"e": e, "total": row.total, "level": len(row.members),
                         "not_level_leaves": row.leaf_not_level, "not_level_pruned": row.pruned_not_level,
                         "pruned_reasons": row.pruned_reasons, "accounted": row.accounted == row.total})
            plain.append(f"e={e} total={row.total} level={len(row.members)} "
                         f"not_level={row.leaf_not_level + row.pruned_not_level}")
        return Result("ok", EXIT_OK, {"census": rows}, plain=plain)
    hs = level2.enumerate_rrr2(args.r, args.e, args.seed)
    return Result("ok", EXIT_OK, {"count": len(hs), "hvectors": [list(h) for h in hs]},
                  plain=[_csv(h) for h in hs])


def cmd_bounds(args) -> Result:
    reports = []
    if args.h is not None and args.u is not None:
        ib = level2.iarrobino_bound(parse_hvector(args.h), args.u)
        reports.append({"index": f"u={ib.u}", "delta_u": ib.delta_u, "guaranteed_entry": ib.guaranteed_entry})
    if args.r is not None:
        reports.append(bounds.a_range(args.r).to_dict())
        if args.a is not None and args.e is not None:
            reports.append(bounds.b_bound(args.r, args.a, args.e).to_dict())
            if args.i is not None:
                reports.append({"index": f"h_{args.e - args.i}",
                                "upper": bounds.entry_upper(args.r, args.a, args.e, args.i)})
    if not reports:
        raise UsageError("bounds needs --r (with optional --a --e --i) or --h with --u")
    return Result("ok", EXIT_OK, {"reports": reports},
                  plain=[json.dumps(r, sort_keys=True) for r in reports])


def cmd_maxh(args) -> Result:
    _need(args, "r", "a", "e")
    h, recipe = bounds.max_hvector(args.r, args.a, args.e)
    return Result("ok", EXIT_OK, {"hvector": list(h), "recipe": recipe.to_dict(), "quasi_compressed": True},
                  plain=[_csv(h)] + [b.describe() for b in recipe.blocks])


def cmd_witness(args) -> Result:
    if args.m is not None:
        _need(args, "r", "d")
        f = invsys.generic_power_sum(args.r, args.m, args.d, args.seed)
        m = invsys.InverseModule([f])
        h, s = invsys.module_profile(m)
        path = _write_witness(args, f"gor_r{args.r}_m{args.m}_d{args.d}.txt", m, f"h {_csv(h)}")
        return Result("Level", EXIT_OK, {"hvector": list(h), "socle": list(s)}, {"witness_file": path},
                      plain=[f"h: {_csv(h)}", f"socle: {_csv(s)}", f"witness: {path}"])
    _need(args, "r", "a", "e")
    h, _ = bounds.max_hvector(args.r, args.a, args.e)
    m = bounds.realize_max(args.r, args.a, args.e, args.seed)
    got, s = invsys.module_profile(m)
    path = _write_witness(args, f"maxh_r{args.r}_a{args.a}_e{args.e}.txt", m, f"h {_csv(got)}")
    ok = got == h and s == tuple([0] * args.e + [2])
    if not ok:
        raise RuntimeError("witness did not verify")
    return Result("Level", EXIT_OK, {"hvector": list(got), "socle": list(s)}, {"witness_file": path},
                  plain=[f"h: {_csv(got)}", f"socle: {_csv(s)}", f"witness: {path}"])


def cmd_pencil(args) -> Result:
    m = _module(args)
    if len(m) != 2:
        raise UsageError("pencil needs a module file with exactly two forms")
    pr = invsys.pencil_derivative_rank(*m.generators, seed=args.seed)
    samples = [{"point": f"[{a}:{b}]", "rank": rk} for (a, b), rk in pr.samples]
    return Result("ok", EXIT_OK, {"generic_rank": pr.generic_rank, "certified_max": pr.certified_max,
                                  "samples": samples},
                  plain=[f"generic rank: {pr.generic_rank}", f"certified max: {pr.certified_max}"]
                  + [f"{s['point']} -> {s['rank']}" for s in samples])


def cmd_betti(args) -> Result:
    if args.ideal is not None:
        gens = _read_forms(args.ideal, "ideal")
        if any(f.var != "x" for f in gens):
            raise ParseError("ideal files use the variables x1..xr")
        _need(args, "cap")
        table = betti.koszul_betti_of_ideal(gens, args.cap)
    elif args.module is not None:
        m = _module(args)
        table = betti.koszul_betti_of_module(m, args.cap)
    else:
        raise UsageError("betti needs --ideal or --module")
    ok, res = betti.functional_equation_check(table.hvector, table)
    trace = {"hvector": list(table.hvector), "entries": [[i, j, b] for (i, j), b in table.entries.items()],
             "socle": list(betti.socle_from_table(table)), "functional_equation": ok}
    return Result("ok", EXIT_OK, trace, plain=table.to_text().rstrip("\n").splitlines())


def cmd_diesel(args) -> Result:
    T = _h(args)
    par = betti.diesel_params(T)
    trace = {"k": par.k, "mu": par.mu, "forced_generators": {str(k): v for k, v in par.forced_generators.items()},
             "third_difference": list(par.d)}
    if args.q is None:
        return Result("ok", EXIT_OK, trace, plain=[f"k={par.k} mu={par.mu}",
                                                   f"third difference: {_csv(par.d)}"])
    if args.p is None:
        raise UsageError("diesel needs --p together with --q")
    q = sorted(parse_hvector_free(args.q))
    p = sorted(parse_hvector_free(args.p), reverse=True)
    ok, tr = betti.diesel_check(T, betti.GorensteinShape(tuple(q), tuple(p), len(T) - 1))
    trace.update(tr)
    v, c = _yes(ok)
    return Result(v, c, trace, plain=[f"{k}: {tr[k]}" for k in sorted(tr)])


def parse_hvector_free(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise ParseError(f"cannot parse integer list {text!r}")


def cmd_mfr_f1(args) -> Result:
    h = _h(args)
    opts = betti.thm44_first_module(h)
    return Result("ok", EXIT_OK, {"first_modules": opts}, plain=["{" + _csv(o) + "}" for o in opts])


def cmd_gotzmann(args) -> Result:
    _need(args, "r", "d", "n", "m")
    v, c = _yes(betti.gotzmann_check(args.r, args.d, args.n, args.m))
    return Result(v, c, {"codim": args.r, "degree": args.d, "dim_v": args.n, "dim_r1v": args.m},
                  plain=[f"Gotzmann: {v}"])


COMMANDS = {
    "expand": cmd_expand, "oseq": cmd_oseq, "si": cmd_si, "gor": cmd_gor, "hvector": cmd_hvector,
    "ann": cmd_ann, "socle": cmd_socle, "decompose2": cmd_decompose2, "decompose3": cmd_decompose3,
    "level2": cmd_level2, "enumerate": cmd_enumerate, "bounds": cmd_bounds, "maxh": cmd_maxh,
    "witness": cmd_witness, "pencil": cmd_pencil, "betti": cmd_betti, "diesel": cmd_diesel,
    "mfr-f1": cmd_mfr_f1, "gotzmann": cmd_gotzmann,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="levelalg", description="Level and Gorenstein h-vectors via inverse systems.")
    p.add_argument("subcommand", choices=sorted(COMMANDS))
    p.add_argument("--h", help="h-vector, comma separated")
    for name in ("r", "a", "e", "i", "n", "m", "d", "u", "cap"):
        p.add_argument(f"--{name}", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--module", help="file of generators in y1..yr, one form per line")
    p.add_argument("--ideal", help="file of ideal generators in x1..xr, one form per line")
    p.add_argument("--format", choices=("json", "plain"), default="json")
    p.add_argument("--q", help="diesel: generator degrees, comma separated")
    p.add_argument("--p", help="diesel: first-syzygy degrees, comma separated")
    p.add_argument("--screen", choices=sorted(_SCREENS), default="decide", help="level2: which procedure to run")
    p.add_argument("--census", action="store_true", help="enumerate: classify every O-sequence of the shape")
    p.add_argument("--witness-dir", default="witnesses")
    return p


def _inputs(args) -> dict:
    skip = {"subcommand", "format"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip and v not in (None, False)}


def _emit(out, fmt, sub, inputs, res: Result):
    if fmt == "json":
        rec = {"subcommand": sub, "inputs": inputs, "verdict": res.verdict,
               "trace": res.trace, "artifacts": res.artifacts}
        out.write(json.dumps(rec, sort_keys=True, default=str) + "\n")
    else:
        out.write(f"{sub}: {res.verdict}\n")
        for line in res.plain:
            out.write(line + "\n")


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    argv = sys.argv[1:] if argv is None else argv
    fmt = "plain" if "--format=plain" in argv or ("--format" in argv and "plain" in argv) else "json"
    sub = argv[0] if argv else None
    try:
        args = build_parser().parse_args(argv)
        fmt, sub = args.format, args.subcommand
        res = COMMANDS[sub](args)
        code = res.code
        _emit(out, fmt, sub, _inputs(args), res)
        return code
    except UsageError as exc:
        res, code = Result("error", EXIT_USAGE, {"error": str(exc), "kind": "usage"}), EXIT_USAGE
    except ParseError as exc:
        res, code = Result("error", EXIT_PARSE, {"error": str(exc), "kind": "parse"}), EXIT_PARSE
    except bounds.HypothesisError as exc:
        res, code = Result("Unknown", EXIT_UNKNOWN, {"reason": str(exc), "kind": "hypothesis not met"}), EXIT_UNKNOWN
    except invsys.GenericityError as exc:
        res, code = Result("error", EXIT_INTERNAL, {"error": str(exc), "kind": "genericity"}), EXIT_INTERNAL
    except ValueError as exc:
        res, code = Result("error", EXIT_USAGE, {"error": str(exc), "kind": "usage"}), EXIT_USAGE
    except Exception as exc:  # noqa: BLE001
        res, code = Result("error", EXIT_INTERNAL, {"error": f"{type(exc).__name__}: {exc}", "kind": "internal"}), EXIT_INTERNAL
    res.plain = [res.trace.get("error") or res.trace.get("reason", "")]
    _emit(out, fmt, sub, {"argv": argv}, res)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
