"""Command-line interface.

Every subcommand supports --selftest (runs the backing module checks and
exits) and --config FILE (key=value defaults; explicit flags win).  Exit
codes: 0 success, 1 usage error, 2 contract violation or failed check.

Search subcommands write a delimited records file and a JSON report, and
render the Omega histogram to PNG next to them unless --no-figure is given.
Thread counts never influence report bytes, only wall time; SATLAB_THREADS
caps whatever --threads requests.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import List, Optional, Sequence, Tuple

from . import arith, constants, intpoly, reports, search, varieties
from .errors import SatlabError

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CONTRACT = 2


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage by default; the interface reserves
    # 2 for contract violations
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _parse_int_list(text: str) -> Tuple[int, ...]:
    items = [p for p in text.replace(" ", "").split(",") if p]
    return tuple(int(p) for p in items)


def _parse_float_list(text: str) -> Tuple[float, ...]:
    items = [p for p in text.replace(" ", "").split(",") if p]
    return tuple(float(p) for p in items)


def _parse_box(text: str) -> search.BoxSpec:
    """lo:hi pairs separated by commas, e.g. '1:30,1:30'."""
    sides = []
    for part in text.replace(" ", "").split(","):
        lo, _, hi = part.partition(":")
        if not _:
            raise ValueError(f"box side {part!r} needs lo:hi")
        sides.append((float(lo), float(hi)))
    return search.BoxSpec(tuple(sides))


def _load_poly(spec: str) -> intpoly.IntPoly:
    if os.path.exists(spec):
        with open(spec, "r", encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = spec.replace(";", "\n")
    return intpoly.IntPoly.from_text(text)


def _load_model(spec: str) -> varieties.SkewCubicModel:
    if spec == "default":
        return varieties.default_model()
    with open(spec, "r", encoding="utf-8") as fh:
        return varieties.SkewCubicModel.from_text(fh.read())


def _threads(requested: int) -> int:
    cap = os.environ.get("SATLAB_THREADS")
    if cap:
        try:
            return max(1, min(requested, int(cap)))
        except ValueError:
            pass
    return max(1, requested)


def _apply_config(args: argparse.Namespace, argv: Sequence[str]) -> None:
    """Fill unset options from a key=value file; explicit flags win."""
    path = getattr(args, "config", None)
    if not path:
        return
    explicit = set()
    for tok in argv:
        if tok.startswith("--"):
            explicit.add(tok[2:].split("=", 1)[0].replace("-", "_"))
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise _usage_error(f"{path}:{lineno}: expected key=value")
            key, _, raw = line.partition("=")
            key = key.strip().replace("-", "_")
            raw = raw.strip()
            if not hasattr(args, key):
                raise _usage_error(f"{path}:{lineno}: unknown option {key!r}")
            if key in explicit:
                continue
            cur = getattr(args, key)
            if isinstance(cur, bool):
                val = raw.lower() in ("1", "true", "yes", "on")
            elif isinstance(cur, int) and not isinstance(cur, bool):
                val = int(raw)
            elif isinstance(cur, float):
                val = float(raw)
            else:
                val = raw
            setattr(args, key, val)


def _usage_error(message: str) -> SystemExit:
    print(f"satlab: error: {message}", file=sys.stderr)
    return SystemExit(EXIT_USAGE)


_SELFTEST_MODULES = {
    "factor": (arith,),
    "omega": (arith,),
    "fixed-divisor": (intpoly,),
    "sieve-modulus": (intpoly,),
    "bounds": (constants,),
    "sieve-const": (constants,),
    "elkies": (varieties,),
    "skew-check": (varieties,),
    "skew-normalize": (varieties,),
    "skew-search": (varieties, search),
    "fermat3-triples": (varieties,),
    "fermat3-search": (varieties, search),
    "approx": (search,),
    "report": (reports,),
}


def _run_selftest(command: str) -> int:
    ok = True
    for mod in _SELFTEST_MODULES[command]:
        for name, passed in mod.selftest():
            print(("PASS" if passed else "FAIL"), name)
            ok = ok and passed
    return EXIT_OK if ok else EXIT_CONTRACT


def _print_kv(key: str, value) -> None:
    print(f"{key} = {value}")


def _mpf_str(x, digits: int = 13) -> str:
    import mpmath
    return mpmath.nstr(x, digits)


# ---------------------------------------------------------------------------
# subcommand bodies


def _cmd_factor(args) -> int:
    fz = arith.factor(args.n, budget=args.budget, variant=args.variant)
    _print_kv("n", args.n)
    _print_kv("sign", fz.sign)
    parts = [f"{p}^{e}" if e > 1 else str(p) for p, e in sorted(fz.factors.items())]
    parts.extend(f"C{c}" for c in fz.cofactors)
    _print_kv("factors", " * ".join(parts) if parts else "1")
    _print_kv("complete", str(fz.complete).lower())
    if fz.complete and args.n != 0:
        _print_kv("omega", fz.omega())
        _print_kv("omega_distinct", len(fz.factors))
    return EXIT_OK


def _cmd_omega(args) -> int:
    if args.point is not None:
        coords = _parse_int_list(args.point)
        pt = arith.to_primitive(coords)
        _print_kv("point", "[" + ":".join(str(c) for c in pt.coords) + "]")
        om = arith.omega_projective(pt, budget=args.budget)
        _print_kv("omega", "inf" if om == arith.OMEGA_INFINITE else int(om))
    else:
        if args.n is None:
            raise _usage_error("omega needs N or --point")
        om = arith.omega(args.n, budget=args.budget)
        _print_kv("omega", "inf" if om == arith.OMEGA_INFINITE else int(om))
    return EXIT_OK


def _cmd_fixed_divisor(args) -> int:
    f = _load_poly(args.poly)
    fd = intpoly.fixed_divisor(f, grid_budget=args.grid_budget)
    _print_kv("fixed_divisor", fd.value)
    _print_kv("exact", str(fd.exact).lower())
    return EXIT_OK


def _cmd_sieve_modulus(args) -> int:
    f = _load_poly(args.poly)
    sm = intpoly.sieve_modulus(f)
    _print_kv("modulus", sm.modulus)
    _print_kv("residue", ",".join(str(r) for r in sm.residue))
    _print_kv("divisor", sm.divisor)
    return EXIT_OK


def _cmd_bounds(args) -> int:
    which = args.which
    if which in ("thm1.3", "thm3.1", "prop3.2"):
        if args.deg is None or args.height is None:
            raise _usage_error(f"{which} needs --deg and --height")
        b = constants.saturation_bounds(which, args.deg, args.height)
        _print_kv("selector", which)
        _print_kv("bound", _mpf_str(b.value))
        _print_kv("floor", b.integer_part)
    elif which in ("2.3", "2.4", "2.5", "2.6"):
        params = {}
        if which == "2.3":
            if args.a is None or args.b is None:
                raise _usage_error("2.3 needs --a and --b")
            params = {"a": args.a, "b": args.b}
        elif which == "2.4":
            if args.df is None or args.deg is None:
                raise _usage_error("2.4 needs --df and --deg")
            params = {"df": args.df, "deg": args.deg}
        else:
            if args.height is None or args.deg is None:
                raise _usage_error(f"{which} needs --height and --deg")
            params = {"height": args.height, "deg": args.deg}
        b = constants.lemma_bounds(which, **params)
        _print_kv("selector", which)
        _print_kv("ln_bound", _mpf_str(b.ln_value))
        if b.exact is not None:
            _print_kv("exact", b.exact)
    else:
        raise _usage_error(f"unknown selector {which!r}")
    return EXIT_OK


def _cmd_sieve_const(args) -> int:
    kappa = args.kappa
    if kappa not in (4, 6):
        raise _usage_error("kappa must be 4 or 6")
    beta = args.beta
    res = constants.minimize_shape(kappa, beta)
    used = beta if beta is not None else (
        constants.BETA4 if kappa == 4 else constants.beta6_reconstructed())
    _print_kv("kappa", kappa)
    _print_kv("beta", _mpf_str(used, 10))
    _print_kv("lambda_star", f"{res.lambda_star:.6f}")
    _print_kv("m_star", f"{res.m_star:.7f}")
    _print_kv("r", constants.admissible_r(res.m_star))
    return EXIT_OK


def _cmd_elkies(args) -> int:
    y = _parse_int_list(args.y)
    image = varieties.elkies_map(y)
    pt = arith.to_primitive(image)
    _print_kv("y", "(" + ", ".join(str(c) for c in y) + ")")
    _print_kv("image", "[" + ":".join(str(c) for c in image) + "]")
    _print_kv("point", "[" + ":".join(str(c) for c in pt.coords) + "]")
    om = arith.omega_projective(pt)
    _print_kv("omega", "inf" if om == arith.OMEGA_INFINITE else int(om))
    return EXIT_OK


def _cmd_skew_check(args) -> int:
    m = _load_model(args.model)
    rep = varieties.check_local_conditions(m, args.s, args.t)
    _print_kv("normalized", str(varieties.is_normalized(m)).lower())
    for name, ok in sorted(rep.checks.items()):
        print(f"check {name}: {'ok' if ok else 'FAIL'}")
    if rep.w0 is not None:
        _print_kv("w0", rep.w0)
    if rep.w1 is not None:
        _print_kv("w1", rep.w1)
    if rep.fiber is not None:
        for name, ok in sorted(rep.fiber["checks"].items()):
            print(f"fiber {name}: {'ok' if ok else 'FAIL'}")
        _print_kv("fiber_d_radical", rep.fiber["d_radical"])
    _print_kv("all_ok", str(rep.all_ok).lower())
    return EXIT_OK


def _cmd_skew_normalize(args) -> int:
    m = _load_model(args.model)
    norm = varieties.normalize_model(m)
    sys.stdout.write(norm.to_text())
    _print_kv("normalized", str(varieties.is_normalized(norm)).lower())
    return EXIT_OK


def _summary_lines(rep: search.SearchReport) -> None:
    _print_kv("kind", rep.kind)
    _print_kv("records", rep.summary["total"])
    _print_kv("min_omega", rep.summary["min_omega"])
    _print_kv("distinct_points", rep.summary["distinct_points"])
    _print_kv("distinct_fibers", rep.summary["distinct_fibers"])
    hist = " ".join(f"{k}:{c}" for k, c in rep.summary["histogram"])
    _print_kv("histogram", hist if hist else "-")
    for key in ("omega_threshold", "omega_threshold_stated",
                "omega_threshold_accounted", "omega_threshold_square_family"):
        if key in rep.summary:
            _print_kv(key, rep.summary[key])
    for fiber, mn in rep.summary.get("per_fiber_min_omega", []):
        _print_kv("fiber_min " + ",".join(str(x) for x in fiber), mn)


def _write_outputs(rep: search.SearchReport, out: Optional[str],
                   figure: bool) -> None:
    if out:
        paths = reports.write_report(rep, out, figure=figure)
        for k in sorted(paths):
            _print_kv("wrote_" + k, paths[k])


def _cmd_skew_search(args) -> int:
    m = _load_model(args.model)
    rep = search.skew_surface_search(
        m, args.strategy,
        uv_box=_parse_box(args.uv_box),
        fiber_budget=args.fiber_budget,
        st_bound=args.st_bound,
        omega_budget=args.omega_budget,
        factor_budget=args.factor_budget,
        threads=_threads(args.threads))
    _summary_lines(rep)
    _print_kv("square_discriminant_family",
              str(rep.summary["square_discriminant_family"]).lower())
    _write_outputs(rep, args.out, not args.no_figure)
    return EXIT_OK


def _cmd_fermat3_triples(args) -> int:
    shown = 0
    for trip in varieties.admissible_triples(args.max_primes):
        print(f"{trip.p1} {trip.p2} {trip.p3}")
        shown += 1
        if shown >= args.count:
            break
    _print_kv("count", shown)
    return EXIT_OK


def _cmd_fermat3_search(args) -> int:
    target = _parse_float_list(args.target) if args.target else None
    rep = search.threefold_search(
        triple_budget=args.triples,
        pair_budget=args.pairs,
        target=target,
        omega_budget=args.omega_budget,
        factor_budget=args.factor_budget,
        threads=_threads(args.threads))
    _summary_lines(rep)
    if "best_target_distance" in rep.summary:
        _print_kv("best_target_distance", rep.summary["best_target_distance"])
    _write_outputs(rep, args.out, not args.no_figure)
    return EXIT_OK


def _cmd_approx(args) -> int:
    target = _parse_float_list(args.target)
    schedule = _parse_float_list(args.schedule)
    if args.map == "elkies":
        vmap = search.elkies_variety()
    elif args.map == "skew":
        if not args.fiber:
            raise _usage_error("skew map needs --fiber s,t")
        s, t = _parse_int_list(args.fiber)
        vmap = search.skew_fiber_variety(_load_model(args.model), s, t)
    elif args.map == "fermat3":
        if not args.fiber:
            raise _usage_error("fermat3 map needs --fiber p1,p2,p3")
        p1, p2, p3 = _parse_int_list(args.fiber)
        vmap = search.threefold_variety(varieties.threefold_fiber(p1, p2, p3))
    else:
        raise _usage_error(f"unknown map {args.map!r}")
    rec = search.approximate_point(vmap, target, args.eps, schedule,
                                   pad=args.pad)
    _print_kv("point", "[" + ":".join(str(c) for c in rec.coords) + "]")
    _print_kv("params", ",".join(str(p) for p in rec.params))
    _print_kv("omega", rec.omega)
    _print_kv("distance", rec.extras["distance"])
    return EXIT_OK


def _cmd_report(args) -> int:
    rows = reports.load_records_tsv(args.infile)
    recs = [
        search.SearchRecord(
            point=arith.ProjectivePoint(tuple(r["coords"])),
            omega=r["omega"], height=r["height"], params=r["params"],
            fiber=r["fiber"])
        for r in rows
    ]
    rep = reports.records_report(recs, kind=args.kind)
    _summary_lines(rep)
    _write_outputs(rep, args.out, not args.no_figure)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser assembly


def _add_common(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--selftest", action="store_true",
                    help="run the backing module checks and exit")
    sp.add_argument("--config", metavar="FILE",
                    help="key=value defaults; explicit flags win")


def _add_search_common(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--omega-budget", type=int, default=None)
    sp.add_argument("--factor-budget", type=int,
                    default=arith.DEFAULT_FACTOR_BUDGET)
    sp.add_argument("--threads", type=int, default=1)
    sp.add_argument("--seed", type=int, default=0,
                    help="recorded for reproducibility; searches are "
                         "deterministic")
    sp.add_argument("--out", metavar="BASE",
                    help="write BASE.tsv, BASE.json and BASE.png")
    sp.add_argument("--no-figure", action="store_true",
                    help="skip the histogram image")


def build_parser() -> _Parser:
    ap = _Parser(prog="satlab",
                 description="almost-prime point searches on cubic families")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("factor", parents=[], help="factor an integer")
    sp.add_argument("n", type=int)
    sp.add_argument("--budget", type=int, default=arith.DEFAULT_FACTOR_BUDGET)
    sp.add_argument("--variant", type=int, default=0)
    _add_common(sp)
    sp.set_defaults(func=_cmd_factor)

    sp = sub.add_parser("omega", help="Omega of an integer or a point")
    sp.add_argument("n", type=int, nargs="?")
    sp.add_argument("--point", help="comma-separated coordinates")
    sp.add_argument("--budget", type=int, default=arith.DEFAULT_FACTOR_BUDGET)
    _add_common(sp)
    sp.set_defaults(func=_cmd_omega)

    sp = sub.add_parser("fixed-divisor",
                        help="gcd of a polynomial's values")
    sp.add_argument("--poly", required=True,
                    help="polynomial file or inline text ('; ' = newline)")
    sp.add_argument("--grid-budget", type=int, default=10_000_000)
    _add_common(sp)
    sp.set_defaults(func=_cmd_fixed_divisor)

    sp = sub.add_parser("sieve-modulus",
                        help="stable modulus for value factor patterns")
    sp.add_argument("--poly", required=True)
    _add_common(sp)
    sp.set_defaults(func=_cmd_sieve_modulus)

    sp = sub.add_parser("bounds", help="saturation number bounds")
    sp.add_argument("which",
                    help="thm1.3 | thm3.1 | prop3.2 | 2.3 | 2.4 | 2.5 | 2.6")
    sp.add_argument("--deg", type=int)
    sp.add_argument("--height", type=int)
    sp.add_argument("--a", type=int)
    sp.add_argument("--b", type=int)
    sp.add_argument("--df", type=int)
    _add_common(sp)
    sp.set_defaults(func=_cmd_bounds)

    sp = sub.add_parser("sieve-const",
                        help="weighted sieve shape minimization")
    sp.add_argument("--kappa", type=int, required=True)
    sp.add_argument("--beta", type=float, default=None)
    _add_common(sp)
    sp.set_defaults(func=_cmd_sieve_const)

    sp = sub.add_parser("elkies", help="image of a parameter triple")
    sp.add_argument("--y", required=True, help="comma-separated triple")
    _add_common(sp)
    sp.set_defaults(func=_cmd_elkies)

    sp = sub.add_parser("skew-check",
                        help="admissibility checks for a surface model")
    sp.add_argument("--model", default="default",
                    help="model file or 'default'")
    sp.add_argument("--s", type=int, default=None)
    sp.add_argument("--t", type=int, default=None)
    _add_common(sp)
    sp.set_defaults(func=_cmd_skew_check)

    sp = sub.add_parser("skew-normalize",
                        help="scale a surface model to the reduced form")
    sp.add_argument("--model", required=True)
    _add_common(sp)
    sp.set_defaults(func=_cmd_skew_normalize)

    sp = sub.add_parser("skew-search",
                        help="almost-prime points on a conic-bundle surface")
    sp.add_argument("--model", default="default")
    sp.add_argument("--strategy", choices=("prime-pairs", "split"),
                    default="prime-pairs")
    sp.add_argument("--uv-box", default="1:30,1:30",
                    help="lo:hi,lo:hi for the fiber parameters")
    sp.add_argument("--fiber-budget", type=int, default=8)
    sp.add_argument("--st-bound", type=int, default=6)
    _add_search_common(sp)
    _add_common(sp)
    sp.set_defaults(func=_cmd_skew_search)

    sp = sub.add_parser("fermat3-triples",
                        help="admissible prime triples for the threefold")
    sp.add_argument("--count", type=int, default=7)
    sp.add_argument("--max-primes", type=int, default=12)
    _add_common(sp)
    sp.set_defaults(func=_cmd_fermat3_triples)

    sp = sub.add_parser("fermat3-search",
                        help="almost-prime points on the quintuple-cube threefold")
    sp.add_argument("--triples", type=int, default=3)
    sp.add_argument("--pairs", type=int, default=20)
    sp.add_argument("--target", default=None,
                    help="comma-separated direction to annotate distances")
    _add_search_common(sp)
    _add_common(sp)
    sp.set_defaults(func=_cmd_fermat3_search)

    sp = sub.add_parser("approx",
                        help="integer point near a real direction")
    sp.add_argument("--map", choices=("elkies", "skew", "fermat3"),
                    default="elkies")
    sp.add_argument("--target", required=True)
    sp.add_argument("--eps", type=float, required=True)
    sp.add_argument("--schedule", default="8,16,32,64")
    sp.add_argument("--pad", type=int, default=2)
    sp.add_argument("--fiber", default=None)
    sp.add_argument("--model", default="default")
    _add_common(sp)
    sp.set_defaults(func=_cmd_approx)

    sp = sub.add_parser("report", help="summarize a records file")
    sp.add_argument("--in", dest="infile", required=True)
    sp.add_argument("--kind", default="records")
    sp.add_argument("--out", metavar="BASE")
    sp.add_argument("--no-figure", action="store_true")
    _add_common(sp)
    sp.set_defaults(func=_cmd_report)

    return ap


def main(argv: Optional[List[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
        if getattr(args, "selftest", False):
            return _run_selftest(args.command)
        _apply_config(args, argv)
        return args.func(args)
    except SystemExit as exc:
        code = exc.code
        if code is None:
            return EXIT_OK
        return code if isinstance(code, int) else EXIT_USAGE
    except SatlabError as exc:
        print(f"satlab: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CONTRACT
    except ValueError as exc:
        print(f"satlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
