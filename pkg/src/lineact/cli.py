"""Command-line entry point: ``lineact <realize|family|analyze|suspension|plot>``.

Exit codes: 0 success, 2 input error, 3 mathematical inconsistency,
4 inconclusive at the requested depth.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import analysis, families, lamination, plot, preorders, realization, suspension
from .plmap import PLMap, fmt_q
from .rep import MarkedGroup, RelatorError, Representation, Word

EXIT_OK, EXIT_INPUT, EXIT_INCONSISTENT, EXIT_INCONCLUSIVE = 0, 2, 3, 4
DEFAULT_SEED = 20240601


class InputError(ValueError):
    pass


def _q(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"not a rational number: {text!r}") from None


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def _emit(args, text: str, payload: dict):
    body = json.dumps(_jsonable(payload), indent=2, sort_keys=True) + "\n" if args.format == "json" else text
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(body)
    else:
        sys.stdout.write(body)


def _write(path: str, text: str):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


# ---------------------------------------------------------------------------
# preorder spec files


def parse_preorder_spec(text: str):
    """Returns ``(group, preorder, normalizer)``.

    Format::

        preorder/1
        generators a b
        relator a b a^-1 b^-1          (any number)
        normal-form free|abelian
        order lex a b [collapse K]     or   order induced + a rep/1 block
    """
    lines = [l for l in text.splitlines() if l.strip() and not l.lstrip().startswith("#")]
    if not lines or lines[0].strip() != "preorder/1":
        raise InputError("preorder spec must start with 'preorder/1'")
    names, rel, nf, order = None, [], "free", None
    i = 1
    while i < len(lines):
        parts = lines[i].split()
        key = parts[0]
        if key == "generators":
            names = parts[1:]
        elif key == "relator":
            rel.append(" ".join(parts[1:]))
        elif key == "normal-form":
            nf = parts[1] if len(parts) > 1 else ""
        elif key == "order":
            order = parts[1:]
            if order[:1] == ["induced"]:
                rep_text = "\n".join(lines[i + 1:])
                break
        else:
            raise InputError(f"unexpected line {lines[i]!r}")
        i += 1
    if not names:
        raise InputError("missing 'generators' line")
    if nf not in ("free", "abelian"):
        raise InputError(f"unknown normal form {nf!r}")
    if not order:
        raise InputError("missing 'order' line")
    try:
        group = MarkedGroup(names, [Word.parse(r, names) for r in rel])
    except ValueError as exc:
        raise InputError(str(exc)) from None
    norm = preorders.abelian_normal_form(len(names)) if nf == "abelian" else preorders.free_normal_form
    if order[0] == "lex":
        spec = order[1:]
        collapse = 0
        if "collapse" in spec:
            k = spec.index("collapse")
            collapse = int(spec[k + 1])
            spec = spec[:k]
        try:
            prio = [names.index(n) for n in spec]
        except ValueError:
            raise InputError(f"unknown generator in priority {spec}") from None
        pre = preorders.lexicographic_preorder(len(names), prio, collapse)
    elif order[0] == "induced":
        try:
            rep = Representation.loads(rep_text)
        except (ValueError, KeyError, StopIteration) as exc:
            raise InputError(f"bad rep block: {exc}") from None
        if rep.group.names != group.names:
            raise InputError("rep generators differ from spec generators")
        # the spec's relators must hold in the supplied action (RelatorError -> exit 3)
        rep = Representation(group, rep.images, window=rep.window)
        pre = preorders.induced_preorder(rep)
        pre.normalizer = norm
    else:
        raise InputError(f"unknown order kind {order[0]!r}")
    return group, pre, norm


# ---------------------------------------------------------------------------
# commands


def cmd_realize(args) -> int:
    group, pre, norm = parse_preorder_spec(_read(args.spec))
    if args.n < 1:
        raise InputError("--n must be >= 1")
    enum = preorders.Enumeration(group, norm)
    table = realization.iota(pre, enum, args.n)
    problems = realization.check_dyadic_dichotomy(table)
    problems += [p for p in pre.sanity_check(enum.prefix(args.n), seed=args.seed) if "trivial" not in p]
    text = table.export()
    payload = {"rows": [[i, w.format(group.names), v] for i, (w, v) in enumerate(zip(table.words, table.values))],
               "dichotomy_violations": problems}
    _emit(args, text, payload)
    if args.svg:
        items = []
        if args.n >= 2:
            try:
                real = realization.realize_generators(table, group, norm)
                items += [plot.GraphItem(n, f) for n, f in zip(group.names, real.rep.images)]
            except ValueError:
                pass
        items.append(plot.PointsItem("iota", list(table.values)))
        lo, hi = min(table.values), max(table.values)
        if lo == hi:
            lo, hi = lo - 1, hi + 1
        _write(args.svg, plot.render_svg(plot.PlotSpec((lo, hi), items)))
    return EXIT_INCONSISTENT if problems else EXIT_OK


def _window(args):
    lo, hi = _q(args.window[0]), _q(args.window[1])
    if not lo < hi:
        raise InputError("window must satisfy lo < hi")
    return lo, hi


def cmd_family(args) -> int:
    kind = args.kind
    items = []
    if kind == "f2":
        if not args.omega:
            raise InputError("--omega is required for f2")
        try:
            om = families.OmegaWord.periodic(args.omega)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        win = _window(args)
        rep = families.f2_family(om, win)
        text = rep.dumps()
        payload = {"family": "f2", "omega": args.omega, "window": list(win),
                   "signs": families.sign_pattern(rep.images[0], range(int(2 * win[0]), int(2 * win[1])))}
        items = [plot.GraphItem("g_omega", rep.images[0], shade=True), plot.GraphItem("h", rep.images[1])]
    elif kind == "bs":
        if args.m is None or args.n is None:
            raise InputError("--m and --n are required for bs")
        if args.s is None:
            rep = families.bs_affine(args.m, args.n)
        else:
            psi0 = families.bs_default_endpoint(args.m, args.n)
            psi1 = PLMap.affine(Fraction(args.n, args.m))
            rep = families.bs_path(args.m, args.n, _q(args.s), psi0, psi1, _window(args))
        text = rep.dumps()
        payload = {"family": "bs", "m": args.m, "n": args.n, "s": args.s}
        win = _window(args)
        items = [plot.GraphItem("a", rep.images[0]), plot.GraphItem("b", rep.images[1])]
    elif kind == "brin-navas":
        bn = families.default_brin_navas()
        text = bn.rep().dumps()
        sup = [bn.support_of(k) for k in range(5)]
        payload = {"family": "brin-navas", "supports": [list(s) for s in sup]}
        win = _window(args)
        items = [plot.LeavesItem("supp w_k", sup)]
    elif kind == "dyadic-seq":
        if args.n is None or args.n < 1:
            raise InputError("--n >= 1 is required for dyadic-seq")
        f = families.dyadic_sequence(args.n)
        text = f.dumps()
        payload = {"family": "dyadic-seq", "n": args.n, "breakpoints": list(f.breakpoints),
                   "value_at_0": f(0)}
        win = (Fraction(-1, 4), Fraction(1, 4))
        items = [plot.GraphItem(f"f_{args.n}", f, shade=True)]
    else:  # pragma: no cover - argparse restricts choices
        raise InputError(kind)
    _emit(args, text, payload)
    if args.svg:
        _write(args.svg, plot.render_svg(plot.PlotSpec(win, items)))
    return EXIT_OK


def _load_rep(path: str) -> Representation:
    try:
        return Representation.loads(_read(path))
    except RelatorError:
        raise
    except (ValueError, KeyError, StopIteration) as exc:
        raise InputError(f"bad representation file {path}: {exc}") from None


def cmd_analyze(args) -> int:
    kind = args.kind
    if kind == "f2-conjugacy":
        if not (args.omega1 and args.omega2):
            raise InputError("--omega1 and --omega2 are required")
        w1, w2 = families.OmegaWord.periodic(args.omega1), families.OmegaWord.periodic(args.omega2)
        related, wits = analysis.f2_semiconjugacy(w1, w2, args.depth)
        oracle = families.shift_orbit_equal(w1, w2)
        lines = [f"omega1 {args.omega1}", f"omega2 {args.omega2}", f"depth {args.depth}"]
        rows = []
        for k, w in enumerate(wits):
            if w.passed:
                lines.append(f"shift {k}: PASS ({len(w.table)} tabled points)")
                rows.append({"shift": k, "passed": True})
            else:
                (u, i), (v, j) = w.violation
                names = families.F2.names
                desc = (f"{u.format(names)} @ {w.basepoints[i][0]} vs {v.format(names)} @ {w.basepoints[j][0]}")
                lines.append(f"shift {k}: violation at depth {w.depth}: {desc}")
                rows.append({"shift": k, "passed": False, "depth": w.depth, "violation": desc})
        lines.append(f"verdict: {'related' if related else 'not related'}; shift oracle: {'related' if oracle else 'not related'}")
        _emit(args, "\n".join(lines) + "\n", {"related": related, "oracle": oracle, "shifts": rows})
        return EXIT_OK if related == oracle else EXIT_INCONSISTENT
    rep = _load_rep(args.rep) if args.rep else None
    if rep is None:
        raise InputError("--rep is required")
    names = rep.group.names
    if kind == "conrad":
        w = Word.parse(args.word or "", names)
        nu = _parse_density(args.density)
        try:
            kap = analysis.scaling_cocycle(rep, nu, w)
            tau = analysis.conrad_tau(rep, nu, w) if all(
                analysis.scaling_cocycle(rep, nu, s) == 1 for s in rep.group.gens()) else None
        except analysis.InvarianceError as exc:
            _emit(args, f"invariance check failed: {exc}\n", {"error": str(exc)})
            return EXIT_INCONSISTENT
        aff = analysis.affine_tau(rep, nu, w)
        text = f"word {w.format(names)}\nkappa {kap}\n" + (f"tau {tau}\n" if tau is not None else f"affine_tau {aff}\n")
        _emit(args, text, {"word": w.format(names), "kappa": kap, "tau": tau, "affine_tau": aff})
        return EXIT_OK
    if kind == "wandering":
        if not args.interval:
            raise InputError("--interval is required")
        I = lamination.interval(_q(args.interval[0]), _q(args.interval[1]))
        res = lamination.irreducible_wandering_check(rep, I, args.max_len)
        lines = [f"interval {I}", f"depth {res.depth}", f"status {res.status}"]
        if res.word is not None:
            lines.append(f"violating word {res.word.format(names)}")
        lines.append(f"stabilizers {len(res.stabilizers)}")
        _emit(args, "\n".join(lines) + "\n", {"status": res.status, "depth": res.depth,
                                              "word": None if res.word is None else res.word.format(names),
                                              "stabilizers": [w.format(names) for w in res.stabilizers]})
        if res.status in ("PASS", "FAIL"):
            return EXIT_OK
        return EXIT_INCONCLUSIVE
    if kind == "semiconjugacy":
        if not args.rep2:
            raise InputError("--rep2 is required")
        rep2 = _load_rep(args.rep2)
        bp = (_q(args.basepoints[0]), _q(args.basepoints[1])) if args.basepoints else (0, 0)
        w = analysis.semiconjugacy_search(rep, rep2, args.depth, None, bp)
        if w.passed:
            text = f"PASS: {len(w.table)} tabled points, order compatible at depth {args.depth}\n"
            payload = {"passed": True, "table": [list(p) for p in w.table]}
        else:
            (u, _), (v, _) = w.violation
            text = (f"violation: {u.format(names)} and {v.format(names)} "
                    f"({w.values[0]}, {w.values[1]}) vs ({w.values[2]}, {w.values[3]})\n")
            payload = {"passed": False, "violation": [u.format(names), v.format(names)], "values": list(w.values)}
        _emit(args, text, payload)
        return EXIT_OK
    if kind == "centralizing":
        if not args.translations:
            raise InputError("--translations is required")
        win = _window(args)
        maps = [PLMap.translation(_q(t)) for t in args.translations]
        from .rep import enumerate_words
        words = list(enumerate_words(rep.group.rank, args.max_len))
        rep_ = analysis.almost_centralizing_test(rep, maps, words, win)
        text = "k d_k e_k\n" + "\n".join(rep_.lines()) + "\n"
        payload = {"rows": [{"k": k, "d_k": d, "e_k": e} for k, d, e in rep_.rows],
                   "verdict": rep_.verdict, "threshold": rep_.threshold}
        _emit(args, text, payload)
        return EXIT_INCONCLUSIVE if rep_.verdict.startswith("inconclusive") else EXIT_OK
    if kind == "witness":
        win = _window(args)
        from .rep import witness_irreducible
        res = witness_irreducible(rep, win, args.max_len)
        if res is None:
            _emit(args, f"no witness up to length {args.max_len}\n", {"witness": None})
            return EXIT_INCONCLUSIVE
        g, h = res
        _emit(args, f"right {g.format(names)}\nleft {h.format(names)}\n",
              {"right": g.format(names), "left": h.format(names)})
        return EXIT_OK
    raise InputError(kind)  # pragma: no cover


def _parse_density(text):
    """``"b1 b2 ; d0 d1 d2"`` or empty for Lebesgue."""
    if not text:
        return analysis.StepMeasure.lebesgue()
    if ";" not in text:
        raise InputError("density must look like 'b1 b2 ; d0 d1 d2'")
    bps, dens = text.split(";")
    try:
        return analysis.StepMeasure([_q(b) for b in bps.split()], [_q(d) for d in dens.split()])
    except ValueError as exc:
        raise InputError(str(exc)) from None


def cmd_suspension(args) -> int:
    if args.max_n < 1:
        raise InputError("--max-n must be >= 1")
    win = _window(args)
    base = suspension.CantorPoint.parse(args.base) if args.base else suspension.DEFAULT_BASE
    y = suspension.SuspensionPoint.make(base, _q(args.time))
    rep = suspension.recurrence_experiment(y, suspension.DEFAULT_WORDS, win, args.max_n)
    header = [f"base {base}", f"time {y.time}", f"window {win[0]} {win[1]}",
              "words " + ", ".join(suspension.DEFAULT_WORDS)]
    text = "\n".join(header + rep.lines()) + "\n"
    payload = {"base": str(base), "time": y.time, "window": list(win),
               "rows": [{"n": n, "t_n": t, "distance": d} for n, t, d in rep.rows],
               "threshold": rep.threshold}
    _emit(args, text, payload)
    if args.svg:
        srep = suspension.SuspensionRep(y)
        items = [plot.GraphItem(f"rho_y({w})", srep.image(suspension.SUSPENSION_GROUP.word(w), win))
                 for w in ("f", "A", "B")]
        _write(args.svg, plot.render_svg(plot.PlotSpec(win, items)))
    return EXIT_OK


def cmd_plot(args) -> int:
    spec = plot.parse_plot_spec(_read(args.spec))
    svg = plot.render_svg(spec)
    if args.output:
        _write(args.output, svg)
    else:
        sys.stdout.write(svg)
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lineact", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, output=True):
        sp.add_argument("--format", choices=("text", "json"), default="text")
        sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
        if output:
            sp.add_argument("--output")

    r = sub.add_parser("realize", help="dyadic realization table of a preorder")
    r.add_argument("--spec", required=True)
    r.add_argument("--n", type=int, required=True)
    r.add_argument("--svg")
    common(r)
    r.set_defaults(func=cmd_realize)

    f = sub.add_parser("family", help="emit a concrete family")
    f.add_argument("kind", choices=("f2", "bs", "brin-navas", "dyadic-seq"))
    f.add_argument("--omega")
    f.add_argument("--m", type=int)
    f.add_argument("--n", type=int)
    f.add_argument("--s")
    f.add_argument("--window", nargs=2, default=("-4", "4"), metavar=("LO", "HI"))
    f.add_argument("--svg")
    common(f)
    f.set_defaults(func=cmd_family)

    a = sub.add_parser("analyze", help="finite-scale analyses")
    a.add_argument("kind", choices=("f2-conjugacy", "conrad", "wandering", "semiconjugacy", "witness",
                                    "centralizing"))
    a.add_argument("--translations", nargs="+", metavar="T", help="conjugators T_t for the centralizing test")
    a.add_argument("--rep")
    a.add_argument("--rep2")
    a.add_argument("--omega1")
    a.add_argument("--omega2")
    a.add_argument("--word")
    a.add_argument("--density")
    a.add_argument("--interval", nargs=2, metavar=("A", "B"))
    a.add_argument("--basepoints", nargs=2, metavar=("X", "Y"))
    a.add_argument("--window", nargs=2, default=("-10", "10"), metavar=("LO", "HI"))
    a.add_argument("--depth", type=int, default=6)
    a.add_argument("--max-len", type=int, default=4)
    common(a)
    a.set_defaults(func=cmd_analyze)

    s = sub.add_parser("suspension", help="odometer suspension experiments")
    s.add_argument("action", choices=("demo",))
    s.add_argument("--window", nargs=2, default=("-3", "3"), metavar=("LO", "HI"))
    s.add_argument("--max-n", type=int, default=8)
    s.add_argument("--base", help="Cantor point as pre(period), default (01)")
    s.add_argument("--time", default="0")
    s.add_argument("--svg")
    common(s)
    s.set_defaults(func=cmd_suspension)

    pl = sub.add_parser("plot", help="render a plot spec to SVG")
    pl.add_argument("--spec", required=True)
    pl.add_argument("--output")
    pl.set_defaults(func=cmd_plot, format="text")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (InputError, families.UnsupportedError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (realization.InconsistentOracle, RelatorError) as exc:
        print(f"inconsistency: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except suspension.OrbitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
