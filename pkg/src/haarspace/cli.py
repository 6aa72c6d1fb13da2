"""Command-line entry point: ``haarspace <group> <command> [options]``.

Exit codes: 0 success, 1 domain error (singular Gram matrix, enumeration
budget or size limit), 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

import numpy as np

from . import __version__, FORMAT_VERSION
from .categories import (
    CategoryId, QuantumFamily, SizeLimitError, axioms_check, enumerate_category, parse_s,
    uniformity_violations,
)
from .integration import MomentSpec, SpaceSpec, chi_moment, qg_moment, relation_trace_value, space_moment
from .laws import RegimeSpec, convergence_table, default_word, limit_moment
from .oracle import (
    BudgetExceeded, GaussianRational, exact_space_moment_h, haar_orthogonal, haar_unitary,
    invariance_mc, mc_space_moment,
)
from .partitions import Partition, join_count
from .weingarten import SingularGram, generalized_weingarten, gram, weingarten


class UsageError(Exception):
    pass


def decimal(x) -> str:
    return f"{float(x):.15g}"


def exact(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def number(x) -> dict:
    if isinstance(x, GaussianRational):
        return {"re": number(x.re), "im": number(x.im)}
    if isinstance(x, (complex, np.complexfloating)):
        return {"re": number(float(x.real)), "im": number(float(x.imag))}
    if isinstance(x, (float, np.floating)):
        x = Fraction(float(x))
    return {"exact": exact(x), "decimal": decimal(x)}


def indices(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise UsageError(f"bad index list {text!r}") from None


def fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad rational {text!r}") from None


# ---------------------------------------------------------------- output


class Output:
    def __init__(self, args, config: dict):
        self.args = args
        self.config = config

    def emit(self, result, rows=None, columns=None, pretty=None) -> str:
        fmt = self.args.format
        if fmt == "json":
            doc = {"format_version": FORMAT_VERSION, "config": self.config, "result": result}
            return json.dumps(doc, indent=2, sort_keys=False) + "\n"
        if fmt == "csv":
            buf = io.StringIO()
            for k, v in self.config.items():
                buf.write(f"# {k}={v}\n")
            if rows is None:
                rows = [flatten(result)]
                columns = list(rows[0])
            w = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n", extrasaction="ignore")
            w.writeheader()
            for r in rows:
                w.writerow(r)
            return buf.getvalue()
        header = "# " + " ".join(f"{k}={v}" for k, v in self.config.items()) + "\n"
        return header + (pretty if pretty is not None else json.dumps(result, indent=2)) + "\n"


def flatten(d, prefix=""):
    out = {}
    for k, v in d.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            out.update(flatten(v, key + "_"))
        elif isinstance(v, list):
            out[key] = json.dumps(v, separators=(",", ":"))
        else:
            out[key] = v
    return out


# ---------------------------------------------------------------- helpers


def family_of(args) -> QuantumFamily:
    return QuantumFamily.from_token(args.family, args.s, args.q)


def category_of(args) -> CategoryId:
    if getattr(args, "cat", None):
        return CategoryId.from_name(args.cat, args.s)
    if getattr(args, "family", None):
        return family_of(args).category
    raise UsageError("give --cat or --family")


def word_of(args) -> str:
    if getattr(args, "word", None) is not None:
        return args.word
    if getattr(args, "legs", None) is not None:
        return "w" * args.legs
    raise UsageError("give --word or --legs")


def space_of(args) -> SpaceSpec:
    return SpaceSpec(family_of(args), args.L, args.M, args.N)


def moment_of(args, spec: SpaceSpec) -> MomentSpec:
    rows, cols = indices(args.rows), indices(args.cols)
    if not len(args.word) == len(rows) == len(cols):
        raise UsageError("--word, --rows and --cols must have equal length")
    if any(not 1 <= i <= spec.M for i in rows):
        raise UsageError(f"--rows entries must lie in 1..M={spec.M}")
    if any(not 1 <= j <= spec.N for j in cols):
        raise UsageError(f"--cols entries must lie in 1..N={spec.N}")
    return MomentSpec(args.word, rows, cols)


def base_config(args, **extra) -> dict:
    cfg = {"command": f"{args.group} {args.cmd}", "version": __version__, "format": args.format}
    cfg.update({k: str(v) for k, v in extra.items()})
    return cfg


# ---------------------------------------------------------------- commands


def cmd_categories_enumerate(args):
    cat = category_of(args)
    word = word_of(args)
    parts = [Partition(p.blocks, word) for p in enumerate_category(cat, word)]
    o = Output(args, base_config(args, category=cat, word=word))
    rows = [{"index": k, "blocks": p.to_text(), "colors": p.lower, "n_blocks": len(p.blocks)}
            for k, p in enumerate(parts)]
    result = {"count": len(parts), "partitions": [p.to_dict() for p in parts]}
    pretty = f"{len(parts)} partitions\n" + "\n".join(f"{r['blocks']} {r['colors']}" for r in rows)
    return o.emit(result, rows, ["index", "blocks", "colors", "n_blocks"], pretty)


def cmd_categories_check(args):
    cat = category_of(args)
    axiom_legs = args.axiom_legs if args.axiom_legs is not None else min(args.max_legs, 6)
    bad = uniformity_violations(cat, args.max_legs)
    rep = axioms_check(cat, axiom_legs)
    o = Output(args, base_config(args, category=cat, max_legs=args.max_legs, axiom_legs=axiom_legs))
    result = {"uniform": not bad, "uniformity_violations": len(bad),
              "axioms": rep.passed, "axiom_violations": len(rep.violations),
              "checked": rep.checked}
    pretty = (f"uniformity (block removal, <= {args.max_legs} legs): {'pass' if not bad else 'FAIL'}\n"
              f"category axioms (<= {axiom_legs} legs): {'pass' if rep.passed else 'FAIL'} {rep.checked}")
    return o.emit(result, pretty=pretty)


def _matrix_rows(index, value):
    rows = []
    for a, p in enumerate(index):
        for b, q in enumerate(index):
            v = value(a, b)
            rows.append({"row": a, "col": b, "pi": p.to_text(), "sigma": q.to_text(),
                         "exact": exact(v), "decimal": decimal(v)})
    return rows


def cmd_weingarten(args):
    cat = category_of(args)
    word = word_of(args)
    cfg = base_config(args, category=cat, word=word, n=args.n, generalized=args.generalized)
    o = Output(args, cfg)
    if args.cmd == "gram":
        g = gram(cat, word, args.n)
        index, value = g.index, (lambda a, b: g.entries[a][b])
    else:
        w = generalized_weingarten(cat, word, args.n) if args.generalized else weingarten(cat, word, args.n)
        index, value = w.index, (lambda a, b: w[a, b])
    rows = _matrix_rows(index, value)
    result = {"index": [p.to_text() for p in index],
              "entries": [[number(value(a, b)) for b in range(len(index))] for a in range(len(index))]}
    width = max([len(exact(value(a, b))) for a in range(len(index)) for b in range(len(index))] + [1])
    lines = [p.to_text() for p in index]
    lines += [" ".join(str(Fraction(value(a, b))).rjust(width) for b in range(len(index)))
              for a in range(len(index))]
    return o.emit(result, rows, ["row", "col", "pi", "sigma", "exact", "decimal"], "\n".join(lines))


def cmd_integrate_moment(args):
    spec = space_of(args)
    m = moment_of(args, spec)
    v = space_moment(spec, m, args.generalized)
    o = Output(args, base_config(args, family=spec.family, L=spec.L, M=spec.M, N=spec.N, word=m.word,
                                 rows=args.rows, cols=args.cols, generalized=args.generalized))
    return o.emit({"moment": number(v)}, pretty=str(v))


def cmd_integrate_chi(args):
    spec = space_of(args)
    word = args.word if args.word is not None else default_word(spec.family, args.order)
    v = chi_moment(spec, args.K, word, args.generalized)
    o = Output(args, base_config(args, family=spec.family, L=spec.L, M=spec.M, N=spec.N, K=args.K,
                                 word=word, generalized=args.generalized))
    return o.emit({"moment": number(v)}, pretty=str(v))


def cmd_integrate_relation(args):
    spec = space_of(args)
    try:
        p = Partition.parse(args.pi, args.word)
        r = Partition.parse(args.sigma, args.word)
    except (ValueError, json.JSONDecodeError) as e:
        raise UsageError(f"bad partition: {e}") from None
    v = relation_trace_value(spec, p, r, args.word, args.generalized)
    target = spec.L ** join_count(p, r)
    o = Output(args, base_config(args, family=spec.family, L=spec.L, M=spec.M, N=spec.N,
                                 word=args.word, pi=p.to_text(), sigma=r.to_text()))
    result = {"holds": v == target, "value": number(v), "expected": number(target)}
    return o.emit(result, pretty=f"{v} == {target}: {v == target}")


def cmd_laws_limit(args):
    cat = category_of(args)
    word = word_of(args)
    t = fraction(args.t)
    v = limit_moment(cat, word, t)
    o = Output(args, base_config(args, category=cat, word=word, t=t))
    return o.emit({"limit": number(v)}, pretty=str(v))


def cmd_laws_table(args):
    f = family_of(args)
    regime = RegimeSpec(fraction(args.kappa), fraction(args.lam), fraction(args.mu), indices(args.ns))
    orders = [w for w in args.words.split(",")] if args.words else list(range(1, args.max_order + 1))
    table = convergence_table(f, regime, orders, args.generalized)
    o = Output(args, base_config(args, family=f, kappa=regime.kappa, lam=regime.lam, mu=regime.mu,
                                 ns=args.ns, orders=",".join(r.word for r in table[:len(orders)]),
                                 t=regime.t, generalized=args.generalized))
    rows, result, lines = [], [], []
    for r in table:
        rows.append({"N": r.N, "order": r.order,
                     "moment_exact": "" if r.moment is None else exact(r.moment),
                     "moment_decimal": "" if r.moment is None else decimal(r.moment),
                     "limit_exact": exact(r.limit),
                     "gap_decimal": "" if r.gap is None else decimal(r.gap)})
        result.append({"N": r.N, "order": r.order, "word": r.word,
                       "moment": None if r.moment is None else number(r.moment),
                       "limit": number(r.limit), "gap": None if r.gap is None else number(r.gap),
                       "error": r.error})
        gap = "singular" if r.gap is None else decimal(r.gap)
        mom = "-" if r.moment is None else str(r.moment)
        lines.append(f"N={r.N:<4} {r.word:<8} moment={mom:<24} limit={r.limit}  gap={gap}")
    cols = ["N", "order", "moment_exact", "moment_decimal", "limit_exact", "gap_decimal"]
    return o.emit(result, rows, cols, "\n".join(lines))


def cmd_oracle_exact(args):
    s = args.s_int
    spec = SpaceSpec(QuantumFamily("Hs", s), args.L, args.M, args.N)
    m = moment_of(args, spec)
    v = exact_space_moment_h(s, spec, m, args.budget)
    o = Output(args, base_config(args, s=s, L=args.L, M=args.M, N=args.N, word=m.word,
                                 rows=args.rows, cols=args.cols, budget=args.budget))
    return o.emit({"moment": number(v)}, pretty=str(v))


def _mc_spec(args):
    spec = space_of(args)
    if spec.family.name not in ("O", "U"):
        raise UsageError("Monte Carlo needs --family o or u")
    return spec


def cmd_oracle_mc(args):
    spec = _mc_spec(args)
    m = moment_of(args, spec)
    b = mc_space_moment(spec, m, args.count, args.seed, args.shards, args.threads)
    ref = space_moment(spec, m, generalized=True)
    o = Output(args, base_config(args, family=spec.family, L=spec.L, M=spec.M, N=spec.N, word=m.word,
                                 rows=args.rows, cols=args.cols, count=args.count, seed=args.seed,
                                 shards=args.shards, threads=args.threads, generator=b.generator))
    result = {"seed": b.seed, "count": b.count, "generator": b.generator,
              "mean": number(b.mean), "stderr": number(b.stderr), "weingarten": number(ref),
              "within_3se": bool(b.within(ref))}
    pretty = f"mean={complex(b.mean) if np.iscomplexobj(b.means) else float(b.mean):.6g} " \
             f"stderr={b.stderr:.3g} weingarten={ref} within 3 SE: {b.within(ref)}"
    return o.emit(result, pretty=pretty)


def cmd_oracle_invariance(args):
    spec = _mc_spec(args)
    m = moment_of(args, spec)
    rng = np.random.Generator(np.random.PCG64(args.rotation_seed))
    haar = haar_unitary if spec.family.name == "U" else haar_orthogonal
    a0, b0 = haar(spec.M, 1, rng)[0], haar(spec.N, 1, rng)[0]
    rot, plain = invariance_mc(spec, m, a0, b0, args.count, args.seed, args.shards, args.threads)
    combined = float(np.hypot(rot.stderr, plain.stderr))
    agree = bool(abs(rot.mean - plain.mean) <= 3 * combined)
    o = Output(args, base_config(args, family=spec.family, L=spec.L, M=spec.M, N=spec.N, word=m.word,
                                 rows=args.rows, cols=args.cols, count=args.count, seed=args.seed,
                                 rotation_seed=args.rotation_seed, shards=args.shards))
    result = {"rotated": {"mean": number(rot.mean), "stderr": number(rot.stderr)},
              "plain": {"mean": number(plain.mean), "stderr": number(plain.stderr)},
              "agree_3se": agree}
    pretty = f"rotated={rot.mean:.6g}±{rot.stderr:.2g} plain={plain.mean:.6g}±{plain.stderr:.2g} agree: {agree}"
    return o.emit(result, pretty=pretty)


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "pretty"), default="pretty")
    common.add_argument("--out", metavar="FILE")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=int, default=10 ** 7)
    common.add_argument("--threads", type=int,
                        default=int(os.environ.get("HAARSPACE_THREADS", "1")))

    def fam(p, required=True):
        p.add_argument("--family", required=required, help="o, o-bar, o+, u, u-bar, u+, h, h+, hs, hs+, k, k+")
        p.add_argument("--s", default=None, help="parameter s (even integer or inf)")
        p.add_argument("--q", type=int, default=0, choices=(0, 1, -1), help="twist; 0 = family default")

    def space(p):
        fam(p)
        for k in ("L", "M", "N"):
            p.add_argument(f"--{k}", type=int, required=True)
        p.add_argument("--generalized", action="store_true",
                       help="use a generalized inverse when a Gram matrix is singular")

    def moment(p, default=True):
        p.add_argument("--word", default="ww" if default else None, required=not default)
        p.add_argument("--rows", default="1,1" if default else None, required=not default)
        p.add_argument("--cols", default="1,1" if default else None, required=not default)

    ap = argparse.ArgumentParser(prog="haarspace", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"haarspace {__version__} (format {FORMAT_VERSION})")
    groups = ap.add_subparsers(dest="group", required=True)

    g = groups.add_parser("categories").add_subparsers(dest="cmd", required=True)
    p = g.add_parser("enumerate", parents=[common])
    p.add_argument("--cat", required=True)
    p.add_argument("--s", default=None)
    p.add_argument("--word")
    p.add_argument("--legs", type=int)
    p.set_defaults(func=cmd_categories_enumerate)
    p = g.add_parser("check", parents=[common])
    p.add_argument("--cat", required=True)
    p.add_argument("--s", default=None)
    p.add_argument("--max-legs", type=int, default=6)
    p.add_argument("--axiom-legs", type=int, default=None)
    p.set_defaults(func=cmd_categories_check)

    g = groups.add_parser("weingarten").add_subparsers(dest="cmd", required=True)
    for name in ("gram", "inv"):
        p = g.add_parser(name, parents=[common])
        p.add_argument("--cat")
        fam(p, required=False)
        p.add_argument("--word")
        p.add_argument("--legs", type=int)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--generalized", action="store_true")
        p.set_defaults(func=cmd_weingarten)

    g = groups.add_parser("integrate").add_subparsers(dest="cmd", required=True)
    p = g.add_parser("moment", parents=[common])
    space(p)
    moment(p, default=False)
    p.set_defaults(func=cmd_integrate_moment)
    p = g.add_parser("chi", parents=[common])
    space(p)
    p.add_argument("--K", type=int, required=True)
    p.add_argument("--order", type=int, default=2)
    p.add_argument("--word", default=None)
    p.set_defaults(func=cmd_integrate_chi)
    p = g.add_parser("relation-check", parents=[common])
    space(p)
    p.add_argument("--word", required=True)
    p.add_argument("--pi", required=True, help='e.g. "[[1,2]]"')
    p.add_argument("--sigma", required=True)
    p.set_defaults(func=cmd_integrate_relation)

    g = groups.add_parser("laws").add_subparsers(dest="cmd", required=True)
    p = g.add_parser("limit", parents=[common])
    p.add_argument("--cat")
    fam(p, required=False)
    p.add_argument("--word")
    p.add_argument("--legs", type=int)
    p.add_argument("--t", default="1")
    p.set_defaults(func=cmd_laws_limit)
    p = g.add_parser("table", parents=[common])
    fam(p)
    p.add_argument("--kappa", default="1")
    p.add_argument("--lambda", dest="lam", default="1")
    p.add_argument("--mu", default="1")
    p.add_argument("--ns", default="4,8,16,32")
    p.add_argument("--max-order", type=int, default=4)
    p.add_argument("--words", default=None, help="comma-separated colored words instead of --max-order")
    p.add_argument("--generalized", action="store_true")
    p.set_defaults(func=cmd_laws_table)

    g = groups.add_parser("oracle").add_subparsers(dest="cmd", required=True)
    p = g.add_parser("exact", parents=[common])
    p.add_argument("--s", dest="s_int", type=int, default=2)
    for k in ("L", "M", "N"):
        p.add_argument(f"--{k}", type=int, required=True)
    moment(p)
    p.set_defaults(func=cmd_oracle_exact)
    for name, func in (("mc", cmd_oracle_mc), ("invariance", cmd_oracle_invariance)):
        p = g.add_parser(name, parents=[common])
        space(p)
        moment(p)
        p.add_argument("--count", type=int, default=100000)
        p.add_argument("--shards", type=int, default=1)
        if name == "invariance":
            p.add_argument("--rotation-seed", type=int, default=1)
        p.set_defaults(func=func)
    return ap


def error_doc(kind: str, message: str, **extra) -> str:
    return json.dumps({"error": kind, "message": message, **extra}) + "\n"


def run(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    if getattr(args, "s", None) is not None and args.group != "oracle":
        try:
            args.s = parse_s(args.s)
        except ValueError:
            sys.stderr.write(error_doc("usage", f"bad --s {args.s!r}"))
            return 2
    try:
        text = args.func(args)
    except SingularGram as e:
        sys.stdout.write(error_doc("singular-gram", str(e), category=str(e.category), word=e.word, N=e.N))
        return 1
    except BudgetExceeded as e:
        sys.stdout.write(error_doc("budget", str(e)))
        return 1
    except SizeLimitError as e:
        sys.stdout.write(error_doc("size-limit", str(e)))
        return 1
    except (UsageError, ValueError) as e:
        sys.stderr.write(error_doc("usage", str(e)))
        return 2
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
