"""``middlelevels`` command line.

Exit codes: 0 success, 1 failed verification, 2 usage error, 3 resource bound.
"""

from __future__ import annotations

import argparse
import json
import sys
from contextlib import contextmanager

from . import germs as G
from . import hamilton as H
from . import lexical as L
from . import midlevels as M
from . import treecodec as T
from .verification import VERIFY_LIMIT, check_invariants, check_tables

EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_BOUND = 3


class UsageError(Exception):
    pass


@contextmanager
def _output(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w") as fh:
            yield fh


def _fmt_germ(a) -> str:
    return G.format_germ(a)


def _positive_k(args, limit: int | None = None) -> int:
    if args.k is None or args.k < 1:
        raise UsageError("--k must be a positive integer")
    if limit is not None and args.k > limit and not args.unsafe_large:
        raise M.ResourceBoundError(f"k={args.k} exceeds the default bound {limit}; pass --unsafe-large")
    return args.k


# ---------------------------------------------------------------- commands


def cmd_germs(args, out) -> int:
    if args.rgs and args.count is not None:
        for s in G.rgs_sequence(args.count):
            out.write(s + "\n")
        return 0
    k = _positive_k(args, 20)
    if args.count_only:
        out.write(f"{G.catalan(k)}\n")
        return 0
    if args.tree:
        out.write(G.germ_tree(k) + "\n")
        return 0
    rows = G.enumerate_germs(k)
    if args.count is not None:
        rows = rows[: args.count]
    if args.format == "csv":
        out.write("m,germ,rgs\n")
    for m, a in enumerate(rows):
        text = G.to_rgs(a) if args.rgs else _fmt_germ(a)
        if args.format == "csv":
            out.write(f"{m},{_fmt_germ(a)},{G.to_rgs(a)}\n")
        elif args.format == "jsonl":
            out.write(json.dumps({"m": m, "germ": _fmt_germ(a), "rgs": G.to_rgs(a)}) + "\n")
        else:
            out.write(f"{m:>4} {text}\n")
    return 0


def cmd_encode(args, out) -> int:
    text = args.germ
    k = args.k if args.k else len(text) + 1
    try:
        a = G.parse_germ(text, k)
    except G.GermError as exc:
        raise UsageError(f"invalid germ: {exc}") from None
    code = T.castle(a)
    if args.format == "dot":
        out.write(T.tree_of_code(code).to_dot())
        return 0
    rec = {
        "germ": _fmt_germ(a),
        "k": k,
        "code": T.format_code(code),
        "theta": T.theta(a),
        "hat_theta": T.format_subscripted(T.hat_theta(a)),
        "aleph": T.aleph(T.theta(a)),
    }
    if args.format == "jsonl":
        out.write(json.dumps(rec) + "\n")
    else:
        for key, val in rec.items():
            out.write(f"{key:<10}{val}\n")
    return 0


def cmd_decode(args, out) -> int:
    try:
        code = T.parse_code(args.code)
        trace = T.uncastle_trace(code)
    except T.CodeError as exc:
        raise UsageError(f"invalid tree code: {exc}") from None
    a = trace[0][1]
    if args.format == "dot":
        out.write(T.tree_of_code(code).to_dot())
    elif args.format == "jsonl":
        out.write(json.dumps({"code": args.code, "germ": _fmt_germ(a),
                              "trace": [[T.format_code(c), _fmt_germ(g)] for c, g in trace]}) + "\n")
    else:
        out.write(_fmt_germ(a) + "\n")
        if args.verify:
            for c, g in trace:
                out.write(f"  {T.format_code(c)}  {_fmt_germ(g)}\n")
    return 0


def cmd_graph(args, out) -> int:
    k = _positive_k(args)
    unsafe = args.unsafe_large
    if args.which == "mk":
        g = L.one_factorization(k, unsafe=unsafe)
        fmt = lambda w: M.word_to_str(w, 2 * k + 1)  # noqa: E731
    elif args.which == "mkpi":
        g = M.build_mk_pi(k, unsafe=unsafe)
        fmt = str
    else:
        g = L.colored_rk(k, unsafe=unsafe)
        fmt = _fmt_germ
    fmt_choice = "dot" if args.dot else args.format
    if fmt_choice == "dot":
        out.write(g.to_dot(fmt))
    elif fmt_choice == "csv":
        out.write(g.adjacency_csv(fmt))
    elif fmt_choice == "jsonl":
        for a, b, c in g.edges:
            out.write(json.dumps({"a": fmt(a), "b": fmt(b), "color": c}) + "\n")
    else:
        loops = sum(1 for a, b, _ in g.edges if a == b)
        out.write(f"{g.name}: {len(g.vertices)} vertices, {len(g.edges) - loops} edges, {loops} loops\n")
    return 0


def cmd_cat(args, out) -> int:
    k = _positive_k(args, 12)
    if k < 2:
        raise UsageError("adjacency tables start at k = 2")
    t = L.cat_table(k)
    if args.format == "csv":
        out.write(t.to_csv())
    elif args.format == "jsonl":
        for rec in t.to_records():
            out.write(json.dumps(rec) + "\n")
    else:
        out.write(t.to_text())
    return 0


def cmd_seq(args, out) -> int:
    if args.count is None or args.count < 1:
        raise UsageError("--count must be positive")
    which = "s1" if args.s1 or args.name == "s1" else "s0"
    vals = L.s0_sequence(args.count) if which == "s0" else L.s1_sequence(args.count)
    if args.blocks:
        out.write("; ".join(" ".join(map(str, b)) for b in L.sequence_blocks(vals)) + "\n")
    elif args.format == "text" and args.inline:
        out.write(" ".join(map(str, vals)) + "\n")
    else:
        for v in vals:
            out.write(f"{v}\n")
    return 0


def cmd_hamilton(args, out) -> int:
    k = _positive_k(args, H.HAMILTON_LIMIT)
    res = H.build_hamilton(k, unsafe=args.unsafe_large, jobs=args.jobs)
    if args.format == "dot":
        out.write(res.digraph.to_dot(res.chosen))
        return 0
    n = 2 * k + 1
    for w in res.cycle + res.cycle[:1]:
        out.write(M.word_to_str(w, n) + "\n")
    if args.verify:
        if args.out not in (None, "-"):
            out.flush()
            kk, seq = H.read_certificate(args.out)
        else:
            kk, seq = k, res.cycle
        cert = H.verify_hamilton(kk, seq)
        print(f"certificate accepted: k={cert.k}, length {cert.length}", file=sys.stderr)
    return 0


def cmd_verify(args, out) -> int:
    failures = []
    ran = False
    if args.tables:
        failures += check_tables()
        out.write(f"tables: {'ok' if not failures else 'FAILED'}\n")
        ran = True
    if args.cert:
        try:
            k, seq = H.read_certificate(args.cert)
            cert = H.verify_hamilton(k, seq)
            out.write(f"certificate: ok (k={cert.k}, length {cert.length})\n")
        except H.HamiltonError as exc:
            out.write(f"certificate: FAILED: {exc}\n")
            return EXIT_FAIL
        ran = True
    if args.k is not None or not ran:
        top = _positive_k(args, VERIFY_LIMIT) if args.k is not None else VERIFY_LIMIT
        ks = range(1, top + 1)
        if args.jobs > 1:
            from concurrent.futures import ProcessPoolExecutor

            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                results = list(pool.map(check_invariants, ks))
        else:
            results = [check_invariants(k) for k in ks]
        for k, fails in zip(ks, results):
            out.write(f"k={k}: {'ok' if not fails else f'{len(fails)} failures'}\n")
            failures += fails
    for f in failures:
        out.write(f"  {f}\n")
    return EXIT_FAIL if failures else 0


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="middlelevels", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, formats=("text", "csv", "jsonl")):
        sp.add_argument("--k", type=int)
        sp.add_argument("--format", choices=formats, default="text")
        sp.add_argument("--out", help="write to this file instead of stdout")
        sp.add_argument("--jobs", type=int, default=1)
        sp.add_argument("--unsafe-large", action="store_true", help="lift the default size bounds")
        return sp

    sp = common(sub.add_parser("germs", help="list k-germs"))
    sp.add_argument("--rgs", action="store_true", help="print stripped RGS form")
    sp.add_argument("--count", type=int)
    sp.add_argument("--count-only", action="store_true")
    sp.add_argument("--tree", action="store_true", help="print the germ tree")
    sp.set_defaults(func=cmd_germs)

    sp = common(sub.add_parser("encode", help="germ -> tree code, theta, aleph"), ("text", "jsonl", "dot"))
    sp.add_argument("germ")
    sp.set_defaults(func=cmd_encode)

    sp = common(sub.add_parser("decode", help="tree code -> germ"), ("text", "jsonl", "dot"))
    sp.add_argument("code")
    sp.add_argument("--verify", action="store_true", help="also print the uncastling trace")
    sp.set_defaults(func=cmd_decode)

    sp = common(sub.add_parser("graph", help="export M_k, M_k/pi or R_k"), ("text", "csv", "jsonl", "dot"))
    sp.add_argument("--which", choices=("mk", "mkpi", "rk"), default="mk")
    sp.add_argument("--dot", action="store_true")
    sp.set_defaults(func=cmd_graph)

    sp = common(sub.add_parser("cat", help="coloured adjacency table"))
    sp.set_defaults(func=cmd_cat)

    sp = common(sub.add_parser("seq", help="the S0 / S1 sequences"))
    sp.add_argument("name", nargs="?", choices=("s0", "s1"))
    sp.add_argument("--s0", action="store_true")
    sp.add_argument("--s1", action="store_true")
    sp.add_argument("--count", type=int)
    sp.add_argument("--blocks", action="store_true", help="separate Catalan blocks with ';'")
    sp.add_argument("--inline", action="store_true", help="one line, space separated")
    sp.set_defaults(func=cmd_seq)

    sp = common(sub.add_parser("hamilton", help="build a Hamilton cycle certificate"), ("text", "dot"))
    sp.add_argument("--verify", action="store_true")
    sp.set_defaults(func=cmd_hamilton)

    sp = common(sub.add_parser("verify", help="golden tables and invariant sweeps"))
    sp.add_argument("--tables", action="store_true")
    sp.add_argument("--cert", help="verify a Hamilton certificate file")
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        with _output(getattr(args, "out", None)) as out:
            return args.func(args, out)
    except UsageError as exc:
        print(f"middlelevels: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except M.ResourceBoundError as exc:
        print(f"middlelevels: resource bound: {exc}", file=sys.stderr)
        return EXIT_BOUND
    except (H.HamiltonError,) as exc:
        print(f"middlelevels: verification failed: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
