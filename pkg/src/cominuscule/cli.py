"""Command-line entry point.  Exit status: 0 pass, 1 verification failure,
2 usage error, 3 budget exceeded."""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from . import cluster, nobody, oracle, plucker
from .expansion import default_k, expand_minor, expand_plucker, minor_sequences
from .minuscule import plucker_diagram
from .plucker import Report
from .rootdata import RootDataError, cartan_type, fixed_words, inverse_word, parse_word
from .subduction import IterationLimit, SubductionError, subduce

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _k(args) -> int:
    return default_k(cartan_type(args.type)) if args.k is None else args.k


def _emit(args, text: str, data=None) -> None:
    if args.format == "json" and data is not None:
        print(json.dumps(data, indent=1, sort_keys=True))
    else:
        print(text)


def _report(args, rep: Report) -> int:
    _emit(args, rep.render(), rep.to_json())
    return EXIT_OK if rep.ok else EXIT_FAIL


def _word(args, text: str | None):
    """A word given as digits or comma list, or one of the named words."""
    ct = cartan_type(args.type)
    fw = fixed_words(ct, _k(args))
    named = {"wP": fw.wP, "wPinv": inverse_word(fw.wP), "w0": fw.w0, "e": ()}
    if text is None:
        return named["wPinv"]
    return named[text] if text in named else parse_word(text)


# ------------------------------------------------------------------ commands


def cmd_diagram(args) -> int:
    d = plucker_diagram(cartan_type(args.type), _k(args))
    lines = [f"{len(d)} vertices, {len(d.edges)} edges"]
    for v, lab in enumerate(d.labels):
        lines.append(f"{lab}\t{' '.join(map(str, d.weights[v]))}")
    _emit(args, "\n".join(lines), d.to_json())
    return EXIT_OK


def cmd_expand_plucker(args) -> int:
    word = parse_word(args.word) if args.word else None
    p = expand_plucker(args.type, _k(args), args.label, word=word)
    _emit(args, p.pretty(), p.to_json())
    return EXIT_OK


def cmd_expand_minor(args) -> int:
    ct = cartan_type(args.type)
    w = _word(args, args.word)
    if args.sequences:
        seqs = minor_sequences(ct, args.i, w, k=_k(args))
        text = "\n".join(f"{''.join(map(str, s))}\t{p.pretty()}" for s, p in sorted(seqs.items()))
        _emit(args, f"{len(seqs)} contributing sequences\n{text}",
              {"count": len(seqs), "sequences": {",".join(map(str, s)): p.to_json() for s, p in seqs.items()}})
        return EXIT_OK
    p = expand_minor(ct, args.i, w, transposed=args.transposed, k=_k(args))
    _emit(args, p.pretty(), p.to_json())
    return EXIT_OK


def cmd_subduce(args) -> int:
    ct = cartan_type(args.type)
    k = _k(args)
    if args.position is not None:
        target = cluster.seed_minor(ct, k, cluster.initial_seed(ct, k).by_position(args.position))
    elif args.minor is not None:
        target = expand_minor(ct, args.minor, _word(args, args.word), transposed=True, k=k)
    else:
        raise UsageError("give --position or --minor")
    res = subduce(ct, k, target, limit=args.limit, order=args.order, degree=args.degree)
    lines = [f"step {n}: min term {s.min_term} coeff {s.coeff} -> {s.multiplier:+d} {s.product()}" for n, s in enumerate(res.steps, 1)]
    lines.append(f"= {res.expression}")
    data = {
        "expression": str(res.expression),
        "steps": [{"min_term": str(s.min_term), "coeff": s.coeff, "labels": [str(x) for x in s.labels], "multiplier": s.multiplier} for s in res.steps],
    }
    _emit(args, "\n".join(lines), data)
    return EXIT_OK


def cmd_verify_potential(args) -> int:
    return _report(args, plucker.verify_superpotential(args.type, args.k, include_deep=args.tier == "deep"))


def cmd_verify_relations(args) -> int:
    rep = plucker.verify_relations(args.type, args.k)
    if args.minors:
        rep.items.extend(plucker.verify_minor_identities(args.type, transposed=True).items)
    return _report(args, rep)


def _verify_chunk(job):
    ctname, k, positions, corrected = job
    return cluster.verify_cluster_expressions(ctname, k, positions=positions, corrected=corrected).items


def cmd_cluster_seed(args) -> int:
    ct = cartan_type(args.type)
    seed = cluster.initial_seed(ct, args.k)
    if not args.verify:
        lines = [f"exchangeable: {sorted(cluster.exchangeable_indices(ct, seed.k))}"]
        lines += [("frozen  " if v.frozen else "mutable ") + str(v) for v in seed.variables]
        _emit(args, "\n".join(lines), seed.to_json())
        return EXIT_OK
    positions = [v.position for v in seed.variables if v.name]
    chunks = [(str(ct), seed.k, positions[i :: args.jobs], args.corrected) for i in range(args.jobs)]
    rep = Report(f"seed expressions {ct}/P{seed.k}")
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            parts = list(pool.map(_verify_chunk, chunks))
    else:
        parts = [_verify_chunk(chunks[0])]
    order = {str(v): n for n, v in enumerate(seed.variables)}
    rep.items = sorted((x for part in parts for x in part), key=lambda x: order[x.name])
    return _report(args, rep)


def cmd_quiver(args) -> int:
    build = cluster.build_gls_quiver if args.kind == "gls" else cluster.build_cmp_quiver
    q = build(args.type, args.k)
    if args.compare:
        return _report(args, cluster.compare_quiver(q, cluster.fixture_arrows(args.type, args.kind)))
    if args.format == "dot":
        print(q.to_dot())
    elif args.format == "json":
        print(json.dumps(q.to_json(), indent=1))
    else:
        print("\n".join(f"{a} -> {b}" for a, b in sorted(q.labelled_arrows())))
    return EXIT_OK


def cmd_nobody(args) -> int:
    ct = cartan_type(args.type)
    k = _k(args)
    word = nobody.commuted_word(ct, k) if args.commuted else None
    table = nobody.plucker_valuation_table(ct, k, word=word)
    if args.valuations or not (args.volume or args.fvector or args.lattice or args.compare):
        if args.format == "csv":
            print("label,valuation")
            for lab, v in table.items():
                print(f"{lab},{v}")
        else:
            _emit(args, "\n".join(f"{lab}\t{v}" for lab, v in table.items()), {str(l): str(v) for l, v in table.items()})
    status = EXIT_OK
    if args.compare:
        rep = Report(f"valuations {ct} against the shipped table")
        ref = nobody.tabulated_valuations(ct)
        for lab, v in table.items():
            rep.add(f"nu({lab}) = {v}", ref.get(str(lab)) == v.digits(), "" if ref.get(str(lab)) == v.digits() else f"table {ref.get(str(lab))}")
        print(rep.render())
        status = max(status, EXIT_OK if rep.ok else EXIT_FAIL)
    if args.volume or args.fvector or args.lattice:
        if ct.rank >= 7 and args.tier != "deep":
            raise UsageError(f"hull computations for {ct} run in the deep tier (--tier deep)")
        P = nobody.convex_hull([v.exps for v in table.values()], budget=args.budget)
        if args.volume:
            print(f"dim={P.dim} volume={P.volume}")
        if args.fvector:
            print("f-vector=" + ",".join(map(str, nobody.f_vector(P, budget=args.budget))))
        if args.lattice:
            pts = nobody.zero_one_lattice_points(P, budget=args.budget)
            only = sorted(pts) == sorted(P.points)
            print(f"0/1 points={len(pts)} vertices={len(P.points)} only-vertices={'yes' if only else 'no'}")
            status = max(status, EXIT_OK if only else EXIT_FAIL)
    return status


def cmd_oracle_typea(args) -> int:
    return _report(args, oracle.run_typea())


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--type", default="E6", help="Cartan type, e.g. E6, E7, A3")
    common.add_argument("--k", type=int, default=None, help="index of the maximal parabolic")
    common.add_argument("--tier", choices=("fast", "deep"), default="fast")
    common.add_argument("--format", choices=("text", "json", "csv", "dot"), default="text")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--budget", type=int, default=None, help="cap on simplices, faces or search nodes")

    parser = argparse.ArgumentParser(prog="cominuscule", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("diagram", parents=[common]).set_defaults(fn=cmd_diagram)

    p = sub.add_parser("expand-plucker", parents=[common])
    p.add_argument("--label", required=True)
    p.add_argument("--word", help="alternative reduced word for wP")
    p.set_defaults(fn=cmd_expand_plucker)

    p = sub.add_parser("expand-minor", parents=[common])
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--word", help="digits, comma list, or wP / wPinv / w0 / e (default wPinv)")
    p.add_argument("--transposed", action="store_true")
    p.add_argument("--sequences", action="store_true", help="split by contributing letter sequence")
    p.set_defaults(fn=cmd_expand_minor)

    p = sub.add_parser("subduce", parents=[common])
    p.add_argument("--position", type=int, help="seed position whose minor is subduced")
    p.add_argument("--minor", type=int, help="fundamental index of Delta(varpi_i, w varpi_i)")
    p.add_argument("--word")
    p.add_argument("--limit", type=int, default=None)
    p.add_argument("--order", choices=("deglex", "degrevlex"), default="deglex")
    p.add_argument("--degree", type=int, default=None, help="pad monomials with p0 to this degree")
    p.set_defaults(fn=cmd_subduce)

    sub.add_parser("verify-potential", parents=[common]).set_defaults(fn=cmd_verify_potential)

    p = sub.add_parser("verify-relations", parents=[common])
    p.add_argument("--minors", action="store_true", help="also check the minor identities")
    p.set_defaults(fn=cmd_verify_relations)

    p = sub.add_parser("cluster-seed", parents=[common])
    p.add_argument("--verify", action="store_true")
    p.add_argument("--corrected", action="store_true", help="use errata for misprinted expressions")
    p.set_defaults(fn=cmd_cluster_seed)

    p = sub.add_parser("quiver", parents=[common])
    p.add_argument("--kind", choices=("gls", "cmp"), default="gls")
    p.add_argument("--compare", action="store_true", help="compare with the drawn quiver")
    p.set_defaults(fn=cmd_quiver)

    p = sub.add_parser("nobody", parents=[common])
    p.add_argument("--valuations", action="store_true")
    p.add_argument("--compare", action="store_true", help="compare valuations with the shipped table")
    p.add_argument("--volume", action="store_true")
    p.add_argument("--fvector", action="store_true")
    p.add_argument("--lattice", action="store_true")
    p.add_argument("--commuted", action="store_true", help="E7 only: use the commuted wP word")
    p.set_defaults(fn=cmd_nobody)

    sub.add_parser("oracle-typea", parents=[common]).set_defaults(fn=cmd_oracle_typea)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.jobs < 1:
        parser.error("--jobs must be positive")
    try:
        return args.fn(args)
    except (nobody.BudgetExceeded, IterationLimit) as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except SubductionError as exc:
        print(f"subduction failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (UsageError, RootDataError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
