"""Command-line front end.

Exit codes: 0 success, 1 a mathematical assertion failed, 2 parse error,
3 precondition violated (odd dimension, Jacobi failure, bad parameters).
"""

import argparse
import json
import os
import re
import sys
from fractions import Fraction

from . import corpus as corpus_mod
from .analysis import algebra_record, all_agree, analyze, check_expectations
from .exalg import ParseError, fmt_scalar
from .liealg import LieAlgebra, check_jacobi, parse_algebra_text, parse_salamon, split_families
from .pstruct import PreconditionError, Structure, neg_v_coframe, swap_coframe
from .torsion import classify, compose_classes, intrinsic_torsion, product

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_PRECOND = 0, 1, 2, 3


class Precondition(Exception):
    pass


def parse_params(text):
    if not text:
        return {}
    out = {}
    for item in text.split(","):
        key, sep, val = item.partition("=")
        if not sep:
            raise ParseError(f"expected name=value, got {item!r}", text.find(item), text)
        try:
            out[key.strip()] = Fraction(val.strip())
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad value {val!r}", text.find(item) + len(key) + 1, text) from None
    return out


def _table1_path(path):
    if os.path.exists(path):
        return path
    if os.path.basename(path) == "table1.alg":
        return None
    return path


def load_input(text, params=None, family=None):
    """Inline Salamon string, ``abelian[-d]``, or a file path; returns (algebra, coframe)."""
    m = re.fullmatch(r"abelian(?:-(\d+))?", text)
    if m:
        return LieAlgebra.abelian(int(m.group(1) or 2), text), None
    if os.path.exists(text) or text.endswith((".alg", ".txt")):
        if not os.path.exists(text) and os.path.basename(text) == "table1.alg":
            body = corpus_mod.table1_text()
        else:
            with open(text) as fh:
                body = fh.read()
        fams = split_families(body)
        if fams:
            if family is None:
                raise Precondition(f"{text} holds several families; pick one with --family")
            if str(family) not in fams:
                raise Precondition(f"no family {family} in {text}")
            body = fams[str(family)]
        af = parse_algebra_text(body, params)
        return af.algebra, af.coframe
    return parse_salamon(text), None


def _structure(L, coframe=None):
    if L.dim % 2:
        raise Precondition(f"odd dimension {L.dim}")
    rep = check_jacobi(L)
    if not rep.ok:
        raise Precondition(f"Jacobi identity fails: d(de^{rep.witness[0]}) = {rep.witness[1].to_text()}")
    return Structure(L, coframe, check=False)


def _read_matrix(path):
    with open(path) as fh:
        return [[Fraction(t) for t in line.replace(",", " ").split()]
                for line in fh if line.split("#", 1)[0].strip()]


def _apply_coframe_flag(L, coframe, flag):
    if not flag:
        return coframe
    n = L.dim // 2
    if flag == "neg-V":
        P = neg_v_coframe(n)
    elif flag == "swap":
        P = swap_coframe(n)
    elif flag.startswith("file:"):
        P = _read_matrix(flag[5:])
    else:
        raise Precondition(f"unknown coframe {flag!r}")
    if coframe is None:
        return P
    from .torsion import compose_coframes
    return compose_coframes(P, coframe)


# -- output ---------------------------------------------------------------------

def _print_record(rec, out):
    alg, tor, cur, agr = rec["algebra"], rec["torsion"], rec["curvature"], rec["agreement"]
    print(f"algebra     {alg['salamon']}  (dim {alg['dim']})", file=out)
    print(f"  nilpotent {alg.get('nilpotent')}  unimodular {alg.get('unimodular')}", file=out)
    print(f"class       {tor['class']}" + ("  (parakahler)" if tor["parakahler"] else ""), file=out)
    print(f"integrable  {tor['integrable']}", file=out)
    for name, text in tor["components"].items():
        if not text.endswith(":0"):
            print(f"  {name:5} {text}", file=out)
    print(f"flat {cur['flat']}  ricci_flat {cur['ricci_flat']}  einstein {cur['einstein']}  s {cur['s']}",
          file=out)
    print(f"  riemann {cur['riemann']}", file=out)
    print(f"  ricci   {cur['ricci']}", file=out)
    bad = [k for k, v in agr.items() if not v]
    print("agreement   " + ("all" if not bad else "FAILED: " + ", ".join(bad)), file=out)


def _emit(rec, args, out):
    if args.json:
        json.dump(rec, out, indent=2, sort_keys=True)
        out.write("\n")
    else:
        _print_record(rec, out)


# -- commands -------------------------------------------------------------------

def cmd_check(args, out):
    L, _ = load_input(args.input, parse_params(args.params), args.family)
    rec = algebra_record(L)
    if args.json:
        json.dump(rec, out, indent=2, sort_keys=True)
        out.write("\n")
    elif rec["jacobi"]:
        print(f"ok  {rec['salamon']}  nilpotent {rec['nilpotent']}  unimodular {rec['unimodular']}", file=out)
    else:
        w = rec["witness"]
        print(f"Jacobi identity fails: d(de^{w['index']}) = {w['d2']}", file=out)
    return EXIT_OK if rec["jacobi"] else EXIT_FAIL


def cmd_analyze(args, out):
    L, coframe = load_input(args.input, parse_params(args.params), args.family)
    if L.dim % 2:
        raise Precondition(f"odd dimension {L.dim}")
    coframe = _apply_coframe_flag(L, coframe, args.coframe)
    rec = analyze(_structure(L, coframe))
    _emit(rec, args, out)
    return EXIT_OK if all_agree(rec) else EXIT_FAIL


def _splittings(L, spec, limit):
    from .search import SplittingCandidate, enumerate_splittings

    if spec == "coords":
        return [SplittingCandidate.coords(L.dim)]
    if spec.startswith("file:"):
        return [SplittingCandidate.from_rows(_read_matrix(spec[5:]))]
    if spec.startswith("enum:"):
        return list(enumerate_splittings(L, int(spec[5:]), limit))
    raise Precondition(f"unknown splitting {spec!r}")


def _search_json(rep):
    return {
        "conditions": {k: v for k, v in rep.conditions.items() if isinstance(v, bool)},
        "outcome": rep.outcome,
        "F_space_basis": [f.to_text() for f in rep.F_space_basis],
        "nondegenerate_witness": rep.nondegenerate_witness.to_text() if rep.nondegenerate_witness else None,
        "coframe": [[fmt_scalar(x) for x in r] for r in rep.coframe] if rep.coframe else None,
        "verification": rep.verification,
    }


def cmd_search(args, out):
    from .search import run_search, verify_family

    params = p = {_alias(k): v for k, v in parse_params(args.params).items()}
    reports = []
    status = EXIT_OK
    if args.family is not None and os.path.basename(args.input) == "table1.alg":
        lam, mu, k = p.get("lambda", 1), p.get("mu", 1), p.get("k", 0)
        try:
            rec = verify_family(int(args.family), lam, mu, k)
        except ValueError as exc:
            raise Precondition(str(exc)) from None
        facts = rec["family"]["facts"]
        reports.append({"family": rec["family"], "record": rec})
        if not all(facts.values()) or not all_agree(rec):
            status = EXIT_FAIL
        if not args.json:
            print(f"family {args.family} ({', '.join(rec['family']['params'])}): "
                  + ", ".join(f"{k} {v}" for k, v in facts.items()), file=out)
    L, _ = load_input(args.input, params, args.family)
    if L.dim % 2:
        raise Precondition(f"odd dimension {L.dim}")
    _structure(L)
    found = 0
    for i, C in enumerate(_splittings(L, args.splitting, args.limit)):
        rep = run_search(L, C, bound=args.bound)
        reports.append({"candidate": i, "search": _search_json(rep)})
        if rep.outcome == "witness":
            found += 1
            v = rep.verification
            ok = set(v["torsion"]["flags"]) <= {"W1"} and v["curvature"]["ricci_flat"] and all_agree(v)
            if not ok:
                status = EXIT_FAIL
        if not args.json:
            cond = " ".join(f"{k}={v}" for k, v in rep.conditions.items() if k != "witness")
            print(f"candidate {i}: {cond} -> {rep.outcome}", file=out)
            if rep.nondegenerate_witness is not None:
                v = rep.verification
                print(f"  F = {rep.nondegenerate_witness.to_text()}  class {v['torsion']['class']}"
                      f"  ricci_flat {v['curvature']['ricci_flat']}  flat {v['curvature']['flat']}", file=out)
    if args.json:
        json.dump(reports, out, indent=2, sort_keys=True)
        out.write("\n")
    else:
        print(f"{len(reports)} report(s), {found} witness(es)", file=out)
    return status


def _alias(key):
    return {"λ": "lambda", "μ": "mu", "lam": "lambda"}.get(key, key)


def cmd_product(args, out):
    LA, cA = load_input(args.input_a)
    LB, cB = load_input(args.input_b)
    SA, SB = _structure(LA, cA), _structure(LB, cB)
    S = product(SA, SB)
    rec = analyze(S)
    expected = compose_classes(classify(intrinsic_torsion(SA)), classify(intrinsic_torsion(SB)))
    got = classify(intrinsic_torsion(S))
    rec["agreement"]["compose_classes"] = got.flags == expected.flags
    _emit(rec, args, out)
    return EXIT_OK if all_agree(rec) else EXIT_FAIL


def cmd_corpus(args, out):
    from .search import verify_family

    failures = 0
    results = []
    for e in corpus_mod.ENTRIES:
        rec = analyze(_structure(parse_salamon(e.salamon, e.name)))
        bad = check_expectations(rec, e.expect)
        ok = not bad and all_agree(rec)
        failures += not ok
        results.append({"name": e.name, "ok": ok, "failed": bad})
        if not args.json:
            print(f"{'PASS' if ok else 'FAIL'}  {e.name:24} {rec['torsion']['class']:12} "
                  + (f"failed: {', '.join(bad)}" if bad else ""), file=out)
    for row in range(1, 6):
        for lam, mu, k in corpus_mod.TABLE1_SAMPLES:
            rec = verify_family(row, lam, mu, k)
            facts = rec["family"]["facts"]
            ok = all(facts.values()) and all_agree(rec)
            failures += not ok
            name = f"table1-{row}({lam},{mu},{k})"
            results.append({"name": name, "ok": ok, "failed": [f for f, v in facts.items() if not v]})
            if not args.json:
                print(f"{'PASS' if ok else 'FAIL'}  {name:24} {rec['torsion']['class']}", file=out)
    seed = args.seed if args.seed is not None else corpus_mod.seed_from_env()
    if args.random:
        bad = 0
        for name, L, M in corpus_mod.perturbations(seed, args.random):
            rec = analyze(Structure(L, M, check=False))
            bad += not all_agree(rec)
        failures += bad
        results.append({"name": f"random({args.random}, seed={seed})", "ok": not bad, "failed": bad})
        if not args.json:
            print(f"{'PASS' if not bad else 'FAIL'}  {args.random} random perturbations, seed {seed}", file=out)
    if args.json:
        json.dump({"seed": seed, "results": results}, out, indent=2, sort_keys=True)
        out.write("\n")
    return EXIT_OK if not failures else EXIT_FAIL


def build_parser():
    p = argparse.ArgumentParser(prog="paratorsion",
                                description="Intrinsic torsion and Ricci curvature of SL(n,R)-structures on Lie algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, family=True):
        sp.add_argument("--json", action="store_true", help="emit JSON")
        sp.add_argument("--params", help="parameter values, e.g. lambda=1,mu=2,k=0")
        if family:
            sp.add_argument("--family", help="family id inside a multi-family file")

    sp = sub.add_parser("check", help="Jacobi identity, nilpotency, unimodularity")
    sp.add_argument("input")
    common(sp)
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("analyze", help="torsion, curvature and formula/oracle agreement")
    sp.add_argument("input")
    sp.add_argument("--coframe", help="neg-V, swap or file:<path>")
    common(sp)
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("search", help="W1 Ricci-flat search over splittings")
    sp.add_argument("input")
    sp.add_argument("--splitting", default="coords", help="coords, file:<path> or enum:<bound>")
    sp.add_argument("--bound", type=int, default=3, help="max-norm cap for the nondegeneracy search")
    sp.add_argument("--limit", type=int, default=50, help="max candidates for enum splittings")
    common(sp)
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("product", help="analyze a product structure")
    sp.add_argument("input_a")
    sp.add_argument("input_b")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_product)

    sp = sub.add_parser("corpus", help="run the worked-example regression suite")
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--random", type=int, default=0, help="also check N random coframe perturbations")
    sp.add_argument("--seed", type=int, help="seed for --random (default: $PARATORSION_SEED)")
    sp.set_defaults(func=cmd_corpus)
    return p


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (Precondition, PreconditionError) as exc:
        print(f"precondition: {exc}", file=sys.stderr)
        return EXIT_PRECOND


def main_exit():
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
