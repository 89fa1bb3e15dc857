"""Acceptance criteria 1-7.

Every comparison is exact rational equality (tolerance 0).  Each criterion
prints one PASS/FAIL line; run this file directly to get just those lines::

    python tests/test_acceptance.py
"""

import itertools
import random
import sys
from fractions import Fraction
from functools import lru_cache

import pytest

from paratorsion import corpus, linalg
from paratorsion.analysis import analyze, check_expectations
from paratorsion.curvature import curvature_data, ricci_contraction
from paratorsion.exalg import Form, Tensor
from paratorsion.liealg import is_nilpotent, is_unimodular, parse_salamon
from paratorsion.pstruct import Structure, bidegree_basis, lambda_closed, lambda_op, neg_v_coframe
from paratorsion.ricforms import hook, lambda_tilde, partial_map, scalar_formula
from paratorsion.search import (adapt_coframe, nh_conditions, nondegenerate_solutions,
                                solve_F_space, structure_for, verify_family)
from paratorsion.torsion import (classify, compose_classes, compose_coframes, intrinsic_torsion,
                                 neg_v_pullback, nijenhuis, product, round_trip, sigma_swap)

TOLERANCE = "exact, tolerance 0"
PERTURBATIONS = 100


@lru_cache(maxsize=None)
def population(seed):
    """(name, Structure) for the corpus, table1 samples and seeded perturbations."""
    out = [(name, Structure(L, check=False)) for name, L in corpus.algebras()]
    out += [(name, Structure(L, M, check=False))
            for name, L, M in corpus.perturbations(seed, PERTURBATIONS)]
    return tuple(out)


@lru_cache(maxsize=None)
def records(seed):
    return tuple((name, S, analyze(S)) for name, S in population(seed))


def criterion_1(seed):
    failed = []
    checked = 0
    for entry in corpus.ENTRIES:
        if entry.name.startswith("einstein"):
            continue
        rec = analyze(Structure(parse_salamon(entry.salamon)))
        bad = check_expectations(rec, entry.expect)
        checked += 1
        failed += [f"{entry.name}:{k}" for k in bad]
    return not failed, f"{checked} examples" + (f"; failed {failed}" if failed else "")


def criterion_2(seed):
    failed = []
    for t, s in sorted(corpus.EINSTEIN_S.items()):
        S = Structure(parse_salamon(f"14,25,36,{t}*14,{t}*25,{t}*36"))
        rec = analyze(S)
        T = intrinsic_torsion(S)
        ok = (rec["curvature"]["einstein"] and rec["torsion"]["parakahler"]
              and rec["curvature"]["ricci_flat"] == (t == 0)
              and scalar_formula(S, T) == s and curvature_data(S).s == s)
        if t == 1:
            ok = ok and s != 0
        if not ok:
            failed.append(t)
    values = ", ".join(f"t={t}: s={s}" for t, s in sorted(corpus.EINSTEIN_S.items()))
    return not failed, values + (f"; failed t in {failed}" if failed else "")


def criterion_3(seed):
    failed = []
    for row in range(1, 6):
        for lam, mu, k in corpus.TABLE1_SAMPLES:
            rec = verify_family(row, lam, mu, k)
            facts = rec["family"]["facts"]
            bad = [f for f, v in facts.items() if not v]
            if bad:
                failed.append(f"row {row} ({lam},{mu},{k}): {bad}")
    return not failed, "15 family samples" + (f"; failed {failed}" if failed else "")


def criterion_4(seed):
    keys = ("ric_prime", "ric_second_V", "ric_second_Vs", "scalar")
    failed = [f"{name}:{k}" for name, _, rec in records(seed) for k in keys if not rec["agreement"][k]]
    classes = {rec["torsion"]["class"] for _, _, rec in records(seed)}
    return not failed, (f"{len(records(seed))} structures, {len(classes)} torsion classes, "
                        f"seed {seed}" + (f"; failed {failed[:5]}" if failed else ""))


def _sign_flip_ok(S):
    flipped = Structure(S.source, compose_coframes(neg_v_coframe(S.n), S.coframe), check=False)
    T, Tn = intrinsic_torsion(S), neg_v_pullback(intrinsic_torsion(flipped))
    return Tn.same_torsion(T) and Tn.lam == T.lam and curvature_data(flipped).s == -curvature_data(S).s


def criterion_5(seed):
    counts = dict.fromkeys(("round_trip", "nijenhuis", "lambda_relation", "pk_scalar", "swap",
                            "sign_flip", "products"), 0)
    failed = []
    for name, S, rec in records(seed):
        T = intrinsic_torsion(S)
        cls = classify(T)
        for key in ("round_trip", "nijenhuis"):
            counts[key] += 1
            if not rec["agreement"][key]:
                failed.append(f"{name}:{key}")
        NH, NV = nijenhuis(S)
        if not NH and not NV and is_nilpotent(S.algebra):
            counts["lambda_relation"] += 1
            if T.lam != (T.f8 - T.f4) * Fraction(S.n - 1, S.n):
                failed.append(f"{name}:lambda_relation")
        if cls.parakahler and is_unimodular(S.algebra):
            counts["pk_scalar"] += 1
            if curvature_data(S).s != 0 or scalar_formula(S, T) != 0:
                failed.append(f"{name}:pk_scalar")
        counts["swap"] += 1
        if classify(intrinsic_torsion(sigma_swap(S))) != cls.relabel_swap():
            failed.append(f"{name}:swap")
        counts["sign_flip"] += 1
        if not _sign_flip_ok(S):
            failed.append(f"{name}:sign_flip")
    factors = [(e.name, Structure(parse_salamon(e.salamon), check=False)) for e in corpus.ENTRIES]
    for (a, SA), (b, SB) in itertools.combinations_with_replacement(factors, 2):
        counts["products"] += 1
        got = classify(intrinsic_torsion(product(SA, SB)))
        want = compose_classes(classify(intrinsic_torsion(SA)), classify(intrinsic_torsion(SB)))
        if got.flags != want.flags:
            failed.append(f"{a}x{b}:products")
    if not counts["lambda_relation"] or not counts["pk_scalar"]:
        failed.append("empty sub-population")
    detail = ", ".join(f"{k} {v}" for k, v in counts.items())
    return not failed, detail + (f"; failed {failed[:5]}" if failed else "")


def _generator_values(n):
    from paratorsion.curvature import S2L2, s2_of_forms, tensor_of_forms
    from paratorsion.pstruct import metric_tensor

    m, r = 2 * n, range(1, n + 1)
    b = lambda i, j: Form.basis(m, i, j) if i != j else Form.zero(m, 2)
    total = lambda ts: sum(ts, Tensor.zero(m, S2L2))
    gens = {
        "w1": total(s2_of_forms(b(n + i, n + j), b(i, j)) for i in r for j in r),
        "w2": total(tensor_of_forms(b(i, n + i), b(j, n + j)) for i in r for j in r),
        "w3": total(tensor_of_forms(b(j, n + i), b(i, n + j)) for i in r for j in r),
        "v1": total(s2_of_forms(b(n, k + n), b(k, n + 1)) for k in r),
        "v2": total(s2_of_forms(b(n, n + 1), b(k, n + k)) for k in r),
        "v3": total(s2_of_forms(b(n + 1, k + n), b(k, n)) for k in r),
    }
    g = metric_tensor(n)
    E = Tensor(m, g.shape, {((n,), (n + 1,)): 1, ((n + 1,), (n,)): 1})
    want = {"w1": g * (-2 * (n - 1)), "w2": g, "w3": g * n,
            "v1": E * n, "v2": E * 2, "v3": E * (n - 2)}
    return gens, want


def criterion_6(seed):
    failed = []
    for n in (2, 3, 4):
        gens, want = _generator_values(n)
        failed += [f"ric({k}) n={n}" for k in gens if ricci_contraction(gens[k], n) != want[k]]
    rng = random.Random(seed)
    trials = 0
    for n in (2, 3, 4):
        m = 2 * n
        for _ in range(20):
            lam = Form(m, 1, {(i,): rng.randint(-3, 3) for i in range(1, m + 1)})
            k = rng.randint(1, m - 1)
            keys = list(itertools.combinations(range(1, m + 1), k))
            sigma = Form(m, k, {key: Fraction(rng.randint(-2, 2), rng.randint(1, 3))
                                for key in rng.sample(keys, min(4, len(keys)))})
            rhs = sum((lam.wedge(part) * (p - q) for (p, q), part in sigma.components().items()),
                      Form.zero(m, k + 1))
            trials += 1
            if hook(partial_map(lambda_tilde(lam)), sigma) != rhs:
                failed.append(f"bracketlambda n={n}")
    basis_forms = 0
    for n in (3, 4):
        for pq in ((2, 1), (1, 2)):
            for key in bidegree_basis(n, *pq):
                a = Form.basis(2 * n, *key)
                basis_forms += 1
                if lambda_op(a) != lambda_closed(a):
                    failed.append(f"Lambda {key} n={n}")
    return not failed, (f"18 generator values, {trials} random bracket checks, "
                        f"{basis_forms} basis forms" + (f"; failed {failed[:5]}" if failed else ""))


def criterion_7(seed):
    L = corpus.table1_family(1, 1, 1, 0)
    cond = nh_conditions(L)
    failed = [k for k in ("rank3", "simple_image", "no_common_factor", "dalpha_type_ok",
                          "h_subalgebra") if not cond[k]]
    C = adapt_coframe(L)
    T = intrinsic_torsion(Structure(L, C, check=False))
    if T.tau2 or T.tau5 or T.tau6:
        failed.append("tau2/tau5/tau6")
    space = solve_F_space(L)
    F = Form(8, 2, {(i, 4 + i): 1 for i in range(1, 5)})
    keys = sorted({k for f in space + [F] for k in f.terms})
    rows = [[f.coeff(*k) for k in keys] for f in space]
    if linalg.rank(rows + [[F.coeff(*k) for k in keys]], len(keys)) != linalg.rank(rows, len(keys)):
        failed.append("standard F not in space")
    adapted_space = solve_F_space(L, C)
    sols = list(nondegenerate_solutions(adapted_space, bound=3, limit=20))
    if len(sols) < 20:
        failed.append(f"only {len(sols)} solutions")
    for i, sol in enumerate(sols):
        S = structure_for(L, C, sol)
        Ts = intrinsic_torsion(S)
        if not classify(Ts).flags <= {"W1"} or Ts.lam or curvature_data(S).ric_full:
            failed.append(f"solution {i}")
    return not failed, (f"space dim {len(space)}, {len(sols)} nondegenerate solutions"
                        + (f"; failed {failed}" if failed else ""))


CRITERIA = {
    1: ("worked-example regression", criterion_1),
    2: ("Einstein family", criterion_2),
    3: ("table1 families", criterion_3),
    4: ("formula vs Levi-Civita oracle", criterion_4),
    5: ("structural invariants", criterion_5),
    6: ("calibration", criterion_6),
    7: ("search pipeline", criterion_7),
}


def evaluate(number, seed):
    title, fn = CRITERIA[number]
    ok, detail = fn(seed)
    line = f"criterion {number} [{'PASS' if ok else 'FAIL'}] {title} ({TOLERANCE}): {detail}"
    return ok, line


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, seed, capsys):
    ok, line = evaluate(number, seed)
    with capsys.disabled():
        print(f"\n{line}")
    assert ok, line


def main():
    seed = corpus.seed_from_env()
    print(f"seed {seed}")
    results = [evaluate(n, seed) for n in sorted(CRITERIA)]
    for _, line in results:
        print(line)
    return 0 if all(ok for ok, _ in results) else 1


if __name__ == "__main__":
    sys.exit(main())
