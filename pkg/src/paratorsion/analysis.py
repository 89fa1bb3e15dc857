"""Full pipeline on one structure, as a JSON-ready record."""

import time

from . import exalg
from .curvature import curvature_data, predicates
from .exalg import fmt_scalar
from .liealg import check_jacobi, is_nilpotent, is_unimodular
from .ricforms import partial_map, ricci_prime_formula, ricci_second_formula, scalar_formula
from .torsion import (classify, intrinsic_torsion, nijenhuis, round_trip,
                      strictly_nearly_parakahler, torsion_via_connection)

__version__ = "0.1.0"

COMPONENTS = ("tau1", "tau2", "tau3", "tau4", "tau5", "tau6", "tau7", "tau8", "f4", "f8", "lam")


def algebra_record(L):
    rep = check_jacobi(L)
    rec = {"name": L.name, "dim": L.dim, "salamon": L.to_salamon(), "jacobi": rep.ok}
    if not rep.ok:
        k, witness = rep.witness
        rec["witness"] = {"index": k, "d2": witness.to_text()}
        return rec
    rec["nilpotent"] = is_nilpotent(L)
    rec["unimodular"] = is_unimodular(L)
    return rec


def analyze(S):
    t0 = time.perf_counter()
    T = intrinsic_torsion(S)
    cls = classify(T)
    NH, NV = nijenhuis(S)
    D = curvature_data(S)
    pred = predicates(D, S)
    sV, sVs = ricci_second_formula(S, T)
    s_formula = scalar_formula(S, T)

    algebra = algebra_record(S.algebra)
    if S.coframe is not None:
        algebra["source"] = S.source.to_salamon()
        algebra["coframe"] = [[fmt_scalar(x) for x in row] for row in S.coframe]
    torsion = {
        "class": str(cls),
        "flags": sorted(cls.flags, key=lambda w: int(w[1:])),
        "lambda10": cls.lambda10,
        "lambda01": cls.lambda01,
        "parakahler": cls.parakahler,
        "strictly_nearly_parakahler": strictly_nearly_parakahler(T),
        "integrable": not NH and not NV,
        "components": {c: getattr(T, c).to_text() for c in COMPONENTS},
        "nijenhuis": {"NH": NH.to_text(), "NV": NV.to_text()},
    }
    curvature = {
        "flat": pred["flat"],
        "ricci_flat": pred["ricci_flat"],
        "einstein": pred["einstein"] is not None,
        "s": fmt_scalar(D.s),
        "riemann": D.riemann.to_text(),
        "ricci": D.ric_full.to_text(),
        "ric_prime": D.ric_prime.to_text(),
        "ric_second_V": D.ric_second_V.to_text(),
        "ric_second_Vs": D.ric_second_Vs.to_text(),
    }
    agreement = {
        "round_trip": round_trip(S, T),
        "connection_torsion": T.same_torsion(torsion_via_connection(S)),
        "nijenhuis": NH == partial_map(T.tau1 + T.tau2) * 4 and NV == partial_map(T.tau5 + T.tau6) * 4,
        "ric_prime": ricci_prime_formula(S, T) == D.ric_prime,
        "ric_second_V": sV == D.ric_second_V,
        "ric_second_Vs": sVs == D.ric_second_Vs,
        "scalar": s_formula == D.s,
    }
    meta = {
        "version": __version__,
        "kernel": exalg.KERNEL,
        "elapsed_us": int((time.perf_counter() - t0) * 1e6),
    }
    return {"algebra": algebra, "torsion": torsion, "curvature": curvature,
            "agreement": agreement, "meta": meta}


def all_agree(record):
    return all(record["agreement"].values())


def check_expectations(record, expect):
    """Names of expected facts that the record contradicts."""
    tor, cur = record["torsion"], record["curvature"]
    comps = tor["components"]
    failed = []
    checks = {
        "class": lambda v: tor["class"] == v,
        "parakahler": lambda v: tor["parakahler"] == v,
        "flat": lambda v: cur["flat"] == v,
        "ricci_flat": lambda v: cur["ricci_flat"] == v,
        "integrable": lambda v: tor["integrable"] == v,
        "riemann": lambda v: cur["riemann"] == v,
        "ricci": lambda v: cur["ricci"] == v,
        "einstein": lambda v: cur["einstein"] and cur["s"] == fmt_scalar(v),
        "nilpotent": lambda v: record["algebra"].get("nilpotent") == v,
        "lambda": lambda v: comps["lam"] == exalg.Form.parse(v, record["algebra"]["dim"], 1).to_text(),
        "tau": lambda v: _total_tau(comps, record["algebra"]["dim"]) == v,
    }
    for key, value in expect.items():
        if key in checks:
            ok = checks[key](value)
        else:
            ok = comps[key] == value
        if not ok:
            failed.append(key)
    return failed


def _total_tau(comps, dim):
    from .ricforms import TAU

    total = exalg.Tensor.zero(dim, TAU)
    for c in COMPONENTS[:8]:
        total = total + exalg.Tensor.parse(comps[c], dim)
    return total.to_text()
