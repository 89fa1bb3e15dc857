"""Worked examples with their known facts, used by ``paratorsion corpus``.

Expected tensors are in the canonical text form of ``exalg``.  Scalar
curvatures of the Einstein family were computed once by the Levi-Civita
oracle and frozen here as regression constants.
"""

import os
import random
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

from . import linalg
from .liealg import instantiate, parse_algebra_text, parse_salamon, split_families

W1_MODIFIED = (
    "-2*l3*12-2*23+2*l2*13,"
    "-2*l3*l2*12-2*l2*23+2*l2*l2*13,"
    "-2*l3*23+2*l3*l2*13-2*l3*l3*12,"
    "l3*l2*36-l3*l2*25-l3*24-1/3*23+l2*34-l3*l3*26+l2*l2*35,"
    "1/3*13-34+l3*l2*15-l2*35+l3*l3*16-l3*36+l3*14,"
    "l3*26-1/3*12+24-l3*l2*16+l2*25-l2*14-l2*l2*15"
)

# s for (14,25,36,t14,t25,t36), frozen from the oracle
EINSTEIN_S = {-1: Fraction(-2), 0: Fraction(0), 1: Fraction(2), 2: Fraction(4)}


@dataclass(frozen=True)
class Entry:
    name: str
    salamon: str
    expect: dict = field(default_factory=dict)


ENTRIES = (
    Entry("goldberg", "0,0,0,12",
          {"class": "W2", "flat": True, "ricci_flat": True, "integrable": False,
           "lambda": "0"}),
    Entry("parakahler-ricci-flat", "24,0,0,0,0,35",
          {"class": "0", "ricci_flat": True, "flat": False,
           "riemann": "[dd]|[dd]:-34|34"}),
    Entry("w2w6", "0,0,46,0,12,0",
          {"class": "W2+W6", "ricci_flat": True, "tau2": "d|[dd]:2|12", "tau6": "d|[dd]:6|46",
           "riemann": "[dd]|[dd]:26|26"}),
    Entry("w3-flat", "0,0,0,0,0,45",
          {"class": "W3", "flat": True, "tau": "d|[dd]:1/2*3|45"}),
    Entry("w3-8dim", "0,0,0,0,0,0,56,57",
          {"class": "W3", "ricci_flat": True, "flat": False,
           "riemann": "[dd]|[dd]:-1/4*45|56-1/4*56|45"}),
    Entry("ricci-s2vs", "0,0,0,0,45,46", {"ricci": "d|d:-4|4"}),
    Entry("w4", "-14,0,0,0,45,46", {"class": "W4", "ricci": "d|d:4|4"}),
    Entry("nearly-pk-flat", "0,0,0,-1/3*23,-1/3*31,-1/3*12",
          {"class": "W1", "flat": True}),
    Entry("w1-modified", instantiate(W1_MODIFIED, {"l2": 1, "l3": 2}),
          {"class": "W1", "flat": True, "nilpotent": True}),
    *(Entry(f"einstein-t{t}", f"14,25,36,{t}*14,{t}*25,{t}*36",
            {"parakahler": True, "einstein": EINSTEIN_S[t], "ricci_flat": t == 0})
      for t in (-1, 0, 1, 2)),
)

TABLE1_SAMPLES = ((1, 1, 0), (2, -3, 1), (Fraction(1, 2), 1, -1))


def table1_text():
    return resources.files("paratorsion").joinpath("data/table1.alg").read_text()


def table1_family(row, lam, mu, k=0):
    if not lam or not mu:
        raise ValueError("table1 families need lambda and mu nonzero")
    fams = split_families(table1_text())
    if str(row) not in fams:
        raise ValueError(f"no table1 family {row!r}")
    return parse_algebra_text(fams[str(row)], {"lambda": lam, "mu": mu, "k": k}).algebra


def algebras():
    """(name, LieAlgebra) for every corpus entry and table1 sample."""
    out = [(e.name, parse_salamon(e.salamon, e.name)) for e in ENTRIES]
    for row in range(1, 6):
        for lam, mu, k in TABLE1_SAMPLES:
            out.append((f"table1-{row}({lam},{mu},{k})", table1_family(row, lam, mu, k)))
    return out


DEFAULT_SEED = 20240917


def seed_from_env(default=DEFAULT_SEED):
    return int(os.environ.get("PARATORSION_SEED", default))


def random_coframe(rng, m, density=Fraction(3, 10)):
    """Invertible I + sparse small rational matrix."""
    while True:
        M = [[Fraction(int(i == j)) for j in range(m)] for i in range(m)]
        for i in range(m):
            for j in range(m):
                if rng.random() < density:
                    M[i][j] += Fraction(rng.randint(-2, 2), rng.randint(1, 3))
        if linalg.det(M):
            return M


def perturbations(seed, count):
    """(name, algebra, coframe) for ``count`` random coframes on corpus algebras."""
    rng = random.Random(seed)
    pool = [(e.name, parse_salamon(e.salamon, e.name)) for e in ENTRIES]
    for i in range(count):
        name, L = pool[i % len(pool)] if i < len(pool) else rng.choice(pool)
        yield f"{name}~{i}", L, random_coframe(rng, L.dim)
