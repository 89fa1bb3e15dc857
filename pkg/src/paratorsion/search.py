"""Search for Ricci-flat structures with intrinsic torsion in W1.

Given a splitting g = V ⊕ H, the map Ñ^H: V° → Λ²V* only depends on V.
If it has rank three, simple image and no common factor, a coframe can be
adapted so that τ2 = τ5 = τ6 = 0; the remaining conditions on F are linear.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, count, product

from . import linalg
from .analysis import analyze
from .corpus import table1_family
from .exalg import Form, Tensor
from .liealg import change_coframe, check_jacobi, is_nilpotent
from .pstruct import Structure
from .ricforms import ricci_prime_formula, ricci_second_formula
from .torsion import classify, intrinsic_torsion, nijenhuis

CSHAPE = (("d", 2, True), ("d", 1, False))


class SearchError(ValueError):
    pass


@dataclass(frozen=True)
class SplittingCandidate:
    V_basis: tuple
    H_basis: tuple

    @classmethod
    def coords(cls, dim):
        n = dim // 2
        unit = lambda i: tuple(Fraction(int(j == i)) for j in range(dim))
        return cls(tuple(unit(i) for i in range(n)), tuple(unit(i) for i in range(n, dim)))

    @classmethod
    def from_rows(cls, rows):
        rows = [tuple(Fraction(x) for x in r) for r in rows]
        if len(rows) % 2:
            raise SearchError("a splitting needs 2n basis vectors")
        n = len(rows) // 2
        return cls(tuple(rows[:n]), tuple(rows[n:]))

    def matrix(self):
        """Columns are the basis vectors, V first."""
        cols = self.V_basis + self.H_basis
        return [[c[i] for c in cols] for i in range(len(cols))]

    def is_valid(self, L):
        m = L.dim
        if len(self.V_basis) != m // 2 or len(self.H_basis) != m // 2:
            return False
        if linalg.rank(self.matrix(), m) < m:
            return False
        return h_is_subalgebra(change_coframe(L, linalg.inverse(self.matrix())))


@dataclass
class SearchReport:
    conditions: dict
    F_space_basis: list = field(default_factory=list)
    nondegenerate_witness: Form = None
    verification: dict = None
    coframe: list = None
    outcome: str = ""


def adapted_algebra(L, C):
    """The algebra in the coframe dual to V_basis ∪ H_basis."""
    return change_coframe(L, linalg.inverse(C.matrix()))


def h_is_subalgebra(L):
    n = L.dim // 2
    return all(not L.d(Form.basis(L.dim, i)).component(0, 2) for i in range(1, n + 1))


def nh_images(L):
    """Ñ^H(e^{n+j}) = -4 (de^{n+j})^{2,0}, in the coordinate splitting of L."""
    n = L.dim // 2
    return [L.d(Form.basis(L.dim, n + j)).component(2, 0) * -4 for j in range(1, n + 1)]


def _vec(form, keys):
    return [form.coeff(*k) for k in keys]


def _span_basis(forms, keys):
    rows = [_vec(f, keys) for f in forms if f]
    if not rows:
        return []
    red, piv = linalg.rref(rows, len(keys))
    return [Form(forms[0].dim, forms[0].deg, dict(zip(keys, r))) for r in red[:len(piv)]]


def nh_conditions(L, C=None):
    """Decide the three Nijenhuis conditions and the d(Λ^{0,n}) type condition."""
    C = C or SplittingCandidate.coords(L.dim)
    La = adapted_algebra(L, C)
    m, n = La.dim, La.dim // 2
    keys2 = list(combinations(range(1, n + 1), 2))
    W = _span_basis(nh_images(La), keys2)
    out = {"rank3": len(W) == 3, "simple_image": True, "no_common_factor": True,
           "dalpha_type_ok": True, "witness": None}
    for i in range(len(W)):
        for j in range(i, len(W)):
            if W[i].wedge(W[j]):
                out["simple_image"] = False
                out["witness"] = W[i] if i == j else W[i] + W[j]
                break
        if not out["simple_image"]:
            break
    # σ ∈ V* with σ∧η = 0 for all η ∈ W
    keys3 = list(combinations(range(1, n + 1), 3))
    rows = []
    for eta in W:
        for k in keys3:
            rows.append([eta.wedge(Form.basis(m, i)).coeff(*k) for i in range(1, n + 1)])
    out["no_common_factor"] = bool(W) and not linalg.nullspace(rows, n)
    beta = Form.basis(m, *range(n + 1, m + 1))
    db = La.d(beta)
    out["dalpha_type_ok"] = all(pq == (2, n - 1) for pq in db.components())
    out["h_subalgebra"] = h_is_subalgebra(La)
    return out


def conditions_hold(cond):
    return all(cond[k] for k in ("rank3", "simple_image", "no_common_factor", "h_subalgebra"))


def _complete_basis(rows, m):
    """Extend independent rows to a basis of Q^m with unit vectors."""
    rows = [list(r) for r in rows]
    for i in range(m):
        if len(rows) == m:
            break
        e = [Fraction(int(j == i)) for j in range(m)]
        if linalg.rank(rows + [e], m) > len(rows):
            rows.append(e)
    return rows


def _block_diag(A, B):
    n = len(A)
    z = [Fraction(0)] * n
    return [list(r) + z for r in A] + [z + list(r) for r in B]


def _matmul(A, B):
    return linalg.matmul(A, B)


def adapt_coframe(L, C=None):
    """Coframe (rows, relative to L) in which N^H = e^{23}⊗e_{n+1}+e^{31}⊗e_{n+2}+e^{12}⊗e_{n+3}."""
    C = C or SplittingCandidate.coords(L.dim)
    cond = nh_conditions(L, C)
    if not conditions_hold(cond):
        bad = [k for k in ("rank3", "simple_image", "no_common_factor", "h_subalgebra") if not cond[k]]
        raise SearchError(f"splitting fails: {', '.join(bad)}")
    P_inv = linalg.inverse(C.matrix())
    La = change_coframe(L, P_inv)
    m, n = La.dim, La.dim // 2
    # U = span of the supports of the image forms, a 3-space with W = Λ²U
    supports = [eta.contract(k) for eta in nh_images(La) for k in range(1, n + 1)]
    U = _span_basis(supports, [(i,) for i in range(1, n + 1)])
    A = _complete_basis([_vec(u, [(i,) for i in range(1, n + 1)]) for u in U], n)
    I = linalg.identity(n)
    M1 = _matmul(_block_diag(A, I), P_inv)
    L1 = change_coframe(L, M1)
    # Ñ^H(e^{n+j}) = x_j1 e^{23} + x_j2 e^{31} + x_j3 e^{12}; η^i = Σ_j x_ji e_{n+j}
    etas = nh_images(L1)
    X = [[eta.coeff(2, 3), eta.coeff(3, 1), eta.coeff(1, 2)] for eta in etas]
    hs = [[X[j][i] for j in range(n)] for i in range(3)]
    Hcols = _complete_basis(hs, n)
    B = linalg.inverse([[Hcols[j][i] for j in range(n)] for i in range(n)])
    return _matmul(_block_diag(I, B), M1)


def c_contraction(NH, F):
    """(η⊗h)⊗F ↦ η⊗(h⌟F), in Λ²V*⊗V*."""
    if NH.shape != (("d", 2, True), ("u", 1, False)) or F.deg != 2:
        raise ValueError("c_contraction needs N^H in Λ²T*⊗T and a 2-form")
    t = {}
    for (ab, (h,)), v in NH.items():
        for (k,), c in F.contract(h).items():
            key = (ab, (k,))
            t[key] = t.get(key, 0) + v * c
    return Tensor(NH.dim, CSHAPE, t)


def _alternation_defect(t, m):
    """Coefficients of t(X,Y,Z) + t(X,Z,Y); all zero iff t lies in Λ³."""
    full = {}
    for ((a, b), (c,)), v in t.items():
        full[(a, b, c)] = full.get((a, b, c), 0) + v
        full[(b, a, c)] = full.get((b, a, c), 0) - v
    out = []
    for a in range(1, m + 1):
        for b in range(1, m + 1):
            for c in range(b, m + 1):
                out.append(full.get((a, b, c), 0) + full.get((a, c, b), 0))
    return out


def solve_F_space(L, coframe=None):
    """Basis of {F ∈ Λ^{1,1} : dF ∈ Λ^{3,0}, c(N^H, F) ∈ Λ^{3,0}}."""
    La = L if coframe is None else change_coframe(L, coframe)
    m, n = La.dim, La.dim // 2
    NH, _ = nijenhuis(Structure(La, check=False))
    unknowns = [(i, n + j) for i in range(1, n + 1) for j in range(1, n + 1)]
    cols = []
    for key in unknowns:
        F = Form.basis(m, *key)
        dF = La.d(F)
        bad = dF - dF.component(3, 0)
        col = [bad.coeff(*k) for k in combinations(range(1, m + 1), 3)]
        col += _alternation_defect(c_contraction(NH, F), m)
        cols.append(col)
    rows = [[cols[j][i] for j in range(len(unknowns))] for i in range(len(cols[0]))]
    rows = [r for r in rows if any(r)]
    basis = linalg.nullspace(rows, len(unknowns))
    return [Form(m, 2, {k: c for k, c in zip(unknowns, v) if c}) for v in basis]


def is_nondegenerate(F):
    n = F.dim // 2
    top = Form.const(F.dim, 1)
    for _ in range(n):
        top = top.wedge(F)
    return bool(top)


def coefficient_vectors(k, bound=None):
    """Integer vectors in Z^k ordered by max-norm, then lexicographically."""
    yield (0,) * k
    radii = count(1) if bound is None else range(1, bound + 1)
    for r in radii:
        for v in product(range(-r, r + 1), repeat=k):
            if max(map(abs, v)) == r:
                yield v


def nondegenerate_solutions(space, bound=3, limit=None):
    """Nondegenerate combinations of ``space`` in deterministic order."""
    if not space:
        return
    found = 0
    for v in coefficient_vectors(len(space), bound):
        F = sum((f * c for f, c in zip(space, v) if c), Form.zero(space[0].dim, 2))
        if F and is_nondegenerate(F):
            yield F
            found += 1
            if limit is not None and found >= limit:
                return


def standardizing_coframe(F):
    """Coframe keeping e^1..e^n in which the nondegenerate (1,1)-form F is standard."""
    m, n = F.dim, F.dim // 2
    X = [[F.coeff(i, n + j) for j in range(1, n + 1)] for i in range(1, n + 1)]
    return _block_diag(linalg.identity(n), X)


def structure_for(L, coframe, F):
    M = _matmul(standardizing_coframe(F), coframe) if coframe is not None else standardizing_coframe(F)
    return Structure(L, M, check=False)


def run_search(L, C=None, bound=3, verify=True):
    cond = nh_conditions(L, C)
    rep = SearchReport(conditions=cond)
    if not conditions_hold(cond):
        rep.outcome = "conditions-fail"
        return rep
    rep.coframe = adapt_coframe(L, C)
    rep.F_space_basis = solve_F_space(L, rep.coframe)
    witness = next(nondegenerate_solutions(rep.F_space_basis, bound, limit=1), None)
    rep.nondegenerate_witness = witness
    if witness is None:
        rep.outcome = "inconclusive"
        return rep
    rep.outcome = "witness"
    if verify:
        rep.verification = analyze(structure_for(L, rep.coframe, witness))
    return rep


# -- splitting sources -------------------------------------------------------------

def enumerate_splittings(L, bound, limit=None):
    """Graphs V = ⟨e_i + Σ a_ij e_{n+j}⟩ over the coordinate V, with H = ⟨e_{n+1}..e_{2n}⟩.

    Entries a_ij range over -bound..bound in increasing max-norm; only
    candidates with H a subalgebra are yielded.
    """
    m, n = L.dim, L.dim // 2
    base = SplittingCandidate.coords(m)
    if not h_is_subalgebra(L):
        return
    done = 0
    for v in coefficient_vectors(n * n, bound):
        V = []
        for i in range(n):
            row = list(base.V_basis[i])
            for j in range(n):
                row[n + j] = Fraction(v[i * n + j])
            V.append(tuple(row))
        yield SplittingCandidate(tuple(V), base.H_basis)
        done += 1
        if limit is not None and done >= limit:
            return


# -- table1 families -------------------------------------------------------------------------

def verify_family(row, lam, mu, k=0):
    """Build a table1.alg family, run the pipeline and assert its expected facts."""
    L = table1_family(row, lam, mu, k)
    rep = check_jacobi(L)
    if not rep.ok:
        raise SearchError(f"Jacobi fails for family {row} at de^{rep.witness[0]}")
    S = Structure(L, check=False)
    record = analyze(S)
    T = intrinsic_torsion(S)
    facts = {
        "nilpotent": is_nilpotent(L),
        "class_W1": classify(T).flags == {"W1"} and not T.lam,
        "tau1_nonzero": bool(T.tau1),
        "ricci_zero_oracle": record["curvature"]["ricci_flat"],
        "ricci_zero_formula": not ricci_prime_formula(S, T) and not any(ricci_second_formula(S, T)),
        "riemann_nonzero": not record["curvature"]["flat"],
    }
    record["family"] = {"row": row, "params": [str(lam), str(mu), str(k)], "facts": facts}
    return record
