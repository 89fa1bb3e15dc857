"""Levi-Civita oracle: Koszul formula, Riemann and Ricci tensors.

Conventions: ∇_{e_I} e_J = Γ^K_{IJ} e_K,
R(X,Y)Z = ∇_X∇_Y Z - ∇_Y∇_X Z - ∇_{[X,Y]} Z and ric(X,Y) = tr(Z ↦ R(Z,X)Y).
The Riemann tensor is reported in S²(Λ²T*) as Σ g(R(e_A,e_B)e_C, e_D) e^{AB}⊗e^{CD}.
"""

from dataclasses import dataclass
from fractions import Fraction

from .exalg import Form, Tensor
from .pstruct import SYM2, metric_tensor

S2L2 = (("d", 2, True), ("d", 2, True))
CONN = (("d", 1, False), ("d", 1, False), ("u", 1, False))
L2END = (("d", 2, True), ("d", 1, False), ("u", 1, False))


def _zeros(m):
    return [[Fraction(0)] * m for _ in range(m)]


def metric_matrix(n):
    m = 2 * n
    g = _zeros(m)
    for i in range(n):
        g[i][n + i] = g[n + i][i] = Fraction(1)
    return g


@dataclass
class Connection:
    """Γ[i][k][j] = Γ^k_{ij} (0-based), i.e. column j of the matrix of ∇_{e_i}."""

    gamma: list
    dim: int

    def matrix(self, i):
        """Matrix (row k, column j) of ∇_{e_{i+1}} acting on vectors."""
        return self.gamma[i]

    def as_tensor(self):
        t = {}
        m = self.dim
        for i in range(m):
            for k in range(m):
                for j in range(m):
                    c = self.gamma[i][k][j]
                    if c:
                        t[((i + 1,), (j + 1,), (k + 1,))] = c
        return Tensor(m, CONN, t)


def levi_civita(S):
    L = S.algebra
    m, n = L.dim, S.n
    c = L.structure_constants()  # c[k][i][j]
    g = metric_matrix(n)
    # lowered constants c_{ij,z} = g([e_i, e_j], e_z)
    low = [[[sum(c[k][i][j] * g[k][z] for k in range(m) if c[k][i][j])
             for z in range(m)] for j in range(m)] for i in range(m)]
    gamma = [_zeros(m) for _ in range(m)]
    for i in range(m):
        for j in range(m):
            for z in range(m):
                v = (low[i][j][z] - low[j][z][i] + low[z][i][j]) / 2
                if v:
                    # raise z with g^{-1}, which swaps z and z±n
                    k = z + n if z < n else z - n
                    gamma[i][k][j] += v
    return Connection(gamma, m)


def _mat_mul(a, b):
    m = len(a)
    out = _zeros(m)
    for i in range(m):
        ai = a[i]
        for k in range(m):
            x = ai[k]
            if x:
                bk = b[k]
                oi = out[i]
                for j in range(m):
                    if bk[j]:
                        oi[j] += x * bk[j]
    return out


def curvature_matrices(C, S):
    """R[a][b] = matrix of R(e_a, e_b) for a < b (0-based)."""
    L = S.algebra
    m = L.dim
    c = L.structure_constants()
    G = C.gamma
    R = {}
    for a in range(m):
        for b in range(a + 1, m):
            ab = _mat_mul(G[a], G[b])
            ba = _mat_mul(G[b], G[a])
            M = [[ab[k][j] - ba[k][j] for j in range(m)] for k in range(m)]
            for l in range(m):
                x = c[l][a][b]
                if x:
                    for k in range(m):
                        for j in range(m):
                            if G[l][k][j]:
                                M[k][j] -= x * G[l][k][j]
            R[a, b] = M
    return R


def riemann(C, S):
    m, n = S.dim, S.n
    g = metric_matrix(n)
    t = {}
    for (a, b), M in curvature_matrices(C, S).items():
        for cc in range(m):
            for d in range(cc + 1, m):
                # g(R(e_a,e_b)e_c, e_d) = sum_k M[k][c] g[k][d]
                kd = d + n if d < n else d - n
                v = M[kd][cc] * g[kd][d]
                if v:
                    t[((a + 1, b + 1), (cc + 1, d + 1))] = v
    return Tensor(m, S2L2, t)


def riemann_value(Rt, a, b, c, d):
    return Rt.get((a, b), (c, d))


def ricci_from_riemann(Rt, n):
    """ric(X,Y) = tr(Z ↦ R(Z,X)Y) for R given in S²(Λ²T*)."""
    m = 2 * n
    ric = _zeros(m)
    # R(e_k, e_x) e_y has e_k-component g^{kd} R_{k x y d}
    for x in range(1, m + 1):
        for y in range(1, m + 1):
            s = Fraction(0)
            for k in range(1, m + 1):
                d = k + n if k <= n else k - n
                s += Rt.get((k, x), (y, d))
            ric[x - 1][y - 1] = s
    return ric


def ricci_contraction(B, n):
    """Ricci contraction of B ∈ Λ²T*⊗End(T) or Λ²T*⊗Λ²T* (2-forms read as endomorphisms)."""
    m = 2 * n
    if B.shape == S2L2:
        B = forms_to_endomorphisms(B, n)
    if B.shape != L2END:
        raise ValueError(f"unsupported shape {B.shape}")
    t = {}
    for ((a, b), (c,), (d,)), v in B.items():
        # B(e_k, e_x) e_y with k = d
        if d == a:
            t[((b,), (c,))] = t.get(((b,), (c,)), 0) + v
        if d == b:
            t[((a,), (c,))] = t.get(((a,), (c,)), 0) - v
    return Tensor(m, SYM2, t)


def endomorphism_of(key, n):
    """M_α for α = e^{CD}: e^C⊗e_{D'} - e^D⊗e_{C'} with ' the metric index swap."""
    c, d = key
    sw = lambda i: i + n if i <= n else i - n
    return [((c,), (sw(d),), 1), ((d,), (sw(c),), -1)]


def forms_to_endomorphisms(B, n):
    t = {}
    for (ab, cd), v in B.items():
        for (x,), (y,), s in endomorphism_of(cd, n):
            k = (ab, (x,), (y,))
            t[k] = t.get(k, 0) + s * v
    return Tensor(2 * n, L2END, t)


def matrix_to_tensor(M):
    m = len(M)
    return Tensor(m, SYM2, {((i + 1,), (j + 1,)): M[i][j]
                            for i in range(m) for j in range(m) if M[i][j]})


@dataclass
class CurvatureData:
    n: int
    riemann: Tensor
    ric_full: Tensor
    ric_prime: Form
    ric_second_V: Tensor   # S²V: the e^{n+i}⊗e^{n+j} block
    ric_second_Vs: Tensor  # S²V*: the e^i⊗e^j block
    s: Fraction


def split_ricci(ric, n):
    """Split a symmetric (0,2) tensor into ric′ ∈ Λ^{1,1}, S²V and S²V* parts."""
    m = 2 * n
    prime = {}
    for ((a,), (b,)), v in ric.items():
        if a <= n < b:
            prime[(a, b)] = v
    rp = Form(m, 2, prime)
    sv = ric.filter(lambda k: k[0][0] > n and k[1][0] > n)
    svs = ric.filter(lambda k: k[0][0] <= n and k[1][0] <= n)
    s = sum((ric.get((i,), (n + i,)) for i in range(1, n + 1)), Fraction(0)) / n
    return rp, sv, svs, s


def ricci_oracle(Rt, S):
    n = S.n
    ric = matrix_to_tensor(ricci_from_riemann(Rt, n))
    rp, sv, svs, s = split_ricci(ric, n)
    return CurvatureData(n, Rt, ric, rp, sv, svs, s)


def curvature_data(S):
    return ricci_oracle(riemann(levi_civita(S), S), S)


def predicates(D, S=None):
    n = D.n
    flat = not D.riemann
    ricci_flat = not D.ric_full
    einstein = D.s if D.ric_full == metric_tensor(n) * D.s else None
    return {"flat": flat, "ricci_flat": ricci_flat, "einstein": einstein}


def s2_of_forms(a, b):
    """a ⊙ b = a⊗b + b⊗a for 2-forms, in S²(Λ²T*)."""
    t = {}
    for k1, x in a.items():
        for k2, y in b.items():
            for key in ((k1, k2), (k2, k1)):
                t[key] = t.get(key, 0) + x * y
    return Tensor(a.dim, S2L2, t)


def tensor_of_forms(a, b):
    return Tensor(a.dim, S2L2, {(k1, k2): x * y for k1, x in a.items() for k2, y in b.items()})


def check_connection(C, S):
    """Metric compatibility and torsion-freeness, exactly."""
    m, n = S.dim, S.n
    g = metric_matrix(n)
    c = S.algebra.structure_constants()
    G = C.gamma
    for i in range(m):
        for j in range(m):
            for k in range(m):
                if G[i][k][j] - G[j][k][i] != c[k][i][j]:
                    return False
    for i in range(m):
        for j in range(m):
            for z in range(m):
                a = sum(G[i][k][j] * g[k][z] for k in range(m))
                b = sum(G[i][k][z] * g[k][j] for k in range(m))
                if a + b:
                    return False
    return True
