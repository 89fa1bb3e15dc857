"""Intrinsic torsion of an SL(n,R)-structure.

The ten pieces τ1..τ8, λ are read off dF, dα, dβ; the forward equations
rebuild those derivatives, which is checked by ``round_trip``.  An
independent route (``torsion_via_connection``) projects the Levi-Civita
connection onto gl(n,R)^⊥ directly.
"""

from dataclasses import dataclass, fields
from fractions import Fraction
from itertools import combinations

from .curvature import levi_civita
from .exalg import Form, Tensor, pair
from .liealg import direct_sum
from .pstruct import Structure, fundamental_form, lambda_op, swap_coframe
from .ricforms import TAU, VV2, hook, partial_map

CLASSES = tuple(f"W{i}" for i in range(1, 9))


def _acc(t, key, v):
    x = t.get(key, 0) + v
    if x:
        t[key] = x
    else:
        t.pop(key, None)


@dataclass(frozen=True)
class TorsionComponents:
    n: int
    tau1: Tensor
    tau2: Tensor
    tau3: Tensor
    tau4: Tensor
    tau5: Tensor
    tau6: Tensor
    tau7: Tensor
    tau8: Tensor
    f4: Form
    f8: Form
    lam: Form
    f2: Form = None
    f3: Form = None
    f6: Form = None
    f7: Form = None

    def taus(self):
        return (self.tau1, self.tau2, self.tau3, self.tau4,
                self.tau5, self.tau6, self.tau7, self.tau8)

    @property
    def lam10(self):
        return self.lam.component(1, 0)

    @property
    def lam01(self):
        return self.lam.component(0, 1)

    def total(self):
        out = self.tau1
        for t in self.taus()[1:]:
            out = out + t
        return out

    def same_torsion(self, other):
        return self.taus() == other.taus() and self.lam == other.lam


@dataclass(frozen=True)
class TorsionClass:
    flags: frozenset
    lambda10: bool = False
    lambda01: bool = False

    def __str__(self):
        parts = sorted(self.flags, key=lambda w: int(w[1:]))
        if self.lambda10:
            parts.append("L10")
        if self.lambda01:
            parts.append("L01")
        return "+".join(parts) if parts else "0"

    @property
    def parakahler(self):
        return not self.flags

    def relabel_swap(self):
        """W_i ↔ W_{i+4}, λ^{1,0} ↔ λ^{0,1}."""
        sw = {f"W{i}": f"W{(i + 3) % 8 + 1}" for i in range(1, 9)}
        return TorsionClass(frozenset(sw[w] for w in self.flags), self.lambda01, self.lambda10)


# -- block helpers -------------------------------------------------------------

def tau_tensor(dim, terms):
    return Tensor(dim, TAU, terms)


def zero_tau(dim):
    return Tensor.zero(dim, TAU)


def slot_expand(sigma, indices):
    """Σ_I e^I ⊗ (e_I ⌟ σ) over the given indices."""
    t = {}
    for i in indices:
        for key, c in sigma.contract(i).items():
            _acc(t, ((i,), key), c)
    return Tensor._raw(sigma.dim, TAU, t)


def tau4_of(f4):
    """τ4 = a_i e^k⊗e_{ki} for f4 = a_i e^{n+i}."""
    n = f4.dim // 2
    t = {}
    for (ni,), a in f4.items():
        i = ni - n
        for k in range(1, n + 1):
            if k != i:
                t[((k,), (n + k, n + i))] = a
    return tau_tensor(f4.dim, t)


def tau8_of(f8):
    """τ8 = b_i e^{n+k}⊗e^{ki} for f8 = b_i e^i."""
    n = f8.dim // 2
    t = {}
    for (i,), b in f8.items():
        for k in range(1, n + 1):
            if k != i:
                t[((n + k,), (k, i))] = b
    return tau_tensor(f8.dim, t)


def pi01(a, n):
    """Inverse of θ ↦ θ∧α on Λ^{0,1}; a ∈ Λ^{n,1}."""
    alpha = Form.basis(2 * n, *range(1, n + 1))
    return _invert_wedge(a, alpha, range(n + 1, 2 * n + 1))


def pi10(a, n):
    beta = Form.basis(2 * n, *range(n + 1, 2 * n + 1))
    return _invert_wedge(a, beta, range(1, n + 1))


def _invert_wedge(a, vol, indices):
    dim = a.dim
    out = {}
    for i in indices:
        (key, s), = Form.basis(dim, i).wedge(vol).items()
        c = a.coeff(*key)
        if c:
            out[(i,)] = c / s
    return Form(dim, 1, out)


def f2_of(tau2, n):
    """f2 = a_{ijk}(e_{n+j,n+k} ⌟ β)∧e^i for τ2 = a_{ijk} e^i⊗e^{jk} (all j,k)."""
    dim = 2 * n
    beta = Form.basis(dim, *range(n + 1, 2 * n + 1))
    out = Form.zero(dim, n - 1)
    for ((i,), (j, k)), c in tau2.items():
        # canonical coefficient c covers a_{ijk} and a_{ikj} = -a_{ijk}, each c/2
        out = out + beta.hook(n + j, n + k).wedge(Form.basis(dim, i)) * c
    return out


def f6_of(tau6, n):
    """f6 = b_{ijk}(e_{jk} ⌟ α)∧e^{n+i} for τ6 = b_{ijk} e^{n+i}⊗e_{jk}."""
    dim = 2 * n
    alpha = Form.basis(dim, *range(1, n + 1))
    out = Form.zero(dim, n - 1)
    for ((ni,), (nj, nk)), c in tau6.items():
        out = out + alpha.hook(nj - n, nk - n).wedge(Form.basis(dim, ni)) * c
    return out


def _pair_basis(sigma, probe):
    return pair(sigma, probe)


# -- extraction ----------------------------------------------------------------

def intrinsic_torsion(S):
    n, dim = S.n, S.dim
    V = range(1, n + 1)
    H = range(n + 1, 2 * n + 1)
    F, alpha, beta = S.F, S.alpha, S.beta
    dF = S.d(F).components()
    dA = S.d(alpha).components()
    dB = S.d(beta).components()
    get = lambda comps, pq, deg: comps.get(pq, Form.zero(dim, deg))

    dF30, dF21 = get(dF, (3, 0), 3), get(dF, (2, 1), 3)
    dF12, dF03 = get(dF, (1, 2), 3), get(dF, (0, 3), 3)

    f4 = lambda_op(dF12, S, (1, 2)) * Fraction(-1, 2) if dF12 else Form.zero(dim, 1)
    f8 = lambda_op(dF21, S, (2, 1)) * Fraction(-1, 2) if dF21 else Form.zero(dim, 1)

    tau1 = slot_expand(dF30, V) * Fraction(1, 6)
    tau5 = slot_expand(dF03, H) * Fraction(-1, 6)
    tau4 = tau4_of(f4)
    tau8 = tau8_of(f8)
    tau3 = slot_expand(dF12, V) * Fraction(-1, 2) - tau4
    tau7 = slot_expand(dF21, H) * Fraction(1, 2) - tau8

    # τ2, τ6 through the pairing formulas
    src2 = get(dB, (2, n - 1), n + 1) + hook(partial_map(tau1), beta)
    src6 = get(dA, (n - 1, 2), n + 1) + hook(partial_map(tau5), alpha)
    t2, t6 = {}, {}
    for i in V:
        ia = alpha.contract(i)
        for j, k in combinations(V, 2):
            # the ½ and the two orderings (j,k), (k,j) combine to one canonical term
            v = pair(src2, Form.basis(dim, n + j, n + k).wedge(ia))
            if v:
                t2[((i,), (j, k))] = v
    for i in H:
        hb = beta.contract(i)
        for j, k in combinations(V, 2):
            v = pair(src6, Form.basis(dim, j, k).wedge(hb))
            if v:
                t6[((i,), (n + j, n + k))] = v
    tau2 = tau_tensor(dim, t2)
    tau6 = tau_tensor(dim, t6)

    dA_n1 = get(dA, (n, 1), n + 1)
    dB_1n = get(dB, (1, n), n + 1)
    lam01 = pi01(dA_n1, n) * Fraction(-1, n) - f4 * Fraction(n - 1, n)
    lam10 = pi10(dB_1n, n) * Fraction(1, n) + f8 * Fraction(n - 1, n)
    lam = lam01 + lam10

    return _with_aux(TorsionComponents(n, tau1, tau2, tau3, tau4, tau5, tau6,
                                       tau7, tau8, f4, f8, lam))


def _with_aux(T):
    n = T.n
    F = fundamental_form(n)
    f3 = -hook(partial_map(T.tau3), F)
    f7 = -hook(partial_map(T.tau7), F)
    f2 = f2_of(T.tau2, n)
    f6 = f6_of(T.tau6, n)
    vals = {f.name: getattr(T, f.name) for f in fields(T)}
    vals.update(f2=f2, f3=f3, f6=f6, f7=f7)
    return TorsionComponents(**vals)


def forward_forms(T, S=None):
    """dF, dα, dβ rebuilt from the torsion by the forward equations."""
    n = T.n
    dim = 2 * n
    F = fundamental_form(n)
    alpha = Form.basis(dim, *range(1, n + 1))
    beta = Form.basis(dim, *range(n + 1, 2 * n + 1))
    h = lambda t, s: hook(partial_map(t), s)
    dF = (-h(T.tau1, F)
          - h(T.tau7, F) - T.f8.wedge(F) * 2
          - h(T.tau5, F)
          - h(T.tau3, F) - T.f4.wedge(F) * 2)
    dA = (-(T.lam01 * n + T.f4 * (n - 1)).wedge(alpha)
          - h(T.tau5 + T.tau6, alpha))
    dB = ((T.lam10 * n - T.f8 * (n - 1)).wedge(beta)
          - h(T.tau1 + T.tau2, beta))
    return dF, dA, dB


def round_trip(S, T=None):
    T = T or intrinsic_torsion(S)
    dF, dA, dB = forward_forms(T, S)
    return dF == S.d(S.F) and dA == S.d(S.alpha) and dB == S.d(S.beta)


# -- independent route: project the Levi-Civita connection ------------------------

def alternating_part(t):
    """Projection of V*⊗Λ²V* (or its mirror) onto Λ³: (1/3) Σ e^I⊗e_I⌟(wedge)."""
    dim = t.dim
    three = Form.zero(dim, 3)
    idx = set()
    for ((i,), jk), c in t.items():
        idx.add(i)
        three = three + Form.basis(dim, i, *jk) * c if i not in jk else three
    return slot_expand(three, sorted(idx)) * Fraction(1, 3) if idx else t * 0


def _trace_vector(t, n, upper):
    """Contraction e^i⊗e_{jk} ↦ δ_ij e_k - δ_ik e_j (mirror for the H side)."""
    out = {}
    for ((i,), (c, d)), v in t.items():
        j, k = (c - n, d - n) if not upper else (c, d)
        ii = i if not upper else i - n
        if ii == j:
            _acc(out, k, v)
        if ii == k:
            _acc(out, j, -v)
    return out


def torsion_via_connection(S):
    """τ and λ from ω^LC = ω + τ + λ̃ with ω the sl(n,R)-part."""
    n, dim = S.n, S.dim
    G = levi_civita(S).gamma
    blocks = {"a": {}, "c": {}, "b": {}, "d": {}}
    lam = {}
    for I in range(dim):
        A = G[I]  # A[k][j]: e^j ⊗ e_k
        tr = sum(A[k][k] for k in range(n))
        if tr:
            lam[(I + 1,)] = tr / n
        # off-diagonal part: V→H (k ≥ n, j < n) and H→V
        for j in range(dim):
            for d in range(j + 1, dim):
                # 2-form value a(e_j, e_d) = g(X e_j, e_d) = X[d'][j]
                dp = d + n if d < n else d - n
                jp = j + n if j < n else j - n
                v = Fraction(0)
                if (dp < n) != (j < n):
                    v += A[dp][j]
                if v and (j < n) == (d < n):
                    key = ((I + 1,), (j + 1, d + 1))
                    side = ("a" if j < n else "c") if I < n else ("d" if j < n else "b")
                    blocks[side][key] = v
                del jp
    a = tau_tensor(dim, blocks["a"])
    c = tau_tensor(dim, blocks["c"])
    b = tau_tensor(dim, blocks["b"])
    dd = tau_tensor(dim, blocks["d"])
    tau1 = alternating_part(a)
    tau5 = alternating_part(b)
    tr_c = _trace_vector(c, n, upper=False)
    tr_d = _trace_vector(dd, n, upper=True)
    f4 = Form(dim, 1, {(n + k,): v / (n - 1) for k, v in tr_c.items()})
    f8 = Form(dim, 1, {(k,): v / (n - 1) for k, v in tr_d.items()})
    tau4, tau8 = tau4_of(f4), tau8_of(f8)
    return _with_aux(TorsionComponents(n, tau1, a - tau1, c - tau4, tau4, tau5, b - tau5,
                                       dd - tau8, tau8, f4, f8, Form(dim, 1, lam)))


# -- classification, Nijenhuis, symmetries ------------------------------------------

def classify(T):
    flags = frozenset(f"W{i}" for i, t in enumerate(T.taus(), 1) if t)
    return TorsionClass(flags, bool(T.lam10), bool(T.lam01))


def nijenhuis(S):
    """(N^H, N^V) with N(X,Y) = [X,Y] + [KX,KY] - K[KX,Y] - K[X,KY]."""
    L = S.algebra
    n, dim = S.n, S.dim
    nh, nv = {}, {}
    unit = lambda i: [Fraction(int(k == i)) for k in range(dim)]
    for i in range(dim):
        for j in range(i + 1, dim):
            x, y = unit(i), unit(j)
            kx, ky = S.K(x), S.K(y)
            N = [p + q - r - s for p, q, r, s in zip(
                L.bracket(x, y), L.bracket(kx, ky),
                S.K(L.bracket(kx, y)), S.K(L.bracket(x, ky)))]
            for k, v in enumerate(N):
                if not v:
                    continue
                key = ((i + 1, j + 1), (k + 1,))
                if i < n and j < n and k >= n:
                    nh[key] = v
                elif i >= n and j >= n and k < n:
                    nv[key] = v
                else:
                    raise AssertionError("Nijenhuis tensor has an unexpected component")
    return Tensor(dim, VV2, nh), Tensor(dim, VV2, nv)


def compose_coframes(P, M):
    if M is None:
        return P
    m = len(P)
    return [[sum(P[i][k] * M[k][j] for k in range(m)) for j in range(m)] for i in range(m)]


def sigma_swap(S):
    """Interchange V and H: adapted coframe e^{n+1..2n}, e^{1..n}."""
    return Structure(S.source, compose_coframes(swap_coframe(S.n), S.coframe), check=False)


def swap_torsion(T):
    """The index relabelling a↔b, c↔d, λ_σ,i = -λ_{n+i}, applied to components."""
    n = T.n

    def sw_t(t):
        out = {}
        for ((i,), (j, k)), v in t.items():
            jj, kk = (j + n, k + n) if j <= n else (j - n, k - n)
            out[((i + n if i <= n else i - n,), (jj, kk))] = v
        return tau_tensor(2 * n, out)

    def sw_f(f):
        return Form(2 * n, f.deg, {tuple(i + n if i <= n else i - n for i in k): v
                                   for k, v in f.items()})

    taus = [sw_t(t) for t in T.taus()]
    taus = taus[4:] + taus[:4]
    return _with_aux(TorsionComponents(n, *taus, sw_f(T.f8), sw_f(T.f4), -sw_f(T.lam)))


def neg_v_pullback(T):
    """Components computed in the coframe -e^1..-e^n, e^{n+1}..e^{2n}, re-expressed in e.

    A τ value e^i⊗e^{CD} reads as the endomorphism e^i⊗(e^C⊗e_{D'} - ...), so
    each V index in e^i, e^C and each H index D picks up a sign.
    """
    n = T.n

    def back_t(t):
        return tau_tensor(2 * n, {((i,), (c, d)): v * (-1) ** ((i <= n) + (c <= n) + (d > n))
                                  for ((i,), (c, d)), v in t.items()})

    def back_f(f):
        return Form(2 * n, f.deg, {k: v * (-1) ** sum(a <= n for a in k) for k, v in f.items()})

    return _with_aux(TorsionComponents(n, *(back_t(t) for t in T.taus()),
                                       back_f(T.f4), back_f(T.f8), back_f(T.lam)))


def product(SA, SB, name=None):
    """Product structure: F = F_A + F_B, α = α_A∧α_B, β = β_A∧β_B."""
    A, B = SA.algebra, SB.algebra
    nA, nB = SA.n, SB.n
    L = direct_sum(A, B, name)
    m = L.dim
    # new coframe order: A's V, B's V, A's H, B's H
    order = ([i for i in range(nA)] + [2 * nA + i for i in range(nB)]
             + [nA + i for i in range(nA)] + [2 * nA + nB + i for i in range(nB)])
    P = [[Fraction(int(j == order[i])) for j in range(m)] for i in range(m)]
    return Structure(L, P, check=False)


G_MAP = {"W4": {"W3", "W4"}, "W8": {"W7", "W8"}}


def compose_classes(I, J):
    flags = set()
    for w in I.flags | J.flags:
        flags |= G_MAP.get(w, {w})
    return TorsionClass(frozenset(flags), I.lambda10 or J.lambda10, I.lambda01 or J.lambda01)


def strictly_nearly_parakahler(T):
    cls = classify(T)
    return bool(T.tau1) and cls.flags <= {"W1", "W5"} and not T.lam
