"""Ricci curvature from intrinsic torsion, through exterior derivatives.

Torsion blocks are tensors in T*⊗Λ²T* (shape ``TAU``): a bivector e_{jk} of
Λ²V is stored as its metric dual e^{n+j,n+k}, so e.g. τ3+τ4 = c_{ijk} e^i⊗e_{jk}
is stored under keys ((i,), (n+j, n+k)).
"""

from fractions import Fraction

from .curvature import ricci_contraction
from .exalg import Form, Tensor, symmetrize, tensor_product, sym_product, pair
from .pstruct import SYM2, fundamental_form, lambda_op, s2_part, split_F_trace

TAU = (("d", 1, False), ("d", 2, True))
VV2 = (("d", 2, True), ("u", 1, False))
GLV = (("d", 1, False), ("d", 1, False), ("u", 1, False))
L2L2 = (("d", 2, True), ("d", 2, True))


def _sw(i, n):
    return i + n if i <= n else i - n


def _acc(t, key, v):
    x = t.get(key, 0) + v
    if x:
        t[key] = x
    else:
        t.pop(key, None)


def lambda_tilde(lam):
    """λ̃ = λ_I e^I⊗(e^k⊗e_k - e^{n+k}⊗e_{n+k}) in T*⊗End(T)."""
    n = lam.dim // 2
    t = {}
    for (i,), c in lam.items():
        for k in range(1, n + 1):
            t[((i,), (k,), (k,))] = c
            t[((i,), (n + k,), (n + k,))] = -c
    return Tensor(lam.dim, GLV, t)


def partial_map(t):
    """∂: T*⊗gl(T) → Λ²T*⊗T, e^i⊗(e^j⊗e_k) ↦ e^{ij}⊗e_k.

    TAU-shaped input has its 2-form values read as endomorphisms,
    e^{CD} ↦ e^C⊗e_{D'} - e^D⊗e_{C'} with ' the index swap i ↔ n+i.
    """
    n = t.dim // 2
    out = {}
    if t.shape == TAU:
        for ((i,), (c, d)), v in t.items():
            for j, k, s in ((c, _sw(d, n), 1), (d, _sw(c, n), -1)):
                if i != j:
                    a, b = (i, j) if i < j else (j, i)
                    _acc(out, ((a, b), (k,)), v * s if i < j else -v * s)
    elif t.shape == GLV:
        for ((i,), (j,), (k,)), v in t.items():
            if i != j:
                a, b = (i, j) if i < j else (j, i)
                _acc(out, ((a, b), (k,)), v if i < j else -v)
    else:
        raise ValueError(f"unsupported block shape {t.shape}")
    return Tensor._raw(t.dim, VV2, out)


def hook(P, sigma):
    """(η⊗v)⌟σ = η∧(v⌟σ) for P ∈ Λ²T*⊗T."""
    out = Form.zero(sigma.dim, sigma.deg + 1)
    if not sigma.deg:
        return out
    for (ab, (c,)), v in P.items():
        inner = sigma.contract(c)
        if inner:
            out = out + Form.basis(sigma.dim, *ab).wedge(inner) * v
    return out


def hook_tensorial(P, tau):
    """(η⊗v)⌟(θ⊗ω) = θ(v) η⊗ω, for P ∈ Λ²T*⊗T and τ ∈ T*⊗Λ²T*."""
    by_index = {}
    for ((i,), jk), w in tau.items():
        by_index.setdefault(i, []).append((jk, w))
    out = {}
    for (ab, (c,)), v in P.items():
        for jk, w in by_index.get(c, ()):
            _acc(out, (ab, jk), v * w)
    return Tensor._raw(tau.dim, L2L2, out)


def _ftilde(cd, ef, n):
    """F̃ on Λ²V ⊕ Λ²V*: ⟨γ,σ⟩ = F̃(γ,σ) = -F̃(σ,γ), zero otherwise."""
    c, d = cd
    e, f = ef
    if c > n and d > n and (e, f) == (c - n, d - n):
        return 1
    if c <= n and d <= n and (e, f) == (c + n, d + n):
        return -1
    return 0


def bracket_F(a, b):
    """F(η⊗γ, η'⊗γ') = F̃(γ,γ') η∧η'."""
    n = a.dim // 2
    out = {}
    for ((i,), g1), x in a.items():
        for ((h,), g2), y in b.items():
            s = _ftilde(g1, g2, n)
            if s and i != h:
                key, sg = ((i, h), 1) if i < h else ((h, i), -1)
                _acc(out, key, s * sg * x * y)
    return Form._raw(a.dim, 2, out)


def _f_co(i, h, n):
    """F evaluated on two covectors through the metric: F(e^i, e^{n+i}) = -1."""
    if i <= n and h == i + n:
        return -1
    if i > n and h == i - n:
        return 1
    return 0


def _expand3(t):
    out = {}
    for ((i,), (j, k)), v in t.items():
        _acc(out, (i, j, k), v)
        _acc(out, (i, k, j), -v)
    return out


def bracket_Fbar(a, b):
    """F̄(e^I⊗e^J⊗e^K, e^H⊗e^L⊗e^M) = -F(e^I,e^H) F(e^J,e^L) e^K∧e^M."""
    n = a.dim // 2
    ea, eb = _expand3(a), _expand3(b)
    out = {}
    for (i, j, k), x in ea.items():
        for (h, l, m), y in eb.items():
            s = _f_co(i, h, n) * _f_co(j, l, n)
            if s and k != m:
                key, sg = ((k, m), 1) if k < m else ((m, k), -1)
                _acc(out, key, -s * sg * x * y)
    return Form._raw(a.dim, 2, out)


def ric_of(B, n):
    """Ricci contraction of a Λ²T*⊗Λ²T* tensor, as a full (0,2) tensor."""
    return ricci_contraction(B, n)


# -- formulas ------------------------------------------------------------------

def _comp(a, p, q):
    return a.component(p, q)


def _block(t, side):
    """The e^{n+i}⊗e^{n+j} block (side 'V') or the e^i⊗e^j block (side 'V*')."""
    n = t.dim // 2
    if side == "V":
        return Tensor(t.dim, SYM2, {k: v for k, v in t.items() if k[0][0] > n and k[1][0] > n})
    return Tensor(t.dim, SYM2, {k: v for k, v in t.items() if k[0][0] <= n and k[1][0] <= n})


def _one_forms_tensor(a, b):
    return Tensor(a.dim, SYM2, {(k1, k2): x * y for k1, x in a.items() for k2, y in b.items()})


def _raise_hook(f, vol):
    """f⌟vol with the 1-form f raised by the metric (e^i ↔ e_{n+i})."""
    n = f.dim // 2
    out = Form.zero(f.dim, vol.deg - 1)
    for (i,), c in f.items():
        out = out + vol.contract(_sw(i, n)) * c
    return out


def ricci_prime_formula(S, T):
    """ric′ as a (1,1)-form, e^i⊙e^{n+j} ↦ e^{i,n+j}."""
    n, dim = S.n, S.dim
    F = fundamental_form(n)
    f4, f8 = T.f4, T.f8
    out = Form.zero(dim, 2)
    if n > 2:
        x = S.d(T.f3) + hook(partial_map(T.tau7 + T.tau8), T.f3)
        x22 = _comp(x, 2, 2)
        if x22:
            free, _ = split_F_trace(lambda_op(x22, S, (2, 2)), S)
            out = out + free * (2 - n)
    df4 = S.d(f4)
    df4_11 = _comp(df4, 1, 1)
    out = out + df4_11 * (2 * (n - 2)) - f4.wedge(f8) * (2 * (n - 1))
    lam_df4 = lambda_op(df4_11, S, (1, 1)).scalar_value() if df4_11 else 0
    out = out + F * (2 * n * lam_df4 - 4 * (n - 1) * pair(f4, f8))
    out = (out
           - bracket_F(T.tau1, T.tau5) * 10
           + bracket_F(T.tau1, T.tau6) * 2
           - bracket_F(T.tau2, T.tau5) * 4
           - bracket_F(T.tau2, T.tau6) * 2
           + bracket_Fbar(T.tau2, T.tau6) * 2
           - bracket_F(T.tau3, T.tau7 + T.tau8) * 2
           - bracket_F(T.tau4, T.tau7) * (2 * (n - 1)))
    return out + _comp(S.d(T.lam), 1, 1) * n


def _second_side(S, T, side):
    n = S.n
    if side == "V":
        f, lam_same, lam_other = T.f4, T.lam01, T.lam10
        vol, fx, sign = S.alpha, T.f6, 1
        want = (n - 1, 1)
        quad = (T.tau7, T.tau5, T.tau3, T.tau3)
    else:
        f, lam_same, lam_other = T.f8, T.lam10, T.lam01
        vol, fx, sign = S.beta, T.f2, -1
        want = (1, n - 1)
        quad = (T.tau3, T.tau1, T.tau7, T.tau7)
    d_hook = _comp(S.d(_raise_hook(f, vol)), *want) * (-1) ** (n - 1)
    x = s2_part(d_hook, n, side) if d_hook else Tensor.zero(S.dim, SYM2)
    x = x + symmetrize(_one_forms_tensor(lam_same, f)) * Fraction(sign * n, 2)
    x = x + _one_forms_tensor(f, f) * (n - 2)
    x = x * (n - 1)
    y = _comp(S.d(fx) + lam_other.wedge(fx) * (sign * n), *want)
    if y:
        x = x + s2_part(y, n, side)
    B = hook_tensorial(partial_map(quad[0]), quad[1]) + hook_tensorial(partial_map(quad[2]), quad[3])
    x = x - _block(ric_of(B, n), side)
    return symmetrize(x)


def ricci_second_formula(S, T):
    """([ric″]_{S²V}, [ric″]_{S²V*}) as e^{n+i}⊗e^{n+j} and e^i⊗e^j blocks."""
    return _second_side(S, T, "V"), _second_side(S, T, "V*")


def scalar_formula(S, T):
    n = S.n
    df4 = _comp(S.d(T.f4), 1, 1)
    dlam = _comp(S.d(T.lam), 1, 1)
    lam = lambda a: lambda_op(a, S, (1, 1)).scalar_value() if a else 0
    return (Fraction(10, n) * pair(T.tau1, T.tau5)
            - Fraction(2, n) * pair(T.tau2, T.tau6)
            - Fraction(2, n) * pair(T.tau3, T.tau7)
            + 4 * (n - 1) * lam(df4)
            - Fraction(2 * (n - 1) * (2 * n - 1), n) * pair(T.f4, T.f8)
            + n * lam(dlam))
