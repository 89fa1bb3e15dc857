"""SL(n,R)-structures given by an adapted coframe.

In the adapted coframe V = span(e_1..e_n), H = span(e_{n+1}..e_{2n}) and

    F = e^{1,n+1} + ... + e^{n,2n},   α = e^{1..n},   β = e^{n+1..2n},
    g = Σ e^i ⊙ e^{n+i}.
"""

from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from . import linalg
from .exalg import Form, Tensor, scalar
from .liealg import LieAlgebra, change_coframe, check_jacobi


class PreconditionError(ValueError):
    pass


class NotDirectError(ValueError):
    """The decomposition σ = [σ]₀ + F∧Λσ is not direct in this bidegree."""


SYM2 = (("d", 1, False), ("d", 1, False))


class Structure:
    __slots__ = ("algebra", "source", "coframe", "n", "dim", "F", "alpha", "beta")

    def __init__(self, algebra, coframe=None, check=True):
        if algebra.dim % 2:
            raise PreconditionError(f"odd dimension {algebra.dim}")
        if check:
            rep = check_jacobi(algebra)
            if not rep.ok:
                raise PreconditionError(f"Jacobi identity fails at de^{rep.witness[0]}")
        self.source = algebra
        self.coframe = None if coframe is None else [[scalar(x) for x in r] for r in coframe]
        self.algebra = algebra if coframe is None else change_coframe(algebra, self.coframe)
        self.dim = algebra.dim
        self.n = n = algebra.dim // 2
        self.F = fundamental_form(n)
        self.alpha = Form.basis(self.dim, *range(1, n + 1))
        self.beta = Form.basis(self.dim, *range(n + 1, 2 * n + 1))

    def __repr__(self):
        return f"Structure({self.algebra.to_salamon()!r}, n={self.n})"

    def d(self, a):
        return self.algebra.d(a)

    @property
    def metric(self):
        return metric_tensor(self.n)

    def K(self, v):
        """K = id_V - id_H on a coefficient list."""
        n = self.n
        return [x if i < n else -x for i, x in enumerate(v)]

    def to_text(self):
        lines = []
        if self.source.name:
            lines.append(f"name: {self.source.name}")
        lines.append(f"dim: {self.dim}")
        lines.append(f"salamon: {self.source.to_salamon()}")
        if self.coframe is not None:
            lines.append("coframe:")
            lines.extend(" ".join(str(x) for x in row) for row in self.coframe)
        return "\n".join(lines) + "\n"


def standard_structure(L, coframe=None):
    return Structure(L, coframe)


@lru_cache(maxsize=None)
def fundamental_form(n):
    return Form(2 * n, 2, {(i, n + i): 1 for i in range(1, n + 1)})


@lru_cache(maxsize=None)
def metric_tensor(n):
    t = {}
    for i in range(1, n + 1):
        t[((i,), (n + i,))] = 1
        t[((n + i,), (i,))] = 1
    return Tensor(2 * n, SYM2, t)


def type_decompose(a, S=None):
    return a.components()


def trace_contract(a, n):
    """C(σ) = Σ_i e_i ⌟ (e_{n+i} ⌟ σ)."""
    out = Form.zero(a.dim, max(a.deg - 2, 0))
    for i in range(1, n + 1):
        out = out + a.contract(n + i).contract(i)
    return out


def bidegree(a):
    """The single bidegree of a nonzero homogeneous form, else None."""
    comps = a.components()
    if len(comps) == 1:
        return next(iter(comps))
    return None


def bidegree_basis(n, p, q):
    return [v + h for v in combinations(range(1, n + 1), p)
            for h in combinations(range(n + 1, 2 * n + 1), q)]


LAMBDA_BIDEGREES = {(1, 1), (2, 1), (1, 2), (2, 2)}


@lru_cache(maxsize=None)
def _lambda_solver(n, r, s):
    """Inverse of C∘(F∧) on Λ^{r-1,s-1}, or None if it is singular."""
    dim = 2 * n
    F = fundamental_form(n)
    basis = bidegree_basis(n, r - 1, s - 1)
    index = {k: j for j, k in enumerate(basis)}
    cols = []
    for k in basis:
        img = trace_contract(F.wedge(Form.basis(dim, *k) if k else Form.const(dim, 1)), n)
        col = [Fraction(0)] * len(basis)
        for key, c in img.items():
            col[index[key]] = c
        cols.append(col)
    m = len(basis)
    mat = [[cols[j][i] for j in range(m)] for i in range(m)]
    if linalg.rank(mat, m) < m:
        return basis, index, None
    return basis, index, linalg.inverse(mat)


def lambda_op(a, S=None, bideg=None):
    """Λ: the unique γ with a - F∧γ killed by the trace contraction C.

    Only bidegrees (1,1), (2,1), (1,2), (2,2) are supported; the zero form
    passes through.  Raises NotDirectError if the decomposition is not direct.
    """
    n = a.dim // 2
    if bideg is None:
        bideg = bidegree(a)
    if bideg is None:
        if not a:
            return Form.zero(a.dim, max(a.deg - 2, 0))
        out = Form.zero(a.dim, a.deg - 2)
        for pq, comp in a.components().items():
            out = out + lambda_op(comp, S, pq)
        return out
    r, s = bideg
    if (r, s) not in LAMBDA_BIDEGREES:
        raise ValueError(f"Λ is not supported on bidegree ({r},{s})")
    basis, index, inv = _lambda_solver(n, r, s)
    if inv is None:
        raise NotDirectError(f"Λ^{{{r},{s}}} = Λ₀ ⊕ F∧Λ^{{{r-1},{s-1}}} is not direct for n={n}")
    rhs = [Fraction(0)] * len(basis)
    for key, c in trace_contract(a, n).items():
        rhs[index[key]] = c
    gamma = {}
    for i, row in enumerate(inv):
        v = sum(x * y for x, y in zip(row, rhs) if x and y)
        if v:
            gamma[basis[i]] = v
    return Form(a.dim, a.deg - 2, gamma)


def lambda_closed(a, n=None):
    """Closed form on Λ^{2,1} + Λ^{1,2}: Λγ = -1/(n-1) e_i ⌟ e_{n+i} ⌟ γ."""
    n = n or a.dim // 2
    return trace_contract(a, n) * Fraction(-1, n - 1)


def primitive_part(a, S=None):
    n = a.dim // 2
    return a - fundamental_form(n).wedge(lambda_op(a, S))


def split_F_trace(a, S=None):
    """(1,1)-form a = trace_free + scale·F with Λ(trace_free) = 0."""
    if a and bidegree(a) != (1, 1):
        raise ValueError("split_F_trace needs a (1,1)-form")
    if not a:
        return a, Fraction(0)
    scale = lambda_op(a, S, (1, 1)).scalar_value()
    return a - fundamental_form(a.dim // 2) * scale, scale


@lru_cache(maxsize=None)
def _s2_images(n, side):
    """Map from the unique monomial of each image to (i, j, sign)."""
    dim = 2 * n
    alpha = Form.basis(dim, *range(1, n + 1))
    beta = Form.basis(dim, *range(n + 1, 2 * n + 1))
    out = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if side == "V":
                img = alpha.contract(i).wedge(Form.basis(dim, n + j))
            else:
                img = beta.contract(n + i).wedge(Form.basis(dim, j))
            (key, c), = img.items()
            out[key] = (i, j, c)
    return out


def unidentify_S2(a, n, side):
    """Invert v⊗w ↦ (v⌟α)∧w (side 'V') or (v⌟β)∧w (side 'V*') into T*⊗T*."""
    want = (n - 1, 1) if side == "V" else (1, n - 1)
    imgs = _s2_images(n, side)
    t = {}
    for key, c in a.items():
        if a.bidegree_of(key) != want:
            raise ValueError(f"identify_S2 side {side} needs bidegree {want}")
        i, j, sg = imgs[key]
        if side == "V":
            t[((n + i,), (n + j,))] = c / sg
        else:
            t[((i,), (j,))] = c / sg
    return Tensor(2 * n, SYM2, t)


def identify_S2(a, S, side):
    """Preimage in V⊗V (or V*⊗V*), symmetrized with ⊙ (so v⊗w ↦ v⊙w)."""
    n = S.n if S is not None else a.dim // 2
    x = unidentify_S2(a, n, side)
    return x + x.transpose()


def s2_part(a, n, side):
    """[a]_{S²V} (or S²V*): symmetric part ½(x + xᵀ) of the preimage."""
    x = unidentify_S2(a, n, side)
    return (x + x.transpose()) * Fraction(1, 2)


def neg_v_coframe(n):
    """Coframe -e^1..-e^n, e^{n+1}..e^{2n}."""
    return [[Fraction(-1 if i == j and i < n else int(i == j)) for j in range(2 * n)]
            for i in range(2 * n)]


def swap_coframe(n):
    """Coframe e^{n+1}..e^{2n}, e^1..e^n."""
    m = 2 * n
    return [[Fraction(int(j == (i + n) % m)) for j in range(m)] for i in range(m)]
