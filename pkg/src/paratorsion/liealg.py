"""Lie algebras given by structure constants, in Salamon notation.

An algebra of dimension m is stored as the m two-forms de^1, ..., de^m.
The bracket of the dual basis is recovered from de^K(X, Y) = -e^K([X, Y]).
"""

import re
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .exalg import Form, ParseError, fmt_scalar, parse_form, scalar


class JacobiError(ValueError):
    pass


class LieAlgebra:
    __slots__ = ("dim", "d1", "name", "_dcache")

    def __init__(self, d1, name=None):
        d1 = tuple(d1)
        if not d1:
            raise ValueError("empty algebra")
        dim = d1[0].dim
        for k, f in enumerate(d1, 1):
            if f.dim != dim or f.deg != 2:
                raise ValueError(f"de^{k} must be a 2-form in dimension {dim}")
        if len(d1) != dim:
            raise ValueError(f"expected {dim} entries, got {len(d1)}")
        self.dim = dim
        self.d1 = d1
        self.name = name
        self._dcache = {}

    @classmethod
    def abelian(cls, dim, name=None):
        return cls([Form.zero(dim, 2)] * dim, name or f"abelian-{dim}")

    def __eq__(self, other):
        return isinstance(other, LieAlgebra) and self.d1 == other.d1

    def __hash__(self):
        return hash(self.d1)

    def __repr__(self):
        return f"LieAlgebra({self.to_salamon()!r})"

    def to_salamon(self):
        return ",".join(f.to_text() for f in self.d1)

    def _d_monomial(self, key):
        out = self._dcache.get(key)
        if out is not None:
            return out
        dim = self.dim
        out = Form.zero(dim, len(key) + 1)
        for p, i in enumerate(key):
            left = Form.basis(dim, *key[:p]) if p else Form.const(dim, 1)
            right = Form.basis(dim, *key[p + 1:]) if p + 1 < len(key) else Form.const(dim, 1)
            term = left.wedge(self.d1[i - 1]).wedge(right)
            out = out - term if p & 1 else out + term
        self._dcache[key] = out
        return out

    def d(self, a):
        """Exterior derivative, extended from de^K as a degree +1 antiderivation."""
        if a.dim != self.dim:
            raise ValueError(f"dimension mismatch: {a.dim} vs {self.dim}")
        out = Form.zero(self.dim, a.deg + 1)
        for key, c in a.items():
            if key:
                out = out + self._d_monomial(key) * c
        return out

    def bracket_basis(self, i, j):
        """[e_i, e_j] as a coefficient list of length dim."""
        return [-f.coeff(i, j) for f in self.d1]

    def bracket(self, x, y):
        """Bracket of two vectors given as coefficient lists."""
        out = [Fraction(0)] * self.dim
        for i, xi in enumerate(x, 1):
            if not xi:
                continue
            for j, yj in enumerate(y, 1):
                if not yj or i == j:
                    continue
                c = xi * yj
                for k, f in enumerate(self.d1):
                    v = f.coeff(i, j)
                    if v:
                        out[k] -= c * v
        return out

    def structure_constants(self):
        """c[k][i][j] with [e_i, e_j] = sum_k c[k][i][j] e_k (0-based lists)."""
        m = self.dim
        c = [[[Fraction(0)] * m for _ in range(m)] for _ in range(m)]
        for k, f in enumerate(self.d1):
            for (i, j), v in f.items():
                c[k][i - 1][j - 1] = -v
                c[k][j - 1][i - 1] = v
        return c


def exterior_d(L, a):
    return L.d(a)


def _split_entries(text):
    """Split on top-level commas, keeping the offset of each entry."""
    out = []
    start = 0
    for m in re.finditer(",", text):
        out.append((start, text[start:m.start()]))
        start = m.end()
    out.append((start, text[start:]))
    return out


def parse_salamon(text, name=None, dim=None):
    text = text.strip()
    if text.startswith("(") and text.endswith(")"):
        text = text[1:-1]
    entries = _split_entries(text)
    m = dim or len(entries)
    if len(entries) != m:
        raise ParseError(f"expected {m} entries, found {len(entries)}", 0, text)
    d1 = []
    for off, raw in entries:
        if not raw.strip():
            raise ParseError("empty entry", off, text)
        d1.append(parse_form(raw, m, 2, offset=off, full_text=text))
    return LieAlgebra(d1, name)


@dataclass(frozen=True)
class JacobiReport:
    ok: bool
    witness: tuple = None  # (K, d(de^K))


def check_jacobi(L):
    for k, f in enumerate(L.d1, 1):
        dd = L.d(f)
        if dd:
            return JacobiReport(False, (k, dd))
    return JacobiReport(True)


def _basis_of_span(vectors, m):
    vs = [v for v in vectors if any(v)]
    if not vs:
        return []
    red, piv = linalg.rref(vs, m)
    return red[:len(piv)]


def is_nilpotent(L):
    m = L.dim
    basis = [[Fraction(int(i == j)) for i in range(m)] for j in range(m)]
    current, prev = basis, m
    # lower central series; it must shrink strictly until it dies
    for _ in range(m + 1):
        current = _basis_of_span([L.bracket(x, y) for x in basis for y in current], m)
        if not current:
            return True
        if len(current) == prev:
            return False
        prev = len(current)
    return False


def is_unimodular(L):
    c = L.structure_constants()
    m = L.dim
    return all(sum(c[i][k][i] for i in range(m)) == 0 for k in range(m))


def algebra_flags(L):
    return {"nilpotent": is_nilpotent(L), "unimodular": is_unimodular(L)}


def coframe_images(M):
    """Old coframe in terms of the new one, e^b = sum_c Minv[b][c] ẽ^c."""
    inv = linalg.inverse([[scalar(x) for x in row] for row in M])
    m = len(M)
    return [Form(m, 1, {(c + 1,): inv[b][c] for c in range(m) if inv[b][c]}) for b in range(m)]


def change_coframe(L, M, name=None):
    """Re-express L in the coframe ẽ^a = sum_b M[a][b] e^b."""
    m = L.dim
    if len(M) != m or any(len(r) != m for r in M):
        raise ValueError(f"coframe matrix must be {m}x{m}")
    M = [[scalar(x) for x in row] for row in M]
    images = coframe_images(M)
    d1 = []
    for a in range(m):
        f = Form.zero(m, 2)
        for b in range(m):
            if M[a][b]:
                f = f + L.d1[b] * M[a][b]
        d1.append(f.substitute(images))
    return LieAlgebra(d1, name or L.name)


def direct_sum(A, B, name=None):
    m = A.dim + B.dim
    d1 = [Form(m, 2, f.terms) for f in A.d1]
    for f in B.d1:
        d1.append(Form(m, 2, {(i + A.dim, j + A.dim): c for (i, j), c in f.items()}))
    return LieAlgebra(d1, name)


# -- parameterised templates -------------------------------------------------

_PARAM_TERM = re.compile(r"([+-]?)((?:[^\s+*-]+\*)*)([\d.]+)")
PARAM_ALIASES = {"λ": "lambda", "μ": "mu", "l": "lambda", "m": "mu"}


def instantiate(template, params):
    """Substitute rational parameter values into a Salamon template.

    Each term is ``[sign]factor*factor*...*indexgroup`` where a factor is a
    rational or a parameter name; e.g. ``-lambda*mu*38``.
    """
    params = {PARAM_ALIASES.get(k, k): scalar(v) for k, v in params.items()}
    out = []
    for off, raw in _split_entries(template.strip()):
        raw = raw.replace(" ", "")
        if raw == "0":
            out.append("0")
            continue
        pos = 0
        pieces = []
        while pos < len(raw):
            m = _PARAM_TERM.match(raw, pos)
            if not m or m.end() == pos:
                raise ParseError("bad template term", off + pos, template)
            sign, factors, idx = m.groups()
            c = Fraction(-1 if sign == "-" else 1)
            for fac in filter(None, factors.split("*")):
                key = PARAM_ALIASES.get(fac, fac)
                if key in params:
                    c *= params[key]
                else:
                    try:
                        c *= Fraction(fac)
                    except ValueError:
                        raise ParseError(f"unknown parameter {fac!r}", off + pos, template) from None
            if c:
                pieces.append(("-" if c < 0 else "+") + f"{fmt_scalar(abs(c))}*{idx}")
            pos = m.end()
        body = "".join(pieces)
        out.append(body.lstrip("+") if body else "0")
    return ",".join(out)


# -- algebra files -------------------------------------------------------------

@dataclass
class AlgebraFile:
    algebra: LieAlgebra
    coframe: list = None
    template: str = None
    params: tuple = ()


def _parse_matrix(lines):
    return [[Fraction(tok) for tok in line.replace(",", " ").split()] for line in lines]


def parse_algebra_text(text, params=None):
    """Parse the ``name:/dim:/salamon:/d e^K =/coframe:`` file format."""
    name = None
    dim = None
    salamon = None
    dlines = {}
    coframe_lines = None
    for lineno, line in enumerate(text.splitlines(), 1):
        s = line.split("#", 1)[0].strip()
        if not s:
            continue
        if coframe_lines is not None and not re.match(r"^[a-z_]+\s*:", s):
            coframe_lines.append(s)
            continue
        key, sep, val = s.partition(":")
        key = key.strip().lower()
        if sep and key == "name":
            name = val.strip()
        elif sep and key == "dim":
            dim = int(val)
        elif sep and key == "salamon":
            salamon = val.strip()
        elif sep and key == "coframe":
            coframe_lines = [val.strip()] if val.strip() else []
        else:
            m = re.match(r"^d\s*e\^?\{?(\d+)\}?\s*=\s*(.+)$", s)
            if not m:
                raise ParseError(f"unrecognised line {lineno}: {s!r}", 0, text)
            dlines[int(m.group(1))] = m.group(2)
    template = None
    if salamon is None:
        if not dlines:
            raise ParseError("no structure constants found", 0, text)
        m = dim or max(dlines)
        salamon = ",".join(dlines.get(k, "0") for k in range(1, m + 1))
    if re.search(r"[A-Za-zλμ]", salamon):
        template = salamon
        if params is None:
            raise ParseError("template needs parameter values", 0, text)
        salamon = instantiate(template, params)
    L = parse_salamon(salamon, name, dim)
    coframe = _parse_matrix(coframe_lines) if coframe_lines else None
    return AlgebraFile(L, coframe, template, tuple(sorted((params or {}).items())))


def split_families(text):
    """Split a multi-family file on ``family: <id>`` headers."""
    fams = {}
    cur = None
    for line in text.splitlines():
        m = re.match(r"^\s*family\s*:\s*(\S+)", line)
        if m:
            cur = m.group(1)
            fams[cur] = []
        elif cur is not None:
            fams[cur].append(line)
    return {k: "\n".join(v) for k, v in fams.items()}
