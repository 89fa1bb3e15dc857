"""Exact scalars, sparse alternating forms and sparse tensors.

Everything here is exact: coefficients are ``fractions.Fraction`` and a
stored coefficient is never zero.  Indices are 1-based, as in e^1 ... e^{2n}.
"""

import os
import re
from fractions import Fraction
from types import MappingProxyType

if os.environ.get("PARATORSION_PURE"):
    from . import _kernel_py as _k
    KERNEL = "python"
else:
    try:
        from . import _kernel as _k
        KERNEL = "compiled"
    except ImportError:  # extension not built
        from . import _kernel_py as _k
        KERNEL = "python"

merge_sign = _k.merge_sign


class ParseError(ValueError):
    """Malformed text; ``pos`` is the 0-based offset of the offending character."""

    def __init__(self, msg, pos=None, text=None):
        self.pos = pos
        self.text = text
        where = f" at position {pos}" if pos is not None else ""
        super().__init__(f"{msg}{where}")


def scalar(x):
    """Coerce ints, Fractions, 'p/q' strings or any Rational to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(int(x.numerator), int(x.denominator))


def fmt_scalar(c):
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def sort_sign(idx):
    """Sort an index tuple; return (sign, sorted) or (0, None) if an index repeats."""
    idx = list(idx)
    if len(set(idx)) != len(idx):
        return 0, None
    sign = 1
    # insertion sort counting transpositions; tuples are short
    for i in range(1, len(idx)):
        j = i
        while j > 0 and idx[j - 1] > idx[j]:
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(idx)


def fmt_indices(idx, dim):
    if dim >= 10:
        return ".".join(str(i) for i in idx)
    return "".join(str(i) for i in idx)


def _accumulate(out, key, c):
    v = out.get(key, 0) + c
    if v:
        out[key] = v
    else:
        out.pop(key, None)


class Form:
    """A sparse alternating form on a fixed coframe of length ``dim``."""

    __slots__ = ("dim", "deg", "_t")

    def __init__(self, dim, deg, terms=None):
        self.dim = dim
        self.deg = deg
        t = {}
        for key, c in dict(terms or {}).items():
            key = tuple(key)
            if len(key) != deg:
                raise ValueError(f"index tuple {key} has wrong length for a {deg}-form")
            if any(not 1 <= i <= dim for i in key):
                raise ValueError(f"index out of range in {key} (dim {dim})")
            s, skey = sort_sign(key)
            if s:
                _accumulate(t, skey, s * scalar(c))
        self._t = t

    @classmethod
    def _raw(cls, dim, deg, t):
        f = cls.__new__(cls)
        f.dim, f.deg, f._t = dim, deg, t
        return f

    @classmethod
    def basis(cls, dim, *idx, coeff=1):
        return cls(dim, len(idx), {idx: coeff})

    @classmethod
    def zero(cls, dim, deg):
        return cls._raw(dim, deg, {})

    @classmethod
    def const(cls, dim, c):
        c = scalar(c)
        return cls._raw(dim, 0, {(): c} if c else {})

    @property
    def terms(self):
        return MappingProxyType(self._t)

    def items(self):
        return self._t.items()

    def coeff(self, *idx):
        s, key = sort_sign(idx)
        return s * self._t.get(key, Fraction(0)) if s else Fraction(0)

    def scalar_value(self):
        if self.deg != 0:
            raise ValueError("not a 0-form")
        return self._t.get((), Fraction(0))

    def _check(self, other):
        if not isinstance(other, Form):
            raise TypeError("expected a Form")
        if other.dim != self.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __add__(self, other):
        if other == 0:
            return self
        self._check(other)
        if other.deg != self.deg:
            raise ValueError(f"degree mismatch: {self.deg} vs {other.deg}")
        t = dict(self._t)
        for k, c in other._t.items():
            _accumulate(t, k, c)
        return Form._raw(self.dim, self.deg, t)

    __radd__ = __add__

    def __neg__(self):
        return Form._raw(self.dim, self.deg, {k: -c for k, c in self._t.items()})

    def __sub__(self, other):
        if other == 0:
            return self
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, c):
        if isinstance(c, Form):
            return self.wedge(c)
        c = scalar(c)
        if not c:
            return Form.zero(self.dim, self.deg)
        return Form._raw(self.dim, self.deg, {k: v * c for k, v in self._t.items()})

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self * (1 / scalar(c))

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self._t
        if not isinstance(other, Form):
            return NotImplemented
        return self.dim == other.dim and self.deg == other.deg and self._t == other._t

    def __hash__(self):
        return hash((self.dim, self.deg, frozenset(self._t.items())))

    def __bool__(self):
        return bool(self._t)

    def wedge(self, other):
        self._check(other)
        return Form._raw(self.dim, self.deg + other.deg, _k.wedge_terms(self._t, other._t))

    def contract(self, index):
        """Interior product e_index ⌟ self, inserting in the first slot."""
        if self.deg == 0:
            return Form.zero(self.dim, 0)
        return Form._raw(self.dim, self.deg - 1, _k.contract_terms(index, self._t))

    def hook(self, *indices):
        """e_{j k ...} ⌟ self := ... e_k ⌟ (e_j ⌟ self)."""
        f = self
        for i in indices:
            f = f.contract(i)
        return f

    def bidegree_of(self, key):
        n = self.dim // 2
        p = sum(1 for i in key if i <= n)
        return p, len(key) - p

    def component(self, p, q):
        if p + q != self.deg:
            return Form.zero(self.dim, p + q)
        return Form._raw(self.dim, self.deg,
                         {k: c for k, c in self._t.items() if self.bidegree_of(k) == (p, q)})

    def components(self):
        out = {}
        for k, c in self._t.items():
            out.setdefault(self.bidegree_of(k), {})[k] = c
        return {pq: Form._raw(self.dim, self.deg, t) for pq, t in sorted(out.items())}

    def substitute(self, images):
        """Replace each e^i by the 1-form images[i-1] (a linear change of coframe)."""
        dim = images[0].dim
        acc = {}
        for key, c in self._t.items():
            f = Form.const(dim, c)
            for i in key:
                f = f.wedge(images[i - 1])
                if not f:
                    break
            for k, v in f._t.items():
                _accumulate(acc, k, v)
        return Form._raw(dim, self.deg, acc)

    def to_text(self):
        if not self._t:
            return "0"
        parts = []
        for key in sorted(self._t):
            c = self._t[key]
            idx = fmt_indices(key, self.dim)
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not key:
                body = fmt_scalar(a)
            elif a == 1:
                body = idx
            else:
                body = f"{fmt_scalar(a)}*{idx}"
            parts.append((sign, body))
        head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return head + "".join(s + b for s, b in parts[1:])

    __str__ = to_text

    def __repr__(self):
        return f"Form(dim={self.dim}, deg={self.deg}, {self.to_text()!r})"

    @classmethod
    def parse(cls, text, dim, deg=None):
        return parse_form(text, dim, deg)


_TERM = re.compile(r"\s*([+-]?)\s*(?:(\d+)(?:/(\d+))?\s*\*\s*)?([\d.]+)\s*")
_NUM = re.compile(r"\s*([+-]?)\s*(\d+)(?:/(\d+))?\s*$")


def _split_indices(group, dim, pos, text):
    if dim >= 10:
        parts = group.split(".")
        if any(not p for p in parts):
            raise ParseError("empty index in dotted group", pos, text)
        idx = tuple(int(p) for p in parts)
    else:
        if "." in group:
            raise ParseError("dotted indices need dimension >= 10", pos, text)
        idx = tuple(int(ch) for ch in group)
    for i in idx:
        if not 1 <= i <= dim:
            raise ParseError(f"index {i} out of range 1..{dim}", pos, text)
    return idx


def parse_form(text, dim, deg=None, offset=0, full_text=None):
    """Parse a signed sum of ``[p[/q]*]indexgroup`` terms (or ``0``)."""
    full = full_text if full_text is not None else text
    s = text.strip()
    if deg == 0:
        m = _NUM.match(s)
        if not m:
            raise ParseError("expected a rational constant", offset, full)
        c = Fraction(int(m.group(2)), int(m.group(3) or 1))
        return Form.const(dim, -c if m.group(1) == "-" else c)
    if s == "0":
        return Form.zero(dim, deg if deg is not None else 2)
    pos = 0
    terms = {}
    lead = len(text) - len(text.lstrip())
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ParseError("unexpected character", offset + lead + pos, full)
        sign, num, den, group = m.groups()
        if not first and not sign:
            raise ParseError("missing '+' or '-' between terms", offset + lead + pos, full)
        if den is not None and int(den) == 0:
            raise ParseError("zero denominator", offset + lead + pos, full)
        c = Fraction(int(num or 1), int(den or 1))
        if sign == "-":
            c = -c
        idx = _split_indices(group, dim, offset + lead + m.start(4), full)
        if deg is None:
            deg = len(idx)
        elif len(idx) != deg:
            raise ParseError(f"term has degree {len(idx)}, expected {deg}",
                             offset + lead + m.start(4), full)
        sg, key = sort_sign(idx)
        if sg:
            _accumulate(terms, key, sg * c)
        pos = m.end()
        first = False
    if first:
        raise ParseError("empty expression", offset, full)
    return Form._raw(dim, deg, terms)


def wedge(*forms):
    out = forms[0]
    for f in forms[1:]:
        out = out.wedge(f)
    return out


def contract(index, form):
    return form.contract(index)


def e(dim, *idx):
    """Basis form e^{idx}."""
    return Form.basis(dim, *idx)


def swap_index(i, n):
    """Metric identification index map: e^i <-> e_{n+i}, so i <-> i±n."""
    return i + n if i <= n else i - n


class Tensor:
    """Sparse tensor over a 2n-coframe.

    ``shape`` is a tuple of slot groups ``(kind, size, alternating)`` where kind
    is ``'d'`` (covector e^I) or ``'u'`` (vector e_I).  Alternating groups store
    strictly increasing index tuples, so e^i ⊗ e^{jk} lives in shape
    ``(('d', 1, False), ('d', 2, True))`` under key ``((i,), (j, k))``.
    """

    __slots__ = ("dim", "shape", "_t")

    def __init__(self, dim, shape, terms=None):
        self.dim = dim
        self.shape = tuple(tuple(g) for g in shape)
        t = {}
        for key, c in dict(terms or {}).items():
            sign, ckey = self._canon(key)
            if sign:
                _accumulate(t, ckey, sign * scalar(c))
        self._t = t

    def _canon(self, key):
        if len(key) != len(self.shape):
            raise ValueError(f"key {key} does not match shape {self.shape}")
        sign = 1
        out = []
        for (kind, size, alt), grp in zip(self.shape, key):
            grp = tuple(grp)
            if len(grp) != size:
                raise ValueError(f"group {grp} should have {size} indices")
            if any(not 1 <= i <= self.dim for i in grp):
                raise ValueError(f"index out of range in {grp}")
            if alt:
                s, grp = sort_sign(grp)
                if not s:
                    return 0, None
                sign *= s
            out.append(grp)
        return sign, tuple(out)

    @classmethod
    def _raw(cls, dim, shape, t):
        x = cls.__new__(cls)
        x.dim, x.shape, x._t = dim, shape, t
        return x

    @classmethod
    def zero(cls, dim, shape):
        return cls._raw(dim, tuple(tuple(g) for g in shape), {})

    @property
    def terms(self):
        return MappingProxyType(self._t)

    def items(self):
        return self._t.items()

    def get(self, *key):
        sign, ckey = self._canon(key)
        return sign * self._t.get(ckey, Fraction(0)) if sign else Fraction(0)

    def _check(self, other):
        if not isinstance(other, Tensor):
            raise TypeError("expected a Tensor")
        if other.dim != self.dim or other.shape != self.shape:
            raise ValueError(f"shape mismatch: {self.shape} vs {other.shape}")

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        self._check(other)
        t = dict(self._t)
        for k, c in other._t.items():
            _accumulate(t, k, c)
        return Tensor._raw(self.dim, self.shape, t)

    __radd__ = __add__

    def __neg__(self):
        return Tensor._raw(self.dim, self.shape, {k: -c for k, c in self._t.items()})

    def __sub__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        return self + (-other)

    def __mul__(self, c):
        c = scalar(c)
        if not c:
            return Tensor.zero(self.dim, self.shape)
        return Tensor._raw(self.dim, self.shape, {k: v * c for k, v in self._t.items()})

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self * (1 / scalar(c))

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self._t
        if not isinstance(other, Tensor):
            return NotImplemented
        return self.dim == other.dim and self.shape == other.shape and self._t == other._t

    def __hash__(self):
        return hash((self.dim, self.shape, frozenset(self._t.items())))

    def __bool__(self):
        return bool(self._t)

    def filter(self, pred):
        return Tensor._raw(self.dim, self.shape, {k: c for k, c in self._t.items() if pred(k)})

    def transpose(self):
        """Swap the two slot groups of a two-group tensor."""
        if len(self.shape) != 2:
            raise ValueError("transpose needs exactly two slot groups")
        shape = (self.shape[1], self.shape[0])
        return Tensor._raw(self.dim, shape, {(k[1], k[0]): c for k, c in self._t.items()})

    def is_symmetric(self):
        return len(self.shape) == 2 and self.shape[0] == self.shape[1] and self == self.transpose()

    def shape_text(self):
        return "|".join(("[" + kind * size + "]") if alt else kind * size
                        for kind, size, alt in self.shape)

    def to_text(self):
        head = self.shape_text() + ":"
        if not self._t:
            return head + "0"
        parts = []
        for key in sorted(self._t):
            c = self._t[key]
            idx = "|".join(fmt_indices(g, self.dim) for g in key)
            body = idx if abs(c) == 1 else f"{fmt_scalar(abs(c))}*{idx}"
            parts.append(("-" if c < 0 else "+") + body)
        out = "".join(parts)
        return head + (out[1:] if out[0] == "+" else out)

    __str__ = to_text

    def __repr__(self):
        return f"Tensor(dim={self.dim}, {self.to_text()!r})"

    @classmethod
    def parse(cls, text, dim):
        head, _, body = text.partition(":")
        shape = []
        for grp in head.split("|"):
            alt = grp.startswith("[")
            g = grp.strip("[]")
            if not g or set(g) - {"d", "u"} or len(set(g)) != 1:
                raise ParseError(f"bad slot group {grp!r}", 0, text)
            shape.append((g[0], len(g), alt))
        shape = tuple(shape)
        if body.strip() == "0":
            return cls.zero(dim, shape)
        terms = {}
        for m in re.finditer(r"([+-]?)(?:(\d+)(?:/(\d+))?\*)?([\d.|]+)", body):
            sign, num, den, idx = m.groups()
            c = Fraction(int(num or 1), int(den or 1)) * (-1 if sign == "-" else 1)
            groups = idx.split("|")
            key = tuple(_split_indices(g, dim, m.start(4), text) for g in groups)
            _accumulate(terms, key, c)
        return cls(dim, shape, terms)


def sym_product(a, b):
    """a ⊙ b = a⊗b + b⊗a for 1-forms, as a (0,2) tensor."""
    t = {}
    for (i,), x in a.items():
        for (j,), y in b.items():
            _accumulate(t, ((i,), (j,)), x * y)
            _accumulate(t, ((j,), (i,)), x * y)
    return Tensor._raw(a.dim, (("d", 1, False), ("d", 1, False)), t)


def tensor_product(a, b):
    """a ⊗ b for 1-forms, as a (0,2) tensor."""
    t = {((i,), (j,)): x * y for (i,), x in a.items() for (j,), y in b.items()}
    return Tensor._raw(a.dim, (("d", 1, False), ("d", 1, False)), t)


def symmetrize(t):
    """ε on T*⊗T*: η⊗γ ↦ η⊙γ, i.e. t + tᵀ."""
    return t + t.transpose()


def _swap_key(key, n, shape):
    sign = 1
    out = []
    for (kind, size, alt), grp in zip(shape, key):
        grp = tuple(swap_index(i, n) for i in grp)
        if alt:
            s, grp = sort_sign(grp)
            sign *= s
        out.append(grp)
    return sign, tuple(out)


def pair(a, b):
    """Natural pairing ⟨a, b⟩ through the identification e^i <-> e_{n+i}.

    Works for Forms and Tensors alike: each canonical basis element of ``a`` is
    matched with the index-swapped canonical element of ``b`` and the products
    of coefficients are summed.
    """
    if a.dim != b.dim:
        raise ValueError("dimension mismatch")
    n = a.dim // 2
    if isinstance(a, Form) and isinstance(b, Form):
        if a.deg != b.deg:
            raise ValueError("degree mismatch")
        total = Fraction(0)
        for key, c in a.items():
            s, k2 = sort_sign(tuple(swap_index(i, n) for i in key))
            total += s * c * b._t.get(k2, 0)
        return total
    if isinstance(a, Tensor) and isinstance(b, Tensor):
        if [(s, al) for _, s, al in a.shape] != [(s, al) for _, s, al in b.shape]:
            raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
        total = Fraction(0)
        for key, c in a.items():
            s, k2 = _swap_key(key, n, a.shape)
            total += s * c * b._t.get(k2, 0)
        return total
    raise TypeError("pair expects two Forms or two Tensors")
