"""Pure-Python sparse exterior kernels.

Terms are dicts mapping strictly increasing index tuples to Fractions.
The compiled twin in ``_kernel.pyx`` exposes the same three functions.
"""


def merge_sign(a, b):
    """Return (sign, merged) for e^a ^ e^b, or (0, None) on a repeated index."""
    i = j = 0
    la, lb = len(a), len(b)
    out = []
    inv = 0
    while i < la and j < lb:
        x, y = a[i], b[j]
        if x == y:
            return 0, None
        if x < y:
            out.append(x)
            i += 1
        else:
            # y jumps over the remaining la - i entries of a
            inv += la - i
            out.append(y)
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return (-1 if inv & 1 else 1), tuple(out)


def wedge_terms(ta, tb):
    out = {}
    for ka, ca in ta.items():
        for kb, cb in tb.items():
            s, key = merge_sign(ka, kb)
            if not s:
                continue
            v = out.get(key, 0) + (ca * cb if s > 0 else -(ca * cb))
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return out


def contract_terms(index, ta):
    out = {}
    for key, c in ta.items():
        try:
            pos = key.index(index)
        except ValueError:
            continue
        rest = key[:pos] + key[pos + 1:]
        v = out.get(rest, 0) + (-c if pos & 1 else c)
        if v:
            out[rest] = v
        else:
            out.pop(rest, None)
    return out
