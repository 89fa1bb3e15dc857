# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled sparse exterior kernels; same API as _kernel_py."""


cpdef tuple merge_sign(tuple a, tuple b):
    cdef Py_ssize_t i = 0, j = 0
    cdef Py_ssize_t la = len(a), lb = len(b)
    cdef long x, y
    cdef long inv = 0
    cdef list out = []
    while i < la and j < lb:
        x = a[i]
        y = b[j]
        if x == y:
            return 0, None
        if x < y:
            out.append(x)
            i += 1
        else:
            inv += la - i
            out.append(y)
            j += 1
    while i < la:
        out.append(a[i])
        i += 1
    while j < lb:
        out.append(b[j])
        j += 1
    return (-1 if inv & 1 else 1), tuple(out)


cpdef dict wedge_terms(dict ta, dict tb):
    cdef dict out = {}
    cdef int s
    for ka, ca in ta.items():
        for kb, cb in tb.items():
            s, key = merge_sign(ka, kb)
            if s == 0:
                continue
            v = out.get(key, 0) + (ca * cb if s > 0 else -(ca * cb))
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return out


cpdef dict contract_terms(long index, dict ta):
    cdef dict out = {}
    cdef Py_ssize_t pos, k, m
    cdef tuple key
    for key, c in ta.items():
        m = len(key)
        pos = -1
        for k in range(m):
            if key[k] == index:
                pos = k
                break
        if pos < 0:
            continue
        rest = key[:pos] + key[pos + 1:]
        v = out.get(rest, 0) + (-c if pos & 1 else c)
        if v:
            out[rest] = v
        else:
            out.pop(rest, None)
    return out
