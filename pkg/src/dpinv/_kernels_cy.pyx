# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels; semantics identical to dpinv._kernels_py.

Coefficients and packed monomial keys are arbitrary-precision Python ints,
so the win over the pure version is loop and dict-protocol overhead, not
arithmetic.  Keep the two modules in lockstep: tests/test_kernels.py checks
them against each other on random inputs.
"""


def poly_mul(dict a, dict b):
    """Multiply two packed-key polynomial dicts."""
    cdef dict out = {}
    if not a or not b:
        return out
    if len(a) > len(b):
        a, b = b, a
    cdef object ka, va, kb, vb, k, c
    for ka, va in a.items():
        for kb, vb in b.items():
            k = ka + kb
            c = out.get(k)
            if c is None:
                out[k] = va * vb
            else:
                c = c + va * vb
                if c:
                    out[k] = c
                else:
                    del out[k]
    return out


def poly_add_scaled(dict acc, dict b, s):
    """In-place acc += s*b on packed-key polynomial dicts; returns acc."""
    cdef object k, v, c
    if s:
        for k, v in b.items():
            c = acc.get(k)
            if c is None:
                acc[k] = s * v
            else:
                c = c + s * v
                if c:
                    acc[k] = c
                else:
                    del acc[k]
    return acc


def bareiss_rank(rows):
    """Rank over Q of an integer matrix via fraction-free elimination."""
    cdef list m = [list(r) for r in rows]
    cdef Py_ssize_t nrows = len(m)
    if nrows == 0:
        return 0
    cdef Py_ssize_t ncols = len(<list>m[0])
    cdef Py_ssize_t rank = 0, col, i, j, piv
    cdef object prev = 1
    cdef object p, a
    cdef list mi, top
    for col in range(ncols):
        piv = -1
        for i in range(rank, nrows):
            if (<list>m[i])[col]:
                piv = i
                break
        if piv < 0:
            continue
        if piv != rank:
            m[rank], m[piv] = m[piv], m[rank]
        top = <list>m[rank]
        p = top[col]
        for i in range(rank + 1, nrows):
            mi = <list>m[i]
            a = mi[col]
            for j in range(col + 1, ncols):
                mi[j] = (p * mi[j] - a * top[j]) // prev
            mi[col] = 0
        prev = p
        rank += 1
        if rank == nrows:
            break
    return rank
