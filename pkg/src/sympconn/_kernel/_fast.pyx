# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of ``pure.py``.

Coefficients stay exact Python objects (GaussianRational over Fraction);
the win comes from compiling the dict/tuple traversal and dispatch of the
convolution loops, which dominate every tensor product.  Results must be
bitwise identical to the pure kernels.
"""

from ..rationals import GaussianRational


def dict_add(dict a, dict b):
    cdef dict out = dict(a)
    for m, c in b.items():
        cur = out.get(m)
        if cur is None:
            out[m] = c
        else:
            s = cur + c
            if s.is_zero():
                del out[m]
            else:
                out[m] = s
    return out


def dict_neg(dict a):
    cdef dict out = {}
    for m, c in a.items():
        out[m] = -c
    return out


def dict_scale(dict a, c):
    if not isinstance(c, GaussianRational):
        c = GaussianRational(c)
    cdef dict out = {}
    if c.is_zero():
        return out
    for m, v in a.items():
        out[m] = v * c
    return out


def dict_convolve(dict a, dict b):
    cdef dict out = {}
    cdef Py_ssize_t i, n
    if len(a) > len(b):
        a, b = b, a
    for m1, c1 in a.items():
        n = len(<tuple> m1)
        for m2, c2 in b.items():
            m = tuple([(<tuple> m1)[i] + (<tuple> m2)[i] for i in range(n)])
            p = c1 * c2
            cur = out.get(m)
            if cur is None:
                out[m] = p
            else:
                s = cur + p
                if s.is_zero():
                    del out[m]
                else:
                    out[m] = s
    return out


def dict_derivative(dict a, Py_ssize_t axis):
    cdef dict out = {}
    for m, c in a.items():
        k = (<tuple> m)[axis]
        if k:
            out[m] = c.times_i() * k
    return out


def dict_shift(dict a, tuple delta):
    cdef dict out = {}
    cdef Py_ssize_t i, n = len(delta)
    for m, c in a.items():
        out[tuple([(<tuple> m)[i] + delta[i] for i in range(n)])] = c
    return out
