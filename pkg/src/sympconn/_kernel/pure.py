"""Pure-Python reference kernels for sparse Fourier coefficient maps.

A coefficient map is a dict from mode tuples (length 2n, ints) to nonzero
GaussianRationals.  These loops dominate the runtime of every tensor
operation; the compiled twin in ``_fast.pyx`` implements the identical
contract and must produce identical dicts.
"""

from ..rationals import GaussianRational


def dict_add(a, b):
    """Mode-wise sum; zero results are dropped."""
    out = dict(a)
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


def dict_neg(a):
    return {m: -c for m, c in a.items()}


def dict_scale(a, c):
    """Scale by a GaussianRational (or plain rational) factor."""
    if not isinstance(c, GaussianRational):
        c = GaussianRational(c)
    if c.is_zero():
        return {}
    return {m: v * c for m, v in a.items()}


def dict_convolve(a, b):
    """Product of trigonometric polynomials: modes add, coefficients multiply."""
    if len(a) > len(b):
        a, b = b, a
    out = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = tuple(x + y for x, y in zip(m1, m2))
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


def dict_derivative(a, axis):
    """Flat derivative along one angle: coefficient at m becomes i*m[axis]*c."""
    out = {}
    for m, c in a.items():
        k = m[axis]
        if k:
            out[m] = c.times_i() * k
    return out


def dict_shift(a, delta):
    """Multiply by the single mode e^{i delta.x}: all modes translate by delta."""
    return {tuple(x + y for x, y in zip(m, delta)): c for m, c in a.items()}
