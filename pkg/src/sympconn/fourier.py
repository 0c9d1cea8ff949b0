"""Trigonometric-polynomial scalars and covariant tensor fields on the torus.

Scalars are finite Fourier sums f(x) = sum_m c_m e^{i m.x} with Gaussian
rational coefficients and modes m in Z^{2n} (angle period 2 pi).  Real
fields satisfy c_{-m} = conj(c_m); the public constructors enforce this,
and all documented operations preserve it.  Complex scalars (single modes
e^{i x^a}) appear internally as test functions for logarithm extraction.

Indices are 0-based internally; serialized files use 1-based indices.
"""

from __future__ import annotations

from itertools import permutations, product
from math import factorial

from . import _kernel as K
from .errors import ConfigurationError, InputError
from .linalg import identity, inverse, is_zero_matrix, mat_mul, mat_neg, matrix, transpose
from .rationals import Fraction, GaussianRational, GR_ONE


class SymplecticData:
    """Even dimension 2n >= 4 with a constant antisymmetric invertible omega.

    Conventions: omega_lo is omega_{ab}; omega_hi is the matrix omega^{ab}
    with sum_q omega^{pq} omega_{ql} = delta^p_l.
    """

    __slots__ = ("dim", "omega_lo", "omega_hi")

    def __init__(self, omega_lo):
        omega_lo = matrix(omega_lo)
        dim = len(omega_lo)
        if dim < 4 or dim % 2:
            raise ConfigurationError("dimension must be even and >= 4")
        if any(len(row) != dim for row in omega_lo):
            raise ConfigurationError("omega must be square")
        if omega_lo != mat_neg(transpose(omega_lo)):
            raise ConfigurationError("omega must be antisymmetric")
        self.dim = dim
        self.omega_lo = omega_lo
        self.omega_hi = inverse(omega_lo)

    @classmethod
    def standard(cls, dim):
        """Block form omega(e_i, e_{n+i}) = 1 for i = 0..n-1."""
        n = dim // 2
        rows = [[0] * dim for _ in range(dim)]
        for i in range(n):
            rows[i][n + i] = 1
            rows[n + i][i] = -1
        return cls(rows)

    @property
    def n(self):
        return self.dim // 2

    def is_standard(self):
        return self.omega_lo == SymplecticData.standard(self.dim).omega_lo

    def dual_basis(self):
        """Vectors X_j with omega(e_i, X_j) = delta_ij (columns of omega_lo^{-1})."""
        hi = self.omega_hi
        return [tuple(hi[p][j] for p in range(self.dim)) for j in range(self.dim)]

    def is_symplectic_matrix(self, c):
        """C^T omega C = omega for the active omega."""
        return mat_mul(mat_mul(transpose(c), self.omega_lo), c) == self.omega_lo

    def __eq__(self, other):
        return isinstance(other, SymplecticData) and self.omega_lo == other.omega_lo

    def __hash__(self):
        return hash(self.omega_lo)


def _as_coeff(c):
    if isinstance(c, GaussianRational):
        return c
    return GaussianRational(c)


class FourierScalar:
    """Sparse trigonometric polynomial; immutable after construction."""

    __slots__ = ("dim", "coeffs")

    def __init__(self, dim, coeffs=None, _validated=False):
        self.dim = dim
        if coeffs is None:
            coeffs = {}
        if not _validated:
            clean = {}
            for m, c in coeffs.items():
                m = tuple(int(x) for x in m)
                if len(m) != dim:
                    raise ConfigurationError("mode length != dim")
                c = _as_coeff(c)
                if not c.is_zero():
                    clean[m] = c
            coeffs = clean
        self.coeffs = coeffs

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, dim):
        return cls(dim, {}, _validated=True)

    @classmethod
    def constant(cls, dim, value):
        return cls(dim, {(0,) * dim: value})

    @classmethod
    def from_modes(cls, dim, coeffs):
        """Public constructor for real fields; checks the reality constraint."""
        f = cls(dim, coeffs)
        if not f.is_real():
            raise InputError("coefficients violate reality: c(-m) != conj(c(m))")
        return f

    @classmethod
    def cosine(cls, dim, mode, amplitude=1):
        """amplitude * cos(m.x)."""
        a = Fraction(amplitude) / 2
        mode = tuple(mode)
        neg = tuple(-x for x in mode)
        return cls(dim, {mode: GaussianRational(a), neg: GaussianRational(a)})

    @classmethod
    def sine(cls, dim, mode, amplitude=1):
        """amplitude * sin(m.x) = amplitude (e^{imx} - e^{-imx}) / 2i."""
        a = Fraction(amplitude) / 2
        mode = tuple(mode)
        neg = tuple(-x for x in mode)
        return cls(dim, {mode: GaussianRational(0, -a), neg: GaussianRational(0, a)})

    @classmethod
    def single_mode(cls, dim, mode, coeff=GR_ONE):
        """e^{i m.x} (complex; internal use)."""
        return cls(dim, {tuple(mode): coeff})

    # -- algebra -------------------------------------------------------------

    def _check(self, other):
        if self.dim != other.dim:
            raise ConfigurationError("scalar dim mismatch")

    def __add__(self, other):
        self._check(other)
        return FourierScalar(self.dim, K.dict_add(self.coeffs, other.coeffs), _validated=True)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return FourierScalar(self.dim, K.dict_neg(self.coeffs), _validated=True)

    def __mul__(self, other):
        if isinstance(other, FourierScalar):
            self._check(other)
            return FourierScalar(
                self.dim, K.dict_convolve(self.coeffs, other.coeffs), _validated=True
            )
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c):
        return FourierScalar(self.dim, K.dict_scale(self.coeffs, c), _validated=True)

    def derivative(self, axis):
        """Flat derivative d/dx^axis, mode-wise multiplication by i m_axis."""
        if not 0 <= axis < self.dim:
            raise ConfigurationError(f"derivative axis {axis} out of range")
        return FourierScalar(self.dim, K.dict_derivative(self.coeffs, axis), _validated=True)

    def shift_mode(self, delta):
        """Multiply by e^{i delta.x}."""
        return FourierScalar(self.dim, K.dict_shift(self.coeffs, tuple(delta)), _validated=True)

    def conjugate(self):
        return FourierScalar(
            self.dim,
            {tuple(-x for x in m): c.conjugate() for m, c in self.coeffs.items()},
            _validated=True,
        )

    # -- queries -------------------------------------------------------------

    def coeff(self, mode):
        return self.coeffs.get(tuple(mode), GaussianRational(0))

    def is_zero(self):
        return not self.coeffs

    def is_real(self):
        for m, c in self.coeffs.items():
            neg = tuple(-x for x in m)
            if self.coeffs.get(neg) != c.conjugate():
                return False
        return True

    def is_constant(self):
        return all(not any(m) for m in self.coeffs)

    def constant_part(self):
        """The zero-mode coefficient."""
        return self.coeffs.get((0,) * self.dim, GaussianRational(0))

    def zero_mean(self):
        """The field minus its zero mode."""
        c = dict(self.coeffs)
        c.pop((0,) * self.dim, None)
        return FourierScalar(self.dim, c, _validated=True)

    def sorted_modes(self):
        return sorted(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, FourierScalar):
            return NotImplemented
        return self.dim == other.dim and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.dim, frozenset(self.coeffs.items())))

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        terms = ", ".join(f"{m}: {c.re}+{c.im}i" for m, c in sorted(self.coeffs.items()))
        return f"FourierScalar({self.dim}, {{{terms}}})"


class TensorField:
    """Sparse covariant tensor field with FourierScalar components.

    symmetry_tag is advisory metadata ('none', 'fully_symmetric',
    'curvature_type'); `check_symmetry` verifies it exactly.
    """

    __slots__ = ("dim", "rank", "components", "symmetry_tag")

    def __init__(self, dim, rank, components=None, symmetry_tag="none", _validated=False):
        self.dim = dim
        self.rank = rank
        comps = {}
        if components:
            for idx, f in components.items():
                idx = tuple(idx)
                if not _validated:
                    if len(idx) != rank or any(not 0 <= a < dim for a in idx):
                        raise ConfigurationError(f"bad multi-index {idx}")
                    if f.dim != dim:
                        raise ConfigurationError("component dim mismatch")
                if f.coeffs:
                    comps[idx] = f
        self.components = comps
        self.symmetry_tag = symmetry_tag

    @classmethod
    def zero(cls, dim, rank, symmetry_tag="none"):
        return cls(dim, rank, {}, symmetry_tag, _validated=True)

    @classmethod
    def from_constant(cls, dim, rank, array, symmetry_tag="none"):
        """Dense rank-r nested sequence of rationals -> constant tensor field."""
        comps = {}
        for idx in product(range(dim), repeat=rank):
            v = array
            for a in idx:
                v = v[a]
            v = Fraction(v)
            if v:
                comps[idx] = FourierScalar.constant(dim, v)
        return cls(dim, rank, comps, symmetry_tag, _validated=True)

    def get(self, idx):
        return self.components.get(tuple(idx), FourierScalar.zero(self.dim))

    def _check(self, other):
        if self.dim != other.dim or self.rank != other.rank:
            raise ConfigurationError("tensor rank/dim mismatch")

    def _tag_after(self, other):
        return self.symmetry_tag if self.symmetry_tag == other.symmetry_tag else "none"

    def __add__(self, other):
        self._check(other)
        comps = dict(self.components)
        for idx, f in other.components.items():
            s = comps[idx] + f if idx in comps else f
            if s.is_zero():
                comps.pop(idx, None)
            else:
                comps[idx] = s
        return TensorField(self.dim, self.rank, comps, self._tag_after(other), _validated=True)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return TensorField(
            self.dim, self.rank,
            {i: -f for i, f in self.components.items()},
            self.symmetry_tag, _validated=True,
        )

    def scale(self, c):
        comps = {i: f.scale(c) for i, f in self.components.items()}
        return TensorField(self.dim, self.rank, comps, self.symmetry_tag, _validated=True)

    def mul_scalar(self, g: FourierScalar):
        comps = {i: f * g for i, f in self.components.items()}
        return TensorField(self.dim, self.rank, comps, "none", _validated=True)

    def outer(self, other):
        """Tensor product, indices of self first."""
        if self.dim != other.dim:
            raise ConfigurationError("tensor dim mismatch")
        comps = {}
        for i1, f1 in self.components.items():
            for i2, f2 in other.components.items():
                p = f1 * f2
                if not p.is_zero():
                    comps[i1 + i2] = p
        return TensorField(self.dim, self.rank + other.rank, comps, "none", _validated=True)

    def partial(self, axis):
        """Same-rank flat derivative of every component."""
        comps = {}
        for idx, f in self.components.items():
            d = f.derivative(axis)
            if not d.is_zero():
                comps[idx] = d
        return TensorField(self.dim, self.rank, comps, "none", _validated=True)

    def grad(self, sdata=None):
        """Flat covariant derivative: rank+1 with the new index in slot 0."""
        comps = {}
        for a in range(self.dim):
            for idx, f in self.components.items():
                d = f.derivative(a)
                if not d.is_zero():
                    comps[(a,) + idx] = d
        return TensorField(self.dim, self.rank + 1, comps, "none", _validated=True)

    def contract_omega_hi(self, sdata: SymplecticData, pos1, pos2):
        """Contract two covariant slots with omega^{ab} (a at pos1, b at pos2)."""
        if pos1 == pos2 or not (0 <= pos1 < self.rank and 0 <= pos2 < self.rank):
            raise ConfigurationError("bad contraction positions")
        hi = sdata.omega_hi
        comps = {}
        for idx, f in self.components.items():
            w = hi[idx[pos1]][idx[pos2]]
            if not w:
                continue
            lo, hi_ = sorted((pos1, pos2))
            out = idx[:lo] + idx[lo + 1 : hi_] + idx[hi_ + 1 :]
            g = f.scale(w)
            cur = comps.get(out)
            s = g if cur is None else cur + g
            if s.is_zero():
                comps.pop(out, None)
            else:
                comps[out] = s
        return TensorField(self.dim, self.rank - 2, comps, "none", _validated=True)

    def symmetrize(self):
        """Full symmetrization (projection; exact rational average)."""
        inv = Fraction(1, factorial(self.rank))
        acc = {}
        for idx, f in self.components.items():
            g = f.scale(inv)
            for perm in permutations(idx):
                cur = acc.get(perm)
                s = g if cur is None else cur + g
                if s.is_zero():
                    acc.pop(perm, None)
                else:
                    acc[perm] = s
        return TensorField(self.dim, self.rank, acc, "fully_symmetric", _validated=True)

    def antisymmetrize_pair(self, pos1, pos2):
        """(T - T with pos1<->pos2 swapped) / 2."""
        half = Fraction(1, 2)
        acc = {}

        def put(idx, g):
            cur = acc.get(idx)
            s = g if cur is None else cur + g
            if s.is_zero():
                acc.pop(idx, None)
            else:
                acc[idx] = s

        for idx, f in self.components.items():
            put(idx, f.scale(half))
            swapped = list(idx)
            swapped[pos1], swapped[pos2] = swapped[pos2], swapped[pos1]
            put(tuple(swapped), f.scale(-half))
        return TensorField(self.dim, self.rank, acc, "none", _validated=True)

    def transpose_slots(self, perm):
        """Reindex: new component at idx is old component at idx permuted by perm."""
        comps = {}
        for idx, f in self.components.items():
            new = tuple(idx[p] for p in perm)
            comps[new] = f
        return TensorField(self.dim, self.rank, comps, "none", _validated=True)

    # -- predicates ----------------------------------------------------------

    def is_zero(self):
        return not self.components

    def is_constant(self):
        return all(f.is_constant() for f in self.components.values())

    def is_real(self):
        return all(f.is_real() for f in self.components.values())

    def is_fully_symmetric(self):
        for idx, f in self.components.items():
            for perm in permutations(idx):
                if self.get(perm) != f:
                    return False
        return True

    def is_curvature_type(self):
        """Rank 4, antisymmetric in slots (0,1), symmetric in slots (2,3)."""
        if self.rank != 4:
            return False
        for (a, b, c, d), f in self.components.items():
            if self.get((b, a, c, d)) != -f:
                return False
            if self.get((a, b, d, c)) != f:
                return False
        return True

    def check_symmetry(self):
        if self.symmetry_tag == "fully_symmetric":
            return self.is_fully_symmetric()
        if self.symmetry_tag == "curvature_type":
            return self.is_curvature_type()
        return True

    def __eq__(self, other):
        if not isinstance(other, TensorField):
            return NotImplemented
        return (
            self.dim == other.dim
            and self.rank == other.rank
            and self.components == other.components
        )

    def __hash__(self):
        return hash((self.dim, self.rank, frozenset(self.components.items())))

    def first_nonzero_witness(self):
        """(multi-index, mode) of some nonzero coefficient, or None."""
        for idx in sorted(self.components):
            f = self.components[idx]
            return idx, min(f.sorted_modes())
        return None

    def __repr__(self):
        return f"TensorField(dim={self.dim}, rank={self.rank}, nnz={len(self.components)})"


def raise_last(t: TensorField, sdata: SymplecticData) -> TensorField:
    """Replace the last covariant slot by a contravariant one.

    For underline-A with A-bar_{abc} = omega(A(e_a) e_b, e_c) this returns
    the mixed tensor A^p_{ab} stored at key (a, b, p):
    A^p_{ab} = sum_c omega^{cp} A-bar_{abc}.
    """
    hi = sdata.omega_hi
    comps = {}
    for idx, f in t.components.items():
        c = idx[-1]
        for p in range(t.dim):
            w = hi[c][p]
            if not w:
                continue
            key = idx[:-1] + (p,)
            g = f.scale(w)
            cur = comps.get(key)
            s = g if cur is None else cur + g
            if s.is_zero():
                comps.pop(key, None)
            else:
                comps[key] = s
    return TensorField(t.dim, t.rank, comps, "none", _validated=True)


def lower_last(t: TensorField, sdata: SymplecticData) -> TensorField:
    """Inverse of raise_last: A-bar_{abc} = sum_p A^p_{ab} omega_{pc}."""
    lo = sdata.omega_lo
    comps = {}
    for idx, f in t.components.items():
        p = idx[-1]
        for c in range(t.dim):
            w = lo[p][c]
            if not w:
                continue
            key = idx[:-1] + (c,)
            g = f.scale(w)
            cur = comps.get(key)
            s = g if cur is None else cur + g
            if s.is_zero():
                comps.pop(key, None)
            else:
                comps[key] = s
    return TensorField(t.dim, t.rank, comps, "none", _validated=True)


class TensorFieldCurve:
    """Truncated t-series whose coefficients are same-shape tensor fields."""

    __slots__ = ("cap", "dim", "rank", "orders")

    def __init__(self, cap, orders):
        orders = list(orders)
        if len(orders) != cap + 1:
            raise ConfigurationError("curve needs cap+1 order coefficients")
        dims = {t.dim for t in orders}
        ranks = {t.rank for t in orders}
        if len(dims) != 1 or len(ranks) != 1:
            raise ConfigurationError("curve orders must share dim and rank")
        self.cap = cap
        self.dim = dims.pop()
        self.rank = ranks.pop()
        self.orders = orders

    @classmethod
    def zero(cls, dim, rank, cap):
        return cls(cap, [TensorField.zero(dim, rank) for _ in range(cap + 1)])

    def _check(self, other):
        if self.cap != other.cap:
            raise ConfigurationError("curve cap mismatch")

    def __getitem__(self, k):
        return self.orders[k]

    def __add__(self, other):
        self._check(other)
        return TensorFieldCurve(self.cap, [a + b for a, b in zip(self.orders, other.orders)])

    def __sub__(self, other):
        self._check(other)
        return TensorFieldCurve(self.cap, [a - b for a, b in zip(self.orders, other.orders)])

    def __neg__(self):
        return TensorFieldCurve(self.cap, [-a for a in self.orders])

    def map(self, fn):
        return TensorFieldCurve(self.cap, [fn(t) for t in self.orders])

    def is_zero(self):
        return all(t.is_zero() for t in self.orders)

    def __eq__(self, other):
        if not isinstance(other, TensorFieldCurve):
            return NotImplemented
        return self.cap == other.cap and self.orders == other.orders

    def __repr__(self):
        return f"TensorFieldCurve(cap={self.cap}, rank={self.rank})"
