"""Translation-invariant connections and formal curves thereof.

An invariant connection curve is determined by constant linear maps
B^(k): R^{2n} -> sp(2n, R) whose lowered cubes omega(B(e_a) e_b, e_c) are
fully symmetric.  The central executable fact: if the Ricci-type identity
holds order by order and 2n >= 4, then the curvature vanishes and
B^t(X) B^t(Y) = 0 (any violation is an implementation bug, not data).
"""

from __future__ import annotations

from itertools import product

from .curvature import ConnectionCurve
from .errors import ConfigurationError, InternalInconsistency, PreconditionError
from .fourier import SymplecticData, TensorField
from .linalg import commutator, is_zero_matrix, mat_add, mat_mul, mat_vec, zeros
from .rationals import Fraction


def _as_cube(dim, array):
    cube = tuple(
        tuple(tuple(Fraction(array[a][b][c]) for c in range(dim)) for b in range(dim))
        for a in range(dim)
    )
    return cube


def zero_cube(dim):
    return tuple(
        tuple(tuple(Fraction(0) for _ in range(dim)) for _ in range(dim))
        for _ in range(dim)
    )


def cube_is_symmetric(cube):
    dim = len(cube)
    for a, b, c in product(range(dim), repeat=3):
        if cube[a][b][c] != cube[b][a][c] or cube[a][b][c] != cube[a][c][b]:
            return False
    return True


def cube_is_zero(cube):
    return all(not x for plane in cube for row in plane for x in row)


def cube_add(c1, c2):
    return tuple(
        tuple(tuple(x + y for x, y in zip(r1, r2)) for r1, r2 in zip(p1, p2))
        for p1, p2 in zip(c1, c2)
    )


def cube_scale(cube, s):
    s = Fraction(s)
    return tuple(
        tuple(tuple(s * x for x in row) for row in plane) for plane in cube
    )


class StructureMapCurve:
    """Per-order constant fully symmetric lowered cubes B-bar^(0..K)."""

    __slots__ = ("sdata", "cap", "cubes", "_mats")

    def __init__(self, sdata: SymplecticData, cap, cubes, validate=True):
        cubes = [_as_cube(sdata.dim, c) for c in cubes]
        if len(cubes) == cap:
            cubes = [zero_cube(sdata.dim)] + cubes
        if len(cubes) != cap + 1:
            raise ConfigurationError("need one cube per order 0..K")
        if validate:
            for k, cube in enumerate(cubes):
                if not cube_is_symmetric(cube):
                    raise ConfigurationError(f"order-{k} cube is not fully symmetric")
        self.sdata = sdata
        self.cap = cap
        self.cubes = cubes
        self._mats = None

    @classmethod
    def zero(cls, sdata, cap):
        return cls(sdata, cap, [zero_cube(sdata.dim) for _ in range(cap + 1)], validate=False)

    @property
    def dim(self):
        return self.sdata.dim

    def matrices(self, k):
        """Per basis direction a the matrix of B^(k)(e_a):
        (B(e_a))^p_b = sum_c omega^{cp} cube[a][b][c]."""
        if self._mats is None:
            self._mats = [None] * (self.cap + 1)
        if self._mats[k] is None:
            dim = self.dim
            hi = self.sdata.omega_hi
            mats = []
            for a in range(dim):
                m = [[Fraction(0)] * dim for _ in range(dim)]
                for b in range(dim):
                    for c in range(dim):
                        v = self.cubes[k][a][b][c]
                        if v:
                            for p in range(dim):
                                if hi[c][p]:
                                    m[p][b] += hi[c][p] * v
                mats.append(tuple(tuple(row) for row in m))
            self._mats[k] = mats
        return self._mats[k]

    def apply(self, k, x):
        """Matrix of B^(k)(X) for a rational vector X."""
        dim = self.dim
        acc = zeros(dim)
        for a, xa in enumerate(x):
            if xa:
                acc = mat_add(acc, tuple(tuple(xa * e for e in row) for row in self.matrices(k)[a]))
        return acc

    def is_zero(self):
        return all(cube_is_zero(c) for c in self.cubes)

    def __eq__(self, other):
        if not isinstance(other, StructureMapCurve):
            return NotImplemented
        return (
            self.sdata == other.sdata
            and self.cap == other.cap
            and self.cubes == other.cubes
        )

    def __repr__(self):
        return f"StructureMapCurve(dim={self.dim}, cap={self.cap})"


def rank_one_cube(sdata: SymplecticData, v):
    """S_{bcd} = omega(e_b, v) omega(e_c, v) omega(e_d, v) for v != 0.

    Always fully symmetric with B(X) B(Y) = 0, since the image of every
    B(X) is the line through v and omega(B(Y) Z, v) = 0.
    """
    v = tuple(Fraction(x) for x in v)
    if not any(v):
        raise PreconditionError("rank_one_cube needs a nonzero vector")
    dim = sdata.dim
    lo = sdata.omega_lo
    w = [sum(lo[b][p] * v[p] for p in range(dim)) for b in range(dim)]
    return tuple(
        tuple(tuple(w[b] * w[c] * w[d] for d in range(dim)) for c in range(dim))
        for b in range(dim)
    )


def invariant_curvature(B: StructureMapCurve):
    """Per-order curvature endomorphisms R^(k)(e_a, e_b) as matrices,
    keyed (a, b); the commutator sum over p + q = k."""
    dim = B.dim
    out = []
    for k in range(B.cap + 1):
        order = {}
        for a in range(dim):
            for b in range(dim):
                acc = zeros(dim)
                for p in range(k + 1):
                    acc = mat_add(
                        acc, commutator(B.matrices(p)[a], B.matrices(k - p)[b])
                    )
                order[(a, b)] = acc
        out.append(order)
    return out


def rho_curve(B: StructureMapCurve, dual_pair=None):
    """rho^(k) = sum_{p+q=k} sum_i B^(p)(X^i) B^(q)(X_i) as matrices.

    The default dual pair is X^i = e_i with X_i solved from
    omega(X^i, X_j) = delta^i_j; the result is basis independent.
    """
    dim = B.dim
    if dual_pair is None:
        upper = [tuple(Fraction(1) if p == i else Fraction(0) for p in range(dim)) for i in range(dim)]
        lower = B.sdata.dual_basis()
    else:
        upper, lower = dual_pair
    out = []
    for k in range(B.cap + 1):
        acc = zeros(dim)
        for p in range(k + 1):
            for i in range(dim):
                acc = mat_add(acc, mat_mul(B.apply(p, upper[i]), B.apply(k - p, lower[i])))
        out.append(acc)
    return out


def invariant_ricci_type_check(B: StructureMapCurve):
    """(flag, witness) for the order-by-order constant Ricci-type identity:
    sum_{p+q=k} 2(n+1) B^(p)(X) B^(q)(Y) Z equals the four-term omega/rho
    combination, over all basis triples."""
    sdata = B.sdata
    dim, n = B.dim, sdata.n
    lo = sdata.omega_lo
    rho = rho_curve(B)
    for k in range(B.cap + 1):
        rho_k = rho[k]
        for a in range(dim):
            x = tuple(Fraction(1) if p == a else Fraction(0) for p in range(dim))
            rho_x = mat_vec(rho_k, x)
            for b in range(dim):
                lhs_ab = zeros(dim)
                for p in range(k + 1):
                    lhs_ab = mat_add(
                        lhs_ab, mat_mul(B.matrices(p)[a], B.matrices(k - p)[b])
                    )
                y = tuple(Fraction(1) if p == b else Fraction(0) for p in range(dim))
                rho_y = mat_vec(rho_k, y)
                for c in range(dim):
                    z = tuple(Fraction(1) if p == c else Fraction(0) for p in range(dim))
                    lhs = tuple(2 * (n + 1) * e for e in mat_vec(lhs_ab, z))
                    rho_z = mat_vec(rho_k, z)
                    w_xy = lo[a][b]
                    w_xrhoy = sum(lo[a][p] * rho_y[p] for p in range(dim))
                    w_xz = lo[a][c]
                    w_xrhoz = sum(lo[a][p] * rho_z[p] for p in range(dim))
                    rhs = tuple(
                        w_xy * rho_z[i] + w_xrhoy * z[i] + w_xz * rho_y[i] + w_xrhoz * y[i]
                        for i in range(dim)
                    )
                    if lhs != rhs:
                        return False, {"order": k, "triple": (a, b, c)}
    return True, None


def flatness_theorem_check(B: StructureMapCurve):
    """Assert curvature == 0 and sum_{p+q=k} B^(p)(X) B^(q)(Y) == 0.

    Precondition: the Ricci-type identity holds and 2n >= 4.  A violation
    here would falsify the invariant flatness theorem, so it raises
    InternalInconsistency rather than returning a negative verdict.
    """
    ok, witness = invariant_ricci_type_check(B)
    if not ok:
        raise PreconditionError(f"input is not Ricci type: {witness}")
    dim = B.dim
    report = {"curvature_zero": [], "bb_zero": []}
    for k, order in enumerate(invariant_curvature(B)):
        bad = [key for key, m in order.items() if not is_zero_matrix(m)]
        report["curvature_zero"].append(not bad)
        if bad:
            raise InternalInconsistency(
                f"invariant Ricci-type curve has nonzero curvature at order {k}, pair {bad[0]}"
            )
    for k in range(B.cap + 1):
        for a in range(dim):
            for b in range(dim):
                acc = zeros(dim)
                for p in range(k + 1):
                    acc = mat_add(acc, mat_mul(B.matrices(p)[a], B.matrices(k - p)[b]))
                if not is_zero_matrix(acc):
                    raise InternalInconsistency(
                        f"B^t(X)B^t(Y) != 0 at order {k}, pair ({a}, {b})"
                    )
        report["bb_zero"].append(True)
    report["ok"] = True
    return report


def embed_invariant(B: StructureMapCurve) -> ConnectionCurve:
    """The structure map as a torus connection curve with constant modes."""
    abar = [
        TensorField.from_constant(B.dim, 3, cube, "fully_symmetric")
        for cube in B.cubes
    ]
    if not cube_is_zero(B.cubes[0]):
        raise PreconditionError("embedding requires a zero order-0 cube")
    return ConnectionCurve(B.sdata, B.cap, abar)


def from_connection_curve(conn: ConnectionCurve) -> StructureMapCurve:
    """Extract the constant cubes of an invariant connection curve."""
    dim = conn.dim
    cubes = []
    for t in conn.abar:
        if not t.is_constant():
            raise PreconditionError("connection curve is not invariant")
        cube = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
        for (a, b, c), f in t.components.items():
            v = f.constant_part()
            if not v.is_real():
                raise PreconditionError("invariant cube must be real")
            cube[a][b][c] = v.re
        cubes.append(cube)
    return StructureMapCurve(conn.sdata, conn.cap, cubes)
