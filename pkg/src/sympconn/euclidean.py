"""The R^{2n} model: polynomial symplectomorphisms for invariant curves.

On R^{2n} (no periodicity) a valid structure map A gives the explicit
quadratic symplectomorphism psi^A(x) = x - (1/2) A(x) x, and a valid curve
A^t gives the flow psi_{A^t} = exp X_{A^t} with X_{A^t}(x) = -(1/2) A_t(x) x.
Nilpotency A(X) A(Y) = 0 keeps every series here finite, so all maps and
flows are exact polynomial objects.

Formal symplectomorphism curves of R^{2n} are represented as in the torus
module: an affine part sigma(x) = C x + d (C rational symplectic here, not
necessarily integral) composed with exp of a generator ladder, acting on
polynomials as operators.
"""

from __future__ import annotations

from itertools import product

from .errors import (
    ConfigurationError,
    InternalInconsistency,
    PreconditionError,
)
from .invariant import StructureMapCurve, cube_is_symmetric, zero_cube
from .linalg import identity as mat_identity
from .linalg import inverse, is_zero_matrix, mat_mul, mat_vec
from .rationals import Fraction


class Poly:
    """Polynomial in x^1..x^{2n} with rational coefficients, stored sparsely
    as exponent tuple -> coefficient."""

    __slots__ = ("dim", "coeffs")

    def __init__(self, dim, coeffs=None):
        self.dim = dim
        clean = {}
        for e, c in (coeffs or {}).items():
            c = Fraction(c)
            if c:
                clean[tuple(e)] = c
        self.coeffs = clean

    @classmethod
    def zero(cls, dim):
        return cls(dim)

    @classmethod
    def constant(cls, dim, value):
        return cls(dim, {(0,) * dim: Fraction(value)})

    @classmethod
    def variable(cls, dim, a):
        e = tuple(1 if i == a else 0 for i in range(dim))
        return cls(dim, {e: Fraction(1)})

    def _check(self, other):
        if self.dim != other.dim:
            raise ConfigurationError("polynomial dim mismatch")

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            s = out.get(e, Fraction(0)) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Poly(self.dim, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Poly(self.dim, {e: -c for e, c in self.coeffs.items()})

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        self._check(other)
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, Fraction(0)) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return Poly(self.dim, out)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, s):
        s = Fraction(s)
        return Poly(self.dim, {e: s * c for e, c in self.coeffs.items()})

    def derivative(self, axis):
        out = {}
        for e, c in self.coeffs.items():
            k = e[axis]
            if k:
                ee = tuple(x - 1 if i == axis else x for i, x in enumerate(e))
                out[ee] = out.get(ee, Fraction(0)) + c * k
        return Poly(self.dim, out)

    def substitute(self, maps):
        """Evaluate at x^a = maps[a] (a list of Polys)."""
        if len(maps) != self.dim:
            raise ConfigurationError("substitution needs one polynomial per variable")
        out = Poly.zero(self.dim)
        for e, c in self.coeffs.items():
            term = Poly.constant(self.dim, c)
            for a, k in enumerate(e):
                for _ in range(k):
                    term = term * maps[a]
            out = out + term
        return out

    def degree(self):
        return max((sum(e) for e in self.coeffs), default=0)

    def is_zero(self):
        return not self.coeffs

    def is_constant(self):
        return all(not any(e) for e in self.coeffs)

    def constant_part(self):
        return self.coeffs.get((0,) * self.dim, Fraction(0))

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.dim == other.dim and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.dim, frozenset(self.coeffs.items())))

    def __repr__(self):
        return f"Poly({self.dim}, {dict(sorted(self.coeffs.items()))})"


class PolyMap:
    """A polynomial map R^{2n} -> R^{2n}; composition tracks degrees exactly."""

    __slots__ = ("dim", "comps")

    def __init__(self, comps):
        comps = tuple(comps)
        dim = comps[0].dim
        if len(comps) != dim or any(c.dim != dim for c in comps):
            raise ConfigurationError("map needs one component per coordinate")
        self.dim = dim
        self.comps = comps

    @classmethod
    def identity(cls, dim):
        return cls([Poly.variable(dim, a) for a in range(dim)])

    def compose(self, other: "PolyMap") -> "PolyMap":
        """self o other."""
        return PolyMap([c.substitute(list(other.comps)) for c in self.comps])

    def is_identity(self):
        return self == PolyMap.identity(self.dim)

    def __eq__(self, other):
        if not isinstance(other, PolyMap):
            return NotImplemented
        return self.comps == other.comps

    def __repr__(self):
        return f"PolyMap(dim={self.dim}, deg={max(c.degree() for c in self.comps)})"


class PolyVectorField:
    """Polynomial vector field; acts on Poly as a derivation."""

    __slots__ = ("dim", "comps")

    def __init__(self, comps):
        comps = tuple(comps)
        dim = comps[0].dim
        if len(comps) != dim or any(c.dim != dim for c in comps):
            raise ConfigurationError("field needs one component per coordinate")
        self.dim = dim
        self.comps = comps

    @classmethod
    def zero(cls, dim):
        z = Poly.zero(dim)
        return cls([z] * dim)

    @classmethod
    def constant(cls, dim, vector):
        return cls([Poly.constant(dim, v) for v in vector])

    def __add__(self, other):
        return PolyVectorField([a + b for a, b in zip(self.comps, other.comps)])

    def __neg__(self):
        return PolyVectorField([-c for c in self.comps])

    def scale(self, s):
        return PolyVectorField([c.scale(s) for c in self.comps])

    def apply(self, p: Poly) -> Poly:
        out = Poly.zero(self.dim)
        for a, xa in enumerate(self.comps):
            if not xa.is_zero():
                out = out + xa * p.derivative(a)
        return out

    def bracket(self, other):
        return PolyVectorField(
            [self.apply(yc) - other.apply(xc) for xc, yc in zip(self.comps, other.comps)]
        )

    def is_symplectic(self, sdata):
        """d(i(X)omega) = 0 with the constant form omega."""
        dim = self.dim
        lo = sdata.omega_lo
        alpha = []
        for b in range(dim):
            ab = Poly.zero(dim)
            for a in range(dim):
                if lo[a][b]:
                    ab = ab + self.comps[a].scale(lo[a][b])
            alpha.append(ab)
        for a in range(dim):
            for b in range(a + 1, dim):
                if not (alpha[b].derivative(a) - alpha[a].derivative(b)).is_zero():
                    return False
        return True

    def is_zero(self):
        return all(c.is_zero() for c in self.comps)

    def __eq__(self, other):
        if not isinstance(other, PolyVectorField):
            return NotImplemented
        return self.comps == other.comps

    def __repr__(self):
        return f"PolyVectorField(dim={self.dim})"


# -- the closed-form symplectomorphism psi^A ------------------------------------


def cube_endomorphisms(sdata, cube):
    """Matrices of A(e_a) from a lowered cube: (A(e_a))^p_b = omega^{cp} S_abc."""
    dim = sdata.dim
    hi = sdata.omega_hi
    mats = []
    for a in range(dim):
        m = [[Fraction(0)] * dim for _ in range(dim)]
        for b in range(dim):
            for c in range(dim):
                v = Fraction(cube[a][b][c])
                if v:
                    for p in range(dim):
                        if hi[c][p]:
                            m[p][b] += hi[c][p] * v
        mats.append(tuple(tuple(row) for row in m))
    return mats


def require_nilpotent_cube(sdata, cube):
    if not cube_is_symmetric(cube):
        raise PreconditionError("cube is not fully symmetric")
    mats = cube_endomorphisms(sdata, cube)
    for a, b in product(range(sdata.dim), repeat=2):
        if not is_zero_matrix(mat_mul(mats[a], mats[b])):
            raise PreconditionError(f"A(e_{a}) A(e_{b}) != 0: cube is not nilpotent")
    return mats


def psi_A(sdata, cube) -> PolyMap:
    """psi^A(x) = x - (1/2) A(x) x for a nilpotent symmetric cube."""
    mats = require_nilpotent_cube(sdata, cube)
    dim = sdata.dim
    half = Fraction(1, 2)
    comps = []
    for p in range(dim):
        poly = Poly.variable(dim, p)
        quad = {}
        for a in range(dim):
            for b in range(dim):
                v = mats[a][p][b]
                if v:
                    e = [0] * dim
                    e[a] += 1
                    e[b] += 1
                    e = tuple(e)
                    quad[e] = quad.get(e, Fraction(0)) - half * v
        comps.append(poly + Poly(dim, quad))
    return PolyMap(comps)


def psi_A_pushforward_constant(sdata, cube, x):
    """psi^A . X = X - A(.)X for a constant vector X (valid by nilpotency)."""
    mats = cube_endomorphisms(sdata, cube)
    dim = sdata.dim
    x = tuple(Fraction(v) for v in x)
    comps = []
    for p in range(dim):
        poly = Poly.constant(dim, x[p])
        lin = {}
        for a in range(dim):
            v = sum(mats[a][p][b] * x[b] for b in range(dim))
            if v:
                e = tuple(1 if i == a else 0 for i in range(dim))
                lin[e] = -v
        comps.append(poly + Poly(dim, lin))
    return PolyVectorField(comps)


def psi_A_symplectic_check(sdata, cube):
    """Omega(psi^A . X, psi^A . Y) = Omega(X, Y) on the constant basis."""
    dim = sdata.dim
    lo = sdata.omega_lo
    for a in range(dim):
        xa = psi_A_pushforward_constant(
            sdata, cube, [1 if i == a else 0 for i in range(dim)]
        )
        for b in range(dim):
            yb = psi_A_pushforward_constant(
                sdata, cube, [1 if i == b else 0 for i in range(dim)]
            )
            pairing = Poly.zero(dim)
            for p in range(dim):
                for q in range(dim):
                    if lo[p][q]:
                        pairing = pairing + (xa.comps[p] * yb.comps[q]).scale(lo[p][q])
            if pairing != Poly.constant(dim, lo[a][b]):
                return False
    return True


def pushforward(psi: PolyMap, psi_inv: PolyMap, z: PolyVectorField) -> PolyVectorField:
    """(psi . Z)(x) = D psi(psi^{-1} x) Z(psi^{-1} x); the caller supplies the
    exact polynomial inverse (psi^{-A} for psi^A)."""
    dim = z.dim
    inv_comps = list(psi_inv.comps)
    comps = []
    for p in range(dim):
        acc = Poly.zero(dim)
        for b in range(dim):
            dpb = psi.comps[p].derivative(b)
            if dpb.is_zero() or z.comps[b].is_zero():
                continue
            acc = acc + dpb.substitute(inv_comps) * z.comps[b].substitute(inv_comps)
        comps.append(acc)
    return PolyVectorField(comps)


def psi_A_connection_check(sdata, cube):
    """psi^A . nabla^0 = nabla^A on basis pairs, via exact transport through
    the polynomial inverse psi^{-A}."""
    dim = sdata.dim
    mats = cube_endomorphisms(sdata, cube)
    fwd = psi_A(sdata, cube)
    bwd = psi_A(sdata, [[[-Fraction(cube[a][b][c]) for c in range(dim)] for b in range(dim)] for a in range(dim)])
    if not fwd.compose(bwd).is_identity() or not bwd.compose(fwd).is_identity():
        raise InternalInconsistency("psi^{-A} is not the inverse of psi^A")
    for a in range(dim):
        ea = PolyVectorField.constant(dim, [1 if i == a else 0 for i in range(dim)])
        xa = pushforward(bwd, fwd, ea)
        for b in range(dim):
            eb = PolyVectorField.constant(dim, [1 if i == b else 0 for i in range(dim)])
            yb = pushforward(bwd, fwd, eb)
            # nabla^0_{X} Y = directional derivative
            deriv = PolyVectorField([xa.apply(c) for c in yb.comps])
            moved = pushforward(fwd, bwd, deriv)
            want = PolyVectorField.constant(dim, [mats[a][p][b] for p in range(dim)])
            if moved != want:
                return False
    return True


# -- the flow psi_{A^t} ----------------------------------------------------------


def structure_field(sdata, cube) -> PolyVectorField:
    """X_A(x) = -(1/2) A(x) x as a quadratic polynomial field."""
    mats = cube_endomorphisms(sdata, cube)
    dim = sdata.dim
    half = Fraction(1, 2)
    comps = []
    for p in range(dim):
        quad = {}
        for a in range(dim):
            for b in range(dim):
                v = mats[a][p][b]
                if v:
                    e = [0] * dim
                    e[a] += 1
                    e[b] += 1
                    e = tuple(e)
                    quad[e] = quad.get(e, Fraction(0)) - half * v
        comps.append(Poly(dim, quad))
    return PolyVectorField(comps)


def psi_At(b_curve: StructureMapCurve):
    """The generator ladder of psi_{A^t} = exp X_{A^t}.

    Returns gens[0..K] with gens[k] = X_{A^(k)}; validity (symmetry and
    order-by-order nilpotency) is checked first.
    """
    validity_check_cubes(b_curve)
    return [structure_field(b_curve.sdata, c) for c in b_curve.cubes]


def validity_check_cubes(b_curve: StructureMapCurve):
    """A^t(X) A^t(Y) = 0 order by order (symmetry holds by construction)."""
    dim = b_curve.dim
    for k in range(b_curve.cap + 1):
        for a, b in product(range(dim), repeat=2):
            acc = [[Fraction(0)] * dim for _ in range(dim)]
            for p in range(k + 1):
                m = mat_mul(b_curve.matrices(p)[a], b_curve.matrices(k - p)[b])
                for i in range(dim):
                    for j in range(dim):
                        acc[i][j] += m[i][j]
            if not is_zero_matrix(tuple(tuple(r) for r in acc)):
                raise PreconditionError(
                    f"A^t(X) A^t(Y) != 0 at order {k}, pair ({a}, {b})"
                )


# -- operator calculus on polynomial curves --------------------------------------


def _poly_field_on_curve(gens, fcurve, cap):
    dim = fcurve[0].dim
    out = []
    for k in range(cap + 1):
        acc = Poly.zero(dim)
        for s in range(1, k + 1):
            if not gens[s].is_zero() and not fcurve[k - s].is_zero():
                acc = acc + gens[s].apply(fcurve[k - s])
        out.append(acc)
    return out


def exp_apply_poly(gens, fcurve, cap):
    out = list(fcurve)
    term = list(fcurve)
    for j in range(1, cap + 1):
        term = _poly_field_on_curve(gens, term, cap)
        term = [g.scale(Fraction(1, j)) for g in term]
        if all(g.is_zero() for g in term):
            break
        out = [a + b for a, b in zip(out, term)]
    return out


def _poly_ad_on_curve(gens, ycurve, cap):
    dim = ycurve[0].dim
    out = []
    for k in range(cap + 1):
        acc = PolyVectorField.zero(dim)
        for s in range(1, k + 1):
            if not gens[s].is_zero() and not ycurve[k - s].is_zero():
                acc = acc + gens[s].bracket(ycurve[k - s])
        out.append(acc)
    return out


def exp_ad_poly(gens, ycurve, cap):
    out = list(ycurve)
    term = list(ycurve)
    for j in range(1, cap + 1):
        term = _poly_ad_on_curve(gens, term, cap)
        term = [g.scale(Fraction(1, j)) for g in term]
        if all(g.is_zero() for g in term):
            break
        out = [a + b for a, b in zip(out, term)]
    return out


def flow_coordinate_maps(gens, cap):
    """The formal flow as a curve of PolyMaps: order-k coefficient of
    exp(X_t) applied to the coordinate functions."""
    dim = gens[0].dim
    curves = [
        exp_apply_poly(
            gens, [Poly.variable(dim, p)] + [Poly.zero(dim)] * cap, cap
        )
        for p in range(dim)
    ]
    return [PolyMap([curves[p][k] for p in range(dim)]) for k in range(cap + 1)]


def act_on_poly_connection(gens, cap, sdata, gamma):
    """Basis transport of a connection curve on R^{2n} by the flow of X_t.

    Geometric pushforward convention: for the map psi = exp-flow of X_t,
    psi . Y = exp(ad(-X_t)) Y (so that psi^A . X = X - A(.)X holds as
    stated), hence the backward transport of the basis uses +X_t.
    gamma[k][(a, b)] is the PolyVectorField nabla^(k)_{e_a} e_b (order 0
    omitted, i.e. treated as the flat directional derivative)."""
    dim = sdata.dim
    neg = [-g for g in gens]
    zero = PolyVectorField.zero(dim)
    back = []
    for a in range(dim):
        e = PolyVectorField.constant(dim, [1 if i == a else 0 for i in range(dim)])
        back.append(exp_ad_poly(gens, [e] + [zero] * cap, cap))
    out = [dict() for _ in range(cap + 1)]
    for a in range(dim):
        xa = back[a]
        for b in range(dim):
            yb = back[b]
            deriv = []
            for k in range(cap + 1):
                acc = PolyVectorField.zero(dim)
                for s in range(k + 1):
                    if not xa[s].is_zero():
                        acc = acc + PolyVectorField(
                            [xa[s].apply(c) for c in yb[k - s].comps]
                        )
                for s in range(1, k + 1):
                    gam = gamma[s]
                    if not gam:
                        continue
                    for u in range(k - s + 1):
                        xu, yv = xa[u], yb[k - s - u]
                        if xu.is_zero() or yv.is_zero():
                            continue
                        for (p, q), gpq in gam.items():
                            w = xu.comps[p] * yv.comps[q]
                            if not w.is_zero():
                                acc = acc + PolyVectorField(
                                    [gc * w for gc in gpq.comps]
                                )
                deriv.append(acc)
            forward = exp_ad_poly(neg, deriv, cap)
            for k in range(cap + 1):
                if not forward[k].is_zero():
                    out[k][(a, b)] = forward[k]
    return out


def invariant_gamma(b_curve: StructureMapCurve):
    """The connection data of nabla^{A^t}: constant Gamma(e_a, e_b) = A(e_a) e_b."""
    dim = b_curve.dim
    out = [dict() for _ in range(b_curve.cap + 1)]
    for k in range(b_curve.cap + 1):
        mats = b_curve.matrices(k)
        for a in range(dim):
            for b in range(dim):
                col = [mats[a][p][b] for p in range(dim)]
                if any(col):
                    out[k][(a, b)] = PolyVectorField.constant(dim, col)
    return out


def psi_At_connection_check(b_curve: StructureMapCurve):
    """psi_{A^t} . nabla^0 = nabla^{A^t}, plus (ad X_{A^t})^2 X = 0 on the
    constant basis (the nilpotency the closed forms rely on)."""
    gens = psi_At(b_curve)
    cap, dim, sdata = b_curve.cap, b_curve.dim, b_curve.sdata
    zero = PolyVectorField.zero(dim)
    for a in range(dim):
        e = PolyVectorField.constant(dim, [1 if i == a else 0 for i in range(dim)])
        once = _poly_ad_on_curve(gens, [e] + [zero] * cap, cap)
        twice = _poly_ad_on_curve(gens, once, cap)
        if not all(f.is_zero() for f in twice):
            raise InternalInconsistency("(ad X_{A^t})^2 != 0 on a constant field")
    acted = act_on_poly_connection(gens, cap, sdata, [dict() for _ in range(cap + 1)])
    want = invariant_gamma(b_curve)
    return acted == want


def merge_poly_exponentials(sdata, cap, gens_a, gens_b):
    """Z with exp(Z) = exp(A) exp(B), extracted on coordinate functions:
    the order-k mismatch on x^a is exactly Z^(k)a."""
    dim = sdata.dim
    tests = [
        [Poly.variable(dim, a)] + [Poly.zero(dim)] * cap for a in range(dim)
    ]
    targets = [
        exp_apply_poly(gens_a, exp_apply_poly(gens_b, f, cap), cap) for f in tests
    ]
    z = [PolyVectorField.zero(dim) for _ in range(cap + 1)]
    for k in range(1, cap + 1):
        comps = []
        for a in range(dim):
            cur = exp_apply_poly(z, tests[a], cap)
            comps.append(targets[a][k] - cur[k])
        z[k] = PolyVectorField(comps)
        if not z[k].is_symplectic(sdata):
            raise InternalInconsistency(
                f"merged polynomial generator at order {k} is not symplectic"
            )
    for f, target in zip(tests, targets):
        if exp_apply_poly(z, f, cap) != target:
            raise InternalInconsistency("polynomial normal ordering failed")
    return z


def equivalence_Rn(a_curve: StructureMapCurve, b_curve: StructureMapCurve):
    """The always-equivalent construction psi = psi_{B^t} o psi_{-A^t}.

    Returns the merged generator ladder and verifies
    psi . nabla^{A^t} = nabla^{B^t} through the cap.
    """
    if a_curve.sdata != b_curve.sdata or a_curve.cap != b_curve.cap:
        raise PreconditionError("equivalence needs matching omega and caps")
    sdata, cap = a_curve.sdata, a_curve.cap
    gens_a = psi_At(a_curve)
    gens_b = psi_At(b_curve)
    neg_a = [-g for g in gens_a]
    # Pullbacks compose contravariantly: the map psi_{B^t} o psi_{-A^t} has
    # pullback exp(-X_{A^t}) exp(X_{B^t}), which is what gets merged.
    merged = merge_poly_exponentials(sdata, cap, neg_a, gens_b)
    acted = act_on_poly_connection(merged, cap, sdata, invariant_gamma(a_curve))
    if acted != invariant_gamma(b_curve):
        raise InternalInconsistency(
            "psi_{B^t} o psi_{-A^t} does not carry nabla^{A^t} to nabla^{B^t}"
        )
    return merged


# -- the stabilizer of nabla^0 ----------------------------------------------------


class PolySymplecto:
    """A formal R^{2n} symplectomorphism curve sigma^* o exp X_t with a
    rational (not necessarily integral) symplectic linear part."""

    __slots__ = ("sdata", "cap", "c_mat", "d", "gens")

    def __init__(self, sdata, cap, c_mat, d, gens):
        dim = sdata.dim
        c_mat = tuple(tuple(Fraction(x) for x in row) for row in c_mat)
        d = tuple(Fraction(x) for x in d)
        gens = list(gens)
        if len(gens) == cap:
            gens = [PolyVectorField.zero(dim)] + gens
        if len(gens) != cap + 1:
            raise ConfigurationError("need one generator per order 1..K")
        if not sdata.is_symplectic_matrix(c_mat):
            raise ConfigurationError("linear part is not symplectic")
        if not gens[0].is_zero():
            raise ConfigurationError("generator curve must have valuation >= 1")
        for k, g in enumerate(gens):
            if not g.is_symplectic(sdata):
                raise ConfigurationError(f"order-{k} generator is not symplectic")
        self.sdata = sdata
        self.cap = cap
        self.c_mat = c_mat
        self.d = d
        self.gens = gens

    @property
    def dim(self):
        return self.sdata.dim


def stabilizer_check(psi: PolySymplecto):
    """Decide psi . nabla^0 = nabla^0 and extract the affine normal form.

    Returns ("stabilizes", (C, d, C_t, d_t)) with C_t the per-order matrices
    and d_t the per-order vectors of the (necessarily affine) generators, or
    ("moves", first_failing_order).  A stabilizing curve with a non-affine
    generator would contradict the normal-form statement, so that case is an
    internal inconsistency, not a verdict.
    """
    sdata, cap, dim = psi.sdata, psi.cap, psi.dim
    # The affine part always fixes nabla^0; only the exp factor can move it.
    acted = act_on_poly_connection(psi.gens, cap, sdata, [dict() for _ in range(cap + 1)])
    for k in range(cap + 1):
        if acted[k]:
            return ("moves", k)
    c_t = [None]
    d_t = [None]
    for k in range(1, cap + 1):
        g = psi.gens[k]
        if any(c.degree() > 1 for c in g.comps):
            raise InternalInconsistency(
                f"order-{k} generator of a stabilizing curve is not affine"
            )
        mat = tuple(
            tuple(g.comps[p].derivative(q).constant_part() for q in range(dim))
            for p in range(dim)
        )
        vec = tuple(g.comps[p].constant_part() for p in range(dim))
        c_t.append(mat)
        d_t.append(vec)
    return ("stabilizes", (psi.c_mat, psi.d, c_t[1:], d_t[1:]))
