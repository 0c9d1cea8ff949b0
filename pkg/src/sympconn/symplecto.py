"""Formal curves of symplectomorphisms of the torus.

A curve is stored in the normal form psi_t = sigma^* o exp X_t, where
sigma(x) = C x + 2 pi d is an affine symplectic lattice map and
X_t = sum_{k>=1} t^k X^(k) is a formal curve of symplectic vector fields.
All operators act on scalar curves; actions on vector fields and
connections are operator conjugation, so functoriality
act(psi o phi, T) = act(psi, act(phi, T)) holds by construction.

Translations are rational fractions of the full period.  A pullback is
representable exactly iff every phase e^{2 pi i m.d} lands in the Gaussian
rationals, i.e. m.d is a multiple of 1/4; other translations raise
NonRepresentablePhase.
"""

from __future__ import annotations

from .curvature import ConnectionCurve
from .errors import (
    ConfigurationError,
    InternalInconsistency,
    NonRepresentablePhase,
    PreconditionError,
)
from .fourier import FourierScalar, SymplecticData, TensorField
from .linalg import identity as mat_identity
from .linalg import inverse, mat_vec
from .rationals import Fraction, GaussianRational

_MINUS_I = GaussianRational(0, -1)
_PHASES = {
    Fraction(0): GaussianRational(1),
    Fraction(1, 4): GaussianRational(0, 1),
    Fraction(1, 2): GaussianRational(-1),
    Fraction(3, 4): GaussianRational(0, -1),
}


def _phase(q: Fraction) -> GaussianRational:
    ph = _PHASES.get(q % 1)
    if ph is None:
        raise NonRepresentablePhase(
            f"phase e^(2 pi i {q}) is not a Gaussian rational; "
            "translations must keep m.d in (1/4)Z"
        )
    return ph


class FourierVectorField:
    """Contravariant vector field with FourierScalar components."""

    __slots__ = ("dim", "comps")

    def __init__(self, comps):
        comps = tuple(comps)
        if not comps:
            raise ConfigurationError("vector field needs at least one component")
        dim = comps[0].dim
        if any(c.dim != dim for c in comps) or len(comps) != dim:
            raise ConfigurationError("component count must equal the torus dimension")
        self.dim = dim
        self.comps = comps

    @classmethod
    def zero(cls, dim):
        z = FourierScalar.zero(dim)
        return cls([z] * dim)

    @classmethod
    def constant(cls, dim, vector):
        return cls([FourierScalar.constant(dim, Fraction(v)) for v in vector])

    def __add__(self, other):
        if self.dim != other.dim:
            raise ConfigurationError("vector field dim mismatch")
        return FourierVectorField([a + b for a, b in zip(self.comps, other.comps)])

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return FourierVectorField([-c for c in self.comps])

    def scale(self, s):
        return FourierVectorField([c.scale(s) for c in self.comps])

    def apply(self, f: FourierScalar) -> FourierScalar:
        """The derivation X(f) = sum_a X^a df/dx^a."""
        out = FourierScalar.zero(self.dim)
        for a, xa in enumerate(self.comps):
            if xa:
                out = out + xa * f.derivative(a)
        return out

    def bracket(self, other: "FourierVectorField") -> "FourierVectorField":
        """[X, Y]^c = X(Y^c) - Y(X^c)."""
        return FourierVectorField(
            [self.apply(yc) - other.apply(xc) for xc, yc in zip(self.comps, other.comps)]
        )

    def is_symplectic(self, sdata: SymplecticData):
        """d(i(X)omega) = 0, componentwise in modes."""
        dim = self.dim
        lo = sdata.omega_lo
        alpha = []
        for b in range(dim):
            ab = FourierScalar.zero(dim)
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

    def is_real(self):
        return all(c.is_real() for c in self.comps)

    def is_constant(self):
        return all(c.is_constant() for c in self.comps)

    def __eq__(self, other):
        if not isinstance(other, FourierVectorField):
            return NotImplemented
        return self.comps == other.comps

    def __hash__(self):
        return hash(self.comps)

    def __repr__(self):
        return f"FourierVectorField(dim={self.dim})"


def hamiltonian_field(sdata: SymplecticData, f: FourierScalar) -> FourierVectorField:
    """Solve i(X_f) omega = df: X_f^c = sum_b omega^{bc} df/dx^b.

    The solution is re-substituted into the defining equation; a mismatch
    would mean omega_hi is not the inverse convention assumed here.
    """
    dim = f.dim
    hi = sdata.omega_hi
    comps = []
    for c in range(dim):
        xc = FourierScalar.zero(dim)
        for b in range(dim):
            if hi[b][c]:
                xc = xc + f.derivative(b).scale(hi[b][c])
        comps.append(xc)
    x = FourierVectorField(comps)
    lo = sdata.omega_lo
    for b in range(dim):
        contr = FourierScalar.zero(dim)
        for a in range(dim):
            if lo[a][b]:
                contr = contr + x.comps[a].scale(lo[a][b])
        if contr != f.derivative(b):
            raise InternalInconsistency("i(X_f) omega != df after solving")
    return x


# -- affine layer -------------------------------------------------------------


def affine_pullback_scalar(c_mat, d, f: FourierScalar) -> FourierScalar:
    """sigma^* f = f o sigma for sigma(x) = C x + 2 pi d: the mode m term
    becomes the mode C^T m term times the phase e^{2 pi i m.d}."""
    dim = f.dim
    out = {}
    for m, coeff in f.coeffs.items():
        q = sum(mi * di for mi, di in zip(m, d))
        val = coeff * _phase(Fraction(q))
        mm = tuple(sum(c_mat[i][j] * m[i] for i in range(dim)) for j in range(dim))
        cur = out.get(mm)
        if cur is None:
            out[mm] = val
        else:
            s = cur + val
            if s.is_zero():
                del out[mm]
            else:
                out[mm] = s
    return FourierScalar(dim, out, _validated=True)


def conj_affine(c_mat, c_inv, d, x: FourierVectorField) -> FourierVectorField:
    """sigma^* X (sigma^*)^{-1} as a derivation:
    (Ad_{sigma^*} X)^b(x) = (C^{-1})^b_a X^a(C x + 2 pi d)."""
    dim = x.dim
    pulled = [affine_pullback_scalar(c_mat, d, comp) for comp in x.comps]
    comps = []
    for b in range(dim):
        cb = FourierScalar.zero(dim)
        for a in range(dim):
            if c_inv[b][a]:
                cb = cb + pulled[a].scale(c_inv[b][a])
        comps.append(cb)
    return FourierVectorField(comps)


# -- truncated operator calculus on curves ------------------------------------
#
# Scalar curves and vector-field curves are plain lists of length cap + 1,
# indexed by t-order.  All generator ladders gens[0..cap] have gens[0] = 0,
# so every exponential truncates after cap applications.


def _scalar_curve_zero(dim, cap):
    z = FourierScalar.zero(dim)
    return [z] * (cap + 1)


def _field_on_scalar_curve(gens, fcurve, cap):
    """X_t applied to a scalar curve, per order."""
    dim = gens[1].dim if cap >= 1 else fcurve[0].dim
    out = []
    for k in range(cap + 1):
        acc = FourierScalar.zero(dim)
        for s in range(1, k + 1):
            if not gens[s].is_zero() and not fcurve[k - s].is_zero():
                acc = acc + gens[s].apply(fcurve[k - s])
        out.append(acc)
    return out


def exp_apply_scalar(gens, fcurve, cap):
    """exp(X_t) applied to a scalar curve; exact since val(X_t) >= 1."""
    out = list(fcurve)
    term = list(fcurve)
    for j in range(1, cap + 1):
        term = _field_on_scalar_curve(gens, term, cap)
        term = [g.scale(Fraction(1, j)) for g in term]
        if all(g.is_zero() for g in term):
            break
        out = [a + b for a, b in zip(out, term)]
    return out


def _ad_on_field_curve(gens, ycurve, cap):
    """(ad X_t) Y per order: sum over s + u = k of [X^(s), Y^(u)]."""
    dim = ycurve[0].dim
    out = []
    for k in range(cap + 1):
        acc = FourierVectorField.zero(dim)
        for s in range(1, k + 1):
            if not gens[s].is_zero() and not ycurve[k - s].is_zero():
                acc = acc + gens[s].bracket(ycurve[k - s])
        out.append(acc)
    return out


def exp_ad_field(gens, ycurve, cap):
    """exp(ad X_t) Y truncated at the cap; nested brackets of valuation
    beyond the cap never contribute."""
    out = list(ycurve)
    term = list(ycurve)
    for j in range(1, cap + 1):
        term = _ad_on_field_curve(gens, term, cap)
        term = [g.scale(Fraction(1, j)) for g in term]
        if all(g.is_zero() for g in term):
            break
        out = [a + b for a, b in zip(out, term)]
    return out


# -- the curve type ------------------------------------------------------------


class SymplectoCurve:
    """psi_t = sigma^* o exp X_t with sigma(x) = C x + 2 pi d."""

    __slots__ = ("sdata", "cap", "c_mat", "c_inv", "d", "gens")

    def __init__(self, sdata: SymplecticData, cap, c_mat, d, gens, validate=True):
        dim = sdata.dim
        c_mat = tuple(tuple(int(x) for x in row) for row in c_mat)
        d = tuple(Fraction(x) % 1 for x in d)
        gens = list(gens)
        if len(gens) == cap:
            gens = [FourierVectorField.zero(dim)] + gens
        if len(gens) != cap + 1:
            raise ConfigurationError("need one generator per order 1..K")
        if validate:
            if len(c_mat) != dim or len(d) != dim:
                raise ConfigurationError("affine part has the wrong dimension")
            cf = tuple(tuple(Fraction(x) for x in row) for row in c_mat)
            if not sdata.is_symplectic_matrix(cf):
                raise ConfigurationError("linear part is not in Sp(2n, Z)")
            if not gens[0].is_zero():
                raise ConfigurationError("generator curve must have valuation >= 1")
            for k, g in enumerate(gens):
                if g.dim != dim:
                    raise ConfigurationError("generator dim mismatch")
                if not g.is_real():
                    raise ConfigurationError(f"order-{k} generator is not real")
                if not g.is_symplectic(sdata):
                    raise ConfigurationError(f"order-{k} generator is not symplectic")
        inv_frac = inverse(tuple(tuple(Fraction(x) for x in row) for row in c_mat))
        c_inv = tuple(tuple(int(x) for x in row) for row in inv_frac)
        if any(
            Fraction(c_inv[i][j]) != inv_frac[i][j] for i in range(dim) for j in range(dim)
        ):
            raise InternalInconsistency("Sp(2n, Z) inverse is not integral")
        self.sdata = sdata
        self.cap = cap
        self.c_mat = c_mat
        self.c_inv = c_inv
        self.d = d
        self.gens = gens

    # -- constructors ----------------------------------------------------------

    @classmethod
    def identity(cls, sdata, cap):
        dim = sdata.dim
        return cls(
            sdata,
            cap,
            mat_identity(dim),
            (Fraction(0),) * dim,
            [FourierVectorField.zero(dim)] * (cap + 1),
            validate=False,
        )

    @classmethod
    def affine(cls, sdata, cap, c_mat, d):
        dim = sdata.dim
        return cls(sdata, cap, c_mat, d, [FourierVectorField.zero(dim)] * (cap + 1))

    @classmethod
    def from_generators(cls, sdata, cap, gens):
        dim = sdata.dim
        return cls(sdata, cap, mat_identity(dim), (Fraction(0),) * dim, gens)

    @classmethod
    def from_hamiltonian(cls, sdata, cap, f: FourierScalar, order, coeff=1):
        """psi_f(c t^k) = exp(c t^k X_f) with identity affine part."""
        if not 1 <= order <= cap:
            raise PreconditionError("Hamiltonian order must lie in 1..K")
        if not f.is_real():
            raise PreconditionError("Hamiltonian must be real")
        dim = sdata.dim
        gens = [FourierVectorField.zero(dim) for _ in range(cap + 1)]
        gens[order] = hamiltonian_field(sdata, f).scale(Fraction(coeff))
        return cls(sdata, cap, mat_identity(dim), (Fraction(0),) * dim, gens)

    # -- basic queries ---------------------------------------------------------

    @property
    def dim(self):
        return self.sdata.dim

    def is_identity(self):
        dim = self.dim
        return (
            self.c_mat == mat_identity(dim)
            and all(x == 0 for x in self.d)
            and all(g.is_zero() for g in self.gens)
        )

    def has_identity_affine_part(self):
        return self.c_mat == mat_identity(self.dim) and all(x == 0 for x in self.d)

    def __eq__(self, other):
        """Equality of canonical forms sigma^* o exp X_t."""
        if not isinstance(other, SymplectoCurve):
            return NotImplemented
        return (
            self.sdata == other.sdata
            and self.cap == other.cap
            and self.c_mat == other.c_mat
            and self.d == other.d
            and self.gens == other.gens
        )

    def __repr__(self):
        return f"SymplectoCurve(dim={self.dim}, cap={self.cap})"

    # -- operator action on scalars ---------------------------------------------

    def apply_to_scalar_curve(self, fcurve):
        exp_part = exp_apply_scalar(self.gens, fcurve, self.cap)
        return [affine_pullback_scalar(self.c_mat, self.d, g) for g in exp_part]

    def apply_to_scalar(self, f: FourierScalar):
        fcurve = [f] + [FourierScalar.zero(self.dim)] * self.cap
        return self.apply_to_scalar_curve(fcurve)


def invert(psi: SymplectoCurve) -> SymplectoCurve:
    """psi^{-1} = tau^* o exp(Ad_{sigma^*}(-X_t)) with tau = sigma^{-1}."""
    gens = [
        conj_affine(psi.c_mat, psi.c_inv, psi.d, -g) if not g.is_zero() else g
        for g in psi.gens
    ]
    d_inv = tuple(-x for x in mat_vec(
        tuple(tuple(Fraction(v) for v in row) for row in psi.c_inv), psi.d
    ))
    return SymplectoCurve(psi.sdata, psi.cap, psi.c_inv, d_inv, gens)


def act_on_vector_field(psi: SymplectoCurve, ycurve):
    """psi . Y = psi Y psi^{-1} = Ad_{sigma^*}(exp(ad X_t) Y), per order."""
    cap = psi.cap
    if len(ycurve) != cap + 1:
        raise PreconditionError("vector-field curve cap mismatch")
    moved = exp_ad_field(psi.gens, list(ycurve), cap)
    return [conj_affine(psi.c_mat, psi.c_inv, psi.d, y) for y in moved]


def act_on_connection(psi: SymplectoCurve, conn: ConnectionCurve) -> ConnectionCurve:
    """Basis transport: (psi . nabla)_{e_a} e_b = psi.(nabla_{psi^{-1}.e_a}
    (psi^{-1}.e_b)), lowered with omega.

    The output is verified fully symmetric and flat at order 0; a failure is
    fatal because it would mean the action left the space of symplectic
    connection curves.
    """
    sdata, cap, dim = conn.sdata, conn.cap, conn.dim
    if psi.cap != cap or psi.dim != dim:
        raise PreconditionError("symplectomorphism and connection caps must match")
    inv = invert(psi)
    zero_field = FourierVectorField.zero(dim)
    basis_back = []
    for a in range(dim):
        const = FourierVectorField.constant(
            dim, [Fraction(1) if p == a else Fraction(0) for p in range(dim)]
        )
        basis_back.append(act_on_vector_field(inv, [const] + [zero_field] * cap))
    mixed = conn.mixed
    lo = sdata.omega_lo
    new_components = [dict() for _ in range(cap + 1)]
    for a in range(dim):
        xa = basis_back[a]
        for b in range(dim):
            yb = basis_back[b]
            # nabla^t_{X} Y per order, as a vector-field curve
            deriv = []
            for k in range(cap + 1):
                acc = FourierVectorField.zero(dim)
                for s in range(k + 1):
                    xs = xa[s]
                    if xs.is_zero():
                        continue
                    comps = [xs.apply(c) for c in yb[k - s].comps]
                    acc = acc + FourierVectorField(comps)
                for s in range(1, k + 1):
                    gamma = mixed[s]
                    if gamma.is_zero():
                        continue
                    for u in range(k - s + 1):
                        xu, yv = xa[u], yb[k - s - u]
                        if xu.is_zero() or yv.is_zero():
                            continue
                        comps = [FourierScalar.zero(dim) for _ in range(dim)]
                        for (p, q, c), g in gamma.components.items():
                            term = g * xu.comps[p] * yv.comps[q]
                            if term:
                                comps[c] = comps[c] + term
                        acc = acc + FourierVectorField(comps)
                deriv.append(acc)
            forward = act_on_vector_field(psi, deriv)
            for k in range(cap + 1):
                for c in range(dim):
                    val = FourierScalar.zero(dim)
                    for p in range(dim):
                        if lo[p][c] and forward[k].comps[p]:
                            val = val + forward[k].comps[p].scale(lo[p][c])
                    if val:
                        new_components[k][(a, b, c)] = val
    abar = []
    for k, comp in enumerate(new_components):
        t = TensorField(dim, 3, comp, symmetry_tag="none", _validated=True)
        if k == 0:
            if not t.is_zero():
                raise InternalInconsistency(
                    "action moved the order-0 term away from the flat base"
                )
            abar.append(TensorField.zero(dim, 3, "fully_symmetric"))
            continue
        if not t.is_fully_symmetric():
            raise InternalInconsistency(
                f"acted connection lost full symmetry at order {k}"
            )
        if not t.is_real():
            raise InternalInconsistency(f"acted connection lost reality at order {k}")
        abar.append(
            TensorField(dim, 3, comp, symmetry_tag="fully_symmetric", _validated=True)
        )
    return ConnectionCurve(sdata, cap, abar, validate=False)


# -- normal ordering -----------------------------------------------------------


def _test_scalars(dim, cap):
    """The generators e^{i x^a} of the function algebra, as scalar curves.

    Two truncated algebra automorphisms that agree on these (and hence, by
    conjugation, on e^{-i x^a}) agree everywhere, since every trigonometric
    polynomial is a Gaussian-rational combination of their products.
    """
    out = []
    zero = FourierScalar.zero(dim)
    for a in range(dim):
        mode = tuple(1 if i == a else 0 for i in range(dim))
        out.append([FourierScalar.single_mode(dim, mode)] + [zero] * cap)
    return out


def _extract_order(dim, targets, currents, k):
    """Solve exp(Z)|_k = target on the test scalars for the order-k field.

    At order k the mismatch on f_a = e^{i x^a} is exactly Z^(k) f_a =
    i Z^(k)a f_a, so Z^(k)a = -i e^{-i x^a} (target - current)."""
    comps = []
    for a in range(dim):
        mode = tuple(-1 if i == a else 0 for i in range(dim))
        diff = targets[a][k] - currents[a][k]
        comps.append((diff.shift_mode(mode)).scale(_MINUS_I))
    return FourierVectorField(comps)


def merge_exponentials(sdata, cap, gens_a, gens_b):
    """The generator ladder Z with exp(Z_t) = exp(A_t) exp(B_t) through the
    cap, found order by order on test scalars (no BCH series needed)."""
    dim = sdata.dim
    tests = _test_scalars(dim, cap)
    targets = [
        exp_apply_scalar(gens_a, exp_apply_scalar(gens_b, f, cap), cap) for f in tests
    ]
    z = [FourierVectorField.zero(dim) for _ in range(cap + 1)]
    for k in range(1, cap + 1):
        currents = [exp_apply_scalar(z, f, cap) for f in tests]
        z[k] = _extract_order(dim, targets, currents, k)
        if not z[k].is_real() or not z[k].is_symplectic(sdata):
            raise InternalInconsistency(
                f"merged generator at order {k} is not a real symplectic field"
            )
    for f, target in zip(tests, targets):
        if exp_apply_scalar(z, f, cap) != target:
            raise InternalInconsistency("normal ordering failed verification")
    return z


def compose(psi: SymplectoCurve, phi: SymplectoCurve) -> SymplectoCurve:
    """Operator composition psi o phi, re-normal-ordered to sigma^* o exp Z_t.

    With sigma_psi^* exp(X) sigma_phi^* exp(Y) the affine parts collect to
    (sigma_phi o sigma_psi)^* and X is conjugated through sigma_phi^{-1}.
    """
    if psi.sdata != phi.sdata or psi.cap != phi.cap:
        raise PreconditionError("composition needs matching omega and caps")
    sdata, cap = psi.sdata, psi.cap
    cf = tuple(tuple(Fraction(x) for x in row) for row in phi.c_mat)
    c_new = tuple(
        tuple(
            sum(phi.c_mat[i][k] * psi.c_mat[k][j] for k in range(psi.dim))
            for j in range(psi.dim)
        )
        for i in range(psi.dim)
    )
    d_new = tuple(x + y for x, y in zip(mat_vec(cf, psi.d), phi.d))
    moved = [
        conj_affine(phi.c_inv, phi.c_mat, _neg_inv_translation(phi), g)
        if not g.is_zero()
        else g
        for g in psi.gens
    ]
    z = merge_exponentials(sdata, cap, moved, phi.gens)
    return SymplectoCurve(sdata, cap, c_new, d_new, z)


def _neg_inv_translation(phi: SymplectoCurve):
    """Translation of sigma_phi^{-1}, i.e. -C^{-1} d."""
    inv_frac = tuple(tuple(Fraction(v) for v in row) for row in phi.c_inv)
    return tuple(-x for x in mat_vec(inv_frac, phi.d))


def factorize(psi: SymplectoCurve):
    """Split exp X_t into the ordered product exp(t Y1) o exp(t^2 Y2) o ...

    Returns [(Y^(k), k)] for the nonzero factors, verified by re-composing
    the product back into a single exponential and comparing ladders.
    """
    if not psi.has_identity_affine_part():
        raise PreconditionError("factorization requires the identity affine part")
    sdata, cap, dim = psi.sdata, psi.cap, psi.dim
    tests = _test_scalars(dim, cap)
    targets = [exp_apply_scalar(psi.gens, f, cap) for f in tests]
    factors = []
    for k in range(1, cap + 1):
        currents = []
        for f in tests:
            cur = f
            for gens_j in reversed(factors):
                cur = exp_apply_scalar(gens_j, cur, cap)
            currents.append(cur)
        yk = _extract_order(dim, targets, currents, k)
        if not yk.is_real() or not yk.is_symplectic(sdata):
            raise InternalInconsistency(
                f"factor at order {k} is not a real symplectic field"
            )
        gens_k = [FourierVectorField.zero(dim) for _ in range(cap + 1)]
        gens_k[k] = yk
        factors.append(gens_k)
    recomposed = factors[0]
    for gens_k in factors[1:]:
        recomposed = merge_exponentials(sdata, cap, recomposed, gens_k)
    if recomposed != psi.gens:
        raise InternalInconsistency("factorization failed re-composition")
    return [
        (factors[k - 1][k], k)
        for k in range(1, cap + 1)
        if not factors[k - 1][k].is_zero()
    ]


def one_param_group_check(sdata, cap, f: FourierScalar, order, a, b) -> bool:
    """psi_f(a t^k) o psi_f(b t^k) == psi_f((a+b) t^k) through the cap."""
    psi_a = SymplectoCurve.from_hamiltonian(sdata, cap, f, order, a)
    psi_b = SymplectoCurve.from_hamiltonian(sdata, cap, f, order, b)
    combined = compose(psi_a, psi_b)
    ab = Fraction(a) + Fraction(b)
    if ab == 0:
        return combined.is_identity()
    return combined == SymplectoCurve.from_hamiltonian(sdata, cap, f, order, ab)
