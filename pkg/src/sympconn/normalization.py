"""Normalization of Ricci-type connection curves to flat invariant ones.

Each order's symmetric 3-tensor splits as grad^3(potential) + constant part;
conjugating by the Hamiltonian step psi_{-U}(t^k) removes the potential and
leaves the constant part.  Iterating over orders produces a flat invariant
curve together with an explicit symplectomorphism witness, and every claim
the argument relies on (invariance of the order-k Ricci data, flatness of
the result, exactness of the witness) is asserted at runtime.
"""

from __future__ import annotations

from dataclasses import dataclass

from .curvature import (
    ConnectionCurve,
    curvature_bundle,
    curvature_curve,
    require_ricci_type,
)
from .errors import InternalInconsistency, NotExactCube, PreconditionError
from .fourier import FourierScalar, TensorField
from .invariant import (
    StructureMapCurve,
    embed_invariant,
    flatness_theorem_check,
    zero_cube,
)
from .rationals import Fraction, GaussianRational
from .symplecto import SymplectoCurve, act_on_connection, compose

_I_CUBED = GaussianRational(0, -1)  # (i)^3 = -i


@dataclass
class PotentialSplit:
    """S = grad^3(U) + Q with U zero-mean and Q a constant cube."""

    potential: FourierScalar
    constant_cube: tuple


def potential_split(s: TensorField) -> PotentialSplit:
    """Split a fully symmetric rank-3 field into grad^3(U) + constant.

    For each nonzero mode m, the candidate is read off one component with
    m_b != 0 via S_bbb(m) = (i m_b)^3 U^(m), then all (2n)^3 component
    equations at that mode are verified exactly.  Failure raises
    NotExactCube with the offending mode and component.
    """
    if s.rank != 3 or not s.is_fully_symmetric():
        raise PreconditionError("potential_split needs a fully symmetric rank-3 field")
    dim = s.dim
    zero_mode = (0,) * dim
    modes = set()
    for f in s.components.values():
        modes.update(f.coeffs)
    modes.discard(zero_mode)
    u_coeffs = {}
    for m in sorted(modes):
        b = next(i for i, mi in enumerate(m) if mi)
        s_bbb = s.get((b, b, b)).coeff(m)
        # (i m_b)^3 = -i m_b^3
        u_hat = s_bbb / (_I_CUBED * (m[b] ** 3))
        for p in range(dim):
            for q in range(dim):
                for r in range(dim):
                    want = u_hat * (_I_CUBED * (m[p] * m[q] * m[r]))
                    if s.get((p, q, r)).coeff(m) != want:
                        raise NotExactCube(m, (p, q, r))
        if not u_hat.is_zero():
            u_coeffs[m] = u_hat
    potential = FourierScalar(dim, u_coeffs, _validated=True)
    if not potential.is_real():
        raise NotExactCube(zero_mode, (0, 0, 0), "potential is not real")
    cube = tuple(
        tuple(
            tuple(_real_constant(s.get((p, q, r))) for r in range(dim))
            for q in range(dim)
        )
        for p in range(dim)
    )
    return PotentialSplit(potential, cube)


def _real_constant(f: FourierScalar) -> Fraction:
    c = f.constant_part()
    if not c.is_real():
        raise InternalInconsistency("constant part of a real field is not real")
    return c.re


def _grad3(u: FourierScalar, dim) -> TensorField:
    comp = {}
    for p in range(dim):
        dp = u.derivative(p)
        for q in range(p, dim):
            dpq = dp.derivative(q)
            for r in range(q, dim):
                g = dpq.derivative(r)
                if g:
                    for idx in {(p, q, r), (p, r, q), (q, p, r), (q, r, p), (r, p, q), (r, q, p)}:
                        comp[idx] = g
    return TensorField(dim, 3, comp, symmetry_tag="fully_symmetric", _validated=True)


def _assert_order_invariant(conn: ConnectionCurve, k):
    """The order-k Ricci data (r, u, b) of a Ricci-type curve whose lower
    orders are invariant must itself be invariant; a violation is a bug."""
    bundle = curvature_bundle(conn)
    for label, curve in (("r", bundle.r), ("u", bundle.u), ("b", bundle.b)):
        if not curve[k].is_constant():
            raise InternalInconsistency(
                f"{label}^({k}) is not invariant although orders below {k} are"
            )


def recurrence_step(conn: ConnectionCurve, k):
    """One normalization step at order k.

    Returns (f_k, Q cube, updated curve, psi step) where f_k = -U^(k) and
    the updated curve equals psi_{f_k}(t^k) . conn with invariant order-k
    term Q.  Preconditions: orders < k invariant, curve Ricci type.
    """
    if not 1 <= k <= conn.cap:
        raise PreconditionError("step order must lie in 1..K")
    for p in range(1, k):
        if not conn.abar[p].is_constant():
            raise PreconditionError(f"order {p} must already be invariant")
    require_ricci_type(conn)
    _assert_order_invariant(conn, k)
    split = potential_split(conn.abar[k])
    f_k = -split.potential
    if f_k.is_zero():
        step = SymplectoCurve.identity(conn.sdata, conn.cap)
        updated = conn
    else:
        step = SymplectoCurve.from_hamiltonian(conn.sdata, conn.cap, f_k, k)
        updated = act_on_connection(step, conn)
    expected = TensorField.from_constant(conn.dim, 3, split.constant_cube, "fully_symmetric")
    if updated.abar[k] != expected:
        raise InternalInconsistency(
            f"order-{k} term after the Hamiltonian step is not the constant part"
        )
    for p in range(1, k):
        if updated.abar[p] != conn.abar[p]:
            raise InternalInconsistency(
                f"the order-{k} step modified the settled order {p}"
            )
    return f_k, split.constant_cube, updated, step


@dataclass
class NormalizationResult:
    flat_curve: StructureMapCurve
    witness: SymplectoCurve
    per_order_log: list


def normalize_curve(conn: ConnectionCurve) -> NormalizationResult:
    """Conjugate a Ricci-type curve to a flat invariant one.

    The witness is the composition of the per-order Hamiltonian steps
    (latest step outermost), and witness . input = embedded flat curve is
    asserted exactly, as is flatness of the resulting invariant curve and,
    as a corollary, flatness of the input itself.
    """
    require_ricci_type(conn)
    sdata, cap = conn.sdata, conn.cap
    witness = SymplectoCurve.identity(sdata, cap)
    current = conn
    cubes = [None] * (cap + 1)
    log = []
    for k in range(1, cap + 1):
        f_k, cube, current, step = recurrence_step(current, k)
        cubes[k] = cube
        if not step.is_identity():
            witness = compose(step, witness)
        log.append(
            {
                "order": k,
                "potential_support": len(f_k.coeffs),
                "order_now_invariant": current.abar[k].is_constant(),
            }
        )
    if not current.is_invariant():
        raise InternalInconsistency("normalized curve is not invariant at all orders")
    flat = StructureMapCurve(
        sdata, cap, [zero_cube(sdata.dim)] + [cubes[k] for k in range(1, cap + 1)]
    )
    flatness_theorem_check(flat)
    if act_on_connection(witness, conn) != embed_invariant(flat):
        raise InternalInconsistency("witness does not conjugate the input to the flat curve")
    if not all(t.is_zero() for t in curvature_curve(conn).orders):
        raise InternalInconsistency(
            "input of a successful normalization must itself be flat"
        )
    return NormalizationResult(flat, witness, log)
