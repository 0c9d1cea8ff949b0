from fractions import Fraction

import pytest

from sympconn.curvature import (
    bianchi_check,
    curvature_bundle,
    curvature_curve,
    ew_split,
    extract_u_b,
    is_ricci_type,
    nabla_omega_curve,
    require_ricci_type,
    ricci_curve,
    ricci_from_curvature,
)
from sympconn.errors import PreconditionError
from sympconn.fourier import FourierScalar, SymplecticData
from sympconn.generate import (
    conjugated_flat_fixture,
    gradient_curve,
    random_connection_curve,
)


def test_curvature_symmetries():
    conn = random_connection_curve(11, dim=4, cap=2)
    r4 = curvature_curve(conn)
    for t in r4.orders:
        assert t.is_real()
        assert t.is_curvature_type()


def test_omega_is_parallel():
    conn = random_connection_curve(12, dim=4, cap=2)
    assert nabla_omega_curve(conn).is_zero()


def test_ricci_matches_trace_of_curvature():
    """The independently computed Ricci curve must agree with the omega-trace
    of the full curvature: r_ab = sum_q R^q_{aqb}."""
    for seed in range(4):
        conn = random_connection_curve(seed, dim=4, cap=2)
        assert ricci_curve(conn) == ricci_from_curvature(curvature_curve(conn), conn.sdata)


def test_ew_reconstruction_and_trace_free_w():
    conn = random_connection_curve(13, dim=4, cap=2)
    r4 = curvature_curve(conn)
    r2 = ricci_curve(conn)
    e, w = ew_split(r4, r2, conn.sdata)
    for k in range(conn.cap + 1):
        assert e[k] + w[k] == r4[k]
    assert ricci_from_curvature(w, conn.sdata).is_zero()


def test_bianchi_identities():
    for seed in range(3):
        assert bianchi_check(random_connection_curve(seed + 40, dim=4, cap=2))["ok"]


def test_flat_curve_has_zero_curvature():
    flat, psi, moved = conjugated_flat_fixture(3)
    assert all(t.is_zero() for t in curvature_curve(moved).orders)


def test_conjugated_flat_is_ricci_type_with_zero_u_b():
    _, _, moved = conjugated_flat_fixture(5)
    ok, order, witness = is_ricci_type(moved)
    assert ok and order is None and witness is None
    u, b, residuals = extract_u_b(moved)
    assert residuals["ok"]
    assert u.is_zero()
    assert b.is_zero()


def test_gradient_curve_is_ricci_type():
    sd = SymplecticData.standard(4)
    conn = gradient_curve(sd, 2, FourierScalar.cosine(4, (1, 0, 0, 0)), 1)
    ok, _, _ = is_ricci_type(conn)
    assert ok


def test_require_ricci_type_names_failing_order():
    conn = random_connection_curve(3, dim=4, cap=2)  # generic: not Ricci type
    ok, order, _ = is_ricci_type(conn)
    assert not ok
    with pytest.raises(PreconditionError, match=f"order {order}"):
        require_ricci_type(conn)


def test_low_order_vanishing_on_ricci_type():
    _, _, moved = conjugated_flat_fixture(8, dim=4, cap=3)
    bundle = curvature_bundle(moved)
    for k in (1, 2):
        assert bundle.r[k].is_zero()
        assert bundle.R[k].is_zero()
        assert bundle.u[k].is_zero()
        assert bundle.b[k].is_zero()
