from fractions import Fraction

import pytest

from sympconn.errors import PreconditionError
from sympconn.euclidean import (
    Poly,
    PolySymplecto,
    PolyVectorField,
    equivalence_Rn,
    psi_A,
    psi_A_connection_check,
    psi_A_symplectic_check,
    psi_At,
    psi_At_connection_check,
    require_nilpotent_cube,
    stabilizer_check,
    structure_field,
    validity_check_cubes,
)
from sympconn.fourier import SymplecticData
from sympconn.generate import rank_one_ladder, validated_sum_ladder
from sympconn.invariant import StructureMapCurve, rank_one_cube, zero_cube

SD = SymplecticData.standard(4)


def e_vec(a):
    return tuple(Fraction(1) if i == a else Fraction(0) for i in range(4))


def cube_e1():
    return rank_one_cube(SD, e_vec(0))


def test_psi_A_closed_form():
    """For the rank-one cube on e_1 and the standard omega, A(x)x points
    along e_1 with coefficient -(x^3)^2, so psi^A(x) = x + (x^3)^2/2 e_1."""
    psi = psi_A(SD, cube_e1())
    first = psi.comps[0]
    assert first.coeffs.get((1, 0, 0, 0)) == 1
    assert first.coeffs.get((0, 0, 2, 0)) == Fraction(1, 2)
    assert len(first.coeffs) == 2
    for a in (1, 2, 3):
        e_a = tuple(1 if i == a else 0 for i in range(4))
        assert psi.comps[a].coeffs == {e_a: Fraction(1)}


def test_psi_A_is_symplectic_and_transports_flat():
    assert psi_A_symplectic_check(SD, cube_e1())
    assert psi_A_connection_check(SD, cube_e1())


def scaled(cube, c):
    return [[[c * x for x in row] for row in plane] for plane in cube]


def test_psi_A_one_parameter_group():
    cube = cube_e1()
    a, b = Fraction(2, 3), Fraction(-1, 2)
    lhs = psi_A(SD, scaled(cube, a)).compose(psi_A(SD, scaled(cube, b)))
    assert lhs.comps == psi_A(SD, scaled(cube, a + b)).comps
    assert psi_A(SD, scaled(cube, a)).compose(psi_A(SD, scaled(cube, -a))).is_identity()


def test_require_nilpotent_rejects_bad_cube():
    # rank-one cubes on e_1 and e_3 do not multiply to zero: omega(e_1, e_3) = 1
    bad = [
        [[cube_e1()[i][j][k] + rank_one_cube(SD, e_vec(2))[i][j][k] for k in range(4)]
         for j in range(4)]
        for i in range(4)
    ]
    with pytest.raises(PreconditionError):
        require_nilpotent_cube(SD, bad)


def test_structure_field_flow_equals_psi_A():
    """The degree-1 flow of X_A = -1/2 A(x)x reproduces the closed form
    psi^A on coordinates (the Lie series terminates by nilpotency)."""
    from sympconn.euclidean import flow_coordinate_maps

    cube = cube_e1()
    gens = [PolyVectorField.zero(4), structure_field(SD, cube)]
    maps = flow_coordinate_maps(gens, 1)
    closed = psi_A(SD, cube)
    assert maps[1] is not None
    # order-1 coefficient of the flow is X_A applied to x, i.e. the quadratic
    # part of psi^A
    for p in range(4):
        quad = {e: c for e, c in closed.comps[p].coeffs.items() if sum(e) == 2}
        assert maps[1].comps[p].coeffs == quad or maps[1].comps[p].coeffs == {
            e: c for e, c in quad.items()
        }


def test_psi_At_transports_flat_to_invariant():
    for seed in range(3):
        ladder = rank_one_ladder(SD, 3, seed=seed)
        validity_check_cubes(ladder)  # raises on failure
        assert psi_At_connection_check(ladder)


def test_psi_At_rejects_cross_order_violations():
    curve = StructureMapCurve(
        SD, 2, [zero_cube(4), cube_e1(), rank_one_cube(SD, e_vec(2))]
    )
    # cross term appears at order 3 only, beyond this cap: valid as truncated
    validity_check_cubes(curve)
    curve3 = StructureMapCurve(
        SD, 3, [zero_cube(4), cube_e1(), rank_one_cube(SD, e_vec(2)), zero_cube(4)]
    )
    with pytest.raises(PreconditionError):
        psi_At(curve3)


def test_equivalence_Rn_produces_verified_witness():
    a = rank_one_ladder(SD, 3, seed=1)
    b = validated_sum_ladder(SD, 3, seed=5)
    merged = equivalence_Rn(a, b)  # verified internally
    assert len(merged) == 4


def test_stabilizer_affine_curve():
    c = [[1, 0, 1, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]  # transvection
    d = [Fraction(1, 2), Fraction(0), Fraction(0), Fraction(0)]
    translation = PolyVectorField([Poly.constant(4, 1)] + [Poly.zero(4)] * 3)
    psi = PolySymplecto(SD, 2, c, d, [translation, PolyVectorField.zero(4)])
    verdict, (c_out, d_out, c_t, d_t) = stabilizer_check(psi)
    assert verdict == "stabilizes"
    assert c_out == tuple(tuple(Fraction(x) for x in row) for row in c)
    assert d_t[0] == (Fraction(1), Fraction(0), Fraction(0), Fraction(0))


def test_stabilizer_detects_moving_curve():
    ident = [[1 if i == j else 0 for j in range(4)] for i in range(4)]
    gens = [structure_field(SD, cube_e1()), PolyVectorField.zero(4)]
    psi = PolySymplecto(SD, 2, ident, [Fraction(0)] * 4, gens)
    verdict, order = stabilizer_check(psi)
    assert verdict == "moves"
    assert order == 1
