import json
import sys

import pytest

from sympconn.cli import main
from sympconn.generate import conjugated_flat_fixture, rank_one_ladder
from sympconn.fourier import SymplecticData
from sympconn.moduli import sp_action, sp_generators
from sympconn.serialize import dump_path, load_path

SD = SymplecticData.standard(4)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write_moved(tmp_path, seed=1, cap=3):
    _, _, moved = conjugated_flat_fixture(seed, dim=4, cap=cap)
    p = tmp_path / "moved.json"
    dump_path(moved, p)
    return p


def test_check_passes_on_conjugated_fixture(tmp_path, capsys):
    p = write_moved(tmp_path)
    code, out, err = run(capsys, "check", str(p))
    assert code == 0
    report = json.loads(out)
    assert report["ricci_type"] is True
    assert all(report["W_vanishes_per_order"])
    assert report["u_first_nonzero_order"] is None
    assert report["b_first_nonzero_order"] is None
    assert "elapsed" in err and "elapsed" not in out


def test_check_reports_are_byte_identical(tmp_path, capsys):
    p = write_moved(tmp_path)
    _, out1, _ = run(capsys, "check", str(p))
    _, out2, _ = run(capsys, "check", str(p))
    assert out1 == out2


def test_check_negative_verdict_exit_1(tmp_path, capsys):
    code, out, _ = run(capsys, "generate", "--kind", "random", "--seed", "3",
                       "--out", str(tmp_path / "rnd.json"))
    assert code == 0
    code, out, _ = run(capsys, "check", str(tmp_path / "rnd.json"))
    assert code == 1
    report = json.loads(out)
    assert report["ricci_type"] is False
    assert report["first_failing_order"] == 1


def test_normalize_round_trip(tmp_path, capsys):
    p = write_moved(tmp_path)
    flat_p = tmp_path / "flat.json"
    wit_p = tmp_path / "wit.json"
    code, out, _ = run(capsys, "normalize", str(p),
                       "--out", str(flat_p), "--witness", str(wit_p))
    assert code == 0
    # act the witness on the input and compare against the embedded flat
    from sympconn.invariant import embed_invariant
    from sympconn.symplecto import act_on_connection

    flat = load_path(flat_p)
    witness = load_path(wit_p)
    moved = load_path(p)
    assert act_on_connection(witness, moved) == embed_invariant(flat)


def test_normalize_refuses_non_ricci(tmp_path, capsys):
    run(capsys, "generate", "--kind", "random", "--seed", "3",
        "--out", str(tmp_path / "rnd.json"))
    code, _, err = run(capsys, "normalize", str(tmp_path / "rnd.json"))
    assert code == 1
    assert "first failing order 1" in err


def test_generate_rank_one_value(tmp_path, capsys):
    out_p = tmp_path / "r1.json"
    code, _, _ = run(capsys, "generate", "--kind", "rank-one", "--dim", "4",
                     "--order", "1", "--vector", "1,0,0,0", "--out", str(out_p))
    assert code == 0
    obj = json.loads(out_p.read_text())
    assert obj["kind"] == "structure_map_curve"
    assert obj["cubes"][1][2][2][2] == "-1"
    assert obj["provenance"]["generator"] == "rank-one"


def test_generate_gradient(tmp_path, capsys):
    out_p = tmp_path / "g.json"
    code, _, _ = run(capsys, "generate", "--kind", "gradient", "--mode", "1,0,0,0",
                     "--trig", "cos", "--order", "2", "--out", str(out_p))
    assert code == 0
    conn = load_path(out_p)
    from sympconn.fourier import FourierScalar

    assert conn.abar[1].get((0, 0, 0)) == FourierScalar.sine(4, (1, 0, 0, 0))


def test_generate_rejects_small_dimension(capsys):
    code, _, err = run(capsys, "generate", "--kind", "random", "--dim", "2")
    assert code == 2
    assert "even integer >= 4" in err


def test_equiv_verdicts(tmp_path, capsys):
    a = rank_one_ladder(SD, 2, seed=5)
    g = sp_generators(SD)[2]
    b = sp_action(g, a)
    pa, pb = tmp_path / "a.json", tmp_path / "b.json"
    dump_path(a, pa)
    dump_path(b, pb)
    code, out, _ = run(capsys, "equiv", str(pa), str(pb), "--bound", "1")
    assert code == 0
    assert json.loads(out)["verdict"] == "equivalent"
    code, out, _ = run(capsys, "equiv", str(pa), str(pa), "--bound", "1")
    assert code == 0
    assert json.loads(out)["witness"] == [[1 if i == j else 0 for j in range(4)]
                                          for i in range(4)]


def test_equiv_distinct_exit_1(tmp_path, capsys):
    from fractions import Fraction

    from sympconn.invariant import StructureMapCurve, rank_one_cube, zero_cube

    def e_vec(i):
        return tuple(Fraction(1) if j == i else Fraction(0) for j in range(4))

    one = StructureMapCurve(SD, 1, [zero_cube(4), rank_one_cube(SD, e_vec(0))])
    two_cube = [
        [[rank_one_cube(SD, e_vec(0))[a][b][c] + rank_one_cube(SD, e_vec(1))[a][b][c]
          for c in range(4)] for b in range(4)]
        for a in range(4)
    ]
    two = StructureMapCurve(SD, 1, [zero_cube(4), two_cube])
    pa, pb = tmp_path / "one.json", tmp_path / "two.json"
    dump_path(one, pa)
    dump_path(two, pb)
    code, out, _ = run(capsys, "equiv", str(pa), str(pb), "--bound", "1")
    assert code == 1
    assert json.loads(out)["verdict"] == "distinct"


def test_act_round_trip(tmp_path, capsys):
    p = write_moved(tmp_path, seed=2)
    flat_p, wit_p = tmp_path / "flat.json", tmp_path / "wit.json"
    run(capsys, "normalize", str(p), "--out", str(flat_p), "--witness", str(wit_p))
    acted_p = tmp_path / "acted.json"
    code, _, _ = run(capsys, "act", str(wit_p), str(p), "--out", str(acted_p))
    assert code == 0
    from sympconn.invariant import embed_invariant

    assert load_path(acted_p) == embed_invariant(load_path(flat_p))


def test_corrupted_file_exit_2(tmp_path, capsys):
    p = write_moved(tmp_path)
    obj = json.loads(p.read_text())
    target = next(
        e for order in obj["A"] for e in order["entries"] if len(set(e["idx"])) > 1
    )

    def triple(s):
        num, den = (s.split("/") + ["1"])[:2]
        return f"{3 * int(num)}/{den}"

    for mode in target["modes"]:
        mode["c"]["re"] = triple(mode["c"]["re"])
        mode["c"]["im"] = triple(mode["c"]["im"])
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(obj))
    code, _, err = run(capsys, "check", str(bad))
    assert code == 2
    assert "symmetry" in err and "idx" in err


def test_missing_file_exit_2(capsys):
    code, _, err = run(capsys, "check", "no-such-file.json")
    assert code == 2
