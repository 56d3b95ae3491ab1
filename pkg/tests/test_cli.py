import json

import pytest

from toricbound.cli import main
from toricbound.cone import Cone
from toricbound.errors import InputError
from toricbound.families import FamilySpec
from toricbound.harness import CheckPlan
from toricbound.ideals import ContainmentResult, MonomialIdeal
from toricbound.serialize import (
    class_group_from_json,
    cone_from_json,
    cone_to_json,
    containment_from_json,
    hilbert_basis_from_json,
    ideal_from_json,
    ideal_to_json,
)


def run_cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


def test_hilbert_basis(capsys):
    code, data, _ = run_cli(capsys, "hilbert-basis", "--family", "hypersurface", "--n", "2", "--D", "2")
    assert code == 0 and data == [[1, 0], [0, 1], [-1, 2]]
    assert hilbert_basis_from_json(data) == [(1, 0), (0, 1), (-1, 2)]


def test_class_group(capsys):
    code, data, _ = run_cli(capsys, "class-group", "--family", "veronese", "--n", "3", "--D", "3")
    assert code == 0
    assert data["invariant_factors"] == [3] and data["exponent"] == 3
    assert class_group_from_json(data)["invariant_factors"] == [3]
    assert cone_from_json(data["ring"]) == Cone.from_generators(3, [(1, 0, 0), (0, 1, 0), (-1, -1, 3)])


def test_check_theorem(capsys):
    code, data, _ = run_cli(capsys, "check", "--theorem", "thm54_veronese", "--n", "2", "--D", "2",
                            "--rmax", "3", "--degree-bound", "10")
    assert code == 0 and data["verdict"] == "PASS"
    assert CheckPlan.from_json(data["plan"]).theorem == "thm54_veronese"


def test_single_containment_exit_codes(capsys):
    code, data, _ = run_cli(capsys, "check", "--family", "veronese", "--face", "[[1,0]]", "--E", "3", "--r", "3")
    assert code == 1 and data["counterexample"] == [4, 2]
    assert containment_from_json(data) == ContainmentResult(False, (4, 2), 10)
    code, data, _ = run_cli(capsys, "check", "--family", "veronese", "--face", "[[1,0]]", "--E", "3", "--r", "2")
    assert code == 0 and data["holds"]


def test_prime_round_trip(capsys):
    code, data, _ = run_cli(capsys, "prime", "--family", "veronese", "--face", "[[1,0]]")
    assert code == 0 and data["generators"] == [[2, 1], [1, 1]]
    I = ideal_from_json(data)
    assert isinstance(I, MonomialIdeal) and I.generators == ((2, 1), (1, 1))
    assert ideal_from_json(ideal_to_json(I)).generators == I.generators


def test_orders_and_witness(capsys):
    args = ["--family", "veronese", "--face", "[[1,0]]", "--point", "[4,2]"]
    assert run_cli(capsys, "symbolic-order", *args)[1]["order"] == 4
    assert run_cli(capsys, "ordinary-order", *args)[1]["order"] == 2
    code, data, _ = run_cli(capsys, "witness", "--family", "veronese", "--face", "[[1,0]]", "--E", "3", "--r", "3")
    assert code == 0 and data["witness"] == [4, 2] and data["symbolic_order"] == 4


def test_faces_from_cone_json(capsys, tmp_path):
    path = tmp_path / "cone.json"
    path.write_text(json.dumps({"cone": {"rank": 2, "rays": [[4, 2], [0, 1]]}}))
    code, data, _ = run_cli(capsys, "faces", "--cone", str(path))
    assert code == 0 and len(data["faces"]) == 4
    assert cone_from_json(data["cone"]).rays == ((2, 1), (0, 1))


def test_build_family_and_out_file(capsys, tmp_path):
    out = tmp_path / "fam.json"
    code = main(["build-family", "--family", "tensor", "--factors", "veronese:2:2,veronese:2:3",
                 "--out", str(out)])
    assert code == 0
    data = json.loads(out.read_text())
    assert data["rank"] == 4 and data["D"] == 3
    assert cone_to_json(cone_from_json(data["cone"])) == data["cone"]
    assert FamilySpec.from_json(data["family"]).rank == 4


def test_pretty_output(capsys):
    code = main(["check", "--theorem", "thm54_veronese", "--n", "2", "--D", "2", "--pretty"])
    out = capsys.readouterr().out
    assert code == 0 and "verdict: PASS" in out and "degree-bounded" in out


@pytest.mark.parametrize("argv", [
    ["hilbert-basis", "--cone", '{"rank": 2'],
    ["hilbert-basis", "--cone", '{"rank": 2, "rays": [[1, 0], [-1, 0]]}'],
    ["build-family", "--family", "primorial", "--n", "5", "--num-primes", "2"],
    ["prime", "--family", "veronese", "--face", "[[1,1]]"],
    ["symbolic-order", "--family", "veronese", "--face", "[[1,0]]", "--point", "[1,0]"],
    ["check", "--theorem", "lemma11"],
    ["build-family", "--family", "veronese", "--n", "1"],
    ["faces", "--cone", "/no/such/file.json"],
])
def test_errors_exit_2(capsys, argv):
    code, _, err = run_cli(capsys, *argv)
    assert code == 2 and "error" in err


def test_unknown_flag_rejected(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["hilbert-basis", "--bogus"])
    assert exc.value.code == 2


def test_cone_reader_validation():
    for bad in [[], {"rank": 2}, {"rank": -1, "rays": []}, {"rank": 2, "rays": [[1, 0, 0]]},
                {"rank": 2, "rays": [[0, 0]]}, {"rank": 2, "rays": [[1.5, 0]]}]:
        with pytest.raises(InputError):
            cone_from_json(bad)
