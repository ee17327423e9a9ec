import io
import json

import pytest

from cutcomplex.cli import main, parse_range
from cutcomplex.family import FamilyError, parse_family
from cutcomplex.graphs import cartesian_product, circulant, complete, cycle_power, format_edge_list, path


def run(argv):
    out = io.StringIO()
    code = main(argv, out=out)
    return code, out.getvalue()


def test_parse_family_examples():
    assert parse_family("cycle_power(10,3)").graph() == cycle_power(10, 3)
    expr = parse_family("cartesian(complete(3), path(4))")
    assert expr.graph() == cartesian_product(complete(3), path(4))
    assert expr.width == 4
    assert expr.known_family() == ("km_pn", 3, 4)
    assert parse_family("circulant(6; 2)").graph() == circulant(6, [2])
    assert parse_family("  cycle_power ( 10 , 3 ) ").ints == (10, 3)


def test_parse_family_nested():
    expr = parse_family("cartesian(cartesian(path(2), path(2)), cycle(3))")
    assert expr.graph().n == 12
    assert expr.known_family() is None


@pytest.mark.parametrize(
    "text, offset",
    [
        ("cycle_pow(10,3)", 0),
        ("cycle_power(10)", 0),
        ("cycle_power(10,3", 16),
        ("cartesian(path(2) path(3))", 18),
        ("path(3) x", 8),
        ("circulant(6, 2)", 11),
    ],
)
def test_parse_family_errors(text, offset):
    with pytest.raises(FamilyError) as info:
        parse_family(text)
    assert info.value.offset == offset


def test_parse_family_offsets_are_bytes():
    with pytest.raises(FamilyError) as info:
        parse_family("cartesian(path(2),é)")
    assert info.value.offset == len("cartesian(path(2),".encode())


def test_parse_family_range_errors():
    with pytest.raises(FamilyError):
        parse_family("cycle_power(2,1)")
    with pytest.raises(FamilyError):
        parse_family("circulant(5; 7)")


def test_file_family(tmp_path):
    f = tmp_path / "g.txt"
    f.write_text(format_edge_list(cycle_power(8, 3)))
    assert parse_family(f"file({f})").graph() == cycle_power(8, 3)
    assert parse_family(f'cartesian(file("{f}"), path(2))').graph().n == 16


def test_betti_command():
    code, out = run(["betti", "cycle_power(9,3)"])
    assert code == 0
    assert json.loads(out)["dims"] == {"4": {"rank": 2, "torsion": []}}


def test_betti_window_and_budget(monkeypatch):
    monkeypatch.setenv("CUTCOMPLEX_BUDGET", "50")
    code, _ = run(["betti", "cycle_power(12,3)"])
    assert code == 2
    code, out = run(["betti", "cycle_power(12,3)", "--dims", "7..8"])
    assert code == 0
    assert json.loads(out)["dims"] == {"8": {"rank": 1, "torsion": []}}


def test_morse_command():
    code, out = run(["morse", "cycle_power(10,3)"])
    payload = json.loads(out)
    assert code == 0
    assert payload["critical"] == [{"dim": 6, "face": [1, 2, 3, 5, 6, 8, 9]}]
    assert payload["acyclic"] is True


def test_morse_product_labels_and_pairs():
    code, out = run(["morse", "cartesian(complete(2), path(2))", "--format", "csv"])
    assert code == 0
    assert out.splitlines() == ["dim,face", "0,0.1"]
    code, out = run(["morse", "cartesian(complete(2), path(2))", "--order", "0.0,0.1", "--emit-pairs"])
    payload = json.loads(out)
    assert payload["order"] == [0, 1]
    assert len(payload["pairs"]) == payload["matched_pairs"]


def test_facets_roundtrip(tmp_path):
    code, out = run(["facets", "cartesian(complete(3), cycle(4))", "--kind", "cut", "-k", "3"])
    assert code == 0
    path_ = tmp_path / "facets.json"
    path_.write_text(out)
    _, direct = run(["fvector", "cartesian(complete(3), cycle(4))", "--kind", "cut", "-k", "3"])
    _, again = run(["fvector", "--from-facets", str(path_)])
    assert json.loads(direct)["f_vector"] == json.loads(again)["f_vector"]


def test_facets_text_file(tmp_path):
    f = tmp_path / "f.txt"
    f.write_text("1 3\n0 2\n")
    code, out = run(["fvector", "--from-facets", str(f), "--format", "csv"])
    assert code == 0
    assert out.splitlines() == ["dim,faces", "-1,1", "0,4", "1,2"]


def test_usage_errors():
    assert run(["betti", "cycle_power(10"])[0] == 2
    assert run(["betti", "cycle_power(10,3)", "--kind", "cut", "-k", "1"])[0] == 2
    assert run(["nonsense"])[0] == 2
    assert run(["fvector"])[0] == 2
    assert run(["morse", "cycle_power(21,3)"])[0] == 2


def test_verify_command():
    code, out = run(["verify", "--suite", "theorems", "--budget", "8", "--jobs", "1"])
    payload = json.loads(out)
    assert code == 0
    assert payload["failed"] is False
    assert payload["summary"]["pass"] > 0


def test_sweep_command(tmp_path):
    dest = tmp_path / "sweep.json"
    code, out = run(["sweep", "--family", "cycle_power", "--n", "8..10", "--p", "3..4",
                     "--out", str(dest), "--jobs", "1"])
    assert code == 0
    saved = json.loads(dest.read_text())
    assert saved == json.loads(out)
    by_params = {(r["params"]["n"], r["params"]["p"]): r for r in saved["points"]}
    assert by_params[(9, 3)]["betti"] == {"4": 2}
    assert by_params[(9, 3)]["expected"]["source"] == "conjecture"
    assert by_params[(8, 4)]["result"] == "void"
    assert all(r.get("matches", True) for r in saved["points"])


def test_sweep_products():
    code, out = run(["sweep", "--family", "km_cn", "--m", "2", "--n", "4..5", "--kind", "cut", "--jobs", "1"])
    assert code == 0
    points = json.loads(out)["points"]
    assert [p["betti"] for p in points] == [{"3": 1, "4": 4}, {"6": 11}]


def test_parse_range():
    assert parse_range("3..5") == [3, 4, 5]
    assert parse_range("7") == [7]


def test_deterministic_output():
    assert run(["facets", "cycle_power(9,2)"]) == run(["facets", "cycle_power(9,2)"])
