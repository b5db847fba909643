import json
import xml.etree.ElementTree as ET

import pytest

from polymorse.cli import main, parse_range

SVG = "{http://www.w3.org/2000/svg}"


def test_parse_range():
    assert parse_range("7") == (7, 7)
    assert parse_range("4..9") == (4, 9)
    with pytest.raises(Exception):
        parse_range("9..4")


def test_stars_json_stdout(capsys):
    assert main(["stars", "--n", "5", "--w", "-2"]) == 0
    d = json.loads(capsys.readouterr().out)
    assert d["critical_point"] == "S(5,-2)"
    assert len(d["vertices"]) == 5
    assert d["perimeter"] == pytest.approx(1.0)


@pytest.mark.parametrize("args,n", [(["--n", "7", "--w", "2"], 7), (["--n", "6", "--fold"], 6)])
def test_stars_svg(tmp_path, args, n):
    out = tmp_path / "star.svg"
    assert main(["stars", *args, "--svg", str(out)]) == 0
    root = ET.parse(out).getroot()
    assert root.tag == SVG + "svg"
    edges = [g for g in root.iter(SVG + "g") if g.get("id") == "edges"][0]
    assert len(list(edges)) == n


def test_stars_bad_winding():
    with pytest.raises(SystemExit) as exc:
        main(["stars", "--n", "6", "--w", "3"])
    assert exc.value.code == 2


def test_verify_passes_and_is_deterministic(tmp_path):
    a, b, csv = tmp_path / "a.json", tmp_path / "b.json", tmp_path / "t.csv"
    args = ["verify", "--n", "4..6", "--suite", "indices,jets,equilat", "--no-timestamp"]
    assert main([*args, "--json", str(a), "--csv", str(csv)]) == 0
    assert main([*args, "--json", str(b)]) == 0
    assert a.read_text() == b.read_text()
    report = json.loads(a.read_text())
    assert report["passed"] is True and report["schema_version"] == 1
    assert "timestamp" not in report
    lines = csv.read_text().splitlines()
    assert lines[0].startswith("n,critical_point,winding,predicted")
    assert len(lines) == 1 + 3 + 4 + 5


def test_verify_fails_with_impossible_tolerance(tmp_path):
    assert main(["verify", "--n", "5", "--suite", "jets", "--tol-jet", "1e-30"]) == 1


def test_verify_rejects_unknown_suite_and_big_n():
    with pytest.raises(SystemExit):
        main(["verify", "--suite", "nope"])
    with pytest.raises(SystemExit):
        main(["verify", "--n", "4..20"])


def test_solve(capsys):
    assert main(["solve", "--n", "5", "--seeds", "40", "--no-timestamp"]) == 0
    d = json.loads(capsys.readouterr().out)
    assert d["summary"]["classes"] == 4
    assert sorted(r["classification"] for r in d["tables"]["critical_points"]) == [
        "S(5,-1)", "S(5,-2)", "S(5,1)", "S(5,2)",
    ]


def test_flow(tmp_path, capsys):
    svg = tmp_path / "flow.svg"
    assert main(["flow", "--n", "5", "--count", "5", "--svg", str(svg), "--no-timestamp"]) == 0
    d = json.loads(capsys.readouterr().out)
    assert d["summary"]["monotone_fraction"] == 1.0
    assert d["summary"]["extreme_value"] == pytest.approx(d["summary"]["regular_polygon_value"], abs=1e-9)
    ET.parse(svg)


def test_extensions(capsys):
    assert main(["extensions", "--n", "4..5", "--probe", "--p", "2", "--seeds", "20", "--no-timestamp"]) == 0
    d = json.loads(capsys.readouterr().out)
    assert d["passed"] is True
    assert {row["n"] for row in d["tables"]["power_sum_probe"]} == {4, 5}
