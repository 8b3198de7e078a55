import json
import subprocess
import sys

import pytest

from orthocircles import build_graph, edge_count, make_arrangement, make_nested_wheels
from orthocircles.cli import (
    DocumentError,
    arrangement_svg,
    arrangement_to_document,
    document_to_arrangement,
    dumps_document,
    load_arrangement,
    main,
)

from conftest import SQRT2, circle


def run(args, capsys):
    code = main(args)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write_doc(path, arr):
    path.write_text(dumps_document(arrangement_to_document(arr)))


class TestDocuments:
    def test_round_trip_is_lossless(self):
        arr = make_nested_wheels(3, 15)
        doc = arrangement_to_document(arr)
        back = document_to_arrangement(json.loads(dumps_document(doc)))
        assert [c.id for c in back.circles] == [c.id for c in arr.circles]
        for c, c2 in zip(arr.circles, back.circles):
            assert c.center.x == c2.center.x
            assert c.center.y == c2.center.y
            assert c.radius == c2.radius
        assert edge_count(build_graph(back)) == edge_count(build_graph(arr))

    def test_bad_version_rejected(self):
        with pytest.raises(DocumentError):
            document_to_arrangement({"format_version": "2", "tolerance": 1e-9, "circles": []})

    def test_malformed_rejected(self):
        with pytest.raises(DocumentError):
            document_to_arrangement({"format_version": "1", "circles": [{"id": "a"}]})


class TestGen:
    def test_gen_b_document(self, tmp_path, capsys):
        out = tmp_path / "b.json"
        code, _, _ = run(["gen", "b", "--wheels", "3", "--satellites", "15", "--out", str(out)], capsys)
        assert code == 0
        arr = load_arrangement(str(out))
        assert len(arr) == 48

    def test_gen_nonnested_document(self, tmp_path, capsys):
        out = tmp_path / "nn.json"
        code, _, _ = run(["gen", "nonnested", "--wheels", "2", "--out", str(out)], capsys)
        assert code == 0
        assert len(load_arrangement(str(out))) == 11

    def test_gen_rejects_small_wheel(self, capsys):
        code, _, err = run(["gen", "b", "--wheels", "1", "--satellites", "4"], capsys)
        assert code == 2
        assert "5 satellites" in err

    def test_gen_is_deterministic(self, tmp_path, capsys):
        p1, p2 = tmp_path / "r1.json", tmp_path / "r2.json"
        for p in (p1, p2):
            code, _, _ = run(["gen", "random", "--n", "20", "--seed", "9", "--out", str(p)], capsys)
            assert code == 0
        assert p1.read_bytes() == p2.read_bytes()

    def test_gen_augment(self, tmp_path, capsys):
        out = tmp_path / "aug.json"
        code, _, _ = run(
            ["gen", "b", "--wheels", "1", "--satellites", "5", "--augment", "--out", str(out)],
            capsys,
        )
        assert code == 0
        assert len(load_arrangement(str(out))) == 26

    def test_gen_writes_to_stdout_by_default(self, capsys):
        code, out, _ = run(["gen", "wheel", "--satellites", "5"], capsys)
        assert code == 0
        assert json.loads(out)["format_version"] == "1"


class TestVerify:
    def test_valid_document(self, tmp_path, capsys):
        doc = tmp_path / "ok.json"
        write_doc(doc, make_nested_wheels(2, 5))
        code, out, _ = run(["verify", str(doc)], capsys)
        assert code == 0
        assert "ok\ttrue" in out

    def test_tangent_pair_names_both_ids(self, tmp_path, capsys):
        doc = tmp_path / "tangent.json"
        write_doc(doc, make_arrangement([circle("left", 0, 0, 1), circle("right", 2, 0, 1)]))
        code, out, _ = run(["verify", str(doc)], capsys)
        assert code == 1
        violation = next(line for line in out.splitlines() if line.startswith("violation"))
        assert "left" in violation and "right" in violation

    def test_acute_flag(self, tmp_path, capsys):
        doc = tmp_path / "acute.json"
        write_doc(doc, make_arrangement([circle("a", 0, 0, 0.99), circle("b", SQRT2, 0, 0.98)]))
        code_plain, _, _ = run(["verify", str(doc)], capsys)
        code_acute, _, _ = run(["verify", str(doc), "--acute"], capsys)
        assert code_plain == 1
        assert code_acute == 0

    def test_parse_error_is_exit_2(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        code, _, err = run(["verify", str(bad)], capsys)
        assert code == 2
        assert "JSON" in err


class TestAnalyze:
    def test_wheel_stack(self, tmp_path, capsys):
        doc = tmp_path / "b.json"
        write_doc(doc, make_nested_wheels(3, 15))
        report = tmp_path / "rep.json"
        code, out, _ = run(["analyze", str(doc), "--report", str(report)], capsys)
        assert code == 0
        assert "n\t48" in out and "m\t150" in out
        rep = json.loads(report.read_text())
        assert rep["n"] == 48 and rep["m"] == 150
        assert rep["forbidden_subgraph"] == "none"
        assert rep["ok"] is True

    def test_invalid_document_exits_1(self, tmp_path, capsys):
        doc = tmp_path / "bad.json"
        write_doc(doc, make_arrangement([circle("a", 0, 0, 1), circle("b", 1, 0, 1)]))
        code, out, _ = run(["analyze", str(doc)], capsys)
        assert code == 1
        assert "ok\tfalse" in out

    def test_round_trip_matches_original_analysis(self, tmp_path, capsys):
        arr = make_nested_wheels(2, 7)
        doc = tmp_path / "x.json"
        write_doc(doc, arr)
        back = load_arrangement(str(doc))
        assert build_graph(back).edges == build_graph(arr).edges


class TestCells:
    def test_two_orthogonal_circles(self, tmp_path, capsys):
        doc = tmp_path / "two.json"
        write_doc(doc, make_arrangement([circle("a", 0, 0, 1), circle("b", SQRT2, 0, 1)]))
        code, out, _ = run(["cells", str(doc)], capsys)
        assert code == 0
        assert "digons\t3" in out
        assert "triangles\t0" in out
        assert "euler\tok" in out


class TestAudit:
    def test_wheel_stack_passes(self, tmp_path, capsys):
        doc = tmp_path / "b.json"
        write_doc(doc, make_nested_wheels(2, 5))
        code, out, _ = run(["audit", str(doc)], capsys)
        assert code == 0
        assert "ok\ttrue" in out
        assert "entry\tincidence-bound\tpass" in out


class TestOracle:
    def test_max_edges(self, capsys):
        code, out, _ = run(["oracle", "max-edges", "--n", "5"], capsys)
        assert code == 0
        assert "max_edges\t5" in out

    def test_bad_n(self, capsys):
        code, _, err = run(["oracle", "max-edges", "--n", "9"], capsys)
        assert code == 2


class TestExportSvg:
    def test_deterministic_and_one_element_per_circle(self, tmp_path, capsys):
        doc = tmp_path / "b.json"
        write_doc(doc, make_nested_wheels(2, 5))
        s1, s2 = tmp_path / "a.svg", tmp_path / "b.svg"
        for target in (s1, s2):
            code, _, _ = run(["export-svg", str(doc), "--out", str(target)], capsys)
            assert code == 0
        assert s1.read_bytes() == s2.read_bytes()
        text = s1.read_text()
        assert text.count("<circle") == 12
        assert text.count('stroke="#d62728"') == 1  # exactly one red circle

    def test_library_svg_matches_cli_output(self, tmp_path, capsys):
        arr = make_arrangement([circle("a", 0, 0, 1), circle("b", SQRT2, 0, 1)])
        doc = tmp_path / "two.json"
        write_doc(doc, arr)
        code, out, _ = run(["export-svg", str(doc)], capsys)
        assert code == 0
        assert out == arrangement_svg(load_arrangement(str(doc)))


class TestFigures:
    def test_analyze_figure_written(self, tmp_path, capsys):
        doc = tmp_path / "nn.json"
        write_doc(doc, make_nested_wheels(1, 5))
        fig = tmp_path / "out.png"
        code, _, _ = run(["analyze", str(doc), "--figure", str(fig)], capsys)
        assert code == 0
        assert fig.stat().st_size > 0

    def test_cells_figure_written(self, tmp_path, capsys):
        doc = tmp_path / "nn.json"
        write_doc(doc, make_nested_wheels(1, 5))
        fig = tmp_path / "cells.png"
        code, _, _ = run(["cells", str(doc), "--figure", str(fig)], capsys)
        assert code == 0
        assert fig.stat().st_size > 0


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "orthocircles", "oracle", "max-edges", "--n", "3"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "max_edges\t2" in proc.stdout
