"""Input parsing, document round trips, CLI exit codes and flags."""

import json
import os

import pytest

from mpk import documents
from mpk.cli import main
from mpk.errors import InputFormatError
from mpk.matpoly import MatPoly
from mpk.polyalg import Poly, gr

Z = Poly.z()

SHIFT3 = {
    "name": "shift3",
    "n": 3,
    "entries": [
        [[], ["0", "1"], []],
        [["1"], [], ["0", "1"]],
        [[], [], ["0", "0", "-1", "1"]],
    ],
}

HERMPAIR = {
    "n": 2,
    "entries": [
        [["1"], ["0", "-1", "1"]],
        [["0", "-1", "1"], []],
    ],
}

CORNER = {"n": 2, "entries": [[["0", "0", "0", "1"], ["0", "1"]], [["0", "1"], []]]}


def write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


class TestInputDocument:
    def test_parses_matrix(self):
        inp = documents.InputDocument.from_dict(SHIFT3)
        m = inp.matrix()
        assert m == MatPoly([[0, Z, 0], [1, 0, Z], [0, 0, Z**3 - Z**2]])

    def test_coefficient_matrix_view(self):
        inp = documents.InputDocument.from_dict(SHIFT3)
        mats = inp.coefficient_matrices()
        assert len(mats) == 4
        assert mats[0] == [[gr(0)] * 3, [gr(1), gr(0), gr(0)], [gr(0)] * 3]

    def test_complex_and_fraction_coefficients(self):
        doc = {
            "n": 1,
            "entries": [[[{"re": "1/2", "im": "-2/3"}, 3, "7/5"]]],
        }
        inp = documents.InputDocument.from_dict(doc)
        from fractions import Fraction

        p = inp.matrix().entry(0, 0)
        assert p[0] == gr(Fraction(1, 2), Fraction(-2, 3))
        assert p[1] == gr(3)
        assert p[2] == gr(Fraction(7, 5))

    def test_zero_denominator_rejected(self):
        with pytest.raises(InputFormatError):
            documents.InputDocument.from_dict({"n": 1, "entries": [[["1/0"]]]})

    def test_wrong_shape_rejected(self):
        with pytest.raises(InputFormatError):
            documents.InputDocument.from_dict({"n": 2, "entries": [[["1"]]]})

    def test_schema_violation_rejected(self):
        with pytest.raises(InputFormatError):
            documents.InputDocument.from_dict({"n": 1, "entries": [[["1"]]], "bogus": 1})

    def test_roundtrip_equality(self):
        inp = documents.InputDocument.from_dict(SHIFT3)
        again = documents.InputDocument.from_dict(inp.to_dict())
        assert again.matrix() == inp.matrix()
        assert again.to_dict() == inp.to_dict()


class TestCli:
    def test_diagonalize_document(self, tmp_path, capsys):
        path = write(tmp_path, "in.json", SHIFT3)
        assert main(["diagonalize", path]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["kind"] == "diagonalization"
        assert doc["verification"]["ok"]
        l, form = documents.diagonalization_from_doc(doc)
        from mpk.smith import verify_diag

        assert verify_diag(l, form).ok
        diag = [documents.poly_from_doc(p) for p in doc["diagonal"]]
        assert diag == [Poly.one(), Z, Z**3 - Z**2]

    def test_diagonalize_latex(self, tmp_path, capsys):
        path = write(tmp_path, "in.json", SHIFT3)
        assert main(["diagonalize", path, "--latex"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["latex"]["d"].startswith("\\begin{pmatrix}")

    def test_parse_error_exit_code(self, tmp_path, capsys):
        path = write(tmp_path, "in.json", {"n": 1, "entries": [[["1/0"]]]})
        assert main(["diagonalize", path]) == 1
        err = capsys.readouterr().err
        assert "zero denominator" in err

    def test_spectrum_document(self, tmp_path, capsys):
        path = write(tmp_path, "in.json", SHIFT3)
        assert main(["spectrum", path]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["deg_det"] == 4
        got = {
            (e["alpha"]["value"]["re"], e["column"], e["order"]) for e in doc["entries"]
        }
        assert got == {("0", 1, 1), ("0", 2, 2), ("1", 2, 1)}

    def test_jordan_document(self, tmp_path, capsys):
        path = write(tmp_path, "in.json", SHIFT3)
        assert main(["jordan", path]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["total_order"] == 4
        chains = {
            tuple(tuple(x["re"] for x in vec) for vec in rec["chain"])
            for rec in doc["records"]
        }
        assert (("0", "0", "1"), ("-1", "0", "0")) in chains

    def test_solve_ode_verify(self, tmp_path, capsys):
        path = write(tmp_path, "in.json", SHIFT3)
        assert main(["solve-ode", path, "--verify"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["dimension"] == 4
        assert doc["verification"]["ok"]

    def test_solve_ode_non_invertible_exit_2(self, tmp_path, capsys):
        doc = {"n": 2, "entries": [[["0", "1"], ["0", "1"]], [["0", "1"], ["0", "1"]]]}
        path = write(tmp_path, "in.json", doc)
        assert main(["solve-ode", path]) == 2
        assert "identically zero" in capsys.readouterr().err

    def test_represent_document(self, tmp_path, capsys):
        path = write(tmp_path, "in.json", HERMPAIR)
        assert main(["represent", path]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["kappa"] == 2
        assert doc["verified"]
        l, rep = documents.representation_from_doc(doc)
        from mpk.kreinlanger import verify_representation

        assert verify_representation(l.inverse_hat(), rep).ok

    def test_represent_exit_codes(self, tmp_path, capsys):
        corner = write(tmp_path, "corner.json", CORNER)
        assert main(["represent", corner]) == 4
        assert "infinity" in capsys.readouterr().err

        shift = write(tmp_path, "shift.json", SHIFT3)
        assert main(["represent", shift]) == 3

        irr = write(tmp_path, "irr.json", {"n": 1, "entries": [[["-2", "0", "1"]]]})
        assert main(["represent", irr]) == 5

    def test_numeric_gate_and_flag(self, tmp_path, capsys):
        path = write(tmp_path, "irr.json", {"n": 1, "entries": [[["-2", "0", "1"]]]})
        assert main(["solve-ode", path]) == 5
        capsys.readouterr()
        assert main(["solve-ode", path, "--allow-numeric-roots"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["dimension"] == 2
        assert any(t["alpha"].get("approx") for t in doc["terms"])

    def test_numeric_tol_env(self, tmp_path, capsys, monkeypatch):
        path = write(tmp_path, "irr.json", {"n": 1, "entries": [[["-2", "0", "1"]]]})
        monkeypatch.setenv("MPK_NUMERIC_TOL", "not-a-number")
        assert main(["spectrum", path, "--allow-numeric-roots"]) == 1
        capsys.readouterr()
        monkeypatch.setenv("MPK_NUMERIC_TOL", "1e-6")
        assert main(["spectrum", path, "--allow-numeric-roots"]) == 0

    def test_verify_roundtrips(self, tmp_path, capsys):
        for command, source, expect in (
            ("diagonalize", SHIFT3, "diagonalization"),
            ("represent", HERMPAIR, "representation"),
            ("solve-ode", SHIFT3, "general_solution"),
            ("jordan", SHIFT3, "canonical_system"),
            ("spectrum", SHIFT3, "spectrum"),
        ):
            path = write(tmp_path, "in.json", source)
            assert main([command, path]) == 0
            doc = json.loads(capsys.readouterr().out)
            assert doc["kind"] == expect
            out = tmp_path / "out.json"
            out.write_text(json.dumps(doc))
            assert main(["verify", str(out)]) == 0
            verdict = json.loads(capsys.readouterr().out)
            assert verdict["ok"] is True

    def test_verify_catches_tampering(self, tmp_path, capsys):
        path = write(tmp_path, "in.json", SHIFT3)
        assert main(["diagonalize", path]) == 0
        doc = json.loads(capsys.readouterr().out)
        doc["t"][0][2] = [{"re": "0"}, {"re": "0"}, {"re": "-1"}]  # -z^2 instead of -z
        out = tmp_path / "out.json"
        out.write_text(json.dumps(doc))
        assert main(["verify", str(out)]) == 2
        verdict = json.loads(capsys.readouterr().out)
        assert verdict["ok"] is False

    def test_verify_unknown_kind(self, tmp_path, capsys):
        out = tmp_path / "out.json"
        out.write_text(json.dumps({"kind": "mystery"}))
        assert main(["verify", str(out)]) == 1

    def test_missing_file(self, capsys):
        assert main(["diagonalize", "/nonexistent/nowhere.json"]) == 1
