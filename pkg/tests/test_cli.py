"""Input documents, CLI dispatch, exit codes, and byte-stable JSON."""

import io
import json
from contextlib import redirect_stderr, redirect_stdout

import pytest

from conify import catalogue
from conify.cli import main
from conify.errors import ParseError
from conify.inputdoc import parse_input

A1_DEFORMED = """\
field rational
ring x y z
weights 2 2 2
ideal
x*y - z^2 - x^3
"""


def run_cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue(), err.getvalue()


class TestParseInput:
    def test_full_document(self):
        doc = parse_input(catalogue.A1_TEXT)
        assert doc.ring == ("x", "y", "z")
        assert [str(w) for w in doc.weights] == ["2", "2", "2"]
        assert len(doc.ideal_polys) == 1
        assert len(doc.brackets) == 3

    def test_quadratic_field_weights(self):
        doc = parse_input("field quad 2\nring x y\nweights s 2-s\nideal\nx - y\n")
        assert str(doc.weights[0]) == "sqrt(2)"
        assert str(doc.weights[1]) == "2-sqrt(2)"

    def test_missing_ring(self):
        with pytest.raises(ParseError, match="ring required"):
            parse_input("weights 1\n")

    def test_missing_weights(self):
        with pytest.raises(ParseError, match="weights required"):
            parse_input("ring x\n")

    def test_weight_arity(self):
        with pytest.raises(ParseError, match="2 weights for 1"):
            parse_input("ring x\nweights 1 2\n")

    def test_nonpositive_weight(self):
        with pytest.raises(ParseError, match="not positive"):
            parse_input("ring x\nweights 0\n")

    def test_error_carries_line_number(self):
        with pytest.raises(ParseError, match="line 4"):
            parse_input("field rational\nring x\nweights 1\nx^^2\nideal\n")

    def test_bracket_reversal_is_antisymmetric(self):
        doc = parse_input("ring x y\nweights 1 1\nbracket\ny x : x\n")
        assert str(doc.brackets[(0, 1)]) == "-x"

    def test_comments_and_blank_lines(self):
        doc = parse_input("# header\nring x\n\nweights 1  # inline\n")
        assert doc.ring == ("x",)


class TestExitCodes:
    def test_usage_error_is_one(self):
        code, _, err = run_cli("no-such-command")
        assert code == 1

    def test_no_command_is_one(self):
        code, _, err = run_cli()
        assert code == 1
        assert "subcommands" in err

    def test_domain_error_is_two(self, tmp_path):
        bad = tmp_path / "bad.txt"
        bad.write_text("weights 1\n")
        code, _, err = run_cli("initial-ideal", "--input", str(bad))
        assert code == 2
        assert "ring required" in err

    def test_missing_file_is_two(self):
        code, _, err = run_cli("initial-ideal", "--input", "/nonexistent.txt")
        assert code == 2

    def test_success_is_zero(self):
        code, out, _ = run_cli("rank", "--weights", "1, s, 1+s", "--field", "quad:2")
        assert code == 0
        assert json.loads(out) == {"schema": "conify/1", "rank": 2, "one_in_span": True}


class TestSubcommands:
    def test_initial_ideal_document(self, tmp_path):
        path = tmp_path / "a1d.txt"
        path.write_text(A1_DEFORMED)
        code, out, _ = run_cli("initial-ideal", "--input", str(path))
        assert code == 0
        assert json.loads(out) == {"schema": "conify/1", "central_fiber": ["x*y - z^2"]}

    def test_initial_ideal_irrational_weights(self, tmp_path):
        path = tmp_path / "irr.txt"
        path.write_text("field quad 2\nring x y\nweights 3*s 2*s\nideal\nx^2 - y^3 - y^4\n")
        code, out, _ = run_cli("initial-ideal", "--input", str(path))
        assert code == 0
        assert json.loads(out)["central_fiber"] == ["y^3 - x^2"]

    def test_testconfig_and_fiber_and_flatness(self, tmp_path):
        path = tmp_path / "a1d.txt"
        path.write_text(A1_DEFORMED)
        code, out, _ = run_cli("testconfig", "--input", str(path))
        payload = json.loads(out)
        assert payload["family"] == ["x^3*t^2 - x*y + z^2"]
        assert payload["saturated"] is True
        code, out, _ = run_cli("fiber", "--input", str(path), "--at", "1")
        assert json.loads(out)["fiber"] == ["x^3 - x*y + z^2"]
        code, out, _ = run_cli("flatness", "--input", str(path))
        assert json.loads(out)["flat"] is True

    def test_hilbert(self, tmp_path):
        path = tmp_path / "a1.txt"
        path.write_text(catalogue.A1_TEXT)
        code, out, _ = run_cli("hilbert", "--input", str(path), "--degree-cap", "8")
        assert json.loads(out)["dimensions"] == {"0": 1, "2": 3, "4": 5, "6": 7, "8": 9}

    def test_approximate(self):
        code, out, _ = run_cli("approximate", "--weights", "s, 2-s",
                               "--field", "quad:2", "--N", "14")
        payload = json.loads(out)["approximant"]
        assert payload["D"] == 5 and payload["w_tilde"] == [7, 3] and payload["nice"]

    def test_cone(self):
        code, out, _ = run_cli("cone", "--weights", "s", "--field", "quad:2",
                               "--resolution", "20")
        payload = json.loads(out)
        assert payload["generators"] == [["24/17"], ["17/12"]]
        assert payload["simplicial"] is True
        assert payload["contains_input"] is True
        assert payload["certificate"] is not None

    def test_poisson_check(self, tmp_path):
        path = tmp_path / "c2.txt"
        path.write_text(catalogue.C2_TEXT)
        code, out, _ = run_cli("poisson-check", "--input", str(path))
        payload = json.loads(out)
        assert payload["jacobi_holds"] and payload["preserves_ideal"]
        assert payload["bracket_weight"] == "-2"
        assert payload["form_weight"] == "2"
        assert payload["scaleup"]["all_pass"] is True

    def test_decompose(self):
        code, out, _ = run_cli("decompose", "--weights", "1,1", "--tweight", "1",
                               "--exponents", "2,0,1")
        payload = json.loads(out)
        assert payload["prefix"] == [1, 0, 0]
        assert payload["factors"] == [[1, 0, 1]]

    def test_invariants(self):
        code, out, _ = run_cli("invariants", "--weights", "1,1", "--tweight", "1",
                               "--cap", "3")
        assert json.loads(out)["generators"] == [[0, 1, 1], [1, 0, 1]]

    def test_rotate(self):
        code, out, _ = run_cli("rotate", "--target", "0,1,0")
        payload = json.loads(out)
        assert abs(payload["theta"] - 3.141592653589793) < 1e-12

    def test_demo_all_entries(self):
        for name in catalogue.names():
            code, out, _ = run_cli("demo", name)
            assert code == 0, name
            assert json.loads(out)["ok"] is True


class TestDeterminism:
    def test_byte_identical_reruns(self, tmp_path):
        path = tmp_path / "a1d.txt"
        path.write_text(A1_DEFORMED)
        invocations = [
            ("initial-ideal", "--input", str(path)),
            ("testconfig", "--input", str(path)),
            ("rank", "--weights", "1, s, 1+s", "--field", "quad:2"),
            ("cone", "--weights", "s", "--field", "quad:2", "--resolution", "20"),
            ("demo", "a1"),
        ]
        for argv in invocations:
            first = run_cli(*argv)
            second = run_cli(*argv)
            assert first == second
            assert first[0] == 0

    def test_pretty_is_indented_variant(self):
        code, compact, _ = run_cli("rank", "--weights", "2,2")
        code, pretty, _ = run_cli("rank", "--weights", "2,2", "--pretty")
        assert json.loads(compact) == json.loads(pretty)
        assert "\n" in pretty and "\n" not in compact.strip()


class TestCatalogue:
    def test_every_entry_verifies(self):
        for name in catalogue.names():
            facts = catalogue.verify_entry(catalogue.ENTRIES[name])
            assert facts["name"] == name

    def test_symplectic_entries_have_bracket_weight_minus_two(self):
        for name in ("a1", "a2", "c2"):
            facts = catalogue.verify_entry(catalogue.ENTRIES[name])
            assert facts["bracket_weight"] == "-2"

    def test_span_fact_for_all_entries(self):
        for name in catalogue.names():
            facts = catalogue.verify_entry(catalogue.ENTRIES[name])
            assert facts["one_in_span"] is True
