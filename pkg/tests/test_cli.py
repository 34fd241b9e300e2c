import json

import pytest

from esymfano.cli import main, parse_matrix_document, InputError

MATCHING_DOC = "Q\n1 0 -1 0\n0 1 0 -1\n"
REPEAT_DOC = "Q\n1 0 1 0\n0 1 0 1\n"


def run(capsys, argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        import io, sys

        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


class TestMatrixDocuments:
    def test_rational_parse(self):
        field, rows = parse_matrix_document("Q\n1/2 -3\n0 1\n")
        assert repr(field) == "Q"
        assert rows[0][0] == field.parse("1/2")

    def test_prime_field_parse(self):
        field, rows = parse_matrix_document("F5\n7 -1\n")
        assert rows == ((2, 4),)

    def test_bad_scalar(self):
        with pytest.raises(InputError):
            parse_matrix_document("Q\n1/0\n")

    def test_comments_ignored(self):
        _, rows = parse_matrix_document("# doc\nQ\n1 2  # row\n")
        assert len(rows) == 1


class TestClassifyCommand:
    def test_member(self, capsys, tmp_path):
        doc = tmp_path / "m.txt"
        doc.write_text(MATCHING_DOC)
        code, out, _ = run(capsys, ["--json", "classify", str(doc)])
        assert code == 0
        rep = json.loads(out)
        assert rep["member"] and rep["direct_member"]
        assert rep["certificate"]["kind"] == "partition"
        assert rep["certificate"]["num_classes"] == 2

    def test_nonmember(self, capsys, tmp_path):
        doc = tmp_path / "m.txt"
        doc.write_text(REPEAT_DOC)
        code, out, _ = run(capsys, ["--json", "classify", str(doc)])
        assert code == 1
        rep = json.loads(out)
        assert not rep["member"]
        assert "witness_monomial" in rep

    def test_stdin(self, capsys, monkeypatch):
        code, out, _ = run(
            capsys, ["--json", "classify"], stdin=MATCHING_DOC, monkeypatch=monkeypatch
        )
        assert code == 0

    def test_bad_scalar_exit_2(self, capsys, tmp_path):
        doc = tmp_path / "m.txt"
        doc.write_text("Q\n1/0 1\n")
        code, _, err = run(capsys, ["classify", str(doc)])
        assert code == 2
        assert "error" in err

    def test_rank_deficient_exit_2(self, capsys, tmp_path):
        doc = tmp_path / "m.txt"
        doc.write_text("Q\n1 1\n2 2\n")
        code, _, _ = run(capsys, ["classify", str(doc)])
        assert code == 2


class TestOtherCommands:
    @pytest.mark.parametrize("d,count", [(1, 1), (2, 3), (3, 15)])
    def test_isolated_counts(self, capsys, d, count):
        code, out, _ = run(capsys, ["--json", "isolated", "--d", str(d)])
        assert code == 0
        rep = json.loads(out)
        assert rep["count"] == count

    def test_isolated_d1_row(self, capsys):
        _, out, _ = run(capsys, ["--json", "isolated", "--d", "1"])
        rep = json.loads(out)
        assert rep["points"][0]["matrix"] == [["1", "-1"]]

    def test_equations(self, capsys):
        code, out, _ = run(
            capsys, ["--json", "equations", "--d", "1", "--m", "3", "--avoid", "2,3"]
        )
        assert code == 0
        rep = json.loads(out)
        assert rep["equation_count"] == 1
        assert rep["equations"][0]["coefficient"] == "a1_2 + a1_1 + a1_1*a1_2"

    def test_xcheck(self, capsys):
        code, out, _ = run(
            capsys, ["--json", "xcheck", "--d", "2", "--m", "4", "--prime", "3"]
        )
        assert code == 0
        rep = json.loads(out)
        assert rep["total"] == 130
        assert rep["mismatches"] == 0

    def test_xcheck_budget_exit_2(self, capsys):
        code, _, _ = run(
            capsys, ["xcheck", "--d", "4", "--m", "9", "--prime", "5"]
        )
        assert code == 2

    def test_brute(self, capsys):
        code, out, _ = run(
            capsys, ["--json", "brute", "--d", "1", "--m", "2", "--prime", "3"]
        )
        rep = json.loads(out)
        assert code == 0
        assert rep["members"] == 1
        assert rep["member_matrices"] == [[["1", "2"]]]

    def test_reciprocals(self, capsys, monkeypatch):
        code, out, _ = run(
            capsys,
            ["--json", "reciprocals"],
            stdin="Q\n1 0\n0 1\n1 1\n",
            monkeypatch=monkeypatch,
        )
        rep = json.loads(out)
        assert code == 0
        assert rep["relation_space_dim"] == 0

    def test_invariants_builtin(self, capsys):
        code, out, _ = run(capsys, ["--json", "invariants", "z2-example"])
        assert code == 0
        rep = json.loads(out)
        assert rep["xy_invariant"]
        assert rep["single_image_membership_hits"] == 0

    def test_invariants_scenario(self, capsys, tmp_path):
        scenario = tmp_path / "swap.json"
        scenario.write_text(
            json.dumps(
                {
                    "field": "Q",
                    "generators": [[[0, 1], [1, 0]]],
                    "seeds": [[1, 0]],
                    "degree": 4,
                }
            )
        )
        code, out, _ = run(capsys, ["--json", "invariants", str(scenario)])
        assert code == 0
        rep = json.loads(out)
        assert rep["generated"]

    def test_invariants_characteristic_exit_2(self, capsys, tmp_path):
        scenario = tmp_path / "bad.json"
        scenario.write_text(
            json.dumps(
                {
                    "field": "F2",
                    "generators": [[[0, 1], [1, 0]]],
                    "seeds": [[1, 0]],
                    "degree": 2,
                }
            )
        )
        code, _, _ = run(capsys, ["invariants", str(scenario)])
        assert code == 2


class TestReportDeterminism:
    def test_round_trip_and_stability(self, capsys, tmp_path):
        doc = tmp_path / "m.txt"
        doc.write_text(MATCHING_DOC)
        _, out1, _ = run(capsys, ["--json", "classify", str(doc)])
        _, out2, _ = run(capsys, ["--json", "classify", str(doc)])
        assert out1 == out2
        rep = json.loads(out1)
        assert json.loads(json.dumps(rep)) == rep

    def test_text_output_stable(self, capsys):
        _, out1, _ = run(capsys, ["isolated", "--d", "2"])
        _, out2, _ = run(capsys, ["isolated", "--d", "2"])
        assert out1 == out2
        assert "count: 3" in out1
