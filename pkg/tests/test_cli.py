import csv
import io
import json

import pytest

from cfspectra.cli import main, parse_range, UsageError
from cfspectra.verify import VerifyReport


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestExpand:
    def test_golden(self, capsys):
        code, out, _ = run(capsys, "expand", "(1+sqrt(5))/2")
        assert code == 0 and out.strip() == "[1; (1)]"

    def test_rational(self, capsys):
        code, out, _ = run(capsys, "expand", "355/113")
        assert code == 0 and out.strip() == "[3; 7, 16]"

    def test_unsupported_field(self, capsys):
        code, _, err = run(capsys, "expand", "(1+sqrt(-3))/2")
        assert code == 2 and "error" in err

    def test_parse_error_offset(self, capsys):
        code, _, err = run(capsys, "expand", "(1+")
        assert code == 2 and "byte 3" in err

    def test_budget(self, capsys):
        code, _, err = run(capsys, "expand", "sqrt(94)", "--max-terms", "3")
        assert code == 3 and "budget" in err

    def test_json_terms(self, capsys):
        code, out, _ = run(capsys, "expand", "sqrt(3)", "--terms", "5", "--format", "json")
        data = json.loads(out)
        assert data["terms"] == [1, 1, 2, 1, 2] and data["period"] == [1, 2]


class TestConstants:
    def test_d0(self, capsys):
        code, out, _ = run(capsys, "constants", "Dk", "0")
        assert code == 0
        assert "(5+sqrt(5))/10" in out and "0.723606797749978969640917366873" in out

    def test_l3_enclosure(self, capsys):
        code, out, _ = run(capsys, "constants", "Lj", "3", "--format", "json")
        entry = json.loads(out)[0]
        assert entry["exact"] == "sqrt(221)/5"
        lo, hi = entry["enclosure"][1:-1].split(", ")
        assert float(lo) <= 221**0.5 / 5 <= float(hi)

    def test_beta1(self, capsys):
        code, out, _ = run(capsys, "constants", "betak", "1")
        assert code == 0 and "(-1+sqrt(3))/2" in out

    def test_beta2_pair(self, capsys):
        code, out, _ = run(capsys, "constants", "betak", "2", "--format", "csv")
        rows = list(csv.DictReader(io.StringIO(out)))
        assert [r["name"] for r in rows] == ["beta_2^(1)", "beta_2^(2)"]

    def test_digits(self, capsys):
        _, out, _ = run(capsys, "constants", "alphak", "0", "--digits", "5")
        assert "1.6180" in out and "1.618033" not in out


class TestOtherCommands:
    def test_spectrum(self, capsys):
        code, out, _ = run(capsys, "spectrum", "[(2, 2, 1, 1)]", "--format", "json")
        data = {e["name"]: e for e in json.loads(out)}
        assert data["lagrange"]["exact"] == "sqrt(221)/5"

    def test_markoff(self, capsys):
        code, out, _ = run(capsys, "markoff", "--count", "3", "--format", "json")
        assert [e["L"] for e in json.loads(out)] == ["sqrt(5)", "2*sqrt(2)", "sqrt(221)/5"]

    def test_bounds(self, capsys):
        code, out, _ = run(capsys, "bounds", "f0", "1", "2", "3", "--format", "json")
        kinds = [e["kind"] for e in json.loads(out)]
        assert kinds == ["exact", "exact", "nested"]

    def test_bounds_reject_irrational(self, capsys):
        code, _, _ = run(capsys, "bounds", "f0", "sqrt(2)")
        assert code == 2


class TestVerify:
    def test_theorem1_golden_json(self, capsys):
        code, out, _ = run(capsys, "verify", "theorem1", "--alpha", "[1;(1)]", "--N", "60", "--format", "json")
        assert code == 0
        report = VerifyReport.from_json(out)
        assert report.verdict.status == "confirmed"
        assert VerifyReport.from_json(report.to_json(indent=2)) == report

    def test_theorem1_refuted(self, capsys):
        code, out, _ = run(capsys, "verify", "theorem1", "--alpha", "[2; 3, (1)]", "--N", "40", "--format", "json")
        assert code == 1
        assert json.loads(out)["verdict"]["witness"] is not None

    def test_lemma5_table(self, capsys):
        code, out, _ = run(capsys, "verify", "lemma5", "--k", "2", "--m", "5..20")
        assert code == 0
        assert out.count("'odd_argmax'") == 16

    def test_theorem2_lists_equalities(self, capsys):
        code, out, _ = run(capsys, "verify", "theorem2", "--k", "2", "--N", "80")
        assert code == 0 and "equality_indices: [1, 5, 9" in out

    def test_lemma_budget(self, capsys):
        code, _, err = run(capsys, "verify", "lemma1", "--alpha", "[1;(1)]", "--n", "20")
        assert code == 3 and "budget" in err

    def test_lemma_csv(self, capsys):
        code, out, _ = run(capsys, "verify", "lemma3", "--alpha", "[(2,1)]", "--n", "3", "--format", "csv")
        rows = list(csv.DictReader(io.StringIO(out)))
        assert code == 0 and rows[0]["ordering"] == "="

    def test_missing_param(self, capsys):
        code, _, err = run(capsys, "verify", "prop1", "--k", "1")
        assert code == 2 and "--N" in err

    def test_inconclusive_exit(self, capsys):
        code, _, _ = run(capsys, "verify", "propB", "--m", "1", "--panel", "[1;(1)]")
        assert code == 4

    def test_prop_a(self, capsys):
        code, out, _ = run(capsys, "verify", "propA", "--alpha", "[(2)]", "--m", "1", "--Q", "100",
                           "--format", "json")
        assert code == 0 and json.loads(out)["details"]["counts"][-1][0] == 100

    def test_byte_identical(self, capsys):
        argv = ["verify", "prop1", "--k", "2", "--N", "40", "--format", "json"]
        _, a, _ = run(capsys, *argv)
        _, b, _ = run(capsys, *argv)
        assert a == b


class TestTable:
    def test_golden_f0(self, capsys):
        code, out, _ = run(capsys, "table", "--alpha", "(1+sqrt(5))/2", "--N", "40")
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0] == ["n", "q_n", "quality", "bound", "ord"]
        assert len(rows) == 41
        assert {r[4] for r in rows[1:]} <= {"<", "="}

    def test_empty(self, capsys):
        code, out, _ = run(capsys, "table", "--alpha", "[1;(1)]", "--N", "0")
        assert code == 0 and out.strip() == "n,q_n,quality,bound,ord"


class TestSettings:
    def test_precision_floor(self, capsys):
        code, _, err = run(capsys, "constants", "Dk", "0", "--precision", "32")
        assert code == 2 and "precision" in err

    def test_env_precision(self, capsys, monkeypatch):
        monkeypatch.setenv("CFSPECTRA_PRECISION", "16")
        code, _, _ = run(capsys, "constants", "Dk", "0")
        assert code == 2
        monkeypatch.setenv("CFSPECTRA_PRECISION", "512")
        code, out, _ = run(capsys, "constants", "Lj", "1", "--format", "json", "--digits", "60")
        lo, hi = json.loads(out)[0]["enclosure"][1:-1].split(", ")
        assert hi != lo

    def test_config_then_flags(self, capsys, tmp_path):
        cfg = tmp_path / "c.json"
        cfg.write_text(json.dumps({"format": "json", "digits": 8}))
        code, out, _ = run(capsys, "constants", "Dk", "1", "--config", str(cfg))
        assert json.loads(out)[0]["decimal"] == "0.78867513"
        code, out, _ = run(capsys, "constants", "Dk", "1", "--config", str(cfg), "--format", "csv")
        assert out.startswith("name,exact,decimal")

    def test_bad_config(self, capsys, tmp_path):
        cfg = tmp_path / "c.json"
        cfg.write_text("[1, 2")
        code, _, _ = run(capsys, "constants", "Dk", "1", "--config", str(cfg))
        assert code == 2

    def test_output_file(self, capsys, tmp_path):
        dest = tmp_path / "out.txt"
        code, out, _ = run(capsys, "expand", "sqrt(2)", "-o", str(dest))
        assert code == 0 and out == "" and dest.read_text() == "[1; (2)]\n"

    def test_usage_errors(self, capsys):
        assert run(capsys, "nosuch")[0] == 2
        assert run(capsys)[0] == 2

    def test_parse_range(self):
        assert parse_range("5..7") == range(5, 8)
        assert parse_range("4") == range(4, 5)
        with pytest.raises(UsageError):
            parse_range("a..b")
