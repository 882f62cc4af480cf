import json
import math

import pytest

from rkdirac.cli import main
from rkdirac.io import (
    function_to_json,
    load_function,
    load_operator,
    operator_to_json,
)
from rkdirac.dyadic import haar_function, is_close, l2_dist, random_function
from rkdirac.suites import SuiteReport, Check, run_suite
from rkdirac.transfer import CondExp, Compose, Koopman, Mult, Proj, Sum
from rkdirac.words import Word


def w(text):
    return Word.from_string(text)


class TestFunctionIO:
    def test_values_roundtrip(self, tmp_path):
        f = random_function(0, 3)
        path = tmp_path / "f.json"
        path.write_text(json.dumps(function_to_json(f)))
        assert l2_dist(load_function(path), f) < 1e-15

    def test_haar_form(self):
        f = load_function({"haar": {"eps0": 0.0, "eps1": 0.0, "words": {"01": 1.0}}})
        assert is_close(f, haar_function(w("01")), atol=1e-15)

    def test_bad_object_rejected(self):
        with pytest.raises(ValueError):
            load_function({"something": 1})


class TestOperatorIO:
    @pytest.mark.parametrize(
        "spec",
        [
            {"kind": "ruelle"},
            {"kind": "koopman"},
            {"kind": "identity"},
            {"kind": "condexp", "n": 2},
            {"kind": "kernel_proj"},
            {"kind": "haar_proj", "w": "011"},
            {"kind": "mult", "f": {"depth": 1, "values": [1.0, 0.0]}},
            {"kind": "adjoint", "op": {"kind": "koopman"}},
            {"kind": "compose", "ops": [{"kind": "koopman"}, {"kind": "ruelle"}]},
            {
                "kind": "sum",
                "ops": [{"kind": "condexp", "n": 1}, {"kind": "kernel_proj"}],
                "weights": [1.0, -1.0],
            },
        ],
    )
    def test_kinds_load(self, spec):
        op = load_operator(spec)
        assert op is not None

    def test_roundtrip_through_json(self):
        ops = [
            Koopman(),
            CondExp(3),
            Mult(random_function(1, 2)),
            Proj(random_function(2, 3, "unit-norm")),
            Compose(()),
            Sum((Koopman(),), (2.0,)),
        ]
        f = random_function(3, 3)
        for op in ops:
            reloaded = load_operator(operator_to_json(op))
            assert is_close(op.apply(f), reloaded.apply(f), atol=1e-15)

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            load_operator({"kind": "fourier"})

    def test_haar_proj_eps(self):
        op = load_operator({"kind": "haar_proj", "w": "eps0"})
        assert op.psi.depth == 1


class TestVerifyCommand:
    def test_small_suite_passes(self, capsys):
        code = main(["verify", "--suite", "wold", "--depth", "5"])
        out = json.loads(capsys.readouterr().out)
        assert code == 0
        assert out["passed"] is True
        assert all("ref" in c for c in out["checks"])

    def test_unknown_suite_is_usage_error(self, capsys):
        assert main(["verify", "--suite", "nope"]) == 2

    def test_report_written_to_file(self, tmp_path, capsys):
        out_file = tmp_path / "report.json"
        code = main(["verify", "--suite", "boson", "--depth", "6", "--out", str(out_file)])
        assert code == 0
        data = json.loads(out_file.read_text())
        assert data["suite"] == "boson"
        ids = [c["id"] for c in data["checks"]]
        assert ids == sorted(ids)  # canonical order

    def test_failing_check_sets_exit_code(self):
        report = SuiteReport(
            suite="synthetic",
            checks=[Check("synthetic.x", "forced failure", "plumbing", "fail", 1.0, 0.0, 0.0)],
            seed=0,
            depth=1,
            wall_time=0.0,
        )
        assert not report.passed
        assert len(report.failures) == 1

    def test_report_only_never_fails(self):
        report = run_suite("adjudication", depth=6, seed=0)
        assert all(c.status != "fail" for c in report.checks)
        assert any(c.status == "report-only" for c in report.checks)

    def test_full_suite_passes_within_budget(self):
        report = run_suite("all", depth=8, seed=0)
        assert report.passed
        assert report.wall_time < 60.0
        suites_seen = {c.id.split(".")[0] for c in report.checks}
        assert suites_seen == {
            "basis",
            "transfer",
            "boson",
            "fermion",
            "dirac-projections",
            "dirac-mult",
            "dirac-condexp",
            "adjudication",
            "wold",
        }


class TestNormCommand:
    def test_haar_projection(self, tmp_path, capsys):
        spec = tmp_path / "op.json"
        spec.write_text(json.dumps({"kind": "haar_proj", "w": "011"}))
        code = main(["norm", "--operator", str(spec), "--depth", "5"])
        out = json.loads(capsys.readouterr().out)
        assert code == 0
        assert out["value"] == pytest.approx(1.0, abs=1e-9)
        assert out["block_upper"] == pytest.approx(out["block_lower"], abs=1e-8)
        assert out["depth"] == 5

    def test_condexp(self, tmp_path, capsys):
        spec = tmp_path / "op.json"
        spec.write_text(json.dumps({"kind": "condexp", "n": 2}))
        code = main(["norm", "--operator", str(spec), "--depth", "5"])
        out = json.loads(capsys.readouterr().out)
        assert code == 0
        assert out["value"] == pytest.approx(1.0, abs=1e-9)

    def test_constant_multiplier_is_zero(self, tmp_path, capsys):
        spec = tmp_path / "op.json"
        spec.write_text(json.dumps({"kind": "mult", "f": {"depth": 0, "values": [4.0]}}))
        code = main(["norm", "--operator", str(spec), "--depth", "3"])
        out = json.loads(capsys.readouterr().out)
        assert code == 0
        assert out["value"] == pytest.approx(0.0, abs=1e-12)

    def test_envelope_format(self, tmp_path, capsys):
        spec = tmp_path / "op.json"
        spec.write_text(
            json.dumps({"dirac_norm": {"operator": {"kind": "condexp", "n": 1}, "depth": 4}})
        )
        code = main(["norm", "--operator", str(spec)])
        out = json.loads(capsys.readouterr().out)
        assert code == 0 and out["depth"] == 4

    def test_malformed_json_is_usage_error(self, tmp_path, capsys):
        spec = tmp_path / "op.json"
        spec.write_text("{not json")
        assert main(["norm", "--operator", str(spec), "--depth", "3"]) == 2


class TestSweepCommand:
    def test_csv_shape_and_plateau(self, tmp_path):
        spec = tmp_path / "op.json"
        spec.write_text(json.dumps({"kind": "haar_proj", "w": "01"}))
        out_csv = tmp_path / "sweep.csv"
        code = main(["sweep", "--operator", str(spec), "--depths", "3:6", "--csv", str(out_csv)])
        assert code == 0
        lines = out_csv.read_text().strip().splitlines()
        assert lines[0] == "depth,value,iterations,method,converged,plateau"
        assert len(lines) == 5
        last = lines[-1].split(",")
        assert float(last[1]) == pytest.approx(1.0, abs=1e-9)
        assert last[5] == "True"

    def test_comma_list(self, tmp_path, capsys):
        spec = tmp_path / "op.json"
        spec.write_text(json.dumps({"kind": "identity"}))
        code = main(["sweep", "--operator", str(spec), "--depths", "2,4"])
        lines = capsys.readouterr().out.strip().splitlines()
        assert code == 0 and len(lines) == 3


class TestConnesCommand:
    def _states(self, tmp_path):
        eta = tmp_path / "eta.json"
        xi = tmp_path / "xi.json"
        eta.write_text(json.dumps({"haar": {"words": {"01": 1.0}}}))
        xi.write_text(json.dumps({"haar": {"words": {"10": 1.0}}}))
        return eta, xi

    def test_identical_states_give_zero(self, tmp_path, capsys):
        eta, _ = self._states(tmp_path)
        family = tmp_path / "family.json"
        family.write_text(json.dumps({"operators": [{"kind": "haar_proj", "w": "01"}]}))
        code = main(["connes", "--eta", str(eta), "--xi", str(eta), "--family", str(family)])
        out = json.loads(capsys.readouterr().out)
        assert code == 0 and out["lower_bound"] == 0.0

    def test_projection_family_witness(self, tmp_path, capsys):
        eta, xi = self._states(tmp_path)
        family = tmp_path / "family.json"
        family.write_text(
            json.dumps(
                {
                    "operators": [
                        {"kind": "haar_proj", "w": "01"},
                        {"kind": "haar_proj", "w": "10"},
                        {"kind": "condexp", "n": 1},
                    ]
                }
            )
        )
        code = main(["connes", "--eta", str(eta), "--xi", str(xi), "--family", str(family)])
        out = json.loads(capsys.readouterr().out)
        assert code == 0
        assert out["lower_bound"] == pytest.approx(1.0, abs=1e-12)
        assert out["witness_operator"]["kind"] == "proj"

    def test_uncertified_family_member_is_rejected(self, tmp_path, capsys):
        eta, xi = self._states(tmp_path)
        family = tmp_path / "family.json"
        family.write_text(
            json.dumps(
                {"operators": [{"kind": "mult", "f": {"depth": 1, "values": [3.0, 0.0]}}]}
            )
        )
        code = main(["connes", "--eta", str(eta), "--xi", str(xi), "--family", str(family)])
        err = capsys.readouterr().err
        assert code == 2
        assert "not certified" in err


class TestBosonVerifyCommand:
    def test_passes(self, capsys):
        code = main(["boson", "verify", "--n-max", "3", "--w-max-len", "2", "--depth", "8"])
        out = json.loads(capsys.readouterr().out)
        assert code == 0
        assert out["passed"] is True
        ids = {c["id"] for c in out["checks"]}
        assert any(i.startswith("boson.") for i in ids)
        assert any(i.startswith("fermion.") for i in ids)


class TestFormulasReportCommand:
    def test_witness_report(self, tmp_path, capsys):
        psi = tmp_path / "psi.json"
        psi.write_text(
            json.dumps(
                {"haar": {"words": {"01": 2 ** -0.5, "001": -0.5, "101": -0.5}}}
            )
        )
        code = main(["formulas", "report", "--psi", str(psi)])
        out = json.loads(capsys.readouterr().out)
        assert code == 0
        assert out["c"] == pytest.approx(-0.5, abs=1e-12)
        assert out["numeric_norm"] == pytest.approx(math.sqrt(3) / 2, abs=1e-9)
        assert out["surface_scan_max"] == pytest.approx(9 / 8, abs=1e-6)
        assert out["verdict"] == "sqrt_one_minus_c_sq"

    def test_non_unit_state_rejected(self, tmp_path, capsys):
        psi = tmp_path / "psi.json"
        psi.write_text(json.dumps({"depth": 1, "values": [2.0, 2.0]}))
        assert main(["formulas", "report", "--psi", str(psi)]) == 2
