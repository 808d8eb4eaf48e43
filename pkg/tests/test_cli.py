"""Command-line behaviour: eval values, verify reports, exit codes and determinism."""

import json

import pytest

from qhahn.cli import (DEFAULT_DPS, RunConfig, UsageError, build_parser, main, read_default_dps,
                       run_verify)
from qhahn.qcore import Mode


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out.strip(), err


class TestEval:
    @pytest.mark.parametrize("argv,expected", [
        (["eval", "psi", "--n", "1", "--q", "1/2", "--a", "1/3", "--x", "1", "--y", "1/4",
          "--z", "1/5"], "53/60"),
        (["eval", "cauchy", "--n", "0", "--q", "1/2", "--x", "3", "--y", "2"], "1"),
        (["eval", "asc", "--n", "1", "--q", "1/2", "--a", "1/3", "--x", "2"], "7/3"),
        (["eval", "hahn1", "--n", "1", "--q", "1/2", "--a", "1/3", "--x", "2"], "7/3"),
        (["eval", "qpoch", "--n", "2", "--q", "1/2", "--a", "1/2"], "3/8"),
        (["eval", "qbinomial", "--n", "4", "--k", "2", "--q", "1/2"], "35/16"),
        (["eval", "phi", "--q", "1/2", "--upper", "2,1/3", "--lower", "1/5", "--arg", "1/2"],
         "1/6"),
    ])
    def test_values(self, capsys, argv, expected):
        code, out, _ = run(capsys, *argv)
        assert code == 0 and out == expected

    def test_float_mode(self, capsys):
        code, out, _ = run(capsys, "eval", "psi", "--n", "1", "--q", "1/2", "--mode", "float",
                           "--a", "1/3", "--x", "1", "--y", "1/4", "--z", "1/5")
        assert code == 0 and abs(float(out) - 53 / 60) < 1e-15

    def test_missing_parameter_is_usage_error(self, capsys):
        code, _, err = run(capsys, "eval", "psi", "--n", "1", "--q", "1/2", "--a", "1/3")
        assert code == 2 and "missing" in err

    def test_bad_base_is_usage_error(self, capsys):
        code, _, _ = run(capsys, "eval", "qpoch", "--n", "1", "--q", "2", "--a", "1")
        assert code == 2

    def test_non_terminating_phi_in_exact_mode(self, capsys):
        code, _, err = run(capsys, "eval", "phi", "--q", "1/2", "--upper", "1/3", "--arg", "1/2")
        assert code == 2 and "exact" in err

    def test_unknown_family_rejected_by_argparse(self):
        with pytest.raises(SystemExit) as info:
            main(["eval", "laguerre", "--q", "1/2"])
        assert info.value.code == 2


class TestVerify:
    def test_chu_vandermonde_passes(self, capsys):
        code, out, _ = run(capsys, "verify", "--identities", "chu_vandermonde", "--mode",
                           "exact", "--output", "json")
        document = json.loads(out)
        assert code == 0
        entry = document["results"][0]
        assert entry["verdict"] == "pass" and entry["max_deviation"] == 0
        assert len(entry["points"]) == 5

    def test_float_only_identity_in_exact_mode_is_rejected(self, capsys):
        code, _, err = run(capsys, "verify", "--identities", "rogers", "--mode", "exact")
        assert code == 2 and "float" in err

    def test_unknown_identity(self, capsys):
        code, _, err = run(capsys, "verify", "--identities", "nope")
        assert code == 2 and "unknown identity" in err

    def test_bad_tolerance_override(self, capsys):
        code, _, _ = run(capsys, "verify", "--identities", "heine", "--mode", "float",
                         "--tol", "heine")
        assert code == 2

    def test_tolerance_override_reaches_report(self, capsys):
        code, out, _ = run(capsys, "verify", "--identities", "heine", "--mode", "float",
                           "--points", "2", "--tol", "HEINE=1e-3", "--output", "json")
        document = json.loads(out)
        assert code == 0
        assert all(p["tolerance"] == 1e-3 for p in document["results"][0]["points"])

    def test_failure_exit_code(self, capsys):
        code, out, _ = run(capsys, "verify", "--identities", "heine", "--mode", "float",
                           "--points", "1", "--tol", "HEINE=-1")
        assert code == 1 and out.startswith("FAIL")

    def test_text_output_and_file(self, capsys, tmp_path):
        target = tmp_path / "report.txt"
        code, out, _ = run(capsys, "verify", "--identities", "gen", "euler_pair", "--out",
                           str(target))
        text = target.read_text()
        assert code == 0 and out == ""
        assert "PASS  GEN" in text and "2 passed, 0 failed" in text

    def test_comma_separated_ids(self, capsys):
        code, out, _ = run(capsys, "verify", "--identities", "gen,euler_pair", "--output", "json")
        assert [r["id"] for r in json.loads(out)["results"]] == ["GEN", "EULER_PAIR"]

    def test_nonpositive_points_rejected(self, capsys):
        code, _, _ = run(capsys, "verify", "--identities", "gen", "--points", "0")
        assert code == 2


class TestDeterminism:
    IDS = ["GEN", "SA", "HEINE", "ROGERS"]

    def test_same_seed_same_document(self):
        config = RunConfig(identities=self.IDS, seed=42, points_per_identity=2)
        first = run_verify(config, timings=False)
        second = run_verify(config, timings=False)
        assert json.dumps(first, sort_keys=True) == json.dumps(second, sort_keys=True)

    def test_timings_are_the_only_difference(self):
        config = RunConfig(identities=self.IDS[:2], seed=3, points_per_identity=2)
        timed = run_verify(config)
        for entry in timed["results"]:
            assert entry.pop("elapsed_ms") >= 0
        assert timed == run_verify(config, timings=False)

    def test_json_round_trip(self):
        document = run_verify(RunConfig(identities=["GEN"], points_per_identity=1))
        assert json.loads(json.dumps(document)) == document

    def test_seed_changes_points(self):
        def params(seed):
            doc = run_verify(RunConfig(identities=["GEN"], seed=seed, points_per_identity=3),
                             timings=False)
            return [p["params"] for p in doc["results"][0]["points"]]
        assert params(1) != params(2)

    def test_config_serializes(self):
        config = RunConfig(mode=Mode.FLOAT, identities=["GEN"])
        assert config.to_dict()["mode"] == "float"


class TestEnvironmentAndList:
    def test_default_precision(self):
        assert read_default_dps({}) == DEFAULT_DPS
        assert read_default_dps({"QHAHN_DPS": "40"}) == 40
        assert read_default_dps({"QHAHN_DPS": "machine"}) is None
        assert read_default_dps({"QHAHN_DPS": "0"}) is None

    @pytest.mark.parametrize("raw", ["abc", "10"])
    def test_bad_precision(self, raw):
        with pytest.raises(UsageError):
            read_default_dps({"QHAHN_DPS": raw})

    def test_list_json(self, capsys):
        code, out, _ = run(capsys, "list", "--output", "json")
        entries = json.loads(out)
        assert code == 0 and {"GEN", "ROGERS", "EXT_ROGERS"} <= {e["id"] for e in entries}

    def test_list_text(self, capsys):
        code, out, _ = run(capsys, "list")
        assert code == 0 and "CHU_VANDERMONDE" in out

    def test_parser_requires_command(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args([])
