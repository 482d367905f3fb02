"""CLI: schemas, exit codes, determinism, operation coverage."""

import json
import subprocess
import sys

import pytest

from stablepairs.cli import HANDLERS, OPERATION_COMMANDS, build_parser, main

POLY_V2 = {
    "schema": "v1",
    "shape": {"kind": "vector", "rows": 1, "cols": 2},
    "degree": 1,
    "mode": "exact",
    "terms": [{"exp": [1, 0], "re": "1", "im": "0"}],
}
POLY_X2 = {
    "schema": "v1",
    "shape": {"kind": "vector", "rows": 1, "cols": 2},
    "degree": 2,
    "mode": "exact",
    "terms": [{"exp": [2, 0], "re": "1", "im": "0"}],
}
MONO_Z02 = {
    "schema": "v1",
    "shape": {"kind": "vector", "rows": 1, "cols": 3},
    "degree": 2,
    "mode": "exact",
    "terms": [{"exp": [2, 0, 0], "re": "1", "im": "0"}],
}
CONIC = {
    "schema": "v1",
    "N": 2,
    "d": 2,
    "gamma": [
        {"terms": [{"exp": [2, 0], "re": "1", "im": "0"}]},
        {"terms": [{"exp": [1, 1], "re": "1", "im": "0"}]},
        {"terms": [{"exp": [0, 2], "re": "1", "im": "0"}]},
    ],
}
HYP = {
    "schema": "v1",
    "n": 1,
    "F": {
        "schema": "v1",
        "shape": {"kind": "vector", "rows": 1, "cols": 3},
        "degree": 2,
        "mode": "exact",
        "terms": [
            {"exp": [1, 0, 1], "re": "1", "im": "0"},
            {"exp": [0, 2, 0], "re": "-1", "im": "0"},
        ],
    },
}
PAIR = {"schema": "v1", "v": POLY_V2, "w": POLY_X2}
SIGMA_ID3 = {
    "schema": "v1",
    "size": 3,
    "mode": "float",
    "entries": [
        [1.0, 0.0], [0.0, 0.0], [0.0, 0.0],
        [0.0, 0.0], [1.0, 0.0], [0.0, 0.0],
        [0.0, 0.0], [0.0, 0.0], [1.0, 0.0],
    ],
}


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, payload in (
        ("pair", PAIR),
        ("mono", MONO_Z02),
        ("conic", CONIC),
        ("hyp", HYP),
        ("sigma", SIGMA_ID3),
    ):
        p = tmp_path / f"{name}.json"
        p.write_text(json.dumps(payload))
        paths[name] = str(p)
    return paths


def run_cli(args, check=True):
    out = subprocess.run(
        [sys.executable, "-m", "stablepairs.cli", *args], capture_output=True, text=True
    )
    if check:
        assert out.returncode == 0, out.stderr
    return out


class TestSubcommands:
    def test_pair_check_torus_fail(self, files):
        out = run_cli(["pair-check", "--pair", files["pair"]])
        payload = json.loads(out.stdout)
        assert payload["result"]["verdict"] == "torus-fail"
        assert payload["result"]["witness"]["lambda"] == [1, -1]

    def test_mahler_dirichlet(self, files):
        out = run_cli(
            ["mahler", "--poly", files["mono"], "--p", "0", "--samples", "200000",
             "--seed", "7"]
        )
        res = json.loads(out.stdout)["result"]
        assert abs(res["log_value"] + 1.5) <= 3 * res["stderr"]

    def test_xpair_roundtrip_and_kenergy(self, files, tmp_path):
        xp_path = tmp_path / "xp.json"
        out = run_cli(
            ["xpair", "--curve", files["conic"], "--samples", "20000",
             "--output", str(xp_path)]
        )
        xp_payload = json.loads(xp_path.read_text())["result"]
        (tmp_path / "xp_only.json").write_text(json.dumps(xp_payload))
        out2 = run_cli(
            ["kenergy", "--xpair", str(tmp_path / "xp_only.json"), "--sigma",
             files["sigma"], "--samples", "5000"]
        )
        res = json.loads(out2.stdout)["result"]
        assert res["k_energy"] == pytest.approx(0.0, abs=1e-12)

    def test_verify_suite(self, files):
        out = run_cli(["verify", "forms"])
        payload = json.loads(out.stdout)
        assert payload["result"]["passed"]

    def test_oracle(self, files):
        out = run_cli(["oracle", "--curve", files["conic"]])
        res = json.loads(out.stdout)["result"]
        assert abs(res["volume"] - 2.0) < 1e-3

    def test_weight(self, files, tmp_path):
        p = tmp_path / "x2.json"
        p.write_text(json.dumps(POLY_X2))
        out = run_cli(["weight", "--poly", str(p), "--lambda", "[1,-1]"])
        assert json.loads(out.stdout)["result"]["weight"] == 2

    def test_polytope(self, files, tmp_path):
        p = tmp_path / "x2.json"
        p.write_text(json.dumps(POLY_X2))
        out = run_cli(["polytope", "--poly", str(p)])
        res = json.loads(out.stdout)["result"]
        assert res["support"] == [[2, 0]] and res["projected"] is True

    def test_chow_value(self, files):
        out = run_cli(["chow", "--curve", files["conic"], "--at", "[[1,0,0],[0,0,1]]"])
        assert json.loads(out.stdout)["result"]["value"]["re"] == "1"

    def test_chow_hyp(self, files):
        out = run_cli(["chow-hyp", "--hyp", files["hyp"]])
        assert json.loads(out.stdout)["result"]["degree"] == 4

    def test_stable_check(self, files):
        out = run_cli(["stable-check", "--pair", files["pair"], "--m", "2"])
        assert json.loads(out.stdout)["result"]["verdict"] == "torus-fail"

    def test_pretty_flag(self, files):
        out = run_cli(["pair-check", "--pair", files["pair"], "--pretty"])
        assert "verdict: torus-fail" in out.stdout


class TestExitCodes:
    def test_schema_error_exit_2(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{\"schema\": \"v0\"}")
        out = run_cli(["pair-check", "--pair", str(bad)], check=False)
        assert out.returncode == 2

    def test_missing_file_exit_2(self):
        out = run_cli(["mahler", "--poly", "/nonexistent.json"], check=False)
        assert out.returncode == 2

    def test_precondition_exit_3(self, tmp_path):
        line = {
            "schema": "v1",
            "N": 1,
            "d": 1,
            "gamma": [
                {"terms": [{"exp": [1, 0], "re": "1", "im": "0"}]},
                {"terms": [{"exp": [0, 1], "re": "1", "im": "0"}]},
            ],
        }
        p = tmp_path / "line.json"
        p.write_text(json.dumps(line))
        out = run_cli(["hurwitz", "--curve", str(p)], check=False)
        assert out.returncode == 3

    def test_bad_samples_exit_3(self, tmp_path):
        p = tmp_path / "m.json"
        p.write_text(json.dumps(MONO_Z02))
        out = run_cli(["mahler", "--poly", str(p), "--samples", "10"], check=False)
        assert out.returncode == 3


class TestDeterminism:
    def test_byte_identical_reruns(self, files):
        a = run_cli(["mahler", "--poly", files["mono"], "--samples", "5000", "--seed", "3"])
        b = run_cli(["mahler", "--poly", files["mono"], "--samples", "5000", "--seed", "3"])
        assert a.stdout == b.stdout

    def test_probe_deterministic(self, files):
        a = run_cli(["pair-check", "--pair", files["pair"], "--trials", "5", "--seed", "9"])
        b = run_cli(["pair-check", "--pair", files["pair"], "--trials", "5", "--seed", "9"])
        assert a.stdout == b.stdout


class TestCoverageTable:
    def test_every_operation_has_one_subcommand(self):
        commands = set(HANDLERS)
        spec_ops = {
            "evaluate", "act", "sylvester_resultant", "binary_discriminant",
            "maximal_minors", "support", "weight_polytope", "psg_weight",
            "contains", "minkowski_sum", "scale", "rep_degree",
            "torus_semistable", "randomized_torus_probe", "kempf_ness_value",
            "kempf_ness_gradient", "descend", "build_stable_test_pair",
            "stable_probe", "chow_form_curve", "hurwitz_form_curve",
            "chow_form_hypersurface", "build_x_pair", "fs_pointwise",
            "lp_norm", "sup_norm", "arestov_check", "jensen_check",
            "conformal_theta", "log_tan_dist_p", "orbit_distance",
            "k_energy_algebraic", "aubin_f0_algebraic", "coercivity_value",
            "curve_geometry_oracle", "asymptotic_report",
        }
        assert set(OPERATION_COMMANDS) == spec_ops
        for op, cmd in OPERATION_COMMANDS.items():
            assert cmd in commands, f"{op} maps to unknown subcommand {cmd}"

    def test_parser_has_all_subcommands(self):
        parser = build_parser()
        subs = next(
            a for a in parser._actions if isinstance(a, type(parser._actions[-1]))
        )
        expected = {
            "polytope", "weight", "pair-check", "stable-check", "mahler",
            "supnorm", "arestov", "chow", "hurwitz", "chow-hyp", "xpair",
            "distance", "kenergy", "aubin", "coercivity", "oracle",
            "asymptotic", "verify",
        }
        assert expected <= set(HANDLERS)
