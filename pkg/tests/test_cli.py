import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from limsupdim.cli import RunConfig, main, run
from limsupdim.manifests import RunManifest, read_manifests


@pytest.fixture
def runner():
    return CliRunner()


def test_svf_eval_prints_value(runner):
    result = runner.invoke(main, ["svf", "eval", "--r", "0.5,0.25",
                                  "--s", "1,1", "--t", "1.5"])
    assert result.exit_code == 0
    assert result.output.strip() == "0.25"


def test_svf_profile_csv(runner):
    result = runner.invoke(main, ["svf", "profile", "--r", "0.5,0.25", "--s", "1,1"])
    assert result.exit_code == 0
    assert "t,log_value,value" in result.output
    assert "sorted_permutation=[0, 1]" in result.output


def test_dim_predict_agreement(runner):
    result = runner.invoke(main, ["dim", "predict", "--alphas", "2,3", "--s", "1,1"])
    assert result.exit_code == 0
    assert "dimension=0.5" in result.output
    assert "agreement=ok" in result.output


def test_dim_predict_disagreement_is_exit_1(runner):
    # an unreachable tolerance turns the ulp-level bisection/closed-form gap
    # into a reported disagreement (t* = 1/3 is not a dyadic float)
    result = runner.invoke(main, ["dim", "predict", "--alphas", "3,7",
                                  "--s", "1,1", "--tol", "1e-18"])
    assert result.exit_code == 1
    assert "DISAGREE" in result.output


def test_dim_convex_body(runner):
    result = runner.invoke(main, ["dim", "convex-body", "--alphas", "2,3"])
    assert result.exit_code == 0
    assert result.output.strip().startswith("0.5")


def test_cover_ball_command(runner, tmp_path):
    result = runner.invoke(main, [
        "cover", "ball", "--space", "interval", "--x", "0.5",
        "--big-radius", "0.5", "--radius", "0.25", "--out", str(tmp_path)])
    assert result.exit_code == 0
    assert "count=5" in result.output
    assert (tmp_path / "cover_ball.csv").exists()
    assert (tmp_path / "manifest.jsonl").exists()


def test_cover_rect_command(runner):
    result = runner.invoke(main, [
        "cover", "rect", "--space", "interval,interval", "--x", "0.5,0.5",
        "--r", "0.4,0.05", "--radius", "0.05"])
    assert result.exit_code == 0
    assert "sound=True" in result.output


def test_sparse_command(runner):
    result = runner.invoke(main, [
        "sparse", "--space", "interval", "--x", "0.5",
        "--big-radius", "0.5", "--radius", "0.25"])
    assert result.exit_code == 0
    assert "count=5" in result.output


def test_mc_requires_seed(runner):
    result = runner.invoke(main, ["mc", "density", "--space", "circle",
                                  "--delta", "0.1", "--horizon", "100"])
    assert result.exit_code == 2


def test_mc_density_runs(runner, tmp_path):
    result = runner.invoke(main, [
        "mc", "density", "--space", "circle", "--delta", "0.2",
        "--horizon", "2000", "--seed", "5", "--out", str(tmp_path)])
    assert result.exit_code == 0
    manifests = read_manifests(tmp_path / "manifest.jsonl")
    assert manifests[0].operation == "mc-density"
    assert manifests[0].seed == 5


def test_mc_fiber_sum_reproducible_bytes(runner, tmp_path):
    args = ["mc", "fiber-sum", "--space", "circle,circle", "--alphas", "1,2",
            "--s", "1,1", "--u", "0", "--anchor", "0.5",
            "--checkpoints", "100,1000", "--seed", "9"]
    a = runner.invoke(main, args + ["--out", str(tmp_path / "a")])
    b = runner.invoke(main, args + ["--out", str(tmp_path / "b")])
    assert a.exit_code == 0 and b.exit_code == 0
    csv_a = (tmp_path / "a" / "mc_fiber_sum.csv").read_bytes()
    csv_b = (tmp_path / "b" / "mc_fiber_sum.csv").read_bytes()
    assert csv_a == csv_b


def test_manifest_written_even_on_check_failure(runner, tmp_path):
    # an adversarial acceptance threshold cannot stop the manifest: use a
    # divergence run whose table is empty (always passes) vs density with
    # horizon 0, which fails its check but still writes the manifest
    result = runner.invoke(main, [
        "mc", "density", "--space", "circle", "--delta", "0.2",
        "--horizon", "0", "--seed", "5", "--out", str(tmp_path)])
    assert result.exit_code == 1
    assert (tmp_path / "manifest.jsonl").exists()


def test_mc_tail_cover_runs(runner, tmp_path):
    result = runner.invoke(main, [
        "mc", "tail-cover", "--space", "circle,circle", "--alphas", "2,3",
        "--s", "1,1", "--t", "0.5,1.0", "--window", "1:16", "--seed", "3",
        "--out", str(tmp_path)])
    assert result.exit_code == 0
    assert "dominated=True" in result.output


def test_mc_verdict_runs(runner):
    result = runner.invoke(main, [
        "mc", "verdict", "--space", "circle,circle", "--alphas", "2,3",
        "--s", "1,1", "--seeds", "101"])
    assert result.exit_code == 0
    assert "predicted_dimension=0.5" in result.output


def test_config_file_round_trip(tmp_path):
    cfg = RunConfig(command="mc-density", space="circle", delta=0.25,
                    horizon=1000, seed=3)
    data = cfg.to_dict()
    again = RunConfig.from_dict(json.loads(json.dumps(data)))
    assert again == cfg
    assert again.to_dict() == data


def test_config_rejects_unknown_keys():
    with pytest.raises(ValueError):
        RunConfig.from_dict({"command": "mc-density", "seed": 1, "bogus": 2})


def test_config_requires_seed_for_stochastic():
    with pytest.raises(ValueError):
        RunConfig.from_dict({"command": "mc-density", "space": "circle",
                             "delta": 0.1, "horizon": 10})


def test_config_file_via_cli(runner, tmp_path):
    path = tmp_path / "run.json"
    path.write_text(json.dumps({
        "command": "mc-density", "space": "circle", "delta": 0.25,
        "horizon": 1000, "seed": 3, "version": 1}))
    result = runner.invoke(main, ["mc", "density", "--config", str(path)])
    assert result.exit_code == 0


def test_config_file_unknown_key_exit_2(runner, tmp_path):
    path = tmp_path / "run.json"
    path.write_text(json.dumps({"command": "mc-density", "seed": 1, "nope": 1}))
    result = runner.invoke(main, ["mc", "density", "--config", str(path)])
    assert result.exit_code == 2
    assert "nope" in result.output


def test_report_merges_two_seeds(runner, tmp_path):
    for seed, sub in ((9, "a"), (10, "b")):
        res = runner.invoke(main, [
            "mc", "fiber-sum", "--space", "circle,circle", "--alphas", "1,2",
            "--s", "1,1", "--u", "0", "--anchor", "0.5",
            "--checkpoints", "100,1000", "--seed", str(seed),
            "--out", str(tmp_path / sub)])
        assert res.exit_code == 0
    result = runner.invoke(main, [
        "report", str(tmp_path / "a" / "manifest.jsonl"),
        str(tmp_path / "b" / "manifest.jsonl")])
    assert result.exit_code == 0
    assert "seed_9" in result.output and "seed_10" in result.output
    assert "log10_N" in result.output


def test_report_empty_exit_2(runner):
    result = runner.invoke(main, ["report"])
    assert result.exit_code == 2


def test_report_incompatible_exit_2(runner, tmp_path):
    r1 = runner.invoke(main, [
        "mc", "density", "--space", "circle", "--delta", "0.25",
        "--horizon", "500", "--seed", "3", "--out", str(tmp_path / "d")])
    assert r1.exit_code == 0
    r2 = runner.invoke(main, [
        "mc", "fiber-sum", "--space", "circle,circle", "--alphas", "1,2",
        "--s", "1,1", "--u", "0", "--anchor", "0.5", "--checkpoints", "100",
        "--seed", "9", "--out", str(tmp_path / "f")])
    assert r2.exit_code == 0
    result = runner.invoke(main, [
        "report", str(tmp_path / "d" / "manifest.jsonl"),
        str(tmp_path / "f" / "manifest.jsonl")])
    assert result.exit_code == 2


def test_invalid_t_exit_2(runner):
    result = runner.invoke(main, ["svf", "eval", "--r", "0.5", "--s", "1",
                                  "--t", "5.0"])
    assert result.exit_code == 2


def test_manifest_round_trip(tmp_path):
    m = RunManifest(operation="mc-density", seed=1, space={"kind": "circle"},
                    schedule=None, params={"config": {"command": "mc-density"}},
                    window=[0, 10], statistics={"passed": True},
                    metadata={"wall_clock": 0.1})
    again = RunManifest.from_json(m.to_json())
    assert again.operation == m.operation
    assert again.statistics == m.statistics
    with pytest.raises(ValueError):
        RunManifest.from_json(json.dumps({"operation": "x", "oops": 1}))


def test_run_unknown_command():
    with pytest.raises(ValueError):
        run(RunConfig(command="not-a-command"))


def test_replay_from_manifest_config(runner, tmp_path):
    res = runner.invoke(main, [
        "mc", "fiber-sum", "--space", "circle,circle", "--alphas", "1,2",
        "--s", "1,1", "--u", "0", "--anchor", "0.5", "--checkpoints", "100",
        "--seed", "9", "--out", str(tmp_path / "orig")])
    assert res.exit_code == 0
    manifest = read_manifests(tmp_path / "orig" / "manifest.jsonl")[0]
    replay_cfg = RunConfig.from_dict(manifest.params["config"])
    outcome = run(replay_cfg)
    assert outcome.manifest.statistics == manifest.statistics
    # bytes, not read_text(): universal newlines would fold the CSV's CRLF
    stored = (tmp_path / "orig" / "mc_fiber_sum.csv").read_bytes().decode("utf-8")
    assert outcome.csv == stored
