import json

import numpy as np
import pytest

import resourcekit as rk
from resourcekit.cli import main


@pytest.fixture
def states(tmp_path):
    paths = {}
    plus = rk.pure_state([1, 1]).projector()
    mixed = rk.validate(np.eye(2) / 2, [2])
    zero = rk.basis_pure([2], 0).projector()
    one = rk.basis_pure([2], 1).projector()
    diag = rk.validate(np.diag([0.6, 0.4]), [2])
    for name, rho in (("plus", plus), ("mixed", mixed), ("zero", zero),
                      ("one", one), ("diag", diag)):
        p = tmp_path / f"{name}.json"
        rk.save_state(rho, p)
        paths[name] = str(p)
    return paths


def test_affinity_same_state_gives_one(states, capsys):
    code = main(["affinity", "--rho", states["plus"], "--sigma", states["plus"],
                 "--alpha", "0.5", "--seed", "1"])
    assert code == 0
    out = capsys.readouterr().out.strip().splitlines()
    assert out[0] == "alpha,value"
    assert float(out[1].split(",")[1]) == pytest.approx(1.0, abs=1e-10)


def test_affinity_orthogonal_and_anchor(states, capsys):
    assert main(["affinity", "--rho", states["zero"], "--sigma", states["one"],
                 "--alpha", "0.5", "--seed", "1"]) == 0
    val = float(capsys.readouterr().out.strip().splitlines()[1].split(",")[1])
    assert val == pytest.approx(0.0, abs=1e-12)

    assert main(["affinity", "--rho", states["plus"], "--sigma", states["mixed"],
                 "--alpha", "0.5", "--seed", "1"]) == 0
    val = float(capsys.readouterr().out.strip().splitlines()[1].split(",")[1])
    assert val == pytest.approx(0.70711, abs=1e-5)


def test_affinity_multiple_alphas(states, capsys):
    assert main(["affinity", "--rho", states["plus"], "--sigma", states["mixed"],
                 "--alpha", "0.3", "--alpha", "0.7", "--seed", "1"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 3


def test_missing_seed_exits_two(states, capsys):
    code = main(["affinity", "--rho", states["plus"], "--sigma", states["plus"],
                 "--alpha", "0.5"])
    assert code == 2


def test_bad_alpha_exits_two(states):
    code = main(["affinity", "--rho", states["plus"], "--sigma", states["plus"],
                 "--alpha", "1.5", "--seed", "1"])
    assert code == 2


def test_missing_file_exits_two(tmp_path, capsys):
    code = main(["affinity", "--rho", str(tmp_path / "none.json"),
                 "--sigma", str(tmp_path / "none.json"),
                 "--alpha", "0.5", "--seed", "1"])
    assert code == 2
    assert "error:" in capsys.readouterr().err


def test_invalid_state_file_exits_two(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"dims": [2], "matrix": [[[1.0, 0], [0, 0]], [[0, 0], [1.0, 0]]]}')
    code = main(["indicator", "--state", str(bad), "--label", "coherence",
                 "--k", "2", "--alpha", "0.5", "--seed", "1"])
    assert code == 2


def test_indicator_diagonal_state_is_zero(states, capsys):
    code = main(["indicator", "--state", states["diag"], "--label", "coherence",
                 "--k", "2", "--alpha", "0.5", "--seed", "3",
                 "--restarts", "1", "--max-iter", "100"])
    assert code == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "label,k,alpha,value,best_affinity,restarts,spread,seed"
    assert float(lines[1].split(",")[3]) <= 1e-9


def test_indicator_plus_anchor(states, capsys):
    code = main(["indicator", "--state", states["plus"], "--label", "coherence",
                 "--k", "2", "--alpha", "0.5", "--seed", "3",
                 "--restarts", "1", "--max-iter", "150"])
    assert code == 0
    val = float(capsys.readouterr().out.strip().splitlines()[1].split(",")[3])
    assert val == pytest.approx(0.2928932, abs=1e-6)


def test_indicator_deterministic_output_bytes(states, tmp_path):
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    args = ["indicator", "--state", states["plus"], "--label", "coherence",
            "--k", "2", "--alpha", "0.5", "--seed", "5",
            "--restarts", "2", "--max-iter", "120"]
    for out in (out1, out2):
        assert main(args + ["--out", str(out)]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_indicator_json_format(states, tmp_path):
    out = tmp_path / "r.json"
    assert main(["indicator", "--state", states["diag"], "--label", "coherence",
                 "--k", "2", "--alpha", "0.5", "--seed", "3", "--restarts", "1",
                 "--max-iter", "80", "--format", "json", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["results"][0]["witness"]["dims"] == [2]


def test_verify_small_suite_passes(capsys):
    code = main(["verify", "--suite", "appendix-b", "--seed", "11",
                 "--n-samples", "10"])
    assert code == 0
    assert "pass" in capsys.readouterr().out


def test_verify_inject_failure_exits_one(capsys):
    code = main(["verify", "--suite", "appendix-b", "--seed", "11",
                 "--n-samples", "5", "--inject-failure"])
    assert code == 1
    assert "FAIL" in capsys.readouterr().out


def test_verify_zero_samples_vacuous_pass(capsys):
    code = main(["verify", "--suite", "appendix-b", "--seed", "11",
                 "--n-samples", "0"])
    assert code == 0
    assert "vacuous" in capsys.readouterr().err


def test_verify_writes_csv(tmp_path, capsys):
    out = tmp_path / "certs.csv"
    assert main(["verify", "--suite", "affinity-props", "--seed", "11",
                 "--n-samples", "8", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "label,seed,alpha,lhs,rhs,slack"
    assert len(lines) > 8


def test_embed_diagonal_state(states, tmp_path, capsys):
    out = tmp_path / "embed.json"
    code = main(["embed", "--state", states["diag"], "--k", "2",
                 "--alpha", "0.5", "--seed", "9", "--restarts", "1",
                 "--max-iter", "60", "--out", str(out)])
    assert code == 0
    doc = json.loads(out.read_text())
    for row in doc["depths"]:
        assert row["rank"] == 1
        assert row["sep_depth"] == 3  # d + 1 for d = 2
        assert row["ent_depth"] == 1
    report = doc["transport"]["k=2,alpha=0.5"]
    for row in report["rows"]:
        assert row["slack"] >= -1e-8


def test_embed_plus_state(states, capsys):
    code = main(["embed", "--state", states["plus"], "--k", "2",
                 "--alpha", "0.5", "--seed", "9", "--restarts", "1",
                 "--max-iter", "100"])
    assert code == 0
    doc = json.loads(capsys.readouterr().out)
    row = doc["transport"]["k=2,alpha=0.5"]["rows"][0]
    assert row["rhs"] == pytest.approx(0.2928932, abs=1e-6)
