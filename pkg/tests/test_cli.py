import json

import numpy as np
import pytest

from thresec.cli import main
from thresec.formats import read_blocks, write_blocks


def descriptor(tmp_path, name, **desc):
    path = tmp_path / f"{name}.json"
    path.write_text(json.dumps(desc))
    return str(path)


@pytest.fixture
def rm42(tmp_path):
    return descriptor(tmp_path, "rm42", code={"family": "rm", "s": 4, "r": 2}, layout="default")


@pytest.fixture
def unified(tmp_path):
    return descriptor(tmp_path, "u42", mode="unified-rm", s=4, r=2)


def test_info_rm42(rm42, capsys):
    assert main(["info", "--scheme", rm42]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "n=16 m=11 k=5 t=3"
    assert "proper: yes" in out


def test_info_rs_and_warning(tmp_path, capsys):
    rs = descriptor(tmp_path, "rs", code={"family": "rs", "q": 8, "n": 7, "m": 5})
    assert main(["info", "--scheme", rs]) == 0
    assert "t=2" in capsys.readouterr().out.splitlines()[0]
    wide = descriptor(tmp_path, "wide", code={"family": "rs", "q": 5, "n": 4, "m": 2})
    assert main(["info", "--scheme", wide]) == 0
    assert any(line.startswith("warning: k=2 >= m=2") for line in capsys.readouterr().out.splitlines())


def test_non_proper_descriptor(tmp_path, capsys):
    bad = descriptor(tmp_path, "bad", code={"family": "generic", "q": 2, "matrix": [[1, 1, 0], [0, 0, 1]]}, A=[0, 1])
    assert main(["info", "--scheme", bad]) == 2
    assert "not proper (message-side)" in capsys.readouterr().err


def test_keygen_is_deterministic_and_uniform(tmp_path, rm42):
    a, b = tmp_path / "a.key", tmp_path / "b.key"
    assert main(["keygen", "--scheme", rm42, "--seed", "11", "--out", str(a)]) == 0
    assert main(["keygen", "--scheme", rm42, "--seed", "11", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    rs = descriptor(tmp_path, "rs", code={"family": "rs", "q": 8, "n": 7, "m": 5})
    big = tmp_path / "big.key"
    main(["keygen", "--scheme", rs, "--seed", "1", "--blocks", "50000", "--out", str(big)])
    keys = read_blocks(big)
    assert keys.shape == (50000, 2) and keys.min() >= 0 and keys.max() < 8
    freq = np.bincount(keys.ravel(), minlength=8) / keys.size
    assert np.all(np.abs(freq - 1 / 8) <= 0.02 / 8)


def round_trip(tmp_path, scheme, msgs, mode=None, channel=None, packed=False):
    m, k, c, d = (str(tmp_path / x) for x in ("m.txt", "k.txt", "c.txt", "d.txt"))
    write_blocks(m, msgs, packed=packed)
    extra = ["--packed"] if packed else []
    assert main(["keygen", "--scheme", scheme, "--seed", "5", "--out", k] + extra) == 0
    cmd = ["encode", "--scheme", scheme, "--message", m, "--key", k, "--out", c] + extra
    if channel:
        cmd += ["--channel", json.dumps(channel)]
    assert main(cmd) == 0
    cmd = ["decode", "--scheme", scheme, "--codeword", c, "--key", k, "--out", d] + extra
    if mode:
        cmd += ["--mode", mode]
    code = main(cmd)
    return code, d


def test_sc_round_trip(tmp_path, rm42):
    msgs = np.random.default_rng(0).integers(0, 2, (6, 11))
    code, out = round_trip(tmp_path, rm42, msgs, mode="sc")
    assert code == 0 and np.array_equal(read_blocks(out), msgs)


def test_packed_round_trip(tmp_path, rm42):
    msgs = np.random.default_rng(1).integers(0, 2, (8, 11))
    code, out = round_trip(tmp_path, rm42, msgs, packed=True)
    assert code == 0 and np.array_equal(read_blocks(out, packed=True, length=11), msgs)


def test_unified_with_erasure_pattern(tmp_path, unified):
    msgs = np.random.default_rng(2).integers(0, 2, (5, 11))
    code, out = round_trip(tmp_path, unified, msgs, channel={"type": "pattern", "erasures": [0, 7, 13]})
    assert code == 0 and np.array_equal(read_blocks(out), msgs)
    assert (tmp_path / "c.txt").read_text().split()[0] == "e"


def test_rs_fast_on_rm_is_capability_error(tmp_path, rm42):
    code, _ = round_trip(tmp_path, rm42, np.zeros((1, 11), dtype=int), mode="rs-fast")
    assert code == 2


def test_rs_fast_round_trip(tmp_path):
    rs = descriptor(tmp_path, "rs", code={"family": "rs", "q": 8, "n": 7, "m": 5})
    msgs = np.random.default_rng(3).integers(0, 8, (20, 5))
    code, out = round_trip(tmp_path, rs, msgs, mode="rs-fast")
    assert code == 0 and np.array_equal(read_blocks(out), msgs)


def test_integrity_failure_exit_code(tmp_path):
    bad = descriptor(tmp_path, "bad", code={"family": "generic", "q": 2, "matrix": [[1, 1, 0], [0, 0, 1]]},
                     A=[0, 1], strict=False)
    (tmp_path / "c.txt").write_text("0 1\n")
    (tmp_path / "k.txt").write_text("0\n")
    assert main(["decode", "--scheme", bad, "--codeword", str(tmp_path / "c.txt"),
                 "--key", str(tmp_path / "k.txt"), "--out", str(tmp_path / "d.txt")]) == 3


def test_audit_all_pass(tmp_path, capsys):
    rm21 = descriptor(tmp_path, "rm21", code={"family": "rm", "s": 2, "r": 1})
    report = tmp_path / "r.json"
    assert main(["audit", "--scheme", rm21, "--report", str(report)]) == 0
    data = json.loads(report.read_text())
    assert all(data["verdicts"].values())
    assert json.loads(capsys.readouterr().out) == data


def test_audit_names_failed_claim(tmp_path, capsys):
    bad = descriptor(tmp_path, "bad", code={"family": "generic", "q": 3,
                                            "matrix": [[1, 2, 0, 1], [0, 0, 1, 1]]}, A=[0, 1], strict=False)
    assert main(["audit", "--scheme", bad]) == 4
    err = capsys.readouterr().err
    assert "key_security" in err and "reliability" in err


def test_audit_subset_sample_rm53(tmp_path):
    rm53 = descriptor(tmp_path, "rm53", code={"family": "rm", "s": 5, "r": 3})
    report = tmp_path / "r.json"
    args = ["audit", "--scheme", rm53, "--subset-sample", "500", "--claims", "key_security,threshold,maximality",
            "--report", str(report)]
    assert main(args) == 0
    data = json.loads(report.read_text())
    assert data["threshold_sampled"] and data["threshold_subsets_checked"] == 500


def test_audit_budget_exit_code(tmp_path, rm42):
    assert main(["audit", "--scheme", rm42, "--claims", "reliability", "--budget", "1000"]) == 2


def simulate(tmp_path, scheme, channel, trials=100, seed=0):
    report = tmp_path / "sim.json"
    code = main(["simulate", "--scheme", scheme, "--channel", json.dumps(channel), "--trials", str(trials),
                 "--seed", str(seed), "--per-trial", "--report", str(report)])
    return code, json.loads(report.read_text())


def test_simulate_pattern_at_capability(tmp_path, unified):
    code, stats = simulate(tmp_path, unified, {"type": "pattern", "erasures": [1, 2, 3]})
    assert code == 0 and stats["success_rate"] == 1.0
    assert stats["erasure_histogram"] == {"3": 100}


def test_simulate_clean_channel(tmp_path, unified, rm42):
    for scheme in (unified, rm42):
        code, stats = simulate(tmp_path, scheme, {"type": "bec", "epsilon": 0.0})
        assert code == 0 and stats["success_rate"] == 1.0


def test_simulate_bec_bookkeeping(tmp_path, unified):
    code, stats = simulate(tmp_path, unified, {"type": "bec", "epsilon": 0.3, "seed": 9}, trials=300)
    assert code == 0
    per = stats["per_trial"]
    within = [p for p in per if p["rho"] <= 3]
    assert all(p["success"] for p in within)
    assert all(not p["success"] for p in per if p["rho"] > 3)
    assert stats["success_rate"] == pytest.approx(len(within) / 300)
    assert sum(stats["erasure_histogram"].values()) == 300
    again = simulate(tmp_path, unified, {"type": "bec", "epsilon": 0.3, "seed": 9}, trials=300)[1]
    assert again == stats


def test_usage_errors(tmp_path, rm42, capsys):
    with pytest.raises(SystemExit) as info:
        main(["nonsense"])
    assert info.value.code == 1
    with pytest.raises(SystemExit) as info:
        main(["info"])
    assert info.value.code == 1
    assert main(["info", "--scheme", str(tmp_path / "missing.json")]) == 1
