import json
import math

import pytest

from thickness_lab.cli import main


def test_witness_command_and_verify(tmp_path):
    out = tmp_path / "run"
    code = main(
        [
            "witness",
            "--group", "Z2^12",
            "--lambda", "rademacher",
            "--n", "4",
            "--eps", "0.1",
            "--seed", "3",
            "--out", str(out),
        ]
    )
    assert code == 0
    report = json.loads((out / "report.json").read_text())
    assert report["schema"] == "report/1"
    assert report["results"]["min_achieved"] >= 1.9
    assert report["verification"]["passed"] is True
    assert (out / "certificate.json").exists()

    assert main(["verify", str(out / "certificate.json")]) == 0

    cert = json.loads((out / "certificate.json").read_text())
    cert["per_function"][0]["achieved"] += 0.1
    tampered = tmp_path / "tampered.json"
    tampered.write_text(json.dumps(cert))
    assert main(["verify", str(tampered)]) == 1


def test_witness_reports_are_reproducible(tmp_path):
    args = [
        "witness",
        "--group", "Z2^12",
        "--lambda", "rademacher",
        "--n", "2",
        "--eps", "0.2",
        "--seed", "11",
    ]
    out1, out2 = tmp_path / "a", tmp_path / "b"
    assert main(args + ["--out", str(out1)]) == 0
    assert main(args + ["--out", str(out2)]) == 0
    r1 = json.loads((out1 / "report.json").read_text())
    r2 = json.loads((out2 / "report.json").read_text())
    r1.pop("meta")
    r2.pop("meta")
    assert r1 == r2
    c1 = (out1 / "certificate.json").read_text()
    c2 = (out2 / "certificate.json").read_text()
    assert c1 == c2


def test_thickness_lp_command(tmp_path):
    out = tmp_path / "lp"
    code = main(
        ["thickness", "--space", "lp", "--p", "1", "--trials", "20", "--seed", "7", "--out", str(out)]
    )
    assert code == 0
    report = json.loads((out / "report.json").read_text())
    assert report["results"]["min_achieved"] == pytest.approx(2.0, abs=1e-12)
    assert report["results"]["completed"] == 20


def test_lemmas_command(tmp_path):
    out = tmp_path / "lemmas"
    code = main(["lemmas", "--trials", "200", "--seed", "1", "--out", str(out)])
    assert code == 0
    report = json.loads((out / "report.json").read_text())
    suites = {s["suite"]: s for s in report["results"]["suites"]}
    assert set(suites) == {"cluster_bounds", "sector_rotations", "net_check"}
    assert all(s["violations"] == 0 for s in suites.values())


def test_spectra_command_writes_curve(tmp_path):
    out = tmp_path / "spectra"
    code = main(
        [
            "spectra",
            "--diagnostic", "sidon",
            "--group", "Z512",
            "--window", "interval:1:64",
            "--sizes", "8,16,32,64",
            "--budget", "100",
            "--seed", "1",
            "--out", str(out),
        ]
    )
    assert code == 0
    lines = (out / "curve.csv").read_text().strip().splitlines()
    assert lines[0] == "N,ratio,witness_id"
    assert len(lines) == 5
    values = [float(line.split(",")[1]) for line in lines[1:]]
    assert values[-1] / values[0] >= 2.0


def test_spectra_lacunarity(tmp_path):
    out = tmp_path / "lac"
    code = main(
        [
            "spectra",
            "--diagnostic", "lacunarity",
            "--group", "Z16384",
            "--window", "lacunary:3:8",
            "--seed", "1",
            "--out", str(out),
        ]
    )
    assert code == 0
    report = json.loads((out / "report.json").read_text())
    assert report["results"]["lacunarity"] == pytest.approx(3.0)


def test_config_error_exit_codes(tmp_path):
    assert main(["witness", "--group", "Zx", "--lambda", "rademacher",
                 "--eps", "0.1", "--seed", "1", "--out", str(tmp_path)]) == 2
    assert main(["witness", "--group", "Z8", "--lambda", "bogus:1",
                 "--eps", "0.1", "--seed", "1", "--out", str(tmp_path)]) == 2
    assert main(["verify", str(tmp_path / "missing.json")]) == 2
    assert main(["nonsense"]) == 2


def test_target_missed_exit_code(tmp_path):
    # no high frequencies available: a construction error maps to exit 1
    code = main(
        [
            "witness",
            "--group", "T(N=1024,d=64)",
            "--lambda", "interval:1:2",
            "--n", "1",
            "--eps", "0.01",
            "--method", "high-frequency",
            "--seed", "2",
            "--out", str(tmp_path / "x"),
        ]
    )
    assert code == 1
