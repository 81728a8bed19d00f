import json

from relscatter import ParticleSpec, dirac_barrier_solve
from relscatter.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestScatter:
    def test_alley_prints_zero_reflection(self, capsys):
        code, out, _ = run(
            capsys, "scatter", "--model", "dirac", "--geometry", "step",
            "--energy", "1.3", "--v0", "2.6",
        )
        assert code == 0
        assert "R=0 " in out
        assert "propagating_negative" in out

    def test_kg_gap(self, capsys):
        code, out, _ = run(
            capsys, "scatter", "--model", "kg", "--geometry", "step",
            "--energy", "1.3", "--v0", "1.0",
        )
        assert code == 0
        assert "R=1 " in out

    def test_energy_inside_gap_exits_2(self, capsys):
        code, _, err = run(
            capsys, "scatter", "--energy", "0.5", "--v0", "1.0"
        )
        assert code == 2
        assert "incident energy inside gap" in err

    def test_profile_file(self, capsys, tmp_path):
        path = tmp_path / "profile.json"
        path.write_text(json.dumps({"heights": [0.0, 0.4, 0.0], "edges": [0.0, 1.2]}))
        code, out, _ = run(
            capsys, "scatter", "--geometry", str(path), "--energy", "1.3"
        )
        assert code == 0
        assert "R=" in out

    def test_missing_energy_exits_2(self, capsys):
        code, _, err = run(capsys, "scatter", "--v0", "1.0")
        assert code == 2
        assert "energy" in err


class TestSweep:
    def test_writes_csv_and_resolves(self, capsys, tmp_path):
        out_file = tmp_path / "curve.csv"
        code, _, _ = run(
            capsys, "sweep", "--model", "dirac", "--geometry", "barrier",
            "--energy", "1.3", "--width", "0.9",
            "--v0-range", "0:4:41", "--out", str(out_file),
        )
        assert code == 0
        lines = out_file.read_text().strip().split("\n")
        assert lines[0] == "V0,R,regime,annotation"
        spec = ParticleSpec(1.0, 1.3)
        for line in lines[1:]:
            v0_text, r_text, _, annotation = line.split(",")
            if annotation == "jump+":
                continue  # the off-convention one-sided value at V0 = E
            v0, r = float(v0_text), float(r_text)
            assert abs(dirac_barrier_solve(spec, v0, 0.9).R - r) < 1e-15

    def test_deterministic_output(self, capsys, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        argv = [
            "sweep", "--model", "kg", "--geometry", "step", "--energy", "3",
            "--v0-range", "0:12:101",
        ]
        assert main(argv + ["--out", str(a)]) == 0
        assert main(argv + ["--out", str(b)]) == 0
        capsys.readouterr()
        assert a.read_bytes() == b.read_bytes()

    def test_single_point_grid_exits_2(self, capsys):
        code, _, err = run(
            capsys, "sweep", "--energy", "1.3", "--v0-range", "0:4:1"
        )
        assert code == 2

    def test_unwritable_path_exits_3(self, capsys, tmp_path):
        code, _, err = run(
            capsys, "sweep", "--energy", "1.3", "--v0-range", "0:4:5",
            "--out", str(tmp_path / "missing_dir" / "x.csv"),
        )
        assert code == 3
        assert "cannot write" in err

    def test_massless_sweep_zero_column(self, capsys, tmp_path):
        out_file = tmp_path / "massless.csv"
        code, _, _ = run(
            capsys, "sweep", "--model", "dirac", "--geometry", "step",
            "--energy", "1.0", "--mass", "0", "--units", "raw",
            "--v0-range", "0:4:41", "--no-special-points",
            "--out", str(out_file),
        )
        assert code == 0
        for line in out_file.read_text().strip().split("\n")[1:]:
            assert float(line.split(",")[1]) < 1e-12


class TestConfig:
    def test_config_file_with_flag_override(self, capsys, tmp_path):
        config = tmp_path / "run.cfg"
        config.write_text(
            "model = kg\n"
            "geometry = step\n"
            "energy = 1.3\n"
            "v0 = 2.6  # alley\n"
        )
        code, out, _ = run(capsys, "--config", str(config), "scatter")
        assert code == 0
        assert "model=kg" in out and "R=0 " in out
        # flags win over the file
        code, out, _ = run(
            capsys, "--config", str(config), "scatter", "--v0", "1.0"
        )
        assert code == 0
        assert "R=1 " in out

    def test_malformed_config_exits_2(self, capsys, tmp_path):
        config = tmp_path / "bad.cfg"
        config.write_text("energy 1.3\n")
        code, _, err = run(capsys, "--config", str(config), "scatter")
        assert code == 2
        assert "key=value" in err


class TestVerify:
    def test_passes(self, capsys):
        code, out, _ = run(capsys, "verify", "--seed", "42", "--samples", "30")
        assert code == 0
        assert out.count("pass ") >= 8
        assert "FAIL" not in out

    def test_injected_failure_exits_1_and_names_property(self, capsys):
        code, out, _ = run(
            capsys, "verify", "--seed", "42", "--samples", "5",
            "--inject", "resonance",
        )
        assert code == 1
        assert "FAIL resonance" in out
        assert "model=" in out  # counterexample tuple printed

    def test_zero_samples_exits_2(self, capsys):
        code, _, _ = run(capsys, "verify", "--samples", "0")
        assert code == 2


class TestRemoteMode:
    def test_server_flag_routes_over_http(self, capsys, monkeypatch):
        from fastapi.testclient import TestClient

        from relscatter.service.app import app

        test_client = TestClient(app)

        def fake_post(url, json=None, timeout=None):
            path = url.replace("http://fake", "")
            return test_client.post(path, json=json)

        import httpx

        monkeypatch.setattr(httpx, "post", fake_post)
        code, out, _ = run(
            capsys, "--server", "http://fake", "scatter",
            "--model", "dirac", "--geometry", "step",
            "--energy", "1.3", "--v0", "2.6",
        )
        assert code == 0
        assert "R=0 " in out
        # server-side validation errors still map to exit 2
        code, _, err = run(
            capsys, "--server", "http://fake", "scatter",
            "--energy", "0.5", "--v0", "1.0",
        )
        assert code == 2
        assert "incident energy inside gap" in err


class TestFigures:
    def test_emits_files(self, capsys, tmp_path):
        code, out, _ = run(
            capsys, "figures", "--fig", "2", "--out", str(tmp_path)
        )
        assert code == 0
        names = sorted(p.name for p in tmp_path.iterdir())
        assert names == ["fig2_dirac_step_E1.3.csv", "fig2_dirac_step_E3.csv"]
        text = (tmp_path / names[0]).read_text()
        assert text.startswith("V0,R,regime,annotation\n")
        assert "\r" not in text

    def test_missing_fig_exits_2(self, capsys, tmp_path):
        code, _, err = run(capsys, "figures", "--out", str(tmp_path))
        assert code == 2
