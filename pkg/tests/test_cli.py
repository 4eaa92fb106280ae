import json
import os

import pytest

from gridtw.cli import main
from gridtw import jsonio
from gridtw.generators import segments_arrangement
from gridtw.grids import make_grid
from gridtw.models import identity_model


def run(args):
    return main(args)


class TestGen:
    def test_deterministic_bytes(self, tmp_path):
        d1, d2 = tmp_path / "a", tmp_path / "b"
        for d in (d1, d2):
            assert run(["gen", "--family", "segments", "--n", "6", "--seed", "5", "--trials", "2", "--out", str(d)]) == 0
        for name in os.listdir(d1):
            assert (d1 / name).read_bytes() == (d2 / name).read_bytes()

    def test_all_families(self, tmp_path):
        for fam in ("segments", "polysegments", "rho-convex", "fat-convex", "triangulated-grid"):
            out = tmp_path / fam
            assert run(["gen", "--family", fam, "--n", "4", "--seed", "3", "--out", str(out)]) == 0
            assert os.listdir(out)

    def test_bad_family_usage_error(self, tmp_path, capsys):
        with pytest.raises(SystemExit) as exc:
            run(["gen", "--family", "nope", "--out", str(tmp_path)])
        assert exc.value.code == 2


class TestPipelines:
    def test_geom_build_planarize_solve(self, tmp_path, capsys):
        arr_path = tmp_path / "arr.json"
        jsonio.dump_json(jsonio.arrangement_to_json(segments_arrangement(2, 6)), str(arr_path))

        assert run(["geom", "validate", "--in", str(arr_path)]) == 0
        assert run(["geom", "xi", "--in", str(arr_path)]) == 0
        xi_out = capsys.readouterr().out.strip().splitlines()[-1]
        xi_val = int(xi_out)

        gb_path = tmp_path / "gb.json"
        assert run(["build", "--from", str(arr_path), "--out", str(gb_path)]) == 0

        bundle_path = tmp_path / "bundle.json"
        assert run(["planarize", "--in", str(arr_path), "--out", str(bundle_path)]) == 0
        bundle = jsonio.bundle_from_json(jsonio.load_json(str(bundle_path)))
        assert bundle.xi == xi_val

        report_path = tmp_path / "vc.json"
        assert run([
            "solve", "vc", "--k", "3", "--xi", str(xi_val), "--in", str(gb_path), "--report", str(report_path),
        ]) == 0
        report = json.loads(report_path.read_text())
        assert report["answer"] in ("YES", "NO")
        assert report["route"] in ("dp", "dp-fallback", "grid-no-certificate")

    def test_tw_and_bg(self, tmp_path, capsys):
        g_path = tmp_path / "grid3.json"
        jsonio.dump_json(jsonio.graph_to_json(make_grid(3).graph), str(g_path))
        assert run(["tw", "--exact", "--in", str(g_path)]) == 0
        assert capsys.readouterr().out.strip() == "3"
        assert run(["tw", "--lower", "--in", str(g_path)]) == 0
        assert run(["bg", "--exact", "--in", str(g_path)]) == 0
        assert capsys.readouterr().out.strip().splitlines()[-1] == "3"
        assert run(["bg", "--lower", "--kmax", "3", "--in", str(g_path)]) == 0

    def test_model_command(self, tmp_path):
        bodies_path = tmp_path / "bodies.json"
        from gridtw.generators import convex_bodies

        jsonio.dump_json(jsonio.bodies_to_json(convex_bodies(4, 4)), str(bodies_path))
        out_path = tmp_path / "arr.json"
        assert run(["model", "--fat", "--h", "3", "--in", str(bodies_path), "--out", str(out_path)]) == 0
        assert run(["geom", "validate", "--in", str(out_path)]) == 0

    def test_geom_fatness(self, tmp_path, capsys):
        from gridtw.generators import convex_bodies

        bodies_path = tmp_path / "bodies.json"
        jsonio.dump_json(jsonio.bodies_to_json(convex_bodies(4, 3)), str(bodies_path))
        assert run(["geom", "fatness", "--in", str(bodies_path), "--json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["alpha"] >= 1


class TestVerify:
    def test_numeric_alias(self, capsys):
        assert run(["verify", "5", "--trials", "30"]) == 0
        assert "path-threading" in capsys.readouterr().out

    def test_named_check(self, capsys):
        assert run(["verify", "grid-transfer"]) == 0

    def test_model_file_valid(self, tmp_path):
        from helpers import complete

        m = identity_model(complete(3))
        path = tmp_path / "model.json"
        jsonio.dump_json(jsonio.model_to_json(m), str(path))
        assert run(["verify", str(path)]) == 0

    def test_model_file_invalid_gives_violation_exit(self, tmp_path):
        from helpers import complete

        m = identity_model(complete(3))
        data = jsonio.model_to_json(m)
        # Corrupt: discard one edge both as preimage and image.
        data["map"]["0"] = "star"
        path = tmp_path / "model.json"
        jsonio.dump_json(data, str(path))
        assert run(["verify", str(path)]) == 1

    def test_unknown_check_usage_error(self):
        assert run(["verify", "definitely-not-a-check"]) == 2


class TestExperiment:
    def test_ratio_csv(self, tmp_path):
        out = tmp_path / "ratio.csv"
        assert run([
            "experiment", "ratio", "--family", "segments", "--n", "5", "--trials", "4",
            "--seed", "9", "--out", str(out),
        ]) == 0
        lines = out.read_text().strip().splitlines()
        assert lines[0].startswith("schema_version,instance_id")
        assert len(lines) == 1 + 4 + 1  # header + records + summary
        assert lines[-1].split(",")[1] == "summary"

    def test_deterministic_csv(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        for out in (a, b):
            assert run([
                "experiment", "ratio", "--family", "segments", "--n", "5", "--trials", "3",
                "--seed", "2", "--out", str(out),
            ]) == 0
        assert a.read_bytes() == b.read_bytes()
