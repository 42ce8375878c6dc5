import json

import pytest

from afterimage.cli import main
from afterimage.model import builtin_ruleset, ruleset_to_json
from afterimage.pattern import save_pattern, text_to_pattern


@pytest.fixture
def hello_file(tmp_path):
    path = tmp_path / "hello.txt"
    path.write_text(save_pattern(text_to_pattern("hello", fg=2, bg=1, thickness=2)))
    return path


@pytest.fixture
def world_file(tmp_path):
    path = tmp_path / "world.txt"
    path.write_text(save_pattern(text_to_pattern("world", fg=2, bg=1, thickness=2)))
    return path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, json.loads(out)


class TestGen:
    def test_single(self, capsys, tmp_path, hello_file):
        code, out = run(capsys, "gen", "--pattern", hello_file,
                        "--ruleset", "f6", "--seed", "42",
                        "--out", tmp_path / "s1")
        assert code == 0
        assert out["frames"] == 2
        assert len(out["digests"]) == 2
        assert out["classification"]["bias_ambiguous"] is True

    def test_multi(self, capsys, tmp_path, hello_file, world_file):
        code, out = run(capsys, "gen", "--multi",
                        "--pattern", hello_file, "--pattern", world_file,
                        "--ruleset", "f6", "--out", tmp_path / "s2")
        assert code == 0
        assert out["frames"] == 3

    def test_multi_rejects_f1(self, capsys, tmp_path, hello_file, world_file):
        code, out = run(capsys, "gen", "--multi",
                        "--pattern", hello_file, "--pattern", world_file,
                        "--ruleset", "f1", "--out", tmp_path / "s3")
        assert code != 0
        assert "bias-ambiguous" in out["error"]

    def test_two_patterns_without_multi(self, capsys, tmp_path, hello_file, world_file):
        code, out = run(capsys, "gen", "--pattern", hello_file,
                        "--pattern", world_file,
                        "--ruleset", "f6", "--out", tmp_path / "s4")
        assert code != 0

    def test_ruleset_from_file(self, capsys, tmp_path, hello_file):
        rs_path = tmp_path / "custom.json"
        rs_path.write_text(ruleset_to_json(builtin_ruleset("f6")))
        code, out = run(capsys, "gen", "--pattern", hello_file,
                        "--ruleset", rs_path, "--out", tmp_path / "s5")
        assert code == 0

    def test_same_flags_same_digests(self, capsys, tmp_path, hello_file):
        _, first = run(capsys, "gen", "--pattern", hello_file,
                       "--ruleset", "f6", "--seed", "9", "--out", tmp_path / "a")
        _, second = run(capsys, "gen", "--pattern", hello_file,
                        "--ruleset", "f6", "--seed", "9", "--out", tmp_path / "b")
        assert first["digests"] == second["digests"]

    def test_env_seed(self, capsys, tmp_path, hello_file, monkeypatch):
        monkeypatch.setenv("AFTERIMAGE_SEED", "9")
        _, via_env = run(capsys, "gen", "--pattern", hello_file,
                         "--ruleset", "f6", "--out", tmp_path / "e1")
        monkeypatch.delenv("AFTERIMAGE_SEED")
        _, via_flag = run(capsys, "gen", "--pattern", hello_file,
                          "--ruleset", "f6", "--seed", "9", "--out", tmp_path / "e2")
        assert via_env["digests"] == via_flag["digests"]


class TestValidate:
    def test_f4(self, capsys):
        code, report = run(capsys, "validate", "--ruleset", "f4")
        assert code == 0
        assert report["bias_scrambling"] is True
        assert report["trigger_scrambling"] is True

    def test_f3(self, capsys):
        code, report = run(capsys, "validate", "--ruleset", "f3")
        assert code == 0
        assert report["partially_ambiguous"] is True
        assert report["bias_scrambling"] is False
        assert report["trigger_scrambling"] is False

    def test_inconsistent_file(self, capsys, tmp_path):
        bad = {"name": "inverted", "levels": 2,
               "rules": [{"b": 0, "t": 0, "a": 2}, {"b": 1, "t": 1, "a": 1}]}
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(bad))
        code, report = run(capsys, "validate", "--ruleset", path)
        assert code != 0
        assert report["consistent"] is False
        assert report["surjective"] is True

    def test_non_surjective_file(self, capsys, tmp_path):
        sparse = {"name": "sparse", "levels": 2,
                  "rules": [{"b": 0, "t": 0.5, "a": 1}]}
        path = tmp_path / "sparse.json"
        path.write_text(json.dumps(sparse))
        code, report = run(capsys, "validate", "--ruleset", path)
        assert code != 0
        assert report["surjective"] is False

    def test_unknown_name(self, capsys):
        code, out = run(capsys, "validate", "--ruleset", "f9")
        assert code != 0
        assert "error" in out

    def test_unparseable_file(self, capsys, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{nope")
        code, out = run(capsys, "validate", "--ruleset", path)
        assert code != 0


class TestText:
    def test_light(self, capsys, tmp_path):
        out_file = tmp_path / "light.txt"
        code, out = run(capsys, "text", "--word", "light",
                        "--thickness", "2", "-o", out_file)
        assert code == 0
        assert out["width"] == 32 and out["height"] == 24
        lines = out_file.read_text().splitlines()
        assert len(lines) == 24
        assert all(len(line) == 32 for line in lines)

    def test_red(self, capsys, tmp_path):
        code, out = run(capsys, "text", "--word", "red", "-o", tmp_path / "red.txt")
        assert code == 0
        assert out["levels"] == 2

    def test_word_too_long(self, capsys, tmp_path):
        code, out = run(capsys, "text", "--word", "mmmmmmmm",
                        "-o", tmp_path / "nope.txt")
        assert code != 0
        assert "wide" in out["error"]


class TestCalib:
    def test_level_two(self, capsys, tmp_path):
        code, out = run(capsys, "calib", "--ruleset", "f2", "--level", "2",
                        "--out", tmp_path / "c2")
        assert code == 0
        assert out["frames"] == 2
        assert out["level"] == 2

    def test_level_one(self, capsys, tmp_path):
        code, out = run(capsys, "calib", "--ruleset", "f2", "--level", "1",
                        "--out", tmp_path / "c1")
        assert code == 0

    def test_level_out_of_range(self, capsys, tmp_path):
        code, out = run(capsys, "calib", "--ruleset", "f2", "--level", "3",
                        "--out", tmp_path / "c3")
        assert code != 0
        assert "outside" in out["error"]
