"""CLI surface: formats, human output, exit codes, JSON round trips."""

import json

import pytest

from genusone import verify_certificate
from genusone.cli import main


def write(path, doc):
    path.write_text(json.dumps(doc))
    return str(path)


@pytest.fixture
def points_file(tmp_path):
    return write(tmp_path / "pts.json", {"a": ["1/8", "5/8"], "b": ["3/8", "7/8"]})


@pytest.fixture
def manifest_gabai2(tmp_path):
    return write(
        tmp_path / "g2.json",
        {
            "name": "g2",
            "sequence": {"prefix": [], "period": [{"type": "gabai", "order": 2}]},
            "options": {"depth": 4, "horizon": 3},
        },
    )


@pytest.fixture
def manifest_gabai3(tmp_path):
    return write(
        tmp_path / "g3.json",
        {
            "name": "g3",
            "sequence": {"prefix": [], "period": [{"type": "gabai", "order": 3}]},
            "options": {"depth": 4, "horizon": 2},
        },
    )


@pytest.fixture
def manifest_mcmillan2(tmp_path):
    return write(
        tmp_path / "m2.json",
        {
            "name": "m2",
            "sequence": {"prefix": [], "period": [{"type": "mcmillan", "order": 2}]},
            "options": {"depth": 4, "horizon": 4},
        },
    )


def test_interlace_points(points_file, capsys):
    assert main(["interlace", points_file, "--brute-force"]) == 0
    assert "interlacing number: 2" in capsys.readouterr().out


def test_interlace_single_sided(tmp_path, capsys):
    path = write(tmp_path / "only_a.json", {"a": ["1/8"], "b": []})
    assert main(["interlace", path]) == 0
    assert "interlacing number: 0" in capsys.readouterr().out


def test_interlace_rejects_decimals(tmp_path, capsys):
    path = write(tmp_path / "bad.json", {"a": ["0.1"], "b": ["1/2"]})
    assert main(["interlace", path]) == 2


def test_interlace_rejects_overlap(tmp_path):
    path = write(tmp_path / "overlap.json", {"a": ["1/2"], "b": ["1/2", "3/4"]})
    assert main(["interlace", path]) == 2


def test_interlace_intervals_mode(tmp_path, capsys):
    path = write(
        tmp_path / "arcs.json",
        {
            "a": [{"lo": "0", "hi": "1/3"}],
            "b": [{"lo": "2/3", "hi": "1"}],
        },
    )
    assert main(["interlace", path, "--mode", "intervals"]) == 0
    assert "interlacing number: 1" in capsys.readouterr().out


def test_tubes_census(capsys):
    assert main(["tubes", "3"]) == 0
    out = capsys.readouterr().out
    assert "m=3 k=2" in out
    assert "12 total (8 x 1/81, 4 x 1/27)" in out


def test_tubes_verify(capsys):
    assert main(["tubes", "1", "--verify"]) == 0
    assert "PASS" in capsys.readouterr().out


def test_tubes_rejects_zero():
    assert main(["tubes", "0"]) == 2


def test_tubes_json(capsys):
    assert main(["tubes", "3", "--json", "--verify", "--depth", "5"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["m"] == 3 and doc["k"] == 2 and doc["tubes"] == 12
    assert doc["setup"]["passed"] is True


def test_classify_yes(manifest_gabai2, capsys):
    assert main(["classify", manifest_gabai2]) == 0
    assert "DOUBLE3SPACE_YES" in capsys.readouterr().out


def test_classify_no(manifest_mcmillan2, capsys):
    assert main(["classify", manifest_mcmillan2]) == 0
    assert "DOUBLE3SPACE_NO" in capsys.readouterr().out


def test_classify_mixed_exits_3(tmp_path, capsys):
    path = write(
        tmp_path / "mixed.json",
        {
            "sequence": {
                "prefix": [{"type": "gabai", "order": 2}],
                "period": [{"type": "mcmillan", "order": 2}],
            }
        },
    )
    assert main(["classify", path]) == 3
    assert "UNKNOWN" in capsys.readouterr().out


def test_classify_json_replays(manifest_mcmillan2, capsys):
    assert main(["classify", manifest_mcmillan2, "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert verify_certificate(doc)


def test_classify_validates_options(tmp_path):
    path = write(
        tmp_path / "shallow.json",
        {"sequence": {"prefix": [], "period": [{"type": "gabai", "order": 2}]}},
    )
    assert main(["classify", path, "--depth", "3"]) == 2
    assert main(["classify", path, "--horizon", "0"]) == 2


def test_classify_missing_file():
    assert main(["classify", "/nonexistent/manifest.json"]) == 2


def test_classify_malformed_manifest(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["classify", str(bad)]) == 2
    assert main(["classify", write(tmp_path / "noseq.json", {"name": "x"})]) == 2


def test_distinguish(manifest_gabai2, manifest_gabai3, capsys):
    assert main(["distinguish", manifest_gabai2, manifest_gabai3, "--prime", "3"]) == 0
    assert "DISTINCT" in capsys.readouterr().out
    assert main(["distinguish", manifest_gabai2, manifest_gabai2, "--prime", "3"]) == 3


def test_distinguish_rejects_composite(manifest_gabai2, manifest_gabai3):
    assert main(["distinguish", manifest_gabai2, manifest_gabai3, "--prime", "4"]) == 2


def test_distinguish_json(manifest_gabai2, manifest_gabai3, capsys):
    assert (
        main(["distinguish", manifest_gabai2, manifest_gabai3, "--prime", "3", "--json"])
        == 0
    )
    doc = json.loads(capsys.readouterr().out)
    assert doc["verdict"] == "DISTINCT" and verify_certificate(doc)


def test_index(manifest_mcmillan2, capsys):
    assert main(["index", manifest_mcmillan2, "0", "3"]) == 0
    assert capsys.readouterr().out.strip() == "64"


def test_index_bad_levels(manifest_mcmillan2):
    assert main(["index", manifest_mcmillan2, "3", "3"]) == 2


def test_trace(manifest_mcmillan2, capsys):
    assert main(["trace", manifest_mcmillan2]) == 0
    out = capsys.readouterr().out
    assert "DOUBLE3SPACE_NO" in out and "171" in out


def test_trace_rejects_gabai(manifest_gabai2):
    assert main(["trace", manifest_gabai2]) == 2


def test_trace_json_replays(manifest_mcmillan2, capsys):
    assert main(["trace", manifest_mcmillan2, "--json"]) == 0
    assert verify_certificate(json.loads(capsys.readouterr().out))


def test_cover_lift(tmp_path, capsys):
    path = write(
        tmp_path / "arcs.json",
        {"a": [{"lo": "0", "hi": "1/3"}], "b": [{"lo": "2/3", "hi": "1"}]},
    )
    assert main(["cover-lift", path, "--fold", "2"]) == 0
    out = capsys.readouterr().out
    assert "base interlacing: 1" in out
    assert "2-fold lift interlacing: 2" in out
    assert main(["cover-lift", path, "--fold", "0"]) == 2


def test_cover_lift_json(tmp_path, capsys):
    path = write(
        tmp_path / "arcs.json",
        {"a": [{"lo": "0", "hi": "1/3"}], "b": [{"lo": "2/3", "hi": "1"}]},
    )
    assert main(["cover-lift", path, "--fold", "3", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["lifted"]["value"] == 3 * doc["base"]["value"]
    assert len(doc["a_lifted"]) == 3


def test_usage_errors_exit_2():
    assert main(["no-such-command"]) == 2
    assert main([]) == 2
