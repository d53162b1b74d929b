import csv
import json
import os
import subprocess
import sys

import numpy as np
import pytest

from ldl import write_dataset
from ldl.cli import RunConfig, main, read_config_file
from ldl.lexicon_io import write_embeddings
from ldl.synthetic import toy_lexicon

DATA = os.path.join(os.path.dirname(__file__), "data")


@pytest.fixture
def toy_run(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    write_dataset(toy_lexicon(), "toy.csv")
    with open("run.cfg", "w") as fh:
        fh.write("# toy lexicon, diphones\n"
                 "dataset = toy.csv\nform_column = Word\nlexeme_column = Lexeme\n"
                 "feature_columns = Number\ngrams = 2\nseed = 1\noutput = out\n")
    return tmp_path


def test_fit_writes_artifacts(toy_run, capsys):
    assert main(["fit", "--config", "run.cfg"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report == {"comprehension_accuracy": 1.0, "production_accuracy": 1.0}
    for name in ("manifest.json", "cues.txt", "C.mtx", "S.txt", "lexomes.txt", "F.npy", "G.npy"):
        assert (toy_run / "out" / name).is_file()
    manifest = json.load(open("out/manifest.json"))
    assert manifest["config"]["grams"] == 2
    assert manifest["cues"] == 8 and manifest["dims"] == 8


def test_overrides_win(toy_run):
    assert main(["fit", "--config", "run.cfg", "--seed", "5", "--output", "out5",
                 "--no-produce"]) == 0
    manifest = json.load(open("out5/manifest.json"))
    assert manifest["config"]["seed"] == 5
    assert "production_accuracy" not in manifest


def test_manifest_matches_reevaluation(toy_run, capsys):
    main(["fit", "--config", "run.cfg"])
    capsys.readouterr()
    assert main(["evaluate", "--output", "out", "--production", "--write-r"]) == 0
    report = json.loads(capsys.readouterr().out)
    manifest = json.load(open("out/manifest.json"))
    assert report["comprehension_accuracy"] == manifest["comprehension_accuracy"]
    assert report["production_accuracy"] == manifest["production_accuracy"]
    assert (toy_run / "out" / "R.csv").is_file()


def test_measures_golden(toy_run):
    main(["fit", "--config", "run.cfg"])
    assert main(["measures", "--output", "out"]) == 0
    assert not os.path.exists("out/pta.csv")
    rows = list(csv.DictReader(open("out/measures.csv")))
    assert [(r["word"], r["measure"]) for r in rows[:3]] == [
        ("tri", "distance_travelled"), ("tri", "total_support"), ("bi", "distance_travelled")]
    golden = list(csv.DictReader(open(os.path.join(DATA, "toy_measures_seed1.csv"))))
    assert len(rows) == len(golden) == 8
    for got, want in zip(rows, golden):
        assert (got["word"], got["measure"]) == (want["word"], want["measure"])
        assert float(got["value"]) == pytest.approx(float(want["value"]), abs=1e-10)
    # structure: trees = |g(#t)| + |g(iz) - g(ri)|, recomputed from the stored G
    G = np.load("out/G.npy")
    cues = open("out/cues.txt").read().split()
    g = lambda c: G[:, cues.index(c)]
    trees = np.linalg.norm(g("#t")) + np.linalg.norm(g("iz") - g("ri"))
    value = {(r["word"], r["measure"]): float(r["value"]) for r in rows}
    assert value["triz", "distance_travelled"] == pytest.approx(trees, abs=1e-12)


def test_pairs(toy_run):
    main(["fit", "--config", "run.cfg"])
    with open("pairs.csv", "w") as fh:
        fh.write("prime,target\ntriz,tri\nbi,tri\nbi,tri\n")
    assert main(["measures", "--output", "out", "--pairs", "pairs.csv"]) == 0
    rows = list(csv.reader(open("out/pta.csv")))
    assert rows[0] == ["prime", "target", "measure", "value"]
    assert rows[1][:3] == ["triz", "tri", "pta"]
    assert rows[2] == rows[3]
    with open("bad.csv", "w") as fh:
        fh.write("prime,target\ncat,tri\n")
    assert main(["measures", "--output", "out", "--pairs", "bad.csv"]) == 3


def test_produce_and_project(toy_run):
    main(["fit", "--config", "run.cfg", "--no-produce"])
    assert main(["produce", "--output", "out", "--threshold", "0.05"]) == 0
    paths = list(csv.DictReader(open("out/paths.csv")))
    assert {r["candidate"] for r in paths if r["rank"] == "1"} == {"tri", "bi", "triz", "biz"}
    assert main(["project", "--output", "out"]) == 0
    proj = list(csv.DictReader(open("out/projection.csv")))
    assert [r["cue"] for r in proj] == ["#t", "tr", "ri", "i#", "#b", "bi", "iz", "z#"]


def test_loaded_embeddings_run(tmp_path, monkeypatch, capsys):
    monkeypatch.chdir(tmp_path)
    forms = ["i1", "i1.i1", "i1.x.ia4", "i1.x.ia4.z.ii5", "x.ia4"]
    with open("mandarin.csv", "w") as fh:
        fh.write("phones\n" + "\n".join(forms) + "\n")
    write_embeddings("S_mandarin.txt", forms, np.random.default_rng(0).normal(size=(5, 12)))
    code = main(["fit", "--dataset", "mandarin.csv", "--form-column", "phones",
                 "--embeddings", "S_mandarin.txt", "--grams", "3", "--tokenized",
                 "--separator", ".", "--threshold", "0.01", "--output", "m"])
    assert code == 0
    report = json.loads(capsys.readouterr().out)
    assert set(report) == {"comprehension_accuracy", "production_accuracy"}


def test_simulate_semantics(toy_run):
    assert main(["simulate-semantics", "--config", "run.cfg", "--output", "sim"]) == 0
    lines = open("sim/S.txt").read().splitlines()
    assert [ln.split()[0] for ln in lines] == ["tri", "bi", "triz", "biz"]
    assert len(lines[0].split()) == 9


@pytest.mark.parametrize("argv, code", [
    (["fit", "--dataset", "toy.csv"], 2),                                      # no semantics
    (["fit", "--config", "run.cfg", "--embeddings", "x.txt"], 2),              # both sources
    (["fit", "--config", "run.cfg", "--grams", "two"], 2),
    (["fit", "--config", "missing.cfg"], 2),
    (["fit", "--config", "run.cfg", "--dataset", "nothere.csv"], 3),
    (["evaluate", "--output", "nowhere"], 3),
])
def test_exit_codes(toy_run, argv, code):
    assert main(argv) == code


def test_empty_dataset_leaves_no_artifacts(toy_run):
    with open("empty.csv", "w") as fh:
        fh.write("Word,Lexeme,Number\n")
    assert main(["fit", "--config", "run.cfg", "--dataset", "empty.csv", "--output", "e"]) == 3
    assert not os.path.exists("e")


def test_numerical_failure_exit(toy_run):
    with open("flat.txt", "w") as fh:
        for w in ("tri", "bi", "triz", "biz"):
            fh.write(f"{w} 1 1 1\n")
    assert main(["fit", "--dataset", "toy.csv", "--embeddings", "flat.txt",
                 "--output", "f"]) == 4


def test_config_parsing(tmp_path):
    p = tmp_path / "c.cfg"
    p.write_text("dataset = d.csv\nfeature_columns = A, B\ntokenized = yes\nridge = 0.5\n")
    cfg = RunConfig.from_mapping(read_config_file(p))
    assert cfg.feature_columns == ["A", "B"]
    assert cfg.tokenized is True and cfg.ridge == 0.5


def test_console_script(toy_run):
    out = subprocess.run([sys.executable, "-m", "ldl.cli", "fit", "--config", "run.cfg"],
                         capture_output=True, text=True)
    assert out.returncode == 0, out.stderr
