import numpy as np
import pytest

from ldl import DataError, load_dataset, load_embeddings, write_dataset
from ldl.lexicon_io import write_embeddings


def test_korean_sample(korean_csv):
    ds = load_dataset(korean_csv, "Word")
    assert ds.row_count == 4
    assert ds.rows[0].form == "go_rUm_ni_da"
    assert ds.rows[2]["Honorifics"] == "hon"
    assert ds.column("IllocutionaryForce") == ["dec", "inq", "imp", "pro"]


def test_header_only(tmp_path):
    p = tmp_path / "empty.csv"
    p.write_text("Word,Lexeme\n")
    assert load_dataset(p, "Word").row_count == 0


def test_empty_form_cell(tmp_path):
    p = tmp_path / "bad.csv"
    p.write_text("Word,Lexeme\na,A\nb,B\n,C\n")
    with pytest.raises(DataError, match="empty form at row 3"):
        load_dataset(p, "Word")


@pytest.mark.parametrize("text, msg", [
    ("Lexeme,Other\nA,B\n", "form column"),
    ("Word,Word\na,b\n", "duplicate header"),
    ("Word,Lexeme\na,A,extra\n", "fields"),
])
def test_bad_files(tmp_path, text, msg):
    p = tmp_path / "bad.csv"
    p.write_text(text)
    with pytest.raises(DataError, match=msg):
        load_dataset(p, "Word")


def test_missing_file(tmp_path):
    with pytest.raises(DataError, match="not found"):
        load_dataset(tmp_path / "nope.csv", "Word")


def test_round_trip(korean_csv, tmp_path):
    ds = load_dataset(korean_csv, "Word")
    out = tmp_path / "copy.csv"
    write_dataset(ds, out)
    again = load_dataset(out, "Word")
    assert again.rows == ds.rows
    assert again.columns == ds.columns


def test_duplicate_forms_kept(tmp_path):
    p = tmp_path / "homophones.csv"
    p.write_text("Word,Lexeme\nme_ke_yo,eat_dec\nme_ke_yo,eat_inq\n")
    ds = load_dataset(p, "Word")
    assert ds.forms == ["me_ke_yo", "me_ke_yo"]


def test_embeddings_single_line(tmp_path):
    p = tmp_path / "S.txt"
    p.write_text("a 0 0 0\n")
    S = load_embeddings(p, ["a"])
    assert S.shape == (1, 3)
    assert np.all(S.values == 0)
    assert S.provenance["source"] == "loaded"


def test_embeddings_order_mismatch(tmp_path):
    p = tmp_path / "S.txt"
    p.write_text("b 1 2\na 3 4\n")
    with pytest.raises(DataError, match="order mismatch at line 1"):
        load_embeddings(p, ["a", "b"])


@pytest.mark.parametrize("text, msg", [
    ("a 1 2\nb 3\n", "line 2 has 1 values"),
    ("a 1 x\n", "non-numeric"),
    ("a 1 2\n", "1 vectors for 2 words"),
])
def test_embeddings_malformed(tmp_path, text, msg):
    p = tmp_path / "S.txt"
    p.write_text(text)
    with pytest.raises(DataError, match=msg):
        load_embeddings(p, ["a", "b"])


def test_embeddings_wide_file(tmp_path, rng):
    words = [f"w{i}" for i in range(50)]
    M = rng.normal(size=(50, 300))
    p = tmp_path / "S.txt"
    write_embeddings(p, words, M)
    S = load_embeddings(p, words)
    assert S.shape == (50, 300)
    # rows stay aligned with the expected forms
    np.testing.assert_allclose(np.linalg.norm(S.values, axis=1),
                               np.linalg.norm(M, axis=1), rtol=0, atol=1e-12)
