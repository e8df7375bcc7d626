import json
import subprocess
import sys

import pytest

from framebias.cli import evaluate, main
from framebias.corpus import load_corpus, parse_mtl_input, parse_mtl_target
from framebias.textproc import split_sentences


@pytest.fixture
def lexicon_path(data_dir):
    return str(data_dir / "mini_vad.tsv")


def _jsonl(path, rows):
    path.write_text("".join(json.dumps(r) + "\n" for r in rows), encoding="utf-8")
    return str(path)


def test_evaluate_identity_system(tmp_path, corpus_path, lexicon_path):
    hyps = _jsonl(tmp_path / "h.jsonl", [{"issue_id": t.issue_id, "text": t.neutral_article}
                                         for t in load_corpus(corpus_path)])
    out = tmp_path / "out"
    rc = main(["evaluate", "--corpus", str(corpus_path), "--hypotheses", hyps,
               "--lexicon", lexicon_path, "--out", str(out)])
    assert rc == 0
    rep = json.loads((out / "report.json").read_text())
    assert (rep["arousal_pos"], rep["arousal_neg"], rep["arousal_sum"]) == (0.0, 0.0, 0.0)
    assert rep["rouge1_recall"] == 1.0
    assert rep["bleu"] == pytest.approx(1.0)
    assert rep["n_pairs"] == 5
    assert (out / "report.md").read_text().startswith("| System | Arousal+ | Arousal- | Arousal_sum | BLEU | ROUGE1-R | FeQA")
    assert (out / "annotations.jsonl").read_text() == ""


def test_all_source_beats_identity(corpus_path, lexicon_path):
    src = evaluate(corpus_path, lexicon_path, baseline="all-source")
    ref = evaluate(corpus_path, lexicon_path, baseline="reference")
    assert src.bias.arousal_sum > ref.bias.arousal_sum == 0.0


def test_skipped_ids_and_feqa(tmp_path, corpus_path, lexicon_path):
    hyps = _jsonl(tmp_path / "h.jsonl", [
        {"issue_id": "issue-001", "text": "A brutal disaster in the House."},
        {"issue_id": "ghost", "text": "nothing"},
    ])
    feqa = _jsonl(tmp_path / "f.jsonl", [{"issue_id": "issue-001", "score": 0.5},
                                         {"issue_id": "issue-002", "score": 0.9}])
    rep = evaluate(corpus_path, lexicon_path, hypotheses_path=hyps, feqa_path=feqa)
    assert rep.skipped_ids == ["ghost"]
    assert rep.n_pairs == 1
    assert rep.feqa_external == 0.5
    assert rep.bias.arousal_neg == pytest.approx(0.91 + 0.86)
    assert "ghost" in rep.to_markdown()


def test_zero_joined_pairs_is_validation_error(tmp_path, corpus_path, lexicon_path):
    hyps = _jsonl(tmp_path / "h.jsonl", [{"issue_id": "ghost", "text": "x"}])
    rc = main(["evaluate", "--corpus", str(corpus_path), "--hypotheses", hyps, "--lexicon", lexicon_path])
    assert rc == 3


def test_missing_lexicon_is_io_error(tmp_path, corpus_path):
    rc = main(["evaluate", "--corpus", str(corpus_path), "--baseline", "all-source",
               "--lexicon", str(tmp_path / "missing.tsv"), "--out", str(tmp_path / "o")])
    assert rc == 2
    assert not (tmp_path / "o").exists()


def test_lexicon_from_environment(monkeypatch, corpus_path, lexicon_path, capsys):
    monkeypatch.setenv("NEUS_LEXICON", lexicon_path)
    assert main(["evaluate", "--corpus", str(corpus_path), "--baseline", "reference"]) == 0
    assert "| reference |" in capsys.readouterr().out


def test_no_lexicon_is_usage_error(monkeypatch, corpus_path):
    monkeypatch.delenv("NEUS_LEXICON", raising=False)
    assert main(["evaluate", "--corpus", str(corpus_path), "--baseline", "reference"]) == 1


def test_bad_flags_exit_1(corpus_path):
    with pytest.raises(SystemExit) as err:
        main(["evaluate", "--corpus", str(corpus_path)])
    assert err.value.code == 1


def test_bad_threshold_exit_1(corpus_path, lexicon_path):
    rc = main(["evaluate", "--corpus", str(corpus_path), "--baseline", "reference",
               "--lexicon", lexicon_path, "--pos-threshold", "2"])
    assert rc == 1


def test_fingerprint_tracks_config(corpus_path, lexicon_path):
    a = evaluate(corpus_path, lexicon_path, baseline="reference").config_fingerprint
    b = evaluate(corpus_path, lexicon_path, baseline="reference", count_mode="type").config_fingerprint
    c = evaluate(corpus_path, lexicon_path, baseline="reference", pos_threshold=0.7).config_fingerprint
    assert a == evaluate(corpus_path, lexicon_path, baseline="all-source").config_fingerprint
    assert len({a, b, c}) == 3


def test_summarize_then_evaluate(tmp_path, corpus_path, lexicon_path):
    out = tmp_path / "lex.jsonl"
    assert main(["summarize", "--corpus", str(corpus_path), "--out", str(out), "--max-words", "30"]) == 0
    rows = [json.loads(line) for line in out.read_text().splitlines()]
    assert [r["issue_id"] for r in rows] == [t.issue_id for t in load_corpus(corpus_path)]
    for r, t in zip(rows, load_corpus(corpus_path)):
        pool = {s for a in (t.left.article, t.center.article, t.right.article) for s in split_sentences(a)}
        assert set(split_sentences(r["text"])) <= pool
    first = out.read_bytes()
    main(["summarize", "--corpus", str(corpus_path), "--out", str(out), "--max-words", "30"])
    assert out.read_bytes() == first
    assert main(["evaluate", "--corpus", str(corpus_path), "--hypotheses", str(out),
                 "--lexicon", lexicon_path]) == 0


def test_summarize_single_issue(tmp_path, corpus_path):
    one = tmp_path / "one.jsonl"
    one.write_text(corpus_path.read_text().splitlines()[0] + "\n")
    out = tmp_path / "s.jsonl"
    assert main(["summarize", "--corpus", str(one), "--out", str(out)]) == 0
    assert len(out.read_text().splitlines()) == 1


def test_format(tmp_path, corpus_path):
    prefix = tmp_path / "mtl" / "train"
    assert main(["format", "--corpus", str(corpus_path), "--seed", "13", "--out", str(prefix)]) == 0
    src = (tmp_path / "mtl" / "train.src").read_bytes()
    tgt = (tmp_path / "mtl" / "train.tgt").read_bytes()
    src_lines = src.decode().splitlines()
    tgt_lines = tgt.decode().splitlines()
    assert len(src_lines) == len(tgt_lines) == 5
    assert all(line.count("[SEP]") == 2 for line in src_lines)
    corpus = load_corpus(corpus_path)
    for line, t in zip(tgt_lines, corpus):
        assert parse_mtl_target(line) == (t.neutral_title, t.neutral_article)
    for line, t in zip(src_lines, corpus):
        got = sorted(parse_mtl_input(line))
        assert got == sorted((t.source(k).title, t.source(k).article) for k in "LCR")
    main(["format", "--corpus", str(corpus_path), "--seed", "13", "--out", str(prefix)])
    assert (tmp_path / "mtl" / "train.src").read_bytes() == src


def test_correlate(tmp_path, capsys):
    rows = [{"sample_id": f"s{i}", "votes": ["A", "A", "B"] if i % 2 else ["B", "B", "A"],
             "arousal_a": 2.0 if i % 2 else 1.0, "arousal_b": 1.5} for i in range(6)]
    p = _jsonl(tmp_path / "a.jsonl", rows)
    assert main(["correlate", "--annotations", p]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["agreement_rate"] == 1.0
    assert out["spearman"] == pytest.approx(1.0)
    assert out["ties"] == 0
    assert "p_value" in out


def test_correlate_graded_fixture(tmp_path, capsys):
    counts, margins = [1, 2, 3, 4], [0.2, 0.1, 0.4, 0.3]
    rows = [{"sample_id": f"s{i}", "votes": ["A"] * c + ["B"] * (5 - c),
             "arousal_a": 1.0 + m, "arousal_b": 1.0} for i, (c, m) in enumerate(zip(counts, margins))]
    p = _jsonl(tmp_path / "a.jsonl", rows)
    assert main(["correlate", "--annotations", p, "--mode", "graded"]) == 0
    assert json.loads(capsys.readouterr().out)["spearman"] == pytest.approx(0.6)


def test_correlate_empty_file(tmp_path):
    p = tmp_path / "empty.jsonl"
    p.write_text("")
    assert main(["correlate", "--annotations", str(p)]) == 1


def test_invalid_corpus_exit_3(tmp_path, lexicon_path):
    p = tmp_path / "bad.jsonl"
    p.write_text('{"issue_id": "x"}\n')
    assert main(["evaluate", "--corpus", str(p), "--baseline", "reference", "--lexicon", lexicon_path]) == 3


def test_module_entry_point(corpus_path, lexicon_path):
    proc = subprocess.run([sys.executable, "-m", "framebias", "evaluate", "--corpus", str(corpus_path),
                           "--baseline", "all-source", "--lexicon", lexicon_path],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0, proc.stderr
    assert "| all-source |" in proc.stdout
