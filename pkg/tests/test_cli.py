import pytest

from ssk.cli import main


def test_selfcheck(capsys):
    assert main(["selfcheck"]) == 0
    out = capsys.readouterr().out
    assert "FAIL" not in out
    assert "all good" in out


def test_compute(capsys):
    rc = main(["compute", "--s", "gatta", "--t", "cata", "-p", "3",
               "--lam", "0.5", "--algorithm", "geometric"])
    assert rc == 0
    out = capsys.readouterr().out
    assert "K_1 = 1.5" in out
    assert "K_3 = 0.015625" in out


def test_compute_word_mode(capsys):
    rc = main(["compute", "--s", "the cat sat", "--t", "the dog sat",
               "--mode", "word", "-p", "2", "--algorithm", "dp"])
    assert rc == 0
    assert "K_2" in capsys.readouterr().out


def test_crosscheck_pass(capsys):
    rc = main(["crosscheck", "--lengths", "6,10", "--alphabets", "2,4",
               "--pairs", "2", "-p", "3", "--seed", "5"])
    assert rc == 0
    assert "PASS" in capsys.readouterr().out


def test_crosscheck_with_brute(capsys):
    rc = main(["crosscheck", "--lengths", "8", "--alphabets", "3",
               "--pairs", "2", "-p", "2", "--seed", "5",
               "--algorithms", "brute,dp,sparse,geometric"])
    assert rc == 0


def test_bench_synthetic_to_file(tmp_path):
    out = tmp_path / "grid.csv"
    rc = main(["bench-synthetic", "--lengths", "4,8", "--alphabets", "2",
               "-p", "2", "--pairs", "1", "--repetitions", "1",
               "--seed", "3", "--out", str(out)])
    assert rc == 0
    text = out.read_text()
    assert text.startswith("# ssk-bench-synthetic csv v1")
    assert len(text.splitlines()) == 2 + 2 * 1 * 3 * 1  # cells*pairs*algos*reps


def test_bench_corpus_to_file(tmp_path):
    docs = tmp_path / "docs"
    docs.mkdir()
    (docs / "a.txt").write_text("the quick brown fox")
    (docs / "b.txt").write_text("the lazy dog sleeps")
    out = tmp_path / "corpus.csv"
    rc = main(["bench-corpus", str(docs), "--p-list", "2",
               "--repetitions", "1", "--seed", "3",
               "--algorithms", "dp,sparse", "--out", str(out)])
    assert rc == 0
    lines = out.read_text().splitlines()
    assert lines[0].startswith("# ssk-bench-corpus csv v1")
    assert len(lines) == 2 + 2  # one pair x two algorithms


def test_seed_required_for_bench():
    with pytest.raises(SystemExit):
        main(["bench-synthetic", "--lengths", "4", "--alphabets", "2"])
