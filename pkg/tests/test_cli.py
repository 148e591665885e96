import json

import pytest

from helpers import synthetic_corpus, write_inputs
from refdistill.cli import main
from refdistill.scorefile import COLUMNS


@pytest.fixture
def inputs(tmp_path):
    corpus, lines = synthetic_corpus(3, beam=12, seed=4)
    src, ref, nbest = write_inputs(tmp_path, corpus, lines)
    return ["--src", str(src), "--ref", str(ref), "--nbest", str(nbest)]


def test_score_writes_one_row_per_hypothesis(tmp_path, inputs):
    out = tmp_path / "scores.tsv"
    assert main(["score", *inputs, "--out", str(out)]) == 0
    rows = out.read_text().splitlines()
    assert rows[0].split("\t") == list(COLUMNS)
    assert len(rows) == 37
    assert rows[1].split("\t")[:2] == ["0", "0"]
    assert all(len(r.split("\t")) == 7 for r in rows)


def test_missing_file_exits_1(tmp_path, inputs, capsys):
    args = list(inputs)
    args[args.index("--nbest") + 1] = str(tmp_path / "missing.nbest")
    assert main(["score", *args, "--out", str(tmp_path / "s.tsv")]) == 1
    assert "missing.nbest" in capsys.readouterr().err


def test_bad_expression_exits_2(tmp_path, inputs, capsys):
    assert main(["sample", *inputs, "--expr", "T^^1", "--out-dir", str(tmp_path)]) == 2
    err = capsys.readouterr().err
    assert "position 2" in err and "T^^1\n  ^" in err


def test_bad_band_exits_2(inputs):
    assert main(["calibrate", *inputs, "--metric", "bleu", "--lo", "2", "--hi", "1"]) == 2


def test_unknown_flag_exits_2(inputs):
    with pytest.raises(SystemExit) as info:
        main(["sample", *inputs, "--bogus"])
    assert info.value.code == 2


def test_sample_with_cached_scores_matches_recompute(tmp_path, inputs, capsys):
    scores = tmp_path / "scores.tsv"
    main(["score", *inputs, "--out", str(scores)])
    expr = "Dedup[SumMetrics[T^2_metric]] + S^{4,3,2,1}_bleu + G^{-0.25}_ter"
    assert main(["sample", *inputs, "--expr", expr, "--out-dir", str(tmp_path / "a")]) == 0
    assert main(["sample", *inputs, "--scores", str(scores), "--expr", expr,
                 "--out-dir", str(tmp_path / "b")]) == 0
    for ext in ("src", "tgt", "report.json"):
        assert (tmp_path / "a" / f"sample.{ext}").read_bytes() == \
            (tmp_path / "b" / f"sample.{ext}").read_bytes()
    rec = json.loads(capsys.readouterr().out.splitlines()[-1])
    assert rec["job"] == "sample" and rec["original_size"] == 3


def test_sample_job_file_and_report(tmp_path, inputs):
    jobs = tmp_path / "jobs.tsv"
    jobs.write_text("orig\tOriginal\nbest\tT^1_bleu\n", encoding="utf-8")
    rep = tmp_path / "report.jsonl"
    assert main(["sample", *inputs, "--jobs", str(jobs), "--out-dir", str(tmp_path / "o"),
                 "--report", str(rep)]) == 0
    lines = [json.loads(x) for x in rep.read_text().splitlines()]
    assert [x["job"] for x in lines] == ["orig", "best"]
    assert lines[0]["total_size"] == 3 and lines[0]["preserved_fraction"] == 1.0
    assert len((tmp_path / "o" / "best.tgt").read_text().splitlines()) == 3


def test_calibrate_prints_json(inputs, capsys):
    assert main(["calibrate", *inputs, "--metric", "chrf"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["metric"] == "chrf"
    assert set(out) == {"metric", "threshold", "ratio", "not_exact"}


def test_stats_overlap_and_dataset(tmp_path, inputs, capsys):
    assert main(["stats", *inputs, "--metrics", "bleu,bleu", "--overlap-n", "2"]) == 0
    assert json.loads(capsys.readouterr().out)["overlap"] == 1.0
    main(["sample", *inputs, "--expr", "2xOriginal", "--name", "o2", "--out-dir", str(tmp_path)])
    capsys.readouterr()
    src, ref = inputs[1], inputs[3]
    assert main(["stats", "--src", src, "--ref", ref, "--dataset", str(tmp_path / "o2")]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["total_size"] == 6 and out["size_ratio"] == 2.0


def test_split_and_grid(tmp_path, inputs, capsys):
    src, ref = inputs[1], inputs[3]
    assert main(["split", "--src", src, "--ref", ref, "--dev", "1", "--test", "1",
                 "--prefix", str(tmp_path / "p")]) == 0
    assert json.loads(capsys.readouterr().out) == {"train": 1, "dev": 1, "test": 1}
    assert (tmp_path / "p.train.src").exists()
    assert main(["split", "--src", src, "--ref", ref, "--dev", "3", "--test", "1",
                 "--prefix", str(tmp_path / "p")]) == 2
    capsys.readouterr()
    assert main(["grid"]) == 0
    assert "dedup_sum_t2\tDedup[SumMetrics[T^2_metric]]" in capsys.readouterr().out
