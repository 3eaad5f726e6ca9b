import json

import pytest

from parroteval.cli import EXIT_EMPTY, EXIT_UNREADABLE, EXIT_USAGE, build_parser, run
from parroteval.corpus import write_jsonl

from conftest import random_corpus


@pytest.fixture
def corpus_file(tmp_path):
    path = tmp_path / "corpus.jsonl"
    write_jsonl(random_corpus(40, seed=5), path)
    return path


@pytest.fixture
def quora_file(tmp_path):
    path = tmp_path / "pairs.tsv"
    path.write_text(
        "id\tqid1\tqid2\tquestion1\tquestion2\tis_duplicate\n"
        "0\t1\t2\tHow do I learn Python?\tWhat is the best way to learn Python?\t1\n"
        "1\t3\t4\tWhat is AI?\tHow do I cook rice?\t0\n"
        "2\t1\t5\tHow do I learn Python?\tHow can I learn python?\t1\n",
        encoding="utf-8",
    )
    return path


def test_ingest(tmp_path, quora_file, capsys):
    out = tmp_path / "corpus.jsonl"
    assert run(["ingest", "--source", "quora", "--in", str(quora_file), "--out", str(out),
                "--out-dir", str(tmp_path / "res")]) == 0
    lines = out.read_text(encoding="utf-8").splitlines()
    assert len(lines) == 3
    assert "3 entries" in capsys.readouterr().out
    doc = json.loads((tmp_path / "res" / "stats.json").read_text())
    assert doc["schema_version"] == 1


def test_eval_outputs(tmp_path, corpus_file):
    out = tmp_path / "res"
    assert run(["eval", "--corpus", str(corpus_file), "--mode", "full", "--out-dir", str(out)]) == 0
    doc = json.loads((out / "eval.json").read_text())
    assert doc["command"] == "eval" and doc["schema_version"] == 1
    assert doc["config"]["mode"] == "full"
    header = (out / "eval.csv").read_text().splitlines()[0].split(",")
    assert header[:4] == ["entry_count", "bleu", "meteor", "ter"]


COMMANDS = [
    ["stats"],
    ["eval", "--mode", "replace", "--position", "random", "--ratio", "0.3"],
    ["sample-eval", "--size", "10", "--runs", "5"],
    ["refcurve"],
    ["sweep", "--mode", "cut", "--position", "random", "--step", "0.25"],
    ["retrieval", "--entry-id", "e0", "--num-references", "1", "--num-distractors", "10"],
]


@pytest.mark.parametrize("argv", COMMANDS, ids=lambda a: a[0])
def test_commands_byte_identical_across_runs_and_workers(tmp_path, corpus_file, argv):
    outputs = []
    for i, workers in enumerate(["1", "1", "3"]):
        out = tmp_path / f"run{i}"
        assert run(argv + ["--corpus", str(corpus_file), "--out-dir", str(out),
                           "--workers", workers]) == 0
        outputs.append({p.name: p.read_bytes() for p in sorted(out.iterdir())})
    assert len(outputs[0]) == 2
    assert outputs[0] == outputs[1] == outputs[2]


def test_sweep_csv_rows(tmp_path, corpus_file):
    out = tmp_path / "res"
    assert run(["sweep", "--corpus", str(corpus_file), "--mode", "cut", "--position", "head",
                "--step", "0.02", "--out-dir", str(out)]) == 0
    rows = (out / "sweep.csv").read_text().splitlines()
    assert len(rows) == 52
    assert rows[0].startswith("nominal_ratio,realized_ratio,")


def test_exit_codes(tmp_path, corpus_file):
    assert run(["eval", "--corpus", str(corpus_file), "--bogus"]) == EXIT_USAGE
    assert run(["eval", "--corpus", str(tmp_path / "missing.jsonl")]) == EXIT_UNREADABLE
    neg = tmp_path / "neg.tsv"
    neg.write_text("id\tqid1\tqid2\tquestion1\tquestion2\tis_duplicate\n0\t1\t2\ta\tb\t0\n")
    assert run(["ingest", "--source", "quora", "--in", str(neg),
                "--out", str(tmp_path / "c.jsonl")]) == EXIT_EMPTY
    assert run(["eval", "--corpus", str(corpus_file), "--min-refs", "99",
                "--out-dir", str(tmp_path)]) == EXIT_EMPTY
    assert run(["retrieval", "--corpus", str(corpus_file), "--entry-id", "nope",
                "--out-dir", str(tmp_path)]) == 1


def test_help_lists_every_command_and_flag(capsys):
    assert run(["--help"]) == 0
    text = capsys.readouterr().out
    for command in ["ingest", "stats", "eval", "sample-eval", "refcurve", "sweep", "retrieval"]:
        assert command in text
    parser = build_parser()
    sub = next(a for a in parser._actions if a.dest == "command")
    for name, subparser in sub.choices.items():
        help_text = subparser.format_help()
        for action in subparser._actions:
            for flag in action.option_strings:
                assert flag in help_text
        assert "CSV" in help_text or name == "ingest"
