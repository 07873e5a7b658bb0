import json
import os
from pathlib import Path

import pytest

from answergen import cli, load_annotations, load_squad

DATA = Path(__file__).parent / "data"

TRAIN_SQUAD = DATA / "squad_train_sample.json"
DEV_SQUAD = DATA / "squad_dev_sample.json"
TRAIN_ANN = DATA / "annotations_train.jsonl"
DEV_ANN = DATA / "annotations_dev.jsonl"
EMBEDDINGS = DATA / "embeddings.txt"
GOLDEN = DATA / "eval_golden.json"


@pytest.fixture(scope="session")
def train_corpus():
    return load_squad(TRAIN_SQUAD)


@pytest.fixture(scope="session")
def dev_corpus():
    return load_squad(DEV_SQUAD)


@pytest.fixture(scope="session")
def train_annotations(train_corpus):
    return load_annotations(TRAIN_ANN, train_corpus)


@pytest.fixture(scope="session")
def dev_annotations(dev_corpus):
    return load_annotations(DEV_ANN, dev_corpus)


def run_cli(*args) -> int:
    return cli.main([str(a) for a in args])


def run_fixture_pipeline(out_dir: Path, top_n: int = 10) -> dict[str, Path]:
    """build-dataset -> train -> predict -> eval on the fixture corpus."""
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = {
        "dataset": out_dir / "dataset.jsonl",
        "model": out_dir / "model.json",
        "answers": out_dir / "answers.jsonl",
        "report": out_dir / "report.json",
        "report_txt": out_dir / "report.txt",
    }
    assert run_cli(
        "build-dataset", "--squad", TRAIN_SQUAD, "--annotations", TRAIN_ANN,
        "--out", paths["dataset"],
    ) == 0
    assert run_cli(
        "train", "--squad", TRAIN_SQUAD, "--annotations", TRAIN_ANN,
        "--embeddings", EMBEDDINGS, "--dataset", paths["dataset"],
        "--model", paths["model"],
    ) == 0
    assert run_cli(
        "predict", "--squad", DEV_SQUAD, "--annotations", DEV_ANN,
        "--embeddings", EMBEDDINGS, "--model", paths["model"],
        "--out", paths["answers"], "--top-n", str(top_n),
    ) == 0
    assert run_cli(
        "eval", "--squad", DEV_SQUAD, "--annotations", DEV_ANN,
        "--answers", paths["answers"], "--out", paths["report"],
        "--top-n", str(top_n),
    ) == 0
    return paths


@pytest.fixture(scope="session")
def pipeline_run(tmp_path_factory) -> dict[str, Path]:
    return run_fixture_pipeline(tmp_path_factory.mktemp("pipeline"))


@pytest.fixture(scope="session")
def answer_lines(pipeline_run):
    with open(pipeline_run["answers"], encoding="utf-8") as fh:
        return [json.loads(line) for line in fh if line.strip()]


def full_dev_data() -> dict[str, Path] | None:
    """Real SQuAD + exporter outputs, when the user has provided them.

    Expected layout (see README): $ANSWERGEN_DATA_DIR or ./data containing
    train-v1.1.json, dev-v1.1.json, annotations-train.jsonl,
    annotations-dev.jsonl, embeddings.txt.
    """
    root = Path(os.environ.get("ANSWERGEN_DATA_DIR", "data"))
    files = {
        "train": root / "train-v1.1.json",
        "dev": root / "dev-v1.1.json",
        "ann_train": root / "annotations-train.jsonl",
        "ann_dev": root / "annotations-dev.jsonl",
        "embeddings": root / "embeddings.txt",
    }
    if all(p.is_file() for p in files.values()):
        return files
    return None


requires_full_dev = pytest.mark.skipif(
    full_dev_data() is None,
    reason="needs real SQuAD v1.1 files plus exporter outputs in "
    "$ANSWERGEN_DATA_DIR (see README: Full-dataset evaluation)",
)
