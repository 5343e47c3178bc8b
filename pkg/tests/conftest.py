import sys
from pathlib import Path

import pytest

from nilpo.presentation import load_presentation

CORPUS = Path(__file__).resolve().parents[1] / "src" / "nilpo" / "corpus"
sys.path.insert(0, str(Path(__file__).resolve().parent))


def corpus_names():
    return sorted(p.stem for p in CORPUS.glob("*.grp"))


def load(name):
    return load_presentation(CORPUS / f"{name}.grp")


@pytest.fixture(scope="session")
def corpus():
    return {name: load(name) for name in corpus_names()}
