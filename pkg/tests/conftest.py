from __future__ import annotations

import shutil
from pathlib import Path

import pytest

from taxidma import builtin_corpus, load_builtin
from taxidma.corpus import builtin_corpus_dir


@pytest.fixture(scope="session")
def tset():
    return load_builtin()


@pytest.fixture(scope="session")
def corpus():
    return builtin_corpus()


@pytest.fixture()
def corpus_dir(tmp_path) -> Path:
    """Writable copy of the built-in corpus directory."""
    target = tmp_path / "corpus"
    shutil.copytree(builtin_corpus_dir(), target)
    return target
