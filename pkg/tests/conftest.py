import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from factlog import (ingest_conllu, load_synset_graph, read_training_file,
                     train_store)
from factlog.pipeline import FactualAuthor

FIXTURES = Path(__file__).parent.parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def training_sets():
    return ingest_conllu(str(FIXTURES / "training.conllu"))


@pytest.fixture(scope="session")
def annotations():
    return read_training_file((FIXTURES / "training.train").read_text())


@pytest.fixture(scope="session")
def store(annotations, training_sets):
    return train_store(annotations, training_sets)


@pytest.fixture(scope="session")
def graph_and_bindings():
    return load_synset_graph(str(FIXTURES / "synsets.graph"))


@pytest.fixture(scope="session")
def graph(graph_and_bindings):
    return graph_and_bindings[0]


@pytest.fixture(scope="session")
def bindings(graph_and_bindings):
    return graph_and_bindings[1]


@pytest.fixture(scope="session")
def author(store, graph, bindings):
    return FactualAuthor().with_store(store).with_senses(graph, bindings)


@pytest.fixture(scope="session")
def corpus_sets():
    return ingest_conllu(str(FIXTURES / "corpus.conllu"))


@pytest.fixture(scope="session")
def corpus_by_id(corpus_sets):
    return {ps.sentence_id: ps for ps in corpus_sets}


@pytest.fixture(scope="session")
def rejects_by_id():
    return {ps.sentence_id: ps
            for ps in ingest_conllu(str(FIXTURES / "rejects.conllu"))}
