import pytest

from animacy import enrich, load_corpus, load_taxonomy
from animacy.data import mini_corpus_path, toy_taxonomy_path


@pytest.fixture(scope="session")
def toy_taxonomy():
    return load_taxonomy(toy_taxonomy_path())


@pytest.fixture(scope="session")
def mini_corpus():
    return load_corpus(mini_corpus_path())


@pytest.fixture(scope="session")
def enriched(toy_taxonomy, mini_corpus):
    return enrich(toy_taxonomy, mini_corpus)
