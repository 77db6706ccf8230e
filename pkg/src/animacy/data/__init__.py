"""Bundled desk-scale data: a toy taxonomy and a hand-annotated mini corpus."""

from importlib.resources import files


def toy_taxonomy_path() -> str:
    return str(files(__package__) / "toy.tax")


def mini_corpus_path() -> str:
    return str(files(__package__) / "mini.tsv")
