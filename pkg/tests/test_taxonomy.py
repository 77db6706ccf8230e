import tempfile

import pytest
from hypothesis import given, settings, strategies as st

from animacy.taxonomy import (
    BeginnerClass,
    Synset,
    Taxonomy,
    TaxonomyError,
    load_taxonomy,
    save_taxonomy,
)


@st.composite
def random_taxonomies(draw):
    """Small random DAGs: parents always precede children, so acyclic."""
    size = draw(st.integers(1, 12))
    synsets = []
    for i in range(size):
        max_parents = min(2, i)
        parent_count = draw(st.integers(0, max_parents))
        parents = draw(st.lists(
            st.sampled_from([f"s{j}" for j in range(i)]) if i else st.nothing(),
            min_size=parent_count, max_size=parent_count, unique=True,
        )) if parent_count else []
        lemmas = draw(st.lists(
            st.sampled_from(["fox", "vat", "oak", "imp", "cog", "elm"]),
            min_size=1, max_size=2, unique=True,
        ))
        synsets.append(Synset(
            f"s{i}", "n", tuple(lemmas), tuple(parents),
            draw(st.sampled_from([5, 6, 18, 24])),
        ))
    return Taxonomy(synsets)


def chain_taxonomy():
    return Taxonomy([
        Synset("r", "n", ("thing",), (), 18),
        Synset("m", "n", ("being",), ("r",), 18),
        Synset("l", "n", ("mortal",), ("m",), 18),
    ])


class TestLoading:
    def test_three_synset_chain(self, tmp_path):
        path = tmp_path / "chain.tax"
        path.write_text(
            "SYNSET\tr\tn\t18\tthing\t\n"
            "SYNSET\tm\tn\t18\tbeing\tr\n"
            "SYNSET\tl\tn\t18\tmortal\tm\n"
        )
        t = load_taxonomy(path)
        assert len(t) == 3
        assert t.roots == ("r",)

    def test_cycle_is_rejected_naming_both_ids(self, tmp_path):
        path = tmp_path / "cycle.tax"
        path.write_text(
            "SYNSET\ta\tn\t18\tup\tb\n"
            "SYNSET\tb\tn\t18\tdown\ta\n"
        )
        with pytest.raises(TaxonomyError, match="cycle") as err:
            load_taxonomy(path)
        assert "a" in str(err.value) and "b" in str(err.value)

    def test_dangling_hypernym(self, tmp_path):
        path = tmp_path / "dangling.tax"
        path.write_text("SYNSET\ta\tn\t18\tword\tnowhere\n")
        with pytest.raises(TaxonomyError, match="dangling"):
            load_taxonomy(path)

    def test_duplicate_id(self):
        with pytest.raises(TaxonomyError, match="duplicate"):
            Taxonomy([
                Synset("x", "n", ("one",), (), 18),
                Synset("x", "n", ("two",), (), 18),
            ])

    def test_parse_error_carries_line_number(self, tmp_path):
        path = tmp_path / "bad.tax"
        path.write_text("SYNSET\ta\tn\teighteen\tword\t\n")
        with pytest.raises(TaxonomyError, match="line 1"):
            load_taxonomy(path)

    def test_duplicate_lemma_or_hypernym_within_synset(self):
        with pytest.raises(TaxonomyError, match="duplicate lemma"):
            Synset("x", "n", ("cat", "cat"), (), 5)
        with pytest.raises(TaxonomyError, match="duplicate hypernym"):
            Taxonomy([
                Synset("r", "n", ("top",), (), 18),
                Synset("x", "n", ("cat",), ("r", "r"), 5),
            ])

    def test_pos_mismatch_across_hypernym_edge(self):
        with pytest.raises(TaxonomyError, match="part of speech"):
            Taxonomy([
                Synset("r", "n", ("thing",), (), 18),
                Synset("v1", "v", ("do",), ("r",), 31),
            ])

    def test_round_trip(self, toy_taxonomy, tmp_path):
        path = tmp_path / "copy.tax"
        save_taxonomy(toy_taxonomy, path)
        assert load_taxonomy(path) == toy_taxonomy


class TestSenses:
    def test_monosemous_lemma(self, toy_taxonomy):
        assert toy_taxonomy.senses("teacher", "n") == ("n-teacher",)

    def test_unknown_lemma_is_empty_not_error(self, toy_taxonomy):
        assert toy_taxonomy.senses("quux", "n") == ()

    def test_cat_spans_two_beginners_in_file_order(self, toy_taxonomy):
        senses = toy_taxonomy.senses("cat", "n")
        assert senses == ("n-cat-animal", "n-cat-machine")
        assert toy_taxonomy.beginner_of("n-cat-animal") == 5
        assert toy_taxonomy.beginner_of("n-cat-machine") == 6

    def test_lemma_index_matches_membership(self, toy_taxonomy):
        for sid in toy_taxonomy:
            syn = toy_taxonomy.get(sid)
            for lemma in syn.lemmas:
                assert sid in toy_taxonomy.senses(lemma, syn.pos)


class TestBeginners:
    def test_root_is_its_own_beginner(self, toy_taxonomy):
        assert toy_taxonomy.beginner_of("n-person") == 18

    def test_chain_to_person_root(self, toy_taxonomy):
        assert toy_taxonomy.beginner_of("n-teacher") == 18

    def test_multi_parent_node_keeps_own_lexfile(self, toy_taxonomy):
        # n-sentinel sits under both n-person (18) and n-device (6)
        assert toy_taxonomy.beginner_of("n-sentinel") == 18

    def test_beginner_total_on_whole_taxonomy(self, toy_taxonomy):
        for sid in toy_taxonomy:
            assert isinstance(toy_taxonomy.beginner_of(sid), int)

    def test_unknown_synset(self, toy_taxonomy):
        with pytest.raises(TaxonomyError):
            toy_taxonomy.beginner_of("n-missing")


class TestBeginnerClass:
    def test_noun_defaults(self):
        c = BeginnerClass()
        assert c.animate_noun_lexfiles == frozenset({5, 18, 24})
        assert c.is_animate(18, "n")
        assert not c.is_animate(6, "n")

    def test_verb_defaults(self):
        c = BeginnerClass()
        assert c.animate_verb_lexfiles == frozenset({31, 32, 37, 41})
        assert c.is_animate(32, "v")
        assert not c.is_animate(38, "v")

    def test_empty_set_rejected(self):
        with pytest.raises(TaxonomyError):
            BeginnerClass(animate_noun_lexfiles=frozenset())


class TestGeneratedTaxonomies:
    @settings(max_examples=60, deadline=None)
    @given(taxonomy=random_taxonomies())
    def test_save_load_round_trip(self, taxonomy):
        with tempfile.TemporaryDirectory() as tmp:
            path = f"{tmp}/roundtrip.tax"
            save_taxonomy(taxonomy, path)
            assert load_taxonomy(path) == taxonomy

    @settings(max_examples=60, deadline=None)
    @given(taxonomy=random_taxonomies())
    def test_lemma_index_is_inverse_of_membership(self, taxonomy):
        for sid in taxonomy:
            syn = taxonomy.get(sid)
            for lemma in syn.lemmas:
                assert sid in taxonomy.senses(lemma, syn.pos)
        for lemma in taxonomy.lemmas("n"):
            for sid in taxonomy.senses(lemma, "n"):
                assert lemma in taxonomy.get(sid).lemmas

    @settings(max_examples=60, deadline=None)
    @given(taxonomy=random_taxonomies())
    def test_beginner_is_total_and_a_real_root_unless_multiparent(self, taxonomy):
        for sid in taxonomy:
            lexfile = taxonomy.beginner_of(sid)
            assert isinstance(lexfile, int)


def test_ancestors_deduplicate_diamond(toy_taxonomy):
    # lamp reaches n-artifact through both n-device and n-furniture
    anc = toy_taxonomy.ancestors("n-lamp")
    assert anc == frozenset({"n-device", "n-furniture", "n-artifact"})


def test_status_lines_are_tolerated(tmp_path):
    path = tmp_path / "combined.tax"
    path.write_text(
        "SYNSET\tr\tn\t18\tthing\t\n"
        "STATUS\tr\tA\n"
    )
    assert len(load_taxonomy(path)) == 1
