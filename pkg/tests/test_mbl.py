import pytest

from animacy.corpus import Document, Label
from animacy.enrichment import EnrichedTaxonomy, Status
from animacy.evaluation import score
from animacy.mbl import (
    OOV_LEMMA,
    FeatureVector,
    InstanceStore,
    MblConfig,
    cross_validate,
    extract_features,
    gain_ratio_weights,
    knn_classify,
)
from animacy.taxonomy import Synset, Taxonomy
from tests.test_corpus import make_np


def vec(lemma="w", f2=0.0, f3=0.0, f4=0.0, f5=0.0, f6=0.0, label=None):
    return FeatureVector(lemma, f2, f3, f4, f5, f6, label)


A, I = Label.ANIMATE, Label.INANIMATE


class TestExtractFeatures:
    def test_subject_with_known_verb_fills_everything(self, enriched, mini_corpus):
        doc = mini_corpus[0]
        np = doc.nps[0]  # teacher, subject of speak
        fv = extract_features(np, doc, enriched)
        assert fv.lemma == "teacher"
        assert (fv.animate_senses, fv.inanimate_senses) == (1.0, 0.0)
        assert (fv.verb_animate, fv.verb_inanimate) == (1.0, 0.0)
        assert fv.pronoun_ratio == 0.75
        assert fv.label is Label.ANIMATE

    def test_non_subject_has_zero_verb_counts(self, enriched, mini_corpus):
        doc = mini_corpus[0]
        np = doc.nps[1]  # the children, not a subject
        fv = extract_features(np, doc, enriched)
        assert fv.verb_animate == 0.0 and fv.verb_inanimate == 0.0

    def test_undecided_sense_resolved_by_animate_hypernym(self):
        t = Taxonomy([
            Synset("p", "n", ("parent",), (), 6),
            Synset("c", "n", ("word",), ("p",), 6),
        ])
        e = EnrichedTaxonomy(t, {"p": Status.ANIMATE, "c": Status.UNDECIDED})
        doc = Document("d", (make_np(head="word"),), 0, 0)
        fv = extract_features(doc.nps[0], doc, e)
        assert (fv.animate_senses, fv.inanimate_senses) == (1.0, 0.0)

    def test_oov_lemma_marked(self, enriched, mini_corpus):
        doc = mini_corpus[0]
        np = next(x for x in doc.nps if x.head_lemma == "gizmo")
        fv = extract_features(np, doc, enriched)
        assert fv.lemma == OOV_LEMMA
        assert fv.animate_senses == 0.0 and fv.inanimate_senses == 0.0

    def test_fallback_chain_is_total(self, enriched, toy_taxonomy, mini_corpus):
        for doc in mini_corpus:
            for np in doc.nps:
                senses = toy_taxonomy.senses(np.head_lemma, "n")
                fv = extract_features(np, doc, enriched)
                assert fv.animate_senses + fv.inanimate_senses == len(senses)


class TestGainRatio:
    def test_perfect_binary_split_weighs_one(self):
        instances = [
            vec(lemma="x", label=A), vec(lemma="x", label=A),
            vec(lemma="y", label=I), vec(lemma="y", label=I),
        ]
        weights = gain_ratio_weights(instances)
        assert weights[0] == pytest.approx(1.0)

    def test_constant_feature_weighs_zero(self):
        instances = [vec(lemma="x", label=A), vec(lemma="x", label=I)]
        assert gain_ratio_weights(instances)[0] == 0.0

    def test_class_independent_feature_weighs_zero(self):
        # eight instances; the lemma splits evenly inside each class
        instances = [
            vec(lemma="p", label=A), vec(lemma="p", label=A),
            vec(lemma="q", label=A), vec(lemma="q", label=A),
            vec(lemma="p", label=I), vec(lemma="p", label=I),
            vec(lemma="q", label=I), vec(lemma="q", label=I),
        ]
        assert abs(gain_ratio_weights(instances)[0]) < 1e-12

    def test_single_class_store_all_zero(self):
        instances = [vec(lemma="x", label=A), vec(lemma="y", label=A)]
        assert all(w == 0.0 for w in gain_ratio_weights(instances))

    def test_weights_non_negative(self, enriched, mini_corpus):
        store = InstanceStore([
            extract_features(np, doc, enriched)
            for doc in mini_corpus for np in doc.nps if np.gold is not None
        ])
        assert all(w >= 0.0 for w in store.weights)


class TestKnn:
    def test_identical_instance_k1(self):
        store = InstanceStore([
            vec(lemma="x", f2=1, label=A),
            vec(lemma="y", f3=1, label=I),
        ])
        assert knn_classify(vec(lemma="x", f2=1), store, MblConfig(k=1)) is A

    def test_majority_two_to_one(self):
        store = InstanceStore([
            vec(lemma="a", f2=1, label=A),
            vec(lemma="b", f2=1, label=A),
            vec(lemma="c", f3=1, label=I),
        ])
        # query matches nothing symbolically; three distinct distances
        got = knn_classify(vec(lemma="q", f2=1), store, MblConfig(k=3))
        assert got is A

    def test_equidistant_tie_goes_inanimate(self):
        store = InstanceStore([
            vec(lemma="left", f2=0, label=A),
            vec(lemma="right", f2=2, label=I),
        ])
        assert knn_classify(vec(lemma="q", f2=1), store, MblConfig(k=2)) is I

    def test_instances_tied_at_kth_distance_all_vote(self):
        store = InstanceStore([
            vec(lemma="x", label=I),
            vec(lemma="x", label=I),
            vec(lemma="x", label=A),
            vec(lemma="far", f2=5, label=A),
        ])
        # k=1: the single nearest distance covers three instances
        assert knn_classify(vec(lemma="x"), store, MblConfig(k=1)) is I

    def test_leave_one_in(self, enriched, mini_corpus):
        instances = []
        seen = set()
        for doc in mini_corpus:
            for np in doc.nps:
                if np.gold is None:
                    continue
                fv = extract_features(np, doc, enriched)
                key = (fv.lemma,) + fv.numeric()
                if key not in seen:  # unique feature vectors only
                    seen.add(key)
                    instances.append(fv)
        store = InstanceStore(instances)
        for fv in instances:
            assert knn_classify(fv, store, MblConfig(k=1)) is fv.label

    def test_weight_scaling_never_changes_labels(self, enriched, mini_corpus):
        instances = [
            extract_features(np, doc, enriched)
            for doc in mini_corpus for np in doc.nps if np.gold is not None
        ]
        store = InstanceStore(instances[:40])
        queries = instances[40:]
        before = [knn_classify(q, store, MblConfig(k=3)) for q in queries]
        store.weights = tuple(w * 7.5 for w in store.weights)
        after = [knn_classify(q, store, MblConfig(k=3)) for q in queries]
        assert before == after

    def test_degenerate_all_zero_weights_fall_back_to_majority(self):
        # single-class training data gives zero weights and zero distances
        store = InstanceStore([
            vec(lemma="x", label=I), vec(lemma="y", label=I), vec(lemma="z", label=I),
        ])
        assert knn_classify(vec(lemma="anything"), store, MblConfig(k=1)) is I

    def test_empty_store_rejected(self):
        with pytest.raises(ValueError):
            InstanceStore([])

    def test_unlabelled_training_instance_rejected(self):
        with pytest.raises(ValueError):
            InstanceStore([vec()])


class TestCrossValidation:
    def test_every_instance_predicted_exactly_once(self, enriched, mini_corpus):
        report, detailed = cross_validate(mini_corpus, enriched, folds=10, seed=3)
        labelled = [np for d in mini_corpus for np in d.nps if np.gold is not None]
        assert report.total == len(labelled)
        assert len(detailed) == len(labelled)
        assert all(pred is not None for _, pred in detailed)

    def test_same_seed_same_report(self, enriched, mini_corpus):
        first = cross_validate(mini_corpus, enriched, folds=10, seed=11)
        second = cross_validate(mini_corpus, enriched, folds=10, seed=11)
        assert first[0] == second[0]
        assert [p for _, p in first[1]] == [p for _, p in second[1]]

    def test_report_is_score_of_pooled_streams(self, enriched, mini_corpus):
        report, detailed = cross_validate(mini_corpus, enriched, folds=5, seed=1)
        gold = [np.gold for np, _ in detailed]
        predicted = [pred for _, pred in detailed]
        assert score(gold, predicted) == report

    def test_too_few_instances(self, enriched, mini_corpus):
        with pytest.raises(ValueError, match="folds"):
            cross_validate(mini_corpus[:1], enriched, folds=50, seed=0)

    def test_k_validation(self):
        with pytest.raises(ValueError):
            MblConfig(k=0)
