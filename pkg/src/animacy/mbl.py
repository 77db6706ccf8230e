"""Memory-based animacy classification.

Training stores labelled feature vectors as-is; classification compares a
query against every stored instance with a feature-weighted overlap
distance and lets the nearest neighbours vote.  Feature weights are gain
ratios computed from the training instances alone.  `k` counts nearest
*distances*: every instance tied at an included distance joins the vote.

The instance encodes the head lemma, the lemma's animate and inanimate
sense counts under the enriched taxonomy, the same pair for the governing
verb of subjects (zero otherwise), and the document's animate pronoun
ratio.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable, Sequence

import numpy as np

from .corpus import Document, Label, NPRecord, iter_nps
from .enrichment import EnrichedTaxonomy
from .evaluation import EvalReport, score
from .taxonomy import NOUN, VERB, BeginnerClass

if TYPE_CHECKING:
    from .wsd import SenseWeighting

OOV_LEMMA = "<oov>"

_NUMERIC = ("animate_senses", "inanimate_senses", "verb_animate",
            "verb_inanimate", "pronoun_ratio")


@dataclass(frozen=True)
class FeatureVector:
    """One classification instance; `label` is set on training instances.

    Sense counts are floats so that weighted (soft) counts fit the same
    shape; without weighting they are whole numbers.
    """

    lemma: str
    animate_senses: float
    inanimate_senses: float
    verb_animate: float
    verb_inanimate: float
    pronoun_ratio: float
    label: Label | None = None

    def numeric(self) -> tuple[float, ...]:
        return (self.animate_senses, self.inanimate_senses,
                self.verb_animate, self.verb_inanimate, self.pronoun_ratio)


@dataclass(frozen=True)
class MblConfig:
    k: int = 3
    # "distance" prefers the vote side whose neighbours sit closer, then
    # falls back to the majority-class prior; "prior" goes there directly.
    tie_break: str = "distance"

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.tie_break not in ("distance", "prior"):
            raise ValueError(f"unknown tie_break {self.tie_break!r}")


def _sense_mass(lemma: str, pos: str, enriched: EnrichedTaxonomy,
                beginners: BeginnerClass,
                weighting: "SenseWeighting | None") -> tuple[float, float]:
    if weighting is not None and pos == NOUN:
        from .wsd import weighted_counts

        return weighted_counts(lemma, weighting, enriched, beginners, pos)
    animate = 0.0
    inanimate = 0.0
    for sid in enriched.base.senses(lemma, pos):
        if enriched.resolve_animate(sid, beginners):
            animate += 1.0
        else:
            inanimate += 1.0
    return animate, inanimate


def extract_features(
    np_record: NPRecord,
    doc: Document,
    enriched: EnrichedTaxonomy,
    beginners: BeginnerClass = BeginnerClass(),
    weighting: "SenseWeighting | None" = None,
) -> FeatureVector:
    """Build the instance for one NP occurrence.

    Out-of-vocabulary heads get zero sense counts and a marker lemma.
    Verb counts apply to subjects with a known governing verb only.
    """
    from .corpus import pronoun_ratio

    senses = enriched.base.senses(np_record.head_lemma, NOUN)
    if senses:
        lemma = np_record.head_lemma
        noun_animate, noun_inanimate = _sense_mass(
            np_record.head_lemma, NOUN, enriched, beginners, weighting
        )
    else:
        lemma = OOV_LEMMA
        noun_animate = noun_inanimate = 0.0

    verb_animate = verb_inanimate = 0.0
    if np_record.is_subject and np_record.verb_lemma is not None:
        verb_animate, verb_inanimate = _sense_mass(
            np_record.verb_lemma, VERB, enriched, beginners, None
        )

    return FeatureVector(
        lemma=lemma,
        animate_senses=noun_animate,
        inanimate_senses=noun_inanimate,
        verb_animate=verb_animate,
        verb_inanimate=verb_inanimate,
        pronoun_ratio=pronoun_ratio(doc),
        label=np_record.gold,
    )


def _entropy(counts: dict) -> float:
    total = sum(counts.values())
    if total == 0:
        return 0.0
    h = 0.0
    for n in counts.values():
        if n:
            p = n / total
            h -= p * math.log2(p)
    return h


def _discretize(feature: str, value) -> object:
    # the pronoun ratio is continuous; ten equal buckets make it countable
    if feature == "pronoun_ratio":
        return min(int(value * 10), 9)
    return value


def gain_ratio_weights(instances: Sequence[FeatureVector]) -> tuple[float, ...]:
    """Gain ratio of each feature against the labels, lemma first.

    Numeric feature values act as discrete symbols here (the distance
    treats them numerically).  A feature constant across the instances has
    zero split information and gets weight 0; a single-class instance set
    yields all zeros.
    """
    labels = [inst.label for inst in instances]
    class_entropy = _entropy(_tally(labels))
    weights = []
    for feature in ("lemma",) + _NUMERIC:
        by_value: dict[object, dict] = {}
        for inst in instances:
            value = _discretize(feature, getattr(inst, feature))
            by_value.setdefault(value, {}).setdefault(inst.label, 0)
            by_value[value][inst.label] += 1
        total = len(instances)
        conditional = 0.0
        split_info = 0.0
        for group in by_value.values():
            size = sum(group.values())
            p = size / total
            conditional += p * _entropy(group)
            split_info -= p * math.log2(p)
        gain = max(class_entropy - conditional, 0.0)
        weights.append(gain / split_info if split_info > 0 else 0.0)
    return tuple(weights)


def _tally(values) -> dict:
    out: dict = {}
    for v in values:
        out[v] = out.get(v, 0) + 1
    return out


class InstanceStore:
    """Immutable training memory: instances, weights and numeric ranges.

    Weights and the per-feature value ranges used for distance scaling
    come from the stored instances only, never from queries.
    """

    def __init__(self, instances: Iterable[FeatureVector]):
        self.instances = tuple(instances)
        if not self.instances:
            raise ValueError("instance store cannot be empty")
        for inst in self.instances:
            if inst.label is None:
                raise ValueError("training instances need labels")
        self.weights = gain_ratio_weights(self.instances)
        self.ranges = []
        for idx in range(len(_NUMERIC)):
            column = [inst.numeric()[idx] for inst in self.instances]
            self.ranges.append((min(column), max(column)))

    def distance(self, a: FeatureVector, b: FeatureVector) -> float:
        """Weighted overlap distance: 0/1 mismatch on the lemma, range-
        scaled absolute difference on the numeric features."""
        d = self.weights[0] * (0.0 if a.lemma == b.lemma else 1.0)
        na, nb = a.numeric(), b.numeric()
        for idx in range(len(_NUMERIC)):
            lo, hi = self.ranges[idx]
            span = hi - lo
            delta = abs(na[idx] - nb[idx]) / span if span > 0 else 0.0
            d += self.weights[idx + 1] * delta
        return d


def knn_classify(
    query: FeatureVector,
    store: InstanceStore,
    config: MblConfig = MblConfig(),
) -> Label:
    """Vote of the nearest stored instances.

    The k smallest distinct distances define the neighbourhood.  Vote ties
    go to the class with the smaller summed neighbour distance and then to
    INANIMATE, the majority-class prior.
    """
    distances = [store.distance(query, inst) for inst in store.instances]
    included = sorted(set(distances))[: config.k]
    cutoff = set(included)

    votes: dict[Label, int] = {}
    summed: dict[Label, float] = {}
    for inst, dist in zip(store.instances, distances):
        if dist in cutoff:
            votes[inst.label] = votes.get(inst.label, 0) + 1
            summed[inst.label] = summed.get(inst.label, 0.0) + dist

    best = max(votes.values())
    tied = sorted(label for label, count in votes.items() if count == best)
    if len(tied) == 1:
        return tied[0]
    if config.tie_break == "distance":
        closest = min(summed[label] for label in tied)
        tied = [label for label in tied if summed[label] == closest]
        if len(tied) == 1:
            return tied[0]
    return Label.INANIMATE if Label.INANIMATE in tied else tied[0]


def build_store(
    docs: Iterable[Document],
    enriched: EnrichedTaxonomy,
    beginners: BeginnerClass = BeginnerClass(),
    weightings: dict[str, "SenseWeighting"] | None = None,
) -> InstanceStore:
    """Training store over every gold-labelled NP of a corpus."""
    instances = []
    for doc, np_record in iter_nps(docs):
        if np_record.gold is None:
            continue
        weighting = weightings.get(doc.doc_id) if weightings else None
        instances.append(
            extract_features(np_record, doc, enriched, beginners, weighting)
        )
    return InstanceStore(instances)


def cross_validate(
    docs: Sequence[Document],
    enriched: EnrichedTaxonomy,
    folds: int = 10,
    config: MblConfig = MblConfig(),
    seed: int = 0,
    beginners: BeginnerClass = BeginnerClass(),
    weightings: dict[str, "SenseWeighting"] | None = None,
) -> tuple[EvalReport, list[tuple[NPRecord, Label]]]:
    """Seeded k-fold evaluation over the gold-labelled NPs.

    Instances are shuffled once and split into near-equal folds; each fold
    is predicted by a store built from the others, so feature weights never
    see the held-out part.  Returns the pooled report plus per-NP
    predictions in corpus order.
    """
    if folds < 2:
        raise ValueError("folds must be >= 2")
    pairs = [(doc, np_record) for doc, np_record in iter_nps(docs)
             if np_record.gold is not None]
    if len(pairs) < folds:
        raise ValueError(f"{len(pairs)} labelled instances cannot fill {folds} folds")

    features = [
        extract_features(
            np_record, doc, enriched, beginners,
            weightings.get(doc.doc_id) if weightings else None,
        )
        for doc, np_record in pairs
    ]
    rng = np.random.default_rng(seed)
    order = rng.permutation(len(pairs))
    predictions: list[Label | None] = [None] * len(pairs)
    for fold_indices in np.array_split(order, folds):
        held_out = set(int(i) for i in fold_indices)
        store = InstanceStore(
            fv for idx, fv in enumerate(features) if idx not in held_out
        )
        for idx in sorted(held_out):
            predictions[idx] = knn_classify(features[idx], store, config)

    gold = [np_record.gold for _, np_record in pairs]
    report = score(gold, predictions)
    detailed = [(np_record, predictions[idx]) for idx, (_, np_record) in enumerate(pairs)]
    return report, detailed
