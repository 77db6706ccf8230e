"""Per-sense weights from information content, for soft sense counting.

Instead of giving every sense of a polysemous noun the same vote, the
senses that plausibly fit the surrounding text get more weight.  For each
pair of nouns that co-occur in a document, the most informative synset
subsuming any sense pair supports, with its information content, every
sense of either noun that it subsumes.  Per-lemma support is normalized to
a distribution; nouns with no pairwise support fall back to uniform
weights.  This pairwise scheme is polynomial in the number of senses, so
documents with many polysemous nouns stay tractable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping

from .corpus import Document, iter_nps
from .enrichment import EnrichedTaxonomy
from .taxonomy import NOUN, BeginnerClass, Taxonomy


@dataclass(frozen=True)
class ICTable:
    """Information content per synset: -log p, with p estimated from
    propagated occurrence counts plus add-one smoothing."""

    ic: Mapping[str, float]
    counts: Mapping[str, float]

    def of(self, sid: str) -> float:
        return self.ic[sid]


def _ic_from_counts(raw: dict[str, float], taxonomy: Taxonomy) -> ICTable:
    if len(taxonomy) == 0:
        raise ValueError("cannot build an information-content table for an empty taxonomy")
    smoothed = {sid: raw.get(sid, 0.0) + 1.0 for sid in taxonomy}
    norm = {}
    for pos in ("n", "v"):
        norm[pos] = sum(
            smoothed[root] for root in taxonomy.roots if taxonomy.get(root).pos == pos
        )
    ic = {}
    for sid in taxonomy:
        pos = taxonomy.get(sid).pos
        ic[sid] = -math.log(smoothed[sid] / norm[pos]) if norm[pos] > 0 else 0.0
    return ICTable(ic=ic, counts=smoothed)


def information_content(docs: Iterable[Document], taxonomy: Taxonomy) -> ICTable:
    """Estimate information content from a sense-annotated corpus.

    Every NP with a resolvable sense key contributes one occurrence to its
    synset and to each ancestor (once per occurrence).  Gold labels are not
    needed; this is a plain frequency estimate.
    """
    raw: dict[str, float] = {}
    for _, np in iter_nps(docs):
        if np.sense_key is None or np.sense_key not in taxonomy:
            continue
        for sid in taxonomy.ancestors(np.sense_key, include_self=True):
            raw[sid] = raw.get(sid, 0.0) + 1.0
    return _ic_from_counts(raw, taxonomy)


def load_counts(path, taxonomy: Taxonomy) -> ICTable:
    """Read a COUNT<TAB>synset_id<TAB>value file of direct occurrence counts.

    Counts are propagated to ancestors and smoothed exactly as corpus
    counts would be, so an external frequency source slots in unchanged.
    """
    direct: dict[str, float] = {}
    with open(path, encoding="utf-8") as handle:
        for lineno, rawline in enumerate(handle, 1):
            line = rawline.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            fields = line.split("\t")
            if len(fields) != 3 or fields[0] != "COUNT":
                raise ValueError(f"line {lineno}: expected COUNT<TAB>id<TAB>value")
            sid, value = fields[1], fields[2]
            if sid not in taxonomy:
                raise ValueError(f"line {lineno}: unknown synset {sid}")
            direct[sid] = direct.get(sid, 0.0) + float(value)
    raw: dict[str, float] = {}
    for sid, count in direct.items():
        for anc in taxonomy.ancestors(sid, include_self=True):
            raw[anc] = raw.get(anc, 0.0) + count
    return _ic_from_counts(raw, taxonomy)


class SenseWeighting:
    """Normalized per-sense weights, keyed by (lemma, synset id).

    Lemmas without stored weights report None, which consumers treat as
    plain unweighted counting.
    """

    def __init__(self, weights: Mapping[tuple[str, str], float]):
        self._weights = dict(weights)

    def weight(self, lemma: str, sid: str) -> float | None:
        return self._weights.get((lemma, sid))

    def for_lemma(self, lemma: str, sense_ids: Iterable[str]) -> dict[str, float] | None:
        out = {}
        for sid in sense_ids:
            w = self._weights.get((lemma, sid))
            if w is None:
                return None
            out[sid] = w
        return out if out else None

    @classmethod
    def uniform(cls, taxonomy: Taxonomy) -> "SenseWeighting":
        """Equal weight on every sense of every lemma (nouns and verbs)."""
        weights = {}
        for pos in ("n", "v"):
            for lemma in taxonomy.lemmas(pos):
                senses = taxonomy.senses(lemma, pos)
                share = 1.0 / len(senses)
                for sid in senses:
                    weights[(lemma, sid)] = share
        return cls(weights)


def _most_informative_subsumer(
    senses_a: tuple[str, ...],
    senses_b: tuple[str, ...],
    taxonomy: Taxonomy,
    ic: ICTable,
) -> tuple[float, str] | None:
    """Best (ic, synset) over common subsumers of any sense pair.

    Ties on information content break toward the smaller synset id so the
    outcome never depends on iteration order.
    """
    best: tuple[float, str] | None = None
    for sa in senses_a:
        closure_a = taxonomy.ancestors(sa, include_self=True)
        for sb in senses_b:
            common = closure_a & taxonomy.ancestors(sb, include_self=True)
            for sub in common:
                value = ic.of(sub)
                if best is None or value > best[0] or (value == best[0] and sub < best[1]):
                    best = (value, sub)
    return best


def disambiguation_weights(
    nouns: Iterable[str],
    taxonomy: Taxonomy,
    ic: ICTable,
) -> SenseWeighting:
    """Weights for the senses of a document's nouns.

    The input is treated as a set; lemmas absent from the taxonomy are
    ignored.  Monosemous lemmas end up with weight 1 on their only sense,
    and a single-noun document yields uniform weights throughout.
    """
    lemmas = sorted({x for x in nouns if taxonomy.senses(x, NOUN)})
    support: dict[str, dict[str, float]] = {
        lemma: {sid: 0.0 for sid in taxonomy.senses(lemma, NOUN)} for lemma in lemmas
    }

    for i, lemma_a in enumerate(lemmas):
        senses_a = taxonomy.senses(lemma_a, NOUN)
        for lemma_b in lemmas[i + 1:]:
            senses_b = taxonomy.senses(lemma_b, NOUN)
            best = _most_informative_subsumer(senses_a, senses_b, taxonomy, ic)
            if best is None:
                continue
            value, subsumer = best
            for lemma, senses in ((lemma_a, senses_a), (lemma_b, senses_b)):
                for sid in senses:
                    if subsumer in taxonomy.ancestors(sid, include_self=True):
                        support[lemma][sid] += value

    weights: dict[tuple[str, str], float] = {}
    for lemma in lemmas:
        per_sense = support[lemma]
        total = sum(per_sense.values())
        if total > 0.0:
            for sid, value in per_sense.items():
                weights[(lemma, sid)] = value / total
        else:
            share = 1.0 / len(per_sense)
            for sid in per_sense:
                weights[(lemma, sid)] = share
    return SenseWeighting(weights)


def document_weights(doc: Document, taxonomy: Taxonomy, ic: ICTable) -> SenseWeighting:
    """Disambiguation weights over the head lemmas of one document."""
    return disambiguation_weights(
        {np.head_lemma for np in doc.nps}, taxonomy, ic
    )


def weighted_counts(
    lemma: str,
    weighting: SenseWeighting,
    enriched: EnrichedTaxonomy,
    beginners: BeginnerClass = BeginnerClass(),
    pos: str = NOUN,
) -> tuple[float, float]:
    """Weighted animate/inanimate sense mass for one lemma.

    Each sense resolves through the enriched statuses (with the ancestor
    and unique-beginner fallbacks); its weight lands on the corresponding
    side.  With normalized weights the two sides sum to 1 for any lemma
    the taxonomy knows.  A lemma without stored weights falls back to
    uniform shares, which reproduces plain sense counting as a ratio.
    """
    senses = enriched.base.senses(lemma, pos)
    if not senses:
        return (0.0, 0.0)
    stored = weighting.for_lemma(lemma, senses)
    animate_mass = 0.0
    inanimate_mass = 0.0
    for sid in senses:
        share = stored[sid] if stored is not None else 1.0 / len(senses)
        if enriched.resolve_animate(sid, beginners):
            animate_mass += share
        else:
            inanimate_mass += share
    return (animate_mass, inanimate_mass)
