"""Corpus-driven animacy statuses for every synset of a taxonomy.

Sense-annotated NP occurrences are counted at their synset and at every
hypernym ancestor (once per occurrence, even when diamond structure offers
several paths).  Verb synsets are counted through the gold animacy of the
subjects governed by the verb; with no verb sense annotation available,
each occurrence credits every sense of the verb lemma.

A synset whose observed occurrences are all of one class takes that class
outright.  A synset with mixed evidence is tested twice with a goodness-of
-fit statistic over its observed hyponyms: once against the hypothesis
that every occurrence below it is animate, once against the inanimate
mirror.  Passing exactly one test decides the synset; passing neither (or
failing the expected-frequency validity rule) leaves it Undecided, as does
having no observed evidence at all.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from scipy.special import gammainccinv

from .corpus import Document, Label, iter_nps
from .taxonomy import VERB, BeginnerClass, Taxonomy

# Validity rule for the goodness-of-fit test: at most this fraction of
# cells may have an expected frequency below the floor.
LOW_EXPECTED_FLOOR = 5.0
MAX_LOW_EXPECTED_FRACTION = 0.20


class Status(str, enum.Enum):
    ANIMATE = "A"
    INANIMATE = "I"
    UNDECIDED = "U"

    def __str__(self) -> str:
        return self.value


class SynsetCounts:
    """Per-synset animate/inanimate occurrence counts (direct + inherited)."""

    def __init__(self):
        self._counts: dict[str, list[int]] = {}

    def add(self, sid: str, animate: bool, amount: int = 1) -> None:
        cell = self._counts.setdefault(sid, [0, 0])
        cell[0 if animate else 1] += amount

    def animate(self, sid: str) -> int:
        return self._counts.get(sid, (0, 0))[0]

    def inanimate(self, sid: str) -> int:
        return self._counts.get(sid, (0, 0))[1]

    def total(self, sid: str) -> int:
        pair = self._counts.get(sid, (0, 0))
        return pair[0] + pair[1]

    def observed_ids(self) -> tuple[str, ...]:
        return tuple(self._counts)


@dataclass(frozen=True)
class Cell:
    """One contingency cell: a hyponym's observed count of the hypothesis
    class against its total occurrence count (the expected value)."""

    sid: str
    observed: int
    expected: int

    def __post_init__(self):
        if self.expected < 1:
            # an expected frequency below one would mean the sense never
            # occurred, in which case it must not be a cell at all
            raise ValueError(f"cell {self.sid}: expected frequency < 1")
        if not 0 <= self.observed <= self.expected:
            raise ValueError(f"cell {self.sid}: observed outside [0, expected]")


@dataclass(frozen=True)
class ChiSquareResult:
    statistic: float
    df: int
    valid: bool
    cells: tuple[Cell, ...]  # cells after low-frequency merging


def _low_fraction(cells: Iterable[Cell]) -> float:
    cells = list(cells)
    low = sum(1 for c in cells if c.expected < LOW_EXPECTED_FLOOR)
    return low / len(cells) if cells else 0.0


def _mergeable_pair(cells: list[Cell]) -> tuple[int, int] | None:
    """Indices of the two lowest-expected similar cells, if any.

    Two cells are similar when they agree on which attribute is zero:
    either both observed nothing of the hypothesis class, or both observed
    nothing of its complement.  Ties are broken by cell id so merging is
    deterministic.
    """
    groups = {
        "zero_observed": [i for i, c in enumerate(cells) if c.observed == 0],
        "zero_complement": [i for i, c in enumerate(cells) if c.observed == c.expected],
    }
    best: tuple[tuple[int, str, int, str], tuple[int, int]] | None = None
    for members in groups.values():
        if len(members) < 2:
            continue
        ranked = sorted(members, key=lambda i: (cells[i].expected, cells[i].sid))
        a, b = ranked[0], ranked[1]
        rank = (
            cells[a].expected, cells[a].sid, cells[b].expected, cells[b].sid,
        )
        if best is None or rank < best[0]:
            best = (rank, (a, b))
    return best[1] if best else None


def merge_low_frequency(cells: Iterable[Cell]) -> tuple[Cell, ...]:
    """Merge similar low-frequency cells until the validity rule is met.

    While more than the allowed fraction of cells has an expected frequency
    under the floor, the two lowest-expected similar cells are combined.
    Stops as soon as the table complies or no similar pair remains.
    """
    merged = list(cells)
    while _low_fraction(merged) > MAX_LOW_EXPECTED_FRACTION:
        pair = _mergeable_pair(merged)
        if pair is None:
            break
        a, b = sorted(pair)
        combined = Cell(
            sid=f"{merged[a].sid}+{merged[b].sid}",
            observed=merged[a].observed + merged[b].observed,
            expected=merged[a].expected + merged[b].expected,
        )
        merged[a] = combined
        del merged[b]
    return tuple(merged)


def chi_square(cells: Iterable[Cell]) -> ChiSquareResult:
    """Goodness-of-fit statistic over the (merged) contingency cells.

    Validity is a result, not an error: the test is invalid when, even
    after merging, more than 20% of the expected frequencies fall below 5.
    """
    merged = merge_low_frequency(cells)
    statistic = 0.0
    for cell in merged:
        diff = cell.observed - cell.expected
        statistic += diff * diff / cell.expected
    valid = _low_fraction(merged) <= MAX_LOW_EXPECTED_FRACTION
    return ChiSquareResult(statistic, len(merged) - 1, valid, merged)


@lru_cache(maxsize=None)
def chi2_critical(df: int, alpha: float = 0.05) -> float:
    """Upper critical value: the x with P(X >= x) = alpha for df degrees of
    freedom, from the regularized upper incomplete gamma function."""
    if df < 1:
        raise ValueError("df must be >= 1")
    return float(2.0 * gammainccinv(df / 2.0, alpha))


def accumulate_counts(
    docs: Iterable[Document],
    taxonomy: Taxonomy,
) -> tuple[SynsetCounts, list[tuple[str, int, int, str]]]:
    """Count annotated occurrences into the taxonomy.

    Nouns need both a gold label and a sense key; the key's synset and all
    of its ancestors receive one increment per occurrence.  Subjects with a
    known governing verb additionally credit the union of that verb's
    senses and their ancestors.  Returns the counts plus a list of skipped
    records whose sense key did not resolve, as (doc, sent, np, sense).
    """
    counts = SynsetCounts()
    skipped: list[tuple[str, int, int, str]] = []
    for doc, np in iter_nps(docs):
        if np.gold is None:
            continue
        animate = np.gold is Label.ANIMATE
        if np.sense_key is not None:
            if np.sense_key not in taxonomy:
                skipped.append((np.doc_id, np.sent_id, np.np_id, np.sense_key))
            else:
                for sid in taxonomy.ancestors(np.sense_key, include_self=True):
                    counts.add(sid, animate)
        if np.is_subject and np.verb_lemma is not None:
            touched: set[str] = set()
            for vid in taxonomy.senses(np.verb_lemma, VERB):
                touched |= taxonomy.ancestors(vid, include_self=True)
            for sid in touched:
                counts.add(sid, animate)
    return counts, skipped


def _table_for(node: str, counts: SynsetCounts, taxonomy: Taxonomy,
               animate_hypothesis: bool) -> list[Cell]:
    cells = []
    for child in taxonomy.hyponyms(node):
        total = counts.total(child)
        if total == 0:
            continue
        observed = counts.animate(child) if animate_hypothesis else counts.inanimate(child)
        cells.append(Cell(sid=child, observed=observed, expected=total))
    return cells


def _test_passes(cells: list[Cell], alpha: float) -> bool:
    if not cells:
        return False
    result = chi_square(cells)
    if not result.valid or result.df < 1:
        return False
    return result.statistic < chi2_critical(result.df, alpha)


def classify_node(
    node: str,
    counts: SynsetCounts,
    taxonomy: Taxonomy,
    alpha: float = 0.05,
) -> Status:
    """Status of one synset from the accumulated counts.

    Unanimous observations settle the node directly.  Otherwise the animate
    and inanimate hypotheses are tested over the observed hyponyms; if both
    pass (possible at tiny counts) the larger observed proportion wins and
    an exact tie stays Undecided.
    """
    ani = counts.animate(node)
    inani = counts.inanimate(node)
    if ani == 0 and inani == 0:
        return Status.UNDECIDED
    if inani == 0:
        return Status.ANIMATE
    if ani == 0:
        return Status.INANIMATE

    animate_ok = _test_passes(_table_for(node, counts, taxonomy, True), alpha)
    inanimate_ok = _test_passes(_table_for(node, counts, taxonomy, False), alpha)
    if animate_ok and inanimate_ok:
        if ani > inani:
            return Status.ANIMATE
        if inani > ani:
            return Status.INANIMATE
        return Status.UNDECIDED
    if animate_ok:
        return Status.ANIMATE
    if inanimate_ok:
        return Status.INANIMATE
    return Status.UNDECIDED


class EnrichedTaxonomy:
    """A taxonomy plus one animacy status per synset."""

    def __init__(self, base: Taxonomy, status: dict[str, Status]):
        for sid in status:
            if sid not in base:
                raise ValueError(f"status for unknown synset {sid}")
        self.base = base
        self._status = {sid: status.get(sid, Status.UNDECIDED) for sid in base}

    def status(self, sid: str) -> Status:
        self.base.get(sid)
        return self._status[sid]

    def coverage(self) -> float:
        """Fraction of synsets carrying a decided status."""
        if len(self.base) == 0:
            return 0.0
        decided = sum(1 for s in self._status.values() if s is not Status.UNDECIDED)
        return decided / len(self.base)

    def resolve_animate(self, sid: str, beginners: BeginnerClass) -> bool:
        """Animacy of one sense, with fallbacks for Undecided statuses.

        An Undecided sense takes the status of the nearest decided
        ancestor; when the nearest decided ancestors disagree, or when no
        ancestor is decided, the unique-beginner class has the final say.
        """
        status = self.status(sid)
        if status is not Status.UNDECIDED:
            return status is Status.ANIMATE
        seen = {sid}
        frontier = list(self.base.hypernyms(sid))
        while frontier:
            decided = [self._status[x] for x in frontier
                       if self._status[x] is not Status.UNDECIDED]
            animate = sum(1 for s in decided if s is Status.ANIMATE)
            inanimate = len(decided) - animate
            if animate > inanimate:
                return True
            if inanimate > animate:
                return False
            if decided:
                break  # equally many decided ancestors on each side
            seen.update(frontier)
            nxt: list[str] = []
            for node in frontier:
                for hyp in self.base.hypernyms(node):
                    if hyp not in seen and hyp not in nxt:
                        nxt.append(hyp)
            frontier = nxt
        syn = self.base.get(sid)
        return beginners.is_animate(self.base.beginner_of(sid), syn.pos)

    def __eq__(self, other) -> bool:
        if not isinstance(other, EnrichedTaxonomy):
            return NotImplemented
        return self.base == other.base and self._status == other._status


def enrich(
    taxonomy: Taxonomy,
    docs: Iterable[Document],
    alpha: float = 0.05,
) -> EnrichedTaxonomy:
    """Classify every synset from a gold- and sense-annotated corpus.

    The per-node decision depends only on the accumulated counts, so the
    outcome is independent of traversal order.
    """
    counts, _ = accumulate_counts(docs, taxonomy)
    status = {
        sid: classify_node(sid, counts, taxonomy, alpha) for sid in taxonomy
    }
    return EnrichedTaxonomy(taxonomy, status)


def dump_statuses(enriched: EnrichedTaxonomy) -> str:
    lines = [
        "STATUS\t%s\t%s" % (sid, enriched.status(sid).value)
        for sid in enriched.base
    ]
    return "\n".join(lines) + "\n" if lines else ""


def save_enriched(enriched: EnrichedTaxonomy, path) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(dump_statuses(enriched))


def load_enriched(path, base: Taxonomy) -> EnrichedTaxonomy:
    """Read STATUS lines produced by `save_enriched`.

    SYNSET lines and comments are skipped, so a combined taxonomy+status
    file loads with the same call.  Synsets without a STATUS line default
    to Undecided.
    """
    status: dict[str, Status] = {}
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, 1):
            line = raw.rstrip("\n")
            if not line or line.startswith("#") or line.startswith("SYNSET\t"):
                continue
            fields = line.split("\t")
            if fields[0] != "STATUS" or len(fields) != 3:
                raise ValueError(f"line {lineno}: expected STATUS record")
            sid, value = fields[1], fields[2]
            if sid not in base:
                raise ValueError(f"line {lineno}: status for unknown synset {sid}")
            status[sid] = Status(value)
    return EnrichedTaxonomy(base, status)
