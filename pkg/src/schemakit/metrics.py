"""Corpus coverage and ranking evaluation for schema libraries.

sim(d, s) follows multiset-on-the-document semantics: every event occurrence
in the document whose TYPE appears among the schema's step types counts toward
the numerator, and the denominator is the document's total occurrence count.
(Two Infect occurrences both match a schema that mentions Infect once.)
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .ingest import EventMultiset
from .schema_model import Schema

#: Stratum upper bound of None means "unbounded".
Interval = tuple[int, int | None]

UNION_STRATUM: Interval = (1, None)


def format_interval(interval: Interval) -> str:
    lo, hi = interval
    return f"[{lo};{'inf' if hi is None else hi})"


def parse_strata(text: str) -> list[Interval]:
    """Parse '1:5,5:10,10:' into [(1,5), (5,10), (10,None)]."""
    out: list[Interval] = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        lo, _, hi = part.partition(":")
        out.append((int(lo), int(hi) if hi else None))
    return out


def in_interval(n: int, interval: Interval) -> bool:
    lo, hi = interval
    return n >= lo and (hi is None or n < hi)


def sim(doc_multiset: EventMultiset, schema: Schema | Iterable[str]) -> float:
    """Fraction of the document's event occurrences whose type the schema mentions.

    Zero for documents with no events (documented convention).
    """
    schema_types = (
        frozenset(schema.event_types()) if isinstance(schema, Schema) else frozenset(schema)
    )
    total = doc_multiset.total
    if total == 0:
        return 0.0
    matched = sum(count for etype, count in doc_multiset.counts if etype in schema_types)
    return matched / total


@dataclass(frozen=True)
class SimilarityScore:
    doc_id: str
    schema_id: str
    value: float


@dataclass(frozen=True)
class CoverageReport:
    strata: tuple[tuple[Interval, dict[float, float]], ...]
    thresholds: tuple[float, ...]
    library_id: str = ""
    corpus_id: str = ""

    def at(self, interval: Interval, threshold: float) -> float:
        for iv, values in self.strata:
            if iv == interval:
                return values[threshold]
        raise KeyError(interval)


def coverage(
    corpus: Sequence[EventMultiset],
    library: Sequence[Schema],
    thresholds: Sequence[float],
    strata: Sequence[Interval] = (),
    library_id: str = "",
    corpus_id: str = "",
) -> CoverageReport:
    """Cov@t per stratum: the fraction of stratum documents for which at least
    one library schema reaches similarity t. The union stratum [1, inf) is
    always reported last."""
    if not corpus:
        raise ValueError("empty corpus")
    for t in thresholds:
        if not 0.0 < t <= 1.0:
            raise ValueError(f"threshold {t} outside (0, 1]")
    type_sets = [frozenset(s.event_types()) for s in library]
    best: list[float] = []
    for doc in corpus:
        best.append(max((sim(doc, ts) for ts in type_sets), default=0.0))
    all_strata = list(strata) + [UNION_STRATUM]
    rows = []
    for interval in all_strata:
        member = [b for doc, b in zip(corpus, best) if in_interval(doc.total, interval)]
        values = {
            t: (sum(1 for b in member if b >= t) / len(member) if member else 0.0)
            for t in thresholds
        }
        rows.append((interval, values))
    return CoverageReport(
        strata=tuple(rows),
        thresholds=tuple(thresholds),
        library_id=library_id,
        corpus_id=corpus_id,
    )


def rank_schemas(doc: EventMultiset, library: Sequence[Schema]) -> list[tuple[str, float]]:
    """Schemas by descending sim against the document; ties broken by schema id."""
    scored = [(s.id, sim(doc, s)) for s in library]
    return sorted(scored, key=lambda pair: (-pair[1], pair[0]))


def rank_documents(schema: Schema, corpus: Sequence[EventMultiset]) -> list[tuple[str, float]]:
    types = frozenset(schema.event_types())
    scored = [(d.doc_id, sim(d, types)) for d in corpus]
    return sorted(scored, key=lambda pair: (-pair[1], pair[0]))


# --- rank aggregation ------------------------------------------------------


def avg_rank(ranks: Sequence[int]) -> float:
    if not ranks:
        raise ValueError("no ranks")
    return sum(ranks) / len(ranks)


def mrr(ranks: Sequence[int]) -> float:
    if not ranks:
        raise ValueError("no ranks")
    return sum(1.0 / r for r in ranks) / len(ranks)


def recall_at_k(ranks: Sequence[int], k: int) -> float:
    if not ranks:
        raise ValueError("no ranks")
    return sum(1 for r in ranks if r <= k) / len(ranks)


def ndcg(ranked_ids: Sequence[str], gold: Iterable[str]) -> float:
    """Binary-gain nDCG with 1/log2(rank + 1) discount, normalized by the
    ideal ordering of the gold set."""
    gold = set(gold)
    if not gold:
        raise ValueError("no gold items")
    dcg = sum(
        1.0 / math.log2(rank + 1)
        for rank, item in enumerate(ranked_ids, start=1)
        if item in gold
    )
    ideal = sum(1.0 / math.log2(rank + 1)
                for rank in range(1, min(len(gold), len(ranked_ids)) + 1))
    return dcg / ideal if ideal else 0.0


@dataclass(frozen=True)
class RankingSlice:
    n_queries: int
    avg_rank: float | None
    mrr: float | None
    recall_at: dict[int, float]
    ndcg: float | None


@dataclass(frozen=True)
class RankingReport:
    overall: RankingSlice
    strata: tuple[tuple[Interval, RankingSlice], ...] = ()


def _slice_for_queries(queries: list[tuple[list[tuple[str, float]], set[str]]],
                       recall_ks: Sequence[int]) -> RankingSlice:
    """Each query is (ranked (id, sim) list, gold id set). Gold ranks are
    1-based positions. nDCG is macro-averaged; queries keep all their golds."""
    if not queries:
        return RankingSlice(0, None, None, {k: 0.0 for k in recall_ks}, None)
    first_ranks: list[int] = []
    mean_gold_ranks: list[float] = []
    recall_fracs: dict[int, list[float]] = {k: [] for k in recall_ks}
    ndcgs: list[float] = []
    for ranked, gold in queries:
        positions = [rank for rank, (item, _) in enumerate(ranked, start=1) if item in gold]
        if not positions:
            continue
        first_ranks.append(positions[0])
        mean_gold_ranks.append(sum(positions) / len(positions))
        for k in recall_ks:
            recall_fracs[k].append(sum(1 for p in positions if p <= k) / len(positions))
        ndcgs.append(ndcg([item for item, _ in ranked], gold))
    if not first_ranks:
        return RankingSlice(0, None, None, {k: 0.0 for k in recall_ks}, None)
    n = len(first_ranks)
    return RankingSlice(
        n_queries=n,
        avg_rank=sum(mean_gold_ranks) / n,
        mrr=sum(1.0 / r for r in first_ranks) / n,
        recall_at={k: sum(v) / n for k, v in recall_fracs.items()},
        ndcg=sum(ndcgs) / n,
    )


def schema_ranking_report(
    corpus: Sequence[EventMultiset],
    library: Sequence[Schema],
    gold: dict[str, str],  # doc id -> gold schema id
    strata: Sequence[Interval] = (),
    recall_ks: Sequence[int] = (10,),
) -> RankingReport:
    """Per document with a gold label, rank the library and score the gold
    schema's position."""
    queries_by_doc = {}
    for doc in corpus:
        if doc.doc_id in gold:
            queries_by_doc[doc.doc_id] = (doc, rank_schemas(doc, library), {gold[doc.doc_id]})
    # Aggregate in doc-id order so results are independent of corpus order.
    ordered = [queries_by_doc[doc_id] for doc_id in sorted(queries_by_doc)]
    rows = []
    for interval in list(strata) + [UNION_STRATUM]:
        queries = [
            (ranked, g) for doc, ranked, g in ordered if in_interval(doc.total, interval)
        ]
        rows.append((interval, _slice_for_queries(queries, recall_ks)))
    overall = _slice_for_queries([(ranked, g) for _, ranked, g in ordered], recall_ks)
    return RankingReport(overall=overall, strata=tuple(rows))


def document_ranking_report(
    corpus: Sequence[EventMultiset],
    library: Sequence[Schema],
    gold: dict[str, str],  # doc id -> gold schema id
    strata: Sequence[Interval] = (),
    recall_ks: Sequence[int] = (30,),
) -> RankingReport:
    """Per schema, rank the corpus documents and score its gold documents'
    positions. Schemas with no gold documents in a stratum are excluded from
    that stratum's mean."""
    gold_docs: dict[str, set[str]] = {}
    for doc_id, schema_id in gold.items():
        gold_docs.setdefault(schema_id, set()).add(doc_id)

    def queries_for(docs: Sequence[EventMultiset]):
        doc_ids = {d.doc_id for d in docs}
        out = []
        # Schema-id order keeps aggregation independent of library order.
        for schema in sorted(library, key=lambda s: s.id):
            relevant = gold_docs.get(schema.id, set()) & doc_ids
            if relevant:
                out.append((rank_documents(schema, docs), relevant))
        return out

    rows = []
    for interval in list(strata) + [UNION_STRATUM]:
        member = [d for d in corpus if in_interval(d.total, interval)]
        rows.append((interval, _slice_for_queries(queries_for(member), recall_ks)))
    overall = _slice_for_queries(queries_for(corpus), recall_ks)
    return RankingReport(overall=overall, strata=tuple(rows))
