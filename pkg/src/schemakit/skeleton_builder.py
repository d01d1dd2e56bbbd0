"""Turn mined itemsets into ranked skeleton schemas.

Pipeline: order each frequent itemset into a sequence under a pairwise
compatibility scorer, keep the best sequences with a per-event-type diversity
cap, join sequences into longer chains, and export a ranked curation queue.
The scorer is pluggable; the built-in default is positive PMI over event-type
co-occurrence in transactions (a stand-in: it is symmetric, while the scorer
contract treats cscore(a, b) as the aptness of b following a).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Protocol, Sequence

from .ingest import Transaction
from .mining import FrequentItemset
from .schema_model import SkeletonSchema


class PairScorer(Protocol):
    def cscore(self, e1: str, e2: str) -> float:
        """Aptness of e2 following e1. Total over the ontology; deterministic."""
        ...


@dataclass(frozen=True)
class CandidateSequence:
    events: tuple[str, ...]
    score: float
    origin: FrequentItemset | None = None


@dataclass(frozen=True)
class BuilderConfig:
    top_sequences: int = 100_000
    reuse_cap: int = 50
    top_chains: int = 1_000

    def __post_init__(self):
        if min(self.top_sequences, self.reuse_cap, self.top_chains) < 1:
            raise ValueError("all BuilderConfig fields must be positive")


class TableScorer:
    """Dense pairwise score table; file form is a TSV header of event ids
    followed by the matrix rows."""

    def __init__(self, event_ids: Sequence[str], matrix: Sequence[Sequence[float]],
                 default: float = 0.0):
        self._index = {e: i for i, e in enumerate(event_ids)}
        self._matrix = [list(map(float, row)) for row in matrix]
        self._default = default
        if len(self._matrix) != len(self._index):
            raise ValueError("matrix must be square over the header ids")

    def cscore(self, e1: str, e2: str) -> float:
        i, j = self._index.get(e1), self._index.get(e2)
        if i is None or j is None:
            return self._default
        return self._matrix[i][j]

    @classmethod
    def from_file(cls, path: str | Path) -> "TableScorer":
        lines = Path(path).read_text(encoding="utf-8").splitlines()
        header = lines[0].split("\t")
        matrix = [[float(x) for x in line.split("\t")] for line in lines[1:] if line]
        return cls(header, matrix)

    def write(self, path: str | Path) -> None:
        ids = sorted(self._index, key=self._index.__getitem__)
        with Path(path).open("w", encoding="utf-8") as handle:
            handle.write("\t".join(ids) + "\n")
            for row in self._matrix:
                handle.write("\t".join(repr(x) for x in row) + "\n")


class PmiScorer:
    """Positive PMI over event-type co-occurrence within transactions,
    with add-one smoothing. Symmetric by construction."""

    def __init__(self, pair_counts: dict[frozenset[str], int],
                 item_counts: dict[str, int], n_transactions: int):
        self._pairs = pair_counts
        self._items = item_counts
        self._n = n_transactions

    def cscore(self, e1: str, e2: str) -> float:
        joint = self._pairs.get(frozenset((e1, e2)), 0)
        if e1 == e2:
            joint = self._items.get(e1, 0)
        if joint == 0:
            return 0.0
        value = math.log(
            (joint + 1) * (self._n + 1)
            / ((self._items.get(e1, 0) + 1) * (self._items.get(e2, 0) + 1))
        )
        return max(0.0, value)


def default_scorer(transactions: Iterable[Transaction]) -> PmiScorer:
    pair_counts: dict[frozenset[str], int] = {}
    item_counts: dict[str, int] = {}
    n = 0
    for t in transactions:
        n += 1
        items = sorted(t.items)
        for item in items:
            item_counts[item] = item_counts.get(item, 0) + 1
        for a, b in itertools.combinations(items, 2):
            key = frozenset((a, b))
            pair_counts[key] = pair_counts.get(key, 0) + 1
    return PmiScorer(pair_counts, item_counts, n)


def score_sequence(events: Sequence[str], scorer: PairScorer) -> float:
    """Mean pairwise compatibility, pairs taken in sequence order:
    2/(N(N-1)) * sum over i<j of cscore(e_i, e_j)."""
    n = len(events)
    if n < 2:
        raise ValueError("sequence must have at least 2 events")
    total = 0.0
    for i in range(n - 1):
        for j in range(i + 1, n):
            total += scorer.cscore(events[i], events[j])
    return 2.0 * total / (n * (n - 1))


def order_itemset(itemset: FrequentItemset, scorer: PairScorer) -> CandidateSequence:
    """Order an itemset into a sequence: exhaustive argmax over permutations
    up to 6 items, greedy insertion above. Lexicographic tie-breaks."""
    items = sorted(itemset.items)
    if len(items) < 2:
        raise ValueError("itemset must have at least 2 items")
    if len(items) <= 6:
        best, best_score = None, -math.inf
        for perm in itertools.permutations(items):
            s = score_sequence(perm, scorer)
            if s > best_score:
                best, best_score = perm, s
        return CandidateSequence(best, best_score, itemset)
    seq = _greedy_order(items, scorer)
    return CandidateSequence(tuple(seq), score_sequence(seq, scorer), itemset)


def _greedy_order(items: list[str], scorer: PairScorer) -> list[str]:
    best_pair, best_score = None, -math.inf
    for a, b in itertools.permutations(items, 2):
        s = scorer.cscore(a, b)
        if s > best_score:
            best_pair, best_score = (a, b), s
    seq = list(best_pair)
    remaining = [i for i in items if i not in seq]
    for item in remaining:  # already lexicographically sorted
        best_pos, best_score = 0, -math.inf
        for pos in range(len(seq) + 1):
            candidate = seq[:pos] + [item] + seq[pos:]
            s = score_sequence(candidate, scorer)
            if s > best_score:
                best_pos, best_score = pos, s
        seq.insert(best_pos, item)
    return seq


def rank_and_diversify(candidates: Iterable[CandidateSequence],
                       config: BuilderConfig) -> list[CandidateSequence]:
    """Sort by score (ties lexicographic) and drop any sequence whose event
    types have all already been used reuse_cap times by kept higher-scoring
    sequences; truncate to top_sequences."""
    ordered = sorted(candidates, key=lambda c: (-c.score, c.events))
    usage: dict[str, int] = {}
    kept: list[CandidateSequence] = []
    for cand in ordered:
        if any(usage.get(ev, 0) < config.reuse_cap for ev in set(cand.events)):
            kept.append(cand)
            for ev in set(cand.events):
                usage[ev] = usage.get(ev, 0) + 1
        if len(kept) >= config.top_sequences:
            break
    return kept[: config.top_sequences]


def extend_chains(kept: Sequence[CandidateSequence], scorer: PairScorer,
                  config: BuilderConfig, event_types: Sequence[str]) -> list[SkeletonSchema]:
    """Join each kept sequence with the best follow-on sequence.

    For sequence S: find the event e* maximizing score(S + e*) over the whole
    event-type inventory; among other kept sequences starting with e*, append
    the best one (collapsing the duplicated join event); otherwise keep S.
    Chains are rescored, deduplicated, and the top_chains best returned.
    """
    if not kept:
        return []
    sorted_types = sorted(event_types)
    by_head: dict[str, list[CandidateSequence]] = {}
    for cand in sorted(kept, key=lambda c: (-c.score, c.events)):
        by_head.setdefault(cand.events[0], []).append(cand)

    chains: list[tuple[str, ...]] = []
    for cand in kept:
        best_event, best_score = None, -math.inf
        base = list(cand.events)
        for ev in sorted_types:
            s = score_sequence(base + [ev], scorer)
            if s > best_score:
                best_event, best_score = ev, s
        extension = None
        for other in by_head.get(best_event, ()):
            if other.events != cand.events:
                extension = other
                break
        if extension is None:
            chains.append(cand.events)
        else:
            joined = list(cand.events) + list(extension.events)
            deduped = [joined[0]]
            for ev in joined[1:]:
                if ev != deduped[-1]:
                    deduped.append(ev)
            chains.append(tuple(deduped))

    seen: set[tuple[str, ...]] = set()
    unique = []
    for chain in chains:
        if chain not in seen:
            seen.add(chain)
            unique.append(chain)
    rescored = sorted(
        ((score_sequence(chain, scorer), chain) for chain in unique),
        key=lambda sc: (-sc[0], sc[1]),
    )
    top = rescored[: config.top_chains]
    width = max(4, len(str(len(top))))
    return [
        SkeletonSchema(id=f"skel-{str(rank).zfill(width)}", events=chain, score=score)
        for rank, (score, chain) in enumerate(top, start=1)
    ]


def build_skeletons(itemsets: Iterable[FrequentItemset], scorer: PairScorer,
                    config: BuilderConfig, event_types: Sequence[str]) -> list[SkeletonSchema]:
    """Full builder pipeline: order, diversify, join."""
    candidates = [order_itemset(fs, scorer) for fs in itemsets if len(fs.items) >= 2]
    kept = rank_and_diversify(candidates, config)
    return extend_chains(kept, scorer, config, event_types)


def export_curation_queue(chains: Sequence[SkeletonSchema], out_dir: str | Path,
                          labels: dict[str, str] | None = None) -> tuple[Path, Path]:
    """Write skeletons.jsonl (machine-readable) and queue.txt (for the human
    curator: rank, score, event labels). Byte-stable across reruns."""
    import json

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    skeleton_path = out_dir / "skeletons.jsonl"
    queue_path = out_dir / "queue.txt"
    with skeleton_path.open("w", encoding="utf-8") as handle:
        for sk in chains:
            handle.write(json.dumps(
                {"id": sk.id, "score": sk.score, "events": list(sk.events)},
                sort_keys=True) + "\n")
    with queue_path.open("w", encoding="utf-8") as handle:
        for rank, sk in enumerate(chains, start=1):
            names = " -> ".join(labels.get(e, e) if labels else e for e in sk.events)
            handle.write(f"{rank}\t{sk.score:.6f}\t{sk.id}\t{names}\n")
    return skeleton_path, queue_path


def read_skeletons(path: str | Path) -> list[SkeletonSchema]:
    import json

    out = []
    with Path(path).open("r", encoding="utf-8") as handle:
        for line in handle:
            line = line.strip()
            if line:
                doc = json.loads(line)
                out.append(SkeletonSchema(doc["id"], tuple(doc["events"]), doc["score"]))
    return out
