"""Frequent event-itemset mining over transactions.

mine_frequent is an FP-growth implementation; brute_force_frequent is the
deliberately unclever enumeration oracle it is tested against. Both return
exactly the itemsets whose support reaches the threshold, within the size
bounds, sorted by (support desc, items lexicographic).

The miner makes two passes over its input (global frequency count, then tree
build), so the input must be re-iterable; lists and the transaction-file
readers both are.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

from .ingest import Transaction


@dataclass(frozen=True)
class MiningConfig:
    min_support: int = 1
    min_items: int = 2
    max_items: int = 10

    def __post_init__(self):
        if self.min_support < 1:
            raise ValueError("min_support must be >= 1")
        if self.min_items < 1:
            raise ValueError("min_items must be >= 1")
        if self.min_items > self.max_items:
            raise ValueError("min_items must be <= max_items")


@dataclass(frozen=True)
class FrequentItemset:
    items: frozenset[str]
    support: int

    def sorted_items(self) -> tuple[str, ...]:
        return tuple(sorted(self.items))


class OracleGuardError(Exception):
    """brute_force_frequent refuses inputs large enough to explode."""


def _sort_result(itemsets: Iterable[FrequentItemset]) -> list[FrequentItemset]:
    return sorted(itemsets, key=lambda fs: (-fs.support, fs.sorted_items()))


class _FPNode:
    __slots__ = ("item", "count", "parent", "children", "next_link")

    def __init__(self, item: str | None, parent: "_FPNode | None"):
        self.item = item
        self.count = 0
        self.parent = parent
        self.children: dict[str, _FPNode] = {}
        self.next_link: _FPNode | None = None


class _FPTree:
    def __init__(self):
        self.root = _FPNode(None, None)
        self.header: dict[str, _FPNode] = {}  # item -> head of node link chain

    def insert(self, items: Iterable[str], count: int) -> None:
        node = self.root
        for item in items:
            child = node.children.get(item)
            if child is None:
                child = _FPNode(item, node)
                node.children[item] = child
                child.next_link = self.header.get(item)
                self.header[item] = child
            child.count += count
            node = child

    def item_counts(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for item, node in self.header.items():
            total = 0
            while node is not None:
                total += node.count
                node = node.next_link
            counts[item] = total
        return counts

    def prefix_paths(self, item: str) -> list[tuple[list[str], int]]:
        paths = []
        node = self.header.get(item)
        while node is not None:
            path = []
            cur = node.parent
            while cur is not None and cur.item is not None:
                path.append(cur.item)
                cur = cur.parent
            path.reverse()
            if path or node.count:
                paths.append((path, node.count))
            node = node.next_link
        return paths


def mine_frequent(transactions: Iterable[Transaction], config: MiningConfig) -> list[FrequentItemset]:
    """FP-growth. Support is the number of transactions containing the itemset."""
    # Pass 1: global item frequencies.
    frequency: dict[str, int] = {}
    for t in transactions:
        for item in t.items:
            frequency[item] = frequency.get(item, 0) + 1
    frequent_items = {i for i, c in frequency.items() if c >= config.min_support}
    if not frequent_items:
        return []
    # Descending global frequency, ties lexicographic: the classic, deterministic order.
    order = {item: rank for rank, item in enumerate(
        sorted(frequent_items, key=lambda i: (-frequency[i], i)))}

    # Pass 2: tree build.
    tree = _FPTree()
    for t in transactions:
        kept = sorted((i for i in t.items if i in frequent_items), key=order.__getitem__)
        if kept:
            tree.insert(kept, 1)

    results: list[FrequentItemset] = []

    def grow(tree: _FPTree, suffix: tuple[str, ...]) -> None:
        counts = tree.item_counts()
        local = [(item, c) for item, c in counts.items() if c >= config.min_support]
        # Mine items in reverse global order so each conditional tree only
        # contains items that precede the suffix head.
        for item, support in sorted(local, key=lambda ic: -order[ic[0]]):
            itemset = (item,) + suffix
            if len(itemset) >= config.min_items:
                results.append(FrequentItemset(frozenset(itemset), support))
            if len(itemset) >= config.max_items:
                continue
            conditional = _FPTree()
            for path, count in tree.prefix_paths(item):
                kept = [i for i in path if counts.get(i, 0) >= config.min_support]
                if kept:
                    conditional.insert(kept, count)
            if conditional.header:
                grow(conditional, itemset)

    grow(tree, ())
    return _sort_result(results)


def brute_force_frequent(transactions: Iterable[Transaction], config: MiningConfig) -> list[FrequentItemset]:
    """Enumerate every candidate subset of the item universe and count support
    directly. Guarded against combinatorial explosion; test oracle only."""
    tx_sets = [t.items for t in transactions]
    if len(tx_sets) > 1000:
        raise OracleGuardError(f"{len(tx_sets)} transactions exceeds the oracle guard (1000)")
    universe = sorted(set().union(*tx_sets)) if tx_sets else []
    if len(universe) > 16:
        raise OracleGuardError(f"{len(universe)} distinct items exceeds the oracle guard (16)")
    results = []
    top = min(config.max_items, len(universe))
    for size in range(config.min_items, top + 1):
        for combo in itertools.combinations(universe, size):
            candidate = frozenset(combo)
            support = sum(1 for t in tx_sets if candidate <= t)
            if support >= config.min_support:
                results.append(FrequentItemset(candidate, support))
    return _sort_result(results)


def write_itemsets(itemsets: Iterable[FrequentItemset], path) -> None:
    """Itemsets file: 'support<TAB>item item ...' per line."""
    from pathlib import Path
    with Path(path).open("w", encoding="utf-8") as handle:
        for fs in itemsets:
            handle.write(f"{fs.support}\t{' '.join(fs.sorted_items())}\n")


def read_itemsets(path) -> list[FrequentItemset]:
    from pathlib import Path
    out = []
    with Path(path).open("r", encoding="utf-8") as handle:
        for line in handle:
            line = line.rstrip("\n")
            if not line:
                continue
            support, items = line.split("\t")
            out.append(FrequentItemset(frozenset(items.split()), int(support)))
    return out
