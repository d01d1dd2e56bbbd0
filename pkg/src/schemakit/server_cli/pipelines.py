"""Shared job implementations invoked by both the CLI and the HTTP job API.

Every pipeline is a pure function of (inputs, config, seed) writing its
outputs under a caller-chosen directory, so reruns with the same config are
byte-identical.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Sequence

from ..inference import GroundingConfig, infer_corpus, write_match_results
from ..ingest import (
    DocumentGraph,
    EventTypeMapping,
    apply_mapping,
    build_transactions,
    event_multiset,
    iter_corpus,
    load_mapping,
    read_transactions,
    write_transactions,
)
from ..intrusion import export_tasks, generate_tasks, read_responses, score_responses
from ..metrics import (
    RankingReport,
    coverage,
    document_ranking_report,
    format_interval,
    parse_strata,
    schema_ranking_report,
)
from ..mining import MiningConfig, mine_frequent, read_itemsets, write_itemsets
from ..ontology import Ontology
from ..schema_model import Schema
from ..skeleton_builder import (
    BuilderConfig,
    TableScorer,
    build_skeletons,
    default_scorer,
    export_curation_queue,
)


def load_corpus(path: str | Path, ontology: Ontology,
                mapping_path: str | Path | None = None) -> tuple[list[DocumentGraph], int]:
    """Load documents and bring them onto the target ontology; events with no
    rule and no ontology entry are dropped. Returns (documents, drop tally)."""
    if mapping_path is not None:
        mapping = load_mapping(Path(mapping_path).read_bytes(), ontology)
    else:
        mapping = EventTypeMapping(rules={}, known_targets=frozenset(ontology.event_type_ids))
    docs = []
    dropped = 0
    for doc in iter_corpus(path):
        mapped, n = apply_mapping(doc, mapping)
        docs.append(mapped)
        dropped += n
    return docs, dropped


def run_extract_transactions(corpus_path, ontology, out_path,
                             mapping_path=None) -> dict:
    docs, dropped = load_corpus(corpus_path, ontology, mapping_path)
    transactions = [t for doc in docs for t in build_transactions(doc)]
    write_transactions(transactions, out_path)
    return {"documents": len(docs), "transactions": len(transactions),
            "dropped_events": dropped}


def run_mine(transactions_path, out_path, min_support=1, min_items=2,
             max_items=10) -> dict:
    transactions = read_transactions(transactions_path)
    config = MiningConfig(min_support=min_support, min_items=min_items,
                          max_items=max_items)
    itemsets = mine_frequent(transactions, config)
    write_itemsets(itemsets, out_path)
    return {"transactions": len(transactions), "itemsets": len(itemsets)}


def run_build_skeletons(itemsets_path, out_dir, ontology: Ontology,
                        scorer_spec: str = "pmi",
                        transactions_path=None,
                        top_sequences=100_000, reuse_cap=50,
                        top_chains=1_000) -> dict:
    """scorer_spec: 'pmi' (needs transactions) or 'table:<path>'."""
    itemsets = read_itemsets(itemsets_path)
    if scorer_spec == "pmi":
        if transactions_path is None:
            raise ValueError("pmi scorer needs a transactions file")
        scorer = default_scorer(read_transactions(transactions_path))
    elif scorer_spec.startswith("table:"):
        scorer = TableScorer.from_file(scorer_spec.split(":", 1)[1])
    else:
        raise ValueError(f"unknown scorer {scorer_spec!r}")
    config = BuilderConfig(top_sequences=top_sequences, reuse_cap=reuse_cap,
                           top_chains=top_chains)
    chains = build_skeletons(itemsets, scorer, config, ontology.event_type_ids)
    labels = {e.id: e.label for e in ontology.event_types}
    skeleton_path, queue_path = export_curation_queue(chains, out_dir, labels)
    return {"itemsets": len(itemsets), "chains": len(chains),
            "skeletons": str(skeleton_path), "queue": str(queue_path)}


def render_coverage_table(report) -> str:
    lines = []
    header = "N_events".ljust(12) + "".join(f"Cov@{t:g}".rjust(10) for t in report.thresholds)
    lines.append(header)
    for interval, values in report.strata:
        row = format_interval(interval).ljust(12)
        row += "".join(f"{values[t]:.3f}".rjust(10) for t in report.thresholds)
        lines.append(row)
    return "\n".join(lines) + "\n"


def run_coverage(corpus_path, library: Sequence[Schema], ontology: Ontology,
                 thresholds=(0.5, 0.7, 0.9), strata_spec="1:5,5:10,10:",
                 mapping_path=None, out_path=None) -> dict:
    docs, _ = load_corpus(corpus_path, ontology, mapping_path)
    multisets = [event_multiset(d) for d in docs]
    report = coverage(multisets, library, list(thresholds), parse_strata(strata_spec))
    table = render_coverage_table(report)
    if out_path is not None:
        Path(out_path).write_text(table)
    return {
        "table": table,
        "strata": [
            {"interval": format_interval(iv), "coverage": {str(t): v for t, v in vals.items()}}
            for iv, vals in report.strata
        ],
    }


def read_gold_labels(path) -> dict[str, str]:
    """Gold file: 'doc_id<TAB>schema_id' per line."""
    gold = {}
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if not line:
            continue
        doc_id, schema_id = line.split("\t")
        gold[doc_id] = schema_id
    return gold


def render_ranking_report(report: RankingReport, recall_ks: Sequence[int]) -> str:
    def fmt(value, places=3):
        return "-" if value is None else f"{value:.{places}f}"

    lines = []
    header = ("N_events".ljust(12) + "AvgRank".rjust(9) + "MRR".rjust(8)
              + "".join(f"R@{k}".rjust(8) for k in recall_ks) + "nDCG".rjust(8)
              + "n".rjust(6))
    lines.append(header)
    for interval, s in report.strata:
        row = format_interval(interval).ljust(12)
        row += fmt(s.avg_rank, 1).rjust(9) + fmt(s.mrr).rjust(8)
        row += "".join(fmt(s.recall_at.get(k)).rjust(8) for k in recall_ks)
        row += fmt(s.ndcg).rjust(8) + str(s.n_queries).rjust(6)
        lines.append(row)
    return "\n".join(lines) + "\n"


def run_rank(corpus_path, library: Sequence[Schema], ontology: Ontology,
             gold_path, mode="schemas", strata_spec="1:5,5:10,10:",
             mapping_path=None, out_path=None) -> dict:
    docs, _ = load_corpus(corpus_path, ontology, mapping_path)
    multisets = [event_multiset(d) for d in docs]
    gold = read_gold_labels(gold_path)
    strata = parse_strata(strata_spec)
    if mode == "schemas":
        ks = (10,)
        report = schema_ranking_report(multisets, library, gold, strata, recall_ks=ks)
    elif mode == "documents":
        ks = (30,)
        report = document_ranking_report(multisets, library, gold, strata, recall_ks=ks)
    else:
        raise ValueError(f"unknown rank mode {mode!r}")
    table = render_ranking_report(report, ks)
    if out_path is not None:
        Path(out_path).write_text(table)
    return {"table": table, "mode": mode}


def run_infer(corpus_path, library: Sequence[Schema], ontology: Ontology,
              out_path, top_k=5, mapping_path=None,
              max_bindings=512, unk_truth=0.1) -> dict:
    docs, _ = load_corpus(corpus_path, ontology, mapping_path)
    results = infer_corpus(
        library, docs, top_k=top_k,
        config=GroundingConfig(max_bindings=max_bindings, unk_truth=unk_truth))
    log_path = Path(out_path).with_suffix(".log")
    write_match_results(results, out_path, log_path)
    return {"documents": len(docs), "matches": len(results),
            "out": str(out_path), "log": str(log_path)}


def load_match_bindings(path) -> dict:
    """Read matches.jsonl into the shape the corpus intruder sampler needs:
    (doc id, schema id) -> participant-to-entity bindings, positive-confidence
    matches only."""
    bindings = {}
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if not line.strip():
            continue
        rec = json.loads(line)
        if rec["theta"] > 0:
            bindings[(rec["doc_id"], rec["schema_id"])] = {
                p: e for p, e in rec["bindings"].items()
            }
    return bindings


def run_intrusion_gen(library: Sequence[Schema], out_dir, method="library",
                      seed=0, corpus_path=None, ontology=None,
                      matches_path=None, mapping_path=None) -> dict:
    matched_bindings = None
    doc_event_counts = None
    if method == "corpus":
        if corpus_path is None or matches_path is None:
            raise ValueError("corpus method needs --corpus and --matches")
        docs, _ = load_corpus(corpus_path, ontology, mapping_path)
        doc_event_counts = {d.doc_id: len(d.events) for d in docs}
        matched_bindings = load_match_bindings(matches_path)
    tasks, skipped = generate_tasks(
        library, method=method, seed=seed,
        matched_bindings=matched_bindings, doc_event_counts=doc_event_counts)
    paths = export_tasks(tasks, out_dir)
    skipped_path = Path(out_dir) / "skipped.jsonl"
    with skipped_path.open("w", encoding="utf-8") as handle:
        for schema_id, reason in skipped:
            handle.write(json.dumps({"schema_id": schema_id, "reason": reason},
                                    sort_keys=True) + "\n")
    return {"n_tasks": len(tasks), "n_skipped": len(skipped),
            **{k: str(p) for k, p in paths.items()}}


def run_intrusion_score(tasks_path, answers_path, responses_path) -> dict:
    from ..intrusion import IntrusionTask

    answers = {}
    for line in Path(answers_path).read_text(encoding="utf-8").splitlines():
        if line.strip():
            rec = json.loads(line)
            answers[rec["task_id"]] = rec["answer_index"]
    tasks = []
    for line in Path(tasks_path).read_text(encoding="utf-8").splitlines():
        if not line.strip():
            continue
        rec = json.loads(line)
        tasks.append(IntrusionTask(
            task_id=rec["task_id"],
            host_schema=rec.get("host_schema", ""),
            steps_shown=tuple(rec["steps"]),
            answer_index=answers[rec["task_id"]],
            provenance=None,
            shuffle_seed="",
        ))
    responses = read_responses(responses_path)
    report = score_responses(tasks, responses)
    return {
        "n_tasks": report.n_tasks,
        "total": report.total,
        "one_ann": report.one_ann,
        "two_ann": report.two_ann,
        "all_ann": report.all_ann,
        "random": report.random,
        "random_1": report.random_1,
        "random_2": report.random_2,
        "random_3": report.random_3,
    }
