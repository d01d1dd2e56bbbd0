"""Schema-intrusion evaluation: task generation, response scoring, baselines.

A task takes a host schema, inserts one step lifted from another schema with
its participants renamed to host participants (camouflage), shuffles the step
descriptions, and asks annotators to spot the intruder. Candidate intruders
are weighted by the geometric mean of participant type overlap (library
method) or of matched-entity overlap in a shared document (corpus method);
sampling is proportional to weight.
"""

from __future__ import annotations

import json
import random
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Mapping, Sequence

from .schema_model import Schema, Step

#: Cap on enumerated participant maps per (source schema, step).
MAX_MAPS_PER_STEP = 10_000


class NoCandidateError(Exception):
    """No candidate intruder had positive weight; the task is skipped."""


@dataclass(frozen=True)
class IntrusionCandidate:
    host_schema: str
    source_schema: str
    step: Step
    map: tuple[tuple[str, str], ...]  # source participant id -> host participant id
    weight: float
    doc_id: str | None = None

    def map_dict(self) -> dict[str, str]:
        return dict(self.map)


@dataclass(frozen=True)
class IntrusionTask:
    task_id: str
    host_schema: str
    steps_shown: tuple[str, ...]
    answer_index: int
    provenance: IntrusionCandidate
    shuffle_seed: str
    residual_names: tuple[str, ...] = ()  # flagged for the manual grammar pass


@dataclass(frozen=True)
class ResponseSet:
    task_id: str
    picks: tuple[int, int, int]


@dataclass(frozen=True)
class AccuracyReport:
    n_tasks: int
    total: float
    one_ann: float
    two_ann: float
    all_ann: float
    random: float
    random_1: float
    random_2: float
    random_3: float


def jaccard(a: Iterable, b: Iterable) -> float:
    """|A n B| / |A u B|, with J(empty, empty) = 0."""
    a, b = set(a), set(b)
    union = a | b
    if not union:
        return 0.0
    return len(a & b) / len(union)


def _geometric_mean_of_overlaps(pairs: Sequence[float]) -> float:
    if not pairs:
        # A step with no participants carries no type evidence against the
        # swap; treat it as fully compatible.
        return 1.0
    product = 1.0
    for j in pairs:
        product *= j
    return product ** (1.0 / len(pairs))


def library_weight(mapping: Mapping[str, str],
                   types_of: Callable[[str], frozenset[str]],
                   host_types_of: Callable[[str], frozenset[str]] | None = None) -> float:
    """Geometric mean of type-overlap Jaccards over all mapped pairs; any
    disjoint pair forces 0. Map keys are looked up with types_of and values
    with host_types_of (defaulting to the same lookup)."""
    right = host_types_of or types_of
    overlaps = [jaccard(types_of(x), right(y)) for x, y in sorted(mapping.items())]
    return _geometric_mean_of_overlaps(overlaps)


def corpus_weight(mapping: Mapping[str, str],
                  source_entities: Callable[[str], frozenset[str]],
                  host_entities: Callable[[str], frozenset[str]]) -> float:
    """Same shape as library_weight but over the entity sets each participant
    matched in the shared document."""
    overlaps = [
        jaccard(source_entities(x), host_entities(y)) for x, y in sorted(mapping.items())
    ]
    return _geometric_mean_of_overlaps(overlaps)


def rename_step(step: Step, name_map: Mapping[str, str]) -> tuple[str, list[str]]:
    """Replace whole-token occurrences of source participant names in the step
    description, longest name first and in a single simultaneous pass.

    Returns the rewritten text plus any source names still present, which are
    flagged for the manual grammar review pass.
    """
    text = step.description
    if name_map:
        names = sorted(name_map, key=len, reverse=True)
        pattern = re.compile(r"\b(?:" + "|".join(re.escape(n) for n in names) + r")\b")
        text = pattern.sub(lambda m: name_map[m.group(0)], text)
    residual = [
        name for name in sorted(name_map)
        if re.search(r"\b" + re.escape(name) + r"\b", text)
        and name_map[name] != name
    ]
    return text, residual


def _step_signature(event_type: str, fillers: Iterable[tuple[str, tuple[str, ...]]],
                    mapping: Mapping[str, str] | None = None) -> tuple:
    sig = []
    for role, pids in fillers:
        mapped = tuple(sorted(mapping.get(p, p) if mapping else p for p in pids))
        sig.append((role, mapped))
    return (event_type, tuple(sorted(sig)))


def _creates_duplicate_step(host: Schema, step: Step, mapping: Mapping[str, str]) -> bool:
    remapped = _step_signature(step.event_type, step.fillers, mapping)
    return any(_step_signature(s.event_type, s.fillers) == remapped for s in host.steps)


def _step_participants(step: Step) -> list[str]:
    return step.participant_ids()


def _enumerate_maps(source_pids: Sequence[str], host_pids: Sequence[str],
                    rng: random.Random) -> list[tuple[tuple[str, str], ...]]:
    """All complete maps from source participants to host participants, up to
    MAX_MAPS_PER_STEP; beyond that, maps are sampled uniformly."""
    m, q = len(source_pids), len(host_pids)
    if m == 0:
        return [()]
    total = q ** m
    if total <= MAX_MAPS_PER_STEP:
        maps = []
        idx = [0] * m
        while True:
            maps.append(tuple((source_pids[i], host_pids[idx[i]]) for i in range(m)))
            for pos in range(m - 1, -1, -1):
                idx[pos] += 1
                if idx[pos] < q:
                    break
                idx[pos] = 0
            else:
                break
        return maps
    seen = set()
    maps = []
    while len(maps) < MAX_MAPS_PER_STEP:
        combo = tuple(rng.randrange(q) for _ in range(m))
        if combo not in seen:
            seen.add(combo)
            maps.append(tuple((source_pids[i], host_pids[combo[i]]) for i in range(m)))
    return maps


def default_types_of(schema: Schema) -> Callable[[str], frozenset[str]]:
    table = {p.id: frozenset(p.coarse_types) for p in schema.participants}
    return lambda pid: table.get(pid, frozenset())


def enumerate_library_candidates(host: Schema, library: Sequence[Schema],
                                 rng: random.Random) -> list[IntrusionCandidate]:
    """All positively weighted (source schema, step, map) candidates for a host."""
    host_pids = [p.id for p in host.participants]
    host_types = default_types_of(host)
    out = []
    for source in sorted(library, key=lambda s: s.id):
        if source.id == host.id:
            continue
        source_types = default_types_of(source)
        for step in source.steps:
            source_pids = _step_participants(step)
            if source_pids and not host_pids:
                continue
            for mapping in _enumerate_maps(source_pids, host_pids, rng):
                mapping_dict = dict(mapping)
                weight = library_weight(mapping_dict, source_types, host_types)
                if weight <= 0.0:
                    continue
                if _creates_duplicate_step(host, step, mapping_dict):
                    continue
                out.append(IntrusionCandidate(
                    host_schema=host.id,
                    source_schema=source.id,
                    step=step,
                    map=mapping,
                    weight=weight,
                ))
    return out


def enumerate_corpus_candidates(
    host: Schema,
    library: Sequence[Schema],
    matched_bindings: Mapping[tuple[str, str], Mapping[str, str | None]],
    doc_event_counts: Mapping[str, int],
    rng: random.Random,
    min_events: int = 2,
    max_events: int = 10,
) -> list[IntrusionCandidate]:
    """Candidates (d, T, e, M) over documents that both the host and the source
    schema matched, restricted to documents with min..max events.

    matched_bindings maps (doc id, schema id) to that match's participant ->
    entity binding (None for an unmatched participant).
    """
    docs_for: dict[str, list[str]] = {}
    for doc_id, schema_id in matched_bindings:
        docs_for.setdefault(schema_id, []).append(doc_id)
    host_docs = {
        d for d in docs_for.get(host.id, [])
        if min_events <= doc_event_counts.get(d, 0) <= max_events
    }
    if not host_docs:
        return []
    host_pids = [p.id for p in host.participants]
    out = []
    for source in sorted(library, key=lambda s: s.id):
        if source.id == host.id:
            continue
        shared = sorted(host_docs & set(docs_for.get(source.id, [])))
        for doc_id in shared:
            source_binding = matched_bindings[(doc_id, source.id)]
            host_binding = matched_bindings[(doc_id, host.id)]
            ent_source = lambda pid: (
                frozenset([source_binding[pid]])
                if source_binding.get(pid) is not None else frozenset()
            )
            ent_host = lambda pid: (
                frozenset([host_binding[pid]])
                if host_binding.get(pid) is not None else frozenset()
            )
            for step in source.steps:
                source_pids = _step_participants(step)
                if source_pids and not host_pids:
                    continue
                for mapping in _enumerate_maps(source_pids, host_pids, rng):
                    mapping_dict = dict(mapping)
                    weight = corpus_weight(mapping_dict, ent_source, ent_host)
                    if weight <= 0.0:
                        continue
                    if _creates_duplicate_step(host, step, mapping_dict):
                        continue
                    out.append(IntrusionCandidate(
                        host_schema=host.id,
                        source_schema=source.id,
                        step=step,
                        map=mapping,
                        weight=weight,
                        doc_id=doc_id,
                    ))
    return out


def task_rng(seed: int | str, host_id: str) -> random.Random:
    """Per-task rng keyed on (global seed, host schema id): deterministic even
    when hosts are processed in parallel."""
    return random.Random(f"{seed}:{host_id}")


def sample_intruder(
    host: Schema,
    library: Sequence[Schema],
    method: str = "library",
    seed: int | str = 0,
    matched_bindings: Mapping[tuple[str, str], Mapping[str, str | None]] | None = None,
    doc_event_counts: Mapping[str, int] | None = None,
    task_id: str | None = None,
) -> IntrusionTask:
    """Build one intrusion task for a host schema.

    Raises NoCandidateError when no candidate has positive weight.
    """
    if len(library) < 2:
        raise NoCandidateError("library must contain at least 2 schemas")
    rng = task_rng(seed, host.id)
    if method == "library":
        candidates = enumerate_library_candidates(host, library, rng)
    elif method == "corpus":
        if matched_bindings is None or doc_event_counts is None:
            raise ValueError("corpus method requires match bindings and doc event counts")
        candidates = enumerate_corpus_candidates(
            host, library, matched_bindings, doc_event_counts, rng)
    else:
        raise ValueError(f"unknown method {method!r}")
    if not candidates:
        raise NoCandidateError(f"no positively weighted intruder candidate for {host.id!r}")

    chosen = rng.choices(candidates, weights=[c.weight for c in candidates], k=1)[0]

    source = next(s for s in library if s.id == chosen.source_schema)
    name_map = {}
    host_names = {p.id: p.name for p in host.participants}
    source_names = {p.id: p.name for p in source.participants}
    for src_pid, host_pid in chosen.map:
        if src_pid in source_names and host_pid in host_names:
            name_map[source_names[src_pid]] = host_names[host_pid]
    intruder_text, residual = rename_step(chosen.step, name_map)

    shown = [(s.description, False) for s in host.steps] + [(intruder_text, True)]
    rng.shuffle(shown)
    answer_index = next(i for i, (_, is_intruder) in enumerate(shown) if is_intruder)
    return IntrusionTask(
        task_id=task_id or f"task-{method}-{host.id}",
        host_schema=host.id,
        steps_shown=tuple(text for text, _ in shown),
        answer_index=answer_index,
        provenance=chosen,
        shuffle_seed=f"{seed}:{host.id}",
        residual_names=tuple(residual),
    )


def generate_tasks(
    library: Sequence[Schema],
    method: str = "library",
    seed: int | str = 0,
    tasks_per_schema: int = 1,
    matched_bindings=None,
    doc_event_counts=None,
) -> tuple[list[IntrusionTask], list[tuple[str, str]]]:
    """One task per schema per method by default. Returns (tasks, skipped),
    where skipped lists (schema id, reason)."""
    tasks: list[IntrusionTask] = []
    skipped: list[tuple[str, str]] = []
    for host in sorted(library, key=lambda s: s.id):
        for k in range(tasks_per_schema):
            try:
                tasks.append(sample_intruder(
                    host, library, method=method, seed=f"{seed}:{k}",
                    matched_bindings=matched_bindings,
                    doc_event_counts=doc_event_counts,
                    task_id=f"task-{method}-{host.id}-{k}",
                ))
            except NoCandidateError as exc:
                skipped.append((host.id, str(exc)))
    return tasks, skipped


# --- scoring ----------------------------------------------------------------


def binomial_at_least(n_hits: int, p: float, n_draws: int = 3) -> float:
    """P(Binomial(n_draws, p) >= n_hits)."""
    from math import comb

    return sum(
        comb(n_draws, k) * p**k * (1 - p) ** (n_draws - k)
        for k in range(n_hits, n_draws + 1)
    )


def random_baselines(host_step_counts: Sequence[int]) -> tuple[float, float, float, float]:
    """Analytic chance accuracies for a task set: per task with k host steps
    the intruder is 1 of k+1 options."""
    if not host_step_counts:
        raise ValueError("no tasks")
    ps = [1.0 / (k + 1) for k in host_step_counts]
    n = len(ps)
    rand = sum(ps) / n
    tails = [sum(binomial_at_least(h, p) for p in ps) / n for h in (1, 2, 3)]
    return (rand, tails[0], tails[1], tails[2])


def score_responses(tasks: Sequence[IntrusionTask],
                    responses: Sequence[ResponseSet]) -> AccuracyReport:
    """Exactly 3 picks per task. `total` counts each pick separately; the
    n-annotator accuracies count a task as solved when >= n picks are correct."""
    by_task = {r.task_id: r for r in responses}
    missing = [t.task_id for t in tasks if t.task_id not in by_task]
    if missing:
        raise ValueError(f"missing responses for tasks: {missing[:5]}")
    correct_picks = 0
    hits = {1: 0, 2: 0, 3: 0}
    for task in tasks:
        picks = by_task[task.task_id].picks
        if len(picks) != 3:
            raise ValueError(f"{task.task_id}: expected exactly 3 picks")
        n_correct = sum(1 for p in picks if p == task.answer_index)
        correct_picks += n_correct
        for threshold in (1, 2, 3):
            if n_correct >= threshold:
                hits[threshold] += 1
    n = len(tasks)
    rand, r1, r2, r3 = random_baselines([len(t.steps_shown) - 1 for t in tasks])
    return AccuracyReport(
        n_tasks=n,
        total=correct_picks / (3 * n),
        one_ann=hits[1] / n,
        two_ann=hits[2] / n,
        all_ann=hits[3] / n,
        random=rand,
        random_1=r1,
        random_2=r2,
        random_3=r3,
    )


# --- files ------------------------------------------------------------------


def export_tasks(tasks: Sequence[IntrusionTask], out_dir: str | Path) -> dict[str, Path]:
    """Write the annotator export (no answers), the separate answer key, and
    the review file for the manual grammar pass."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = {
        "tasks": out_dir / "tasks.jsonl",
        "answers": out_dir / "answers.jsonl",
        "review": out_dir / "review.jsonl",
    }
    with paths["tasks"].open("w", encoding="utf-8") as handle:
        for t in tasks:
            handle.write(json.dumps(
                {"task_id": t.task_id, "steps": list(t.steps_shown)},
                sort_keys=True) + "\n")
    with paths["answers"].open("w", encoding="utf-8") as handle:
        for t in tasks:
            handle.write(json.dumps(
                {"task_id": t.task_id, "answer_index": t.answer_index},
                sort_keys=True) + "\n")
    with paths["review"].open("w", encoding="utf-8") as handle:
        for t in tasks:
            handle.write(json.dumps({
                "task_id": t.task_id,
                "host_schema": t.host_schema,
                "source_schema": t.provenance.source_schema,
                "source_step": t.provenance.step.id,
                "original": t.provenance.step.description,
                "renamed": t.steps_shown[t.answer_index],
                "residual_names": list(t.residual_names),
            }, sort_keys=True) + "\n")
    return paths


def read_responses(path: str | Path) -> list[ResponseSet]:
    """Response records: one JSON object per line with task_id, annotator, pick.
    Exactly three annotators per task are required."""
    picks: dict[str, list[tuple[str, int]]] = {}
    with Path(path).open("r", encoding="utf-8") as handle:
        for line in handle:
            line = line.strip()
            if not line:
                continue
            rec = json.loads(line)
            picks.setdefault(rec["task_id"], []).append((str(rec["annotator"]), int(rec["pick"])))
    out = []
    for task_id, entries in sorted(picks.items()):
        if len(entries) != 3:
            raise ValueError(f"{task_id}: expected 3 responses, got {len(entries)}")
        ordered = [p for _, p in sorted(entries)]
        out.append(ResponseSet(task_id, (ordered[0], ordered[1], ordered[2])))
    return out
