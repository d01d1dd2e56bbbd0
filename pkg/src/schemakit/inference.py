"""Schema-to-document matching via weighted soft logic.

A document's events become observed atoms (neo-Davidsonian flattening: one
unary atom per event, one binary atom per role value). A schema is ground as
step rules (weight 100) defining each step atom as the conjunction of its
event-type and role atoms, one schema rule (weight 10) conjoining the steps,
and weight-1 negative priors on every open atom. UNK event/entity constants
let any slot go unfilled at a small observed truth, so partial matches
survive but cost confidence.

The convex objective is the weighted hinge relaxation with Lukasiewicz
conjunction:

    sum_rules w * max(0, conj(body) - truth(head)) + sum_priors w * truth(atom)
    conj(body) = max(0, sum(truths) - (len(body) - 1))

solved by projected subgradient descent with a monotone (backtracking) step
rule over box-constrained [0,1] variables.
"""

from __future__ import annotations

import heapq
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .ingest import DocumentGraph, EventMultiset, event_multiset
from .schema_model import Schema

UNK_EVENT = "UNK_event"
UNK_ENTITY = "UNK_entity"


class Atom(NamedTuple):
    predicate: str
    args: tuple[str, ...]

    def __str__(self):
        return f"{self.predicate}({', '.join(self.args)})"


@dataclass(frozen=True)
class GroundRule:
    """head None encodes a negative prior: the penalty is w * conj(body)."""

    body: tuple[Atom, ...]
    head: Atom | None
    weight: float


@dataclass(frozen=True)
class Grounding:
    schema_atom: Atom
    step_atoms: tuple[Atom, ...]
    step_events: tuple[tuple[str, str], ...]      # (step id, event id or UNK)
    participant_entities: tuple[tuple[str, str], ...]  # (participant id, entity or UNK)


@dataclass
class SoftLogicProgram:
    observed: dict[Atom, float]
    targets: list[Atom]
    rules: list[GroundRule]
    groundings: list[Grounding]
    truncated: bool = False


@dataclass(frozen=True)
class GroundingConfig:
    max_bindings: int = 512
    unk_truth: float = 0.1


@dataclass
class SolveResult:
    truths: dict[Atom, float]
    objective: float
    iterations: int
    converged: bool
    objective_history: list[float] = field(default_factory=list)


@dataclass(frozen=True)
class MatchResult:
    schema_id: str
    doc_id: str
    theta: float
    matched_steps: int
    total_steps: int
    bindings: tuple[tuple[str, str | None], ...]  # participant -> entity (None = UNK)
    predicted_events: tuple[tuple[str, float], ...]
    iterations: int = 0
    objective: float = 0.0
    converged: bool = True
    truncated: bool = False

    def to_record(self) -> dict:
        return {
            "schema_id": self.schema_id,
            "doc_id": self.doc_id,
            "theta": self.theta,
            "matched_steps": self.matched_steps,
            "total_steps": self.total_steps,
            "bindings": {p: e for p, e in self.bindings},
            "predicted_events": [[t, p] for t, p in self.predicted_events],
        }


def flatten_document(doc: DocumentGraph) -> dict[Atom, float]:
    """Unary event atoms at the event confidence, binary role atoms at the
    value confidence. Role predicates are qualified by the event type."""
    observed: dict[Atom, float] = {}
    for ev in doc.events:
        observed[Atom(ev.event_type, (ev.id,))] = ev.confidence
        for part in ev.participants:
            for entity, confidence in part.entity_values:
                atom = Atom(f"{ev.event_type}/{part.role}", (ev.id, entity))
                observed[atom] = max(observed.get(atom, 0.0), confidence)
    return observed


def _step_participant_slots(step) -> list[tuple[str, str]]:
    """(role, participant) pairs in the step's canonical filler order."""
    out = []
    for role, pids in step.fillers:
        for pid in pids:
            out.append((role, pid))
    return out


def _enumerate_bindings(slot_candidates: list[list[tuple[str, float]]],
                        cap: int) -> tuple[list[tuple[str, ...]], bool]:
    """K-best assignments over independent slots by total candidate score.

    Each slot's candidates are (value, score), already sorted best-first.
    Returns at most `cap` assignments, highest combined score first, and a
    flag for whether enumeration was truncated.
    """
    total = 1
    truncated = False
    for cands in slot_candidates:
        total *= len(cands)
        if total > cap:
            truncated = True
            break
    n = len(slot_candidates)
    if n == 0:
        return [()], False
    start = (0,) * n
    best_score = sum(c[0][1] for c in slot_candidates)
    heap = [(-best_score, start)]
    seen = {start}
    out: list[tuple[str, ...]] = []
    while heap and len(out) < cap:
        neg_score, idx = heapq.heappop(heap)
        out.append(tuple(slot_candidates[i][j][0] for i, j in enumerate(idx)))
        for i in range(n):
            if idx[i] + 1 < len(slot_candidates[i]):
                nxt = idx[:i] + (idx[i] + 1,) + idx[i + 1:]
                if nxt not in seen:
                    seen.add(nxt)
                    score = -neg_score - slot_candidates[i][idx[i]][1] \
                        + slot_candidates[i][idx[i] + 1][1]
                    heapq.heappush(heap, (-score, nxt))
    return out, truncated


def ground_schema(schema: Schema, doc: DocumentGraph,
                  config: GroundingConfig = GroundingConfig()) -> SoftLogicProgram:
    """Enumerate groundings (capped, best type-overlap first) and emit the
    step rules, schema rule, and negative priors."""
    observed = flatten_document(doc)

    step_cands: dict[str, list[tuple[str, float]]] = {}
    for step in schema.steps:
        events = sorted(ev.id for ev in doc.events if ev.event_type == step.event_type)
        step_cands[step.id] = [(e, 1.0) for e in events] + [(UNK_EVENT, 0.0)]

    events_by_id = {ev.id: ev for ev in doc.events}
    participant_scores: dict[str, dict[str, int]] = {p.id: {} for p in schema.participants}
    for step in schema.steps:
        for role, pids in step.fillers:
            for event_id, _ in step_cands[step.id]:
                ev = events_by_id.get(event_id)
                if ev is None:
                    continue
                entities = {
                    entity
                    for part in ev.participants if part.role == role
                    for entity, _ in part.entity_values
                }
                for pid in pids:
                    if pid not in participant_scores:
                        continue
                    for entity in entities:
                        scores = participant_scores[pid]
                        scores[entity] = scores.get(entity, 0) + 1
    part_cands: dict[str, list[tuple[str, float]]] = {}
    for p in schema.participants:
        ranked = sorted(participant_scores[p.id].items(), key=lambda kv: (-kv[1], kv[0]))
        part_cands[p.id] = [(e, float(s)) for e, s in ranked] + [(UNK_ENTITY, 0.0)]

    slot_ids = [("step", s.id) for s in schema.steps] + \
               [("participant", p.id) for p in schema.participants]
    slot_candidates = [
        step_cands[sid] if kind == "step" else part_cands[sid] for kind, sid in slot_ids
    ]
    assignments, truncated = _enumerate_bindings(slot_candidates, config.max_bindings)

    program_observed: dict[Atom, float] = dict(observed)
    rules: dict[tuple, GroundRule] = {}
    targets: dict[Atom, None] = {}
    groundings: list[Grounding] = []

    def resolve(atom: Atom) -> None:
        """Record observed truth for closed atoms referenced by a rule body."""
        if atom in program_observed:
            return
        if UNK_EVENT in atom.args or UNK_ENTITY in atom.args:
            program_observed[atom] = config.unk_truth
        else:
            program_observed[atom] = 0.0

    n_steps = len(schema.steps)
    for assignment in assignments:
        event_of = {sid: assignment[i] for i, (kind, sid) in enumerate(slot_ids)
                    if kind == "step"}
        entity_of = {sid: assignment[i] for i, (kind, sid) in enumerate(slot_ids)
                     if kind == "participant"}
        step_atoms = []
        for step in schema.steps:
            ev_id = event_of[step.id]
            body = [Atom(step.event_type, (ev_id,))]
            args = [ev_id]
            for role, pid in _step_participant_slots(step):
                entity = entity_of[pid]
                body.append(Atom(f"{step.event_type}/{role}", (ev_id, entity)))
                args.append(entity)
            for atom in body:
                resolve(atom)
            head = Atom(f"{schema.id}/{step.id}", tuple(args))
            targets[head] = None
            step_atoms.append(head)
            key = ("step", tuple(body), head)
            rules.setdefault(key, GroundRule(tuple(body), head, 100.0))
        schema_atom = Atom(schema.id, tuple(event_of[s.id] for s in schema.steps))
        targets[schema_atom] = None
        key = ("schema", tuple(step_atoms), schema_atom)
        rules.setdefault(key, GroundRule(tuple(step_atoms), schema_atom, 10.0))
        groundings.append(Grounding(
            schema_atom=schema_atom,
            step_atoms=tuple(step_atoms),
            step_events=tuple((s.id, event_of[s.id]) for s in schema.steps),
            participant_entities=tuple(sorted(entity_of.items())),
        ))

    rule_list = list(rules.values())
    for atom in targets:
        rule_list.append(GroundRule((atom,), None, 1.0))
    return SoftLogicProgram(
        observed=program_observed,
        targets=list(targets),
        rules=rule_list,
        groundings=groundings,
        truncated=truncated,
    )


def solve(program: SoftLogicProgram, tol: float = 1e-4,
          max_iter: int = 5000) -> SolveResult:
    """Minimize the hinge objective over [0,1] target variables.

    Each iteration takes a projected (sub)gradient step with backtracking and,
    when that stalls at a kink, an exact coordinate-minimization sweep (the
    1-D restriction is piecewise-linear convex, so its minimum sits on a
    breakpoint). Both moves are non-increasing, so the objective history is
    monotone per iteration. Non-convergence within max_iter is reported, not
    raised.
    """
    var_index = {atom: i for i, atom in enumerate(program.targets)}
    n_vars = len(var_index)
    n_rules = len(program.rules)

    body_rule_ids: list[int] = []
    body_var_ids: list[int] = []
    const_sum = np.zeros(n_rules)
    n_body = np.zeros(n_rules)
    weight = np.zeros(n_rules)
    head_var = np.full(n_rules, -1, dtype=int)
    head_const = np.zeros(n_rules)

    for r, rule in enumerate(program.rules):
        weight[r] = rule.weight
        n_body[r] = len(rule.body)
        for atom in rule.body:
            if atom in var_index:
                body_rule_ids.append(r)
                body_var_ids.append(var_index[atom])
            else:
                const_sum[r] += program.observed.get(atom, 0.0)
        if rule.head is not None:
            if rule.head in var_index:
                head_var[r] = var_index[rule.head]
            else:
                head_const[r] = program.observed.get(rule.head, 0.0)

    rule_ids = np.asarray(body_rule_ids, dtype=int)
    var_ids = np.asarray(body_var_ids, dtype=int)
    has_head_var = head_var >= 0
    head_var_safe = np.where(has_head_var, head_var, 0)

    # Per-variable adjacency for the coordinate sweeps.
    body_mult: list[dict[int, int]] = [dict() for _ in range(n_vars)]
    for r, v in zip(body_rule_ids, body_var_ids):
        body_mult[v][r] = body_mult[v].get(r, 0) + 1
    head_rules: list[list[int]] = [[] for _ in range(n_vars)]
    for r in range(n_rules):
        if head_var[r] >= 0:
            head_rules[head_var[r]].append(r)
    touching = [sorted(set(body_mult[v]) | set(head_rules[v])) for v in range(n_vars)]

    def pieces(x):
        s = const_sum + np.bincount(rule_ids, weights=x[var_ids], minlength=n_rules) \
            if len(rule_ids) else const_sum.copy()
        conj = np.maximum(0.0, s - (n_body - 1.0))
        headval = np.where(has_head_var, x[head_var_safe], head_const)
        viol = conj - headval
        return s, conj, viol

    def objective(x):
        _, _, viol = pieces(x)
        return float(np.sum(weight * np.maximum(0.0, viol)))

    if n_vars == 0:
        obj = objective(np.zeros(0))
        return SolveResult({}, obj, 0, True, [obj])

    def local_terms(v: int, t: float, x) -> float:
        """Objective restricted to the rules touching variable v, at x_v = t."""
        total = 0.0
        for r in touching[v]:
            m = body_mult[v].get(r, 0)
            s_r = const_sum[r]
            for atom_rule, atom_var in rule_pairs_by_rule.get(r, ()):
                s_r += x[atom_var] if atom_var != v else 0.0
            s_r += m * t
            conj = max(0.0, s_r - (n_body[r] - 1.0))
            if head_var[r] == v:
                head = t
            elif head_var[r] >= 0:
                head = x[head_var[r]]
            else:
                head = head_const[r]
            total += weight[r] * max(0.0, conj - head)
        return total

    rule_pairs_by_rule: dict[int, list[tuple[int, int]]] = {}
    for r, v in zip(body_rule_ids, body_var_ids):
        rule_pairs_by_rule.setdefault(r, []).append((r, v))

    def coordinate_sweep(x, f):
        """Exact 1-D minimization per variable, in target order."""
        for v in range(n_vars):
            if not touching[v]:
                continue
            # Candidate breakpoints of the restricted piecewise-linear function.
            candidates = {0.0, 1.0}
            for r in touching[v]:
                m = body_mult[v].get(r, 0)
                s_wo = const_sum[r]
                for _, atom_var in rule_pairs_by_rule.get(r, ()):
                    if atom_var != v:
                        s_wo += x[atom_var]
                if head_var[r] == v:
                    head = None  # head is the variable itself
                elif head_var[r] >= 0:
                    head = x[head_var[r]]
                else:
                    head = head_const[r]
                if m > 0:
                    t0 = ((n_body[r] - 1.0) - s_wo) / m
                    if 0.0 < t0 < 1.0:
                        candidates.add(t0)
                    if head is not None:
                        t1 = (head + (n_body[r] - 1.0) - s_wo) / m
                        if 0.0 < t1 < 1.0:
                            candidates.add(t1)
                    elif m != 1:
                        t1 = ((n_body[r] - 1.0) - s_wo) / (m - 1.0)
                        if 0.0 < t1 < 1.0:
                            candidates.add(t1)
                elif head is None:
                    t1 = max(0.0, s_wo - (n_body[r] - 1.0))
                    if 0.0 < t1 < 1.0:
                        candidates.add(t1)
            base = local_terms(v, x[v], x)
            best_t, best_delta = x[v], 0.0
            for t in sorted(candidates):
                delta = local_terms(v, t, x) - base
                if delta < best_delta - 1e-15:
                    best_t, best_delta = t, delta
            if best_delta < 0.0:
                x[v] = best_t
                f += best_delta
        return x, objective(x)  # recompute to avoid drift

    x = np.full(n_vars, 0.5)
    f = objective(x)
    history = [f]
    eta = 0.25
    converged = False
    iterations = 0

    for iterations in range(1, max_iter + 1):
        f_start = f
        s, conj, viol = pieces(x)
        active = (viol > 0.0) & (s > n_body - 1.0)
        grad = np.zeros(n_vars)
        if len(rule_ids):
            contrib = (weight * active)[rule_ids]
            np.add.at(grad, var_ids, contrib)
        head_active = (viol > 0.0) & has_head_var
        if head_active.any():
            np.subtract.at(grad, head_var[head_active], weight[head_active])

        if grad.any():
            step = eta / max(1.0, float(np.max(np.abs(grad))))
            for _ in range(30):
                cand = np.clip(x - step * grad, 0.0, 1.0)
                f_cand = objective(cand)
                if f_cand <= f:
                    x, f = cand, f_cand
                    eta = min(eta * 1.3, 4.0)
                    break
                step *= 0.5

        if f_start - f < tol:
            # Gradient step stalled: finish the iteration with an exact sweep.
            x, f = coordinate_sweep(x, f)
        history.append(f)
        if f_start - f < tol:
            converged = True
            break

    truths = {atom: float(x[i]) for atom, i in var_index.items()}
    return SolveResult(truths, f, iterations, converged, history)


def rescale_confidence(theta_raw: float, matched_steps: int, total_steps: int) -> float:
    """Scale by the proportion of matched (non-UNK) steps.

    Confidences enter the system as decimal text, so the product is taken in
    exact rational arithmetic over the decimal reading and rounded once:
    rescale(0.8, 3, 4) is exactly 0.6.
    """
    if total_steps <= 0:
        raise ValueError("total_steps must be positive")
    from fractions import Fraction

    return float(Fraction(repr(float(theta_raw))) * Fraction(matched_steps, total_steps))


def combine_event_probability(thetas: Iterable[float]) -> float:
    """1 - prod(1 - theta): the event happens if any supporting schema applies."""
    product = 1.0
    for theta in thetas:
        product *= 1.0 - theta
    return 1.0 - product


def match_schema(schema: Schema, doc: DocumentGraph,
                 config: GroundingConfig = GroundingConfig(),
                 tol: float = 1e-4, max_iter: int = 5000) -> MatchResult:
    """Ground, solve, and read out the best grounding of the schema."""
    program = ground_schema(schema, doc, config)
    result = solve(program, tol=tol, max_iter=max_iter)
    total = len(schema.steps)
    best = None
    best_key = None
    for g in program.groundings:
        theta_raw = result.truths.get(g.schema_atom, 0.0)
        matched = sum(1 for _, ev in g.step_events if ev != UNK_EVENT)
        theta = rescale_confidence(theta_raw, matched, total)
        # Groundings sharing a schema atom tie on theta; prefer the binding
        # whose step atoms the solver actually supported.
        support = sum(result.truths.get(a, 0.0) for a in g.step_atoms)
        key = (-theta, -matched, -support, g.step_events, g.participant_entities)
        if best_key is None or key < best_key:
            best_key = key
            best = (g, theta, matched)
    grounding, theta, matched = best
    bindings = tuple(
        (pid, None if entity == UNK_ENTITY else entity)
        for pid, entity in grounding.participant_entities
    )
    predicted = tuple(
        (step_event_type, theta)
        for (step_id, ev), step_event_type in zip(
            grounding.step_events, (s.event_type for s in schema.steps))
        if ev == UNK_EVENT
    )
    return MatchResult(
        schema_id=schema.id,
        doc_id=doc.doc_id,
        theta=theta,
        matched_steps=matched,
        total_steps=total,
        bindings=bindings,
        predicted_events=predicted,
        iterations=result.iterations,
        objective=result.objective,
        converged=result.converged,
        truncated=program.truncated,
    )


def predict_events(results: Iterable[MatchResult]) -> dict[str, float]:
    """Combine per-schema predictions of unseen events into one probability
    per event type (disjunctive combination)."""
    support: dict[str, list[float]] = {}
    for result in results:
        for event_type, theta in result.predicted_events:
            support.setdefault(event_type, []).append(theta)
    return {
        event_type: combine_event_probability(thetas)
        for event_type, thetas in sorted(support.items())
    }


# --- bag-of-events prefilter -------------------------------------------------


class SchemaIndex:
    """Inverted index over the library's step event types with tf-idf scoring."""

    def __init__(self, library: Sequence[Schema]):
        self.schemas = {s.id: s for s in library}
        self.postings: dict[str, list[tuple[str, int]]] = {}
        counts_by_schema: dict[str, dict[str, int]] = {}
        for s in library:
            counts: dict[str, int] = {}
            for t in s.event_types():
                counts[t] = counts.get(t, 0) + 1
            counts_by_schema[s.id] = counts
            for t, c in counts.items():
                self.postings.setdefault(t, []).append((s.id, c))
        n = len(library)
        self.idf = {
            t: math.log((1 + n) / (1 + len(post))) + 1.0
            for t, post in self.postings.items()
        }

    def query(self, doc: EventMultiset, k: int) -> list[tuple[str, float]]:
        """Top-k schemas by sum over shared types of tf_doc * tf_schema * idf^2."""
        if not self.postings:
            raise ValueError("empty index")
        scores: dict[str, float] = {}
        for event_type, doc_count in doc.counts:
            for schema_id, schema_count in self.postings.get(event_type, ()):
                scores[schema_id] = scores.get(schema_id, 0.0) + \
                    doc_count * schema_count * self.idf[event_type] ** 2
        ranked = sorted(scores.items(), key=lambda kv: (-kv[1], kv[0]))
        return ranked[:k]


def prefilter(index: SchemaIndex, doc: DocumentGraph | EventMultiset, k: int) -> list[Schema]:
    multiset = doc if isinstance(doc, EventMultiset) else event_multiset(doc)
    return [index.schemas[sid] for sid, _ in index.query(multiset, k)]


def infer_corpus(library: Sequence[Schema], docs: Iterable[DocumentGraph], top_k: int = 5,
                 config: GroundingConfig = GroundingConfig(),
                 tol: float = 1e-4, max_iter: int = 5000) -> list[MatchResult]:
    """Prefilter then match every document against its top-k candidate schemas."""
    index = SchemaIndex(library)
    results = []
    for doc in docs:
        for schema in prefilter(index, doc, top_k):
            results.append(match_schema(schema, doc, config, tol=tol, max_iter=max_iter))
    return results


def write_match_results(results: Iterable[MatchResult], path: str | Path,
                        log_path: str | Path | None = None) -> None:
    results = list(results)
    with Path(path).open("w", encoding="utf-8") as handle:
        for r in results:
            handle.write(json.dumps(r.to_record(), sort_keys=True) + "\n")
    if log_path is not None:
        with Path(log_path).open("w", encoding="utf-8") as handle:
            for r in results:
                handle.write(json.dumps({
                    "schema_id": r.schema_id,
                    "doc_id": r.doc_id,
                    "iterations": r.iterations,
                    "objective": r.objective,
                    "converged": r.converged,
                    "truncated": r.truncated,
                }, sort_keys=True) + "\n")
