"""Alignment-based model quality: fitness, precision, F_beta, coverage.

Fitness of a trace against a net is computed from an optimal alignment
over the synchronous product: synchronous moves and silent model moves
are free, a trace-only move (deleting an activity) or a visible
model-only move (inserting one) costs one. The alignment cost therefore
equals the minimum insert/delete edit distance from the trace to any word
of the model language, and

    fitness(trace, net) = 1 - cost / (len(trace) + shortest_word(net))

so 1 means the trace is a word of the model. The cost ratio is kept as an
exact rational, which makes "fitness < 1" (the deviating-trace test)
float-free.

Precision follows the escaping-edges idea: replay the aligned model
projection of every trace, weight each replay state by the traces passing
through it, and compare the activities the model enables against the
activities actually observed leaving the state.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .eventlog import EventLog, Sublog, Trace
from .petrinet import (
    BudgetExceeded,
    Marking,
    PetriNet,
    cardoso_metric,
    enabled,
    fire,
    shortest_visible_path,
    size_metric,
)

DEFAULT_ALIGN_BUDGET = 500_000
DEFAULT_CLOSURE_BUDGET = 100_000


@dataclass(frozen=True)
class AlignmentResult:
    """Optimal alignment cost plus the model side's visible word."""

    cost: int
    model_projection: Trace

    @property
    def closest_model_trace_length_bound(self) -> int:
        """Length of the aligned model word; bounds the nearest word length."""
        return len(self.model_projection)


def alignment_cost(
    trace: Sequence[str], net: PetriNet, budget: int = DEFAULT_ALIGN_BUDGET
) -> AlignmentResult:
    """Optimal insert/delete alignment of a trace against the net.

    Uniform-cost search over (marking, trace position) states. Moves:
    fire a transition matching the next activity (free), fire a silent
    transition (free), fire a visible transition without consuming input
    (cost 1, an insertion), or skip the next input activity (cost 1, a
    deletion). Among equal-cost states the search prefers those with
    more of the trace consumed, which does not affect optimality.
    Raises BudgetExceeded when more than ``budget`` states are expanded.

    Markings are flattened to count vectors over a fixed place order for
    the duration of the search; this is the hot loop of every
    log-versus-model score.
    """
    trace = tuple(trace)
    places = sorted(net.places)
    place_index = {p: i for i, p in enumerate(places)}

    def to_vector(marking: Marking) -> tuple[int, ...]:
        counts = marking.as_dict()
        return tuple(counts.get(p, 0) for p in places)

    # per transition: (visible label, input indices, output indices)
    moves_table = [
        (
            net.label(t),
            tuple(place_index[p] for p in net.inputs(t)),
            tuple(place_index[p] for p in net.outputs(t)),
        )
        for t in net.transition_ids
    ]

    def successors(vector: tuple[int, ...]):
        result = []
        for label, inputs, outputs in moves_table:
            if all(vector[i] >= 1 for i in inputs):
                fired = list(vector)
                for i in inputs:
                    fired[i] -= 1
                for i in outputs:
                    fired[i] += 1
                result.append((label, tuple(fired)))
        return result

    start = (to_vector(net.initial_marking), 0)
    final_vector = to_vector(net.final_marking)
    goal_pos = len(trace)

    dist: dict[tuple[tuple[int, ...], int], int] = {start: 0}
    parent: dict = {start: None}
    heap: list = [(0, 0, 0, start)]
    tie = 0
    expanded = 0
    successor_cache: dict[tuple[int, ...], list] = {}

    while heap:
        cost, _, _, state = heapq.heappop(heap)
        if cost > dist.get(state, cost):
            continue
        vector, pos = state
        if pos == goal_pos and vector == final_vector:
            projection: list[str] = []
            cursor = state
            while parent[cursor] is not None:
                cursor, label = parent[cursor]
                if label is not None:
                    projection.append(label)
            return AlignmentResult(cost=cost, model_projection=tuple(reversed(projection)))
        expanded += 1
        if expanded > budget:
            raise BudgetExceeded("alignment search", budget)

        if vector not in successor_cache:
            successor_cache[vector] = successors(vector)
        moves: list[tuple[tuple, int, str | None]] = []
        for label, fired in successor_cache[vector]:
            if label is None:
                moves.append(((fired, pos), 0, None))
            else:
                if pos < goal_pos and trace[pos] == label:
                    moves.append(((fired, pos + 1), 0, label))  # synchronous
                moves.append(((fired, pos), 1, label))  # model-only (insertion)
        if pos < goal_pos:
            moves.append(((vector, pos + 1), 1, None))  # trace-only (deletion)

        for nxt, step, label in moves:
            new_cost = cost + step
            if new_cost < dist.get(nxt, new_cost + 1):
                dist[nxt] = new_cost
                parent[nxt] = (state, label)
                tie -= 1  # LIFO among equals: dive down silent chains first
                heapq.heappush(heap, (new_cost, goal_pos - nxt[1], tie, nxt))

    raise ValueError("net has no accepting firing sequence; final marking unreachable")


def variant_alignments(
    log: EventLog, net: PetriNet, budget: int = DEFAULT_ALIGN_BUDGET
) -> dict[Trace, AlignmentResult]:
    """Optimal alignment per variant (computed once per distinct trace)."""
    return {trace: alignment_cost(trace, net, budget) for trace in sorted(log.variants)}


def trace_fitness(
    trace: Sequence[str], net: PetriNet, budget: int = DEFAULT_ALIGN_BUDGET
) -> Fraction:
    """Alignment fitness in [0, 1]; exactly 1 iff the trace is a model word."""
    cost = alignment_cost(trace, net, budget).cost
    return _fitness_from_cost(cost, len(trace), shortest_visible_path(net))


def _fitness_from_cost(cost: int, trace_len: int, shortest_word: int) -> Fraction:
    denominator = trace_len + shortest_word
    if denominator == 0:
        # empty trace against a model accepting the empty word
        return Fraction(1)
    return 1 - Fraction(cost, denominator)


def log_fitness(log: EventLog, net: PetriNet, budget: int = DEFAULT_ALIGN_BUDGET) -> Fraction:
    """Frequency-weighted mean of per-variant fitness."""
    if len(log) == 0:
        raise ValueError("cannot compute fitness of an empty log")
    shortest = shortest_visible_path(net)
    total = Fraction(0)
    for trace, count in log.variants.items():
        cost = alignment_cost(trace, net, budget).cost
        total += count * _fitness_from_cost(cost, len(trace), shortest)
    return total / log.total_traces


def _silent_closure(
    net: PetriNet, markings: set[Marking], budget: int
) -> set[Marking]:
    """All markings reachable from the given ones by silent firings only."""
    closure = set(markings)
    frontier = list(markings)
    while frontier:
        marking = frontier.pop()
        for t in enabled(net, marking):
            if not net.is_silent(t):
                continue
            nxt = fire(net, marking, t)
            if nxt not in closure:
                closure.add(nxt)
                if len(closure) > budget:
                    raise BudgetExceeded("silent closure", budget)
                frontier.append(nxt)
    return closure


def etc_precision(
    log: EventLog,
    net: PetriNet,
    budget: int = DEFAULT_ALIGN_BUDGET,
    closure_budget: int = DEFAULT_CLOSURE_BUDGET,
) -> float:
    """Escaping-edges precision of the net against the log.

    Every variant contributes its aligned model projection (for fitting
    traces that is the trace itself), so deviating behaviour is replayed
    as the closest model word. States are the prefixes of the replayed
    words; at each state the escaping edges are the activities the model
    enables (through silent moves) that never occur there in the log.
    """
    if len(log) == 0:
        raise ValueError("cannot compute precision of an empty log")
    projected: dict[Trace, int] = {}
    for trace, count in log.variants.items():
        word = alignment_cost(trace, net, budget).model_projection
        projected[word] = projected.get(word, 0) + count
    return _escaping_edges_precision(net, projected, closure_budget)


def f_beta(precision: float, fitness: float, beta: float) -> float:
    """Weighted harmonic combination of precision and fitness.

    beta > 1 raises the weight of fitness, beta < 1 the weight of
    precision; beta = 1 is their plain harmonic mean. Returns 0 when
    either input is 0.
    """
    if beta < 0:
        raise ValueError("beta must be non-negative")
    for name, value in (("precision", precision), ("fitness", fitness)):
        if not 0.0 <= value <= 1.0:
            raise ValueError(f"{name} must lie in [0, 1], got {value}")
    b2 = beta * beta
    denominator = b2 * precision + fitness
    if denominator == 0:
        return 0.0
    return (1 + b2) * (precision * fitness) / denominator


def deviating_traces(
    log: EventLog, net: PetriNet, budget: int = DEFAULT_ALIGN_BUDGET
) -> Sublog:
    """The sublog of variants with fitness strictly below 1.

    Fitness is below 1 exactly when the optimal alignment has positive
    cost, so no floating-point comparison is involved.
    """
    deviating = {
        trace: count
        for trace, count in log.variants.items()
        if alignment_cost(trace, net, budget).cost > 0
    }
    return Sublog(deviating, parent=log)


def coverage(
    prototype_list: Sequence[Trace],
    log: EventLog,
    net: PetriNet,
    budget: int = DEFAULT_ALIGN_BUDGET,
) -> tuple[float, float]:
    """(log coverage, model trace coverage) of a prototype set and net.

    Log coverage is the fraction of traces equal to some prototype; model
    trace coverage is the fraction replaying with alignment cost zero.
    """
    selected = {tuple(p) for p in prototype_list}
    for p in selected:
        if p not in log:
            raise ValueError(f"prototype {p!r} is not a variant of the log")
    total = log.total_traces
    if total == 0:
        raise ValueError("cannot compute coverage of an empty log")
    log_cov = sum(count for trace, count in log.variants.items() if trace in selected)
    model_cov = sum(
        count
        for trace, count in log.variants.items()
        if alignment_cost(trace, net, budget).cost == 0
    )
    return log_cov / total, model_cov / total


@dataclass(frozen=True)
class QualityReport:
    """All quality numbers for one model against one log."""

    fitness: float
    precision: float
    f_beta: float
    beta: float
    size: int
    cardoso: int
    log_coverage: float
    model_trace_coverage: float

    def to_dict(self) -> dict[str, float | int]:
        return {
            "fitness": self.fitness,
            "precision": self.precision,
            "f_beta": self.f_beta,
            "beta": self.beta,
            "size": self.size,
            "cardoso": self.cardoso,
            "log_coverage": self.log_coverage,
            "model_trace_coverage": self.model_trace_coverage,
        }


def compute_report(
    log: EventLog,
    net: PetriNet,
    prototype_list: Sequence[Trace],
    beta: float,
    budget: int = DEFAULT_ALIGN_BUDGET,
    alignments: Mapping[Trace, AlignmentResult] | None = None,
    closure_budget: int = DEFAULT_CLOSURE_BUDGET,
) -> QualityReport:
    """Assemble a QualityReport with a single alignment pass per variant.

    Callers that already hold per-variant alignments (the selection loop
    does) can pass them in to avoid a second search.
    """
    if alignments is None:
        alignments = variant_alignments(log, net, budget)
    shortest = shortest_visible_path(net)
    fit = sum(
        count * _fitness_from_cost(alignments[trace].cost, len(trace), shortest)
        for trace, count in log.variants.items()
    ) / log.total_traces
    precision = _precision_from_projections(log, net, alignments, closure_budget)
    selected = {tuple(p) for p in prototype_list}
    log_cov = (
        sum(count for trace, count in log.variants.items() if trace in selected)
        / log.total_traces
    )
    model_cov = (
        sum(count for trace, count in log.variants.items() if alignments[trace].cost == 0)
        / log.total_traces
    )
    return QualityReport(
        fitness=float(fit),
        precision=precision,
        f_beta=f_beta(precision, float(fit), beta),
        beta=beta,
        size=size_metric(net),
        cardoso=cardoso_metric(net),
        log_coverage=log_cov,
        model_trace_coverage=model_cov,
    )


def _precision_from_projections(
    log: EventLog,
    net: PetriNet,
    alignments: Mapping[Trace, AlignmentResult],
    closure_budget: int = DEFAULT_CLOSURE_BUDGET,
) -> float:
    projected: dict[Trace, int] = {}
    for trace, count in log.variants.items():
        word = alignments[trace].model_projection
        projected[word] = projected.get(word, 0) + count
    return _escaping_edges_precision(net, projected, closure_budget)


def _escaping_edges_precision(
    net: PetriNet, projected: dict[Trace, int], closure_budget: int
) -> float:
    # prefix tree of the replayed words: weight = traces passing through,
    # observed = activities seen leaving the state
    weight: dict[Trace, int] = {}
    observed: dict[Trace, set[str]] = {}
    for word, count in sorted(projected.items()):
        for i in range(len(word) + 1):
            prefix = word[:i]
            weight[prefix] = weight.get(prefix, 0) + count
            observed.setdefault(prefix, set())
            if i < len(word):
                observed[prefix].add(word[i])

    # subset construction along the prefix tree: the marking set of a
    # prefix is every marking reachable with exactly that visible word
    marking_sets: dict[Trace, set[Marking]] = {
        (): _silent_closure(net, {net.initial_marking}, closure_budget)
    }
    for prefix in sorted(weight, key=len):
        if prefix == ():
            continue
        base = marking_sets[prefix[:-1]]
        label = prefix[-1]
        stepped = {
            fire(net, m, t)
            for m in base
            for t in enabled(net, m)
            if net.label(t) == label
        }
        marking_sets[prefix] = _silent_closure(net, stepped, closure_budget)

    escaping_total = 0
    enabled_total = 0
    for prefix, w in weight.items():
        enabled_labels = {
            net.label(t)
            for m in marking_sets[prefix]
            for t in enabled(net, m)
            if not net.is_silent(t)
        }
        escaping = enabled_labels - observed[prefix]
        escaping_total += w * len(escaping)
        enabled_total += w * len(enabled_labels)
    if enabled_total == 0:
        return 1.0
    return 1.0 - escaping_total / enabled_total
