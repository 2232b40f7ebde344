"""Finite-state knowledge and belief structures.

States are symbolic identifiers grouped into per-agent information
partitions.  An agent knows an event exactly on the states whose partition
cell is contained in the event; conditional belief intersects the cell with
the conditioning evidence first.  Group knowledge, common knowledge, public
events and knowledge-dominant belief revision are all built on the same cell
machinery, so every operation here is a finite set computation that can be
cross-checked by brute force.

All values are immutable after construction and every operation is pure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping

Event = frozenset
"""Events are extensional sets of state identifiers."""


class Validity(Enum):
    """Two-valued validity tag: universal consistency vs epistemic validity."""

    UNIVERSAL = "universal"
    EPISTEMIC = "epistemic"


@dataclass(frozen=True)
class StateSpace:
    """Ordered, non-empty set of distinct state identifiers."""

    states: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.states:
            raise ValueError("non-empty state set required (Omega)")
        if len(set(self.states)) != len(self.states):
            dupes = sorted({s for s in self.states if self.states.count(s) > 1})
            raise ValueError(f"duplicate state identifiers: {dupes}")

    def __iter__(self):
        return iter(self.states)

    def __len__(self) -> int:
        return len(self.states)

    def __contains__(self, state: object) -> bool:
        return state in self.states

    def ordered(self, event: Iterable[str]) -> tuple[str, ...]:
        """Members of `event` in declaration order."""
        members = set(event)
        return tuple(s for s in self.states if s in members)


@dataclass(frozen=True)
class PartitionReport:
    p1: bool
    p2: bool


def check_partition_properties(states: Iterable[str], cells: Iterable[Iterable[str]]) -> PartitionReport:
    """Classify a candidate cell list against the two partition properties.

    p1: every state lies in at least one cell containing it.
    p2: membership implies identical cells, i.e. no state belongs to two
    extensionally different cells.

    The input may be malformed; this classifies rather than rejects.
    """
    state_list = tuple(states)
    cell_sets = [frozenset(c) for c in cells]
    p1 = all(any(s in c for c in cell_sets) for s in state_list)
    p2 = True
    for s in state_list:
        holding = [c for c in cell_sets if s in c]
        if any(c != holding[0] for c in holding[1:]):
            p2 = False
            break
    return PartitionReport(p1=p1, p2=p2)


@dataclass(frozen=True)
class Partition:
    """Pairwise-disjoint non-empty cells covering the state space.

    The constructor canonicalizes its input: empty cells and repeated
    (extensionally equal) cells are dropped before validation, so a cell
    list is accepted exactly when `check_partition_properties` reports
    both properties true for it.
    """

    space: StateSpace
    cells: tuple[Event, ...]

    def __post_init__(self) -> None:
        canonical: list[Event] = []
        for raw in self.cells:
            cell = frozenset(raw)
            if cell and cell not in canonical:
                canonical.append(cell)
        for cell in canonical:
            stray = cell - set(self.space.states)
            if stray:
                raise ValueError(f"cell {sorted(cell)} contains unknown states {sorted(stray)}")
        report = check_partition_properties(self.space.states, canonical)
        if not report.p1:
            uncovered = [s for s in self.space if not any(s in c for c in canonical)]
            raise ValueError(f"cells do not cover the state space; missing {uncovered}")
        if not report.p2:
            raise ValueError("cells overlap: some state lies in two different cells")
        object.__setattr__(self, "cells", tuple(canonical))

    def cell_of(self, state: str) -> Event:
        for cell in self.cells:
            if state in cell:
                return cell
        raise ValueError(f"unknown state {state!r}")


@dataclass(frozen=True)
class FrameReport:
    serial: bool
    transitive: bool
    euclidean: bool


def check_frame_properties(states: Iterable[str], relation: Iterable[tuple[str, str]]) -> FrameReport:
    """Exhaustively check seriality, transitivity and euclideanness."""
    state_set = set(states)
    pairs = set()
    for s, t in relation:
        if s not in state_set or t not in state_set:
            raise ValueError(f"relation pair ({s!r}, {t!r}) references an unknown state")
        pairs.add((s, t))
    successors = {s: {t for (a, t) in pairs if a == s} for s in state_set}
    serial = all(successors[s] for s in state_set)
    transitive = all((a, c) in pairs for (a, b) in pairs for c in successors[b])
    euclidean = all((b, c) in pairs for a in state_set for b in successors[a] for c in successors[a])
    return FrameReport(serial=serial, transitive=transitive, euclidean=euclidean)


@dataclass(frozen=True)
class DoxasticFrame:
    """Accessibility relation with cached seriality/transitivity/euclidean flags."""

    states: tuple[str, ...]
    relation: frozenset
    serial: bool = field(init=False)
    transitive: bool = field(init=False)
    euclidean: bool = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "relation", frozenset(tuple(p) for p in self.relation))
        report = check_frame_properties(self.states, self.relation)
        object.__setattr__(self, "serial", report.serial)
        object.__setattr__(self, "transitive", report.transitive)
        object.__setattr__(self, "euclidean", report.euclidean)


@dataclass(frozen=True)
class EpistemicModel:
    """State space, agents and one information partition per agent.

    Accessibility frames, the outcome map and named events are optional;
    no epistemic query requires them.
    """

    space: StateSpace
    agents: tuple[str, ...]
    partitions: Mapping[str, Partition]
    frames: Mapping[str, DoxasticFrame] = field(default_factory=dict)
    outcomes: Mapping[str, str] | None = None
    named_events: Mapping[str, Event] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if len(set(self.agents)) != len(self.agents):
            raise ValueError("duplicate agent identifiers")
        if set(self.partitions) != set(self.agents):
            raise ValueError("exactly one partition per declared agent required")
        for agent, part in self.partitions.items():
            if part.space != self.space:
                raise ValueError(f"partition for agent {agent!r} is over a different state space")
        for agent in self.frames:
            if agent not in self.agents:
                raise ValueError(f"frame for unknown agent {agent!r}")
        if self.outcomes is not None:
            stray = set(self.outcomes) - set(self.space.states)
            if stray:
                raise ValueError(f"outcome map references unknown states {sorted(stray)}")
        for name, event in self.named_events.items():
            stray = set(event) - set(self.space.states)
            if stray:
                raise ValueError(f"event {name!r} references unknown states {sorted(stray)}")

    def event(self, name: str) -> Event:
        if name not in self.named_events:
            raise ValueError(f"unknown event {name!r}; declared events: {sorted(self.named_events)}")
        return frozenset(self.named_events[name])


def _require_agent(model: EpistemicModel, agent: str) -> Partition:
    if agent not in model.agents:
        raise ValueError(f"unknown agent {agent!r}; declared agents: {list(model.agents)}")
    return model.partitions[agent]


def _require_event(model: EpistemicModel, event: Iterable[str]) -> Event:
    ev = frozenset(event)
    stray = ev - set(model.space.states)
    if stray:
        raise ValueError(f"event references unknown states {sorted(stray)}")
    return ev


def cell(model: EpistemicModel, agent: str, state: str) -> Event:
    """The unique partition cell of `agent` containing `state`."""
    part = _require_agent(model, agent)
    if state not in model.space:
        raise ValueError(f"unknown state {state!r}")
    return part.cell_of(state)


def knows(model: EpistemicModel, agent: str, event: Iterable[str]) -> Event:
    """States where the agent's cell is contained in the event."""
    part = _require_agent(model, agent)
    ev = _require_event(model, event)
    return frozenset(s for s in model.space if part.cell_of(s) <= ev)


def believes(model: EpistemicModel, agent: str, condition: Iterable[str], event: Iterable[str]) -> Event:
    """Conditional belief: states where the cell restricted to `condition` lies in `event`.

    With `condition` equal to the whole space this coincides with `knows`.
    When the restriction is empty the membership is vacuous; see
    `vacuous_belief_states` for the diagnostic.
    """
    part = _require_agent(model, agent)
    cond = _require_event(model, condition)
    ev = _require_event(model, event)
    return frozenset(s for s in model.space if (cond & part.cell_of(s)) <= ev)


def vacuous_belief_states(model: EpistemicModel, agent: str, condition: Iterable[str]) -> Event:
    """States whose cell misses the conditioning event entirely.

    On these states `believes` holds for every event, including the empty
    one, purely by vacuity.
    """
    part = _require_agent(model, agent)
    cond = _require_event(model, condition)
    return frozenset(s for s in model.space if not (cond & part.cell_of(s)))


def group_knows(model: EpistemicModel, agents: Iterable[str], event: Iterable[str]) -> Event:
    """Intersection of the individual knowledge events over a non-empty group."""
    group = tuple(agents)
    if not group:
        raise ValueError("group knowledge requires a non-empty agent group")
    result = _require_event(model, event)
    acc = None
    for agent in group:
        known = knows(model, agent, result)
        acc = known if acc is None else (acc & known)
    return acc


def common_knowledge(model: EpistemicModel, agents: Iterable[str], event: Iterable[str]) -> Event:
    """Fixpoint of iterated group knowledge starting from the event."""
    group = tuple(agents)
    if not group:
        raise ValueError("common knowledge requires a non-empty agent group")
    current = _require_event(model, event)
    while True:
        nxt = group_knows(model, group, current)
        if nxt == current:
            return current
        current = nxt


def minimal_public_event(model: EpistemicModel, state: str) -> Event:
    """Smallest event containing `state` that is a union of cells for every agent.

    Computed by iterating cell unions to a fixpoint; equivalently the
    component of `state` under the shares-a-cell reachability relation.
    """
    if state not in model.space:
        raise ValueError(f"unknown state {state!r}")
    current = frozenset([state])
    while True:
        expanded = set(current)
        for agent in model.agents:
            for s in current:
                expanded |= model.partitions[agent].cell_of(s)
        nxt = frozenset(expanded)
        if nxt == current:
            return current
        current = nxt


def is_public_event(model: EpistemicModel, event: Iterable[str]) -> bool:
    """True iff the event is self-evident (a union of cells) for every agent."""
    ev = _require_event(model, event)
    return all(
        model.partitions[agent].cell_of(s) <= ev
        for agent in model.agents
        for s in ev
    )


@dataclass(frozen=True)
class BeliefState:
    """Events an agent currently holds as beliefs, with their justifications.

    `justifications` maps a held event to the conditioning evidence that
    licensed it.  `discarded` accumulates beliefs dropped by revision.
    """

    agent: str
    beliefs: frozenset
    justifications: Mapping[Event, Event] = field(default_factory=dict)
    discarded: tuple[Event, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "beliefs", frozenset(frozenset(b) for b in self.beliefs))


def revise_beliefs(state: BeliefState, knowledge_event: Iterable[str]) -> BeliefState:
    """Attenuate every held belief by the incoming knowledge.

    Knowledge dominates: each belief is intersected with the knowledge
    event, and beliefs that become empty are dropped and recorded in
    `discarded`.  Idempotent for a fixed knowledge event.
    """
    knowledge = frozenset(knowledge_event)
    if not knowledge:
        raise ValueError("knowledge has veracity; an empty knowledge event is contradictory")
    kept: set = set()
    justified: dict = {}
    dropped: list = []
    for belief in state.beliefs:
        revised = belief & knowledge
        if not revised:
            dropped.append(belief)
            continue
        kept.add(revised)
        if revised not in justified and belief in state.justifications:
            justified[revised] = state.justifications[belief]
    return BeliefState(
        agent=state.agent,
        beliefs=frozenset(kept),
        justifications=justified,
        discarded=state.discarded + tuple(dropped),
    )


def check_congruence(state: BeliefState, strategy_events: Iterable[Iterable[str]]) -> bool:
    """True iff every held belief intersects the union of the strategy events.

    Holds vacuously when no beliefs are held.
    """
    universe: set = set()
    for ev in strategy_events:
        universe |= set(ev)
    return all(belief & universe for belief in state.beliefs)
