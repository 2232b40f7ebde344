"""Truth-functional stage classification for (Sx, Ex, Fx) predicate triples.

The alternation formula
    [(Ex -> Sx) v (Sx -> Ex)] -> [(Ex -> Sx) -> Fx] v [Fx -> (Sx -> Ex)]
is evaluated classically; three of the eight assignments additionally name
a stage of the signaling automaton.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum


class StageState(Enum):
    S0 = "S0"  # initial boundary condition
    P0 = "P0"  # proposition start state
    V0 = "V0"  # verification state


@dataclass(frozen=True)
class PredicateAssignment:
    sx: bool  # subject's knowledge of x
    ex: bool  # encoded evidence of x
    fx: bool  # feasibility of x


@dataclass(frozen=True)
class AlternationVerdict:
    antecedent: bool  # (Ex -> Sx) v (Sx -> Ex)
    lhs: bool  # (Ex -> Sx) -> Fx
    rhs: bool  # Fx -> (Sx -> Ex)
    whole: bool


def _implies(p: bool, q: bool) -> bool:
    return (not p) or q


def eval_alternation(assignment: PredicateAssignment) -> AlternationVerdict:
    """Evaluate the alternation formula on one truth assignment."""
    antecedent = _implies(assignment.ex, assignment.sx) or _implies(assignment.sx, assignment.ex)
    lhs = _implies(_implies(assignment.ex, assignment.sx), assignment.fx)
    rhs = _implies(assignment.fx, _implies(assignment.sx, assignment.ex))
    return AlternationVerdict(
        antecedent=antecedent,
        lhs=lhs,
        rhs=rhs,
        whole=(not antecedent) or lhs or rhs,
    )


_STAGE_ROWS = {
    (True, False, False): StageState.S0,
    (True, True, False): StageState.P0,
    (True, False, True): StageState.V0,
}


def classify_state(assignment: PredicateAssignment) -> StageState | None:
    """Stage named by the assignment, or None when no stage row matches."""
    return _STAGE_ROWS.get((assignment.sx, assignment.ex, assignment.fx))


def stage_assignment(stage: StageState) -> PredicateAssignment:
    """The canonical (sx, ex, fx) triple of a stage."""
    for triple, named in _STAGE_ROWS.items():
        if named is stage:
            return PredicateAssignment(*triple)
    raise ValueError(f"unknown stage {stage!r}")


def boundary_table() -> list[tuple[PredicateAssignment, AlternationVerdict, StageState | None]]:
    """All eight assignments with their verdicts and stage classifications."""
    rows = []
    for sx, ex, fx in itertools.product((True, False), repeat=3):
        assignment = PredicateAssignment(sx, ex, fx)
        rows.append((assignment, eval_alternation(assignment), classify_state(assignment)))
    return rows
