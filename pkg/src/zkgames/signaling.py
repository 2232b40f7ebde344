"""Zero-knowledge signaling machinery.

The verifier's acceptance threshold after k rounds is the exact rational
h_k = 1 - 2^(k+1) * 3^(-k), which increases towards 1.  The lambda
transition maps a history value to knowledge mode when h_k is effectively 1
and to belief mode otherwise; the stage matrices encode the ordered
(P0, V0) ambiguity a player faces about which decision state they are in.
The Monte Carlo simulator measures how long an uninformed prover survives
round-by-round bluffing, against the analytic residual as oracle.

Threshold and lambda operations are pure; a SignalingSession is the one
mutable record (it accumulates round history and validity promotions) and
must not be shared across threads.
"""

from __future__ import annotations

import hashlib
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

import numpy as np

from .alternation import PredicateAssignment, StageState
from .epistemic import Validity

ROW = "row"
COLUMN = "column"

EVIDENCE_FIRST = "evidence_first"
PROOF_FIRST = "proof_first"


def zk_threshold(k: int) -> Fraction:
    """Exact acceptance threshold 1 - 2^(k+1)/3^k after k rounds."""
    if k < 2:
        raise ValueError(f"threshold is not a probability below k=2 (got k={k})")
    return 1 - Fraction(2 ** (k + 1), 3 ** k)


@dataclass(frozen=True)
class ZkThreshold:
    """Round count paired with its exact threshold value."""

    k: int
    value: Fraction = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", zk_threshold(self.k))


def zk_limit_satisfied(k: int, epsilon: float) -> bool:
    """True iff the k-round threshold is within epsilon of 1."""
    if not 0 < epsilon < 1:
        raise ValueError(f"epsilon must lie in (0, 1), got {epsilon}")
    return zk_threshold(k) >= 1 - epsilon


@dataclass(frozen=True)
class RoundRecord:
    round_index: int
    prover_passed: bool
    stage_emitted: StageState
    assignment: PredicateAssignment

    def __post_init__(self) -> None:
        if self.round_index < 1:
            raise ValueError(f"round indices start at 1, got {self.round_index}")


def _check_probability(name: str, value) -> None:
    if not 0 <= value <= 1:
        raise ValueError(f"{name} must lie in [0, 1], got {value}")


@dataclass
class SignalingSession:
    """Round history plus the confidence values driving stage inference.

    `q_i0` is the verifier's belief that the prover is uninformed and
    `q_u0` the probability that the prover is uninformed; `p_u0`/`p_i0`
    are the stage probabilities compared by `infer_stage`.
    `doxastic_value` is the current numeric weight of the conditional
    belief, returned by the case functions when their congruence test
    fails.
    """

    q_i0: float
    q_u0: float
    p_u0: float | None = None
    p_i0: float | None = None
    epsilon: float = 1e-3
    doxastic_value: float = 0.5
    evidence_event: str = "E"
    condition_event: str = "F"
    history: list[RoundRecord] = field(default_factory=list)
    validity: Validity = Validity.UNIVERSAL
    promotions: list[float] = field(default_factory=list)

    def __post_init__(self) -> None:
        _check_probability("q_i0", self.q_i0)
        _check_probability("q_u0", self.q_u0)
        _check_probability("doxastic_value", self.doxastic_value)
        for name in ("p_u0", "p_i0"):
            value = getattr(self, name)
            if value is not None:
                _check_probability(name, value)
        if not 0 < self.epsilon < 0.5:
            raise ValueError(f"epsilon must lie in (0, 0.5), got {self.epsilon}")

    def add_round(self, record: RoundRecord) -> None:
        if self.history and record.round_index <= self.history[-1].round_index:
            raise ValueError(
                f"round indices must strictly increase: {record.round_index} after "
                f"{self.history[-1].round_index}"
            )
        self.history.append(record)

    def record_round(self, prover_passed: bool, stage: StageState, assignment: PredicateAssignment) -> RoundRecord:
        """Append a round with the next index and return the record."""
        index = self.history[-1].round_index + 1 if self.history else 1
        record = RoundRecord(index, prover_passed, stage, assignment)
        self.add_round(record)
        return record


@dataclass(frozen=True)
class Knowledge:
    """Knowledge mode K(E): the history certifies the event."""

    event: str = "E"


@dataclass(frozen=True)
class Belief:
    """Belief mode B^F(E): the event is held doxastically, conditioned on F."""

    condition: str = "F"
    event: str = "E"


Mode = Union[Knowledge, Belief]


def lambda_transition(h_value, session: SignalingSession) -> Mode:
    """Knowledge mode when the history value is effectively 1, belief mode otherwise.

    Firing knowledge mode promotes the session's validity tag from
    universal to epistemic and logs the triggering value.
    """
    if not 0 <= h_value <= 1:
        raise ValueError(f"history value must lie in [0, 1], got {h_value}")
    if h_value >= 1 - session.epsilon:
        session.validity = Validity.EPISTEMIC
        session.promotions.append(float(h_value))
        return Knowledge(event=session.evidence_event)
    return Belief(condition=session.condition_event, event=session.evidence_event)


def q_u_probability(session: SignalingSession, belief_holds: bool) -> float:
    """Probability that the prover is uninformed.

    The session's doxastic weight when the belief event meets the
    information cell; 0 otherwise (the prover is taken as perfectly
    informed).
    """
    return session.doxastic_value if belief_holds else 0.0


def h_k_at_P0(session: SignalingSession, fx_matches_recall: bool) -> float:
    """History value at the proposition stage.

    1 when the feasibility predicate is congruent to recall, else the
    session's current doxastic value.
    """
    if not session.history:
        raise ValueError("no rounds recorded; the proposition-stage history value needs at least one move")
    return 1.0 if fx_matches_recall else session.doxastic_value


@dataclass(frozen=True)
class Rejection:
    """Marker for a failed verification: feasibility regarded as likely false."""

    reason: str = "feasibility regarded as likely false"


def verify_at_V0(session: SignalingSession, k: int) -> Fraction | Rejection:
    """Verification-stage outcome after k rounds.

    The exact threshold when the prover cannot be uninformed (q_u0 = 0);
    otherwise a rejection marker.
    """
    threshold = zk_threshold(k)
    if session.q_u0 == 0:
        return threshold
    return Rejection()


@dataclass(frozen=True)
class LambdaVector:
    """Row or column stage strategy holding both stage symbols exactly once."""

    orientation: str
    entries: tuple[StageState, StageState]

    def __post_init__(self) -> None:
        if self.orientation not in (ROW, COLUMN):
            raise ValueError(f"orientation must be {ROW!r} or {COLUMN!r}, got {self.orientation!r}")
        if set(self.entries) != {StageState.P0, StageState.V0}:
            raise ValueError("a stage strategy must contain P0 and V0 exactly once")


def proposition_strategy() -> LambdaVector:
    """The proposition-led row form [P0 V0]."""
    return LambdaVector(ROW, (StageState.P0, StageState.V0))


def verification_strategy() -> LambdaVector:
    """The verification-led column form [V0; P0]."""
    return LambdaVector(COLUMN, (StageState.V0, StageState.P0))


def invert_strategy(strategy: LambdaVector) -> LambdaVector:
    """The opposing form: orientation flipped, entries reversed.  Involutive."""
    orientation = COLUMN if strategy.orientation == ROW else ROW
    return LambdaVector(orientation, tuple(reversed(strategy.entries)))


Pair = tuple[StageState, StageState]


@dataclass(frozen=True)
class LambdaMatrix:
    """2x2 grid of ordered stage pairs."""

    entries: tuple[tuple[Pair, Pair], tuple[Pair, Pair]]

    def __post_init__(self) -> None:
        if len(self.entries) != 2 or any(len(row) != 2 for row in self.entries):
            raise ValueError("lambda matrix must be 2x2")
        for row in self.entries:
            for pair in row:
                if len(pair) != 2 or not all(s in (StageState.P0, StageState.V0) for s in pair):
                    raise ValueError(f"matrix entries must be ordered (P0, V0) pairs, got {pair!r}")


def lambda_product(first: LambdaVector, second: LambdaVector) -> LambdaMatrix:
    """Outer product of two stage strategies of opposite orientation.

    Entry (i, j) pairs the first operand's i-th symbol with the second
    operand's j-th symbol.
    """
    if first.orientation == second.orientation:
        raise ValueError("product requires one row form and one column form")
    return LambdaMatrix(
        tuple(
            tuple((first.entries[i], second.entries[j]) for j in range(2))
            for i in range(2)
        )
    )


def proposition_phase() -> LambdaMatrix:
    """The proposition-first phase state d1d2."""
    return lambda_product(proposition_strategy(), verification_strategy())


def verification_phase() -> LambdaMatrix:
    """The verification-first phase state d2d1."""
    return lambda_product(verification_strategy(), proposition_strategy())


def complement(matrix: LambdaMatrix) -> LambdaMatrix:
    """The opposing phase state: d1d2 <-> d2d1.  Involutive."""
    d1d2 = proposition_phase()
    d2d1 = verification_phase()
    if matrix == d1d2:
        return d2d1
    if matrix == d2d1:
        return d1d2
    raise ValueError("complement is defined only for the two canonical phase states")


def stage_probability(pair: Pair, order: str) -> float:
    """Probability the prover is uninformed, from an ordered stage pair.

    Matched pairs are tautologies (0).  A mixed pair carries weight 0.5
    only when its order agrees with the move order: (V0, P0) needs proof
    before evidence, (P0, V0) evidence before proof.
    """
    if order not in (EVIDENCE_FIRST, PROOF_FIRST):
        raise ValueError(f"order must be {EVIDENCE_FIRST!r} or {PROOF_FIRST!r}, got {order!r}")
    a, b = pair
    for stage in pair:
        if stage not in (StageState.P0, StageState.V0):
            raise ValueError(f"stage pair must be drawn from P0/V0, got {stage!r}")
    if a == b:
        return 0.0
    if pair == (StageState.V0, StageState.P0):
        if order != PROOF_FIRST:
            raise ValueError("no value is assigned to (V0, P0) unless proof precedes evidence")
        return 0.5
    if order != EVIDENCE_FIRST:
        raise ValueError("no value is assigned to (P0, V0) unless evidence precedes proof")
    return 0.5


@dataclass(frozen=True)
class StageInference:
    """Decided stage with the inequality that fired and the final threshold check."""

    decision: str  # "d1" or "d2"
    strategy: str
    fired: str
    rounds: int
    threshold: Fraction | None
    threshold_near_one: bool | None


def infer_stage(session: SignalingSession) -> StageInference:
    """Decide between the proposition-led and verification-led stages.

    d1 fires when p_u0 < p_i0 (strategy f(P0): s in sigma), d2 when
    p_i0 < p_u0 (strategy f(V0): t in tau).  Only strict inequalities
    decide; a tie is an ambiguity error.
    """
    if not session.history:
        raise ValueError("stage inference needs at least one recorded round")
    if session.p_u0 is None or session.p_i0 is None:
        raise ValueError("stage probabilities p_u0 and p_i0 must be set before inference")
    if session.p_u0 == session.p_i0:
        raise ValueError(f"ambiguous stage: p_u0 = p_i0 = {session.p_u0}; only strict inequalities decide")
    k = session.history[-1].round_index
    threshold = zk_threshold(k) if k >= 2 else None
    near_one = None if threshold is None else threshold >= 1 - session.epsilon
    if session.p_u0 < session.p_i0:
        return StageInference(
            decision="d1",
            strategy="f(P0): s in sigma",
            fired="p_u0 < p_i0",
            rounds=k,
            threshold=threshold,
            threshold_near_one=near_one,
        )
    return StageInference(
        decision="d2",
        strategy="f(V0): t in tau",
        fired="p_i0 < p_u0",
        rounds=k,
        threshold=threshold,
        threshold_near_one=near_one,
    )


@dataclass(frozen=True)
class SimulationConfig:
    p_informed: float = 0.0
    bluff_success: float = 2 / 3
    k_max: int = 8
    trials: int = 10_000
    seed: int = 0
    workers: int = 1

    def __post_init__(self) -> None:
        _check_probability("p_informed", self.p_informed)
        _check_probability("bluff_success", self.bluff_success)
        if self.k_max < 2:
            raise ValueError(f"k_max must be at least 2, got {self.k_max}")
        if self.trials < 1:
            raise ValueError(f"trials must be at least 1, got {self.trials}")
        if self.workers < 1:
            raise ValueError(f"workers must be at least 1, got {self.workers}")


@dataclass(frozen=True)
class KRoundStats:
    k: int
    theoretical_hk: Fraction
    analytic_residual: float
    empirical_undetected: float
    uninformed_trials: int


@dataclass(frozen=True)
class SimulationReport:
    config: SimulationConfig
    rows: tuple[KRoundStats, ...]


_CHUNK = 25_000


def _stream_key(seed: int, k: int) -> int:
    digest = hashlib.sha256(f"{seed}:{k}".encode()).digest()
    return int.from_bytes(digest[:16], "big")


def _run_chunk(key: int, blocks_per_trial: int, lo: int, hi: int, k: int,
               p_informed: float, bluff_success: float) -> tuple[int, int]:
    # Counter-based streams: trial t owns counter blocks [t*B, (t+1)*B), so
    # the draws are a pure function of (seed, k, trial) under any chunking.
    generator = np.random.Generator(np.random.Philox(key=key, counter=lo * blocks_per_trial))
    draws = generator.random((hi - lo, 4 * blocks_per_trial))
    informed = draws[:, 0] < p_informed
    survived = (draws[:, 1 : k + 1] < bluff_success).all(axis=1)
    uninformed = ~informed
    return int(uninformed.sum()), int((uninformed & survived).sum())


def simulate(config: SimulationConfig) -> SimulationReport:
    """Round-by-round bluffing statistics for each k in 2..k_max.

    An informed prover passes every round; an uninformed one passes each
    round independently with probability `bluff_success`.  Reported per k:
    the fraction of uninformed provers undetected after k rounds (NaN when
    no trial was uninformed), the analytic residual bluff_success^k, and
    the acceptance threshold.  Bit-identical for a fixed seed regardless
    of the worker count.
    """
    rows = []
    for k in range(2, config.k_max + 1):
        key = _stream_key(config.seed, k)
        blocks = -(-(k + 1) // 4)  # ceil((k+1)/4) Philox blocks of 4 draws
        bounds = [
            (lo, min(lo + _CHUNK, config.trials))
            for lo in range(0, config.trials, _CHUNK)
        ]

        def run(span: tuple[int, int]) -> tuple[int, int]:
            return _run_chunk(key, blocks, span[0], span[1], k,
                              config.p_informed, config.bluff_success)

        if config.workers == 1 or len(bounds) == 1:
            counts = [run(span) for span in bounds]
        else:
            with ThreadPoolExecutor(max_workers=config.workers) as pool:
                counts = list(pool.map(run, bounds))
        uninformed = sum(c[0] for c in counts)
        undetected = sum(c[1] for c in counts)
        empirical = undetected / uninformed if uninformed else math.nan
        rows.append(
            KRoundStats(
                k=k,
                theoretical_hk=zk_threshold(k),
                analytic_residual=config.bluff_success ** k,
                empirical_undetected=empirical,
                uninformed_trials=uninformed,
            )
        )
    return SimulationReport(config=config, rows=tuple(rows))
