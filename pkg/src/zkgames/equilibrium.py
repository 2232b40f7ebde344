"""Finite normal-form games with exact rational payoffs.

Equilibria are found by exhaustive enumeration over pure profiles; payoffs
are `Fraction`s throughout, so ties are exact and no tolerance enters any
comparison.  Solvability follows the interchangeability condition, and
sub-solutions are the maximal interchangeable subsets of the equilibrium
set, each equal to the cartesian product of its per-player factor sets.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .epistemic import EpistemicModel

Profile = tuple[int, ...]

ENUMERATION_GUARD = 1_000_000
SUBSOLUTION_GUARD = 20


def _as_fraction(value) -> Fraction:
    if isinstance(value, float):
        raise ValueError(f"payoffs must be exact rationals, got float {value!r}")
    return Fraction(value)


@dataclass(frozen=True)
class NormalFormGame:
    """Players, per-player pure strategy names and a total payoff table.

    `payoffs` maps every full profile (one strategy index per player) to a
    tuple of per-player payoffs.  Treat instances as immutable.
    """

    players: tuple[str, ...]
    strategies: tuple[tuple[str, ...], ...]
    payoffs: Mapping[Profile, tuple[Fraction, ...]]

    def __post_init__(self) -> None:
        if not self.players:
            raise ValueError("a game needs at least one player")
        if len(set(self.players)) != len(self.players):
            raise ValueError("duplicate player names")
        if len(self.strategies) != len(self.players):
            raise ValueError("one strategy set per player required")
        for player, options in zip(self.players, self.strategies):
            if not options:
                raise ValueError(f"player {player!r} has an empty strategy set")
            if len(set(options)) != len(options):
                raise ValueError(f"player {player!r} has duplicate strategy names")
        n = len(self.players)
        table = {}
        for profile, values in self.payoffs.items():
            profile = tuple(profile)
            if len(profile) != n or not all(
                0 <= s < len(self.strategies[i]) for i, s in enumerate(profile)
            ):
                raise ValueError(f"profile {profile} is out of range")
            values = tuple(_as_fraction(v) for v in values)
            if len(values) != n:
                raise ValueError(f"profile {profile} needs {n} payoffs, got {len(values)}")
            table[profile] = values
        if len(table) != self.profile_count:
            missing = next(p for p in self.profiles() if p not in table)
            raise ValueError(f"payoff table is not total: profile {missing} is missing")
        object.__setattr__(self, "payoffs", table)

    @property
    def profile_count(self) -> int:
        count = 1
        for options in self.strategies:
            count *= len(options)
        return count

    def profiles(self) -> Iterable[Profile]:
        return itertools.product(*(range(len(options)) for options in self.strategies))

    def profile_from_names(self, names: Sequence[str]) -> Profile:
        if len(names) != len(self.players):
            raise ValueError(f"expected {len(self.players)} strategies, got {len(names)}")
        profile = []
        for i, name in enumerate(names):
            if name not in self.strategies[i]:
                raise ValueError(
                    f"unknown strategy {name!r} for player {self.players[i]!r}; "
                    f"options: {list(self.strategies[i])}"
                )
            profile.append(self.strategies[i].index(name))
        return tuple(profile)

    def profile_names(self, profile: Profile) -> tuple[str, ...]:
        return tuple(self.strategies[i][s] for i, s in enumerate(profile))


def _check_profile(game: NormalFormGame, profile: Profile) -> Profile:
    profile = tuple(profile)
    if profile not in game.payoffs:
        raise ValueError(f"profile {profile} is not a valid profile of this game")
    return profile


def payoff(game: NormalFormGame, profile: Profile, player: int) -> Fraction:
    """Player's payoff at a pure profile."""
    profile = _check_profile(game, profile)
    if not 0 <= player < len(game.players):
        raise ValueError(f"player index {player} out of range")
    return game.payoffs[profile][player]


MixedProfile = tuple[tuple[Fraction, ...], ...]


def validate_mixed_profile(game: NormalFormGame, mixed: MixedProfile) -> MixedProfile:
    """Coerce and validate one probability vector per player (exact rationals)."""
    if len(mixed) != len(game.players):
        raise ValueError(f"expected {len(game.players)} mixed strategies, got {len(mixed)}")
    result = []
    for i, weights in enumerate(mixed):
        weights = tuple(Fraction(w) for w in weights)
        if len(weights) != len(game.strategies[i]):
            raise ValueError(
                f"player {game.players[i]!r} needs {len(game.strategies[i])} weights, "
                f"got {len(weights)}"
            )
        if any(w < 0 for w in weights):
            raise ValueError(f"negative weight in mixed strategy for player {game.players[i]!r}")
        if sum(weights) != 1:
            raise ValueError(
                f"mixed strategy for player {game.players[i]!r} sums to {sum(weights)}, not 1"
            )
        result.append(weights)
    return tuple(result)


def expected_payoff(game: NormalFormGame, mixed: MixedProfile, player: int) -> Fraction:
    """Multilinear expectation of the player's payoff under a product distribution."""
    mixed = validate_mixed_profile(game, mixed)
    total = Fraction(0)
    for profile in game.profiles():
        weight = Fraction(1)
        for i, s in enumerate(profile):
            weight *= mixed[i][s]
            if weight == 0:
                break
        if weight:
            total += weight * payoff(game, profile, player)
    return total


def _deviations(game: NormalFormGame, profile: Profile, player: int) -> Iterable[Profile]:
    for alt in range(len(game.strategies[player])):
        if alt != profile[player]:
            yield profile[:player] + (alt,) + profile[player + 1 :]


def is_equilibrium(game: NormalFormGame, profile: Profile) -> bool:
    """No unilateral pure deviation strictly improves any player's payoff."""
    profile = _check_profile(game, profile)
    for player in range(len(game.players)):
        here = payoff(game, profile, player)
        for deviation in _deviations(game, profile, player):
            if payoff(game, deviation, player) > here:
                return False
    return True


def is_mixed_equilibrium(game: NormalFormGame, mixed: MixedProfile) -> bool:
    """Verify a supplied mixed profile: no pure deviation improves any player."""
    mixed = validate_mixed_profile(game, mixed)
    for player in range(len(game.players)):
        here = expected_payoff(game, mixed, player)
        for alt in range(len(game.strategies[player])):
            point = tuple(
                Fraction(1) if s == alt else Fraction(0)
                for s in range(len(game.strategies[player]))
            )
            deviated = mixed[:player] + (point,) + mixed[player + 1 :]
            if expected_payoff(game, deviated, player) > here:
                return False
    return True


def pure_equilibria(game: NormalFormGame) -> frozenset:
    """Exhaustive filter of all pure profiles by the equilibrium condition."""
    if game.profile_count > ENUMERATION_GUARD:
        raise ValueError(
            f"{game.profile_count} profiles exceed the enumeration guard of {ENUMERATION_GUARD}"
        )
    return frozenset(p for p in game.profiles() if is_equilibrium(game, p))


def is_interchangeable(game: NormalFormGame, eq_set: Iterable[Profile]) -> bool:
    """Closure under swapping any single player's component between members."""
    profiles = frozenset(tuple(p) for p in eq_set)
    for profile in profiles:
        if not is_equilibrium(game, profile):
            raise ValueError(f"profile {profile} is not an equilibrium point")
    for s, t in itertools.product(profiles, repeat=2):
        for player in range(len(game.players)):
            swapped = t[:player] + (s[player],) + t[player + 1 :]
            if swapped not in profiles:
                return False
    return True


def is_solvable(game: NormalFormGame) -> tuple[bool, frozenset | None]:
    """Solvable iff the equilibrium set is non-empty and interchangeable.

    Returns (True, equilibrium set) for a solvable game, else (False, None).
    """
    equilibria = pure_equilibria(game)
    if equilibria and is_interchangeable(game, equilibria):
        return True, equilibria
    return False, None


@dataclass(frozen=True)
class SubSolution:
    """Maximal interchangeable equilibrium subset with its per-player factor sets."""

    profiles: frozenset
    factor_sets: tuple[frozenset, ...]

    def __post_init__(self) -> None:
        product = frozenset(itertools.product(*(sorted(f) for f in self.factor_sets)))
        if product != self.profiles:
            raise ValueError("a sub-solution must equal the product of its factor sets")


def _product_within(factors: Sequence[frozenset], equilibria: frozenset) -> bool:
    return all(p in equilibria for p in itertools.product(*(sorted(f) for f in factors)))


def sub_solutions(game: NormalFormGame) -> tuple[SubSolution, ...]:
    """All maximal interchangeable subsets of the equilibrium set.

    Interchangeable sets are exactly products of per-player factor sets, so
    the search grows factor sets from each equilibrium point and keeps the
    maximal products that stay inside the equilibrium set.
    """
    equilibria = pure_equilibria(game)
    if len(equilibria) > SUBSOLUTION_GUARD:
        raise ValueError(
            f"{len(equilibria)} equilibrium points exceed the sub-solution guard of "
            f"{SUBSOLUTION_GUARD}"
        )
    n = len(game.players)
    candidates: dict[tuple, tuple[frozenset, ...]] = {}
    seen: set[tuple] = set()

    def key(factors: Sequence[frozenset]) -> tuple:
        return tuple(tuple(sorted(f)) for f in factors)

    def grow(factors: tuple[frozenset, ...]) -> None:
        marker = key(factors)
        if marker in seen:
            return
        seen.add(marker)
        extended = False
        for player in range(n):
            choices = {p[player] for p in equilibria} - factors[player]
            for strategy in sorted(choices):
                bigger = factors[:player] + (factors[player] | {strategy},) + factors[player + 1 :]
                if _product_within(bigger, equilibria):
                    extended = True
                    grow(bigger)
        if not extended:
            candidates[marker] = factors

    for point in sorted(equilibria):
        grow(tuple(frozenset([s]) for s in point))

    maximal = []
    for marker, factors in sorted(candidates.items()):
        if any(
            other != marker and all(set(a) <= set(b) for a, b in zip(marker, other))
            for other in candidates
        ):
            continue
        profiles = frozenset(itertools.product(*(sorted(f) for f in factors)))
        maximal.append(SubSolution(profiles=profiles, factor_sets=factors))
    return tuple(maximal)


def is_strong_solution(game: NormalFormGame, candidate: Iterable[Profile]) -> bool:
    """A solution closed under payoff-equal unilateral deviations.

    The candidate must be the full equilibrium set of a solvable game, and
    whenever a unilateral deviation leaves the deviator's payoff unchanged
    the deviated profile must also belong to the set.
    """
    profiles = frozenset(_check_profile(game, p) for p in candidate)
    if not profiles:
        return False
    if profiles != pure_equilibria(game) or not is_interchangeable(game, profiles):
        return False
    for profile in profiles:
        for player in range(len(game.players)):
            here = payoff(game, profile, player)
            for deviation in _deviations(game, profile, player):
                if payoff(game, deviation, player) == here and deviation not in profiles:
                    return False
    return True


@dataclass(frozen=True)
class GamePermutation:
    """Player permutation with per-player strategy bijections.

    `player_map[i]` is the image of player i; `strategy_maps[i]` sends each
    strategy index of player i to a strategy index of the image player.
    """

    player_map: tuple[int, ...]
    strategy_maps: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if sorted(self.player_map) != list(range(len(self.player_map))):
            raise ValueError(f"player map {self.player_map} is not a permutation")
        if len(self.strategy_maps) != len(self.player_map):
            raise ValueError("one strategy map per player required")


def _check_permutation(game: NormalFormGame, perm: GamePermutation) -> None:
    if len(perm.player_map) != len(game.players):
        raise ValueError(
            f"permutation is over {len(perm.player_map)} players, game has {len(game.players)}"
        )
    for i, mapping in enumerate(perm.strategy_maps):
        target = perm.player_map[i]
        if len(mapping) != len(game.strategies[i]) or sorted(mapping) != list(
            range(len(game.strategies[target]))
        ):
            raise ValueError(
                f"strategy map for player {game.players[i]!r} is not a bijection onto "
                f"player {game.players[target]!r}'s strategies"
            )


def apply_permutation(game: NormalFormGame, perm: GamePermutation, profile: Profile) -> Profile:
    """Relabel a profile through the induced profile map."""
    _check_permutation(game, perm)
    profile = _check_profile(game, profile)
    result = [0] * len(profile)
    for i, s in enumerate(profile):
        result[perm.player_map[i]] = perm.strategy_maps[i][s]
    return tuple(result)


def check_symmetry(game: NormalFormGame, perm: GamePermutation) -> bool:
    """True iff the permuted image of every profile pays the image player the same."""
    _check_permutation(game, perm)
    for profile in game.profiles():
        image = apply_permutation(game, perm, profile)
        for player in range(len(game.players)):
            if payoff(game, image, perm.player_map[player]) != payoff(game, profile, player):
                return False
    return True


def symmetric_profiles(game: NormalFormGame, perm: GamePermutation) -> frozenset:
    """Fixed points of the induced profile map."""
    _check_permutation(game, perm)
    return frozenset(p for p in game.profiles() if apply_permutation(game, perm, p) == p)


@dataclass(frozen=True)
class Conjecture:
    """Per-state distribution over the opposing players' pure profiles."""

    player: int
    by_state: Mapping[str, Mapping[tuple, Fraction]]

    def __post_init__(self) -> None:
        table = {}
        for state, dist in self.by_state.items():
            dist = {tuple(k): Fraction(v) for k, v in dist.items()}
            if any(w < 0 for w in dist.values()):
                raise ValueError(f"negative probability in conjecture at state {state!r}")
            if sum(dist.values()) != 1:
                raise ValueError(f"conjecture at state {state!r} does not sum to 1")
            table[state] = dist
        object.__setattr__(self, "by_state", table)


def _measurable(model: EpistemicModel, agent: str, by_state: Mapping[str, object], what: str) -> None:
    missing = set(model.space.states) - set(by_state)
    if missing:
        raise ValueError(f"{what} for agent {agent!r} is undefined on states {sorted(missing)}")
    for cell_event in model.partitions[agent].cells:
        values = [by_state[s] for s in sorted(cell_event)]
        if any(v != values[0] for v in values[1:]):
            raise ValueError(
                f"{what} for agent {agent!r} varies inside the cell {sorted(cell_event)}; "
                "knowledge must determine it"
            )


def check_epistemic_equilibrium(
    model: EpistemicModel,
    game: NormalFormGame,
    strategy_map: Sequence[Mapping[str, int]],
    conjectures: Sequence[Conjecture],
) -> bool:
    """Equilibrium check for partition-measurable state-dependent play.

    Players are matched to the model's agents by position.  Strategies and
    conjectures must be constant on each agent's information cells.  At
    every state where each player's conjecture is point-mass on the others'
    actual actions, the realized profile must be a pure equilibrium.
    """
    n = len(game.players)
    if len(model.agents) != n:
        raise ValueError(f"model has {len(model.agents)} agents but the game has {n} players")
    if len(strategy_map) != n or len(conjectures) != n:
        raise ValueError("one strategy map and one conjecture per player required")
    for i, agent in enumerate(model.agents):
        _measurable(model, agent, strategy_map[i], "strategy")
        if conjectures[i].player != i:
            raise ValueError(f"conjecture at position {i} is declared for player {conjectures[i].player}")
        _measurable(model, agent, conjectures[i].by_state, "conjecture")
    for state in model.space:
        profile = tuple(strategy_map[i][state] for i in range(n))
        _check_profile(game, profile)
        truthful = True
        for i in range(n):
            others = profile[:i] + profile[i + 1 :]
            if conjectures[i].by_state[state].get(others, Fraction(0)) != 1:
                truthful = False
                break
        if truthful and not is_equilibrium(game, profile):
            return False
    return True
