"""Linguistic fuzzy-logic games over ordinal scales.

Each cell of a two-player grid carries a valuation label and a feasibility
label drawn from one ordered linguistic scale.  Equilibria come in three
forms: valuation dominance (NNE), feasibility dominance (FNE) and their
conjunction (FNNE).  Comparisons are purely ordinal; labels have no
numeric degrees.

Two readings of the dominance quantifier are supported: `literal`
compares a starred cell only against cells whose BOTH coordinates differ,
`strict` against every other cell.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

LITERAL = "literal"
STRICT = "strict"

Coord = tuple[int, int]


@dataclass(frozen=True)
class LinguisticScale:
    """Strictly ordered linguistic terms, least first."""

    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(self.labels) < 2:
            raise ValueError("a linguistic scale needs at least two labels")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("scale labels must be distinct")

    def index(self, label: str) -> int:
        if label not in self.labels:
            raise ValueError(f"unknown label {label!r}; scale: {list(self.labels)}")
        return self.labels.index(label)


def compare_labels(scale: LinguisticScale, a: str, b: str) -> int:
    """Ordering of two labels by scale position: -1, 0 or 1."""
    ia, ib = scale.index(a), scale.index(b)
    return (ia > ib) - (ia < ib)


@dataclass(frozen=True)
class FuzzyCell:
    """Valuation and feasibility of one strategy pair, as scale indices."""

    v: int
    phi: int


@dataclass(frozen=True)
class FuzzyGame:
    """q1 x q2 grid of fuzzy cells over one linguistic scale."""

    scale: LinguisticScale
    cells: tuple[tuple[FuzzyCell, ...], ...]
    strategies: tuple[tuple[str, ...], tuple[str, ...]] | None = None

    def __post_init__(self) -> None:
        if not self.cells or not self.cells[0]:
            raise ValueError("the cell grid must be non-empty")
        width = len(self.cells[0])
        if any(len(row) != width for row in self.cells):
            raise ValueError("the cell grid must be rectangular")
        top = len(self.scale.labels)
        for row in self.cells:
            for cell in row:
                if not (0 <= cell.v < top and 0 <= cell.phi < top):
                    raise ValueError(f"cell {cell} indexes outside the scale")
        if self.strategies is not None:
            rows, cols = self.strategies
            if len(rows) != len(self.cells) or len(cols) != width:
                raise ValueError("strategy labels do not match the grid shape")

    @property
    def q1(self) -> int:
        return len(self.cells)

    @property
    def q2(self) -> int:
        return len(self.cells[0])

    @classmethod
    def from_labels(
        cls,
        scale: LinguisticScale,
        v_rows: Sequence[Sequence[str]],
        phi_rows: Sequence[Sequence[str]],
        strategies: tuple[tuple[str, ...], tuple[str, ...]] | None = None,
    ) -> "FuzzyGame":
        if len(v_rows) != len(phi_rows) or any(
            len(a) != len(b) for a, b in zip(v_rows, phi_rows)
        ):
            raise ValueError("valuation and feasibility grids must have the same shape")
        cells = tuple(
            tuple(
                FuzzyCell(v=scale.index(v), phi=scale.index(phi))
                for v, phi in zip(v_row, phi_row)
            )
            for v_row, phi_row in zip(v_rows, phi_rows)
        )
        return cls(scale=scale, cells=cells, strategies=strategies)


def _check_interpretation(interpretation: str) -> None:
    if interpretation not in (LITERAL, STRICT):
        raise ValueError(f"interpretation must be {LITERAL!r} or {STRICT!r}, got {interpretation!r}")


def _competitors(game: FuzzyGame, spot: Coord, interpretation: str) -> Iterable[Coord]:
    r, c = spot
    for i, j in itertools.product(range(game.q1), range(game.q2)):
        if interpretation == LITERAL:
            if i != r and j != c:
                yield (i, j)
        elif (i, j) != (r, c):
            yield (i, j)


def _dominant(game: FuzzyGame, attr: str, interpretation: str) -> frozenset:
    _check_interpretation(interpretation)
    winners = []
    for spot in itertools.product(range(game.q1), range(game.q2)):
        here = getattr(game.cells[spot[0]][spot[1]], attr)
        if all(
            getattr(game.cells[i][j], attr) < here
            for i, j in _competitors(game, spot, interpretation)
        ):
            winners.append(spot)
    return frozenset(winners)


def find_nne(game: FuzzyGame, interpretation: str = STRICT) -> frozenset:
    """Cells whose valuation strictly dominates all competing cells."""
    return _dominant(game, "v", interpretation)


def find_fne(game: FuzzyGame, interpretation: str = STRICT) -> frozenset:
    """Cells whose feasibility strictly dominates all competing cells."""
    return _dominant(game, "phi", interpretation)


def find_fnne(game: FuzzyGame, interpretation: str = STRICT) -> frozenset:
    """Conjunction of the valuation and feasibility equilibria."""
    return find_nne(game, interpretation) & find_fne(game, interpretation)
