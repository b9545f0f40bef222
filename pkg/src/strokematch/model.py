"""Domain types for stroke-based character data."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, NamedTuple, Sequence

import numpy as np


class Point(NamedTuple):
    """Integer pen-sample coordinate."""

    x: int
    y: int


@dataclass(frozen=True)
class Stroke:
    """One pen-down-to-pen-up trace; point order is temporal order."""

    points: tuple[Point, ...]

    def __post_init__(self) -> None:
        if not self.points:
            raise ValueError("stroke needs at least one point")

    @classmethod
    def make(cls, pts: Iterable[Sequence[float]]) -> Stroke:
        return cls(tuple(Point(int(x), int(y)) for x, y in pts))

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[Point]:
        return iter(self.points)

    @cached_property
    def array(self) -> np.ndarray:
        """Points as a read-only (k, 2) int64 array."""
        arr = np.asarray(self.points, dtype=np.int64).reshape(-1, 2)
        arr.setflags(write=False)
        return arr

    def translated(self, dx: int, dy: int) -> Stroke:
        return Stroke(tuple(Point(p.x + dx, p.y + dy) for p in self.points))


@dataclass(frozen=True)
class Character:
    """Ordered stroke sequence; index order records how it was drawn."""

    strokes: tuple[Stroke, ...]

    def __post_init__(self) -> None:
        if not self.strokes:
            raise ValueError("character needs at least one stroke")

    @classmethod
    def make(cls, strokes: Iterable[Iterable[Sequence[float]]]) -> Character:
        return cls(tuple(Stroke.make(s) for s in strokes))

    @property
    def stroke_count(self) -> int:
        return len(self.strokes)

    def __iter__(self) -> Iterator[Stroke]:
        return iter(self.strokes)

    def points(self) -> Iterator[Point]:
        for stroke in self.strokes:
            yield from stroke

    def translated(self, dx: int, dy: int) -> Character:
        return Character(tuple(s.translated(dx, dy) for s in self.strokes))


@dataclass(frozen=True)
class Template:
    """A preprocessed reference character, one per recognizable label."""

    label: str
    character: Character

    def __post_init__(self) -> None:
        if not self.label:
            raise ValueError("template label must be non-empty")
        for stroke in self.character.strokes:
            if len(stroke) < 2:
                raise ValueError(
                    f"template {self.label!r} has a stroke with fewer than 2 points"
                )


@dataclass(frozen=True)
class Candidate:
    """Ranked recognition result; lower score means a closer match."""

    label: str
    score: float


def concat_strokes(strokes: Sequence[Stroke]) -> Stroke:
    """Append strokes end to end, earlier strokes first."""
    if not strokes:
        raise ValueError("empty concatenation")
    pts: list[Point] = []
    for stroke in strokes:
        pts.extend(stroke.points)
    return Stroke(tuple(pts))


def pack(character: Character) -> tuple[np.ndarray, np.ndarray]:
    """Flatten a character to the (points, offsets) layout the kernels use.

    points is (total, 2) int64; stroke j occupies points[offsets[j]:offsets[j+1]].
    """
    counts = np.asarray([len(s) for s in character.strokes], dtype=np.int64)
    offsets = np.zeros(len(counts) + 1, dtype=np.int64)
    np.cumsum(counts, out=offsets[1:])
    points = np.concatenate([s.array for s in character.strokes], axis=0)
    return points, offsets
