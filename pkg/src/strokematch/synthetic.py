"""Deterministic synthetic glyph corpus.

Glyphs are built from a small stroke-shape vocabulary placed on a 3x3 cell
grid, so strokes within a glyph are well separated and glyphs are easy to
tell apart. Used for tests, benchmarks and demo data; labels are consecutive
CJK codepoints starting at U+4E00.
"""

from __future__ import annotations

import argparse
from pathlib import Path

import numpy as np

from .model import Character, Stroke
from .store import RawCharacterRecord, write_records

GRID = 3
CELL = 80
MARGIN = 10

# Shape vocabulary: polylines in unit cell coordinates.
_SHAPES = (
    ((0.1, 0.5), (0.9, 0.5)),                        # horizontal bar
    ((0.5, 0.1), (0.5, 0.9)),                        # vertical bar
    ((0.1, 0.1), (0.9, 0.9)),                        # falling diagonal
    ((0.9, 0.1), (0.1, 0.9)),                        # rising diagonal
    ((0.1, 0.1), (0.9, 0.1), (0.9, 0.9)),            # top-right corner
    ((0.1, 0.1), (0.1, 0.9), (0.9, 0.9)),            # left-bottom corner
    ((0.1, 0.2), (0.5, 0.8), (0.9, 0.2)),            # vee
    ((0.1, 0.8), (0.5, 0.2), (0.9, 0.8)),            # caret
)


def _stroke_in_cell(rng: np.random.Generator, cell: int, shape_idx: int) -> Stroke:
    cx = (cell % GRID) * CELL + MARGIN
    cy = (cell // GRID) * CELL + MARGIN
    span = CELL - 2 * MARGIN
    pts = []
    for ux, uy in _SHAPES[shape_idx]:
        jx = int(rng.integers(-4, 5))
        jy = int(rng.integers(-4, 5))
        x = int(round(cx + ux * span)) + jx
        y = int(round(cy + uy * span)) + jy
        pts.append((x, y))
    return Stroke.make(pts)


def make_glyph(rng: np.random.Generator, n_strokes: int) -> Character:
    """Strokes in distinct grid cells, top-left to bottom-right order."""
    cells = sorted(rng.choice(GRID * GRID, size=n_strokes, replace=False).tolist())
    shapes = rng.integers(0, len(_SHAPES), size=n_strokes)
    return Character(
        tuple(_stroke_in_cell(rng, int(c), int(s)) for c, s in zip(cells, shapes))
    )


def _signature(char: Character) -> tuple:
    return tuple(
        (s.points[0].x // 20, s.points[0].y // 20, s.points[-1].x // 20, s.points[-1].y // 20)
        for s in char.strokes
    )


def make_corpus(
    count: int,
    seed: int = 7,
    min_strokes: int = 2,
    max_strokes: int = 4,
) -> list[RawCharacterRecord]:
    """`count` distinct labeled glyphs; fully determined by the seed."""
    rng = np.random.default_rng(seed)
    records: list[RawCharacterRecord] = []
    seen: set[tuple] = set()
    while len(records) < count:
        n_strokes = int(rng.integers(min_strokes, max_strokes + 1))
        glyph = make_glyph(rng, n_strokes)
        sig = _signature(glyph)
        if sig in seen:
            continue
        seen.add(sig)
        label = chr(0x4E00 + len(records))
        records.append(RawCharacterRecord(label, glyph))
    return records


def jitter_record(
    record: RawCharacterRecord, rng: np.random.Generator, amount: int = 2
) -> RawCharacterRecord:
    """Independent uniform +/-amount pixel noise on every point."""
    strokes = []
    for stroke in record.character.strokes:
        pts = [
            (p.x + int(rng.integers(-amount, amount + 1)),
             p.y + int(rng.integers(-amount, amount + 1)))
            for p in stroke
        ]
        strokes.append(Stroke.make(pts))
    return RawCharacterRecord(record.label, Character(tuple(strokes)))


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="python -m strokematch.synthetic",
        description="Generate a synthetic template corpus (and optional jittered test set).",
    )
    parser.add_argument("output", type=Path, help="template file to write")
    parser.add_argument("--count", type=int, default=50)
    parser.add_argument("--seed", type=int, default=7)
    parser.add_argument("--min-strokes", type=int, default=2)
    parser.add_argument("--max-strokes", type=int, default=4)
    parser.add_argument("--testset", type=Path, help="also write a jittered copy here")
    parser.add_argument("--jitter", type=int, default=2)
    args = parser.parse_args(argv)

    records = make_corpus(args.count, args.seed, args.min_strokes, args.max_strokes)
    write_records(args.output, records)
    print(f"wrote {len(records)} templates to {args.output}")
    if args.testset:
        rng = np.random.default_rng(args.seed + 1)
        jittered = [jitter_record(r, rng, args.jitter) for r in records]
        write_records(args.testset, jittered)
        print(f"wrote {len(jittered)} test characters to {args.testset}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
