"""Template and stroke-data files.

Line-oriented UTF-8, LF endings, no BOM. One record is a label line followed
by one line per stroke of space-separated `x,y` integer pairs; records are
separated by blank lines. A record whose first line already parses as stroke
data is an unlabeled input record (recognition inputs don't need a label).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from .model import Character, Point, Stroke
from .preprocess import PreprocessConfig, preprocess
from .recognizer import TemplateStore
from .model import Template

_STROKE_LINE = re.compile(r"^-?\d+,-?\d+( -?\d+,-?\d+)*$")


class StoreFormatError(ValueError):
    """Malformed record data; carries the 1-based source line."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class RawCharacterRecord:
    """Strokes at raw device scale, optionally labeled."""

    label: str | None
    character: Character


def _parse_stroke_line(text: str, line_no: int) -> Stroke:
    points = []
    for col, pair in enumerate(text.split(" ")):
        xs, _, ys = pair.partition(",")
        try:
            points.append(Point(int(xs), int(ys)))
        except ValueError:
            raise StoreFormatError(
                f"bad coordinate pair {pair!r} (column {col + 1})", line_no
            ) from None
    return Stroke(tuple(points))


def parse_records(text: str) -> list[RawCharacterRecord]:
    """Parse every record in a document."""
    if text.startswith("﻿"):
        raise StoreFormatError("byte order mark not allowed", 1)
    records: list[RawCharacterRecord] = []
    label: str | None = None
    strokes: list[Stroke] = []
    started_at = 1
    saw_record_line = False

    def flush(line_no: int) -> None:
        nonlocal label, strokes, saw_record_line
        if not saw_record_line:
            return
        if not strokes:
            raise StoreFormatError("record has no strokes", started_at)
        records.append(RawCharacterRecord(label, Character(tuple(strokes))))
        label = None
        strokes = []
        saw_record_line = False

    for line_no, line in enumerate(text.split("\n"), start=1):
        line = line.rstrip("\r")
        if line == "":
            flush(line_no)
            continue
        if not saw_record_line:
            started_at = line_no
            saw_record_line = True
            if _STROKE_LINE.match(line):
                label = None
                strokes.append(_parse_stroke_line(line, line_no))
            else:
                if any(c.isspace() for c in line):
                    raise StoreFormatError(f"label {line!r} contains whitespace", line_no)
                label = line
        else:
            if not _STROKE_LINE.match(line):
                raise StoreFormatError(f"expected stroke data, got {line!r}", line_no)
            strokes.append(_parse_stroke_line(line, line_no))
    flush(len(text.split("\n")) + 1)
    if not records:
        return []
    return records


def parse_character(data: bytes) -> RawCharacterRecord:
    """Parse a single record from raw bytes."""
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise StoreFormatError(f"not valid UTF-8: {exc}", 1) from None
    records = parse_records(text)
    if not records:
        raise StoreFormatError("no record found", 1)
    if len(records) > 1:
        raise StoreFormatError("expected a single record", 1)
    return records[0]


def serialize_record(record: RawCharacterRecord) -> str:
    lines = []
    if record.label is not None:
        lines.append(record.label)
    for stroke in record.character.strokes:
        lines.append(" ".join(f"{p.x},{p.y}" for p in stroke))
    return "\n".join(lines) + "\n"


def serialize_records(records: Iterable[RawCharacterRecord]) -> str:
    return "\n".join(serialize_record(r) for r in records)


def write_records(path: str | Path, records: Iterable[RawCharacterRecord]) -> None:
    Path(path).write_text(serialize_records(records), encoding="utf-8", newline="\n")


def load_templates(path: str | Path, cfg: PreprocessConfig) -> TemplateStore:
    """Read raw template records and preprocess them with cfg.

    Templates are stored raw on disk so a config change needs no migration.
    """
    text = Path(path).read_text(encoding="utf-8", newline="\n")
    records = parse_records(text)
    templates = []
    seen: set[str] = set()
    for record in records:
        if record.label is None:
            raise StoreFormatError("template record without label", 1)
        if record.label in seen:
            raise ValueError(f"duplicate template label {record.label!r}")
        seen.add(record.label)
        templates.append(Template(record.label, preprocess(record.character, cfg)))
    return TemplateStore(templates, cfg)


def load_testset(path: str | Path) -> list[tuple[RawCharacterRecord, str]]:
    """Labeled records for the evaluation harness, in file order."""
    text = Path(path).read_text(encoding="utf-8", newline="\n")
    pairs = []
    for record in parse_records(text):
        if record.label is None:
            raise StoreFormatError("test record without label", 1)
        pairs.append((record, record.label))
    return pairs
