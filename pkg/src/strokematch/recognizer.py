"""Two-stage template ranking.

Coarse classification scores every template with the cheap endpoint distance
and keeps the best 100; fine classification re-links those with the initial
distance and rescores with the whole-whole measure, or the directional one
for inputs with few strokes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from . import kernels
from .linking import DistanceFn, LinkConfig
from .model import Candidate, Character, Template, concat_strokes, pack
from .preprocess import PreprocessConfig, preprocess


@dataclass(frozen=True)
class RecognizerConfig:
    coarse_keep: int = 100
    fine_keep: int = 10
    # Inputs with fewer strokes than this are scored with the directional
    # distance, which tells mirrored sweeps apart; everything else uses the
    # positional whole-whole distance.
    directional_cutoff: int = 3
    link: LinkConfig = field(default_factory=LinkConfig)
    preprocess: PreprocessConfig = field(default_factory=PreprocessConfig)
    # Optional pruning by stroke-count difference; None scores every template
    # so recognition stays stroke-count free.
    count_window: int | None = None

    def __post_init__(self) -> None:
        if self.fine_keep > self.coarse_keep:
            raise ValueError("fine_keep must not exceed coarse_keep")
        if self.fine_keep < 1:
            raise ValueError("fine_keep must be >= 1")
        if self.directional_cutoff < 0:
            raise ValueError("directional_cutoff must be >= 0")


class TemplateStore:
    """Immutable set of preprocessed templates with packed point arrays."""

    def __init__(self, templates: Sequence[Template], preprocess_config: PreprocessConfig):
        labels = [t.label for t in templates]
        seen: set[str] = set()
        for label in labels:
            if label in seen:
                raise ValueError(f"duplicate template label {label!r}")
            seen.add(label)
        self.templates: tuple[Template, ...] = tuple(templates)
        self.preprocess_config = preprocess_config
        self._by_label = {t.label: t for t in self.templates}
        self._index_by_label = {t.label: i for i, t in enumerate(self.templates)}
        if self.templates:
            points_parts: list[np.ndarray] = []
            offs_parts: list[np.ndarray] = []
            ptr = np.zeros(len(self.templates) + 1, dtype=np.int64)
            base = 0
            for idx, tpl in enumerate(self.templates):
                pts, offs = pack(tpl.character)
                points_parts.append(pts)
                offs_parts.append(offs + base)
                base += len(pts)
                ptr[idx + 1] = ptr[idx] + len(offs)
            self.all_points = np.concatenate(points_parts, axis=0)
            self.all_offsets = np.concatenate(offs_parts)
            self.template_ptr = ptr
        else:
            self.all_points = np.zeros((0, 2), dtype=np.int64)
            self.all_offsets = np.zeros(0, dtype=np.int64)
            self.template_ptr = np.zeros(1, dtype=np.int64)

    def __len__(self) -> int:
        return len(self.templates)

    def __iter__(self) -> Iterator[Template]:
        return iter(self.templates)

    def get(self, label: str) -> Template:
        return self._by_label[label]

    def __contains__(self, label: str) -> bool:
        return label in self._by_label

    def packed(self, index: int) -> tuple[np.ndarray, np.ndarray]:
        offs = self.all_offsets[self.template_ptr[index]:self.template_ptr[index + 1]]
        return self.all_points, offs


def weight(
    input_char: Character, template: Template, assignment: np.ndarray, d: DistanceFn
) -> float:
    """Final match weight for a complete stroke map.

    Groups of strokes assigned to the same target are concatenated in slot
    order; merged groups are penalized by the point-count ratio of the two
    sides. The sum is averaged over the smaller character's strokes.
    """
    assignment = np.asarray(assignment, dtype=np.int64)
    if (assignment < 0).any():
        raise ValueError("weight requires a complete stroke map")
    tpl_char = template.character
    if input_char.stroke_count >= tpl_char.stroke_count:
        big, small = input_char, tpl_char
    else:
        big, small = tpl_char, input_char
    if len(assignment) != big.stroke_count:
        raise ValueError("stroke map length must match the larger character")
    total = 0.0
    for value in range(small.stroke_count):
        slots = np.flatnonzero(assignment == value)
        if len(slots) == 0:
            raise ValueError("stroke map must cover every target stroke")
        merged = concat_strokes([big.strokes[int(j)] for j in slots])
        target = small.strokes[value]
        dist = d(merged, target)
        if len(slots) > 1:
            l, o = len(merged), len(target)
            gamma = max(l, o) / min(l, o)
        else:
            gamma = 1.0
        total += gamma * dist
    return total / small.stroke_count


def _rank(labels: Sequence[str], scores: Sequence[float], keep: int) -> list[Candidate]:
    order = sorted(range(len(labels)), key=lambda i: (scores[i], labels[i]))
    return [Candidate(labels[i], float(scores[i])) for i in order[:keep]]


def coarse_classify(
    input_char: Character, store: TemplateStore, cfg: RecognizerConfig
) -> list[Candidate]:
    """Endpoint-distance scoring of the whole store."""
    if len(store) == 0:
        raise ValueError("empty template store")
    pts_in, offs_in = pack(input_char)
    if cfg.count_window is None:
        scores = np.empty(len(store), dtype=np.float64)
        kernels.link_scores_batch(
            pts_in,
            offs_in,
            store.all_points,
            store.all_offsets,
            store.template_ptr,
            cfg.link.coarse_passes,
            kernels.EP,
            kernels.EP,
            scores,
        )
        labels = [t.label for t in store.templates]
        return _rank(labels, scores, cfg.coarse_keep)
    labels = []
    kept_scores = []
    for idx, tpl in enumerate(store.templates):
        if abs(tpl.character.stroke_count - input_char.stroke_count) > cfg.count_window:
            continue
        all_pts, offs_t = store.packed(idx)
        score = _oriented_link_score(
            pts_in, offs_in, all_pts, offs_t, cfg.link.coarse_passes, kernels.EP, kernels.EP
        )
        labels.append(tpl.label)
        kept_scores.append(score)
    return _rank(labels, kept_scores, cfg.coarse_keep)


def _oriented_link_score(pts_in, offs_in, pts_t, offs_t, passes, link_kind, score_kind):
    if len(offs_in) >= len(offs_t):
        return kernels.link_score(pts_in, offs_in, pts_t, offs_t, passes, link_kind, score_kind)
    return kernels.link_score(pts_t, offs_t, pts_in, offs_in, passes, link_kind, score_kind)


def fine_classify(
    input_char: Character,
    candidates: Sequence[Candidate],
    store: TemplateStore,
    cfg: RecognizerConfig,
) -> list[Candidate]:
    """Re-link the coarse survivors with the initial distance and rescore."""
    if input_char.stroke_count < cfg.directional_cutoff:
        score_kind = kernels.DD
    else:
        score_kind = kernels.WW
    pts_in, offs_in = pack(input_char)
    labels = []
    scores = []
    for cand in candidates:
        pts_t, offs_t = store.packed(store._index_by_label[cand.label])
        score = _oriented_link_score(
            pts_in, offs_in, pts_t, offs_t, cfg.link.fine_passes, kernels.INIT, score_kind
        )
        labels.append(cand.label)
        scores.append(score)
    return _rank(labels, scores, cfg.fine_keep)


def recognize(
    raw: Character, store: TemplateStore, cfg: RecognizerConfig | None = None
) -> list[Candidate]:
    """Preprocess raw strokes and return the ranked fine candidates."""
    if cfg is None:
        cfg = RecognizerConfig(preprocess=store.preprocess_config)
    if cfg.preprocess != store.preprocess_config:
        raise ValueError("input preprocessing config must match the template store")
    prepped = preprocess(raw, cfg.preprocess)
    coarse = coarse_classify(prepped, store, cfg)
    return fine_classify(prepped, coarse, store, cfg)
