"""Stroke-order- and stroke-count-independent handwritten character
recognition by template matching."""

from .distance import (
    StrokeDistanceKind,
    d_directional,
    d_endpoint,
    d_initial,
    d_whole_whole,
    resample_index,
)
from .linking import (
    LinkConfig,
    brute_force_link,
    complete_map,
    greedy_init,
    iterative_improve,
)
from .model import Candidate, Character, Point, Stroke, Template, concat_strokes
from .preprocess import (
    BinaryImage,
    NormalizationMethod,
    PreprocessConfig,
    bounding_box,
    extract_feature_points,
    interpolate_stroke,
    normalize_dot_density,
    normalize_line_density,
    normalize_linear,
    normalize_moment,
    preprocess,
    rasterize,
)
from .recognizer import (
    RecognizerConfig,
    TemplateStore,
    coarse_classify,
    fine_classify,
    recognize,
    weight,
)
from .store import (
    RawCharacterRecord,
    StoreFormatError,
    load_templates,
    load_testset,
    parse_character,
    serialize_record,
)

__version__ = "0.1.0"

__all__ = [
    "BinaryImage",
    "Candidate",
    "Character",
    "LinkConfig",
    "NormalizationMethod",
    "Point",
    "PreprocessConfig",
    "RawCharacterRecord",
    "RecognizerConfig",
    "StoreFormatError",
    "Stroke",
    "StrokeDistanceKind",
    "Template",
    "TemplateStore",
    "bounding_box",
    "brute_force_link",
    "coarse_classify",
    "complete_map",
    "concat_strokes",
    "d_directional",
    "d_endpoint",
    "d_initial",
    "d_whole_whole",
    "extract_feature_points",
    "fine_classify",
    "greedy_init",
    "interpolate_stroke",
    "iterative_improve",
    "load_templates",
    "load_testset",
    "normalize_dot_density",
    "normalize_line_density",
    "normalize_linear",
    "normalize_moment",
    "parse_character",
    "preprocess",
    "rasterize",
    "recognize",
    "resample_index",
    "serialize_record",
    "weight",
    "__version__",
]
