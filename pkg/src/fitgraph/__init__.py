"""Fitness landscapes as directed variant graphs.

Construction from sequence-fitness data, 20 topographic features, five
synthetic models, robustness perturbations, and adaptive-walk experiments.
"""

from .evolution import DEResult, DERun, fitness_percentile, run_de
from .generators import GeneratorConfig, additive, eggbox, generate, hoc, nk, rmf
from .landscape import (
    IngestResult,
    Landscape,
    OptimaSet,
    VariantRecord,
    WalkOutcome,
    build,
    build_from_records,
    ingest,
)
from .io import read_csv, write_landscape_csv
from .perturb import add_noise, biased_sample, subsample
from .report import FEATURE_KEYS, AnalyzeOptions, FeatureReport, analyze, read_report, write_report
from .snapshot import load_snapshot, save_snapshot
from .space import PRESET_ALPHABETS, SequenceSpace

__version__ = "0.1.0"

__all__ = [
    "AnalyzeOptions",
    "DEResult",
    "DERun",
    "FEATURE_KEYS",
    "FeatureReport",
    "GeneratorConfig",
    "IngestResult",
    "Landscape",
    "OptimaSet",
    "PRESET_ALPHABETS",
    "SequenceSpace",
    "VariantRecord",
    "WalkOutcome",
    "add_noise",
    "additive",
    "analyze",
    "biased_sample",
    "build",
    "build_from_records",
    "eggbox",
    "fitness_percentile",
    "generate",
    "hoc",
    "ingest",
    "load_snapshot",
    "nk",
    "read_csv",
    "read_report",
    "rmf",
    "run_de",
    "save_snapshot",
    "subsample",
    "write_landscape_csv",
    "write_report",
]
