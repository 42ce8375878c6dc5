"""Afterimage stimulus compiler and rule-set analyzer.

Turns a target 2D afterimage pattern plus an intensity rule set into
bias/trigger greyscale image sequences that show the pattern only in the
retinal afterimage, and checks the formal properties (consistency, ambiguity,
scrambling) that make that concealment work.
"""

from .model import (
    AfterimageLevelSet,
    AmbiguitySearchResult,
    ConsistencyReport,
    Rule,
    RuleSet,
    RuleSetError,
    RuleSetValidationError,
    builtin_ruleset,
    check_consistency,
    is_bias_ambiguous,
    is_partially_ambiguous,
    is_scrambling,
    is_trigger_ambiguous,
    mapping_scheme,
    ruleset_from_json,
    ruleset_to_json,
    scheme_separation_holds,
    search_full_ambiguity,
    validation_report,
)
from .pattern import (
    PatternError,
    TargetPattern,
    load_pattern,
    save_pattern,
    text_to_pattern,
    uniform_pattern,
)
from .raster import (
    RasterError,
    SquareAssignment,
    assign_pairs,
    box_blur,
    composite,
    overlay_crosshair,
)
from .sequence import (
    Frame,
    SequenceError,
    StimulusSequence,
    assemble_multi,
    assemble_single,
    write_sequence,
)

__version__ = "0.1.0"

__all__ = [
    "AfterimageLevelSet",
    "AmbiguitySearchResult",
    "ConsistencyReport",
    "Frame",
    "PatternError",
    "RasterError",
    "Rule",
    "RuleSet",
    "RuleSetError",
    "RuleSetValidationError",
    "SequenceError",
    "SquareAssignment",
    "StimulusSequence",
    "TargetPattern",
    "assemble_multi",
    "assemble_single",
    "assign_pairs",
    "box_blur",
    "builtin_ruleset",
    "check_consistency",
    "composite",
    "is_bias_ambiguous",
    "is_partially_ambiguous",
    "is_scrambling",
    "is_trigger_ambiguous",
    "load_pattern",
    "mapping_scheme",
    "overlay_crosshair",
    "ruleset_from_json",
    "ruleset_to_json",
    "save_pattern",
    "scheme_separation_holds",
    "search_full_ambiguity",
    "text_to_pattern",
    "uniform_pattern",
    "validation_report",
    "write_sequence",
]
