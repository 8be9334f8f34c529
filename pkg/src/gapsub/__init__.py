"""Gapped digit substitutions: supertiles, fixed points, subword complexity
and higher-block recoding."""

from .complexity import (
    ComplexityProfile,
    RightSpecialTree,
    WordSet,
    check_special_identity,
    complexity_profile,
    right_special_tree,
    right_special_words,
    tm_complexity_closed_form,
    tm_special_closed_form,
    words_of_length,
)
from .core import (
    Cell,
    Configuration,
    DigitSystem,
    GappedSubstitution,
    binary_digit_substitution,
    gapped_example,
    load_substitution,
    make_substitution,
    substitute_cell,
    substitute_config,
    supertile,
    thue_morse,
    validate_digit_system,
    validate_substitution,
)
from .errors import (
    ConflictError,
    CoverageError,
    GapSubError,
    OverflowCapError,
    StabilizationError,
    StallError,
    ValidationError,
)
from .fixedpoint import PositionedWord, central_patch, fixed_prefix, predicted_patch_length
from .recoding import (
    BlockRecoding,
    BlockSubstitution,
    canonical_binary_labels,
    derive_block_substitution,
    higher_block_word,
    verify_complexity_shift,
)

__version__ = "0.1.0"

__all__ = [
    "binary_digit_substitution",
    "BlockRecoding",
    "BlockSubstitution",
    "canonical_binary_labels",
    "Cell",
    "central_patch",
    "check_special_identity",
    "complexity_profile",
    "ComplexityProfile",
    "Configuration",
    "ConflictError",
    "CoverageError",
    "derive_block_substitution",
    "DigitSystem",
    "fixed_prefix",
    "gapped_example",
    "GappedSubstitution",
    "GapSubError",
    "higher_block_word",
    "load_substitution",
    "make_substitution",
    "OverflowCapError",
    "PositionedWord",
    "predicted_patch_length",
    "right_special_tree",
    "right_special_words",
    "RightSpecialTree",
    "StabilizationError",
    "StallError",
    "substitute_cell",
    "substitute_config",
    "supertile",
    "thue_morse",
    "tm_complexity_closed_form",
    "tm_special_closed_form",
    "validate_digit_system",
    "validate_substitution",
    "ValidationError",
    "verify_complexity_shift",
    "words_of_length",
    "WordSet",
]

