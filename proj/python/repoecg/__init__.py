"""Repository sustainability metrics: diversity, readability, text scoring,
nonparametric statistics, fighting words, and diff unit extraction.

The heavy lifting lives in the compiled extension; this package re-exports
its operations under stable names.
"""

from ._core import (
    clean_text,
    cliffs_delta,
    count_syllables,
    extract_units,
    fighting_words,
    flesch_reading_ease,
    holm_bonferroni,
    score_text,
    shannon_index,
    strip_markup,
    wilcoxon_signed_rank,
)

__version__ = "0.1.0"

__all__ = [
    "clean_text",
    "cliffs_delta",
    "count_syllables",
    "extract_units",
    "fighting_words",
    "flesch_reading_ease",
    "holm_bonferroni",
    "score_text",
    "shannon_index",
    "strip_markup",
    "wilcoxon_signed_rank",
    "__version__",
]
