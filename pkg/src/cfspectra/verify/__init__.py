"""Verification sweeps and exhaustive oracles."""

from .lemmas import LemmaInstance, lemma5_check, lemma_instance, lemma_oracle, lemma_panel
from .report import CONFIRMED, INCONCLUSIVE, REFUTED, Row, Verdict, VerifyReport, combine
from .theorems import (
    check_prop1,
    check_prop_b,
    check_szekeres,
    check_theorem1_part1,
    check_theorem1_part2,
    check_theorem2,
    default_prop_b_panel,
    gm_below_basic,
    golden_structure,
    prop_a_count,
)

__all__ = [
    "CONFIRMED",
    "INCONCLUSIVE",
    "REFUTED",
    "LemmaInstance",
    "Row",
    "Verdict",
    "VerifyReport",
    "check_prop1",
    "check_prop_b",
    "check_szekeres",
    "check_theorem1_part1",
    "check_theorem1_part2",
    "check_theorem2",
    "combine",
    "default_prop_b_panel",
    "gm_below_basic",
    "golden_structure",
    "lemma5_check",
    "lemma_instance",
    "lemma_oracle",
    "lemma_panel",
    "prop_a_count",
]
