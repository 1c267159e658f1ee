"""Revealed-preference analysis of finite choice data.

Extracts revealed preferences from choice correspondences, checks Axioms tau
and rho alongside WARP, the V-axiom and Axiom delta with counterexample
witnesses, and exhaustively verifies the characterization results on small
universes.
"""

from .axioms import (
    Status,
    Verdict,
    check_all,
    check_delta,
    check_rho,
    check_tau,
    check_v_axiom,
    check_warp,
    detect_reference_points,
)
from .core import (
    ChoiceCorrespondence,
    PartialChoiceDataset,
    Universe,
    build_correspondence,
    complete,
    dumps_dataset,
    ingest_dataset,
    load_dataset,
    make_dataset,
)
from .relations import (
    BinaryRelation,
    is_strict_preference,
    is_weak_preference,
    rationalizes,
    strict_revealed,
    undominated,
    v_relation,
    weak_revealed,
)

__all__ = [
    "BinaryRelation",
    "ChoiceCorrespondence",
    "PartialChoiceDataset",
    "Status",
    "Universe",
    "Verdict",
    "build_correspondence",
    "check_all",
    "check_delta",
    "check_rho",
    "check_tau",
    "check_v_axiom",
    "check_warp",
    "complete",
    "detect_reference_points",
    "dumps_dataset",
    "ingest_dataset",
    "is_strict_preference",
    "is_weak_preference",
    "load_dataset",
    "make_dataset",
    "rationalizes",
    "strict_revealed",
    "undominated",
    "v_relation",
    "weak_revealed",
]

__version__ = "0.1.0"
