"""scikit-learn style wrapper: learn revealed preference from observed choices,
predict choices on new menus."""

from __future__ import annotations

from collections.abc import Sequence
from typing import Any

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .axioms import check_all
from .core import PartialChoiceDataset, Universe, complete
from .relations import (
    is_strict_preference,
    rationalizes,
    strict_revealed,
    undominated,
    weak_revealed,
)


def check_menus(X: Any, universe: Universe, name: str = "X") -> list[int]:
    """Validate menus given as label sequences or as a 0/1 indicator matrix."""
    if isinstance(X, np.ndarray) and X.ndim == 2:
        if X.shape[1] != universe.n:
            raise ValueError(f"{name} has {X.shape[1]} columns, expected {universe.n}")
        weights = 1 << np.arange(universe.n, dtype=np.int64)
        masks = [int(v) for v in (X.astype(bool).astype(np.int64) @ weights)]
    else:
        masks = [universe.mask(list(m)) for m in X]
    if any(m == 0 for m in masks):
        raise ValueError(f"{name} contains an empty menu")
    return masks


def _infer_alternatives(X: Sequence[Sequence[str]]) -> tuple[str, ...]:
    seen: dict[str, None] = {}
    for menu in X:
        for lab in menu:
            seen.setdefault(lab)
    return tuple(seen)


class RevealedPreferenceChooser(TransformerMixin, BaseEstimator):
    """Predict choices as the undominated alternatives under the strict revealed preference.

    Parameters
    ----------
    alternatives : sequence of str, optional
        Universe labels in order. Inferred from the training menus when omitted.
    completion : {"full-menu", "fail"} or None
        Completion policy applied before the checks that need total data.

    Attributes
    ----------
    universe_, dataset_ : the fitted universe and observations
    strict_preference_, weak_preference_ : revealed relations
    verdicts_ : dict of axiom name to :class:`~choiceaxioms.axioms.Verdict`
    is_preference_ : whether the strict revealed preference is a preference relation
    rationalizes_ : whether it reproduces every observed choice
    """

    def __init__(self, alternatives: Sequence[str] | None = None, completion: str | None = None):
        self.alternatives = alternatives
        self.completion = completion

    def fit(self, X, y):
        if self.alternatives is not None:
            universe = Universe(tuple(self.alternatives))
        elif isinstance(X, np.ndarray) and X.ndim == 2:
            universe = Universe.of_size(X.shape[1])
        else:
            universe = Universe(_infer_alternatives(X))
        menus = check_menus(X, universe)
        choices = check_menus(y, universe, "y")
        if len(menus) != len(choices):
            raise ValueError(f"X and y have different lengths ({len(menus)} != {len(choices)})")
        self.universe_ = universe
        self.dataset_ = PartialChoiceDataset(universe, tuple(zip(menus, choices)))
        data = complete(self.dataset_, self.completion) if self.completion else self.dataset_
        self.strict_preference_ = strict_revealed(data)
        self.weak_preference_ = weak_revealed(data)
        self.verdicts_ = check_all(data)
        self.is_preference_ = is_strict_preference(self.strict_preference_)
        self.rationalizes_ = rationalizes(data, self.strict_preference_).holds
        self.classes_ = np.array(universe.labels)
        self.n_features_in_ = universe.n
        return self

    def _predict_masks(self, X) -> list[int]:
        check_is_fitted(self)
        return [undominated(m, self.strict_preference_) for m in check_menus(X, self.universe_)]

    def predict(self, X) -> list[list[str]]:
        """Predicted choice per menu; may be empty when the relation cycles."""
        return [self.universe_.names(c) for c in self._predict_masks(X)]

    def transform(self, X) -> np.ndarray:
        """0/1 indicator matrix of predicted choices, one column per alternative."""
        masks = np.array(self._predict_masks(X), dtype=np.int64)
        return ((masks[:, None] >> np.arange(self.universe_.n)) & 1).astype(np.int8)

    def score(self, X, y) -> float:
        """Fraction of menus whose predicted choice matches ``y`` exactly."""
        pred = self._predict_masks(X)
        truth = check_menus(y, self.universe_, "y")
        return float(np.mean([p == t for p, t in zip(pred, truth)])) if truth else 0.0
