"""scikit-learn style wrapper around :func:`holey.catalog.classify`."""

from __future__ import annotations

from dataclasses import replace

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin
from sklearn.utils.validation import check_is_fitted

from .catalog import STATUSES, Classification, classify, get_profile
from .validation import check_budget, check_pieces


class RectifiabilityClassifier(ClassifierMixin, BaseEstimator):
    """Labels pieces "solved", "impossible" or "unknown".

    There is nothing to learn: ``fit`` runs the classification pipeline on
    the given pieces and caches the results, ``predict`` reuses the cache
    and classifies unseen pieces on demand. ``y`` is accepted and ignored
    so the object drops into sklearn tooling.
    """

    def __init__(self, profile="desk", max_nodes=None, max_seconds=None):
        self.profile = profile
        self.max_nodes = max_nodes
        self.max_seconds = max_seconds

    def _profile(self):
        prof = get_profile(self.profile)
        if self.max_nodes is not None or self.max_seconds is not None:
            budget = check_budget(self.max_nodes if self.max_nodes is not None else prof.max_nodes,
                                  self.max_seconds)
            prof = replace(prof, max_nodes=budget.max_nodes, max_seconds=budget.max_seconds)
        return prof

    def fit(self, X, y=None):
        prof = self._profile()
        self.classes_ = np.array(STATUSES)
        self.profile_ = prof
        self.results_ = {}
        for p in check_pieces(X):
            self._lookup(p)
        return self

    def _lookup(self, piece) -> Classification:
        key = piece.canonical_key
        if key not in self.results_:
            self.results_[key] = classify(piece, self.profile_)
        return self.results_[key]

    def classify(self, X) -> list[Classification]:
        check_is_fitted(self, "results_")
        return [self._lookup(p) for p in check_pieces(X)]

    def predict(self, X):
        return np.array([c.status for c in self.classify(X)])

    def smallest_sizes(self, X) -> list[tuple[int, int] | None]:
        return [c.size for c in self.classify(X)]
