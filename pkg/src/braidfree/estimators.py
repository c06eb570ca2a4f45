"""scikit-learn style wrappers over fixed-size multiplicities.

Rows of ``X`` are edge vectors in lexicographic pair order for a fixed
vertex count.  Nothing is learned: ``fit`` only validates the input width, and
the classifier's answers come from the exact decision pipeline.
"""

from __future__ import annotations

from math import comb

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .arrangement import MultiBraid, deviation, is_balanced, odd_triangle_count, total_multiplicity
from .errors import SizeMismatch
from .freeness import Status, decide

FEATURE_NAMES = ("deviation", "odd_triangles", "total", "balanced", "excess")


def _rows(X, vertex_count):
    X = np.asarray(X)
    if X.ndim != 2:
        raise SizeMismatch(f"expected a 2-d array of edge vectors, got shape {X.shape}")
    width = comb(vertex_count, 2)
    if X.shape[1] != width:
        raise SizeMismatch(f"{vertex_count} vertices need {width} columns, got {X.shape[1]}")
    if not np.issubdtype(X.dtype, np.integer):
        if not np.all(np.equal(np.mod(X, 1), 0)):
            raise SizeMismatch("edge vectors must be integral")
    return [MultiBraid.from_edge_vector(vertex_count, [int(v) for v in row]) for row in X]


class DeviationFeatures(TransformerMixin, BaseEstimator):
    """Map each multiplicity to ``(DV, q, |m|, balanced, DV - q*l)``."""

    def __init__(self, vertex_count: int = 4):
        self.vertex_count = vertex_count

    def fit(self, X, y=None):
        _rows(X, self.vertex_count)
        self.n_features_in_ = comb(self.vertex_count, 2)
        return self

    def transform(self, X):
        check_is_fitted(self, "n_features_in_")
        out = []
        ell = self.vertex_count - 1
        for m in _rows(X, self.vertex_count):
            dv = deviation(m)
            q = odd_triangle_count(m)
            out.append((dv, q, total_multiplicity(m), int(bool(is_balanced(m))), dv - q * ell))
        return np.array(out, dtype=np.int64).reshape(-1, len(FEATURE_NAMES))

    def get_feature_names_out(self, input_features=None):
        return np.array(FEATURE_NAMES, dtype=object)


class FreenessClassifier(ClassifierMixin, BaseEstimator):
    """Labels ``Free`` / ``NotFree`` / ``Unknown`` from :func:`braidfree.freeness.decide`."""

    def __init__(self, vertex_count: int = 4, strengthened: bool = False):
        self.vertex_count = vertex_count
        self.strengthened = strengthened

    def fit(self, X, y=None):
        _rows(X, self.vertex_count)
        self.n_features_in_ = comb(self.vertex_count, 2)
        self.classes_ = np.array([s.value for s in Status], dtype=object)
        return self

    def decide_all(self, X):
        check_is_fitted(self, "classes_")
        return [decide(m, strengthened=self.strengthened) for m in _rows(X, self.vertex_count)]

    def predict(self, X):
        return np.array([v.status.value for v in self.decide_all(X)], dtype=object)
