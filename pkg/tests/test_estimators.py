import numpy as np
import pytest
from sklearn.base import clone
from sklearn.pipeline import make_pipeline
from sklearn.preprocessing import StandardScaler

from braidfree.errors import SizeMismatch
from braidfree.estimators import DeviationFeatures, FreenessClassifier
from braidfree.families import hidden_witness, two_five_cycles

X5 = np.array([hidden_witness().edge_vector(), two_five_cycles(2, 2).edge_vector(), two_five_cycles(1, 2).edge_vector()])


def test_params_and_clone():
    clf = FreenessClassifier(vertex_count=5, strengthened=True)
    assert clf.get_params() == {"vertex_count": 5, "strengthened": True}
    assert clone(clf).get_params() == clf.get_params()


def test_predict():
    clf = FreenessClassifier(vertex_count=5).fit(X5)
    assert list(clf.predict(X5)) == ["NotFree", "Free", "NotFree"]
    assert list(clf.classes_) == ["Free", "NotFree", "Unknown"]
    assert clf.score(X5, ["NotFree", "Free", "NotFree"]) == 1.0


def test_features():
    F = DeviationFeatures(vertex_count=5).fit_transform(X5)
    assert F.shape == (3, 5)
    assert list(F[0]) == [16, 4, 16, 1, 16 - 4 * 4]
    assert F[1][0] == 0 and F[2][0] == 30
    assert make_pipeline(DeviationFeatures(vertex_count=5), StandardScaler()).fit_transform(X5).shape == (3, 5)


def test_width_checked():
    with pytest.raises(SizeMismatch):
        FreenessClassifier(vertex_count=4).fit(X5)
    with pytest.raises(SizeMismatch):
        DeviationFeatures(vertex_count=5).fit(X5[0])
