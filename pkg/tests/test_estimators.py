import math

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import make_pipeline

from jmatrix_waves import ReferenceWaves1D, ReferenceWaves3D, waves1d, waves3d


def test_transform_matches_functional_api():
    y = np.linspace(-8, 8, 33)
    est = ReferenceWaves1D(mu=1.2, parity="odd").fit(y)
    fg = est.transform(y.reshape(-1, 1))
    assert fg.shape == (33, 2)
    np.testing.assert_allclose(fg[:, 0], waves1d.eval_series_1d("regular", waves1d.ODD, 1.2, y, n_max=est.n_max_))
    np.testing.assert_allclose(fg[:, 1], waves1d.eval_series_1d("complementary", waves1d.ODD, 1.2, y, n_max=est.n_max_))


def test_3d_estimator():
    y = np.linspace(0, 20, 21)
    fg = ReferenceWaves3D(mu=1.0, ell=3).fit_transform(y)
    ref = waves3d.reference_solution_3d("regular", 3, 1.0, y[1:])
    np.testing.assert_allclose(fg[1:, 0], ref, atol=1e-6)
    assert fg[0, 0] == 0.0 and fg[0, 1] == 0.0


def test_sklearn_protocol():
    est = ReferenceWaves1D(mu=2.0, start_n=5)
    assert clone(est).get_params() == est.get_params()
    assert list(est.get_feature_names_out()) == ["f", "g"]
    with pytest.raises(NotFittedError):
        est.transform([[1.0]])
    pipe = make_pipeline(ReferenceWaves1D(mu=1.2, n_max=200))
    assert pipe.fit_transform(np.array([[0.0], [1.0]])).shape == (2, 2)


def test_parameter_validation():
    with pytest.raises(ValueError):
        ReferenceWaves1D(accel="fast").fit([0.0])
    with pytest.raises(ValueError):
        ReferenceWaves1D(cutoff="soft").fit([0.0])
    with pytest.raises(ValueError):
        ReferenceWaves1D(start_n=20, n_max=10).fit([0.0])
    with pytest.raises(ValueError):
        ReferenceWaves1D().fit(np.zeros((3, 2)))


def test_fit_without_data_and_amplitude():
    est = ReferenceWaves1D(mu=1.2, amplitude=2.5).fit()
    assert est.transform([0.0])[0, 0] == pytest.approx(2.5, abs=1e-6)
    assert math.isfinite(est.transform([1.0])[0, 1])
