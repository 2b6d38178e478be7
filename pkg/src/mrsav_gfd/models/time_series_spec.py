import numpy as np
import pytest
from pydantic import ValidationError

from mrsav_gfd.models.time_series import FieldNorms, Histogram, TimeSeries


def test_should_require_strictly_increasing_times():
    with pytest.raises(ValidationError):
        TimeSeries(times=[0.0, 1.0, 1.0], values=[1.0, 2.0, 3.0])


def test_should_require_matching_lengths():
    with pytest.raises(ValidationError):
        TimeSeries(times=[0.0, 1.0], values=[1.0])


def test_should_drop_samples_before_the_spin_up_time():
    series = TimeSeries(times=np.arange(10.0), values=np.arange(10.0) * 2, label="v")

    kept = series.after(7.0)

    assert list(kept.times) == [7.0, 8.0, 9.0]
    assert kept.label == "v"


def test_should_detect_uniform_sampling():
    assert TimeSeries(times=[0.0, 0.5, 1.0], values=[0, 0, 0]).is_uniform()
    assert not TimeSeries(times=[0.0, 0.5, 1.5], values=[0, 0, 0]).is_uniform()


def test_should_normalise_histogram_density():
    histogram = Histogram(edges=np.array([0.0, 0.5, 1.0]), counts=np.array([1, 3]), bin_width=0.5)

    assert np.allclose(histogram.density, [0.5, 1.5])
    assert (histogram.density * 0.5).sum() == pytest.approx(1.0)


def test_should_report_norms_from_squared_norms():
    norms = FieldNorms(enstrophy=4.0, palinstrophy=9.0)

    assert norms.l2_norm == 2.0
    assert norms.gradient_norm == 3.0
