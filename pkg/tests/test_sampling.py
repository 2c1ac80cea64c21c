import math

import numpy as np
import pytest
from scipy import stats

from abar import AbarParams, cdf, mean, plus_cdf, quantile
from abar.errors import DomainError
from abar.gof import ks_statistic, ks_two_sample
from abar.numeric import RandomStream
from abar.sampling import (
    MeanVector3, draw, draw_sharded, sample_inverse_cdf, sample_norm3, sample_norm3_rotated,
    sample_plus,
)

N_KS = 100_000


def ks_against(values, F):
    return ks_statistic(np.sort(values), F)


def test_mean_vector_norm():
    b = sample_norm3(MeanVector3(3, 0, 4), 1.0, 5, RandomStream(1))
    assert b.params.a == 5.0
    assert b.n == 5 and b.method == "norm3"


@pytest.mark.parametrize("m, s", [((3, 0, 4), 1.0), ((0, 0, 0), 1.0), ((5, 0, 0), 2.0),
                                  ((1, -2, 2), 0.5)])
def test_norm3_ks(seeds, m, s):
    b = sample_norm3(MeanVector3(*m), s, N_KS, RandomStream(seeds["ks_norm3"], 0))
    d, thr = ks_against(b.values, lambda v: cdf(b.params, v))
    assert d < thr


def test_norm3_mean(seeds):
    b = sample_norm3(MeanVector3(5, 0, 0), 2.0, 1_000_000, RandomStream(seeds["moments_mc"], 0))
    assert b.values.mean() == pytest.approx(mean(AbarParams(5, 2)), rel=0.005)


def test_rotated_equals_plain_on_axis():
    m = MeanVector3(2.5, 0, 0)
    a = sample_norm3(m, 1.3, 1000, RandomStream(4, 2)).values
    b = sample_norm3_rotated(m, 1.3, 1000, RandomStream(4, 2)).values
    np.testing.assert_array_equal(a, b)


def test_rotation_invariance_two_sample(seeds):
    m = MeanVector3(3, 0, 4)
    x = sample_norm3(m, 1.0, N_KS, RandomStream(seeds["ks_rotated"], 0)).values
    y = sample_norm3_rotated(m, 1.0, N_KS, RandomStream(seeds["ks_rotated"], 1)).values
    d, thr = ks_two_sample(x, y)
    assert d < thr


def test_zero_mean_both_samplers_maxwell(seeds):
    m = MeanVector3(0, 0, 0)
    maxwell = stats.maxwell(scale=1.0).cdf
    for fn, sid in ((sample_norm3, 0), (sample_norm3_rotated, 1)):
        b = fn(m, 1.0, N_KS, RandomStream(seeds["ks_rotated"], 10 + sid))
        d, thr = ks_against(b.values, maxwell)
        assert d < thr


def test_inverse_cdf_accuracy():
    rs = RandomStream(11, 0)
    p = AbarParams(5, 1)
    u = RandomStream(11, 0).uniform_open(2000)
    b = sample_inverse_cdf(p, 2000, rs)
    assert np.all(np.abs(cdf(p, b.values) - u) <= 1e-10)
    assert b.method == "inverse_cdf"


class _HalfStream:
    seed = 0
    stream_id = 0

    def uniform_open(self, size):
        return np.full(size, 0.5)


def test_inverse_cdf_median_with_forced_uniform():
    p = AbarParams(5, 1)
    b = sample_inverse_cdf(p, 1, _HalfStream())
    assert b.values[0] == pytest.approx(quantile(p, 0.5), rel=1e-15)


def test_methods_agree(seeds):
    p = AbarParams(5, 1)
    x = draw(p, N_KS, method="inverse_cdf", seed=seeds["ks_inverse"]).values
    y = draw(p, N_KS, method="norm3", seed=seeds["ks_inverse"], stream_id=1).values
    d, thr = ks_two_sample(x, y)
    assert d < thr
    d1, thr1 = ks_against(x, lambda v: cdf(p, v))
    assert d1 < thr1


@pytest.mark.slow
def test_inverse_cdf_second_moment(seeds):
    x = draw(AbarParams(2, 1), 1_000_000, method="inverse_cdf", seed=seeds["moments_mc"]).values
    assert np.mean(x * x) == pytest.approx(7.0, rel=0.01)


def test_plus_mean_and_sign(seeds):
    b = sample_plus(AbarParams(5, 2), 1_000_000, RandomStream(seeds["moments_mc"], 3))
    assert np.all(b.values >= 0)
    assert b.values.mean() == pytest.approx(37.0, rel=0.01)
    assert b.family == "abar_plus"


def test_plus_gamma_case_ks(seeds):
    b = sample_plus(AbarParams(0, 1), N_KS, RandomStream(seeds["ks_plus"], 0))
    d, thr = ks_against(b.values, stats.gamma(a=1.5, scale=2.0).cdf)
    assert d < thr


def test_plus_ks_against_plus_cdf(seeds):
    p = AbarParams(5, 2)
    b = sample_plus(p, N_KS, RandomStream(seeds["ks_plus"], 1))
    d, thr = ks_against(b.values, lambda v: plus_cdf(p, v))
    assert d < thr


@pytest.mark.parametrize("method", ["norm3", "inverse_cdf"])
def test_regeneration_bit_identical(method):
    p = AbarParams(1.5, 0.7)
    a = draw(p, 500, method=method, seed=42, stream_id=3)
    b = draw(p, 500, method=method, seed=42, stream_id=3)
    assert a.values.tobytes() == b.values.tobytes()
    assert (a.seed, a.stream_id, a.n) == (42, 3, 500)


def test_moment_windows_five_standard_errors(seeds):
    p = AbarParams(5, 2)
    x = draw(p, 200_000, seed=seeds["moments_mc"], stream_id=7).values
    se = x.std() / math.sqrt(x.size)
    assert abs(x.mean() - mean(p)) < 5 * se
    se2 = (x * x).std() / math.sqrt(x.size)
    assert abs(np.mean(x * x) - 37.0) < 5 * se2


def test_sharded_is_deterministic_concatenation():
    p = AbarParams(2, 1)
    out = draw_sharded(p, 1003, 4, seed=9, max_workers=4)
    parts = [draw(p, n, seed=9, stream_id=k).values for k, n in enumerate([251, 251, 251, 250])]
    np.testing.assert_array_equal(out, np.concatenate(parts))
    np.testing.assert_array_equal(out, draw_sharded(p, 1003, 4, seed=9, max_workers=1))


def test_csv_serialization():
    b = draw(AbarParams(5, 2), 4, seed=1)
    lines = b.to_csv().splitlines()
    assert lines[0].startswith("# family=abar")
    assert "value" in lines
    vals = [float(v) for v in lines[lines.index("value") + 1:]]
    assert vals == b.values.tolist()


@pytest.mark.parametrize("sigma, n", [(0.0, 10), (-1.0, 10), (1.0, 0)])
def test_bad_arguments(sigma, n):
    with pytest.raises(DomainError):
        sample_norm3(MeanVector3(1, 0, 0), sigma, n, RandomStream())
