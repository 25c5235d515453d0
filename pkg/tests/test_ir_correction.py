import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import loop_centered_average, loop_upsample
from epighost.core import KSpaceData, ifft_kx_to_x
from epighost.ir_correction import (
    IRConfig,
    IRMode,
    apply_ir,
    interp_resample,
    linear_upsample_line,
    resample_line,
)
from epighost.metrics import magnitude_profiles, total_variation
from epighost.pa_correction import pa_correct
from epighost.simulator import ErrorModel, simulate_epi

factors = st.integers(1, 70)


def cvec(seed, n):
    rng = np.random.default_rng(seed)
    return rng.standard_normal(n) + 1j * rng.standard_normal(n)


def test_upsample_by_hand():
    np.testing.assert_array_equal(linear_upsample_line([0, 1], 2), [0, 0.5, 1, 1])


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(1, 20), f=factors)
def test_upsample_matches_loop_oracle(seed, n, f):
    v = cvec(seed, n)
    np.testing.assert_allclose(linear_upsample_line(v, f), loop_upsample(v, f), rtol=0, atol=1e-14)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(1, 20), f=factors)
def test_centered_average_matches_loop_oracle(seed, n, f):
    u = cvec(seed, n * f)
    np.testing.assert_allclose(resample_line(u, f), loop_centered_average(u, f), rtol=0, atol=1e-13)


def test_factor_one_and_constants():
    v = cvec(0, 9)
    assert np.array_equal(linear_upsample_line(v, 1), v)
    for f in (1, 3, 64):
        np.testing.assert_allclose(linear_upsample_line(np.full(5, 2 - 1j), f), 2 - 1j, atol=1e-15)
        for mode in IRMode:
            np.testing.assert_allclose(interp_resample(np.full(6, 2 - 1j), f, mode), 2 - 1j, atol=1e-14)


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(1, 32), f=factors)
def test_literal_round_trip_is_bit_identical(seed, n, f):
    v = cvec(seed, n)
    assert np.array_equal(interp_resample(v, f, IRMode.LITERAL), v)


def test_literal_keeps_signed_zeros():
    v = np.array([complex(-0.0, -0.0), 1, complex(0.0, -0.0), 2])
    out = interp_resample(v, 8, IRMode.LITERAL)
    assert out.tobytes() == v.tobytes()


def test_resample_rejects_bad_length():
    with pytest.raises(ValueError):
        resample_line(np.zeros(10), 3)


def test_centered_average_impulse_kernel():
    """Mean of the triangular upsample over the window around each sample.

    Brute-force: integrate the hat function over window offsets j/f, j in [-f//2, ceil(f/2) - 1].
    """
    for f in (8, 64, 256):
        js = np.arange(-(f // 2), (f + 1) // 2)
        t = js / f
        w_prev = np.mean(np.clip(-t, 0, None))
        w_next = np.mean(np.clip(t, 0, None))
        w_mid = np.mean(1 - np.abs(t))
        e = np.zeros(16, complex)
        e[8] = 1
        out = interp_resample(e, f).real
        np.testing.assert_allclose(out[7:10], [w_next, w_mid, w_prev], atol=1e-14)
        np.testing.assert_allclose(out[7:10], [0.125, 0.75, 0.125], atol=1 / f)
        assert out[:7].max() == 0 and out[10:].max() == 0
    # f = 64: exact values 496/4096, 3072/4096, 528/4096
    np.testing.assert_allclose(interp_resample(e, 64).real[7:10], [0.12109375, 0.75, 0.12890625], atol=1e-15)


@pytest.mark.parametrize("f", [2, 8, 64])
def test_apply_ir_literal_identity(f):
    rng = np.random.default_rng(f)
    k = KSpaceData(rng.standard_normal((16, 32)) + 1j * rng.standard_normal((16, 32)), reversal_applied=True)
    out = apply_ir(k, IRConfig(factor=f, mode=IRMode.LITERAL, passes=3))
    assert out.data.tobytes() == k.data.tobytes()


def test_apply_ir_constant_unchanged_and_domain_check():
    k = KSpaceData(np.full((4, 8), 3 + 1j))
    np.testing.assert_allclose(apply_ir(k).data, k.data, atol=1e-13)
    with pytest.raises(ValueError):
        apply_ir(ifft_kx_to_x(k))


def test_config_validation():
    with pytest.raises(ValueError):
        IRConfig(factor=0)
    with pytest.raises(ValueError):
        IRConfig(passes=0)
    assert IRConfig.from_points(4096, 64).factor == 64
    assert IRConfig().interp_points(64) == 4096
    with pytest.raises(ValueError):
        IRConfig.from_points(100, 64)


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), f=factors, a=st.complex_numbers(max_magnitude=5), b=st.complex_numbers(max_magnitude=5))
def test_linearity(seed, f, a, b):
    rng = np.random.default_rng(seed)
    x = rng.standard_normal((4, 8)) + 1j * rng.standard_normal((4, 8))
    y = rng.standard_normal((4, 8)) + 1j * rng.standard_normal((4, 8))
    for mode in IRMode:
        lhs = interp_resample(a * x + b * y, f, mode)
        rhs = a * interp_resample(x, f, mode) + b * interp_resample(y, f, mode)
        assert np.abs(lhs - rhs).max() <= 1e-12 * max(1.0, np.abs(rhs).max())


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(2, 40), f=factors)
def test_complex_total_variation_never_increases(seed, n, f):
    v = cvec(seed, n)
    out = interp_resample(v, f)
    assert np.abs(np.diff(out)).sum() <= np.abs(np.diff(v)).sum() * (1 + 1e-12)


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(2, 40), f=factors)
def test_magnitude_tv_never_increases_for_nonnegative_lines(seed, n, f):
    v = np.abs(cvec(seed, n)).astype(complex)
    out = interp_resample(v, f)
    assert total_variation(np.abs(out))[0] <= total_variation(np.abs(v))[0] * (1 + 1e-12)


def test_magnitude_tv_can_increase_for_complex_lines():
    # alternating-sign line: flat magnitude, but the clamped left edge breaks the symmetry
    v = np.array([1, -1] * 8, dtype=complex)
    assert total_variation(np.abs(v))[0] == 0
    assert total_variation(np.abs(interp_resample(v, 64)))[0] > 0


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(2, 40), f=factors)
def test_energy_never_increases_when_first_sample_is_zero(seed, n, f):
    v = cvec(seed, n)
    v[0] = 0
    out = interp_resample(v, f)
    assert np.sum(np.abs(out) ** 2) <= np.sum(np.abs(v) ** 2) * (1 + 1e-12)


def test_energy_can_grow_at_left_edge():
    e0 = np.zeros(8, complex)
    e0[0] = 1
    out = interp_resample(e0, 2)
    np.testing.assert_allclose(out[:2], [1, 0.25])
    assert np.sum(np.abs(out) ** 2) > 1


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), s=st.integers(-10, 10), f=st.integers(1, 64))
def test_shift_covariance_away_from_edges(seed, s, f):
    n = 32
    v = cvec(seed, n)
    a = interp_resample(np.roll(v, s), f)
    b = np.roll(interp_resample(v, f), s)
    idx = np.arange(n)
    src = (idx - s) % n
    ok = (idx >= 2) & (idx <= n - 3) & (src >= 2) & (src <= n - 3)
    np.testing.assert_allclose(a[ok], b[ok], atol=1e-13)


def test_smoothing_on_noisy_pa_corrected_data(disk):
    sim = simulate_epi(disk, ErrorModel(const_phase_even=0.3, peak_shift_even=2, noise_sigma=0.05, seed=1))
    pa = pa_correct(sim.k_formal)
    tv_before = total_variation(magnitude_profiles(pa.data, "row"))
    tv_after = total_variation(magnitude_profiles(apply_ir(pa).data, "row"))
    assert np.all(tv_after < tv_before)
