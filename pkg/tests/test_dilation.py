import math

import numpy as np
import pytest

from framelab.core import DomainError, TruncationUnsoundError
from framelab.dilation import (
    FreqFunction,
    WavePacketGrid,
    bessel_divergence_probe,
    freq_indicator,
    lic_estimate,
    shannon_wavelet,
    wave_packet_bessel_bound,
    wave_packet_duality_check,
    wave_packet_frame_bounds,
    wavelet_duality_check,
)


def test_freq_function_cell_semantics():
    fn = freq_indicator(0.5, 1.0, step=0.25)
    assert fn.values_at(0.5) == 1.0
    assert fn.values_at(0.999) == 1.0
    assert fn.values_at(1.0) == 0.0
    assert fn.values_at(0.49) == 0.0
    np.testing.assert_allclose(fn.values_at([0.6, 1.2]), [1.0, 0.0])


def test_freq_function_band_validation():
    with pytest.raises(DomainError):
        FreqFunction(0.0, 0.5, [1.0, 1.0], (0.0, 0.5))


def test_shannon_pair_passes_exactly():
    psi = shannon_wavelet()
    report = wavelet_duality_check(psi, psi, b=1.0)
    assert report.passed
    assert report.residuals["scaling_sum"] <= 1e-12
    assert report.residuals["shifted_sums"] <= 1e-12


def test_zero_generator_fails_with_residual_b():
    psi = shannon_wavelet()
    zero = FreqFunction(-1.0, psi.step, np.zeros(psi.count), (-1.0, 1.0))
    for b in (1.0, 0.5):
        report = wavelet_duality_check(psi, zero, b=b)
        assert not report.passed
        assert report.residuals["scaling_sum"] == pytest.approx(b, abs=0.0)


def test_product_scaling_invariance():
    psi = shannon_wavelet()
    report = wavelet_duality_check(psi.scaled(2.0), psi.scaled(0.5), b=1.0)
    assert report.passed


def test_perturbation_moves_residual_linearly():
    psi = shannon_wavelet()
    devs = []
    for eps in (1e-3, 2e-3, 4e-3):
        bumped = psi.scaled(1.0 + eps)
        report = wavelet_duality_check(psi, bumped, b=1.0)
        devs.append(report.residuals["scaling_sum"])
        assert devs[-1] == pytest.approx(eps, rel=1e-9)
    assert devs[1] / devs[0] == pytest.approx(2.0, rel=1e-6)


def test_support_touching_zero_rejected():
    bad = freq_indicator(0.0, 1.0)  # support reaches 0: infinite dilation tail
    with pytest.raises(TruncationUnsoundError):
        wavelet_duality_check(bad, bad, b=1.0)


def test_shifted_sum_violation_detected():
    # partner carrying an extra copy one unit up: the scaling sums still hit
    # b on part of the axis, but the integer-shift class alpha = 1 picks up
    # a product of size 1
    step = 2.0 ** -10
    psi = freq_indicator(0.5, 1.0, step=step)
    count = int(round(1.5 / step))
    starts = 0.5 + step * np.arange(count)
    values = np.where((starts < 1.0) | (starts >= 1.5), 1.0, 0.0)
    partner = FreqFunction(0.5, step, values, (0.5, 2.0))
    report = wavelet_duality_check(psi, partner, b=1.0)
    assert not report.passed
    assert report.residuals["shifted_sums"] == pytest.approx(1.0, abs=1e-12)


def test_wave_packet_c2_violation_detected():
    # overlapping 1/b-shifted supports with matching values break c2
    step = 2.0 ** -8
    psi = freq_indicator(1.0, 3.0, step=step)  # diameter 2 > 1/b = 1
    report = wave_packet_duality_check(psi, psi, a=2, b=1.0, c_values=[0.0],
                                       full_check=True)
    assert not report.passed
    assert report.residuals["c2"] == pytest.approx(1.0, abs=1e-12)
    # the grouped full criterion must flag the same defect
    assert report.residuals["g1_offdiagonal"] > 0.5


def test_wave_packet_single_dilation_tight():
    g = freq_indicator(0.0, 1.0, step=1 / 256)
    offsets = list(range(-8, 9))
    grid = WavePacketGrid(a_values=[1.0], b=1.0, c_values=offsets, gamma_points=1024)
    B, rep_b = wave_packet_bessel_bound(g, grid)
    assert B == pytest.approx(1.0, abs=1e-12)
    bounds, rep = wave_packet_frame_bounds(g, grid)
    assert bounds.lower == pytest.approx(1.0, abs=1e-12)
    assert bounds.upper == pytest.approx(1.0, abs=1e-12)
    assert "certificate" in rep.notes


def test_wave_packet_zero_window():
    g = FreqFunction(0.0, 0.25, np.zeros(4), (0.0, 1.0))
    grid = WavePacketGrid(a_values=[1.0], b=1.0, c_values=[0.0])
    B, _ = wave_packet_bessel_bound(g, grid)
    assert B == 0.0


def test_wave_packet_spectral_gap_inconclusive():
    g = freq_indicator(0.0, 1.0, step=1 / 64)
    grid = WavePacketGrid(a_values=[1.0], b=1.0, c_values=[0.0, 2.0], gamma_points=512)
    bounds, rep = wave_packet_frame_bounds(g, grid)
    assert bounds.lower == 0.0
    assert rep.verdict == "undecided"
    assert "inconclusive" in rep.notes


def test_wave_packet_bessel_soundness_against_spectral_estimate():
    # single dilation, integer offsets, full discrete period in k: the
    # discretized frame operator is diagonal and its eigenvalues are exactly
    # the diagonal sums, so A <= min eig and B >= max eig to rounding
    rng = np.random.default_rng(0)
    P = 64
    step = 1.0 / P
    for _ in range(5):
        vals = rng.uniform(0.2, 1.0, P)
        g = FreqFunction(0.0, step, vals, (0.0, 1.0))
        offsets = list(range(0, 4))
        grid = WavePacketGrid(a_values=[1.0], b=1.0, c_values=offsets)
        centers = (np.arange(4 * P) + 0.5) * step
        bounds, _ = wave_packet_frame_bounds(g, grid, gamma_grid=centers)
        B, _ = wave_packet_bessel_bound(g, grid, gamma_grid=centers)
        rows = []
        for c in offsets:
            gu = g.values_at(centers - c)
            for k in range(P):
                rows.append(np.exp(-2j * np.pi * k * centers) * gu)
        V = np.array(rows) * math.sqrt(step)
        S = V.T @ V.conj()
        ev = np.linalg.eigvalsh((S + S.conj().T) / 2)
        assert B >= ev[-1] - 1e-6
        assert bounds.lower <= ev[ev > 1e-12][0] + 1e-6 if bounds.lower > 0 else True


def test_wave_packet_duality_c2_vacuous_when_bands_small():
    psi = freq_indicator(1.0, 1.5, step=1 / 64)
    report = wave_packet_duality_check(psi, psi.scaled(0.5), a=2, b=1.0, c_values=[0.0],
                                       full_check=False)
    assert report.residuals["c2"] == 0.0


def test_wave_packet_duality_zero_partner_fails_with_b():
    psi = shannon_wavelet()
    zero = FreqFunction(-1.0, psi.step, np.zeros(psi.count), (-1.0, 1.0))
    report = wave_packet_duality_check(psi, zero, a=2, b=1.0, c_values=[0.0])
    assert not report.passed
    assert report.residuals["c1"] == pytest.approx(1.0, abs=0.0)


def test_wave_packet_duality_matches_wavelet_for_shannon():
    psi = shannon_wavelet()
    wp = wave_packet_duality_check(psi, psi, a=2, b=1.0, c_values=[0.0])
    wl = wavelet_duality_check(psi, psi, b=1.0)
    assert wp.passed == wl.passed
    assert wp.residuals["c1"] <= 1e-12
    assert wp.residuals["g1_offdiagonal"] <= 1e-12


def test_corollary_consistency_c1_c2_imply_g1():
    # whenever (c1) and (c2) pass, the grouped full criterion passes too
    psi = shannon_wavelet()
    report = wave_packet_duality_check(psi, psi, a=2, b=1.0, c_values=[0.0])
    if report.residuals["c1"] <= 1e-12 and report.residuals["c2"] <= 1e-12:
        assert report.residuals["g1_offdiagonal"] <= 1e-12


def test_wave_packet_adapter_matches_spline_painless_bounds():
    # lattice systems are single-dilation wave packets: feeding the spline
    # into the translation-overlap formula with offsets m*a reproduces the
    # painless periodization bounds on a common evaluation grid
    from framelab.bspline import bspline_eval, painless_bounds

    N, a, b = 2, 0.5, 0.25
    step = 1 / 64
    cells = int(round(N / step))
    cell_starts = step * np.arange(cells)
    g = FreqFunction(0.0, step, bspline_eval(N, cell_starts), (0.0, float(N)))
    offsets = [m * a for m in range(-12, 13)]
    grid = WavePacketGrid(a_values=[1.0], b=b, c_values=offsets)
    # evaluation points: one period of the diagonal, well inside the coverage
    gamma = cell_starts[cell_starts < a]
    bounds, _ = wave_packet_frame_bounds(g, grid, gamma_grid=gamma)

    diag = np.zeros_like(gamma)
    for n in range(-8, 9):
        diag += bspline_eval(N, gamma - n * a) ** 2
    assert bounds.lower == pytest.approx(diag.min() / b, abs=1e-12)
    assert bounds.upper == pytest.approx(diag.max() / b, abs=1e-12)

    inf_, sup_, _slack = painless_bounds(N, a, b, period_points=int(round(a / step)))
    assert bounds.lower == pytest.approx(inf_ / b, abs=1e-8)
    assert bounds.upper == pytest.approx(sup_ / b, abs=1e-8)


def test_lic_zero_generator():
    f = freq_indicator(0.5, 1.5, step=1 / 64)
    zero = FreqFunction(0.0, 0.5, np.zeros(2), (0.0, 1.0))
    grid = WavePacketGrid(a_values=[1.0, 2.0], b=1.0, c_values=[0.0, 1.0])
    value, report = lic_estimate(zero, grid, f)
    assert value == 0.0


def test_lic_disjoint_supports():
    f = freq_indicator(10.0, 11.0, step=1 / 64)
    psi = freq_indicator(1.0, 2.0, step=1 / 64)
    grid = WavePacketGrid(a_values=[1.0], b=1.0, c_values=[0.0])
    value, _ = lic_estimate(psi, grid, f)
    assert value == 0.0


def test_lic_single_dilation_matches_direct_quadrature():
    step = 1 / 128
    f = freq_indicator(0.5, 1.5, step=step)
    psi = freq_indicator(0.25, 1.25, step=step)
    grid = WavePacketGrid(a_values=[1.0], b=1.0, c_values=[0.0, 1.0])
    value, report = lic_estimate(psi, grid, f)

    # independent double-sum quadrature oracle
    centers = 0.5 + step * (np.arange(128) + 0.5)
    expected = 0.0
    for n in range(-4, 5):
        for c in (0.0, 1.0):
            fsh = np.abs(f.values_at(centers + n)) ** 2
            ps = np.abs(psi.values_at(centers - c)) ** 2
            expected += float(np.sum(fsh * ps) * step)
    assert value == pytest.approx(expected, rel=1e-12)
    assert report.details["value"] == pytest.approx(value)


def test_divergence_probe_exceeds_ceiling():
    g = freq_indicator(0.0, 1.0, step=1 / 16, amplitude=4.0)
    rows, report = bessel_divergence_probe(g, b=1.0, c_step=1.0, ceiling=1e6)
    assert report.residuals["ceiling_not_exceeded"] == 0.0
    partials = [p for _, p in rows]
    assert all(p2 >= p1 for p1, p2 in zip(partials, partials[1:]))
    assert partials[-1] > 1e6


def test_divergence_probe_monotone_growth():
    g = freq_indicator(0.0, 1.0, step=1 / 16)
    rows, report = bessel_divergence_probe(g, b=1.0, c_step=1.0, ceiling=1e9,
                                           block=2048, max_terms=8192)
    assert report.residuals["ceiling_not_exceeded"] == 1.0  # not reached in 8192 terms
    partials = [p for _, p in rows]
    assert all(p2 > p1 for p1, p2 in zip(partials, partials[1:]))


def test_divergence_flag_in_bessel_bound():
    # dyadic dilations with wide covering offsets blow past a small ceiling
    g = freq_indicator(0.0, 1.0, step=1 / 16, amplitude=10.0)
    grid = WavePacketGrid(
        a_values=[2.0 ** -j for j in range(10)],
        b=1.0,
        c_values=list(range(0, 800)),
        gamma_points=128,
    )
    value, report = wave_packet_bessel_bound(g, grid, ceiling=500.0)
    assert value == math.inf
    assert "Bessel violated" in report.notes
