"""Cardinal B-splines and their time-frequency lattice phase diagram.

B_1 is the half-open unit indicator and each further order is the moving
average of the previous one, so B_N is the piecewise polynomial supported
on [0, N] with the partition-of-unity property.  The scanner classifies
lattice parameters (a, b) by sound certificates only: exact periodized
bounds where the support fits one frequency period, a translation-overlap
sufficient condition beyond it, and an honest "undecided" elsewhere; the
only negative certificate is exact vanishing of the periodized diagonal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import (
    AnalysisReport,
    DomainError,
    FrameBounds,
    GridError,
    LatticeError,
    frame_bounds,
    resolve_tolerance,
)
from .gabor import GaborSpec, SampledWindow, finite_gabor_system, ron_shen_duality_check


def bspline_eval(N: int, x) -> np.ndarray:
    """B_N at x (vectorized), via the order-raising recurrence.

    B_1 = indicator of [0, 1); B_N(x) = (x B_{N-1}(x) + (N-x) B_{N-1}(x-1)) / (N-1).
    """
    if N < 1:
        raise DomainError("order must be a positive integer")
    x = np.asarray(x, dtype=float)
    if N == 1:
        return np.where((x >= 0) & (x < 1), 1.0, 0.0)
    lower = bspline_eval(N - 1, x)
    shifted = bspline_eval(N - 1, x - 1)
    return (x * lower + (N - x) * shifted) / (N - 1)


def bspline_fourier(N: int, gamma) -> np.ndarray:
    """((1 - exp(-2 pi i g)) / (2 pi i g))^N, with value 1 at g = 0.

    Evaluated as (exp(-i pi g) sinc(g))^N, which is exact and stable at the
    removable singularity.
    """
    if N < 1:
        raise DomainError("order must be a positive integer")
    g = np.asarray(gamma, dtype=float)
    return (np.exp(-1j * np.pi * g) * np.sinc(g)) ** N


def bspline_integral(N: int) -> float:
    """Integral over the support, by per-knot-interval Gauss-Legendre."""
    nodes, weights = np.polynomial.legendre.leggauss(max(8, N))
    total = 0.0
    for k in range(N):
        x = k + (nodes + 1) / 2
        total += float(np.sum(weights * bspline_eval(N, x)) / 2)
    return total


def property_suite(N: int, tolerance=None, grid_points: int = 2048) -> AnalysisReport:
    """Support, interior positivity, unit integral, partition of unity."""
    tol = resolve_tolerance(tolerance)
    outside = np.concatenate([
        np.linspace(-2.0, -1e-9, 200),
        np.linspace(N + 1e-9, N + 2.0, 200),
    ])
    support_leak = float(np.abs(bspline_eval(N, outside)).max())

    interior = np.linspace(0, N, grid_points + 1)[1:-1]
    min_interior = float(bspline_eval(N, interior).min())

    integral_dev = abs(bspline_integral(N) - 1.0)

    xs = np.linspace(0.0, 3.0, grid_points)
    partition = np.zeros_like(xs)
    for k in range(-N - 2, N + 5):
        partition += bspline_eval(N, xs - k)
    partition_dev = float(np.abs(partition - 1.0).max())

    return AnalysisReport.from_residuals(
        {
            "support_leak": support_leak,
            "interior_nonpositive": 0.0 if min_interior > 0 else 1.0,
            "unit_integral": integral_dev,
            "partition_of_unity": partition_dev,
        },
        tol,
        notes=f"order {N}: support [0, {N}], min interior value {min_interior:.3e}",
        details={"min_interior": min_interior},
    )


def sample_bspline(N: int, step: float = 1.0 / 64) -> SampledWindow:
    """B_N sampled on [0, N] with the given step."""
    count = int(round(N / step)) + 1
    x = step * np.arange(count)
    return SampledWindow(0.0, step, bspline_eval(N, x), (0.0, float(N)))


# -- periodized bound computations -------------------------------------------


def _scan_grid(a: float, period_points: int, knots) -> np.ndarray:
    """Uniform grid over [0, a) augmented with knots and piece midpoints."""
    base = a * np.arange(period_points) / period_points
    ks = sorted({float(k) % a for k in knots} | {0.0, a})
    mids = [(u + v) / 2 for u, v in zip(ks, ks[1:]) if v > u]
    pts = np.unique(np.concatenate([base, np.array(ks[:-1]), np.array(mids)]))
    return pts[(pts >= 0) & (pts < a)]


def _overlap_count(N: int, a: float) -> int:
    return int(math.floor(N / a)) + 1


def painless_bounds(N: int, a: float, b: float, period_points: int = 1024):
    """Exact periodized bounds when the support fits one frequency period.

    Requires b * N <= 1.  Returns (inf, sup, slack) of the a-periodic
    diagonal sum of squared translates on a knot-augmented grid; the true
    inf/sup lie within slack of the grid values (Lipschitz bound; exact for
    order 1, whose piecewise-constant diagonal is sampled in every piece).
    """
    if b * N > 1 + 1e-12:
        raise DomainError(f"painless regime needs b*N <= 1 (got b*N = {b * N:g})")
    xs = _scan_grid(a, period_points, (k for k in range(N + 1)))
    n_lo = -int(math.ceil(N / a)) - 1
    diag = np.zeros_like(xs)
    for n in range(n_lo, 2):
        diag += bspline_eval(N, xs - n * a) ** 2
    if N == 1:
        slack = 0.0
    else:
        lip = 2.0 * _overlap_count(N, a)
        slack = lip * (a / period_points) / 2
    return float(diag.min()), float(diag.max()), slack


def translation_overlap_bounds(N: int, a: float, b: float, period_points: int = 2048):
    """Sufficient-condition bounds from translation overlaps at offsets k/b.

    Returns (inf of diag - off, sup of diag + off, slack), all before the
    division by b.  A positive lower value certifies a frame with bounds
    (inf/b, sup/b); a nonpositive one is inconclusive.
    """
    k_max = int(math.ceil(b * N)) + 1
    shifts = [k / b for k in range(-k_max, k_max + 1) if k != 0]
    knots = [k + s for k in range(N + 1) for s in [0.0] + shifts]
    xs = _scan_grid(a, period_points, knots)
    n_lo = -int(math.ceil(2 * N / a)) - 1
    n_hi = int(math.ceil(2 * N / a)) + 1
    diag = np.zeros_like(xs)
    off = np.zeros_like(xs)
    for n in range(n_lo, n_hi + 1):
        g0 = bspline_eval(N, xs - n * a)
        if not np.any(g0):
            continue
        diag += g0 ** 2
        for s in shifts:
            off += np.abs(g0 * bspline_eval(N, xs - n * a - s))
    if N == 1:
        slack = 0.0
    else:
        terms = _overlap_count(N, a) * (len(shifts) + 1)
        slack = 2.0 * terms * (a / period_points) / 2
    return float((diag - off).min()), float((diag + off).max()), slack


def finite_section_bounds(N: int, a: float, b: float, resolution: int = 16,
                          max_length: int = 8192):
    """Spectral bounds of an exact cyclic section of the lattice system.

    Rational (a, b) are realized on a cyclic grid: sampling density M with
    a M and M/b integral, period P with P/a and b P integral.  The returned
    bounds are the extreme eigenvalues of the cyclic frame operator times
    the step 1/M, i.e. continuous normalization.
    """
    af = Fraction(a).limit_denominator(4096)
    bf = Fraction(b).limit_denominator(4096)
    if abs(float(af) - a) > 1e-9 or abs(float(bf) - b) > 1e-9:
        raise GridError("finite sections need rational lattice parameters")
    M0 = math.lcm(af.denominator, bf.numerator)
    M = M0 * max(1, math.ceil(resolution / M0))
    n_unit = (af * bf).denominator
    period = af * n_unit
    while period < N + 1:
        period += af * n_unit
    L = M * period
    if L.denominator != 1:
        raise LatticeError("internal: cycle length did not come out integral")
    L = int(L)
    if L > max_length:
        raise LatticeError(f"cyclic section too large (L = {L} > {max_length})")
    a_int = int(af * M)
    b_int = int(bf * period)
    x = np.arange(L) / M
    window = bspline_eval(N, x)
    spec = GaborSpec(L, a_int, b_int, window)
    fb = frame_bounds(finite_gabor_system(spec))
    return FrameBounds(fb.lower / M, fb.upper / M)


STATUS_FRAME = "frame_certified"
STATUS_ZERO = "lower_bound_zero_certified"
STATUS_UNDECIDED = "undecided"


@dataclass(frozen=True)
class PhaseDiagramCell:
    """One (a, b) classification with its certificate or estimate."""

    a: float
    b: float
    status: str
    bounds_estimate: FrameBounds
    method: str

    def __post_init__(self):
        if self.status == STATUS_FRAME and not self.bounds_estimate.lower > 0:
            raise ValueError("a frame certificate requires a positive lower bound")

    def to_dict(self):
        return {
            "a": self.a, "b": self.b, "status": self.status,
            "lower": self.bounds_estimate.lower, "upper": self.bounds_estimate.upper,
            "method": self.method,
        }


def classify_cell(N: int, a: float, b: float, period_points: int = 1024,
                  attach_estimates: bool = True) -> PhaseDiagramCell:
    """Sound classification of one lattice cell.

    Certificates: exact periodized bounds in the painless regime (including
    the exact-vanishing negative certificate), the translation-overlap
    sufficient condition outside it, and otherwise undecided with a cyclic
    finite-section estimate attached when feasible.
    """
    if a <= 0 or b <= 0:
        raise DomainError("lattice steps must be positive")
    if b * N <= 1 + 1e-12:
        inf_, sup_, slack = painless_bounds(N, a, b, period_points)
        if inf_ == 0.0:
            return PhaseDiagramCell(a, b, STATUS_ZERO, FrameBounds(0.0, (sup_ + slack) / b),
                                    "painless diagonal vanishes exactly")
        if inf_ - slack > 0:
            return PhaseDiagramCell(
                a, b, STATUS_FRAME,
                FrameBounds((inf_ - slack) / b, (sup_ + slack) / b),
                "painless periodization",
            )
        return PhaseDiagramCell(a, b, STATUS_UNDECIDED, FrameBounds(0.0, (sup_ + slack) / b),
                                "painless grid estimate below slack")
    lo, hi, slack = translation_overlap_bounds(N, a, b, max(period_points, 2048))
    if lo - slack > 0:
        return PhaseDiagramCell(
            a, b, STATUS_FRAME,
            FrameBounds((lo - slack) / b, (hi + slack) / b),
            "translation-overlap sufficient condition",
        )
    if attach_estimates:
        try:
            est = finite_section_bounds(N, a, b)
            return PhaseDiagramCell(a, b, STATUS_UNDECIDED, est,
                                    "sufficient condition inconclusive; cyclic finite-section estimate")
        except (GridError, LatticeError):
            pass
    return PhaseDiagramCell(a, b, STATUS_UNDECIDED, FrameBounds(0.0, (hi + slack) / b),
                            "sufficient condition inconclusive")


def gabor_scan(N: int, a_values, b_values, period_points: int = 1024,
               attach_estimates: bool = True):
    """Phase-diagram scan over the (a, b) grid, row-major in (a, b)."""
    return [
        classify_cell(N, float(a), float(b), period_points, attach_estimates)
        for a in a_values
        for b in b_values
    ]


def dual_window_solve(N: int, b: float, a: float = 1.0, shift_range: int = None,
                      samples_per_unit: int = None, tolerance: float = 1e-8,
                      output_step: float = None):
    """Dual window as a combination of integer shifts of the spline itself.

    In the regime b <= 1/(2N-1) (unit time step), the ansatz
    h = sum_{|k| <= K} c_k B_N(. + k) with K >= N-1 turns the dual-pair
    conditions into a finite linear system on [0, 1), solved here in least
    squares; the returned report re-verifies the dual pair on a sampled
    grid.  The classical solution c_k = b is reproduced up to the kernel of
    the (rank-deficient, symmetric-shift) design matrix.
    """
    if a != 1.0:
        raise DomainError("the shift-combination ansatz is for unit time step")
    if N < 1:
        raise DomainError("order must be a positive integer")
    if b <= 0 or b > 1.0 / (2 * N - 1) + 1e-12:
        raise DomainError(
            f"dual-window regime needs 0 < b <= 1/(2N-1) = {1.0 / (2 * N - 1):g} (got {b:g})"
        )
    K = shift_range if shift_range is not None else max(N - 1, 0)
    if K < N - 1:
        raise DomainError(f"need at least K = N-1 = {N - 1} shifts (got {K})")
    samples = samples_per_unit if samples_per_unit is not None else 4 * K + 4

    xs = (np.arange(samples) + 0.5) / samples
    ks = np.arange(-K, K + 1)
    n_max = int(math.floor(b * (N + K) + 1e-9))
    jrange = range(-(N + K + 2), N + K + 3)
    blocks, rhs = [], []
    for n in range(-n_max, n_max + 1):
        M = np.zeros((samples, len(ks)))
        for col, k in enumerate(ks):
            acc = np.zeros(samples)
            for j in jrange:
                acc += bspline_eval(N, xs - n / b - j) * bspline_eval(N, xs - j + k)
            M[:, col] = acc
        blocks.append(M)
        rhs.append(np.full(samples, b if n == 0 else 0.0))
    design = np.vstack(blocks)
    target = np.concatenate(rhs)
    coeff, _, rank, _ = np.linalg.lstsq(design, target, rcond=None)

    if output_step is None:
        bf = Fraction(b).limit_denominator(10 ** 6)
        if abs(float(bf) - b) > 1e-12:
            raise GridError("b must be rational to sample the verification grid")
        output_step = 1.0 / (64 * bf.numerator)
    count = int(round((N + 2 * K) / output_step)) + 1
    x = -K + output_step * np.arange(count)
    hvals = np.zeros(count)
    for ck, k in zip(coeff, ks):
        hvals += ck * bspline_eval(N, x + k)
    window = SampledWindow(-float(K), output_step, hvals, (-float(K), float(N + K)))

    check = ron_shen_duality_check(sample_bspline(N, output_step), window, 1.0, b,
                                   tolerance=tolerance)
    report = AnalysisReport.from_residuals(
        check.residuals, tolerance,
        notes=(
            f"shift coefficients {np.round(coeff, 12).tolist()}; "
            f"design rank {rank} of {len(ks)} (shift symmetry halves it); "
            + check.notes
        ),
        details={"rank": float(rank), "shift_count": float(len(ks))},
    )
    return window, report
