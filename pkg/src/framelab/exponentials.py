"""Finite systems of complex exponentials on (-pi, pi).

The Gram matrix has the closed form G[j, k] = 2 sin(pi (l_j - l_k)) /
(l_j - l_k) with diagonal 2 pi, so the optimal lower bound of the system
as a frame for its span is an exact eigenvalue computation.  The crude
factorial lower-bound formula is evaluated in log space; for the decay
tables the eigenvalue can optionally be computed in extended precision,
since the float64 floor (~1e-15 relative) is reached long before N = 40 on
overcomplete families.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .core import DomainError

#: the constant and exponents of the factorial lower-bound estimate
CRUDE_PREFACTOR = 1.6e-14
CRUDE_FACTORIAL_POWER = 8


class LambdaSet:
    """Strictly increasing finite frequencies; delta is the minimal gap."""

    def __init__(self, lambdas):
        arr = np.asarray(lambdas, dtype=float).reshape(-1)
        if arr.size == 0:
            raise DomainError("need at least one frequency")
        if arr.size > 1 and not np.all(np.diff(arr) > 0):
            raise DomainError("frequencies must be strictly increasing")
        arr = arr.copy()
        arr.flags.writeable = False
        self.lambdas = arr

    @property
    def count(self) -> int:
        return self.lambdas.shape[0]

    @property
    def delta(self) -> float:
        """Minimal gap; infinite for a singleton."""
        if self.count < 2:
            return math.inf
        return float(np.diff(self.lambdas).min())

    def shifted(self, c: float) -> "LambdaSet":
        return LambdaSet(self.lambdas + c)

    def to_json_dict(self):
        return {"lambdas": [float(v) for v in self.lambdas]}

    @classmethod
    def from_json_dict(cls, data):
        return cls(data["lambdas"])


def exp_gram(lset: LambdaSet) -> np.ndarray:
    """Exact Gram matrix of {exp(i l_n x)} in L2(-pi, pi).

    Entries 2 sin(pi d) / d = 2 pi sinc(d) at d = l_j - l_k; diagonal 2 pi.
    """
    d = np.subtract.outer(lset.lambdas, lset.lambdas)
    G = 2 * np.pi * np.sinc(d)
    return G.astype(complex)


def lower_bound(lset: LambdaSet, dps: int = None) -> float:
    """Optimal lower bound on the span: smallest Gram eigenvalue.

    dps switches to extended-precision arithmetic (decimal digits), needed
    when the eigenvalue sits below the float64 resolution of the 2 pi scale.
    """
    if dps is None:
        ev = np.linalg.eigvalsh(exp_gram(lset).real)
        return float(ev[0])
    from mpmath import mp, mpf, matrix, eigsy, sin, pi as mp_pi

    old = mp.dps
    mp.dps = dps
    try:
        n = lset.count
        A = matrix(n, n)
        lams = [mpf(float(v)) for v in lset.lambdas]
        for j in range(n):
            for k in range(n):
                d = lams[j] - lams[k]
                A[j, k] = 2 * mp_pi if d == 0 else 2 * sin(mp_pi * d) / d
        ev = eigsy(A, eigvals_only=True)
        return float(ev[0])
    finally:
        mp.dps = old


class CrudeBound(NamedTuple):
    value: float
    log10: float


def crude_bound(N: int, delta: float) -> CrudeBound:
    """Factorial lower-bound estimate for N gap-delta frequencies.

    prefactor * (delta/2)^(2N+1) / ((N+1)!)^8, evaluated in log space; the
    value field underflows to 0.0 for large N while log10 stays finite.
    """
    if N < 1:
        raise DomainError("N must be a positive integer")
    if not (0 < delta <= 1):
        raise DomainError(f"the estimate requires 0 < delta <= 1 (got {delta:g})")
    log_value = (
        math.log(CRUDE_PREFACTOR)
        + (2 * N + 1) * math.log(delta / 2)
        - CRUDE_FACTORIAL_POWER * math.lgamma(N + 2)
    )
    value = math.exp(log_value) if log_value > -700 else 0.0
    return CrudeBound(value, log_value / math.log(10))


def integer_lambdas(N: int) -> LambdaSet:
    return LambdaSet(np.arange(N, dtype=float))


def half_integer_lambdas(N: int) -> LambdaSet:
    return LambdaSet(0.5 * np.arange(N, dtype=float))


FAMILIES = {"integer": integer_lambdas, "half_integer": half_integer_lambdas}


@dataclass(frozen=True)
class DecayRow:
    N: int
    lower: float
    crude: float
    ratio: float
    log10_lower: float
    log10_crude: float

    def to_dict(self):
        return {
            "N": self.N, "lower": self.lower, "crude": self.crude, "ratio": self.ratio,
            "log10_lower": self.log10_lower, "log10_crude": self.log10_crude,
        }


def decay_study(family, n_max: int, dps: int = None):
    """Table of (N, optimal lower bound, crude estimate, ratio) for N = 2..n_max.

    family is a name from FAMILIES or a callable N -> frequency sequence.
    The crude estimate is applied with delta clamped to its hypothesis
    (gaps at least delta and delta <= 1).
    """
    if isinstance(family, str):
        try:
            rule = FAMILIES[family]
        except KeyError:
            raise DomainError(f"unknown family {family!r}; choose from {sorted(FAMILIES)}")
    else:
        rule = lambda N: LambdaSet(family(N))
    rows = []
    for N in range(2, n_max + 1):
        lset = rule(N)
        if lset.count != N:
            raise DomainError("family rule returned the wrong number of frequencies")
        lo = lower_bound(lset, dps=dps)
        delta = min(1.0, lset.delta)
        crude = crude_bound(N, delta)
        log10_lower = math.log10(lo) if lo > 0 else -math.inf
        ratio = 10.0 ** (crude.log10 - log10_lower) if lo > 0 else math.inf
        rows.append(DecayRow(N, lo, crude.value, ratio, log10_lower, crude.log10))
    return rows
