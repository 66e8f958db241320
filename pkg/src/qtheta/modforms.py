"""Dedekind eta, the weight-2 Eisenstein series, and the modular derivative.

Everything is built on :class:`~qtheta.series.PuiseuxSeries`.  The modular
derivative of weight kappa sends f to q*df/dq - (kappa/12)*E2*f and raises
the weight by 2; iterating it steps the weight accordingly.  Weights are
half-integers and are stored as twice their value to keep all bookkeeping
in plain integers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .series import INFINITY, PuiseuxSeries


@dataclass(frozen=True)
class HalfIntWeight:
    """A weight in (1/2)*Z, stored as twice its value."""

    twice_weight: int

    def __post_init__(self):
        if not isinstance(self.twice_weight, int):
            raise TypeError("twice_weight must be an integer")

    @property
    def weight(self) -> Fraction:
        return Fraction(self.twice_weight, 2)

    @classmethod
    def coerce(cls, value) -> HalfIntWeight:
        if isinstance(value, HalfIntWeight):
            return value
        as_fraction = Fraction(value)
        twice = as_fraction * 2
        if twice.denominator != 1:
            raise ValueError(f"{value} is not a half-integer weight")
        return cls(int(twice))

    def plus_two(self) -> HalfIntWeight:
        return HalfIntWeight(self.twice_weight + 4)

    def __str__(self) -> str:
        w = self.weight
        return str(w.numerator) if w.denominator == 1 else f"{w.numerator}/{w.denominator}"


def eta(trunc) -> PuiseuxSeries:
    """q^(1/24) * prod_{n>=1} (1 - q^n), expanded below ``trunc``.

    The product is expanded directly; factors with n >= trunc cannot
    contribute below the truncation and are skipped.  Exponents live on
    the grid (1/24)*Z.  Cached per truncation.
    """
    trunc = Fraction(trunc)
    if trunc <= 0:
        raise ValueError("trunc must be positive")
    return _eta_cached(trunc)


@lru_cache(maxsize=None)
def _eta_cached(trunc: Fraction) -> PuiseuxSeries:
    product = {0: Fraction(1)}
    n = 1
    while n < trunc:
        updated = dict(product)
        for e, c in product.items():
            shifted = e + n
            if shifted < trunc:
                value = updated.get(shifted, Fraction(0)) - c
                if value:
                    updated[shifted] = value
                else:
                    del updated[shifted]
        product = updated
        n += 1
    shift = Fraction(1, 24)
    return PuiseuxSeries({e + shift: c for e, c in product.items()}, trunc, base_denom=24)


def eisenstein_e2(trunc) -> PuiseuxSeries:
    """1 - 24 * sum_{n>=1} sigma_1(n) q^n below ``trunc``; integer exponents.

    sigma_1 is computed by a divisor sieve.  Cached per truncation since the
    series is multiplied into every modular-derivative application.
    """
    trunc = Fraction(trunc)
    if trunc <= 0:
        raise ValueError("trunc must be positive")
    return _e2_cached(trunc)


@lru_cache(maxsize=None)
def _e2_cached(trunc: Fraction) -> PuiseuxSeries:
    n_max = math.ceil(trunc) - 1
    sigma = [0] * (n_max + 1)
    for d in range(1, n_max + 1):
        for multiple in range(d, n_max + 1, d):
            sigma[multiple] += d
    terms = {Fraction(0): Fraction(1)}
    for n in range(1, n_max + 1):
        terms[Fraction(n)] = Fraction(-24 * sigma[n])
    return PuiseuxSeries(terms, trunc, base_denom=1)


def modular_derivative(f: PuiseuxSeries, kappa) -> PuiseuxSeries:
    """q*df/dq - (kappa/12) * E2 * f, the weight-raising derivative at weight kappa."""
    kw = HalfIntWeight.coerce(kappa)
    derivative = f.q_derivative()
    if kw.twice_weight == 0:
        return derivative
    if f.trunc == INFINITY:
        raise ValueError("modular derivative needs a finite certified truncation; "
                         "truncate the input first")
    low = f.ord_infty()
    needed = f.trunc - min(low, Fraction(0)) if low != INFINITY else f.trunc
    e2 = eisenstein_e2(needed)
    return derivative - (kw.weight / 12) * (e2 * f)


def iterated_derivative(f: PuiseuxSeries, kappa, n: int) -> PuiseuxSeries:
    """n-fold modular derivative starting at weight kappa, weight stepping by 2."""
    if n < 0:
        raise ValueError("iteration count must be nonnegative")
    kw = HalfIntWeight.coerce(kappa)
    out = f
    for _ in range(n):
        out = modular_derivative(out, kw)
        kw = kw.plus_two()
    return out
