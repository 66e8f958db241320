"""Congruent theta series in one and two variables.

For an index m >= 1 and a residue mu mod 2m, the two-variable theta series
collects q^(r^2/4m) * zeta^r over all integers r congruent to mu mod 2m.
Its odd companion, sum of r * q^(r^2/4m) over the same r, is the
weight-3/2 series whose derivatives fill the Wronskian matrix.  All
q-exponents live on the grid (1/4m)*Z.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Mapping

from .characters import UnityExponent
from .series import INFINITY, PuiseuxSeries, Truncation, _as_trunc, _trunc_add


class NotAnEigenvector(ValueError):
    """Raised when a series is not an eigenvector of tau -> tau + 1."""


@dataclass(frozen=True)
class ThetaIndex:
    """Index m and residue class mu mod 2m; mu is stored reduced into [0, 2m)."""

    index_m: int
    residue_mu: int

    def __post_init__(self):
        if self.index_m < 1:
            raise ValueError("index_m must be a positive integer")
        object.__setattr__(self, "residue_mu", self.residue_mu % (2 * self.index_m))

    def negate(self) -> ThetaIndex:
        return ThetaIndex(self.index_m, -self.residue_mu)


class ThetaTwoVar:
    """Truncated two-variable expansion: rational q-exponents, integer zeta-exponents.

    Terms map (q_exponent, zeta_exponent) -> coefficient.  The q-exponents
    are certified below ``q_trunc`` and lie on (1/base_denom)*Z; for each
    certified q-window the zeta-support is automatically finite.
    """

    __slots__ = ("base_denom", "q_trunc", "_terms")

    def __init__(self, terms: Mapping, q_trunc: Truncation, base_denom: int):
        q_trunc = _as_trunc(q_trunc)
        base_denom = int(base_denom)
        if base_denom < 1:
            raise ValueError("base_denom must be a positive integer")
        clean: dict[tuple[Fraction, int], Fraction] = {}
        for (e, r), c in (terms.items() if isinstance(terms, Mapping) else terms):
            e = Fraction(e)
            c = Fraction(c)
            if (e * base_denom).denominator != 1:
                raise ValueError(f"q-exponent {e} is not a multiple of 1/{base_denom}")
            if c and e < q_trunc:
                key = (e, int(r))
                clean[key] = clean.get(key, Fraction(0)) + c
        self.base_denom = base_denom
        self.q_trunc = q_trunc
        self._terms = {k: v for k, v in clean.items() if v}

    @property
    def terms(self) -> Mapping[tuple[Fraction, int], Fraction]:
        return MappingProxyType(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def q_order(self) -> Truncation:
        return min(e for e, _ in self._terms) if self._terms else INFINITY

    def __eq__(self, other) -> bool:
        if not isinstance(other, ThetaTwoVar):
            return NotImplemented
        return self.q_trunc == other.q_trunc and self._terms == other._terms

    __hash__ = None

    def __add__(self, other: ThetaTwoVar) -> ThetaTwoVar:
        merged = dict(self._terms)
        for key, c in other._terms.items():
            merged[key] = merged.get(key, Fraction(0)) + c
        return ThetaTwoVar(merged, min(self.q_trunc, other.q_trunc),
                           math.lcm(self.base_denom, other.base_denom))

    def __neg__(self) -> ThetaTwoVar:
        return ThetaTwoVar({k: -c for k, c in self._terms.items()},
                           self.q_trunc, self.base_denom)

    def __sub__(self, other: ThetaTwoVar) -> ThetaTwoVar:
        return self + (-other)

    def mul_series(self, s: PuiseuxSeries) -> ThetaTwoVar:
        """Multiply by a one-variable series (acting on the q-side only)."""
        ord_self = self.q_order()
        ord_s = s.ord_infty()
        trunc = min(_trunc_add(self.q_trunc, ord_s if ord_s != INFINITY else Fraction(0)),
                    _trunc_add(s.trunc, ord_self if ord_self != INFINITY else Fraction(0)))
        out: dict[tuple[Fraction, int], Fraction] = {}
        for (e, r), c in self._terms.items():
            for es, cs in s.terms.items():
                key = (e + es, r)
                if key[0] < trunc:
                    out[key] = out.get(key, Fraction(0)) + c * cs
        return ThetaTwoVar(out, trunc, math.lcm(self.base_denom, s.base_denom))

    def zeta_moment(self, n: int) -> PuiseuxSeries:
        """Collapse the zeta variable: sum of coeff * r^n per q-exponent."""
        out: dict[Fraction, Fraction] = {}
        for (e, r), c in self._terms.items():
            out[e] = out.get(e, Fraction(0)) + c * r ** n
        return PuiseuxSeries(out, self.q_trunc, self.base_denom)

    def is_zeta_odd(self) -> bool:
        """True when negating the zeta-exponent negates every coefficient."""
        return all(self._terms.get((e, -r)) == -c for (e, r), c in self._terms.items())


def _residues(m: int, mu: int, q_trunc: Fraction):
    """All r = mu mod 2m with r^2/(4m) strictly below q_trunc."""
    bound = 4 * m * q_trunc
    if bound <= 0:
        return
    r_cap = math.isqrt(math.ceil(bound)) + 1
    step = 2 * m
    start = mu % step
    for r in range(start - step * ((r_cap + start) // step + 1), r_cap + 1, step):
        if Fraction(r * r, 4 * m) < q_trunc:
            yield r


def theta_series(idx: ThetaIndex, q_trunc) -> ThetaTwoVar:
    """The two-variable congruent theta series for the given residue class."""
    q_trunc = Fraction(q_trunc)
    m, mu = idx.index_m, idx.residue_mu
    terms = {(Fraction(r * r, 4 * m), r): Fraction(1) for r in _residues(m, mu, q_trunc)}
    return ThetaTwoVar(terms, q_trunc, 4 * m)


def odd_theta_series(idx: ThetaIndex, q_trunc) -> PuiseuxSeries:
    """sum over r = mu mod 2m of r * q^(r^2/4m), truncated below q_trunc.

    The odd weight-3/2 companion of the theta series: residues mu and -mu
    give opposite series, and the classes mu = 0 and mu = m collapse to
    zero because r and -r share the same exponent.
    """
    q_trunc = Fraction(q_trunc)
    m, mu = idx.index_m, idx.residue_mu
    terms: dict[Fraction, Fraction] = {}
    for r in _residues(m, mu, q_trunc):
        e = Fraction(r * r, 4 * m)
        terms[e] = terms.get(e, Fraction(0)) + r
    return PuiseuxSeries(terms, q_trunc, 4 * m)


def translation_eigenvalue(s: PuiseuxSeries) -> UnityExponent:
    """The exponent x with s(tau + 1) = exp(2*pi*i*x) * s(tau).

    Well defined exactly when all exponents of s agree mod 1; the common
    fractional part is returned as a point of Q/Z.
    """
    if s.is_zero():
        raise ValueError("the zero series scales under every eigenvalue")
    exponents = sorted(s.terms)
    first = exponents[0]
    for e in exponents[1:]:
        if (e - first).denominator != 1:
            raise NotAnEigenvector(
                f"exponents {first} and {e} differ by a non-integer")
    return UnityExponent(first)


def total_theta_order(m: int) -> Fraction:
    """Sum of the lowest exponents mu^2/(4m) over mu = 1..m-1.

    This is the total vanishing order of the theta-derivative matrix
    columns; the closed form (m-1)(2m-1)/24 is asserted against the
    termwise sum.
    """
    total = sum(Fraction(mu * mu, 4 * m) for mu in range(1, m))
    assert total == Fraction((m - 1) * (2 * m - 1), 24)
    return total
