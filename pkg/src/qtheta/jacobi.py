"""Odd-weight Jacobi form data, theta decomposition, and Taylor operators.

A Jacobi form of odd weight k and index m is represented by its finite
Fourier table c(n, r).  Oddness of the weight forces c(n, -r) = -c(n, r),
and invariance under the index lattice forces c(n, r) to depend only on
the class (r mod 2m, 4mn - r^2); both facts are validated at construction.
The theta decomposition packages the table into m-1 component series
h_1..h_{m-1}, and the Taylor operators extract the odd coefficients of the
expansion in z (with every power of 2*pi*i absorbed so that all series
stay rational).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Mapping

from .series import PuiseuxSeries, parse_rational
from .theta import ThetaIndex, ThetaTwoVar, theta_series, odd_theta_series


class InvariantViolation(ValueError):
    """A coefficient table breaks a structural invariant of Jacobi forms."""


class NotOdd(ValueError):
    """A two-variable series is not odd under zeta -> 1/zeta negation."""


class EvenIndex(ValueError):
    """An operator index that must be odd was even."""


class JacobiFormData:
    """Validated Fourier table of an odd-weight Jacobi form.

    ``coeffs`` maps (n, r) to a rational coefficient, for integers n with
    0 <= n < n_trunc.  By default only holomorphic tables (4mn >= r^2) are
    accepted and the table must be orbit-complete: within the truncation
    window, c(n, r) is checked to depend only on (r mod 2m, 4mn - r^2).
    Weak tables (arbitrary r, possibly negative discriminant) are accepted
    behind ``weak=True`` for test-vector generation; only the stored
    entries can then be cross-checked.
    """

    __slots__ = ("weight_k", "index_m", "level_N", "n_trunc", "weak", "_coeffs", "_orbit")

    def __init__(self, weight_k: int, index_m: int, level_N: int, n_trunc,
                 coeffs: Mapping, weak: bool = False):
        if weight_k < 1 or weight_k % 2 == 0:
            raise InvariantViolation("weight_k must be a positive odd integer")
        if index_m < 1 or level_N < 1:
            raise InvariantViolation("index_m and level_N must be positive")
        n_trunc = Fraction(n_trunc)
        if n_trunc <= 0:
            raise InvariantViolation("n_trunc must be positive")
        self.weight_k = weight_k
        self.index_m = index_m
        self.level_N = level_N
        self.n_trunc = n_trunc
        self.weak = bool(weak)
        m = index_m
        stored: dict[tuple[int, int], Fraction] = {}
        orbit: dict[tuple[int, int], Fraction] = {}
        for (n, r), c in coeffs.items():
            n, r, c = int(n), int(r), Fraction(c)
            if not c:
                continue
            if n < 0:
                raise InvariantViolation(f"negative Fourier index n={n}")
            if n >= n_trunc:
                continue
            disc = 4 * m * n - r * r
            if disc < 0 and not weak:
                raise InvariantViolation(
                    f"coefficient at (n={n}, r={r}) violates 4mn >= r^2")
            key = (r % (2 * m), disc)
            if key in orbit and orbit[key] != c:
                raise InvariantViolation(
                    f"c({n},{r}) = {c} conflicts with class {key} value {orbit[key]}")
            orbit[key] = c
            stored[(n, r)] = c
        for (mu, disc), value in orbit.items():
            partner = ((-mu) % (2 * m), disc)
            if orbit.get(partner, Fraction(0)) != -value:
                raise InvariantViolation(
                    f"odd symmetry fails for class (mu={mu}, disc={disc})")
        if not weak:
            for n in range(math.ceil(n_trunc)):
                if n >= n_trunc:
                    break
                r_cap = math.isqrt(4 * m * n)
                for r in range(-r_cap, r_cap + 1):
                    key = (r % (2 * m), 4 * m * n - r * r)
                    expected = orbit.get(key, Fraction(0))
                    if stored.get((n, r), Fraction(0)) != expected:
                        raise InvariantViolation(
                            f"c({n},{r}) must depend only on (r mod 2m, 4mn - r^2); "
                            f"expected {expected}")
        self._coeffs = stored
        self._orbit = orbit

    @property
    def coeffs(self) -> Mapping[tuple[int, int], Fraction]:
        return MappingProxyType(self._coeffs)

    @property
    def orbit_values(self) -> Mapping[tuple[int, int], Fraction]:
        """Class values keyed by (r mod 2m, 4mn - r^2)."""
        return MappingProxyType(self._orbit)

    @classmethod
    def from_orbit_values(cls, weight_k: int, index_m: int, level_N: int, n_trunc,
                          orbit_values: Mapping, weak: bool = False) -> JacobiFormData:
        """Build a full table from values on classes (mu, disc).

        Values for the negated residue are filled in by odd symmetry; a
        nonzero value on a self-paired class (mu = 0 or mu = m) is
        rejected.  Every (n, r) in the truncation window whose class has a
        value is populated.
        """
        m = index_m
        n_trunc = Fraction(n_trunc)
        closed: dict[tuple[int, int], Fraction] = {}
        for (mu, disc), value in orbit_values.items():
            mu = mu % (2 * m)
            value = Fraction(value)
            if (disc + mu * mu) % (4 * m) != 0:
                raise InvariantViolation(
                    f"class (mu={mu}, disc={disc}) contains no integral pairs")
            for key, v in (((mu, disc), value), (((-mu) % (2 * m), disc), -value)):
                if key in closed and closed[key] != v:
                    raise InvariantViolation(f"conflicting values for class {key}")
                closed[key] = v
        coeffs = {}
        for (mu, disc), value in closed.items():
            if not value:
                continue
            for r in _class_representatives(m, mu, disc, n_trunc):
                coeffs[((disc + r * r) // (4 * m), r)] = value
        return cls(weight_k, index_m, level_N, n_trunc, coeffs, weak=weak)

    @classmethod
    def from_two_var(cls, tv: ThetaTwoVar, weight_k: int, index_m: int,
                     level_N: int, weak: bool = False) -> JacobiFormData:
        """Read a Fourier table off a two-variable series with integer q-exponents."""
        coeffs = {}
        for (e, r), c in tv.terms.items():
            if e.denominator != 1:
                raise InvariantViolation(
                    f"q-exponent {e} is not an integer Fourier index")
            coeffs[(int(e), r)] = c
        return cls(weight_k, index_m, level_N, tv.q_trunc, coeffs, weak=weak)


def _class_representatives(m: int, mu: int, disc: int, n_trunc: Fraction):
    """All r = mu mod 2m with (disc + r^2)/(4m) a nonnegative integer < n_trunc."""
    bound = 4 * m * n_trunc - disc
    if bound <= 0:
        return
    r_cap = math.isqrt(math.ceil(bound)) + 1
    step = 2 * m
    start = mu % step
    for r in range(start - step * ((r_cap + start) // step + 1), r_cap + 1, step):
        n_times_4m = disc + r * r
        if n_times_4m >= 0 and Fraction(n_times_4m, 4 * m) < n_trunc:
            yield r


@dataclass(frozen=True)
class ThetaComponents:
    """The tuple (h_1, ..., h_{m-1}) of theta components of an odd form."""

    index_m: int
    components: tuple[PuiseuxSeries, ...]

    def __post_init__(self):
        if len(self.components) != self.index_m - 1:
            raise ValueError("expected m-1 component series")
        object.__setattr__(self, "components", tuple(self.components))


def theta_components(phi: JacobiFormData) -> ThetaComponents:
    """Decompose a validated table into its m-1 component series.

    h_mu collects the class values at exponents (4mn - mu^2)/(4m); it is
    certified below n_trunc - mu^2/(4m), since every class reachable below
    that bound has a representative inside the table's window.
    """
    m = phi.index_m
    out = []
    for mu in range(1, m):
        terms = {Fraction(disc, 4 * m): value
                 for (cls_mu, disc), value in phi.orbit_values.items() if cls_mu == mu}
        trunc = phi.n_trunc - Fraction(mu * mu, 4 * m)
        out.append(PuiseuxSeries(terms, trunc, base_denom=4 * m))
    return ThetaComponents(m, tuple(out))


def from_theta_components(h: ThetaComponents, q_trunc) -> ThetaTwoVar:
    """Assemble sum_mu h_mu * (theta_{m,mu} - theta_{m,-mu}) as a two-variable series."""
    m = h.index_m
    q_trunc = Fraction(q_trunc)
    total = ThetaTwoVar({}, q_trunc, 4 * m)
    for mu in range(1, m):
        series = h.components[mu - 1]
        if series.is_zero() and series.trunc >= q_trunc:
            continue
        idx = ThetaIndex(m, mu)
        pair = theta_series(idx, q_trunc) - theta_series(idx.negate(), q_trunc)
        total = total + pair.mul_series(series)
    return total


def taylor_coefficient(phi_2var: ThetaTwoVar, nu: int) -> PuiseuxSeries:
    """Normalized Taylor coefficient of z^(2*nu-1) of an odd two-variable series.

    Returns sum over terms of coeff * r^(2*nu-1) / (2*nu-1)! per
    q-exponent.  With zeta = exp(2*pi*i*z) the true coefficient carries a
    factor (2*pi*i)^(2*nu-1), which is absorbed to keep the result
    rational; vanishing is unaffected.
    """
    if nu < 1:
        raise ValueError("nu must be a positive integer")
    if not phi_2var.is_zeta_odd():
        raise NotOdd("two-variable series is not odd in the zeta variable")
    order = 2 * nu - 1
    return phi_2var.zeta_moment(order) / math.factorial(order)


def component_taylor(h: ThetaComponents, nu: int) -> PuiseuxSeries:
    """sum_mu h_mu * (q d/dq)^(nu-1) applied to the odd theta series of mu.

    The component-side route to the same Taylor coefficient: it equals
    ``taylor_coefficient`` of the assembled form divided by
    ``component_taylor_scale(nu, m)``.
    """
    m = h.index_m
    if not 1 <= nu <= m - 1:
        raise ValueError(f"nu must lie in 1..{m - 1}")
    total = None
    for mu in range(1, m):
        series = h.components[mu - 1]
        target = series.trunc + Fraction(mu * mu, 4 * m)
        theta = odd_theta_series(ThetaIndex(m, mu), target).q_derivative_iterate(nu - 1)
        term = series * theta
        total = term if total is None else total + term
    return total


def component_taylor_scale(nu: int, m: int) -> Fraction:
    """Rational factor relating the two Taylor routes.

    Pairing r with -r doubles each term, each q d/dq contributes r^2/(4m)
    in place of r^2, and the normalized coefficient divides by (2*nu-1)!:
    taylor_coefficient = 2 * (4m)^(nu-1) / (2*nu-1)! * component_taylor.
    """
    return Fraction(2 * (4 * m) ** (nu - 1), math.factorial(2 * nu - 1))


def development_operator(phi_2var: ThetaTwoVar, k: int, nu: int) -> PuiseuxSeries:
    """The normalized weight-(k + nu) development coefficient of the form.

    For odd nu this is
        sum_{0 <= j <= nu/2} (-m)^j (k+nu-j-2)! / ((k+2nu-2)! j!)
                             * (q d/dq)^j (taylor coefficient of order nu-2j),
    with the overall constant conventionally set to 1 and all powers of
    2*pi*i absorbed; its vanishing is equivalent to the vanishing of the
    classical operator.  The index ``m`` is read off the zeta-grid of the
    input, so the input must come from an index-m assembly.
    """
    if nu % 2 == 0:
        raise EvenIndex("development operators of even index vanish on odd weights")
    if k < 1 or k % 2 == 0:
        raise ValueError("k must be a positive odd integer")
    if phi_2var.base_denom % 4 != 0:
        raise ValueError("two-variable input must carry a 4m exponent grid")
    m = phi_2var.base_denom // 4
    total = None
    for j in range(nu // 2 + 1):
        order = nu - 2 * j
        chi = taylor_coefficient(phi_2var, (order + 1) // 2)
        factor = Fraction((-m) ** j * math.factorial(k + nu - j - 2),
                          math.factorial(k + 2 * nu - 2) * math.factorial(j))
        term = factor * chi.q_derivative_iterate(j)
        total = term if total is None else total + term
    return total


def kernel_equivalence(phi_2var: ThetaTwoVar, k: int, j: int) -> tuple[bool, bool]:
    """(all development coefficients of order < 2j+1 vanish,
        all Taylor coefficients of order < 2j+1 vanish).

    The two booleans agree for every input because the development
    coefficients are a triangular change of basis of the Taylor ones.
    """
    if j < 1:
        raise ValueError("j must be a positive integer")
    operators_vanish = all(
        development_operator(phi_2var, k, 2 * nu - 1).is_zero() for nu in range(1, j + 1))
    taylors_vanish = all(
        taylor_coefficient(phi_2var, nu).is_zero() for nu in range(1, j + 1))
    return operators_vanish, taylors_vanish


def random_components(index_m: int, n_trunc, rng, max_terms: int = 3) -> ThetaComponents:
    """Sparse random component tuple on the exact exponent grids.

    Each h_mu gets up to ``max_terms`` terms at exponents disc/(4m) with
    disc >= 0 and disc = -mu^2 mod 4m, so the assembled two-variable series
    has an integral Fourier table.  Deterministic given the rng state.
    """
    m = index_m
    n_trunc = Fraction(n_trunc)
    components = []
    for mu in range(1, m):
        trunc = n_trunc - Fraction(mu * mu, 4 * m)
        first = (-mu * mu) % (4 * m)
        grid = []
        disc = first
        while Fraction(disc, 4 * m) < trunc:
            grid.append(disc)
            disc += 4 * m
        terms = {}
        for disc in rng.sample(grid, min(max_terms, len(grid))):
            numerator = rng.choice([x for x in range(-9, 10) if x])
            terms[Fraction(disc, 4 * m)] = Fraction(numerator, rng.randint(1, 4))
        components.append(PuiseuxSeries(terms, trunc, base_denom=4 * m))
    return ThetaComponents(m, tuple(components))


# -- coefficient file format --------------------------------------------------
#
# Header `k=<odd> m=<int> N=<int> trunc=<num>/<den>`, then one line per
# stored coefficient: `n r c_num/c_den`, sorted by (n, r).


def dump_jacobi_table(phi: JacobiFormData) -> str:
    tr = phi.n_trunc
    lines = [f"k={phi.weight_k} m={phi.index_m} N={phi.level_N} "
             f"trunc={tr.numerator}/{tr.denominator}"]
    for (n, r) in sorted(phi.coeffs):
        c = phi.coeffs[(n, r)]
        lines.append(f"{n} {r} {c.numerator}/{c.denominator}")
    return "\n".join(lines) + "\n"


def parse_jacobi_table(text: str, weak: bool = False) -> JacobiFormData:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty coefficient table")
    fields = dict(part.split("=", 1) for part in lines[0].split())
    coeffs = {}
    for ln in lines[1:]:
        n_text, r_text, c_text = ln.split()
        coeffs[(int(n_text), int(r_text))] = parse_rational(c_text)
    return JacobiFormData(int(fields["k"]), int(fields["m"]), int(fields["N"]),
                          parse_rational(fields["trunc"]), coeffs, weak=weak)
