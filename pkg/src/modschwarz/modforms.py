"""Classical q-expansions and exact identity checks.

Generators return series on their natural lattice, truncated to exactly
the requested order N (counted in the lattice variable p).  Everything is
exact rational arithmetic; the heavy builders are memoised, which is
transparent because all values are immutable.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache

from .series import LaurentSeries


class Group(Enum):
    """Which group the computation lives on.

    FULL is SL(2,Z) (lattice m=1, used for even r); SQUARES is its unique
    index-2 normal subgroup of squares (lattice m=2, p = q**(1/2), odd r).
    """

    FULL = "full"
    SQUARES = "squares"

    @property
    def lattice(self) -> int:
        return 1 if self is Group.FULL else 2

    @classmethod
    def for_r(cls, r: int) -> "Group":
        return cls.FULL if r % 2 == 0 else cls.SQUARES


class IdentityViolated(Exception):
    """An exact identity check found a nonzero coefficient."""

    def __init__(self, name: str, exponent: int, value: Fraction):
        self.name = name
        self.exponent = exponent
        self.value = value
        super().__init__(
            f"identity {name!r} violated: coefficient {value} at p^{exponent}"
        )


def _raise_if_nonzero(name: str, residual: LaurentSeries) -> None:
    v = residual.order
    if v is not None:
        raise IdentityViolated(name, v, residual.coeff(v))


def sigma(k: int, n: int) -> int:
    """Sum of the k-th powers of the positive divisors of n."""
    if n < 1:
        raise ValueError("sigma is defined for n >= 1")
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += d**k
            e = n // d
            if e != d:
                total += e**k
        d += 1
    return total


@lru_cache(maxsize=None)
def eisenstein(k: int, N: int, m: int = 1) -> LaurentSeries:
    """E2, E4 or E6: 1 + c_k * sum sigma_{k-1}(n) q^n on lattice m."""
    factor = {2: -24, 4: 240, 6: -504}[k]
    terms = {0: Fraction(1)}
    n = 1
    while m * n <= N:
        terms[m * n] = Fraction(factor * sigma(k - 1, n))
        n += 1
    return LaurentSeries.from_terms(m, terms, max(N, 0), n_min=0)


@lru_cache(maxsize=None)
def _euler_product(N: int) -> LaurentSeries:
    # prod (1 - q^n) via the pentagonal number expansion (sparse).
    terms = {0: 1}
    k = 1
    while True:
        g1 = k * (3 * k - 1) // 2
        g2 = k * (3 * k + 1) // 2
        if g1 > N and g2 > N:
            break
        sign = -1 if k % 2 else 1
        if g1 <= N:
            terms[g1] = sign
        if g2 <= N:
            terms[g2] = sign
        k += 1
    return LaurentSeries.from_terms(1, terms, max(N, 0), n_min=0)


@lru_cache(maxsize=None)
def eta_power(exponent: int, N: int) -> LaurentSeries:
    """eta^24 = Delta = q prod (1-q^n)^24 on lattice 1, or
    eta^12 = Delta^(1/2) = p prod (1-p^(2n))^12 on lattice 2."""
    if exponent == 24:
        return (_euler_product(N - 1) ** 24).shift(1)
    if exponent == 12:
        K = max((N - 1) // 2, 0)
        return ((_euler_product(K).align(2) ** 12).shift(1)).truncate(N)
    raise ValueError("supported eta powers are 12 and 24")


def delta(N: int) -> LaurentSeries:
    return eta_power(24, N)


def delta_half(N: int) -> LaurentSeries:
    return eta_power(12, N)


def delta_from_eisenstein(N: int) -> LaurentSeries:
    """(E4^3 - E6^2)/1728 — the standing cross-check for the eta product."""
    e4 = eisenstein(4, N)
    e6 = eisenstein(6, N)
    return (e4**3 - e6**2) / 1728


@lru_cache(maxsize=None)
def j1728(N: int) -> LaurentSeries:
    """E4^3 / Delta = 1/q + 744 + 196884 q + ..."""
    e4 = eisenstein(4, N + 2)
    return e4**3 * delta(N + 2).inverse()


@lru_cache(maxsize=None)
def hauptmodul(group: Group, N: int) -> LaurentSeries:
    """The normalised Hauptmodul t = 1/p + O(p) (constant term zero)."""
    if group is Group.FULL:
        t = j1728(N)
        return t - t.coeff(0)
    return (eisenstein(6, N + 1, 2) * delta_half(N + 2).inverse()).truncate(N)


@lru_cache(maxsize=None)
def seed_t0(group: Group, N: int) -> LaurentSeries:
    """The weight -2 seed with a simple pole: E4*E6/Delta or E4/Delta^(1/2)."""
    if group is Group.FULL:
        e4 = eisenstein(4, N + 1)
        e6 = eisenstein(6, N + 1)
        return (e4 * e6 * delta(N + 2).inverse()).truncate(N)
    return (eisenstein(4, N + 1, 2) * delta_half(N + 2).inverse()).truncate(N)


@lru_cache(maxsize=None)
def triangular_series(N: int) -> LaurentSeries:
    """sum q^(n(n+1)/2), the odd-theta core: theta2 = 2 q^(1/8) * this."""
    terms = {}
    n = 0
    while n * (n + 1) // 2 <= N:
        terms[n * (n + 1) // 2] = 1
        n += 1
    return LaurentSeries.from_terms(1, terms, max(N, 0), n_min=0)


@lru_cache(maxsize=None)
def theta_series(j: int, N: int) -> LaurentSeries:
    """theta3 or theta4 on lattice 2 (exponent of p is n^2)."""
    if j not in (3, 4):
        raise ValueError("direct p-expansions exist for theta3 and theta4 only")
    terms = {0: 1}
    n = 1
    while n * n <= N:
        terms[n * n] = 2 if j == 3 or n % 2 == 0 else -2
        n += 1
    return LaurentSeries.from_terms(2, terms, max(N, 0), n_min=0)


@lru_cache(maxsize=None)
def theta_fourth(j: int, N: int) -> LaurentSeries:
    """theta_j^4 on lattice 2; integer p-exponents for all three j."""
    if j == 2:
        K = max((N - 1) // 2, 0)
        psi4 = triangular_series(K).align(2) ** 4
        return (psi4.shift(1) * 16).truncate(N)
    return theta_series(j, N) ** 4


def theta_logderiv(j: int, N: int) -> tuple[Fraction, LaurentSeries]:
    """q d/dq log theta_j split as (offset, body) with body(0) = 0.

    The offset is 1/8 for j=2 (from the q^(1/8) prefactor) and 0 otherwise.
    The body lives on lattice 2.
    """
    if j == 2:
        K = max((N + 1) // 2, 1)
        psi = triangular_series(K)
        body = (psi.theta() * psi.inverse()).align(2).truncate(N)
        return Fraction(1, 8), body
    t = theta_series(j, N)
    body = t.theta() * t.inverse() * Fraction(1, 2)
    return Fraction(0), body


def ramanujan_residuals(N: int) -> dict[str, LaurentSeries]:
    """Residuals of the four Ramanujan identities with theta = q d/dq:
    theta(Delta) = E2*Delta, theta(E2) = (E2^2 - E4)/12,
    theta(E4) = (E2*E4 - E6)/3, theta(E6) = (E2*E6 - E4^2)/2."""
    e2 = eisenstein(2, N)
    e4 = eisenstein(4, N)
    e6 = eisenstein(6, N)
    dl = delta(N)
    return {
        "theta(Delta)-E2*Delta": dl.theta() - e2 * dl,
        "theta(E2)-(E2^2-E4)/12": e2.theta() - (e2 * e2 - e4) / 12,
        "theta(E4)-(E2*E4-E6)/3": e4.theta() - (e2 * e4 - e6) / 3,
        "theta(E6)-(E2*E6-E4^2)/2": e6.theta() - (e2 * e6 - e4 * e4) / 2,
    }


def check_ramanujan(N: int) -> dict[str, LaurentSeries]:
    """Verify the Ramanujan identities exactly through order N."""
    residuals = ramanujan_residuals(N)
    for name, res in residuals.items():
        _raise_if_nonzero(name, res)
    return residuals


def check_jacobi(N: int) -> LaurentSeries:
    """Verify theta2^4 + theta4^4 - theta3^4 = 0 exactly through order N."""
    res = theta_fourth(2, N) + theta_fourth(4, N) - theta_fourth(3, N)
    _raise_if_nonzero("theta2^4+theta4^4-theta3^4", res)
    return res


@dataclass(frozen=True)
class NamedForm:
    """A catalog entry: series plus its weight bookkeeping."""

    name: str
    weight: int
    series: LaurentSeries


_CATALOG = {
    "e2": (2, lambda N: eisenstein(2, N)),
    "e4": (4, lambda N: eisenstein(4, N)),
    "e6": (6, lambda N: eisenstein(6, N)),
    "eta12": (6, delta_half),
    "delta-half": (6, delta_half),
    "eta24": (12, delta),
    "delta": (12, delta),
    "j1728": (0, j1728),
    "hauptmodul-full": (0, lambda N: hauptmodul(Group.FULL, N)),
    "hauptmodul-squares": (0, lambda N: hauptmodul(Group.SQUARES, N)),
    "t0-full": (-2, lambda N: seed_t0(Group.FULL, N)),
    "t0-squares": (-2, lambda N: seed_t0(Group.SQUARES, N)),
}


def catalog_names() -> tuple[str, ...]:
    return tuple(_CATALOG)


def named_form(name: str, N: int) -> NamedForm:
    try:
        weight, builder = _CATALOG[name]
    except KeyError:
        raise KeyError(f"unknown catalog form {name!r}") from None
    return NamedForm(name, weight, builder(N))
