"""Reference closed forms for small r, expressed in catalog generators.

These are the right-hand sides the golden tests and the ``examples``
command compare pipeline output against.  They are computed from the
generators (never typed in as coefficient lists), so every comparison is
computed-vs-computed.

Known misprint: the g_3 combination is sometimes quoted with coefficient
1226 instead of 1266.  The 1226 variant has principal part
p^-3 - 230 p^-1, which contradicts the eigenvector requirement -270, so
1266 is the correct coefficient; the f_1 closed form for r = 3 is only
consistent with 1266 as well.  ``g3`` takes the coefficient as a
parameter so the mismatch can be demonstrated rather than patched
silently.
"""

from __future__ import annotations

from fractions import Fraction

from .modforms import Group, delta, delta_half, eisenstein, seed_t0
from .series import LaurentSeries

G3_COEFFICIENT = 1266
G3_MISPRINT = 1226
G4_COEFFICIENT = 824


def g1(N: int) -> LaurentSeries:
    """E4 / Delta^(1/2) on lattice 2."""
    return seed_t0(Group.SQUARES, N)


def g2(N: int) -> LaurentSeries:
    """E4*E6 / Delta on lattice 1."""
    return seed_t0(Group.FULL, N)


def g3(N: int, coefficient: int = G3_COEFFICIENT) -> LaurentSeries:
    """E4^4 / Delta^(3/2) - coefficient * E4 / Delta^(1/2), lattice 2."""
    pad = N + 8
    e4 = eisenstein(4, pad, 2)
    lead = e4**4 * (delta_half(pad) ** 3).inverse()
    return (lead - g1(pad) * coefficient).truncate(N)


def g4(N: int, coefficient: int = G4_COEFFICIENT) -> LaurentSeries:
    """E4^4*E6 / Delta^2 - coefficient * E4*E6 / Delta, lattice 1."""
    pad = N + 8
    e4 = eisenstein(4, pad)
    e6 = eisenstein(6, pad)
    lead = e4**4 * e6 * (delta(pad) ** 2).inverse()
    return (lead - g2(pad) * coefficient).truncate(N)


def s1(N: int) -> LaurentSeries:
    """F1/u for r=1 from the closed form -E4'/(2*Delta^(1/2)).

    With E4' = 2u * theta(E4) this is -theta(E4)/Delta^(1/2), the
    theta image taken on lattice 1 and aligned to lattice 2.
    """
    pad = N + 6
    te4 = eisenstein(4, pad).theta().align(2)
    return (-te4 * delta_half(2 * pad).inverse()).truncate(N)


def antider_identity_1(N: int) -> LaurentSeries:
    """-E6/Delta^(1/2): the exact value of theta_antider(g1 * E4)."""
    pad = N + 6
    return (-eisenstein(6, 2 * pad, 2) * delta_half(2 * pad).inverse()).truncate(N)


def r1(N: int) -> LaurentSeries:
    """R for r=1 from h_1 = tau + 4*E4/E4': body 2*E4/theta(E4), aligned."""
    pad = N + 6
    e4 = eisenstein(4, pad)
    return (e4 * e4.theta().inverse() * 2).align(2).truncate(N)


def _h_denominator_tail(N: int, depth: int) -> LaurentSeries:
    """E2 - E6/E4 - 720*Delta/(E4*E6) [+ deeper correction terms].

    depth 2 stops there (r=2); depth 3 adds the Delta^2 term (r=3);
    depth 4 also subtracts the Delta^3 term (r=4).
    """
    pad = N + 12
    e2 = eisenstein(2, pad)
    e4 = eisenstein(4, pad)
    e6 = eisenstein(6, pad)
    dl = delta(pad)
    out = e2 - e6 * e4.inverse() - dl * (e4 * e6).inverse() * 720
    if depth >= 3:
        den = e4**4 * e6 * 77 + e4 * e6**3 * 211
        out = out + dl**2 * den.inverse() * 95800320
    if depth >= 4:
        den = e4 * e6 * (e4**6 * 8701 + e4**3 * e6**2 * 31774 + e6**4 * 21733)
        out = out - dl**3 * den.inverse() * 9146248151040
    return out


def r_from_h_denominator(r: int, N: int) -> LaurentSeries:
    """R = 6 / (E2 + correction terms) for r in 2..4, on the group lattice."""
    if r not in (2, 3, 4):
        raise ValueError("closed h-denominator forms exist for r = 2, 3, 4")
    body = _h_denominator_tail(N, depth=r).inverse() * 6
    if r % 2:
        body = body.align(2)
    return body.truncate(N)


def s2(N: int) -> LaurentSeries:
    """F1/u for r=2: (6E4^3 - 2E2E4E6 - 4E6^2)/(6*Delta) - 1488."""
    pad = N + 6
    e2 = eisenstein(2, pad)
    e4 = eisenstein(4, pad)
    e6 = eisenstein(6, pad)
    num = e4**3 * 6 - e2 * e4 * e6 * 2 - e6**2 * 4
    return (num * delta(pad).inverse() * Fraction(1, 6) - 1488).truncate(N)


def f1_body_3(N: int, e6delta: int = 15006, e2e4delta: int = 1266) -> LaurentSeries:
    """F1/u for r=3:
    (9E6^3 - E2E4^4 - 8E4^3E6 + e6delta*E6*Delta + e2e4delta*E2E4*Delta) / (3 Delta^(3/2))."""
    pad = 2 * N + 12
    e2 = eisenstein(2, pad)
    e4 = eisenstein(4, pad)
    e6 = eisenstein(6, pad)
    dl = delta(pad)
    num = (
        e6**3 * 9
        - e2 * e4**4
        - e4**3 * e6 * 8
        + e6 * dl * e6delta
        + e2 * e4 * dl * e2e4delta
    )
    body = num.align(2) * (delta_half(pad) ** 3).inverse() * Fraction(1, 3)
    return body.truncate(N)


F1_4_CONSTANT = 1115232


def f1_body_4(N: int, *, corrected: bool = True) -> LaurentSeries:
    """F1/u for r=4 in the weight-24 basis:
    -(219E4^6 - 641E4^3E6^2 + 113E2E4^4E6 + 103E2E4E6^3 + 206E6^4)/(648 Delta^2)
    plus the constant 1115232.

    The combination is sometimes quoted with denominator Delta (weight
    bookkeeping forces Delta^2) and without the constant; as printed it is
    the basepoint-dependent f_1, which misses the zero-constant solution by
    exactly F1_4_CONSTANT.  ``corrected=False`` returns that variant.
    """
    pad = N + 8
    e2 = eisenstein(2, pad)
    e4 = eisenstein(4, pad)
    e6 = eisenstein(6, pad)
    num = (
        e4**6 * 219
        - e4**3 * e6**2 * 641
        + e2 * e4**4 * e6 * 113
        + e2 * e4 * e6**3 * 103
        + e6**4 * 206
    )
    body = num * (delta(pad) ** 2).inverse() * Fraction(-1, 648)
    if corrected:
        body = body + F1_4_CONSTANT
    return body.truncate(N)
