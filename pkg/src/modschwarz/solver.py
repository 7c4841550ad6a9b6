"""Quasi-modular solutions of y'' + pi^2 r^2 E4 y = 0 and equivariant
solutions of {h, tau} = 2 pi^2 r^2 E4, for every positive integer r.

One end-to-end run (``solve_ode``) does the following.  Write u = i*pi.
On the group's lattice (m = 1 for even r, m = 2 for odd r) the expansion
variable is p = q**(1/m) and d/dtau = a*u*theta with a = 2/m and
theta = p d/dp.

1. Build the upper-triangular matrix B of the principal-part conditions
   and take its eigenvalue-1 eigenvector X, normalised so the deepest
   component equals 1.
2. Realise the unique weight -2 form g whose principal part is the one X
   prescribes, as a polynomial in the Hauptmodul times the seed form t0
   (greedy cancellation from the deepest pole).
3. Integrate g*E4 termwise and combine into the first solution
   F1 = u*S,   S = -(r^2/a) * theta_antider(g*E4) + a * theta(g),
   with the constant term removed (it is the value of F1/u at the cusp).
4. The second solution is F2 = -2g + tau*F1, so the Schwarzian solution is
   h = F2/F1 = tau + (1/u)*R with R = -2*g/S.
5. Verify both equations exactly on the full trusted windows:
       a^2*theta^2(S) - r^2*E4*S == 0
       W^2/2 - a*theta(W) - 2*r^2*E4 == 0,  W = a^2*theta^2(R)/(1 + a*theta(R))
   (the second is {h,tau}/pi^2 - 2*r^2*E4 after the u-powers cancel).

An independent Frobenius recurrence (``frobenius_oracle``) recomputes the
regular solution coefficient by coefficient straight from the ODE and is
used to cross-check S.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .modforms import (
    Group,
    eisenstein,
    hauptmodul,
    seed_t0,
    theta_fourth,
    theta_logderiv,
)
from .series import LaurentSeries, PrefactoredSeries


class MatchFailure(RuntimeError):
    """Greedy principal-part cancellation missed a coefficient (generator bug)."""


class ResidualNonzero(RuntimeError):
    """A residual that is guaranteed to vanish did not (construction bug)."""


class ZeroDerivative(ArithmeticError):
    """Equivariant offset of a form with vanishing derivative."""


class DegenerateEntries(ValueError):
    """Cross-ratio of entries that are not pairwise distinct."""


def n0_for(r: int) -> int:
    """Deepest pole exponent: -r/2 for even r, -r for odd r (in p-units)."""
    return -(r // 2) if r % 2 == 0 else -r


@dataclass(frozen=True)
class BSystem:
    """The upper-triangular system B X = X killing the singular part.

    ``matrix[k-1][l-1]`` is B_{k,l} = r^2 * b_{l-k} / (a^2 k^2) for l >= k,
    where the b_j are the E4 coefficients on the group's lattice and
    a = 2/m.  The last diagonal entry is exactly 1; every other diagonal
    entry differs from 1, which makes the eigenvector unique once the last
    component is pinned to 1.
    """

    r: int
    group: Group
    n0: int
    matrix: tuple[tuple[Fraction, ...], ...]

    @property
    def m(self) -> int:
        return self.group.lattice

    @property
    def size(self) -> int:
        return -self.n0


def build_B(r: int) -> BSystem:
    """Assemble the principal-part matrix for the given r."""
    if r < 1:
        raise ValueError("r must be a positive integer")
    group = Group.for_r(r)
    m = group.lattice
    a = 2 // m
    n0 = n0_for(r)
    size = -n0
    e4 = eisenstein(4, size - 1, m)
    rows = []
    for k in range(1, size + 1):
        scale = Fraction(r * r, a * a * k * k)
        row = tuple(
            scale * e4.coeff(l - k) if l >= k else Fraction(0)
            for l in range(1, size + 1)
        )
        rows.append(row)
    return BSystem(r=r, group=group, n0=n0, matrix=tuple(rows))


def solve_eigen(system: BSystem) -> tuple[Fraction, ...]:
    """Unique eigenvector X of B for eigenvalue 1 with last component 1.

    Component X[i] (0-based) is the principal-part coefficient a_{-(i+1)}.
    Back-substitution runs from the deepest pole upwards; the divisions by
    1 - B_{k,k} are safe because those diagonal entries are != 1.
    """
    size = system.size
    B = system.matrix
    X: list[Fraction] = [Fraction(0)] * size
    X[size - 1] = Fraction(1)
    for k in range(size - 1, 0, -1):
        s = sum(
            (B[k - 1][l - 1] * X[l - 1] for l in range(k + 1, size + 1)),
            Fraction(0),
        )
        X[k - 1] = s / (1 - B[k - 1][k - 1])
    return tuple(X)


def build_g(X: tuple[Fraction, ...], group: Group, N: int) -> LaurentSeries:
    """The weight -2 form with principal part sum X[i] * p^(-(i+1)).

    Built as P(t)*t0 where t is the Hauptmodul and t0 the seed form, by
    cancelling the most negative surviving exponent first.  Each basis
    element t^j * t0 has leading coefficient exactly 1 at p^(-(j+1)), so
    the greedy pass always succeeds for correct generators.
    """
    size = len(X)
    budget = N + size - 1
    t = hauptmodul(group, budget)
    t0 = seed_t0(group, budget)
    powers = [t0]
    for _ in range(size - 1):
        powers.append(powers[-1] * t)
    acc = LaurentSeries.zero(group.lattice, budget)
    for j in range(size - 1, -1, -1):
        need = X[j] - acc.coeff(-(j + 1))
        if need:
            acc = acc + powers[j] * need
    for i, want in enumerate(X):
        if acc.coeff(-(i + 1)) != want:
            raise MatchFailure(
                f"principal coefficient at p^{-(i + 1)} is {acc.coeff(-(i + 1))},"
                f" wanted {want}"
            )
    return acc


@dataclass(frozen=True)
class SolveResult:
    """Everything one run produces, plus the residuals that prove it."""

    r: int
    group: Group
    X: tuple[Fraction, ...]
    g: LaurentSeries
    S: LaurentSeries
    R: LaurentSeries
    c_over_u: Fraction
    ode_residual: LaurentSeries
    schwarz_residual: LaurentSeries

    @property
    def m(self) -> int:
        return self.group.lattice

    @property
    def n0(self) -> int:
        return n0_for(self.r)

    @property
    def trusted_order(self) -> int:
        return self.R.N

    def to_json_dict(self) -> dict:
        from .series import format_rational

        return {
            "r": self.r,
            "group": self.group.value,
            "m": self.m,
            "n0": self.n0,
            "X": [format_rational(x) for x in self.X],
            "g": self.g.to_json_dict(),
            "S": self.S.to_json_dict(),
            "R": self.R.to_json_dict(),
            "c_over_u": format_rational(self.c_over_u),
            "ode_residual_zero": self.ode_residual.is_zero(),
            "schwarz_residual_zero": self.schwarz_residual.is_zero(),
            "trusted_order": self.trusted_order,
        }


def minimum_order(r: int) -> int:
    """Smallest series order solve_ode accepts for this r."""
    return 2 * (-n0_for(r)) + 2


def solve_ode(r: int, N: int = 40) -> SolveResult:
    """Run the whole construction; S, R and g are trusted through at least N.

    Generator budgets are chosen from the exact trust propagation: division
    by S (order -n0) costs 3*(-n0) orders on R, and the Hauptmodul powers
    cost another -n0 on g, so everything upstream is computed to
    N + 4*(-n0) + guard.
    """
    if r < 1:
        raise ValueError("r must be a positive integer")
    if N < minimum_order(r):
        raise ValueError(
            f"order {N} is below the minimal budget {minimum_order(r)} for r={r}"
        )
    group = Group.for_r(r)
    m = group.lattice
    a = 2 // m
    n0 = n0_for(r)
    size = -n0

    system = build_B(r)
    X = solve_eigen(system)
    g = build_g(X, group, N + 3 * size + 4)
    e4 = eisenstein(4, g.N + size, m)

    product = g * e4  # weight 2, so its constant term must vanish
    s_tilde = g.theta() * a - product.theta_antider() * Fraction(r * r, a)
    c_over_u = s_tilde.coeff(0)
    S = s_tilde - c_over_u
    if S.order != -n0:
        raise ResidualNonzero(
            f"singular part of F1 survived: S has order {S.order}, wanted {-n0}"
        )

    R = g * S.inverse() * (-2)

    ode_residual = S.theta().theta() * (a * a) - S * e4 * (r * r)
    h_deriv = R.theta() * a + 1
    W = R.theta().theta() * (a * a) * h_deriv.inverse()
    schwarz_residual = W * W * Fraction(1, 2) - W.theta() * a - e4 * (2 * r * r)

    if not ode_residual.is_zero():
        raise ResidualNonzero(f"ODE residual nonzero for r={r}")
    if not schwarz_residual.is_zero():
        raise ResidualNonzero(f"Schwarzian residual nonzero for r={r}")

    return SolveResult(
        r=r,
        group=group,
        X=X,
        g=g,
        S=S,
        R=R,
        c_over_u=c_over_u,
        ode_residual=ode_residual,
        schwarz_residual=schwarz_residual,
    )


def frobenius_oracle(r: int, N: int) -> LaurentSeries:
    """The regular Frobenius solution by direct recurrence, independent of
    the eigenvector/integration pipeline.

    y = sum_{n >= -n0} alpha_n p^n with alpha_{-n0} = 1 and, for n > -n0,
    (a^2 n^2 - r^2) alpha_n = r^2 * sum_{s < n} alpha_s b_{n-s}; the
    divisor never vanishes because a*n > r there.
    """
    if r < 1:
        raise ValueError("r must be a positive integer")
    group = Group.for_r(r)
    m = group.lattice
    a = 2 // m
    lead = -n0_for(r)
    if N < lead:
        raise ValueError(f"order {N} cannot hold the leading exponent {lead}")
    e4 = eisenstein(4, max(N - lead, 0), m)
    alpha: dict[int, Fraction] = {lead: Fraction(1)}
    for n in range(lead + 1, N + 1):
        s = sum(
            (alpha[k] * e4.coeff(n - k) for k in range(lead, n)),
            Fraction(0),
        )
        alpha[n] = r * r * s / (a * a * n * n - r * r)
    return LaurentSeries(m, lead, tuple(alpha[n] for n in range(lead, N + 1)))


def equivariant_offset(form: LaurentSeries, weight) -> PrefactoredSeries:
    """The offset h_f - tau = k*f/f' of the equivariant map built from a
    weight-k form, as u^(-1) times a rational series.

    On lattice m the derivative is f' = (2/m)*u*theta(f), so the stored
    body is (k*m/2) * f / theta(f).
    """
    tf = form.theta()
    if tf.is_zero():
        raise ZeroDerivative("the form has zero derivative on its known window")
    body = form * tf.inverse() * (Fraction(weight) * Fraction(form.m, 2))
    return PrefactoredSeries(-1, body)


def cross_ratio(
    o1: LaurentSeries,
    o2: LaurentSeries,
    o3: LaurentSeries,
    o4: LaurentSeries,
) -> LaurentSeries:
    """Cross-ratio [z1,z2,z3,z4] of four points z_i = tau + u^(-1)*o_i.

    The u-powers cancel between numerator and denominator, so the result
    is again a rational Laurent series:
    ((o1-o2)(o4-o3)) / ((o1-o3)(o4-o2)).
    """
    d12 = o1 - o2
    d43 = o4 - o3
    d13 = o1 - o3
    d42 = o4 - o2
    for name, d in (("z1-z2", d12), ("z4-z3", d43), ("z1-z3", d13), ("z4-z2", d42)):
        if d.is_zero():
            raise DegenerateEntries(f"difference {name} vanishes")
    return (d12 * d43) * (d13 * d42).inverse()


THETA_WEIGHT = Fraction(1, 2)

ANHARMONIC_LABELS = (
    "mu",
    "1-mu",
    "1/mu",
    "1/(1-mu)",
    "mu/(mu-1)",
    "(mu-1)/mu",
)


def theta_offsets(N: int) -> tuple[LaurentSeries, LaurentSeries, LaurentSeries]:
    """Offsets (bodies of h_{theta_j} - tau, j = 2, 3, 4) on lattice 2.

    theta2 itself has no integer p-expansion, so the offsets are built from
    the log-derivatives: k*f/f' = (k/2) / (q d/dq log f) with k = 1/2.
    """
    out = []
    for j in (2, 3, 4):
        offset, body = theta_logderiv(j, N)
        out.append((body + offset).inverse() * (THETA_WEIGHT / 2))
    return tuple(out)


def anharmonic_images(mu: LaurentSeries) -> dict[str, LaurentSeries]:
    """The six images of mu under the anharmonic group."""
    one_minus = 1 - mu
    return {
        "mu": mu,
        "1-mu": one_minus,
        "1/mu": mu.inverse(),
        "1/(1-mu)": one_minus.inverse(),
        "mu/(mu-1)": mu * (mu - 1).inverse(),
        "(mu-1)/mu": (mu - 1) * mu.inverse(),
    }


def classify_theta_cross_ratio(N: int) -> tuple[str, LaurentSeries]:
    """Identify which anharmonic image of mu = theta2^4/theta3^4 equals the
    cross-ratio [tau, h_theta2, h_theta3, h_theta4]; exact comparison."""
    w2, w3, w4 = theta_offsets(N)
    cross = cross_ratio(LaurentSeries.zero(2, N), w2, w3, w4)
    mu = theta_fourth(2, N) * theta_fourth(3, N).inverse()
    for label, image in anharmonic_images(mu).items():
        if cross.matches(image, min_overlap=min(10, N // 2)):
            return label, cross
    raise ResidualNonzero(
        "theta cross-ratio matches no anharmonic image of theta2^4/theta3^4"
    )
