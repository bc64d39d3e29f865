"""Weierstrass elliptic function via its cosecant/q-expansion.

For half-periods (w1, w2) with Im(w2/w1) > 0 and q = exp(i pi w2/w1):

    wp(u) = -pi^2/(12 w1^2)
            + (2 pi^2/w1^2) sum_{k>=1} k q^{2k}/(1-q^{2k}) (1 - cos(k pi u/w1))
            + (pi^2/(4 w1^2)) csc^2(pi u/(2 w1))

valid when |Re(u/(i w1))| < 2 Re(w2/(i w1)), i.e. |Im(u/w1)| < 2 Im(w2/w1).
Argument reduction by full periods 2w1, 2w2 places u inside that strip
(round-to-nearest lattice coordinates always give |Im(u/w1)| <= Im tau).
"""

from __future__ import annotations

from dataclasses import dataclass

import mpmath as mp

from .errors import DegenerateLattice, DomainError, NonConvergence, PoleError
from .numeric import as_mpc, series_tol

#: Relative tolerance for declaring a reduced argument a lattice point.
POLE_TOL = mp.mpf("1e-12")

#: Nome margin: |q| >= 1 - Q_MARGIN is rejected as too degenerate.
Q_MARGIN = mp.mpf("0.01")

WP_TERM_CAP = 10_000


@dataclass(frozen=True)
class PeriodPair:
    """Half-periods of a lattice; normalized pairs have Im(w2/w1) > 0."""

    omega1: mp.mpc
    omega2: mp.mpc

    def tau(self) -> mp.mpc:
        if self.omega1 == 0:
            raise DegenerateLattice("omega1 = 0")
        return self.omega2 / self.omega1


@dataclass(frozen=True)
class EllipticInvariants:
    e1: mp.mpc
    e2: mp.mpc
    e3: mp.mpc

    def as_tuple(self):
        return (self.e1, self.e2, self.e3)


def normalize(p: PeriodPair) -> PeriodPair:
    """Orient the pair so Im(w2/w1) > 0, negating w2 if needed.

    Negation generates the same lattice, so wp is unchanged.
    """
    p = PeriodPair(as_mpc(p.omega1), as_mpc(p.omega2))
    im = mp.im(p.tau())
    if im == 0:
        raise DegenerateLattice(f"real period ratio {p.tau()}")
    if im < 0:
        return PeriodPair(p.omega1, -p.omega2)
    return p


def _lattice_coordinates(u, p: PeriodPair):
    """Real (a, b) with u = a 2w1 + b 2w2."""
    t1, t2 = 2 * p.omega1, 2 * p.omega2
    det = mp.re(t1) * mp.im(t2) - mp.im(t1) * mp.re(t2)
    if det == 0:
        raise DegenerateLattice("periods linearly dependent over R")
    a = (mp.re(u) * mp.im(t2) - mp.im(u) * mp.re(t2)) / det
    b = (mp.re(t1) * mp.im(u) - mp.im(t1) * mp.re(u)) / det
    return a, b


def reduce_argument(u, p: PeriodPair) -> mp.mpc:
    """Shift u by full periods into the fundamental strip; reject poles.

    Shifts use nearest-integer lattice coordinates, which places the result
    inside the convergence strip of the series with margin.
    """
    u = as_mpc(u)
    p = normalize(p)
    a, b = _lattice_coordinates(u, p)
    m = int(mp.nint(a))
    n = int(mp.nint(b))
    red = u - 2 * m * p.omega1 - 2 * n * p.omega2
    scale = max(abs(p.omega1), abs(p.omega2))
    if abs(red) < POLE_TOL * scale:
        raise PoleError(f"u={u} reduces to a lattice point")
    return red


def wp(u, p: PeriodPair) -> mp.mpc:
    """Evaluate wp(u; w1, w2) on the (normalized, reduced) arguments."""
    p = normalize(p)
    u = reduce_argument(u, p)
    w1 = p.omega1
    tau = p.tau()
    q = mp.exp(mp.mpc(0, 1) * mp.pi * tau)
    if abs(q) >= 1 - Q_MARGIN:
        raise DomainError(f"|q| = {abs(q)} too close to 1")
    pref = mp.pi ** 2 / w1 ** 2
    sin_half = mp.sin(mp.pi * u / (2 * w1))
    if sin_half == 0:
        raise PoleError("u is congruent to a lattice point")
    s = -pref / 12 + pref / 4 / sin_half ** 2
    tol = series_tol()
    q2 = q * q
    q2k = mp.mpc(1)
    small_run = 0
    for k in range(1, WP_TERM_CAP):
        q2k *= q2
        t = 2 * pref * k * q2k / (1 - q2k) * (1 - mp.cos(k * mp.pi * u / w1))
        s += t
        # after reduction the effective term ratio is |q|, so a short run of
        # small terms certifies the geometric tail
        if abs(t) < tol * (1 + abs(s)):
            small_run += 1
            if small_run >= 3 and k >= 8:
                return s
        else:
            small_run = 0
    raise NonConvergence("wp: term cap exceeded")


def picard_invariants(x) -> EllipticInvariants:
    """Lattice invariants e1, e2, e3 of the degree-two model y^2 = prod(s - e_i).

    e1 = 1 - (x+1)/3,  e2 = x - (x+1)/3,  e3 = -(x+1)/3; they sum to zero.
    """
    x = as_mpc(x)
    third = (x + 1) / 3
    return EllipticInvariants(1 - third, x - third, -third)
