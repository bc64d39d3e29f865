"""The two-parameter elliptic solution family of PVI at mu = 1/2.

    y(x; nu1, nu2) = wp(nu1 w1 + nu2 w2; w1, w2) + (x+1)/3

with (w1, w2) the hypergeometric basis of the active chart.  Analytic
continuation around the punctures acts on (nu1, nu2) through Gamma(2):
continuation along a loop with basis matrix A = [[a,b],[c,d]] sends

    (nu1, nu2)  ->  (a nu1 + c nu2, b nu1 + d nu2).

Rational parameters give algebraic solutions, labelled by a coprime pair
(M, N) built from the parameter denominators.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

import mpmath as mp

from .errors import DomainError
from .hypergeom import Chart, basis_at
from .numeric import as_mpc
from .weierstrass import PeriodPair, wp

_PARAM_TOL = mp.mpf("1e-15")


@dataclass(frozen=True)
class PicardParams:
    """(nu1, nu2) with the excluded origin; canonical range 0 <= Re nu < 2."""

    nu1: mp.mpc
    nu2: mp.mpc

    def __post_init__(self):
        object.__setattr__(self, "nu1", as_mpc(self.nu1))
        object.__setattr__(self, "nu2", as_mpc(self.nu2))
        if abs(self.nu1) < _PARAM_TOL and abs(self.nu2) < _PARAM_TOL:
            raise DomainError("parameters (0, 0) are excluded")

    def normalized(self) -> "PicardParams":
        """Shift both parameters by even integers into 0 <= Re < 2.

        Even shifts move the argument by full lattice periods, so the
        solution is unchanged.
        """
        return PicardParams(_even_shift(self.nu1), _even_shift(self.nu2))


def _even_shift(nu: mp.mpc) -> mp.mpc:
    k = mp.floor(mp.re(nu) / 2)
    return nu - 2 * k


@dataclass(frozen=True)
class Gamma2Element:
    """Integer 2x2 matrix, det 1, congruent to the identity mod 2."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise DomainError("determinant must be 1")
        if self.a % 2 == 0 or self.d % 2 == 0 or self.b % 2 or self.c % 2:
            raise DomainError("matrix not congruent to the identity mod 2")

    def __matmul__(self, other: "Gamma2Element") -> "Gamma2Element":
        return Gamma2Element(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "Gamma2Element":
        return Gamma2Element(self.d, -self.b, -self.c, self.a)

    def rows(self):
        return ((self.a, self.b), (self.c, self.d))


IDENTITY = Gamma2Element(1, 0, 0, 1)
#: Continuation matrices of the basis along the two elementary loops.
GAMMA0_MATRIX = Gamma2Element(1, 0, 2, 1)
GAMMA1_MATRIX = Gamma2Element(1, -2, 0, 1)


@dataclass(frozen=True)
class AlgebraicLabel:
    """Coprime pair (M, N) classifying an algebraic member."""

    M: int
    N: int

    def __post_init__(self):
        if self.N <= 0 or self.M < 0 or self.M >= 2 * self.N:
            raise DomainError("label out of range: need 0 <= M < 2N")
        if gcd(self.M, self.N) != 1:
            raise DomainError("label must be coprime")


def picard_eval(x, params: PicardParams, chart: Chart | None = None) -> mp.mpc:
    """Evaluate the elliptic solution at x on the given (or best) chart."""
    x = as_mpc(x)
    bv = basis_at(x, chart)
    u = params.nu1 * bv.omega1 + params.nu2 * bv.omega2
    return wp(u, PeriodPair(bv.omega1, bv.omega2)) + (x + 1) / 3


def _fold_exponent(nu: mp.mpc) -> mp.mpc:
    """Pick nu or 2-nu so the real part lands in [0, 1]."""
    if mp.re(nu) <= 1:
        return nu
    return 2 - nu


def picard_exponents(params: PicardParams):
    """Local exponents (l0, l1, linf) of the algebraic-type asymptotics.

    y ~ a0 x^{l0} at 0,  y ~ 1 - a1 (1-x)^{l1} at 1,  y ~ ainf x^{1-linf}
    at infinity.  l0 comes from nu2, l1 from nu1, linf from nu2 - nu1; each
    is reduced by the period-2 shifts so that 0 <= Re l <= 1, which is the
    range the solutions actually realize.
    """
    p = params.normalized()
    l0 = _fold_exponent(p.nu2)
    l1 = _fold_exponent(p.nu1)
    delta = p.nu2 - p.nu1
    if mp.re(delta) < 0:
        delta = delta + 2
    linf = _fold_exponent(delta)
    return l0, l1, linf


def gamma2_act_params(A: Gamma2Element, params: PicardParams, normalize: bool = True) -> PicardParams:
    """Parameter change under continuation with basis matrix A.

    The raw action is linear, (nu1, nu2) -> (a nu1 + c nu2, b nu1 + d nu2);
    with normalize=True the result is shifted by even integers back into
    the canonical range (the solution is unchanged by those shifts).
    """
    out = PicardParams(
        A.a * params.nu1 + A.c * params.nu2,
        A.b * params.nu1 + A.d * params.nu2,
    )
    return out.normalized() if normalize else out


def algebraic_label(nu1: Fraction, nu2: Fraction) -> AlgebraicLabel:
    """(M, N) for rational parameters: N = lcm of denominators, M = gcd of
    the numerators rescaled to the common denominator."""
    nu1 = Fraction(nu1)
    nu2 = Fraction(nu2)
    if nu1 == 0 and nu2 == 0:
        raise DomainError("parameters (0, 0) are excluded")
    N = lcm(nu1.denominator, nu2.denominator)
    a1 = abs(nu1.numerator) * (N // nu1.denominator)
    a2 = abs(nu2.numerator) * (N // nu2.denominator)
    M = gcd(a1, a2)
    return AlgebraicLabel(M % (2 * N), N)
