"""The one-parameter transcendental solution family of PVI at mu = -1/2.

With W = nu w2 + w1 and W' = nu w2' + w1' built from the chart basis,

    y = (1/8) [ (W + 2x W')^2 - 4x (W')^2 ]^2
        / ( W W' [2(x-1)W' + W] [W + 2x W'] ).

The parameter is projective: the point at infinity stands for the
combination (w2, w2') alone.  Analytic continuation acts on nu by Moebius
transformations from Gamma(2); the generators act as

    gamma0: nu -> nu / (2 nu + 1),     gamma1: nu -> nu - 2.

Near x = 0 the family behaves like y ~ -1/(ln x + b0)^2 with
b0 = 1 + i pi/nu - 4 ln 2; the same constant is the cubic-order
coefficient up to the expansion bookkeeping handled in the verifier.
"""

from __future__ import annotations

from fractions import Fraction

import mpmath as mp

from .errors import DomainError, PoleError
from .hypergeom import Chart, basis_at
from .numeric import as_mpc, jet_derivatives
from .picard import Gamma2Element, PicardParams, picard_eval
from .symmetry import JetPoint, s1_transform

_FACTOR_TOL = mp.mpf("1e-12")


class ChazyParam:
    """Projective family parameter: a complex number or the point at infinity."""

    __slots__ = ("_value",)

    def __init__(self, value):
        if value is None:
            self._value = None
        else:
            self._value = as_mpc(value)

    @classmethod
    def infinity(cls) -> "ChazyParam":
        return cls(None)

    @property
    def is_infinity(self) -> bool:
        return self._value is None

    @property
    def value(self) -> mp.mpc:
        if self._value is None:
            raise DomainError("parameter is the point at infinity")
        return self._value

    def __eq__(self, other):
        if not isinstance(other, ChazyParam):
            try:
                other = ChazyParam(other)
            except Exception:
                return NotImplemented
        if self.is_infinity or other.is_infinity:
            return self.is_infinity and other.is_infinity
        return self._value == other._value

    def __repr__(self):
        return "ChazyParam(inf)" if self.is_infinity else f"ChazyParam({self._value})"


def _as_param(nu) -> ChazyParam:
    return nu if isinstance(nu, ChazyParam) else ChazyParam(nu)


def _w_combination(nu: ChazyParam, bv):
    if nu.is_infinity:
        return bv.omega2, bv.omega2_prime
    return (
        nu.value * bv.omega2 + bv.omega1,
        nu.value * bv.omega2_prime + bv.omega1_prime,
    )


def chazy_eval(x, nu, chart: Chart | None = None) -> mp.mpc:
    """Evaluate the family member at x on the given (or best) chart."""
    x = as_mpc(x)
    nu = _as_param(nu)
    bv = basis_at(x, chart)
    W, Wp = _w_combination(nu, bv)
    factors = (W, Wp, 2 * (x - 1) * Wp + W, W + 2 * x * Wp)
    scale = max(abs(W), abs(Wp), mp.mpf(1))
    for f in factors:
        if abs(f) < _FACTOR_TOL * scale:
            raise PoleError(f"denominator factor vanished at x={x}")
    num = ((W + 2 * x * Wp) ** 2 - 4 * x * Wp ** 2) ** 2 / 8
    den = factors[0] * factors[1] * factors[2] * factors[3]
    return num / den


_LN2 = None


def _ln2():
    global _LN2
    return mp.log(2)


def chazy_asymptotics(nu, point):
    """(leading-form tag, b) at the requested singular point.

    The coefficients are the closed forms

        b0   = 1 + i pi/nu - 4 ln 2                  (point 0, nu != 0)
        b1   = 2 [ i pi (nu - 1) - 1 + 4 ln 2 ]      (point 1)
        binf = 2 [ (nu - 1)(1 - 4 ln 2) + i pi ]     (point inf)

    For the infinity representative, points 1 and inf have no finite
    coefficient and are rejected.
    """
    nu = _as_param(nu)
    point = str(point)
    ln2 = _ln2()
    ipi = mp.mpc(0, 1) * mp.pi
    if point == "0":
        if nu.is_infinity:
            return ("-(log x)^-2", 1 - 4 * ln2)
        if nu.value == 0:
            raise DomainError("coefficient at 0 is unbounded for nu = 0")
        return ("-(log x)^-2", 1 + ipi / nu.value - 4 * ln2)
    if point == "1":
        if nu.is_infinity:
            raise DomainError("coefficient at 1 is unbounded for the infinity representative")
        return ("1+(log(1-x))^-2", 2 * (ipi * (nu.value - 1) - 1 + 4 * ln2))
    if point in ("inf", "oo", "infinity"):
        if nu.is_infinity:
            raise DomainError("coefficient at inf is unbounded for the infinity representative")
        return ("-x (log(1/x))^-2", 2 * ((nu.value - 1) * (1 - 4 * ln2) + ipi))
    raise DomainError(f"unknown singular point {point!r}")


def gamma2_act_moebius(A: Gamma2Element, nu) -> ChazyParam:
    """Moebius action (a nu + b)/(c nu + d), projectively completed."""
    nu = _as_param(nu)
    if nu.is_infinity:
        if A.c == 0:
            return ChazyParam.infinity()
        return ChazyParam(mp.mpf(A.a) / A.c)
    den = A.c * nu.value + A.d
    if den == 0:
        return ChazyParam.infinity()
    return ChazyParam((A.a * nu.value + A.b) / den)


#: Moebius parameter changes matching continuation along the two loops.
LOOP_MOEBIUS = {
    "gamma0": Gamma2Element(1, 0, 2, 1),
    "gamma1": Gamma2Element(1, -2, 0, 1),
}


def picard_limit_check(nu, x, eps_seq=(mp.mpf("1e-2"), mp.mpf("1e-3"), mp.mpf("1e-4"))):
    """Discrepancy sequence for the degeneration of the elliptic family.

    For each eps the elliptic solution with parameters (eps, eps*nu) (or
    (0, eps) for the infinity representative) is pushed through the
    symmetry at mu = 1/2 and compared against the direct family value; the
    discrepancies must decrease with eps.  Near the degeneration the
    elliptic value grows like 1/eps^2, so the computation runs at elevated
    precision.
    """
    x = as_mpc(x)
    nu = _as_param(nu)
    target_dps = max(mp.mp.dps, 50)
    out = []
    with mp.workdps(target_dps):
        target = chazy_eval(x, nu)
        for eps in eps_seq:
            eps = mp.mpf(eps)
            if eps == 0:
                raise DomainError("eps = 0 is the excluded parameter point")
            if nu.is_infinity:
                params = PicardParams(0, eps)
            else:
                params = PicardParams(eps, eps * nu.value)

            def yf(t, _p=params):
                return picard_eval(t, _p)

            h = mp.mpf("1e-5") * min(abs(x), abs(x - 1))
            y, yp, _ = jet_derivatives(yf, x, h)
            image = s1_transform(JetPoint(x, y, yp, Fraction(1, 2)))
            out.append(abs(image - target))
    return out
