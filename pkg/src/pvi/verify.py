"""Numerical verification engine.

Every residual figure quoted by the package comes from here: the equation
residual of a sampled solution branch (stencil derivatives + Richardson),
asymptotic-exponent and log-offset fits, polynomial-relation checks, and
loop-continuation consistency tests.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath as mp

from .chazy import ChazyParam, chazy_eval, gamma2_act_moebius
from .errors import DomainError, NearSingular, NonConvergence
from .hypergeom import Chart, basis_at, best_chart, continue_values, loop_points
from .numeric import as_mpc, as_mpf, default_step, jet_derivatives
from .picard import (
    GAMMA0_MATRIX,
    GAMMA1_MATRIX,
    PicardParams,
    gamma2_act_params,
    picard_eval,
)
from .symmetry import apply_ladder, elementary_symmetry, mu_ladder
from .weierstrass import PeriodPair, wp

#: y within this distance of {0, 1, x} makes the equation itself singular.
SINGULAR_GUARD = mp.mpf("1e-6")

#: Minimum working precision for residual computations.
RESIDUAL_DPS = 30


def _mu_value(mu: Fraction) -> mp.mpf:
    mu = Fraction(mu)
    return mp.mpf(mu.numerator) / mu.denominator


def pvi_rhs(x, y, yp, mu) -> mp.mpc:
    """Right-hand side of the second-order equation for y''(x)."""
    x, y, yp = as_mpc(x), as_mpc(y), as_mpc(yp)
    m = _mu_value(mu) if isinstance(mu, Fraction) else as_mpf(mu)
    return (
        (1 / y + 1 / (y - 1) + 1 / (y - x)) * yp ** 2 / 2
        - (1 / x + 1 / (x - 1) + 1 / (y - x)) * yp
        + y * (y - 1) * (y - x) / (2 * x ** 2 * (x - 1) ** 2)
        * ((2 * m - 1) ** 2 + x * (x - 1) / (y - x) ** 2)
    )


# -- solution handles -----------------------------------------------------------

_PARAMETRIC_FAMILIES = {
    # s-parameterized algebraic solutions at mu = 1/2
    "a2": (
        lambda s: (s - 1) ** 3 * (3 + s) / ((s - 3) * (1 + s) ** 3),
        lambda s: (s - 1) ** 2 / ((s - 3) * (1 + s)),
    ),
    "b2": (
        lambda s: (s + 2) ** 2 / (8 * s),
        lambda s: (2 + s) / 4,
    ),
    "g2": (
        lambda s: (3 - s) ** 3 * (1 + s) / ((1 - s) * (3 + s) ** 3),
        lambda s: 3 * (3 - s) * (1 + s) / (3 + s) ** 2,
    ),
}


@dataclass(frozen=True)
class SolutionHandle:
    """Tagged description of a concrete solution branch the verifier can sample."""

    kind: str
    params: dict = field(default_factory=dict)
    mu: Fraction = Fraction(1, 2)

    _MU_BY_KIND = {
        "picard": Fraction(1, 2),
        "chazy": Fraction(-1, 2),
        "rational": Fraction(1),
    }

    def __post_init__(self):
        object.__setattr__(self, "mu", Fraction(self.mu))
        if self.kind in self._MU_BY_KIND:
            if self.mu != self._MU_BY_KIND[self.kind]:
                raise DomainError(f"kind {self.kind!r} requires mu = {self._MU_BY_KIND[self.kind]}")
        elif self.kind == "parametric":
            if self.params.get("family") not in _PARAMETRIC_FAMILIES:
                raise DomainError(f"unknown parametric family {self.params.get('family')!r}")
        else:
            raise DomainError(f"unknown solution kind {self.kind!r}")

    # -- factories ---------------------------------------------------------------

    @classmethod
    def picard(cls, nu1, nu2) -> "SolutionHandle":
        return cls("picard", {"params": PicardParams(nu1, nu2)}, Fraction(1, 2))

    @classmethod
    def chazy(cls, nu) -> "SolutionHandle":
        nu = nu if isinstance(nu, ChazyParam) else ChazyParam(nu)
        return cls("chazy", {"nu": nu}, Fraction(-1, 2))

    @classmethod
    def rational_family(cls, a) -> "SolutionHandle":
        return cls("rational", {"a": as_mpc(a)}, Fraction(1))

    @classmethod
    def parametric(cls, family: str, mu=Fraction(1, 2)) -> "SolutionHandle":
        return cls("parametric", {"family": family}, Fraction(mu))


def evaluator(h: SolutionHandle, chart: Chart | None = None):
    """Callable x -> y(x) for the handle."""
    if h.kind == "picard":
        params = h.params["params"]
        return lambda x: picard_eval(x, params, chart)
    if h.kind == "chazy":
        nu = h.params["nu"]
        return lambda x: chazy_eval(x, nu, chart)
    if h.kind == "rational":
        a = h.params["a"]
        return lambda x: a * as_mpc(x) / (1 - (1 - a) * as_mpc(x))
    family = h.params["family"]
    xf, yf = _PARAMETRIC_FAMILIES[family]
    return lambda x: yf(_recover_parameter(xf, x)[0])


def _recover_parameter(xf, x0, nstarts: int = 8):
    """All parameter values with xf(s) = x0, by damped Newton from seeded starts."""
    x0 = as_mpc(x0)
    rng = random.Random(1234)
    tol = mp.mpf(10) ** (-mp.mp.dps + 8)
    roots: list[mp.mpc] = []
    for _ in range(nstarts):
        s = mp.mpc(4 * rng.random() - 2, 4 * rng.random() - 2)
        try:
            for _ in range(80):
                f = xf(s) - x0
                if abs(f) < tol:
                    break
                df = mp.diff(lambda t: xf(t) - x0, s)
                if df == 0:
                    break
                step = f / df
                lam = mp.mpf(1)
                while lam > mp.mpf("1e-6") and abs(xf(s - lam * step) - x0) > abs(f):
                    lam /= 2
                s = s - lam * step
            if abs(xf(s) - x0) < tol:
                if all(abs(s - r) > mp.mpf("1e-8") for r in roots):
                    roots.append(s)
        except (ZeroDivisionError, ValueError):
            continue
    if not roots:
        raise NonConvergence(f"no parameter value found with x(s) = {x0}")
    return roots


def _parametric_jet(h: SolutionHandle, x):
    """(y, y', y'') for every parameter branch over x, by exact chain rule."""
    xf, yf = _PARAMETRIC_FAMILIES[h.params["family"]]
    jets = []
    for s in _recover_parameter(xf, x):
        xd = mp.diff(xf, s)
        yd = mp.diff(yf, s)
        xdd = mp.diff(xf, s, 2)
        ydd = mp.diff(yf, s, 2)
        yp = yd / xd
        ypp = (ydd * xd - yd * xdd) / xd ** 3
        jets.append((yf(s), yp, ypp))
    return jets


def _rational_jet(h: SolutionHandle, x):
    a = h.params["a"]
    x = as_mpc(x)
    D = 1 - (1 - a) * x
    return (a * x / D, a / D ** 2, 2 * a * (1 - a) / D ** 3)


def _guard_singular(x, y):
    x, y = as_mpc(x), as_mpc(y)
    if min(abs(y), abs(y - 1), abs(y - x)) < SINGULAR_GUARD:
        raise NearSingular(f"y={y} within {SINGULAR_GUARD} of the singular values at x={x}")


def _residual_from_jet(x, y, yp, ypp, mu) -> mp.mpf:
    rhs = pvi_rhs(x, y, yp, mu)
    return abs(ypp - rhs) / (1 + abs(rhs))


def pvi_residual(h: SolutionHandle, x, step=None) -> mp.mpf:
    """Relative equation residual |y'' - RHS| / (1 + |RHS|) at x.

    Closed-form kinds use exact derivatives; series-backed kinds use the
    complex 5-point stencil with Richardson over steps h and h/2.
    """
    x = as_mpc(x)
    with mp.workdps(max(mp.mp.dps, RESIDUAL_DPS)):
        if h.kind == "rational":
            y, yp, ypp = _rational_jet(h, x)
            _guard_singular(x, y)
            return _residual_from_jet(x, y, yp, ypp, h.mu)
        if h.kind == "parametric":
            worst = mp.mpf(0)
            for y, yp, ypp in _parametric_jet(h, x):
                _guard_singular(x, y)
                worst = max(worst, _residual_from_jet(x, y, yp, ypp, h.mu))
            return worst
        chart = best_chart(x)
        f = evaluator(h, chart)
        hstep = as_mpc(step) if step is not None else default_step(x)
        y, yp, ypp = jet_derivatives(f, x, hstep)
        _guard_singular(x, y)
        return _residual_from_jet(x, y, yp, ypp, h.mu)


# -- asymptotic fitting -----------------------------------------------------------


def _window_radii(window, nsamples):
    rmin, rmax = (as_mpf(w) for w in window)
    if not 0 < rmin < rmax:
        raise DomainError(f"bad window {window}")
    if nsamples < 8:
        nsamples = 8
    ratio = (rmax / rmin) ** (mp.mpf(1) / (nsamples - 1))
    return [rmin * ratio ** k for k in range(nsamples)]


def _ls_slope(xs, ys):
    n = len(xs)
    sx = sum(xs)
    sy = sum(ys)
    sxx = sum(v * v for v in xs)
    sxy = sum(u * v for u, v in zip(xs, ys))
    return (n * sxy - sx * sy) / (n * sxx - sx * sx)


def _ls_intercept(xs, ys):
    """Complex least-squares intercept of y = b + c x."""
    n = len(xs)
    sx = sum(xs)
    sy = sum(ys)
    sxx = sum(v * v for v in xs)
    sxy = sum(u * v for u, v in zip(xs, ys))
    det = n * sxx - sx * sx
    c = (n * sxy - sx * sy) / det
    return (sy - c * sx) / n


def _sample_points(point: str, radii, ray_angle):
    point = str(point)
    if point == "0":
        phase = mp.exp(mp.mpc(0, 1) * ray_angle) if ray_angle else 1
        return [r * phase for r in radii], [mp.log(r) for r in radii]
    if point == "1":
        phase = mp.exp(mp.mpc(0, 1) * ray_angle) if ray_angle else 1
        return [1 - r * phase for r in radii], [mp.log(r) for r in radii]
    if point in ("inf", "oo", "infinity"):
        angle = ray_angle if ray_angle is not None else mp.mpf("-0.3")
        phase = mp.exp(mp.mpc(0, 1) * angle)
        return [phase / r for r in radii], [-mp.log(r) for r in radii]
    raise DomainError(f"unknown singular point {point!r}")


def fit_exponent(h: SolutionHandle, point, window, nsamples: int = 9, ray_angle=None):
    """Fitted asymptotic data of the branch near a singular point.

    Algebraic-type kinds return the least-squares slope of log|obs| against
    the log of the radial coordinate, where obs is y at 0, 1-y at 1, and y
    at infinity (so the slope estimates l0, l1 and 1 - linf respectively).

    The transcendental kind fits the leading form with a log offset,
    y ~ -1/(log x + b)^2 at 0 (and its analogues at 1 and infinity), and
    returns the fitted offset b extrapolated in 1/log; at 0 this is the
    closed-form cubic-coefficient constant of the family.
    """
    radii = _window_radii(window, nsamples)
    xs, logs = _sample_points(point, radii, ray_angle)
    f = evaluator(h)
    point = str(point)
    if h.kind == "chazy":
        offsets = []
        invL = []
        for x, _ in zip(xs, logs):
            y = f(x)
            if point == "0":
                L = mp.log(x)
                square = -1 / y
            elif point == "1":
                L = mp.log(1 - x)
                square = 1 / (y - 1)
            else:
                L = mp.log(1 / x)
                square = -x / y
            root = mp.sqrt(square)
            if abs(root - L) > abs(-root - L):
                root = -root
            offsets.append(root - L)
            invL.append(1 / L)
        return _ls_intercept(invL, offsets)
    values = []
    for x in xs:
        y = f(x)
        obs = 1 - y if point == "1" else y
        values.append(mp.log(abs(obs)))
    return mp.mpc(_ls_slope(logs, values))


# -- polynomial relations -----------------------------------------------------------


def check_relation(h: SolutionHandle, relation: dict, samples, symmetry: str | None = None) -> mp.mpf:
    """Max |F(x, y(x))| over samples, normalized by the coefficient norm.

    relation maps (i, j) to the coefficient of x^i y^j.  An elementary
    symmetry tag transforms (x, y) before F is evaluated, matching the
    convention that relations hold up to those substitutions.
    """
    norm = sum(abs(as_mpc(c)) for c in relation.values())
    if norm == 0 or not all(mp.isfinite(as_mpc(c)) for c in relation.values()):
        raise DomainError("relation must have finite, not all zero coefficients")
    f = evaluator(h)
    worst = mp.mpf(0)
    for x in samples:
        x = as_mpc(x)
        y = f(x)
        if symmetry:
            x, y = elementary_symmetry(symmetry, x, y)
        val = sum(as_mpc(c) * x ** i * y ** j for (i, j), c in relation.items())
        worst = max(worst, abs(val) / norm)
    return worst


# -- loop continuation ---------------------------------------------------------------


def _loop_setup(loop: str, base_angle):
    if loop == "gamma0":
        return loop_points("gamma0", base_angle), Chart.ZERO, GAMMA0_MATRIX
    if loop == "gamma1":
        return loop_points("gamma1", base_angle), Chart.ONE, GAMMA1_MATRIX
    raise DomainError(f"unknown loop {loop!r}")


def _trivial_loop_points(base):
    # small closed square around the base point, enclosing no singularity
    base = as_mpc(base)
    r = mp.mpf("0.05")
    corners = [base + r, base + r * mp.mpc(0, 1), base - r, base - r * mp.mpc(0, 1), base + r]
    return corners


def _value_from_basis(h: SolutionHandle, x, vals):
    w1, w2, w1p, w2p = vals
    if h.kind == "picard":
        p = h.params["params"]
        return wp(p.nu1 * w1 + p.nu2 * w2, PeriodPair(w1, w2)) + (x + 1) / 3
    nu = h.params["nu"]
    if nu.is_infinity:
        W, Wp = w2, w2p
    else:
        W, Wp = nu.value * w2 + w1, nu.value * w2p + w1p
    num = ((W + 2 * x * Wp) ** 2 - 4 * x * Wp ** 2) ** 2 / 8
    den = W * Wp * (2 * (x - 1) * Wp + W) * (W + 2 * x * Wp)
    return num / den


def _transformed_handle(h: SolutionHandle, A) -> SolutionHandle:
    if h.kind == "picard":
        return SolutionHandle.picard(
            *(lambda p: (p.nu1, p.nu2))(gamma2_act_params(A, h.params["params"]))
        )
    return SolutionHandle.chazy(gamma2_act_moebius(A, h.params["nu"]))


def loop_consistency(h: SolutionHandle, loop: str, n_base_points: int = 6) -> mp.mpf:
    """Monodromy consistency of a branch around a loop.

    The basis is continued numerically around the loop from several base
    points on it; the continued solution value is compared against the
    direct evaluator with the loop's parameter change applied.  "trivial"
    uses a contractible loop and the identity change.  Returns the max
    discrepancy.
    """
    if h.kind not in ("picard", "chazy"):
        raise DomainError("loop consistency applies to the picard and chazy kinds")
    worst = mp.mpf(0)
    if loop == "trivial":
        x0 = mp.mpf(1) / 2
        pts = _trivial_loop_points(x0)
        v0 = basis_at(x0, Chart.ZERO).as_tuple()
        cont = continue_values(pts, v0)
        direct = _value_from_basis(h, as_mpc(x0), v0)
        looped = _value_from_basis(h, as_mpc(x0), cont)
        return abs(looped - direct)
    for k in range(n_base_points):
        angle = mp.mpf("0.4") + 2 * mp.pi * k / n_base_points
        pts, chart, A = _loop_setup(loop, angle)
        x0 = as_mpc(pts[0])
        v0 = basis_at(x0, chart).as_tuple()
        cont = continue_values(pts, v0)
        looped = _value_from_basis(h, x0, cont)
        expected = _value_from_basis(
            _transformed_handle(h, A), x0, v0
        )
        worst = max(worst, abs(looped - expected))
    return worst


# -- ladders ------------------------------------------------------------------------


def ladder_evaluator(h: SolutionHandle, target_mu):
    """Evaluator for the image of a handle under the parameter ladder."""
    steps = mu_ladder(h.mu, target_mu)
    return apply_ladder(steps, evaluator(h))
