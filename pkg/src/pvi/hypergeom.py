"""The hypergeometric equation x(1-x)w'' + (1-2x)w' - w/4 = 0 and its bases.

Two solutions are evaluated by power series around 0:

    F(x) = sum_k a_k x^k,                    a_k = ((1/2)_k / k!)^2,
    g(x) = sum_k a_k x^k (ln x + d_k),       d_k = 2 psi(1/2+k) - 2 psi(k+1),

with d_0 = -4 ln 2 and the recurrence d_{k+1} = d_k + 4/(2k+1) - 2/(k+1);
the Euler constant cancels in d_k, so no digamma evaluations are needed.

Branch fixing: cuts on the real axis along (-inf, 0] and [1, +inf);
logarithms and square roots are principal throughout.  The three chart
bases are

    chart 0:    w1 = (pi/2) F(x),                 w2 = (-i/2) g(x)
    chart 1:    w1 = -(1/2) g(1-x),               w2 = (i pi/2) F(1-x)
    chart inf:  w1 = (i g(1/x) + pi F(1/x)) / (2 sqrt(x)),
                w2 = (-i/2) g(1/x) / sqrt(x)

On the overlap (0, 1) the chart-0 and chart-1 bases take identical values,
so a single global branch is continued through the cut plane.

Monodromy: the basis is continued numerically along polygonal loops by
ODE-Taylor re-expansion at each vertex; the loops gamma0 (around 0) and
gamma1 (around 1) are circles of radius 1/2 with 64 re-expansion centers.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import mpmath as mp

from .errors import DomainError, NonConvergence
from .numeric import SERIES_TERM_CAP, as_mpc, series_tol

#: Chart discs are used only up to radius 1 - DISC_MARGIN.
DISC_MARGIN = 0.05

#: Loop discretization: circle radius and number of re-expansion centers.
LOOP_RADIUS = 0.5
LOOP_STEPS = 64


class Chart(enum.Enum):
    ZERO = "zero"
    ONE = "one"
    INFINITY = "infinity"

    def local_coordinate(self, x):
        x = as_mpc(x)
        if self is Chart.ZERO:
            return x
        if self is Chart.ONE:
            return 1 - x
        return 1 / x

    def disc_margin(self, x) -> mp.mpf:
        """How far inside the chart's unit disc x sits (negative: outside)."""
        return 1 - abs(self.local_coordinate(x))

    def contains(self, x) -> bool:
        return self.disc_margin(x) > DISC_MARGIN


def best_chart(x) -> Chart:
    """Chart whose disc contains x with the largest margin.

    Ties break in the fixed order ZERO, ONE, INFINITY.
    """
    x = as_mpc(x)
    charts = (Chart.ZERO, Chart.ONE, Chart.INFINITY)
    margins = [c.disc_margin(x) for c in charts]
    best = max(margins)
    if best <= DISC_MARGIN:
        raise DomainError(f"x={x} lies in no chart disc (margin {DISC_MARGIN})")
    return charts[margins.index(best)]


def _check_disc(x, what: str):
    x = as_mpc(x)
    if abs(x) >= 1 - DISC_MARGIN:
        raise DomainError(f"{what}: |argument| = {abs(x)} outside radius {1 - DISC_MARGIN}")
    return x


def eval_F(x) -> mp.mpc:
    """F(1/2,1/2,1; x) by direct summation inside |x| < 1 - margin."""
    x = _check_disc(x, "eval_F")
    tol = series_tol()
    s = mp.mpc(1)
    a = mp.mpf(1)
    xk = mp.mpc(1)
    ax = abs(x)
    for k in range(SERIES_TERM_CAP):
        a *= (k + mp.mpf(1) / 2) ** 2 / (k + 1) ** 2
        xk *= x
        t = a * xk
        s += t
        # consecutive-term ratio is below |x|, so a geometric tail bound holds
        if abs(t) * ax / (1 - ax) < tol * abs(s):
            return s
    raise NonConvergence("eval_F: term cap exceeded")


def eval_F_prime(x) -> mp.mpc:
    """Termwise-differentiated series for F'."""
    x = _check_disc(x, "eval_F_prime")
    tol = series_tol()
    a = mp.mpf(1) / 4  # a_1
    s = mp.mpc(a)
    xk = mp.mpc(1)
    ax = abs(x)
    for k in range(1, SERIES_TERM_CAP):
        a *= (k + mp.mpf(1) / 2) ** 2 / (k + 1) ** 2
        xk *= x
        t = (k + 1) * a * xk
        s += t
        if abs(t) * ax / (1 - ax) * 2 < tol * abs(s):
            return s
    raise NonConvergence("eval_F_prime: term cap exceeded")


def _g_series(x, differentiate: bool) -> mp.mpc:
    x = as_mpc(x)
    if x == 0:
        raise DomainError("g has a logarithmic singularity at 0")
    _check_disc(x, "eval_g")
    tol = series_tol()
    L = mp.log(x)
    a = mp.mpf(1)
    d = -4 * mp.log(2)
    ax = abs(x)
    scale = abs(L) + 6
    if differentiate:
        s = mp.mpc(1) / x  # k = 0 term of g': a_0 * x^{-1} * 1
    else:
        s = mp.mpc(L + d)
    xk = mp.mpc(1)
    for k in range(SERIES_TERM_CAP):
        a *= (k + mp.mpf(1) / 2) ** 2 / (k + 1) ** 2
        d += mp.mpf(4) / (2 * k + 1) - mp.mpf(2) / (k + 1)
        xk *= x
        if differentiate:
            t = a * xk / x * ((k + 1) * (L + d) + 1)
        else:
            t = a * xk * (L + d)
        s += t
        bound = abs(a * xk) * (scale + abs(d)) * (k + 2) * ax / (1 - ax)
        if bound < tol * abs(s) and abs(t) < tol * abs(s):
            return s
    raise NonConvergence("eval_g: term cap exceeded")


def eval_g(x) -> mp.mpc:
    """g(1/2,1/2,1; x): the logarithmic companion solution near 0."""
    return _g_series(x, differentiate=False)


def eval_g_prime(x) -> mp.mpc:
    """Termwise-differentiated series for g'."""
    return _g_series(x, differentiate=True)


@dataclass(frozen=True)
class BasisValue:
    """Values and x-derivatives of the chart basis (w1, w2) at a point."""

    omega1: mp.mpc
    omega2: mp.mpc
    omega1_prime: mp.mpc
    omega2_prime: mp.mpc
    chart: Chart
    x: mp.mpc

    def wronskian(self) -> mp.mpc:
        return self.omega1 * self.omega2_prime - self.omega2 * self.omega1_prime

    def as_tuple(self):
        return (self.omega1, self.omega2, self.omega1_prime, self.omega2_prime)


def basis_at(x, chart: Chart | None = None) -> BasisValue:
    """Branch basis (w1, w2, w1', w2') on the requested chart."""
    x = as_mpc(x)
    if chart is None:
        chart = best_chart(x)
    if not chart.contains(x):
        raise DomainError(f"x={x} outside the {chart.value} chart disc")
    if chart is Chart.ZERO:
        w1 = mp.pi / 2 * eval_F(x)
        w2 = -mp.mpc(0, 1) / 2 * eval_g(x)
        w1p = mp.pi / 2 * eval_F_prime(x)
        w2p = -mp.mpc(0, 1) / 2 * eval_g_prime(x)
    elif chart is Chart.ONE:
        z = 1 - x
        w1 = -eval_g(z) / 2
        w2 = mp.mpc(0, 1) * mp.pi / 2 * eval_F(z)
        # chain rule: d/dx f(1-x) = -f'(1-x)
        w1p = eval_g_prime(z) / 2
        w2p = -mp.mpc(0, 1) * mp.pi / 2 * eval_F_prime(z)
    else:
        w = 1 / x
        root = mp.sqrt(x)  # principal branch, cut along the negative reals
        s = 1 / root
        dsdx = -s / (2 * x)
        dwdx = -1 / x ** 2
        gv, gpv = eval_g(w), eval_g_prime(w)
        Fv, Fpv = eval_F(w), eval_F_prime(w)
        i = mp.mpc(0, 1)
        w1 = s / 2 * (i * gv + mp.pi * Fv)
        w2 = -i / 2 * s * gv
        w1p = dsdx / 2 * (i * gv + mp.pi * Fv) + s / 2 * (i * gpv + mp.pi * Fpv) * dwdx
        w2p = -i / 2 * (dsdx * gv + s * gpv * dwdx)
    return BasisValue(w1, w2, w1p, w2p, chart, x)


# ---------------------------------------------------------------------------
# numerical continuation


def ode_taylor_step(x0, w, wp, h):
    """Advance a solution of the ODE from x0 to x0+h by Taylor re-expansion.

    The recurrence for the local Taylor coefficients c_n about an ordinary
    point x0 follows from x(1-x)w'' + (1-2x)w' - w/4 = 0:

        c_{n+2} = [ -(1-2x0)(n+1)^2 c_{n+1} + (n+1/2)^2 c_n ]
                  / ( x0(1-x0)(n+2)(n+1) )

    h must stay well inside the disc of radius min(|x0|, |x0-1|).
    """
    x0 = as_mpc(x0)
    h = as_mpc(h)
    A0 = x0 * (1 - x0)
    if A0 == 0:
        raise DomainError("cannot expand at a singular point of the ODE")
    radius = min(abs(x0), abs(x0 - 1))
    rho = abs(h) / radius
    if rho > 0.5:
        raise NonConvergence(f"step ratio {rho} too large for safe re-expansion")
    A1 = 1 - 2 * x0
    tol = series_tol()
    c = [as_mpc(w), as_mpc(wp)]
    n = 0
    while True:
        cn2 = (-(A1 * (n + 1) ** 2) * c[n + 1] + (n + mp.mpf(1) / 2) ** 2 * c[n]) / (
            A0 * (n + 2) * (n + 1)
        )
        c.append(cn2)
        n += 1
        if n > 8 and abs(cn2) * abs(h) ** (n + 1) < tol * (abs(c[0]) + abs(c[1]) + 1):
            break
        if n > 400:
            raise NonConvergence("ode_taylor_step: local series did not settle")
    val = mp.mpc(0)
    for cn in reversed(c):
        val = val * h + cn
    der = mp.mpc(0)
    for k in range(len(c) - 1, 0, -1):
        der = der * h + k * c[k]
    return val, der


def continue_values(points, values):
    """Continue (w1, w2, w1', w2') along a polygonal path of points."""
    w1, w2, w1p, w2p = (as_mpc(v) for v in values)
    for i in range(len(points) - 1):
        h = as_mpc(points[i + 1]) - as_mpc(points[i])
        w1, w1p = ode_taylor_step(points[i], w1, w1p, h)
        w2, w2p = ode_taylor_step(points[i], w2, w2p, h)
    return w1, w2, w1p, w2p


def loop_points(loop: str, base_angle: float = 0.0, steps: int = LOOP_STEPS):
    """Closed polygonal discretization of gamma0 or gamma1.

    Both loops are counterclockwise circles of radius 1/2, around 0 and 1
    respectively; base_angle rotates the starting point along the circle.
    Only the homotopy class matters.
    """
    r = mp.mpf(LOOP_RADIUS)
    if loop == "gamma0":
        return [
            r * mp.exp(mp.mpc(0, 1) * (base_angle + 2 * mp.pi * k / steps))
            for k in range(steps + 1)
        ]
    if loop == "gamma1":
        # starts at 1 - r e^{i base_angle}; x - 1 winds counterclockwise
        return [
            1 - r * mp.exp(mp.mpc(0, 1) * (base_angle + 2 * mp.pi * k / steps))
            for k in range(steps + 1)
        ]
    raise DomainError(f"unknown loop {loop!r}")


def parse_loop_word(word) -> list[str]:
    """Split a composite loop token into elementary loops, rightmost first.

    Loops compose like functions: in "gamma0.gamma1" the loop gamma1 is
    traversed first, so the returned matrix is M(gamma1-part applied after
    gamma0-part) = M1 M0 for that example.
    """
    if isinstance(word, (list, tuple)):
        names = list(word)
    else:
        names = str(word).replace("*", ".").split(".")
    names = [n.strip() for n in names if n.strip()]
    for n in names:
        if n not in ("gamma0", "gamma1"):
            raise DomainError(f"unknown loop {n!r}")
    return list(reversed(names))


_BASE_POINT = mp.mpf(1) / 2  # on both circles: |x| = |1-x| = 1/2


def continue_basis(loop) -> list[list[mp.mpc]]:
    """Continuation matrix of the basis along a loop (or composite word).

    Returns M with (w1~, w2~)^T = M (w1, w2)^T, where ~ marks the values
    after continuation around the loop based at x = 1/2.  For the two
    elementary loops the entries are near integers.
    """
    names = parse_loop_word(loop)
    v0 = basis_at(_BASE_POINT, Chart.ZERO).as_tuple()
    vals = v0
    for name in names:
        vals = continue_values(loop_points(name), vals)
    V = mp.matrix([[v0[0], v0[1]], [v0[2], v0[3]]])
    row1 = mp.lu_solve(V, mp.matrix([vals[0], vals[2]]))
    row2 = mp.lu_solve(V, mp.matrix([vals[1], vals[3]]))
    return [[row1[0], row1[1]], [row2[0], row2[1]]]


def rounded_matrix(M) -> list[list[int]]:
    """Entrywise nearest-integer copy of a continuation matrix."""
    return [[int(mp.nint(mp.re(e))) for e in row] for row in M]
