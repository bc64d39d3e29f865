"""Birational symmetry between PVI equations with opposite parameter sign.

The transformation acts on a solution jet (x, y, y') of PVI with parameter
mu and produces a solution value of PVI with parameter -mu (the same
equation as parameter mu+1):

    y~ = y (p0 y'^2 + p1 y' + p2)^2 / (q0 y'^4 + q1 y'^3 + q2 y'^2 + q3 y' + q4)

The denominator Q is the obstruction: at mu = -1/2 it vanishes identically
exactly on the one-parameter transcendental family, whose branch slopes are
the four explicit roots of Q as a quartic in y'.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp

from .errors import DenominatorZero, DomainError, NearSingular, UnreachableTarget
from .numeric import as_mpc, default_step, jet_derivatives

#: |denominator| below this (relative, scale-aware) trips DenominatorZero.
DEN_ZERO_TOL = mp.mpf("1e-10")

#: Jet values closer than this to the singular set {0, 1, x} are rejected.
SINGULAR_TOL = mp.mpf("1e-6")


def _require_half_integer(mu) -> Fraction:
    mu = Fraction(mu)
    if (2 * mu).denominator != 1:
        raise DomainError(f"2*mu must be an integer, got mu={mu}")
    return mu


@dataclass(frozen=True)
class JetPoint:
    """A first-order solution jet (x, y, y') of the equation with index mu."""

    x: mp.mpc
    y: mp.mpc
    yprime: mp.mpc
    mu: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", as_mpc(self.x))
        object.__setattr__(self, "y", as_mpc(self.y))
        object.__setattr__(self, "yprime", as_mpc(self.yprime))
        object.__setattr__(self, "mu", _require_half_integer(self.mu))
        x, y = self.x, self.y
        if min(abs(x), abs(x - 1)) < SINGULAR_TOL:
            raise DomainError(f"x={x} too close to an equation singularity")
        if min(abs(y), abs(y - 1), abs(y - x)) < SINGULAR_TOL * (1 + abs(y)):
            raise NearSingular(f"y={y} within tolerance of the singular values 0, 1, x")


# -- polynomial coefficients (in y'), straight from the closed forms --------


def sym_p0(x, y, mu):
    return x ** 2 * (x - 1) ** 2


def sym_p1(x, y, mu):
    return 2 * x * (x - 1) * (y - 1) * (2 * mu * (y - x) - y)


def sym_p2(x, y, mu):
    return y * (y - 1) * (
        y * (y - 1) - 4 * mu * (y - 1) * (y - x) + 4 * mu ** 2 * (y - x) * (y - x - 1)
    )


def sym_q0(x, y, mu):
    return x ** 4 * (x - 1) ** 4


def sym_q1(x, y, mu):
    return -4 * x ** 3 * (x - 1) ** 3 * y * (y - 1)


def sym_q2(x, y, mu):
    return 2 * x ** 2 * (x - 1) ** 2 * y * (y - 1) * (
        3 * y * (y - 1) + 4 * mu ** 2 * (y - x) * (1 + x - 3 * y)
    )


def sym_q3(x, y, mu):
    return 4 * x * (x - 1) * y ** 2 * (y - 1) ** 2 * (
        -y * (y - 1) - 16 * mu ** 3 * (y - x) ** 2 + 4 * mu ** 2 * (y - x) * (3 * y - x - 1)
    )


def sym_q4(x, y, mu):
    return y ** 2 * (y - 1) ** 2 * (
        y ** 2 * (y - 1) ** 2
        + 64 * mu ** 3 * y * (y - 1) * (y - x) ** 2
        - 8 * mu ** 2 * y * (y - 1) * (y - x) * (3 * y - x - 1)
        + 16 * mu ** 4 * (y - x) ** 2 * ((x - 1) ** 2 + y * (2 + 2 * x - 3 * y))
    )


def _mu_value(mu: Fraction) -> mp.mpf:
    return mp.mpf(mu.numerator) / mu.denominator


def q_denominator_terms(j: JetPoint):
    """The five terms q_i y'^{4-i} of the quartic denominator."""
    x, y, yp, mu = j.x, j.y, j.yprime, _mu_value(j.mu)
    return (
        sym_q0(x, y, mu) * yp ** 4,
        sym_q1(x, y, mu) * yp ** 3,
        sym_q2(x, y, mu) * yp ** 2,
        sym_q3(x, y, mu) * yp,
        sym_q4(x, y, mu),
    )


def q_denominator(j: JetPoint) -> mp.mpc:
    """Value of the quartic-in-y' denominator Q at the jet."""
    return sum(q_denominator_terms(j))


def q_denominator_relative(j: JetPoint) -> mp.mpf:
    """|Q| normalized by the sum of its term magnitudes (scale-free)."""
    terms = q_denominator_terms(j)
    scale = sum(abs(t) for t in terms)
    if scale == 0:
        return mp.mpf(0)
    return abs(sum(terms)) / scale


def s1_numerator(j: JetPoint) -> mp.mpc:
    x, y, yp, mu = j.x, j.y, j.yprime, _mu_value(j.mu)
    return y * (sym_p0(x, y, mu) * yp ** 2 + sym_p1(x, y, mu) * yp + sym_p2(x, y, mu)) ** 2


def s1_transform(j: JetPoint) -> mp.mpc:
    """Image value y~ of the jet under the symmetry; the image solves the
    equation with parameter -mu (equivalently mu+1)."""
    num = s1_numerator(j)
    den = q_denominator(j)
    if abs(den) < DEN_ZERO_TOL * (1 + abs(num)):
        raise DenominatorZero(f"denominator {den} vanished at x={j.x}")
    return num / den


# -- the obstruction factors -------------------------------------------------


def obstruction_q1(x, y, yp):
    x, y, yp = as_mpc(x), as_mpc(y), as_mpc(yp)
    return y - y ** 2 - x * yp ** 2 + x ** 2 * yp ** 2


def obstruction_q2(x, y, yp):
    x, y, yp = as_mpc(x), as_mpc(y), as_mpc(yp)
    return y ** 2 - y - 2 * x * yp * (y - 1) - x * yp ** 2 + x ** 2 * yp ** 2


def obstruction_q3(x, y, yp):
    x, y, yp = as_mpc(x), as_mpc(y), as_mpc(yp)
    return y ** 2 - y - 2 * y * yp * (x - 1) - x * yp ** 2 + x ** 2 * yp ** 2


def q_branch_roots(x, y):
    """The four slopes y' with Q(y', y, x) = 0 at mu = -1/2.

    Principal square roots; returned in the fixed sign order
    (-,+), (-,-), (+,+), (+,-) on (sqrt(y(y-1))(y-x), outer radical).
    """
    x, y = as_mpc(x), as_mpc(y)
    if x == 0 or x == 1:
        raise DomainError("x must avoid 0 and 1")
    A = y * (y - 1)
    sA = mp.sqrt(A)
    C = mp.sqrt(A * (y - x))
    tp = mp.sqrt(2 * y - 1 + 2 * sA)
    tm = mp.sqrt(2 * y - 1 - 2 * sA)
    d = x * (x - 1)
    return (
        (A - sA * (y - x) + C * tp) / d,
        (A - sA * (y - x) - C * tp) / d,
        (A + sA * (y - x) + C * tm) / d,
        (A + sA * (y - x) - C * tm) / d,
    )


# -- elementary symmetries of the (x, y) plane -------------------------------


def elementary_symmetry(which: str, x, y):
    """The substitutions that permute the fixed singular points.

    T01:   (x, y) -> (1-x, 1-y)           swaps 0 and 1
    T0inf: (x, y) -> (1/x, y/x)           swaps 0 and infinity
    T1inf: (x, y) -> (1/(1-x), (1-y)/(1-x))   T0inf after T01
    I:     identity
    """
    x, y = as_mpc(x), as_mpc(y)
    if which == "I":
        return x, y
    if which == "T01":
        return 1 - x, 1 - y
    if which == "T0inf":
        if x == 0:
            raise DomainError("T0inf undefined at x = 0")
        return 1 / x, y / x
    if which == "T1inf":
        if x == 1:
            raise DomainError("T1inf undefined at x = 1")
        return 1 / (1 - x), (1 - y) / (1 - x)
    raise DomainError(f"unknown symmetry tag {which!r}")


def apply_symmetries(tags, x, y):
    """Apply a sequence of elementary symmetries, leftmost first."""
    for tag in tags:
        x, y = elementary_symmetry(tag, x, y)
    return x, y


# -- ladder between equation parameters --------------------------------------
#
# Equations with indices mu and 1-mu coincide, so each equation class is
# k = |2 mu - 1| (even for half-integer mu, odd for integer mu).  One
# application of the symmetry maps class k to class k+2 or k-2 depending on
# which of the two labels {(1+k)/2, (1-k)/2} it is applied at.  Steps:
#
#   ("relabel", mu_from, mu_to)   free switch between labels of one class
#   ("s1", mu_applied)            one application at label mu_applied,
#                                 producing the label -mu_applied


def _class_index(mu: Fraction) -> int:
    k = abs(2 * mu - 1)
    assert k.denominator == 1
    return int(k)


def mu_ladder(start_mu, target_mu) -> list[tuple]:
    """Transform sequence turning solutions of one equation into the other.

    Half-integer indices are reachable from half-integer ones, integer from
    integer; mixing the two raises UnreachableTarget.
    """
    start = _require_half_integer(start_mu)
    target = _require_half_integer(target_mu)
    k0, k1 = _class_index(start), _class_index(target)
    if k0 % 2 != k1 % 2:
        raise UnreachableTarget(
            f"mu={start} and mu={target} live on different ladders"
        )
    steps: list[tuple] = []
    mu = start
    while _class_index(mu) != k1:
        k = _class_index(mu)
        if k < k1:
            apply_at = Fraction(1 + k, 2)  # moves to class k+2
        else:
            apply_at = Fraction(1 - k, 2)  # moves to class k-2
        if mu != apply_at:
            steps.append(("relabel", mu, apply_at))
            mu = apply_at
        steps.append(("s1", mu))
        mu = -mu
    if mu != target:
        steps.append(("relabel", mu, target))
        mu = target
    return steps


def apply_ladder(steps, eval_y, step_scale=None):
    """Compose an evaluator x -> y(x) with a ladder of transform steps.

    Each "s1" step wraps the current evaluator: the new value at x is the
    symmetry image of the jet (x, y(x), y'(x)), with y' obtained from the
    Richardson stencil at the default step.  "relabel" steps change only
    the equation label, never the function.
    """
    f = eval_y
    for step in steps:
        if step[0] == "relabel":
            continue
        if step[0] != "s1":
            raise DomainError(f"unknown ladder step {step!r}")
        mu_applied = step[1]

        def f(x, _inner=f, _mu=mu_applied):
            x = as_mpc(x)
            h = default_step(x) if step_scale is None else as_mpc(step_scale)
            y, yp, _ = jet_derivatives(_inner, x, h)
            return s1_transform(JetPoint(x, y, yp, _mu))

    return f
