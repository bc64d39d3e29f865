"""Precision plumbing: mpmath helpers, series tolerances, stencil derivatives.

All numerical evaluation in the package runs on mpmath complex numbers and
honours the ambient ``mpmath.mp`` context.  Functions that need guaranteed
headroom (residual checks, limit sequences) raise the working precision
locally with ``mpmath.workdps``.
"""

from __future__ import annotations

from fractions import Fraction

import mpmath as mp

# Series stop when |term| < SERIES_EPS_EXP-digits relative to the partial sum
# and a geometric tail bound certifies the remainder; tightened automatically
# when the ambient precision asks for more digits.
SERIES_EPS_EXP = 18
SERIES_TERM_CAP = 100_000


def series_tol() -> mp.mpf:
    """Relative truncation tolerance tied to the working precision."""
    return mp.mpf(10) ** (-max(SERIES_EPS_EXP, mp.mp.dps + 2))


def as_mpc(z) -> mp.mpc:
    """Coerce ints, Fractions, floats and complexes to mpmath complex."""
    if isinstance(z, mp.mpc):
        return z
    if isinstance(z, Fraction):
        return mp.mpc(mp.mpf(z.numerator) / z.denominator)
    if isinstance(z, complex):
        return mp.mpc(z.real, z.imag)
    return mp.mpc(z)


def as_mpf(r) -> mp.mpf:
    if isinstance(r, Fraction):
        return mp.mpf(r.numerator) / r.denominator
    return mp.mpf(r)


def nearest_int(v) -> int:
    return int(mp.nint(as_mpf(v) if not isinstance(v, mp.mpf) else v))


def derivative5(f, x, h):
    """First derivative by the 5-point central stencil, O(h^4)."""
    x = as_mpc(x)
    h = as_mpc(h)
    return (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h)


def second_derivative5(f, x, h):
    """Second derivative by the 5-point central stencil, O(h^4)."""
    x = as_mpc(x)
    h = as_mpc(h)
    return (
        -f(x - 2 * h)
        + 16 * f(x - h)
        - 30 * f(x)
        + 16 * f(x + h)
        - f(x + 2 * h)
    ) / (12 * h * h)


def jet_derivatives(f, x, h):
    """(y, y', y'') from stencils at steps h and h/2, Richardson-combined.

    Both stencils are O(h^4); the combination cancels the h^4 term.
    """
    x = as_mpc(x)
    h = as_mpc(h)
    y = f(x)
    d1a, d1b = derivative5(f, x, h), derivative5(f, x, h / 2)
    d2a, d2b = second_derivative5(f, x, h), second_derivative5(f, x, h / 2)
    yp = (16 * d1b - d1a) / 15
    ypp = (16 * d2b - d2a) / 15
    return y, yp, ypp


def singular_distance(x) -> mp.mpf:
    """Distance from x to the fixed equation singularities 0 and 1."""
    x = as_mpc(x)
    return min(abs(x), abs(x - 1))


def default_step(x) -> mp.mpf:
    """Stencil step: 1e-3 of the distance to the nearest singular point."""
    return mp.mpf("1e-3") * singular_distance(x)
