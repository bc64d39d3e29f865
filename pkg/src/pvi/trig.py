"""Exact arithmetic in the ring Q[cos(pi r) : r rational].

Elements are finite sums  const + sum_j c_j cos(pi r_j)  with Fraction
coefficients.  Angles are canonicalized into (0, 1/2] by periodicity,
evenness and the flip cos(pi(1-r)) = -cos(pi r); the rational values
cos(0) = 1, cos(pi/3) = 1/2, cos(pi/2) = 0 (and their flips) fold into the
constant, so every stored angle has an irrational cosine.  Products reduce
by cos a cos b = (cos(a+b) + cos(a-b))/2, which keeps the ring closed.

Equality is canonical-form equality.  That is exact for the combinations
arising from braid words on rational-angle triples (cancellations match
term by term); it is not a general algebraic-relation decision procedure.
"""

from __future__ import annotations

from fractions import Fraction

import mpmath as mp

_HALF = Fraction(1, 2)
_THIRD = Fraction(1, 3)

#: canonical angles in [0, 1/2] with rational cosine
_RATIONAL_COS = {Fraction(0): Fraction(1), _THIRD: _HALF, _HALF: Fraction(0)}


def _canonical(angle: Fraction):
    """Reduce an angle to ((0,1/2] representative, sign) or a rational value.

    Returns ("const", value) when cos(pi*angle) is rational, otherwise
    ("cos", r, sign) with cos(pi*angle) = sign * cos(pi*r), r in (0, 1/2).
    """
    a = Fraction(angle) % 2
    if a > 1:
        a = 2 - a
    sign = 1
    if a > _HALF:
        a = 1 - a
        sign = -1
    if a in _RATIONAL_COS:
        return ("const", sign * _RATIONAL_COS[a])
    return ("cos", a, sign)


class CosSum:
    """Immutable exact element const + sum c_j cos(pi r_j)."""

    __slots__ = ("const", "terms")

    def __init__(self, const=0, terms=None):
        acc: dict[Fraction, Fraction] = {}
        c = Fraction(const)
        if terms:
            for angle, coeff in dict(terms).items():
                coeff = Fraction(coeff)
                if coeff == 0:
                    continue
                kind = _canonical(angle)
                if kind[0] == "const":
                    c += coeff * kind[1]
                else:
                    _, r, sign = kind
                    acc[r] = acc.get(r, Fraction(0)) + sign * coeff
        self.const = c
        self.terms = tuple(sorted((r, k) for r, k in acc.items() if k != 0))

    # -- constructors --------------------------------------------------------

    @classmethod
    def rational(cls, value) -> "CosSum":
        return cls(Fraction(value))

    @classmethod
    def cos_pi(cls, angle, coeff=1) -> "CosSum":
        """coeff * cos(pi * angle) as a ring element."""
        return cls(0, {Fraction(angle): Fraction(coeff)})

    # -- ring structure --------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, CosSum):
            return other
        if isinstance(other, (int, Fraction)):
            return CosSum(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        terms = {r: k for r, k in self.terms}
        for r, k in o.terms:
            terms[r] = terms.get(r, Fraction(0)) + k
        return CosSum(self.const + o.const, terms)

    __radd__ = __add__

    def __neg__(self):
        return CosSum(-self.const, {r: -k for r, k in self.terms})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        terms: dict[Fraction, Fraction] = {}

        def add(angle, coeff):
            terms[angle] = terms.get(angle, Fraction(0)) + coeff

        const = self.const * o.const
        for r, k in self.terms:
            add(r, k * o.const)
        for r, k in o.terms:
            add(r, k * self.const)
        for r1, k1 in self.terms:
            for r2, k2 in o.terms:
                half = k1 * k2 / 2
                add(r1 + r2, half)
                add(r1 - r2, half)
        return CosSum(const, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers leave the ring")
        out = CosSum(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- predicates and conversions -------------------------------------------

    def is_rational(self) -> bool:
        return not self.terms

    def is_zero(self) -> bool:
        return self.const == 0 and not self.terms

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.const

    def single_cos_angle(self, coeff) -> Fraction | None:
        """If self == coeff * cos(pi r) for one canonical r, return r."""
        if self.const != 0 or len(self.terms) != 1:
            return None
        r, k = self.terms[0]
        if k != Fraction(coeff):
            return None
        return r

    def evalf(self) -> mp.mpf:
        v = mp.mpf(self.const.numerator) / self.const.denominator
        for r, k in self.terms:
            v += (mp.mpf(k.numerator) / k.denominator) * mp.cos(
                mp.pi * mp.mpf(r.numerator) / r.denominator
            )
        return v

    # -- bookkeeping -----------------------------------------------------------

    def key(self):
        """Hashable canonical key (also used for deterministic ordering)."""
        return (self.const, self.terms)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.key() == o.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        if self.is_rational():
            return f"CosSum({self.const})"
        parts = [] if self.const == 0 else [str(self.const)]
        parts += [f"{k}*cos(pi*{r})" for r, k in self.terms]
        return "CosSum(" + " + ".join(parts) + ")"


def minus_two_cos_pi(r) -> CosSum:
    """-2 cos(pi r): the coordinate value attached to a triangle angle."""
    return CosSum.cos_pi(Fraction(r), -2)


def angle_of_coordinate(v: CosSum) -> Fraction | None:
    """Rational r in [0, 1] with v = -2 cos(pi r), if one exists."""
    if isinstance(v, CosSum) and v.is_rational():
        table = {
            Fraction(-2): Fraction(0),
            Fraction(-1): _THIRD,
            Fraction(0): _HALF,
            Fraction(1): Fraction(2, 3),
            Fraction(2): Fraction(1),
        }
        return table.get(v.const)
    if isinstance(v, CosSum):
        r = v.single_cos_angle(-2)
        if r is not None:
            return r
        r = v.single_cos_angle(2)
        if r is not None:
            return 1 - r
    return None
