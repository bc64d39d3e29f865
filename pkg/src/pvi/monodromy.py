"""Exact combinatorics of monodromy data.

Triples (x1, x2, x3) parameterize conjugation classes of unipotent
monodromy matrix triples through Tr(M_i M_j) = 2 - x_k^2, subject to

    x1^2 + x2^2 + x3^2 - x1 x2 x3 = 4 sin^2(pi mu).

Finite-orbit triples have x_i = -2 cos(pi r_i) with rational angles r_i;
for half-integer mu the constraint value is 4 and the angles come from
flat triangles r1 + r2 + r3 = 1.  The braid group acts by

    b1: (x1,x2,x3) -> (-x1, x3 - x1 x2, x2)
    b2: (x1,x2,x3) -> (x3, -x2, x1 - x2 x3)

and, on angle representatives of flat triples,

    b1: (r1,r2,r3) -> (|1-r1|, |r1-r2|, r2)
    b2: (r1,r2,r3) -> (r3, |1-r2|, |r3-r2|).

Triples are equivalent when they differ by a sign change of exactly two
coordinates.  All of this runs in exact rational-cosine arithmetic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import mpmath as mp

from .errors import DegenerateDenominator, DomainError, PoleError
from .numeric import as_mpc, as_mpf
from .trig import CosSum, angle_of_coordinate, minus_two_cos_pi

ORBIT_CAP_DEFAULT = 10 ** 6

BRAID_GENERATORS = ("b1", "b2", "b1inv", "b2inv")


@dataclass(frozen=True)
class TriangleAngles:
    """Exact rational angles (r1, r2, r3), each in [0, 1]."""

    r1: Fraction
    r2: Fraction
    r3: Fraction

    def __post_init__(self):
        for name in ("r1", "r2", "r3"):
            r = Fraction(getattr(self, name))
            if not 0 <= r <= 1:
                raise DomainError(f"angle {name}={r} outside [0, 1]")
            object.__setattr__(self, name, r)

    def as_tuple(self):
        return (self.r1, self.r2, self.r3)

    def is_flat(self) -> bool:
        return self.r1 + self.r2 + self.r3 == 1

    def common_denominator(self) -> int:
        d = 1
        for r in self.as_tuple():
            d = d * r.denominator // gcd(d, r.denominator)
        return d


@dataclass(frozen=True)
class MonodromyTriple:
    """Coordinates (x1, x2, x3); exact CosSum entries when available."""

    x1: object
    x2: object
    x3: object

    @classmethod
    def from_angles(cls, t: TriangleAngles) -> "MonodromyTriple":
        return cls(*(minus_two_cos_pi(r) for r in t.as_tuple()))

    def is_exact(self) -> bool:
        return all(isinstance(v, CosSum) for v in self.as_tuple())

    def as_tuple(self):
        return (self.x1, self.x2, self.x3)

    def constraint(self):
        """x1^2 + x2^2 + x3^2 - x1 x2 x3 (equals 4 sin^2 pi mu)."""
        x1, x2, x3 = self.as_tuple()
        return x1 * x1 + x2 * x2 + x3 * x3 - x1 * x2 * x3

    def mu_class(self) -> str:
        c = self.constraint()
        if isinstance(c, CosSum):
            if c == CosSum(4):
                return "half-integer"
            if c == CosSum(0):
                return "integer"
            return "other"
        c = as_mpc(c)
        if abs(c - 4) < mp.mpf("1e-9"):
            return "half-integer"
        if abs(c) < mp.mpf("1e-9"):
            return "integer"
        return "other"

    def is_admissible(self) -> bool:
        """At most one coordinate equal to zero."""
        zeros = 0
        for v in self.as_tuple():
            if isinstance(v, CosSum):
                zeros += v.is_zero()
            else:
                zeros += abs(as_mpc(v)) < mp.mpf("1e-12")
        return zeros <= 1

    def angles(self) -> TriangleAngles | None:
        """Angle representative when every coordinate is -2cos(pi r)."""
        rs = [angle_of_coordinate(v) if isinstance(v, CosSum) else None for v in self.as_tuple()]
        if any(r is None for r in rs):
            return None
        return TriangleAngles(*rs)

    def numeric(self):
        return tuple(
            complex(v.evalf()) if isinstance(v, CosSum) else complex(as_mpc(v))
            for v in self.as_tuple()
        )


def triple_from_angles(t: TriangleAngles) -> MonodromyTriple:
    """Exact coordinates x_i = -2 cos(pi r_i)."""
    return MonodromyTriple.from_angles(t)


# -- braid action -------------------------------------------------------------


def braid_act(generator: str, t: MonodromyTriple) -> MonodromyTriple:
    """Apply a braid generator (or inverse) to a coordinate triple.

    Exact on CosSum coordinates; the same formulas run on numeric entries.
    """
    x1, x2, x3 = t.as_tuple()
    if generator == "b1":
        return MonodromyTriple(-x1, x3 - x1 * x2, x2)
    if generator == "b2":
        return MonodromyTriple(x3, -x2, x1 - x2 * x3)
    if generator == "b1inv":
        return MonodromyTriple(-x1, x3, x2 - x1 * x3)
    if generator == "b2inv":
        return MonodromyTriple(x3 - x1 * x2, -x2, x1)
    raise DomainError(f"unknown braid generator {generator!r}")


def braid_act_angles(generator: str, t: TriangleAngles) -> TriangleAngles:
    """Exact rational action on angle representatives.

    The direct generators use the absolute-value formulas; the inverses go
    through the coordinate action and convert back (possible throughout
    the orbit of a flat triangle).
    """
    r1, r2, r3 = t.as_tuple()
    if generator == "b1":
        return TriangleAngles(abs(1 - r1), abs(r1 - r2), r2)
    if generator == "b2":
        return TriangleAngles(r3, abs(1 - r2), abs(r3 - r2))
    if generator in ("b1inv", "b2inv"):
        image = braid_act(generator, triple_from_angles(t))
        angles = image.angles()
        if angles is None:
            raise DomainError(
                f"{generator} image of {t} has no pure-cosine representative"
            )
        return angles
    raise DomainError(f"unknown braid generator {generator!r}")


def apply_braid_word(word, t):
    """Apply generators left to right to a triple or an angle triple."""
    for gen in word:
        t = braid_act_angles(gen, t) if isinstance(t, TriangleAngles) else braid_act(gen, t)
    return t


# -- equivalence and orbits ----------------------------------------------------

_SIGN_PATTERNS = ((1, 1, 1), (-1, -1, 1), (-1, 1, -1), (1, -1, -1))


def _coordinate_key(v) -> tuple:
    if isinstance(v, CosSum):
        return (0, v.key())
    v = as_mpc(v)
    return (1, (mp.nstr(mp.re(v), 12), mp.nstr(mp.im(v), 12)))


def _triple_key(t: MonodromyTriple) -> tuple:
    return tuple(_coordinate_key(v) for v in t.as_tuple())


def equivalent_triples(t: MonodromyTriple, up_to_permutation: bool = False):
    """All triples identified with t (two-sign flips, optional permutations)."""
    perms = itertools.permutations(range(3)) if up_to_permutation else ((0, 1, 2),)
    coords = t.as_tuple()
    for perm in perms:
        arranged = tuple(coords[i] for i in perm)
        for s in _SIGN_PATTERNS:
            yield MonodromyTriple(*(si * v for si, v in zip(s, arranged)))


def canonical_triple(t: MonodromyTriple, up_to_permutation: bool = False) -> MonodromyTriple:
    """Deterministic class representative: smallest canonical key."""
    best = None
    best_key = None
    for cand in equivalent_triples(t, up_to_permutation):
        key = _triple_key(cand)
        if best_key is None or key < best_key:
            best, best_key = cand, key
    return best


@dataclass(frozen=True)
class OrbitResult:
    classes: tuple
    finite: bool
    cap_exceeded: bool

    @property
    def size(self) -> int:
        return len(self.classes)


def orbit(start, cap: int = ORBIT_CAP_DEFAULT, up_to_permutation: bool = False) -> OrbitResult:
    """BFS orbit of a triple under the braid generators, modulo equivalence.

    Accepts a TriangleAngles or a MonodromyTriple.  Integer-mu data have
    infinite orbits; the cap turns non-termination into a flagged result.
    """
    if isinstance(start, TriangleAngles):
        start = triple_from_angles(start)
    if not start.is_admissible():
        raise DomainError("inadmissible triple: more than one zero coordinate")
    seen = {}
    first = canonical_triple(start, up_to_permutation)
    seen[_triple_key(first)] = first
    frontier = [first]
    while frontier:
        nxt = []
        for t in frontier:
            for gen in BRAID_GENERATORS:
                image = canonical_triple(braid_act(gen, t), up_to_permutation)
                key = _triple_key(image)
                if key not in seen:
                    if len(seen) >= cap:
                        classes = tuple(sorted(seen.values(), key=_triple_key))
                        return OrbitResult(classes, finite=False, cap_exceeded=True)
                    seen[key] = image
                    nxt.append(image)
        frontier = nxt
    classes = tuple(sorted(seen.values(), key=_triple_key))
    return OrbitResult(classes, finite=True, cap_exceeded=False)


# -- dictionaries between parameters and angles ---------------------------------


def angles_from_nu(nu1: Fraction, nu2: Fraction) -> TriangleAngles:
    """Flat-triangle representative of rational parameters in [0, 2).

    The two rows cover nu1 > nu2 and nu1 < nu2; the diagonal nu1 = nu2 has
    no row and is rejected.
    """
    nu1, nu2 = Fraction(nu1), Fraction(nu2)
    for nu in (nu1, nu2):
        if not 0 <= nu < 2:
            raise DomainError(f"parameter {nu} outside [0, 2)")
    if nu1 > nu2:
        return TriangleAngles(nu2 / 2, 1 - nu1 / 2, (nu1 - nu2) / 2)
    if nu1 < nu2:
        return TriangleAngles(1 - nu2 / 2, nu1 / 2, (nu2 - nu1) / 2)
    raise DomainError("nu1 = nu2 is not covered by the angle dictionary")


def nu_from_angles(t: TriangleAngles) -> tuple[Fraction, Fraction]:
    """Inverse dictionary nu1 = 2 - 2 r2, nu2 = 2 r1.

    Round-trips with angles_from_nu on its nu1 > nu2 branch.
    """
    return 2 - 2 * t.r2, 2 * t.r1


# -- matrix realizations ---------------------------------------------------------


@dataclass(frozen=True)
class MatrixTriple:
    M1: mp.matrix
    M2: mp.matrix
    M3: mp.matrix

    def as_tuple(self):
        return (self.M1, self.M2, self.M3)

    def minf(self) -> mp.matrix:
        """Matrix at infinity from the product relation Minf M3 M2 M1 = 1."""
        return (self.M3 * self.M2 * self.M1) ** -1


def picard_monodromy_matrices(nu1, nu2) -> MatrixTriple:
    """Unipotent-class matrix triple attached to elliptic-family parameters.

    Entries are built from c = cos(pi nu2/2), cos(pi nu1/2) and
    cos(pi (nu1-nu2)/2); c = 0 makes the third matrix singular and is
    rejected.
    """
    nu1 = as_mpc(nu1) if not isinstance(nu1, Fraction) else nu1
    nu2 = as_mpc(nu2) if not isinstance(nu2, Fraction) else nu2

    def cospi_half(v):
        if isinstance(v, Fraction):
            return mp.cospi(mp.mpf(v.numerator) / (2 * v.denominator))
        return mp.cos(mp.pi * v / 2)

    c2 = cospi_half(nu2)
    if abs(c2) < mp.mpf("1e-12"):
        raise DegenerateDenominator("cos(pi nu2 / 2) = 0")
    c1 = cospi_half(nu1)
    c12 = cospi_half(nu1 - nu2)
    one = mp.mpf(1)
    M1 = mp.matrix([[one, -2 * c2], [0, one]])
    M2 = mp.matrix([[one, 0], [2 * c2, one]])
    M3 = mp.matrix(
        [
            [1 + 2 * c1 * c12 / c2, -2 * c1 ** 2 / c2],
            [2 * c12 ** 2 / c2, 1 - 2 * c1 * c12 / c2],
        ]
    )
    return MatrixTriple(M1, M2, M3)


def commuting_family(a) -> MatrixTriple:
    """The one-parameter commuting (upper-triangular) matrix family."""
    a = as_mpc(a)
    ipi = mp.mpc(0, 1) * mp.pi
    one = mp.mpf(1)
    return MatrixTriple(
        mp.matrix([[one, ipi * a], [0, one]]),
        mp.matrix([[one, ipi * (1 - a)], [0, one]]),
        mp.matrix([[one, ipi], [0, one]]),
    )


def rational_solution_eval(a, x) -> mp.mpc:
    """y = a x / (1 - (1-a) x), the rational solution family at mu = 1."""
    a = as_mpc(a)
    x = as_mpc(x)
    if a == 0:
        raise DomainError("a = 0 is excluded")
    den = 1 - (1 - a) * x
    if abs(den) < mp.mpf("1e-12") * (1 + abs(x)):
        raise PoleError(f"pole of the rational solution at x={x}")
    return a * x / den


# -- reflection-group packaging ---------------------------------------------------


def gram_matrix(t: MonodromyTriple):
    """Gram matrix of the three mirror normals: diag 2 with x1, x2, x3 slots."""
    x1, x2, x3 = t.as_tuple()
    two = CosSum(2) if t.is_exact() else mp.mpf(2)
    return (
        (two, x1, x3),
        (x1, two, x2),
        (x3, x2, two),
    )


def gram_det(g):
    a, b, c = g[0]
    d, e, f = g[1]
    h, i, j = g[2]
    return a * (e * j - f * i) - b * (d * j - f * h) + c * (d * i - e * h)


@dataclass(frozen=True)
class DihedralLabel:
    n_hat: int
    m_hat: int
    group: str
    angles: TriangleAngles
    gram: tuple
    gram_det: object


def dihedral_classify(M: int, N: int) -> DihedralLabel:
    """Star-polygon data of the algebraic member with label (M, N).

    The defining kaleidoscope has two coincident mirrors; the third meets
    them at angle pi M/(2N).  The generated group is the dihedral group of
    the regular polygon (M even) or star-polygon (M odd) with n_hat edges
    and density m_hat:

        n_hat = N  and m_hat = M/2   for even M,
        n_hat = 2N and m_hat = M     for odd M.
    """
    M, N = int(M), int(N)
    if N <= 0 or M < 0 or M >= 2 * N or gcd(M, N) != 1:
        raise DomainError(f"invalid label (M, N) = ({M}, {N})")
    if M % 2 == 0:
        n_hat, m_hat = N, M // 2
    else:
        n_hat, m_hat = 2 * N, M
    angles = TriangleAngles(Fraction(0), Fraction(M, 2 * N), 1 - Fraction(M, 2 * N))
    g = gram_matrix(triple_from_angles(angles))
    det = gram_det(g)
    if not (isinstance(det, CosSum) and det.is_zero()):
        raise DomainError(f"Gram determinant {det} does not vanish")
    return DihedralLabel(n_hat, m_hat, f"D({n_hat})", angles, g, det)
