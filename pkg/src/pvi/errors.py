"""Exception types shared across the package."""


class PviError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(PviError):
    """Input lies outside the domain an operation is defined on."""


class NonConvergence(PviError):
    """A series or iteration exceeded its term cap without converging."""


class PoleError(PviError):
    """Evaluation hit a pole (lattice point, solution pole, ...)."""


class DegenerateLattice(DomainError):
    """Period pair with real ratio: no lattice."""


class DenominatorZero(PviError):
    """The birational-map denominator vanished (Chazy-type point)."""


class DegenerateDenominator(DomainError):
    """A closed-form expression is singular for these parameters."""


class UnreachableTarget(PviError):
    """No transformation ladder connects the two equation parameters."""


class NearSingular(PviError):
    """Solution value too close to one of the singular values 0, 1, x."""
