"""Exception taxonomy shared by all sectorial modules.

Every exception carries a MODULE tag naming the subsystem the condition
belongs to; the CLI surfaces errors as ``<module>.<ClassName>: message``.
"""


class SectorialError(Exception):
    """Base class for all toolkit errors."""

    MODULE = "sectorial"

    @property
    def qualified_name(self):
        return f"{self.MODULE}.{type(self).__name__}"


class NotSquare(SectorialError):
    """Operation requires a square matrix."""

    MODULE = "numlin"


class NotHermitian(SectorialError):
    """Matrix fails the Hermitian symmetry check."""

    MODULE = "numlin"


class NoConvergence(SectorialError):
    """Eigen/singular value iteration exhausted its budget."""

    MODULE = "numlin"


class InvalidOrder(SectorialError):
    """Schatten order p must satisfy p >= 1 (or be infinity)."""

    MODULE = "numlin"


class InvalidAngle(SectorialError):
    """Sector semi-angle must lie in [0, pi/2]."""

    MODULE = "oprange"


class NotMaximal(SectorialError):
    """A Cayley denominator is numerically singular: the relation is not
    maximal in the required class (accretive / dissipative / accumulative)."""

    MODULE = "relcalc"


class NotContraction(SectorialError):
    """Operator norm exceeds 1 beyond tolerance."""

    MODULE = "relcalc"


class SingularShift(SectorialError):
    """T_R + alpha*I is singular at the requested shift."""

    MODULE = "spectheory"


class NotSectorial(SectorialError):
    """Operator has no semi-angle phi <= pi/2 (not accretive)."""

    MODULE = "spectheory"


class NotNormal(SectorialError):
    """Matrix fails the normality check ||T T^H - T^H T|| <= tol*||T||^2."""

    MODULE = "spectheory"


class UnderResolved(SectorialError):
    """Quadrature grid violates the resolution rule for the requested mode."""

    MODULE = "diffop"


class DegenerateDirection(SectorialError):
    """Probe direction f has Re(Af, f) <= tol; the obstruction ratio is
    undefined along it."""

    MODULE = "diffop"


class ParseError(SectorialError):
    """Input file does not match the expected JSON schema."""

    MODULE = "cli"
