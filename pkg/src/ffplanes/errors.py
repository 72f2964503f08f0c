"""Exception types shared across the package."""


class FFPlanesError(Exception):
    """Base class for all errors raised by ffplanes."""


class CompositeP(FFPlanesError, ValueError):
    """The requested characteristic is not an odd prime."""


class ReducibleModulus(FFPlanesError, ValueError):
    """The supplied modulus polynomial factors over the prime field."""


class DivisionByZero(FFPlanesError, ZeroDivisionError):
    """Division or inversion of the zero element."""


class ZeroVector(FFPlanesError, ValueError):
    """The zero vector has no direction decomposition."""


class ZeroNormal(FFPlanesError, ValueError):
    """A hyperplane needs a nonzero normal vector."""


class DegeneratePlane(FFPlanesError, ValueError):
    """Normal vector with zero self-inner-product; distance is undefined."""


class TooLarge(FFPlanesError, ValueError):
    """Requested sample size exceeds the population."""


class EmptySet(FFPlanesError, ValueError):
    """The bound is undefined for empty point or plane sets."""


class BudgetExceeded(FFPlanesError, RuntimeError):
    """An exhaustive enumeration would exceed the configured budget."""

    def __init__(self, required, budget):
        self.required = required
        self.budget = budget
        super().__init__(
            f"enumeration needs {required} candidates, budget is {budget}"
        )


class IdentityViolation(FFPlanesError, RuntimeError):
    """An identity that must hold exactly failed; indicates a bug."""

    def __init__(self, check, lhs, rhs):
        self.check = check
        self.lhs = lhs
        self.rhs = rhs
        super().__init__(f"{check}: lhs={lhs} rhs={rhs}")
