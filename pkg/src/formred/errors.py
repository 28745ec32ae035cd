"""Exception types shared across the package."""


class DomainError(ValueError):
    """Input outside an operation's mathematical domain (e.g. real roots
    where a totally complex form is required, or a non positive definite
    quadratic passed to the zero map)."""


class ConvergenceError(RuntimeError):
    """A numerical routine failed to converge within its iteration budget."""
