"""Exception hierarchy.

Input problems (bad arguments, violated theorem hypotheses, unanchored
uniformizers) derive from :class:`InputError`; resource limits (degree caps,
precision escalation) derive from :class:`CapabilityError`.  The CLI maps the
two families to exit codes 2 and 3.
"""


class LTCritError(Exception):
    pass


class InputError(LTCritError, ValueError):
    pass


class InvalidArgument(InputError):
    pass


class HypothesisViolated(InputError):
    pass


class UnanchoredInput(InputError):
    """A Weil-facing operation received a uniformizer without a global model."""


class NotLiftable(InputError):
    pass


class CapabilityError(LTCritError, RuntimeError):
    pass


class UnsupportedDegree(CapabilityError):
    pass


class PrecisionExhausted(CapabilityError):
    pass


class IrregularPolynomial(CapabilityError):
    """Local factorization needs more than first-order Newton polygon data."""
