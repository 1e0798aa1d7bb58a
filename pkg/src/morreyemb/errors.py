"""Exception vocabulary shared by all modules."""


class MorreyError(Exception):
    """Base class for all package-specific errors."""


class InvalidExponent(MorreyError):
    """Exponent outside its admissible range (e.g. p <= 0)."""


class IndeterminatePower(MorreyError):
    """0^0 or inf^0 requested from extended-real power."""


class QuadratureFailure(MorreyError):
    """Adaptive integrator could not meet tolerance.

    Carries the best estimate and the achieved error bound.
    """

    def __init__(self, message, value=None, error_bound=None):
        super().__init__(message)
        self.value = value
        self.error_bound = error_bound


class UndefinedStieltjes(MorreyError):
    """Stieltjes integral against an integrator that is infinite where
    the integrand is positive."""


class InadmissibleExponents(MorreyError):
    """Exponent tuple matched by no closed-form case."""


# classify_case and the CLI speak of plain "inadmissible" problems.
Inadmissible = InadmissibleExponents


class HypothesisViolated(MorreyError):
    """A stated hypothesis of a characterization fails on the given data."""


class DegenerateRatio(MorreyError):
    """Every candidate test function has zero source norm."""


class WitnessNotFound(MorreyError):
    """Divergence witness search did not achieve the required growth."""

    def __init__(self, message, ratios=None):
        super().__init__(message)
        self.ratios = ratios or []


class GateFailed(MorreyError):
    """Sampled Muckenhoupt estimate diverged under refinement."""


class NotAWeight(MorreyError):
    """A constructed profile is not finite and positive a.e."""
