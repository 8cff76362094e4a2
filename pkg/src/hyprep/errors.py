"""Exception types raised by the pipeline.

Everything numerical derives from HyprepError so callers can distinguish
"the math said no / the solver gave up" from ordinary usage errors.
"""


class HyprepError(Exception):
    """Base class for all pipeline failures."""


class DegenerateInput(HyprepError):
    """All polynomial coefficients below tolerance; no roots to report."""


class NotHyperbolic(HyprepError):
    """Operation requires a hyperbolic input form."""


class HypothesisViolated(HyprepError):
    """An interlacing endpoint polynomial is not real rooted."""


class PerturbationFailed(HyprepError):
    """Perturbed form did not come out strictly smooth; retry with smaller eps."""


class NonrealCircle(HyprepError):
    """A circle parameter came out non-real; the input slipped past the hyperbolicity check."""


class SolveFailed(HyprepError):
    """Companion-matrix root solve did not converge."""


class LeadingZero(HyprepError):
    """Points at infinity requested while both top coefficients vanish."""


class RealSimplePoint(HyprepError):
    """A self-conjugate intersection orbit of odd multiplicity; reroute to the perturbation path."""


class AmbiguousOrbit(HyprepError):
    """Orbit clustering could not be resolved; reroute rather than guess."""


class NoVanishingForm(HyprepError):
    """No vanishing form found in an eigenspace where one must exist; point data is corrupt."""


class NoetherResidual(HyprepError):
    """Curve division residual above tolerance."""


class AdjugateMismatch(HyprepError):
    """Fitted linear pencil fails the holdout residual check."""


class PatternViolation(HyprepError):
    """Pencil entries fall outside the cyclic shift sparsity pattern."""


class IndefiniteDiagonal(HyprepError):
    """Pencil diagonal has mixed signs; cannot normalize."""


class NotDihedral(HyprepError):
    """Weight product has a nonreal phase; no real-weight dephasing exists."""


class OracleDisagreement(HyprepError):
    """The two independent forward oracles disagree; indicates an implementation bug."""


class ConvergenceFailed(HyprepError):
    """The perturbation schedule ran out of steps without converging."""
