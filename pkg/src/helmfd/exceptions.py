"""Exception hierarchy for helmfd."""


class HelmfdError(Exception):
    """Base class for all errors raised by helmfd."""


class ResonantMode(HelmfdError):
    """A source mode sits on (or too close to) a root of the continuous symbol."""


class NearResonance(HelmfdError):
    """A sine denominator such as sin(k) or sin(k^h) vanishes within tolerance."""


class InvalidCFL(HelmfdError):
    """kh/2 >= 1, so the discrete wavenumber or a corrected scheme is undefined."""


class DiscreteResonance(HelmfdError):
    """A discrete symbol vanishes at some grid frequency."""


class ResonantFrequency(HelmfdError):
    """Continuous or discrete symbol vanishes at the requested frequency."""


class Resonant(HelmfdError):
    """k is (numerically) an integer multiple of pi."""


class SearchExhausted(HelmfdError):
    """No admissible mesh was found in the scanned range."""


class HypothesisViolated(HelmfdError):
    """The inputs fall outside the hypothesis set of a lemma or theorem."""

    def __init__(self, condition, lemma=None):
        self.condition = condition
        self.lemma = lemma
        prefix = f"{lemma}: " if lemma else ""
        super().__init__(f"{prefix}hypothesis violated: {condition}")


class CandidateViolation(HelmfdError, AssertionError):
    """A full-scan maximiser fell outside the predicted candidate set."""


class DegenerateExact(HelmfdError):
    """The exact solution has zero norm, so a relative error is undefined."""


class InsufficientData(HelmfdError):
    """Not enough points to fit convergence orders."""
