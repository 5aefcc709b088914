"""Exception hierarchy for thickness_lab."""


class ThicknessLabError(Exception):
    """Base class for all library errors."""


class GroupSpecError(ThicknessLabError):
    """Malformed group specification text; carries the offending position."""

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class ShapeMismatchError(ThicknessLabError):
    """Objects built over different group shapes were combined."""


class AliasingError(ThicknessLabError):
    """A frequency exceeds the declared band limit of a circle stand-in factor."""


class EnumerationBudgetError(ThicknessLabError):
    """A full-group scan would exceed the enumeration budget."""

    def __init__(self, needed: int, budget: int):
        self.needed = needed
        self.budget = budget
        super().__init__(f"group order {needed} exceeds enumeration budget {budget}")


class SpectrumWindowError(ThicknessLabError):
    """Invalid or empty spectrum window."""


class AnnulusError(ThicknessLabError):
    """A point set leaves the annulus required by a disc lemma."""


class ConstructionError(ThicknessLabError):
    """A witness constructor could not meet its target."""


class FrequencyHeadroomError(ConstructionError):
    """No admissible high frequency in the window."""

    def __init__(self, required: float, available: int | None):
        self.required = required
        self.available = available
        have = "none" if available is None else str(available)
        super().__init__(
            "insufficient frequency headroom: need a window frequency with "
            f"|s| >= {required:.1f}, largest available is {have}"
        )


class FreshCoordinateError(ConstructionError):
    """No coordinate free of the family's spectra carries a window character."""


class AlignmentError(ConstructionError):
    """The alignment equation is unsolvable within the target tolerance."""

    def __init__(self, message: str, defect: float):
        self.defect = defect
        super().__init__(f"{message} (best achievable defect {defect:.6g})")


class InsufficientTailsError(ConstructionError):
    """Too few independent tail characters for the requested accuracy."""

    def __init__(self, required: int, available: int):
        self.required = required
        self.available = available
        super().__init__(
            f"need at least {required} independent tail characters, found {available}"
        )


class DispatchError(ConstructionError):
    """Neither structural case of the general constructor applies."""


class CertificateError(ThicknessLabError):
    """A certificate failed re-verification."""


class SchemaError(CertificateError):
    """Unknown or mismatched certificate schema."""
