"""Exception hierarchy for knotring."""

from typing import Optional


class KnotringError(Exception):
  """Base class for all knotring errors."""


# Rings


class PresentationError(KnotringError):
  pass


class UnknownGeneratorError(PresentationError):
  def __init__(self, name: str):
    super().__init__(f"Unknown generator: {name!r}")
    self.name = name


class ExponentOverflowError(PresentationError):
  pass


class NonEnumerableError(PresentationError):
  pass


class PresentationMismatchError(PresentationError):
  pass


class FormatError(KnotringError):
  """Malformed text input (ring, table or curve files)."""

  def __init__(self, message: str, line_number: Optional[int] = None):
    if line_number is not None:
      message = f"line {line_number}: {message}"
    super().__init__(message)
    self.line_number = line_number


class MorphismError(KnotringError):
  def __init__(self, message: str, witness: Optional[str] = None):
    super().__init__(message if witness is None else f"{message} (witness relation: {witness})")
    self.witness = witness


class CatalogError(KnotringError):
  pass


# Spectral sequences


class SpectralError(KnotringError):
  pass


class FiberGradingError(SpectralError):
  pass


class WindowTooSmallError(SpectralError):
  pass


class GeneratorPlacementError(SpectralError):
  pass


# Curves


class CurveError(KnotringError):
  pass


class SupportError(CurveError):
  pass


class DecorationError(CurveError):
  pass


class ProjectionCenterError(CurveError):
  pass


class NumericFailure(KnotringError):
  """Numerical procedures that ran but could not produce a valid answer."""


class SingularityClusterError(NumericFailure):
  pass


class NoValidParametersError(NumericFailure):
  def __init__(self, message: str, diagnostics: Optional[list[str]] = None):
    super().__init__(message)
    self.diagnostics = diagnostics or []
