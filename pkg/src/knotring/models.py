"""Shared result models."""

from enum import IntEnum

from pydantic import BaseModel, field_validator


class ExitCode(IntEnum):
  SUCCESS = 0
  CHECK_FAILED = 1
  USAGE = 2
  NUMERIC_FAILURE = 3


class CommandResult(BaseModel):
  """What a subcommand produced: canonical stdout text and its exit code."""

  exit_code: ExitCode = ExitCode.SUCCESS
  stdout: str = ""

  @field_validator("stdout")
  @classmethod
  def ensure_trailing_newline(cls, v: str) -> str:
    if v and not v.endswith("\n"):
      return v + "\n"
    return v

  @property
  def success(self) -> bool:
    return self.exit_code == ExitCode.SUCCESS


class ResolveSummary(BaseModel):
  """Report of one resolution: double points before and after, parameters used."""

  k_before: int
  k_after: int
  eps: float
  delta: float
  attempts: int = 0

  def to_text(self) -> str:
    lines = [
      f"k: {self.k_before} -> {self.k_after}",
      f"eps: {self.eps:.16e}",
      f"delta: {self.delta:.16e}",
      f"attempts: {self.attempts}",
    ]
    return "".join(line + "\n" for line in lines)
