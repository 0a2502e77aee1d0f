"""Diagnostic output on stderr; canonical payloads never go through here."""

from typing import Dict, Callable, Optional

from rich.console import Console


class Reporter:
  def __init__(self, quiet: bool = False, console: Optional[Console] = None):
    self.console = console or Console(stderr=True)
    self.quiet = quiet

  def show_step(self, step_text: str, is_final: bool = False):
    if self.quiet:
      return
    color = "bright_green" if is_final else "bright_white"
    self.console.print(f"[{color}]⏺[/{color}] [bright_white]{step_text}[/bright_white]")

  def show_detail(self, text: str):
    if self.quiet:
      return
    self.console.print(f"  [bright_white]⎿[/bright_white]  [white]{text}[/white]")

  def show_warning(self, warning: str):
    self.console.print(f"[bright_yellow]⏺[/bright_yellow] [bright_yellow]Warning: {warning}[/bright_yellow]")

  def show_error(self, error: str):
    self.console.print(f"[bright_red]⏺[/bright_red] [bright_red]Error: {error}[/bright_red]")

  def show_eps_delta_attempt(self, attempt: int, eps: float, delta: float):
    self.show_detail(f"attempt {attempt}: eps={eps:.3e} delta={delta:.3e}")

  def show_eps_delta_found(self, attempt: int, eps: float, delta: float):
    self.show_step(f"Embedded after {attempt} attempt{'s' if attempt != 1 else ''} (eps={eps:.3e}, delta={delta:.3e})", is_final=True)

  def show_check_started(self, name: str):
    self.show_step(f"Running {name} check")

  def show_sweep_progress(self, done: int, total: int):
    if done == total or done % max(1, total // 10) == 0:
      self.show_detail(f"{done}/{total} resolved")

  def callback(self, event: str, *args):
    """ui_callback for numeric routines."""
    handlers: Dict[str, Callable[..., None]] = {
      "eps_delta_attempt": self.show_eps_delta_attempt,
      "eps_delta_found": self.show_eps_delta_found,
      "sweep_progress": self.show_sweep_progress,
      "check_started": self.show_check_started,
    }
    if event in handlers:
      handlers[event](*args)
