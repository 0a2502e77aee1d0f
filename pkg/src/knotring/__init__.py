from .cli import cli


def main():
  """Entry point for the knotring command."""
  cli(prog_name="knotring")
