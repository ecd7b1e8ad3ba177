"""Allow ``python -m vqkan`` to reach the CLI."""

from .cli import entry_point

entry_point()
