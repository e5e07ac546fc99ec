"""Entry point for ``python -m morphring``."""

from .cli import main

main()
