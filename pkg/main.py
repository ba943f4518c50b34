"""Entry point for the Ziegler pendulum laboratory CLI."""

from __future__ import annotations

from cli.main import main

if __name__ == "__main__":
    raise SystemExit(main())
