"""Allow the CLI to be run with python -m growthlab."""

from __future__ import annotations

import sys

from growthlab.cli import main

if __name__ == "__main__":
    sys.exit(main())
