"""Main entry point for pyfraxis."""

import sys

from pyfraxis.cli.main import main

if __name__ == "__main__":
    sys.exit(main())
