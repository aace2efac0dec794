"""Allow ``python3 -m scanseg`` alongside the installed script."""

import sys

from .cli import main

sys.exit(main())
