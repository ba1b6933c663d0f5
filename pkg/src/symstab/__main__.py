"""Allow ``python -m symstab``."""

import sys

from .cli import main

sys.exit(main())
