"""Allow ``python -m qhahn``."""

import sys

from .cli import main

sys.exit(main())
