"""Allow ``python -m eulerpoisson``."""

import sys

from eulerpoisson.cli import main

sys.exit(main())
