# gi/__main__.py
"""python -m gi <podkomenda> ..."""

import sys

from .cli import main

sys.exit(main())
