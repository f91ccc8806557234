"""Size limits for user-facing input and exhaustive searches."""

import os

# cap on carrier size for DSL input and enumeration inputs
MAX_ELEMENTS = int(os.environ.get("QMON_MAX_ELEMENTS", 12))

# default cap on the number of candidate relations an enumeration may cover
ENUMERATION_BUDGET = 1 << 22
