"""Size caps and defaults for the exact (exhaustive) operations.

Callers can always override per call; nothing below is baked into an
algorithm.  The caps are sized so the full test suite stays within minutes.
"""

import os

# Largest host graph the brute-force minor oracle will accept.
DEFAULT_MINOR_CAP = 10

# Largest graph for exact treewidth (subset dynamic programming).
DEFAULT_TW_CAP = 16

# Largest graph for exact largest-grid-minor search.
DEFAULT_BG_CAP = 12

# Largest graph for the brute-force vertex cover oracle.
DEFAULT_VC_CAP = 20


def default_seed() -> int:
    """Default RNG seed; overridable through the environment."""
    return int(os.environ.get("GRIDTW_SEED", "0"))
