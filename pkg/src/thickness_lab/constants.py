"""Shared numeric thresholds and budgets."""

import os

# Spectral support / exactness threshold used across the library.
TAU_EXACT = 1e-9

# Tolerance for accepting a family member as unit-norm.
TAU_UNIT = 1e-6

# Largest group order that full-enumeration scans will accept by default.
DEFAULT_ENUM_BUDGET = 1 << 21

# Default angular grid for measured net radii on the circle.
DEFAULT_NET_GRID = 2048


def thread_cap() -> int:
    """Parallelism cap from THICKNESS_LAB_THREADS (default 1 = sequential)."""
    raw = os.environ.get("THICKNESS_LAB_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1
