"""Worker-count policy for the parallel sections.

The RPD_THREADS environment variable caps the number of workers used by
operations that are parallel over independent units (null-model replicates,
pairwise distance cells). Unset means serial; ``0`` means one worker per CPU.
Results never depend on the worker count.
"""

from __future__ import annotations

import os

from .errors import PreconditionError


def worker_count() -> int:
    """Number of workers to use, from the RPD_THREADS environment variable."""
    raw = os.environ.get("RPD_THREADS")
    if raw is None or raw.strip() == "":
        return 1
    try:
        value = int(raw)
    except ValueError:
        raise PreconditionError(f"RPD_THREADS must be an integer, got {raw!r}") from None
    if value < 0:
        raise PreconditionError(f"RPD_THREADS must be >= 0, got {value}")
    if value == 0:
        return os.cpu_count() or 1
    return value
