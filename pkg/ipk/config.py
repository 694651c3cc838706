"""Configuration management for ipk."""

import os
from fractions import Fraction
from typing import Final

# Load environment variables
IPK_THREADS: Final[int] = int(os.getenv("IPK_THREADS", str(os.cpu_count() or 1)))
IPK_TOLERANCE: Final[Fraction] = Fraction(os.getenv("IPK_TOLERANCE", "1/1000000000000"))
IPK_MAX_REACH: Final[int] = int(os.getenv("IPK_MAX_REACH", "512"))
IPK_MC_BLOCK: Final[int] = int(os.getenv("IPK_MC_BLOCK", "1000"))
IPK_LOG_LEVEL: Final[str] = os.getenv("IPK_LOG_LEVEL", "WARNING").upper()

LOG_LEVELS: Final[tuple[str, ...]] = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


def validate_config() -> None:
    """Validate configuration values.

    Raises:
        ValueError: If any configuration value is invalid.
    """
    if IPK_THREADS <= 0:
        raise ValueError(f"IPK_THREADS must be positive, got {IPK_THREADS}")

    if not 0 < IPK_TOLERANCE < 1:
        raise ValueError(f"IPK_TOLERANCE must lie in (0, 1), got {IPK_TOLERANCE}")

    if IPK_MAX_REACH <= 0:
        raise ValueError(f"IPK_MAX_REACH must be positive, got {IPK_MAX_REACH}")

    if IPK_MC_BLOCK <= 0:
        raise ValueError(f"IPK_MC_BLOCK must be positive, got {IPK_MC_BLOCK}")

    if IPK_LOG_LEVEL not in LOG_LEVELS:
        raise ValueError(f"IPK_LOG_LEVEL must be one of {', '.join(LOG_LEVELS)}, got {IPK_LOG_LEVEL}")
