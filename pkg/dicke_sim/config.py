import os
import json
import logging
from typing import Any, Optional, List

logger = logging.getLogger(__name__)


class Config:
    """Configuration manager for dicke-sim.

    Reads configuration from environment variables and provides
    access to configuration values with defaults.
    """

    # Environment variable defaults
    DEFAULTS = {
        "DICKE_LOG": "WARNING",
        "DICKE_LOG_FILE": None,  # JSON-lines log with rotation when set
        # Validation of user-supplied states
        "DICKE_HERMITIAN_TOL": "1e-12",
        "DICKE_TRACE_TOL": "1e-12",
        "DICKE_PSD_TOL": "1e-10",
        "DICKE_CLASS_TOL": "1e-12",
        # Validation of propagated states (RK4 accumulates rounding)
        "DICKE_TRAJECTORY_TRACE_TOL": "1e-9",
        "DICKE_TRAJECTORY_PSD_TOL": "1e-8",
        "DICKE_TRAJECTORY_CLASS_TOL": "1e-9",
        # Times below are in units of 1/gamma0
        "DICKE_RK4_STEP": "1e-3",
        "DICKE_SEARCH_T_END": "15",
        "DICKE_SEARCH_GRID": "10000",
        "DICKE_SEED": "0",
    }

    @staticmethod
    def get(key: str, default: Any = None) -> Any:
        """Get a configuration value from environment variables.

        Args:
            key: The configuration key (environment variable name)
            default: Default value if not found

        Returns:
            The configuration value or default
        """
        return os.environ.get(key, Config.DEFAULTS.get(key, default))

    @staticmethod
    def get_bool(key: str, default: bool = False) -> bool:
        """Get a boolean configuration value (true/false, yes/no, 1/0)."""
        value = Config.get(key, str(default))
        if value is None:
            return default
        return value.lower() in ("true", "yes", "1", "t", "y")

    @staticmethod
    def get_int(key: str, default: int = 0) -> int:
        """Get an integer configuration value, falling back on parse errors."""
        value = Config.get(key, default)
        if value is None:
            return default
        try:
            return int(value)
        except ValueError:
            return default

    @staticmethod
    def get_float(key: str, default: float = 0.0) -> float:
        """Get a float configuration value, falling back on parse errors."""
        value = Config.get(key, default)
        if value is None:
            return default
        try:
            return float(value)
        except ValueError:
            logger.warning(f"Ignoring non-numeric value for {key}: {value!r}")
            return default

    @staticmethod
    def get_list(key: str, default: Optional[List[str]] = None) -> List[str]:
        """Get a list configuration value from a comma-separated string."""
        if default is None:
            default = []

        value = Config.get(key, None)
        if not value:
            return default

        return [item.strip() for item in value.split(",")]

    @staticmethod
    def tolerances():
        """Tolerances used to validate user-supplied states."""
        from dicke_sim.qstate.models import Tolerances

        return Tolerances(
            hermitian=Config.get_float("DICKE_HERMITIAN_TOL", 1e-12),
            trace=Config.get_float("DICKE_TRACE_TOL", 1e-12),
            psd=Config.get_float("DICKE_PSD_TOL", 1e-10),
            class_zero=Config.get_float("DICKE_CLASS_TOL", 1e-12),
        )

    @staticmethod
    def trajectory_tolerances():
        """Looser tolerances applied to propagated states."""
        from dicke_sim.qstate.models import Tolerances

        return Tolerances(
            hermitian=Config.get_float("DICKE_HERMITIAN_TOL", 1e-12),
            trace=Config.get_float("DICKE_TRAJECTORY_TRACE_TOL", 1e-9),
            psd=Config.get_float("DICKE_TRAJECTORY_PSD_TOL", 1e-8),
            class_zero=Config.get_float("DICKE_TRAJECTORY_CLASS_TOL", 1e-9),
        )

    @staticmethod
    def dump() -> None:
        """Print the effective configuration."""
        display_config = {key: Config.get(key) for key in Config.DEFAULTS}
        print(json.dumps(display_config, indent=2))
