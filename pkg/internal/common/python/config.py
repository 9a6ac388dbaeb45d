"""
Toolkit Configuration
Environment-driven defaults for grids, tolerances and seeds
"""

import os
from typing import Any, Dict

from dotenv import load_dotenv

TOOL_VERSION = "0.1.0"

# Load environment variables from .env file
load_dotenv()


def _env_bool(name: str, default: str) -> bool:
    return os.getenv(name, default).strip().lower() in ("1", "true", "yes", "on")


class ToolkitConfig:
    """Numerical defaults shared by the library and the CLI"""

    def __init__(self):
        self.log_level = os.getenv("ISOLOGCON_LOG_LEVEL", "INFO").upper()

        # Oracle defaults
        self.grid_n = int(os.getenv("ISOLOGCON_GRID_N", "200"))
        self.max_components = int(os.getenv("ISOLOGCON_MAX_COMPONENTS", "3"))

        # Region map
        self.region_grid_n = int(os.getenv("ISOLOGCON_REGION_GRID_N", "200"))

        # Randomized sweeps
        self.seed = int(os.getenv("ISOLOGCON_SEED", "0"))

        # Numerical inversion and differentiation
        self.quantile_tol = float(os.getenv("ISOLOGCON_QUANTILE_TOL", "1e-13"))
        self.fd_step = float(os.getenv("ISOLOGCON_FD_STEP", "1e-5"))

        self.show_progress = _env_bool("ISOLOGCON_SHOW_PROGRESS", "true")

    def as_dict(self) -> Dict[str, Any]:
        """Snapshot recorded in run manifests"""
        return {
            "grid_n": self.grid_n,
            "max_components": self.max_components,
            "region_grid_n": self.region_grid_n,
            "seed": self.seed,
            "quantile_tol": self.quantile_tol,
            "fd_step": self.fd_step,
        }


# Global config instance
toolkit_config = ToolkitConfig()
