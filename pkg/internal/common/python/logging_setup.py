"""
Logging and progress helpers
"""

import logging
from typing import Iterable, Optional, TypeVar

from tqdm import tqdm

from internal.common.python.config import toolkit_config

T = TypeVar("T")

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def configure_logging(level: Optional[str] = None) -> None:
    """Configure root logging for entry points (stderr)"""
    logging.basicConfig(
        level=getattr(logging, (level or toolkit_config.log_level).upper(), logging.INFO),
        format=LOG_FORMAT,
    )


def progress(iterable: Iterable[T], desc: str, total: Optional[int] = None) -> Iterable[T]:
    """Wrap long sweeps in a tqdm bar unless progress output is disabled"""
    if not toolkit_config.show_progress:
        return iterable
    return tqdm(iterable, desc=desc, total=total, leave=False)
