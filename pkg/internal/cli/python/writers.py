"""
Writers - CSV tables and run manifests
Floats use 17 significant digits and LF line endings so reruns are byte-identical
"""

import csv
import logging
import math
import sys
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence

import orjson
from pydantic import BaseModel, Field

from internal.common.python.config import TOOL_VERSION
from internal.measures.python.measure_models import MeasureSpec

logger = logging.getLogger(__name__)

MISSING = "NA"


class RunManifest(BaseModel):
    """Everything needed to reproduce one CLI run"""
    command: str
    measure: MeasureSpec
    settings: Dict[str, Any] = Field(default_factory=dict)
    seed: int
    outputs: List[str] = Field(default_factory=list)
    results: Dict[str, Any] = Field(default_factory=dict)
    defaults: Dict[str, Any] = Field(default_factory=dict)
    version: str = TOOL_VERSION


def format_cell(value: Any) -> str:
    if hasattr(value, "item") and not isinstance(value, str):
        # numpy scalars
        value = value.item()
    if value is None:
        return MISSING
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return MISSING if math.isnan(value) else f"{value:.17g}"
    return str(value)


def write_csv(path: Optional[str], header: Sequence[str], rows: Iterable[Sequence[Any]]) -> None:
    """Write to path, or to stdout when path is None or '-'"""
    if path in (None, "-"):
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(header)
        writer.writerows([format_cell(value) for value in row] for row in rows)
        return
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        writer.writerows([format_cell(value) for value in row] for row in rows)
    logger.info(f"Wrote {path}")


def sibling_path(path: str, suffix: str) -> str:
    """results.csv + '.p0' -> results.p0.csv"""
    target = Path(path)
    return str(target.with_name(target.stem + suffix + target.suffix))


def manifest_path(path: str) -> str:
    return path + ".manifest.json"


def write_manifest(path: Optional[str], manifest: RunManifest) -> Optional[str]:
    """Serialize next to the primary output.

    Stdout output gets the manifest on stderr instead, as one JSON line.
    """
    options = orjson.OPT_SORT_KEYS | orjson.OPT_SERIALIZE_NUMPY
    if path in (None, "-"):
        sys.stderr.write(orjson.dumps(manifest.model_dump(mode="json"), option=options).decode() + "\n")
        return None
    target = manifest_path(path)
    payload = orjson.dumps(manifest.model_dump(mode="json"), option=options | orjson.OPT_INDENT_2)
    with open(target, "wb") as handle:
        handle.write(payload + b"\n")
    logger.info(f"Wrote {target}")
    return target
