# CLI Python Module
from internal.cli.python.writers import RunManifest, format_cell, manifest_path, write_csv, write_manifest
from internal.cli.python.region_plot import render_region_map
from internal.cli.python.cli import build_parser, main

__all__ = [
    "RunManifest",
    "format_cell",
    "manifest_path",
    "write_csv",
    "write_manifest",
    "render_region_map",
    "build_parser",
    "main",
]
