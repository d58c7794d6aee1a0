"""
Command-line interface and shipped experiment presets.
"""

from .main import build_parser, main
from .presets import ExperimentConfig, get_preset, load_config, parse_config, preset_names

__all__ = [
    "ExperimentConfig",
    "build_parser",
    "get_preset",
    "load_config",
    "main",
    "parse_config",
    "preset_names",
]
