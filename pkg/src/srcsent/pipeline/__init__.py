"""Orchestration: config, method registry, cached runs, selection."""

from .config import MethodEntry, RunConfig, SelectionRule, load_config, parse_config
from .registry import BACKEND_FREE_METHODS, REGISTRY, MethodSpec, Resources, get_method
from .runner import ScoreCache, build_resources, check_method_resources, run_methods, select_split
from .selection import SelectionResult, export_filtered_document, select_sources

__all__ = [
    "BACKEND_FREE_METHODS",
    "MethodEntry",
    "MethodSpec",
    "REGISTRY",
    "Resources",
    "RunConfig",
    "ScoreCache",
    "SelectionResult",
    "SelectionRule",
    "build_resources",
    "check_method_resources",
    "export_filtered_document",
    "get_method",
    "load_config",
    "parse_config",
    "run_methods",
    "select_split",
    "select_sources",
]
