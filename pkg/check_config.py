"""
Default bounds and knobs for the verification suites.

Every suite reads its limits from one of the DEFAULT_*_CONFIG presets below.
A JSON file passed with ``--config`` is deep-merged over the presets, so it
only needs the keys it changes, e.g.::

    {"hochschild": {"max_sweep_tuples": 1000}, "random": {"instances": 5}}
"""

import copy
import json
from pathlib import Path
from typing import Any, Dict, Optional


# =============================================================================
# Default Configuration Presets
# =============================================================================

DEFAULT_BOUNDS_CONFIG = {
    "max_arity": 6,
    "max_word": 4,
    "max_cochain": 4,
    "seed": 0,
    "order_cap": 6,
    "cohomology_arity": 4,
    "tk_arity": 4,
    "t_stasheff_arity": 3,
}

DEFAULT_RANDOM_CONFIG = {
    "instances": 20,
    "max_dim": 4,
    "coefficient_range": 2,
    "density": 0.5,
    "max_attempts": 200,
    "stasheff_arity": 6,
    "assoc_arity": 5,
}

DEFAULT_HOCHSCHILD_CONFIG = {
    "samples": 10,
    "samples_per_degree": 5,
    "density": 0.4,
    "max_sweep_tuples": 400,
    "ainf_arity": 3,
    "ainf_max_cochain": 3,
    "full_complex_max_coordinates": 1100,
}

DEFAULT_CHECK_CONFIG = {
    "bounds": DEFAULT_BOUNDS_CONFIG,
    "random": DEFAULT_RANDOM_CONFIG,
    "hochschild": DEFAULT_HOCHSCHILD_CONFIG,
}


# =============================================================================
# Merging and loading
# =============================================================================

def merge_config(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    """
    Deep merge override config into base config.

    Args:
        base: Base configuration dictionary
        override: Override configuration dictionary

    Returns:
        Merged configuration dictionary (base is not modified)
    """
    result = copy.deepcopy(base)

    for key, value in override.items():
        if key in result and isinstance(result[key], dict) and isinstance(value, dict):
            result[key] = merge_config(result[key], value)
        else:
            result[key] = value

    return result


def load_check_config(overrides: Optional[Dict[str, Any]] = None, path: Optional[str] = None) -> Dict[str, Any]:
    """
    Build the full check configuration.

    Args:
        overrides: Sections to merge over the defaults
        path: Optional JSON file merged before ``overrides``

    Returns:
        Dict with 'bounds', 'random' and 'hochschild' sections

    Raises:
        ValueError: If the file is not valid JSON or names an unknown section
    """
    config = copy.deepcopy(DEFAULT_CHECK_CONFIG)

    layers = []
    if path is not None:
        try:
            layers.append(json.loads(Path(path).read_text(encoding='utf-8')))
        except json.JSONDecodeError as e:
            raise ValueError(f"Config file {path} is not valid JSON: {e}") from None
    if overrides:
        layers.append(overrides)

    for layer in layers:
        unknown = set(layer) - set(config)
        if unknown:
            raise ValueError(f"Unknown config section(s): {', '.join(sorted(unknown))}")
        config = merge_config(config, layer)

    return config
