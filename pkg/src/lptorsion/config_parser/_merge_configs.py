import copy
from collections.abc import Mapping
from typing import Any, Dict


def merge_configs(base: Dict[Any, Any], update: Dict[Any, Any]) -> Dict[Any, Any]:
    """
    Merges two dictionaries of arbitrary depth without modifying either of them.

    Keys of update whose value is None are ignored, so unset command-line options never
    mask values from a configuration file.

    Args:
        base: Initial dictionary to begin with.
        update: Dictionary with values to update with.

    Returns:
        Merged dictionary.

    """
    merged = copy.deepcopy(base)
    for key, value in update.items():
        if value is None:
            continue
        if isinstance(value, Mapping) and isinstance(merged.get(key), Mapping):
            merged[key] = merge_configs(merged[key], value)  # type: ignore
        else:
            merged[key] = copy.deepcopy(value)
    return merged
