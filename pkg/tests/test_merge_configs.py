import copy

from lptorsion.config_parser import merge_configs


def test_merge_configs() -> None:

    base = {
        "some_key": 42,
        "some_nested_value": {"a": 1, "b": 2, "c": {"d": 3, "e": 4}},
    }
    update = {"some_key": 3, "some_nested_value": {"b": 999, "c": {"e": None}}}

    expected = {
        "some_key": 3,
        "some_nested_value": {"a": 1, "b": 999, "c": {"d": 3, "e": 4}},
    }

    assert merge_configs(base, update) == expected


def test_merge_configs_leaves_inputs_untouched() -> None:
    base = {"ps": [1, 2], "nested": {"h": 0.1}}
    update = {"ps": [4], "nested": {"tol": 1e-8}, "workers": None}
    base_copy, update_copy = copy.deepcopy(base), copy.deepcopy(update)

    merged = merge_configs(base, update)
    merged["nested"]["h"] = 0.5
    merged["ps"].append(8)

    assert base == base_copy
    assert update == update_copy
    assert "workers" not in merged
