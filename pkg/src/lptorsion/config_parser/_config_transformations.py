import math
from typing import List, Union

import configsuite

_INFINITY_NAMES = ("inf", "+inf", "infinity", "∞")


@configsuite.transformation_msg("Convert string to lower case")
def _to_lower(input_data: Union[List[str], str]) -> Union[List[str], str]:
    if isinstance(input_data, str):
        return input_data.lower()

    return [x.lower() for x in input_data]


@configsuite.transformation_msg("Convert 'inf', 'infinity' and '∞' to infinity")
def _to_exponent(input_data: Union[str, int, float]) -> Union[str, int, float]:
    """
    Converts a textual exponent to a number; 'inf' and its spellings become math.inf.

    Args:
        input_data: Number or its string representation.

    Returns:
        The number, or the input unchanged if it can not be read as one.

    """
    if isinstance(input_data, str):
        text = input_data.strip().lower()
        if text in _INFINITY_NAMES:
            return math.inf
        try:
            return float(text)
        except ValueError:
            return input_data
    return input_data


@configsuite.transformation_msg("Convert single number to list")
def _number_to_list(
    input_data: Union[List, str, int, float]
) -> Union[List, str, int, float]:
    if isinstance(input_data, (str, int, float)):
        return [input_data]
    return input_data
