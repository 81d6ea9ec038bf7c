from typing import List, Tuple, Union

import numpy as np

# A point may be given as a tuple, a list or a numpy array of floats; dimension is
# implied by its length.
Point = Union[Tuple[float, ...], List[float], np.ndarray]

Interval = Tuple[float, float]
