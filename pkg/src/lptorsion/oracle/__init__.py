from ._closed_form import (
    Lambda1Bracket,
    supports,
    torsion_value,
    tp_norm,
    v_max,
    lambda1,
    spectral_series_1d,
)
