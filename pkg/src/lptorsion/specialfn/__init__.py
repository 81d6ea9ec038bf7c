from ._special_functions import (
    BesselZero,
    ln_gamma,
    bessel_j,
    first_bessel_zero,
    ball_volume,
    ball_lambda1,
)
