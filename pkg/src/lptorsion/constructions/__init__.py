from ._bounds import (
    sandwich_constant,
    g_p_convex_lower,
    g_inf_convex_limit,
    tp_ball_lower,
    f_sup_lower_from_ball,
    ball_excess_ratio,
    recursion_bound,
    convex_delta_bound,
    f2_derivative_bound,
    delta_star,
    p2_convex_lower,
    talenti_fp0,
    one_d_sharp,
    one_d_sharp_inf,
    pq_ceiling,
    fp_ball,
)
from ._sequences import (
    BALL_GAP,
    SEQUENCE_COLUMNS,
    SequenceSample,
    cluster_radius,
    ball_cluster,
    cluster_bound,
    ball_cluster_sequence,
    equal_balls_radius,
    equal_balls_value,
    equal_balls_inf_value,
    equal_balls_sequence,
    sequence_table,
    log_log_slope,
)
