import math

# Sentinel for p = infinity. The measure exponent of F_{p,q} changes discontinuously
# there, so it is never approximated by a large finite p.
P_INF = math.inf

# Constant from the companion estimate F_1^convex <= 1 - 1/11560 for planar convex sets;
# input data, not derivable here.
CONVEX_F1_DEFICIT = 11560

# Absolute distance below which a point counts as lying on a polygon edge.
BOUNDARY_SNAP = 1.0e-12

# Grid nodes closer than this fraction of h to the boundary are dropped from the mask.
NODE_SNAP = 1.0e-6

MIN_CELLS_ACROSS = 4

# Relative roundoff allowance for exact (closed-form) comparisons.
EXACT_TOLERANCE = 1.0e-12

OUTPUT_DIGITS = 12
