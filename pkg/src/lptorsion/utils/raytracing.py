import numpy as np


def ray_segment_fractions(
    ray_starts: np.ndarray,
    ray_ends: np.ndarray,
    edge_starts: np.ndarray,
    edge_ends: np.ndarray,
) -> np.ndarray:
    """
    Two-dimensional counterpart of the Möller–Trumbore ray-triangle test: intersects
    every ray segment with every polygon edge.

    In lptorsion a ray is the grid line between an interior node and its neighbour
    outside the polygon; the returned fraction is the Shortley–Weller distance of the
    boundary along that grid line.

    Args:
        ray_starts: (n, 2) array of ray start points (the interior nodes)
        ray_ends: (n, 2) array of ray end points
        edge_starts: (k, 2) array of edge start points
        edge_ends: (k, 2) array of edge end points

    Returns:
        (n, k) array with the fraction in (0, 1] of ray i where it meets edge j, NaN
        where they do not intersect

    """
    eps = 1.0e-14
    starts = np.asarray(ray_starts, dtype=float)[:, None, :]
    ray_direction = np.asarray(ray_ends, dtype=float)[:, None, :] - starts
    edge_start = np.asarray(edge_starts, dtype=float)[None, :, :]
    edge = np.asarray(edge_ends, dtype=float)[None, :, :] - edge_start

    det = ray_direction[..., 1] * edge[..., 0] - ray_direction[..., 0] * edge[..., 1]
    parallel = np.abs(det) < eps
    det = np.where(parallel, 1.0, det)

    t_vector = edge_start - starts
    ray_fraction = (
        t_vector[..., 1] * edge[..., 0] - t_vector[..., 0] * edge[..., 1]
    ) / det
    edge_fraction = (
        ray_direction[..., 0] * t_vector[..., 1]
        - ray_direction[..., 1] * t_vector[..., 0]
    ) / det

    hit = (
        ~parallel
        & (edge_fraction >= -eps)
        & (edge_fraction <= 1.0 + eps)
        & (ray_fraction > 0.0)
        & (ray_fraction <= 1.0 + eps)
    )
    return np.where(hit, np.minimum(ray_fraction, 1.0), np.nan)
