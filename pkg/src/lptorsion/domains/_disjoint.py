import itertools
from typing import List, Sequence, Tuple

import numpy as np
from scipy.spatial import cKDTree

from ._domain_spec import (
    Ball,
    Cuboid,
    DisjointUnion,
    DomainSpec,
    IntervalUnion,
    Polygon,
    _segments_cross,
    _segments_intersect,
)


def check_boxes_overlap(bounding_boxes: np.ndarray, box: np.ndarray) -> np.ndarray:
    """Checks which of the bounding boxes overlap a given box in an open set sense.

    Args:
        bounding_boxes: (N x 2 x m) array holding the lower and upper corners of N boxes
        box: (2 x m) array with the lower and upper corner of the box to test against

    Returns:
        np.ndarray with bools

    """
    lower, upper = bounding_boxes[:, 0, :], bounding_boxes[:, 1, :]
    return np.all((lower < box[1]) & (upper > box[0]), axis=1)


def _primitives(specs: Sequence[DomainSpec]) -> List[DomainSpec]:
    primitives: List[DomainSpec] = []
    for spec in specs:
        if isinstance(spec, DisjointUnion):
            primitives.extend(_primitives(spec.members))
        elif isinstance(spec, IntervalUnion):
            primitives.extend(spec.components())
        else:
            primitives.append(spec)
    return primitives


def _pair_disjoint(first: DomainSpec, second: DomainSpec) -> bool:
    # pylint: disable=too-many-return-statements
    if first.dimension == 1:
        # One-dimensional primitives are intervals, so the overlapping boxes are exact.
        return False

    if isinstance(first, Ball) and isinstance(second, Ball):
        distance = np.linalg.norm(np.array(first.center) - np.array(second.center))
        return bool(distance >= first.radius + second.radius)

    if isinstance(first, Cuboid) and isinstance(second, Cuboid):
        return False

    if isinstance(second, Ball) and isinstance(first, Cuboid):
        first, second = second, first
    if isinstance(first, Ball) and isinstance(second, Cuboid):
        lower, upper = second.bounding_box()
        nearest = np.clip(np.array(first.center), lower, upper)
        return bool(np.linalg.norm(nearest - np.array(first.center)) >= first.radius)

    if first.dimension == 2 and isinstance(first, (Polygon, Cuboid)) and isinstance(
        second, (Polygon, Cuboid)
    ):
        return _polygons_disjoint(_as_polygon(first), _as_polygon(second))

    if isinstance(second, Ball) and isinstance(first, Polygon):
        first, second = second, first
    if isinstance(first, Ball) and isinstance(second, Polygon):
        center = np.array([first.center])
        return bool(
            not second.contains(center)[0]
            and second.edge_distance(center)[0] >= first.radius
        )

    # Remaining pairs involve a general ellipsoid. Against polygons, overlapping
    # bounding boxes are rejected outright; otherwise the boundaries are sampled.
    if isinstance(first, Polygon) or isinstance(second, Polygon):
        return False
    return not _samples_overlap(first, second)


def _as_polygon(spec: DomainSpec) -> Polygon:
    if isinstance(spec, Polygon):
        return spec
    (x0, y0), (x1, y1) = (tuple(corner) for corner in spec.bounding_box())
    return Polygon(((x0, y0), (x1, y0), (x1, y1), (x0, y1)))


def _polygons_disjoint(first: Polygon, second: Polygon) -> bool:
    for (p1, p2), (q1, q2) in itertools.product(first.edges, second.edges):
        if not _segments_intersect(p1, p2, q1, q2):
            continue
        if _segments_cross(p1, p2, q1, q2):
            return False
        # Touching boundaries are allowed unless the interiors overlap near the contact.
        if _crossing_overlaps(first, second, p1, p2, q1, q2):
            return False
    return not (
        second.contains(np.array(first.vertices)).any()
        or first.contains(np.array(second.vertices)).any()
        or first.contains(np.mean(second.vertices, axis=0, keepdims=True)).any()
        or second.contains(np.mean(first.vertices, axis=0, keepdims=True)).any()
    )


# pylint: disable=too-many-arguments
def _crossing_overlaps(first: Polygon, second: Polygon, p1, p2, q1, q2) -> bool:
    midpoints = np.array(
        [
            (np.array(p1) + np.array(p2)) / 2,
            (np.array(q1) + np.array(q2)) / 2,
        ]
    )
    span = min(first.min_feature(), second.min_feature()) * 1e-6
    offsets = np.array([[span, 0], [-span, 0], [0, span], [0, -span]])
    points = (midpoints[:, None, :] + offsets[None, :, :]).reshape(-1, 2)
    return bool(np.any(first.contains(points) & second.contains(points)))


def _samples_overlap(first: DomainSpec, second: DomainSpec) -> bool:
    for this, other in ((first, second), (second, first)):
        try:
            samples = this.boundary_samples(512)
        except NotImplementedError:
            continue
        if other.contains(samples).any():
            return True
        centroid = np.mean(samples, axis=0, keepdims=True)
        if this.contains(centroid).any() and other.contains(centroid).any():
            return True
    return False


def _candidate_pairs(boxes: np.ndarray) -> List[Tuple[int, int]]:
    """Index pairs whose bounding boxes overlap, found with a k-d tree on centers."""
    centers = boxes.mean(axis=1)
    half_diagonals = np.linalg.norm(boxes[:, 1, :] - boxes[:, 0, :], axis=1) / 2
    tree = cKDTree(centers)
    candidates = tree.query_pairs(
        r=2 * float(half_diagonals.max()), output_type="ndarray"
    )
    return [
        (int(i), int(j))
        for i, j in candidates
        if check_boxes_overlap(boxes[[j]], boxes[i])[0]
    ]


def check_disjoint(specs: Sequence[DomainSpec]) -> bool:
    """
    Checks whether the given domains are pairwise disjoint.

    Intervals, balls and cuboids are tested exactly. Polygons are tested exactly against
    polygons, cuboids and balls. Pairs of a general ellipsoid and a polygon are
    rejected as soon as their bounding boxes overlap; other pairs involving a general
    ellipsoid fall back to a sampled boundary test.

    Args:
        specs: Domains of equal dimension.

    Returns:
        True if no two domains intersect.

    """
    primitives = _primitives(specs)
    if len(primitives) < 2:
        return True
    if len({spec.dimension for spec in primitives}) != 1:
        raise ValueError("Disjointness is only defined for domains of equal dimension.")

    boxes = np.array([np.array(spec.bounding_box()) for spec in primitives])
    return all(
        _pair_disjoint(primitives[i], primitives[j]) for i, j in _candidate_pairs(boxes)
    )

