from typing import Optional, Sequence

import numpy as np

from ._domain_spec import DisjointUnion, DomainSpec, IntervalUnion


def arrange_along_axis(
    members: Sequence[DomainSpec], gap: Optional[float] = None
) -> DomainSpec:
    """
    Translates the members along the first coordinate axis so that consecutive bounding
    boxes are separated by the given gap, and returns their disjoint union.

    Args:
        members: Domains of equal dimension, in the order they are laid out.
        gap: Distance between consecutive bounding boxes. Defaults to the largest member
            diameter along the first axis.

    Returns:
        An IntervalUnion if every member is an interval union, else a DisjointUnion.

    """
    if not members:
        raise ValueError("At least one member is needed to build a union.")
    widths = []
    for member in members:
        lower, upper = member.bounding_box()
        widths.append(float(upper[0] - lower[0]))
    if gap is None:
        gap = max(widths)
    if gap < 0:
        raise ValueError(f"The gap between members must be non-negative, got {gap}.")

    placed = []
    cursor = float(members[0].bounding_box()[0][0])
    for member, width in zip(members, widths):
        lower, _ = member.bounding_box()
        offset = np.zeros(member.dimension)
        offset[0] = cursor - lower[0]
        placed.append(member.translate(tuple(offset)))
        cursor += width + gap

    if all(isinstance(member, IntervalUnion) for member in placed):
        return IntervalUnion(
            tuple(interval for member in placed for interval in member.intervals)
        )
    return DisjointUnion(tuple(placed))
