import math
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from ..domains import DomainSpec
from ..utils import GridTooCoarseError, UnsupportedDomainError
from ..utils.constants import MIN_CELLS_ACROSS, NODE_SNAP


def shift(array: np.ndarray, axis: int, sign: int) -> np.ndarray:
    """
    Returns the array of neighbour values: result[i] = array[i + sign * e_axis], with
    zeros where the neighbour falls off the grid.
    """
    result = np.zeros_like(array)
    source = [slice(None)] * array.ndim
    target = [slice(None)] * array.ndim
    if sign > 0:
        source[axis], target[axis] = slice(1, None), slice(None, -1)
    else:
        source[axis], target[axis] = slice(None, -1), slice(1, None)
    result[tuple(target)] = array[tuple(source)]
    return result


def directions(dim: int) -> List[Tuple[int, int]]:
    """(axis, sign) pairs in the order used for the first axis of Grid.boundary_frac."""
    return [(axis, sign) for axis in range(dim) for sign in (1, -1)]


@dataclass(eq=False)
class Grid:
    """
    Uniform lattice origin + k * h covering the bounding box of a domain.

    Attributes:
        dim: Dimension, 1 or 2.
        h: Grid spacing.
        origin: Coordinates of the node with index zero.
        shape: Number of nodes per axis.
        mask: Nodes strictly inside the domain.
        labels: Component number (1, 2, ...) of each masked node, 0 outside.
        coupled: For every direction, whether the neighbour is a masked node of the same
            component.
        boundary_frac: For every direction, the distance to the boundary in units of h
            for nodes whose neighbour is not coupled; 1 elsewhere.

    """

    dim: int
    h: float
    origin: np.ndarray
    shape: Tuple[int, ...]
    mask: np.ndarray
    labels: np.ndarray
    coupled: np.ndarray
    boundary_frac: np.ndarray

    @property
    def n_interior(self) -> int:
        return int(self.mask.sum())

    @property
    def cell_volume(self) -> float:
        return self.h ** self.dim

    @property
    def cells_per_axis(self) -> int:
        return max(self.shape)

    def coordinates(self) -> np.ndarray:
        """(N x dim) coordinates of the masked nodes, in mask order."""
        indices = np.argwhere(self.mask)
        return self.origin + indices * self.h

    def to_full(self, values: np.ndarray) -> np.ndarray:
        """Scatters values given per masked node onto the full lattice, zero outside."""
        full = np.zeros(self.shape)
        full[self.mask] = values
        return full


def _node_coordinates(
    origin: np.ndarray, shape: Tuple[int, ...], h: float
) -> np.ndarray:
    axes = [origin[axis] + h * np.arange(n) for axis, n in enumerate(shape)]
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.column_stack([coordinate.ravel() for coordinate in mesh])


def _boundary_fractions(
    components: List[DomainSpec],
    points: np.ndarray,
    labels: np.ndarray,
    h: float,
) -> Tuple[np.ndarray, np.ndarray]:
    dim = labels.ndim
    coupled = np.zeros((2 * dim,) + labels.shape, dtype=bool)
    fractions = np.ones((2 * dim,) + labels.shape)
    flat_labels = labels.ravel()

    for index, (axis, sign) in enumerate(directions(dim)):
        coupled[index] = (labels > 0) & (shift(labels, axis, sign) == labels)
        cut = ((labels > 0) & ~coupled[index]).ravel()
        for number, component in enumerate(components, start=1):
            selection = np.flatnonzero(cut & (flat_labels == number))
            if selection.size == 0:
                continue
            distance = component.axis_distance(points[selection], axis, sign)
            target = (index,) + np.unravel_index(selection, labels.shape)
            fractions[target] = np.minimum(distance / h, 1.0)
    return coupled, fractions


def rasterize(spec: DomainSpec, h: float) -> Grid:
    """
    Lays a uniform grid over the bounding box of the domain and computes the
    Shortley–Weller boundary data of every interior node.

    Args:
        spec: One- or two-dimensional domain.
        h: Grid spacing.

    Returns:
        Grid

    """
    if spec.dimension > 2:
        raise UnsupportedDomainError(
            "The finite-difference backend handles dimensions 1 and 2, "
            f"got {spec.dimension}."
        )
    if h <= 0:
        raise ValueError(f"The grid spacing must be positive, got {h}.")

    components = spec.components()
    for component in components:
        if component.min_feature() / h < MIN_CELLS_ACROSS - 1e-9:
            raise GridTooCoarseError(
                f"Grid spacing h={h} leaves fewer than {MIN_CELLS_ACROSS} cells across "
                f"a component of width {component.min_feature()}."
            )

    lower, upper = spec.bounding_box()
    shape = tuple(
        int(math.ceil((hi - lo) / h - 1e-9)) + 1 for lo, hi in zip(lower, upper)
    )
    points = _node_coordinates(lower, shape, h)

    labels = np.zeros(len(points), dtype=int)
    for number, component in enumerate(components, start=1):
        labels[component.contains(points)] = number
    labels = labels.reshape(shape)

    coupled, fractions = _boundary_fractions(components, points, labels, h)
    near_boundary = np.any(fractions < NODE_SNAP, axis=0)
    if near_boundary.any():
        labels[near_boundary] = 0
        coupled, fractions = _boundary_fractions(components, points, labels, h)

    mask = labels > 0
    if not mask.any():
        raise GridTooCoarseError(
            f"No grid node with spacing h={h} lies inside the domain."
        )

    return Grid(
        dim=spec.dimension,
        h=float(h),
        origin=np.array(lower, dtype=float),
        shape=shape,
        mask=mask,
        labels=labels,
        coupled=coupled,
        boundary_frac=fractions,
    )


def rasterize_components(spec: DomainSpec, h: float) -> List[Grid]:
    """One grid per connected component, each covering only its own bounding box."""
    return [rasterize(component, h) for component in spec.components()]
