import abc
import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np
from matplotlib.path import Path

from ..specialfn import ball_volume
from ..utils.constants import BOUNDARY_SNAP
from ..utils.raytracing import ray_segment_fractions
from ..utils.types import Interval, Point


class DomainSpec(abc.ABC):
    """The abstract base class for symbolic domain descriptions.

    Every class inheriting this abstract base class is an immutable value describing an
    open set of finite measure in R^m. Disjoint unions are expressed by IntervalUnion in
    one dimension and by DisjointUnion in general.

    """

    @property
    @abc.abstractmethod
    def dimension(self) -> int:
        """Dimension m of the ambient space."""

    @abc.abstractmethod
    def measure(self) -> float:
        """Exact Lebesgue measure."""

    @abc.abstractmethod
    def scale(self, alpha: float) -> "DomainSpec":
        """Homothety x -> alpha * x."""

    @abc.abstractmethod
    def translate(self, offset: Point) -> "DomainSpec":
        """Translation x -> x + offset."""

    @abc.abstractmethod
    def bounding_box(self) -> Tuple[np.ndarray, np.ndarray]:
        """Lower and upper corner of the smallest axis-aligned box around the domain."""

    @abc.abstractmethod
    def contains(self, points: np.ndarray) -> np.ndarray:
        """Boolean mask of the (N x m) points lying in the open set."""

    def components(self) -> List["DomainSpec"]:
        """Connected primitive pieces; a primitive is its own single component."""
        return [self]

    @property
    def is_convex(self) -> bool:
        return len(self.components()) == 1

    def min_feature(self) -> float:
        """Smallest width of the domain along a coordinate axis."""
        lower, upper = self.bounding_box()
        return float(np.min(upper - lower))

    def boundary_samples(self, n: int = 256) -> np.ndarray:
        """(n x m) points on the boundary, used by sampled disjointness tests."""
        raise NotImplementedError(
            f"Boundary sampling is not implemented for {type(self).__name__}."
        )

    def axis_distance(
        self, points: np.ndarray, axis: int, direction: int
    ) -> np.ndarray:
        """
        Distance from interior points to the boundary along x + t * direction * e_axis.

        Args:
            points: (N x m) points inside the domain.
            axis: Coordinate axis of the ray.
            direction: +1 or -1.

        Returns:
            (N,) array of positive distances (inf if the ray never leaves the domain).

        """
        raise NotImplementedError(
            f"Ray distances are not implemented for {type(self).__name__}."
        )


def _as_tuple(values: Sequence[float]) -> Tuple[float, ...]:
    return tuple(float(value) for value in values)


def _as_points(points: np.ndarray, dimension: int) -> np.ndarray:
    array = np.asarray(points, dtype=float)
    if array.ndim == 1:
        array = array.reshape(-1, dimension)
    if array.shape[1] != dimension:
        raise ValueError(
            f"Points of dimension {array.shape[1]} given for a domain of "
            f"dimension {dimension}."
        )
    return array


@dataclass(frozen=True)
class IntervalUnion(DomainSpec):
    """Finite union of disjoint open intervals on the real line."""

    intervals: Tuple[Interval, ...]

    def __post_init__(self):
        intervals = tuple(sorted((float(a), float(b)) for a, b in self.intervals))
        if not intervals:
            raise ValueError("An interval union needs at least one interval.")
        for a, b in intervals:
            if not a < b:
                raise ValueError(
                    f"Interval endpoints must be strictly ordered, got ({a}, {b})."
                )
        for (_, b_left), (a_right, _) in zip(intervals[:-1], intervals[1:]):
            if a_right < b_left:
                raise ValueError("The intervals of an interval union must be disjoint.")
        object.__setattr__(self, "intervals", intervals)

    @property
    def dimension(self) -> int:
        return 1

    def measure(self) -> float:
        return float(sum(b - a for a, b in self.intervals))

    def scale(self, alpha: float) -> "IntervalUnion":
        _check_alpha(alpha)
        return IntervalUnion(tuple((alpha * a, alpha * b) for a, b in self.intervals))

    def translate(self, offset: Point) -> "IntervalUnion":
        (shift,) = _as_tuple(offset)
        return IntervalUnion(tuple((a + shift, b + shift) for a, b in self.intervals))

    def bounding_box(self) -> Tuple[np.ndarray, np.ndarray]:
        return (
            np.array([self.intervals[0][0]]),
            np.array([max(b for _, b in self.intervals)]),
        )

    def contains(self, points: np.ndarray) -> np.ndarray:
        x = _as_points(points, 1)[:, 0]
        inside = np.zeros(x.shape, dtype=bool)
        for a, b in self.intervals:
            inside |= (x > a) & (x < b)
        return inside

    def components(self) -> List[DomainSpec]:
        return [IntervalUnion(((a, b),)) for a, b in self.intervals]

    def min_feature(self) -> float:
        return min(b - a for a, b in self.intervals)

    def boundary_samples(self, n: int = 256) -> np.ndarray:
        return np.array([[value] for interval in self.intervals for value in interval])

    def axis_distance(
        self, points: np.ndarray, axis: int, direction: int
    ) -> np.ndarray:
        x = _as_points(points, 1)[:, 0]
        distance = np.full(x.shape, np.inf)
        for a, b in self.intervals:
            inside = (x > a) & (x < b)
            distance[inside] = (b - x[inside]) if direction > 0 else (x[inside] - a)
        return distance

    @property
    def half_lengths(self) -> List[float]:
        return [0.5 * (b - a) for a, b in self.intervals]


@dataclass(frozen=True)
class Ellipsoid(DomainSpec):
    """Axis-parallel ellipsoid sum((x_i - c_i)^2 / a_i^2) < 1."""

    semi_axes: Tuple[float, ...]
    center: Tuple[float, ...] = ()

    def __post_init__(self):
        semi_axes = _as_tuple(self.semi_axes)
        center = _as_tuple(self.center) if len(self.center) else (0.0,) * len(semi_axes)
        if not semi_axes:
            raise ValueError("An ellipsoid needs at least one semi-axis.")
        if min(semi_axes) <= 0:
            raise ValueError(f"Semi-axes must be strictly positive, got {semi_axes}.")
        if len(center) != len(semi_axes):
            raise ValueError("Center and semi-axes must have the same dimension.")
        object.__setattr__(self, "semi_axes", semi_axes)
        object.__setattr__(self, "center", center)

    @property
    def dimension(self) -> int:
        return len(self.semi_axes)

    def measure(self) -> float:
        return ball_volume(self.dimension) * math.prod(self.semi_axes)

    def scale(self, alpha: float) -> "Ellipsoid":
        _check_alpha(alpha)
        return Ellipsoid(
            tuple(alpha * a for a in self.semi_axes),
            tuple(alpha * c for c in self.center),
        )

    def translate(self, offset: Point) -> "Ellipsoid":
        return Ellipsoid(
            self.semi_axes, tuple(c + o for c, o in zip(self.center, _as_tuple(offset)))
        )

    def bounding_box(self) -> Tuple[np.ndarray, np.ndarray]:
        center, axes = np.array(self.center), np.array(self.semi_axes)
        return center - axes, center + axes

    def contains(self, points: np.ndarray) -> np.ndarray:
        x = _as_points(points, self.dimension)
        return self.level(x) < 1.0

    def level(self, points: np.ndarray) -> np.ndarray:
        """sum(((x - c) / a)^2) for each point; < 1 inside."""
        x = _as_points(points, self.dimension)
        normalized = (x - np.array(self.center)) / np.array(self.semi_axes)
        return np.sum(normalized ** 2, axis=1)

    def min_feature(self) -> float:
        return 2 * min(self.semi_axes)

    def boundary_samples(self, n: int = 256) -> np.ndarray:
        if self.dimension == 1:
            lower, upper = self.bounding_box()
            return np.array([lower, upper])
        if self.dimension == 2:
            angle = np.linspace(0, 2 * np.pi, n, endpoint=False)
            return np.column_stack(
                [
                    self.center[0] + self.semi_axes[0] * np.cos(angle),
                    self.center[1] + self.semi_axes[1] * np.sin(angle),
                ]
            )
        rng = np.random.default_rng(0)
        directions = rng.normal(size=(n, self.dimension))
        directions /= np.linalg.norm(directions, axis=1)[:, None]
        return np.array(self.center) + directions * np.array(self.semi_axes)

    def axis_distance(
        self, points: np.ndarray, axis: int, direction: int
    ) -> np.ndarray:
        x = _as_points(points, self.dimension)
        a = self.semi_axes[axis]
        offset = x[:, axis] - self.center[axis]
        others = [i for i in range(self.dimension) if i != axis]
        # Remaining budget of the level set once the other coordinates are fixed.
        center, semi_axes = np.array(self.center), np.array(self.semi_axes)
        rest = 1.0 - np.sum(
            ((x[:, others] - center[others]) / semi_axes[others]) ** 2, axis=1
        )
        reach = a * np.sqrt(np.clip(rest, 0.0, None))
        return reach - direction * offset


@dataclass(frozen=True)
class Ball(Ellipsoid):
    """Ball of the given radius; an ellipsoid with equal semi-axes."""

    semi_axes: Tuple[float, ...] = ()
    center: Tuple[float, ...] = ()
    radius: float = 1.0
    m: int = 0

    def __post_init__(self):
        m = int(self.m) if self.m else (len(self.center) or len(self.semi_axes) or 0)
        if m < 1:
            raise ValueError("The dimension of a ball must be at least 1.")
        if self.radius <= 0:
            raise ValueError(
                f"The radius must be strictly positive, got {self.radius}."
            )
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "radius", float(self.radius))
        object.__setattr__(self, "semi_axes", (float(self.radius),) * m)
        super().__post_init__()

    @classmethod
    def create(
        cls, m: int, radius: float = 1.0, center: Sequence[float] = ()
    ) -> "Ball":
        return cls(center=_as_tuple(center), radius=radius, m=m)

    def scale(self, alpha: float) -> "Ball":
        _check_alpha(alpha)
        center = tuple(alpha * c for c in self.center)
        return Ball.create(self.m, alpha * self.radius, center)

    def translate(self, offset: Point) -> "Ball":
        center = tuple(c + o for c, o in zip(self.center, _as_tuple(offset)))
        return Ball.create(self.m, self.radius, center)


@dataclass(frozen=True)
class Cuboid(DomainSpec):
    """Axis-parallel open box with the given side lengths and lower corner."""

    sides: Tuple[float, ...]
    corner: Tuple[float, ...] = ()

    def __post_init__(self):
        sides = _as_tuple(self.sides)
        corner = _as_tuple(self.corner) if len(self.corner) else (0.0,) * len(sides)
        if not sides:
            raise ValueError("A cuboid needs at least one side length.")
        if min(sides) <= 0:
            raise ValueError(f"Side lengths must be strictly positive, got {sides}.")
        if len(corner) != len(sides):
            raise ValueError("Corner and side lengths must have the same dimension.")
        object.__setattr__(self, "sides", sides)
        object.__setattr__(self, "corner", corner)

    @property
    def dimension(self) -> int:
        return len(self.sides)

    def measure(self) -> float:
        return math.prod(self.sides)

    def scale(self, alpha: float) -> "Cuboid":
        _check_alpha(alpha)
        return Cuboid(
            tuple(alpha * s for s in self.sides), tuple(alpha * c for c in self.corner)
        )

    def translate(self, offset: Point) -> "Cuboid":
        corner = tuple(c + o for c, o in zip(self.corner, _as_tuple(offset)))
        return Cuboid(self.sides, corner)

    def bounding_box(self) -> Tuple[np.ndarray, np.ndarray]:
        corner = np.array(self.corner)
        return corner, corner + np.array(self.sides)

    def contains(self, points: np.ndarray) -> np.ndarray:
        x = _as_points(points, self.dimension)
        lower, upper = self.bounding_box()
        return np.all((x > lower) & (x < upper), axis=1)

    def boundary_samples(self, n: int = 256) -> np.ndarray:
        lower, upper = self.bounding_box()
        if self.dimension == 1:
            return np.array([lower, upper])
        rng = np.random.default_rng(0)
        samples = lower + rng.random((n, self.dimension)) * (upper - lower)
        faces = rng.integers(0, self.dimension, n)
        sides = rng.integers(0, 2, n).astype(bool)
        samples[np.arange(n), faces] = np.where(sides, upper[faces], lower[faces])
        return samples

    def axis_distance(
        self, points: np.ndarray, axis: int, direction: int
    ) -> np.ndarray:
        x = _as_points(points, self.dimension)
        lower, upper = self.bounding_box()
        if direction > 0:
            return upper[axis] - x[:, axis]
        return x[:, axis] - lower[axis]


@dataclass(frozen=True)
class Polygon(DomainSpec):
    """Simple planar polygon given by its vertex loop (stored counter-clockwise)."""

    vertices: Tuple[Tuple[float, float], ...]

    def __post_init__(self):
        vertices = tuple((float(x), float(y)) for x, y in self.vertices)
        if len(vertices) > 1 and vertices[0] == vertices[-1]:
            vertices = vertices[:-1]
        if len(vertices) < 3:
            raise ValueError("A polygon needs at least three vertices.")
        area = _signed_area(vertices)
        if abs(area) <= 0:
            raise ValueError("The polygon has zero area.")
        if area < 0:
            vertices = vertices[::-1]
        if not _is_simple(vertices):
            raise ValueError("The polygon is self-intersecting.")
        object.__setattr__(self, "vertices", vertices)

    @property
    def dimension(self) -> int:
        return 2

    def measure(self) -> float:
        return abs(_signed_area(self.vertices))

    def scale(self, alpha: float) -> "Polygon":
        _check_alpha(alpha)
        return Polygon(tuple((alpha * x, alpha * y) for x, y in self.vertices))

    def translate(self, offset: Point) -> "Polygon":
        dx, dy = _as_tuple(offset)
        return Polygon(tuple((x + dx, y + dy) for x, y in self.vertices))

    def bounding_box(self) -> Tuple[np.ndarray, np.ndarray]:
        vertices = np.array(self.vertices)
        return vertices.min(axis=0), vertices.max(axis=0)

    @property
    def edges(self) -> List[Tuple[Tuple[float, float], Tuple[float, float]]]:
        return list(zip(self.vertices, self.vertices[1:] + self.vertices[:1]))

    def contains(self, points: np.ndarray) -> np.ndarray:
        x = _as_points(points, 2)
        inside = Path(np.array(self.vertices)).contains_points(x)
        return inside & (self.edge_distance(x) > BOUNDARY_SNAP)

    def edge_distance(self, points: np.ndarray) -> np.ndarray:
        """Euclidean distance from each point to the polygon boundary."""
        x = _as_points(points, 2)
        distance = np.full(len(x), np.inf)
        for start, end in self.edges:
            start, end = np.array(start), np.array(end)
            edge = end - start
            t = np.clip((x - start) @ edge / (edge @ edge), 0.0, 1.0)
            nearest = start + t[:, None] * edge
            distance = np.minimum(distance, np.linalg.norm(x - nearest, axis=1))
        return distance

    @property
    def is_convex(self) -> bool:
        vertices = np.array(self.vertices)
        edge = np.roll(vertices, -1, axis=0) - vertices
        following = np.roll(edge, -1, axis=0)
        cross = edge[:, 0] * following[:, 1] - edge[:, 1] * following[:, 0]
        return bool(np.all(cross >= 0))

    def boundary_samples(self, n: int = 256) -> np.ndarray:
        per_edge = max(2, n // len(self.vertices))
        fractions = np.linspace(0, 1, per_edge, endpoint=False)
        return np.vstack(
            [
                np.array(start) + fractions[:, None] * (np.array(end) - np.array(start))
                for start, end in self.edges
            ]
        )

    def axis_distance(
        self, points: np.ndarray, axis: int, direction: int
    ) -> np.ndarray:
        x = _as_points(points, 2)
        lower, upper = self.bounding_box()
        reach = float(np.max(upper - lower)) * 2
        step = np.zeros(2)
        step[axis] = direction * reach
        vertices = np.array(self.vertices)
        fractions = ray_segment_fractions(
            x, x + step, vertices, np.roll(vertices, -1, axis=0)
        )
        return np.where(np.isnan(fractions), np.inf, fractions * reach).min(axis=1)


@dataclass(frozen=True)
class DisjointUnion(DomainSpec):
    """Union of pairwise disjoint domains of equal dimension."""

    members: Tuple[DomainSpec, ...]

    def __post_init__(self):
        # pylint: disable=import-outside-toplevel
        from ._disjoint import check_disjoint

        members = tuple(self.members)
        if not members:
            raise ValueError("A disjoint union needs at least one member.")
        if len({member.dimension for member in members}) != 1:
            raise ValueError(
                "All members of a disjoint union must have the same dimension."
            )
        if not check_disjoint(list(members)):
            raise ValueError("The members of the union are not pairwise disjoint.")
        object.__setattr__(self, "members", members)

    @property
    def dimension(self) -> int:
        return self.members[0].dimension

    def measure(self) -> float:
        return float(sum(member.measure() for member in self.members))

    def scale(self, alpha: float) -> "DisjointUnion":
        _check_alpha(alpha)
        return DisjointUnion(tuple(member.scale(alpha) for member in self.members))

    def translate(self, offset: Point) -> "DisjointUnion":
        return DisjointUnion(tuple(member.translate(offset) for member in self.members))

    def bounding_box(self) -> Tuple[np.ndarray, np.ndarray]:
        boxes = [member.bounding_box() for member in self.members]
        return (
            np.min([lower for lower, _ in boxes], axis=0),
            np.max([upper for _, upper in boxes], axis=0),
        )

    def contains(self, points: np.ndarray) -> np.ndarray:
        x = _as_points(points, self.dimension)
        inside = np.zeros(len(x), dtype=bool)
        for member in self.members:
            inside |= member.contains(x)
        return inside

    def components(self) -> List[DomainSpec]:
        return [piece for member in self.members for piece in member.components()]

    def min_feature(self) -> float:
        return min(member.min_feature() for member in self.members)

    @property
    def is_convex(self) -> bool:
        pieces = self.components()
        return len(pieces) == 1 and pieces[0].is_convex


def _check_alpha(alpha: float):
    if alpha <= 0:
        raise ValueError(
            f"The homothety factor must be strictly positive, got {alpha}."
        )


def _signed_area(vertices: Sequence[Tuple[float, float]]) -> float:
    """Shoelace formula; positive for counter-clockwise loops."""
    x, y = np.array(vertices).T
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))


def _segments_intersect(p1, p2, q1, q2) -> bool:
    def orientation(a, b, c) -> float:
        return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])

    def on_segment(a, b, c) -> bool:
        return all(min(a[i], b[i]) <= c[i] <= max(a[i], b[i]) for i in range(2))

    d1, d2 = orientation(q1, q2, p1), orientation(q1, q2, p2)
    d3, d4 = orientation(p1, p2, q1), orientation(p1, p2, q2)
    if ((d1 > 0 > d2) or (d1 < 0 < d2)) and ((d3 > 0 > d4) or (d3 < 0 < d4)):
        return True
    return (
        (d1 == 0 and on_segment(q1, q2, p1))
        or (d2 == 0 and on_segment(q1, q2, p2))
        or (d3 == 0 and on_segment(p1, p2, q1))
        or (d4 == 0 and on_segment(p1, p2, q2))
    )


def _segments_cross(p1, p2, q1, q2) -> bool:
    """True if the segments cross at a point interior to both."""

    def orientation(a, b, c) -> float:
        return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])

    d1, d2 = orientation(q1, q2, p1), orientation(q1, q2, p2)
    d3, d4 = orientation(p1, p2, q1), orientation(p1, p2, q2)
    return d1 * d2 < 0 and d3 * d4 < 0


def _is_simple(vertices: Sequence[Tuple[float, float]]) -> bool:
    edges = list(zip(vertices, tuple(vertices[1:]) + tuple(vertices[:1])))
    n_edges = len(edges)
    for i in range(n_edges):
        for j in range(i + 1, n_edges):
            if j == i + 1 or (i == 0 and j == n_edges - 1):
                continue
            if _segments_intersect(*edges[i], *edges[j]):
                return False
    return True


def measure(spec: DomainSpec) -> float:
    """Exact Lebesgue measure of a domain."""
    return spec.measure()


def scale(spec: DomainSpec, alpha: float) -> DomainSpec:
    """Homothety alpha * spec; measure(scale(s, alpha)) = alpha^m * measure(s)."""
    return spec.scale(alpha)
