from typing import Any, Dict, List, Mapping

from ._domain_spec import (
    Ball,
    Cuboid,
    DisjointUnion,
    DomainSpec,
    Ellipsoid,
    IntervalUnion,
    Polygon,
)

DOMAIN_TYPES = (
    "interval",
    "intervals",
    "ball",
    "ellipsoid",
    "cuboid",
    "polygon",
    "union",
)


def spec_to_dict(spec: DomainSpec) -> Dict[str, Any]:
    """
    Domain document entry describing spec; spec_from_dict inverts it. Members of
    nested unions are written as children of the outermost union, which describes the
    same set.

    Args:
        spec: Domain to describe.

    Returns:
        Dictionary with the "type" and "dim" keys and the geometric fields of the type.

    """
    data: Dict[str, Any] = {"dim": spec.dimension}
    if isinstance(spec, IntervalUnion):
        data["type"] = "intervals"
        data["intervals"] = [[a, b] for a, b in spec.intervals]
    elif isinstance(spec, Ball):
        data.update(type="ball", radius=spec.radius, center=list(spec.center))
    elif isinstance(spec, Ellipsoid):
        data.update(
            type="ellipsoid", semi_axes=list(spec.semi_axes), center=list(spec.center)
        )
    elif isinstance(spec, Cuboid):
        data.update(type="cuboid", sides=list(spec.sides), corner=list(spec.corner))
    elif isinstance(spec, Polygon):
        data.update(type="polygon", vertices=[list(vertex) for vertex in spec.vertices])
    elif isinstance(spec, DisjointUnion):
        children = [spec_to_dict(member) for member in _flat_members(spec)]
        data.update(type="union", children=children)
    else:
        raise TypeError(f"No document representation for {type(spec).__name__}.")
    return data


def _flat_members(union: DisjointUnion) -> List[DomainSpec]:
    members: List[DomainSpec] = []
    for member in union.members:
        if isinstance(member, DisjointUnion):
            members.extend(_flat_members(member))
        else:
            members.append(member)
    return members


def _require(entry: Mapping[str, Any], *keys: str):
    missing = [key for key in keys if entry.get(key) in (None, (), [])]
    if missing:
        raise ValueError(
            f"A domain of type '{entry.get('type')}' needs the field(s) "
            f"{', '.join(missing)}."
        )


def _check_dim(entry: Mapping[str, Any], spec: DomainSpec) -> DomainSpec:
    dim = entry.get("dim")
    if dim is not None and dim != spec.dimension:
        raise ValueError(
            f"The domain of type '{entry['type']}' has dimension {spec.dimension}, "
            f"but dim = {dim} was given."
        )
    return spec


def spec_from_dict(entry: Mapping[str, Any]) -> DomainSpec:
    """
    Builds a domain from a document entry.

    Args:
        entry: Mapping with a "type" in DOMAIN_TYPES and the fields of that type.

    Returns:
        DomainSpec

    Raises:
        ValueError: For unknown types, missing fields and invalid geometry.

    """
    kind = entry.get("type")
    if kind in ("interval", "intervals"):
        _require(entry, "intervals")
        if kind == "interval" and len(entry["intervals"]) != 1:
            raise ValueError("A domain of type 'interval' takes exactly one interval.")
        intervals = tuple(tuple(pair) for pair in entry["intervals"])
        spec: DomainSpec = IntervalUnion(intervals)
    elif kind == "ball":
        _require(entry, "dim")
        spec = Ball.create(
            entry["dim"],
            1.0 if entry.get("radius") is None else entry["radius"],
            entry.get("center") or (),
        )
    elif kind == "ellipsoid":
        _require(entry, "semi_axes")
        spec = Ellipsoid(tuple(entry["semi_axes"]), tuple(entry.get("center") or ()))
    elif kind == "cuboid":
        _require(entry, "sides")
        spec = Cuboid(tuple(entry["sides"]), tuple(entry.get("corner") or ()))
    elif kind == "polygon":
        _require(entry, "vertices")
        spec = Polygon(tuple(tuple(vertex) for vertex in entry["vertices"]))
    elif kind == "union":
        _require(entry, "children")
        members = tuple(spec_from_dict(child) for child in entry["children"])
        spec = DisjointUnion(members)
    else:
        raise ValueError(
            f"Unknown domain type '{kind}', choose one of {', '.join(DOMAIN_TYPES)}."
        )
    return _check_dim(entry, spec)
