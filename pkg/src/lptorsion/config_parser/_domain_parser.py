import pathlib
from typing import Any, Dict, Mapping, Union

import yaml
from configsuite import ConfigSuite, MetaKeys as MK, types

from ..constructions import ball_cluster
from ..domains import DOMAIN_TYPES, DomainSpec, spec_from_dict, spec_to_dict
from ..utils import write_atomic
from ._config_transformations import _to_lower

# Shorthand for the union of the unit ball and n balls of the optimal radius.
BALL_CLUSTER = "ball_cluster"

DEFAULT_CORPUS = (
    pathlib.Path(__file__).resolve().parent.parent / "static" / "default_corpus.yml"
)

_PRIMITIVE_FIELDS = (
    "type",
    "dim",
    "intervals",
    "radius",
    "center",
    "semi_axes",
    "sides",
    "corner",
    "vertices",
)


def _number_list(description: str) -> Dict:
    return {
        MK.Type: types.List,
        MK.Description: description,
        MK.Content: {MK.Item: {MK.Type: types.Number}},
    }


def _point_list(description: str) -> Dict:
    return {
        MK.Type: types.List,
        MK.Description: description,
        MK.Content: {
            MK.Item: {
                MK.Type: types.List,
                MK.Content: {MK.Item: {MK.Type: types.Number}},
            }
        },
    }


def _primitive_content() -> Dict:
    return {
        "type": {
            MK.Type: types.String,
            MK.Transformation: _to_lower,
            MK.Description: f"Domain type, one of {', '.join(DOMAIN_TYPES)} or "
            f"{BALL_CLUSTER}",
        },
        "dim": {
            MK.Type: types.Integer,
            MK.AllowNone: True,
            MK.Description: "Space dimension",
        },
        "intervals": _point_list("Intervals [a, b] of an interval union"),
        "radius": {
            MK.Type: types.Number,
            MK.AllowNone: True,
            MK.Description: "Radius of a ball (default 1)",
        },
        "center": _number_list("Center of a ball or an ellipsoid (default origin)"),
        "semi_axes": _number_list("Semi-axes of an ellipsoid"),
        "sides": _number_list("Side lengths of a cuboid"),
        "corner": _number_list("Lower corner of a cuboid (default origin)"),
        "vertices": _point_list("Vertex loop [x, y] of a polygon"),
    }


def create_domain_schema() -> Dict:
    """
    Returns a configsuite type schema for domain documents: a list of named domains,
    each a primitive, a union of primitives or a ball_cluster construction.

    Returns:
        Dictionary to be used as configsuite type schema

    """
    entry_content = _primitive_content()
    entry_content.update(
        {
            "name": {
                MK.Type: types.String,
                MK.Description: "Label of the domain in reports",
            },
            "children": {
                MK.Type: types.List,
                MK.Description: "Members of a union",
                MK.Content: {
                    MK.Item: {
                        MK.Type: types.NamedDict,
                        MK.Content: _primitive_content(),
                    }
                },
            },
            "p": {
                MK.Type: types.Number,
                MK.AllowNone: True,
                MK.Description: f"Exponent p of a {BALL_CLUSTER} domain",
            },
            "n": {
                MK.Type: types.Integer,
                MK.AllowNone: True,
                MK.Description: f"Number of small balls of a {BALL_CLUSTER} domain",
            },
        }
    )
    return {
        MK.Type: types.NamedDict,
        MK.Content: {
            "domains": {
                MK.Type: types.List,
                MK.Content: {
                    MK.Item: {MK.Type: types.NamedDict, MK.Content: entry_content}
                },
            },
        },
    }


def _entry_to_dict(entry: Any) -> Dict[str, Any]:
    data = {key: getattr(entry, key) for key in _PRIMITIVE_FIELDS}
    if getattr(entry, "children", ()):
        data["children"] = [_entry_to_dict(child) for child in entry.children]
    return data


def _build_domain(entry: Any) -> DomainSpec:
    if entry.type == BALL_CLUSTER:
        if entry.dim is None or entry.p is None or entry.n is None:
            raise ValueError(
                f"A domain of type '{BALL_CLUSTER}' needs dim, p and n."
            )
        return ball_cluster(entry.dim, entry.p, entry.n)
    return spec_from_dict(_entry_to_dict(entry))


def parse_domains(
    document: Union[pathlib.Path, str, Mapping]
) -> Dict[str, DomainSpec]:
    """
    Parses a domain document, validates it and builds the domains it describes.

    Args:
        document: Path to a YAML file, YAML text or an already loaded document.

    Returns:
        Domains keyed by their name, in document order.

    Raises:
        ValueError: If the document is not valid or describes an invalid domain.

    """
    if isinstance(document, pathlib.Path):
        if not document.is_file():
            raise ValueError(f"The domain document {document} does not exist.")
        input_document = yaml.safe_load(document.read_text())
    elif isinstance(document, str):
        input_document = yaml.safe_load(document)
    else:
        input_document = document

    suite = ConfigSuite(input_document, create_domain_schema(), deduce_required=True)
    if not suite.valid:
        raise ValueError(
            "The domain document is not valid:"
            + ", ".join([error.msg for error in suite.errors])
        )

    domains: Dict[str, DomainSpec] = {}
    for entry in suite.snapshot.domains:
        if entry.name in domains:
            raise ValueError(
                f"The domain name '{entry.name}' is used more than once."
            )
        try:
            domains[entry.name] = _build_domain(entry)
        except ValueError as error:
            raise ValueError(f"Domain '{entry.name}': {error}") from error
    return domains


def load_default_corpus() -> Dict[str, DomainSpec]:
    """Built-in verification corpus shipped with the package."""
    return parse_domains(DEFAULT_CORPUS)


def write_domains(
    domains: Mapping[str, DomainSpec], filename: Union[pathlib.Path, str]
):
    """
    Writes domains as a domain document that parse_domains reads back; nested
    unions come back as a single union of their members.

    Args:
        domains: Domains keyed by name.
        filename: Output path.

    Returns:
        Nothing

    """
    document = {
        "domains": [
            {"name": name, **spec_to_dict(spec)} for name, spec in domains.items()
        ]
    }
    write_atomic(yaml.safe_dump(document, sort_keys=False), filename)
