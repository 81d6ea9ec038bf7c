import pathlib
from typing import Any, Dict, Optional

import yaml
from configsuite import ConfigSuite, MetaKeys as MK, types

from ..domains import DomainSpec, spec_from_dict
from ..functionals import BACKENDS, FORMATS, NumericSettings
from ..utils import P_INF
from ._config_transformations import _number_to_list, _to_exponent, _to_lower
from ._merge_configs import merge_configs

# List-valued defaults; configsuite only attaches defaults to basic types.
DEFAULT_LISTS = {"ps": [1, 1.5, 2, 4, P_INF], "qs": [1]}


def _exponent_list(description: str) -> Dict:
    return {
        MK.Type: types.List,
        MK.LayerTransformation: _number_to_list,
        MK.Description: description,
        MK.Content: {
            MK.Item: {MK.Type: types.Number, MK.Transformation: _to_exponent}
        },
    }


def _optional_list(item_type: Any, description: str) -> Dict:
    return {
        MK.Type: types.List,
        MK.LayerTransformation: _number_to_list,
        MK.Description: description,
        MK.Content: {MK.Item: {MK.Type: item_type}},
    }


def create_run_schema() -> Dict:
    """
    Returns a configsuite type schema for run configurations, where configuration value
    types are defined together with their default values.

    Returns:
        Dictionary to be used as configsuite type schema

    """
    return {
        MK.Type: types.NamedDict,
        MK.Content: {
            "domain": {
                MK.Type: types.String,
                MK.AllowNone: True,
                MK.Transformation: _to_lower,
                MK.Description: "Type of a single inline domain",
            },
            "dim": {
                MK.Type: types.Integer,
                MK.AllowNone: True,
                MK.Description: "Dimension of the inline domain",
            },
            "radius": {
                MK.Type: types.Number,
                MK.AllowNone: True,
                MK.Description: "Radius of an inline ball",
            },
            "semi_axes": _optional_list(
                types.Number, "Semi-axes of an inline ellipsoid"
            ),
            "sides": _optional_list(types.Number, "Side lengths of an inline cuboid"),
            "corpus": {
                MK.Type: types.String,
                MK.AllowNone: True,
                MK.Description: "Domain document; the built-in corpus if not given",
            },
            "backend": {
                MK.Type: types.String,
                MK.Transformation: _to_lower,
                MK.Default: "auto",
                MK.Description: f"Evaluation backend, one of {', '.join(BACKENDS)}",
            },
            "h": {
                MK.Type: types.Number,
                MK.Default: 1.0 / 64,
                MK.Description: "Grid spacing of the numeric backend",
            },
            "tol": {
                MK.Type: types.Number,
                MK.Default: 1e-10,
                MK.Description: "Relative tolerance of the iterative solvers",
            },
            "richardson": {
                MK.Type: types.Bool,
                MK.Default: True,
                MK.Description: "Extrapolate numeric results from spacings h and h/2",
            },
            "jacobi": {
                MK.Type: types.Bool,
                MK.Default: False,
                MK.Description: "Jacobi preconditioning of conjugate gradients",
            },
            "ps": _exponent_list("Exponents p (inf allowed)"),
            "qs": _exponent_list("Eigenvalue exponents q"),
            "output": {
                MK.Type: types.String,
                MK.AllowNone: True,
                MK.Description: "Output file",
            },
            "format": {
                MK.Type: types.String,
                MK.Transformation: _to_lower,
                MK.Default: "csv",
                MK.Description: f"Output format, one of {', '.join(FORMATS)}",
            },
            "workers": {
                MK.Type: types.Integer,
                MK.Default: 1,
                MK.Description: "Number of worker processes for corpus runs",
            },
            "family": {
                MK.Type: types.String,
                MK.AllowNone: True,
                MK.Transformation: _to_lower,
                MK.Description: "Extremal sequence family: ball_cluster or equal_balls",
            },
            "ns": _optional_list(types.Integer, "Sequence indices n"),
            "m": {
                MK.Type: types.Integer,
                MK.Default: 2,
                MK.Description: "Dimension of sequence domains",
            },
            "sequence": _optional_list(
                types.Integer, "Sequence indices n for the equal-balls growth columns"
            ),
            "dump_field": {
                MK.Type: types.String,
                MK.AllowNone: True,
                MK.Description: "File to write the fine-grid torsion field to",
            },
            "verbose": {
                MK.Type: types.Bool,
                MK.Default: False,
                MK.Description: "Print progress information",
            },
        },
    }


def parse_run_config(
    cli_values: Dict[str, Any], config_file: Optional[pathlib.Path] = None
) -> ConfigSuite.snapshot:
    """
    Merges the optional YAML configuration file with the command-line values (the
    latter win), populates defaults and checks the values.

    Args:
        cli_values: Values given on the command line; None means not given.
        config_file: Optional YAML file with run configuration values.

    Returns:
        Parsed config, where values can be extracted like e.g. 'config.h'.

    """
    input_config: Dict[str, Any] = dict(DEFAULT_LISTS)
    if config_file is not None:
        if not config_file.is_file():
            raise ValueError(f"The configuration file {config_file} does not exist.")
        file_values = yaml.safe_load(config_file.read_text()) or {}
        input_config = merge_configs(input_config, file_values)
    input_config = merge_configs(input_config, cli_values)

    suite = ConfigSuite(input_config, create_run_schema(), deduce_required=True)
    if not suite.valid:
        raise ValueError(
            "The configuration is not valid:"
            + ", ".join([error.msg for error in suite.errors])
        )

    config = suite.snapshot
    if not config.h > 0:
        raise ValueError(
            f"The grid spacing h must be strictly positive, got {config.h}."
        )
    if not config.tol > 0:
        raise ValueError(
            f"The tolerance tol must be strictly positive, got {config.tol}."
        )
    if config.workers < 1:
        raise ValueError(
            f"The number of workers must be at least 1, got {config.workers}."
        )
    if config.backend not in BACKENDS:
        raise ValueError(
            f"Unknown backend '{config.backend}', choose one of {', '.join(BACKENDS)}."
        )
    if config.format not in FORMATS:
        raise ValueError(
            f"Unknown output format '{config.format}', "
            f"choose one of {', '.join(FORMATS)}."
        )
    for p in config.ps:
        if not p >= 1:
            raise ValueError(f"The exponent p must be at least 1 or inf, got {p}.")
    if any(n < 1 for n in config.ns):
        raise ValueError("The sequence indices n must be positive integers.")
    return config


def numeric_settings(config: ConfigSuite.snapshot) -> NumericSettings:
    return NumericSettings(
        h=config.h, tol=config.tol, richardson=config.richardson, jacobi=config.jacobi
    )


def inline_domain(config: ConfigSuite.snapshot) -> DomainSpec:
    """
    Builds the single domain described by the domain, dim, radius, semi_axes and sides
    values; intervals and cuboids default to unit size.

    Args:
        config: Parsed run configuration.

    Returns:
        DomainSpec

    """
    entry: Dict[str, Any] = {"type": config.domain, "dim": config.dim}
    if config.domain in ("interval", "intervals"):
        entry["intervals"] = [[0.0, 1.0]]
    elif config.domain == "ball":
        entry["dim"] = config.dim or 2
        entry["radius"] = config.radius
    elif config.domain == "ellipsoid":
        entry["semi_axes"] = config.semi_axes
    elif config.domain == "cuboid":
        entry["sides"] = config.sides or [1.0] * (config.dim or 2)
    else:
        raise ValueError(
            f"The domain type '{config.domain}' can not be given inline; "
            "use a domain document with --corpus."
        )
    return spec_from_dict(entry)
