import math
import pathlib

import pytest
from configsuite import ConfigSuite

from lptorsion.config_parser import (
    DEFAULT_LISTS,
    create_domain_schema,
    create_run_schema,
    inline_domain,
    load_default_corpus,
    numeric_settings,
    parse_domains,
    parse_run_config,
    write_domains,
)
from lptorsion.domains import (
    Ball,
    Cuboid,
    DisjointUnion,
    Ellipsoid,
    IntervalUnion,
    Polygon,
)
from lptorsion.functionals import NumericSettings


CONFIG_FOLDER = pathlib.Path(__file__).resolve().parent / "configs"


def test_invalid_domain_document() -> None:
    with pytest.raises(ValueError):
        parse_domains(CONFIG_FOLDER / "missing_name.yml")
    with pytest.raises(ValueError):
        parse_domains(CONFIG_FOLDER / "does_not_exist.yml")
    with pytest.raises(ValueError):
        parse_domains({"domains": [{"name": "unit", "type": "ball", "dim": "two"}]})


def test_schemas_accept_documents_without_lists() -> None:
    suite = ConfigSuite(
        {"domains": [{"name": "unit", "type": "ball", "dim": 2}]},
        create_domain_schema(),
        deduce_required=True,
    )
    assert suite.valid
    entry = suite.snapshot.domains[0]
    assert not entry.children
    assert not entry.center
    assert not entry.vertices

    suite = ConfigSuite(
        {"ps": [1], "qs": [1]}, create_run_schema(), deduce_required=True
    )
    assert suite.valid
    assert not suite.snapshot.ns
    assert not suite.snapshot.semi_axes
    assert not suite.snapshot.sequence


def test_default_corpus() -> None:
    corpus = load_default_corpus()
    assert list(corpus) == [
        "unit_interval",
        "two_intervals",
        "unit_disk",
        "ellipse_2_1",
        "unit_square",
        "rectangle_3_1",
        "ball_cluster_n10",
    ]
    assert corpus["unit_interval"] == IntervalUnion(((0, 1),))
    assert corpus["unit_disk"] == Ball.create(2)
    assert corpus["ellipse_2_1"] == Ellipsoid((2, 1))
    assert corpus["rectangle_3_1"] == Cuboid((3, 1))
    assert len(corpus["ball_cluster_n10"].components()) == 11


def test_parse_domains_from_text_and_mapping() -> None:
    domains = parse_domains(
        """
domains:
  - name: Triangle
    type: Polygon
    vertices: [[0, 0], [1, 0], [0, 1]]
"""
    )
    assert domains == {"Triangle": Polygon(((0, 0), (1, 0), (0, 1)))}

    domains = parse_domains(
        {
            "domains": [
                {
                    "name": "pair",
                    "type": "union",
                    "children": [
                        {"type": "ball", "dim": 2},
                        {"type": "ball", "dim": 2, "center": [3, 0]},
                    ],
                }
            ]
        }
    )
    assert isinstance(domains["pair"], DisjointUnion)
    assert domains["pair"].measure() == pytest.approx(2 * math.pi)


def test_parse_domains_errors() -> None:
    with pytest.raises(ValueError, match="more than once"):
        parse_domains(
            {
                "domains": [
                    {"name": "a", "type": "ball", "dim": 2},
                    {"name": "a", "type": "ball", "dim": 3},
                ]
            }
        )
    with pytest.raises(ValueError, match="Domain 'bad'"):
        parse_domains({"domains": [{"name": "bad", "type": "ball"}]})
    with pytest.raises(ValueError, match="needs dim, p and n"):
        parse_domains(
            {"domains": [{"name": "c", "type": "ball_cluster", "dim": 2, "p": 1}]}
        )
    with pytest.raises(ValueError, match="Unknown domain type"):
        parse_domains({"domains": [{"name": "t", "type": "torus", "dim": 3}]})
    with pytest.raises(ValueError):
        parse_domains(
            {
                "domains": [
                    {
                        "name": "overlap",
                        "type": "union",
                        "children": [
                            {"type": "ball", "dim": 2},
                            {"type": "ball", "dim": 2, "center": [1, 0]},
                        ],
                    }
                ]
            }
        )


def test_write_domains_round_trip(tmp_path) -> None:
    corpus = load_default_corpus()
    filename = tmp_path / "corpus.yml"
    write_domains(corpus, filename)
    assert parse_domains(filename) == corpus


def test_write_domains_nested_union(tmp_path) -> None:
    inner = DisjointUnion((Ball.create(2), Ball.create(2, 1.0, (3, 0))))
    nested = DisjointUnion((inner, Ball.create(2, 1.0, (0, 3))))
    filename = tmp_path / "nested.yml"
    write_domains({"nested": nested}, filename)

    domains = parse_domains(filename)
    assert domains["nested"] == DisjointUnion(
        (Ball.create(2), Ball.create(2, 1.0, (3, 0)), Ball.create(2, 1.0, (0, 3)))
    )
    assert domains["nested"].measure() == pytest.approx(nested.measure())


def test_run_config_defaults() -> None:
    config = parse_run_config({})
    assert config.backend == "auto"
    assert config.h == pytest.approx(1 / 64)
    assert config.tol == pytest.approx(1e-10)
    assert config.richardson
    assert not config.jacobi
    assert list(config.ps) == DEFAULT_LISTS["ps"]
    assert list(config.qs) == [1]
    assert config.format == "csv"
    assert config.workers == 1
    assert config.m == 2
    assert config.output is None
    assert not config.ns
    assert not config.semi_axes
    assert numeric_settings(config) == NumericSettings()


def test_run_config_exponents() -> None:
    config = parse_run_config({"ps": ["1", "Inf", 2.5], "qs": 0.5})
    assert list(config.ps) == [1, math.inf, 2.5]
    assert list(config.qs) == [0.5]


def test_run_config_file_and_command_line() -> None:
    config = parse_run_config({"workers": None}, CONFIG_FOLDER / "run_config.yml")
    assert config.backend == "numeric"
    assert config.h == pytest.approx(1 / 32)
    assert list(config.ps) == [1, 2, math.inf]
    assert list(config.qs) == [0.5]
    assert config.workers == 2

    config = parse_run_config(
        {"h": 0.01, "workers": 4}, CONFIG_FOLDER / "run_config.yml"
    )
    assert config.h == pytest.approx(0.01)
    assert config.workers == 4


@pytest.mark.parametrize(
    "values",
    [
        {"h": 0},
        {"tol": -1e-8},
        {"workers": 0},
        {"backend": "fem"},
        {"format": "json"},
        {"ps": [0.5]},
        {"ns": [10, 0]},
        {"h": "fine"},
        {"colour": "blue"},
    ],
)
def test_run_config_errors(values) -> None:
    with pytest.raises(ValueError):
        parse_run_config(values)


def test_run_config_missing_file() -> None:
    with pytest.raises(ValueError):
        parse_run_config({}, CONFIG_FOLDER / "does_not_exist.yml")


def test_inline_domain() -> None:
    interval = inline_domain(parse_run_config({"domain": "Interval"}))
    assert interval == IntervalUnion(((0, 1),))
    ball = inline_domain(parse_run_config({"domain": "ball", "radius": 2}))
    assert ball == Ball.create(2, 2.0)
    assert inline_domain(parse_run_config({"domain": "cuboid", "dim": 3})) == Cuboid(
        (1, 1, 1)
    )
    assert inline_domain(
        parse_run_config({"domain": "ellipsoid", "semi_axes": [2, 1]})
    ) == Ellipsoid((2, 1))

    with pytest.raises(ValueError):
        inline_domain(parse_run_config({"domain": "polygon"}))
    with pytest.raises(ValueError):
        inline_domain(parse_run_config({"domain": "ellipsoid"}))
