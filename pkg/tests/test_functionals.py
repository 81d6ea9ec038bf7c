import math

import pandas as pd
import pytest
import yaml
from hypothesis import given, strategies as st

from lptorsion.domains import Ball, Ellipsoid, IntervalUnion, Polygon
from lptorsion.functionals import (
    REPORT_COLUMNS,
    NumericSettings,
    evaluate,
    f_p,
    f_pq,
    format_p,
    measure_exponent,
    render_reports,
    report_to_dict,
    reports_frame,
    write_reports,
)
from lptorsion.utils import P_INF, UnsupportedDomainError

UNIT_INTERVAL = IntervalUnion(((0, 1),))
TRIANGLE = Polygon(((0, 0), (1, 0), (0, 1)))


def test_f_p() -> None:
    assert f_p(1 / 12, math.pi ** 2, 1.0, 1) == pytest.approx(math.pi ** 2 / 12)
    assert f_p(math.sqrt(1 / 120), math.pi ** 2, 1.0, 2) == pytest.approx(
        math.pi ** 2 / math.sqrt(120)
    )
    # The measure does not enter for p = inf.
    assert f_p(0.125, math.pi ** 2, 7.0, P_INF) == pytest.approx(math.pi ** 2 / 8)


def test_f_pq() -> None:
    assert f_pq(1 / 12, math.pi ** 2, 1.0, 1, 1, 1) == pytest.approx(
        f_p(1 / 12, math.pi ** 2, 1.0, 1)
    )
    assert f_pq(2.0, 4.0, 9.0, 1, 0.5, 2) == pytest.approx(2.0 * 2.0 / 9.0 ** 1.5)
    assert measure_exponent(2, 1, 2) == pytest.approx(0.5)
    assert measure_exponent(P_INF, 0, 2) == pytest.approx(1.0)
    assert measure_exponent(1, 0.5, 1) == pytest.approx(2.0)


def test_formula_errors() -> None:
    with pytest.raises(ValueError):
        f_p(0.0, 1.0, 1.0, 1)
    with pytest.raises(ValueError):
        f_p(1.0, 1.0, -1.0, 1)
    with pytest.raises(ValueError):
        f_p(1.0, 1.0, 1.0, 0.5)
    with pytest.raises(ValueError):
        f_pq(1.0, 1.0, 1.0, 1, 1, 0)


@given(
    st.floats(min_value=1e-3, max_value=1e3),
    st.floats(min_value=1, max_value=10),
    st.floats(min_value=-2, max_value=2),
)
def test_f_pq_is_scale_invariant(alpha: float, p: float, q: float) -> None:
    # T_p scales like alpha^(2 + m/p), lambda_1 like alpha^-2 and |Omega| like alpha^m.
    m = 2
    tp, lambda1, measure = 0.3, 5.0, 1.7
    base = f_pq(tp, lambda1, measure, p, q, m)
    scaled = f_pq(
        tp * alpha ** (2 + m / p), lambda1 / alpha ** 2, measure * alpha ** m, p, q, m
    )
    assert scaled == pytest.approx(base, rel=1e-9)


def test_format_p() -> None:
    assert format_p(1.0) == "1"
    assert format_p(1.5) == "1.5"
    assert format_p(P_INF) == "inf"


def test_evaluate_unit_interval() -> None:
    report = evaluate(UNIT_INTERVAL, [1, 2, P_INF], [1, 0.5], label="unit_interval")
    assert report.backend == "oracle"
    assert report.settings is None
    assert not report.error_estimates
    assert report.measure == pytest.approx(1.0)
    assert report.lambda1.exact
    assert report.v_max == pytest.approx(0.125)
    assert report.tp[P_INF] == pytest.approx(0.125)
    assert report.fp[1.0] == pytest.approx((math.pi ** 2 / 12, math.pi ** 2 / 12))
    assert report.fp[2.0][0] == pytest.approx(math.pi ** 2 / math.sqrt(120))
    assert report.fp[P_INF][0] == pytest.approx(math.pi ** 2 / 8)
    assert report.fpq[(1.0, 1.0)] == pytest.approx(report.fp[1.0])
    assert report.fpq[(1.0, 0.5)][0] == pytest.approx(math.pi / 12)
    assert len(report.fpq) == 6


def test_evaluate_disk_and_ball() -> None:
    disk = evaluate(Ball.create(2), [1])
    assert disk.tp[1.0] == pytest.approx(math.pi / 8)
    assert disk.fp[1.0][0] == pytest.approx(5.783185962947 / 8, rel=1e-9)

    ball = evaluate(Ball.create(3), [1])
    assert ball.tp[1.0] == pytest.approx(4 * math.pi / 45)
    assert ball.lambda1.lower == pytest.approx(math.pi ** 2)


def test_evaluate_is_scale_invariant() -> None:
    disk = Ball.create(2)
    base = evaluate(disk, [1, 3, P_INF], [1, 0.5])
    scaled = evaluate(disk.scale(3.0), [1, 3, P_INF], [1, 0.5])
    for key, value in base.fpq.items():
        assert scaled.fpq[key] == pytest.approx(value, rel=1e-9)


def test_evaluate_ellipse_bracket() -> None:
    report = evaluate(Ellipsoid((2.0, 1.0)), [1, 2])
    assert not report.lambda1.exact
    lower, upper = report.fp[1.0]
    assert lower < upper
    expected = report.tp[1.0] * report.lambda1.lower / report.measure
    assert lower == pytest.approx(expected)
    assert upper <= 1.0


def test_evaluate_numeric_interval() -> None:
    settings = NumericSettings(h=1 / 16, richardson=False)
    report = evaluate(UNIT_INTERVAL, [1, P_INF], backend="numeric", settings=settings)
    assert report.backend == "numeric"
    assert report.settings == settings
    # Trapezoid sum of the exact nodal values.
    assert report.tp[1.0] == pytest.approx(1 / 12 - 1 / (12 * 16 ** 2), rel=1e-9)
    assert report.v_max == pytest.approx(0.125, rel=1e-9)
    assert report.error("tp[1]") == 0.0


def test_evaluate_numeric_richardson() -> None:
    union = IntervalUnion(((0, 1), (2, 3)))
    report = evaluate(
        union,
        [1],
        backend="numeric",
        settings=NumericSettings(h=1 / 32),
        keep_fields=True,
    )
    assert report.tp[1.0] == pytest.approx(2 / 12, rel=1e-9)
    assert report.lambda1.lower == pytest.approx(math.pi ** 2, rel=1e-4)
    assert report.fp[1.0][0] == pytest.approx(math.pi ** 2 / 12, rel=1e-4)
    assert {"lambda1", "v_max", "tp[1]", "fp[1]", "fpq[1,1]"} <= set(
        report.error_estimates
    )
    # Congruent components share one solve per grid spacing.
    assert len(report.fields) == 2
    assert sorted(field.grid.h for field in report.fields) == [1 / 64, 1 / 32]


def test_evaluate_auto_backend() -> None:
    assert evaluate(Ellipsoid((2.0, 1.0)), [1]).backend == "oracle"
    report = evaluate(TRIANGLE, [1], settings=NumericSettings(h=1 / 32))
    assert report.backend == "numeric"
    assert report.fp[1.0][0] < 1


def test_evaluate_errors() -> None:
    with pytest.raises(ValueError):
        evaluate(UNIT_INTERVAL, [1], backend="spectral")
    with pytest.raises(ValueError):
        evaluate(UNIT_INTERVAL, [])
    with pytest.raises(ValueError):
        evaluate(UNIT_INTERVAL, [0.5])
    with pytest.raises(ValueError):
        evaluate(UNIT_INTERVAL, [1], [math.inf])
    with pytest.raises(UnsupportedDomainError):
        evaluate(TRIANGLE, [1], backend="oracle")
    with pytest.raises(UnsupportedDomainError):
        evaluate(Ball.create(3), [1], backend="numeric")


def test_reports_frame() -> None:
    report = evaluate(UNIT_INTERVAL, [1, P_INF], [1, 0.5], label="unit_interval")
    df = reports_frame([report, report])
    assert list(df.columns) == REPORT_COLUMNS
    assert len(df) == 8
    assert set(df["p"]) == {"1", "inf"}
    assert (df["err"] == 0).all()


def test_render_csv_and_write(tmp_path) -> None:
    report = evaluate(UNIT_INTERVAL, [1, 2], label="unit_interval")
    text = render_reports([report], "csv")
    assert text.splitlines()[0] == ",".join(REPORT_COLUMNS)

    filename = tmp_path / "reports" / "report.csv"
    write_reports([report], filename, "csv")
    df = pd.read_csv(filename)
    assert len(df) == 2
    assert df["fp"].iloc[0] == pytest.approx(math.pi ** 2 / 12, rel=1e-11)


def test_render_yaml() -> None:
    report = evaluate(Ellipsoid((2.0, 1.0)), [1, P_INF], label="ellipse")
    document = yaml.safe_load(render_reports([report], "yaml"))
    (entry,) = document["reports"]
    assert entry == report_to_dict(report)
    assert entry["domain"] == "ellipse"
    assert entry["spec"]["type"] == "ellipsoid"
    assert entry["lambda1"]["exact"] is False
    assert set(entry["tp"]) == {"1", "inf"}
    assert entry["fpq"]["1,1"] == list(report.fpq[(1.0, 1.0)])


def test_render_txt() -> None:
    reports = [
        evaluate(UNIT_INTERVAL, [1], label="unit_interval"),
        evaluate(Ellipsoid((2.0, 1.0)), [1], label="ellipse"),
    ]
    text = render_reports(reports, "txt")
    assert "Domain unit_interval (IntervalUnion, m = 1, backend oracle)" in text
    assert "Domain ellipse (Ellipsoid, m = 2, backend oracle)" in text
    assert "lambda_1   = " in text
    assert "lambda_1   in [" in text
    assert "Richardson" not in text


def test_render_unknown_format() -> None:
    with pytest.raises(ValueError):
        render_reports([], "json")
