import pytest

from starmerge import CurvePoint, LevelCurve
from starmerge.svgplot import Heatmap, PlotCurve, PlotMarker, emit_plot


def make_curve(points):
    return LevelCurve(target=0.0145, points=tuple(points))


def test_empty_input_errors_without_writing(tmp_path):
    out = tmp_path / "plot.svg"
    with pytest.raises(ValueError):
        emit_plot(out, curves=[])
    assert not out.exists()


def test_single_curve_polyline_vertex_count(tmp_path):
    points = [CurvePoint(n=float(n), c=40.0 + 10 * n) for n in range(9, 16)]
    svg = emit_plot(tmp_path / "c.svg", curves=[PlotCurve("curve", "#1f77b4", make_curve(points))])
    assert svg.count("<polyline") == 1
    polyline = svg.split("<polyline")[1].split("/>")[0]
    vertices = polyline.split('points="')[1].split('"')[0].split()
    assert len(vertices) == len(points)
    assert (tmp_path / "c.svg").exists()


def test_unreachable_points_skipped_in_polyline():
    points = [
        CurvePoint(n=9.0, c=None, reachable=False),
        CurvePoint(n=13.0, c=100.0),
        CurvePoint(n=17.0, c=80.0),
    ]
    svg = emit_plot(None, curves=[PlotCurve("c", "blue", make_curve(points))])
    polyline = svg.split("<polyline")[1].split("/>")[0]
    vertices = polyline.split('points="')[1].split('"')[0].split()
    assert len(vertices) == 2


def test_whiskers_for_monte_carlo_points():
    points = [CurvePoint(n=13.0, c=100.0, c_halfwidth=5.0), CurvePoint(n=15.0, c=90.0)]
    svg = emit_plot(None, curves=[PlotCurve("c", "blue", make_curve(points))])
    assert svg.count('class="whisker"') == 1


def test_two_families_and_marker_glyphs():
    edge = PlotCurve("edge failure 0.0145", "#1f77b4", make_curve([CurvePoint(n=float(n), c=200.0 - 4 * n) for n in (9, 13, 17, 21)]))
    pauli_a = PlotCurve("Pauli 0.00067 eps=5.5e-5", "#808080", make_curve([CurvePoint(n=float(n), c=60.0 + 6 * n) for n in (9, 10, 11, 12)]))
    pauli_b = PlotCurve("Pauli 0.00067 eps=1e-5", "#808080", make_curve([CurvePoint(n=float(n), c=40.0 + 5 * n) for n in (9, 13, 17, 21)]))
    markers = [PlotMarker(c=130.0, n=12.0, glyph="cross"), PlotMarker(c=110.0, n=14.0, glyph="diamond")]
    svg = emit_plot(None, curves=[edge, pauli_a, pauli_b], markers=markers)
    assert svg.count("<polyline") == 3
    assert svg.count('stroke="#1f77b4"') >= 1
    assert svg.count('stroke="#808080"') >= 2
    assert 'class="marker-cross"' in svg
    assert 'class="marker-diamond"' in svg
    assert "<text" in svg  # legend and axis labels present


def test_unknown_marker_glyph_rejected():
    curve = PlotCurve("c", "blue", make_curve([CurvePoint(n=9.0, c=50.0)]))
    with pytest.raises(ValueError):
        emit_plot(None, curves=[curve], markers=[PlotMarker(c=50.0, n=9.0, glyph="star")])


def test_heatmap_cells():
    heat = Heatmap(
        c_values=[50.0, 100.0],
        n_values=[9.0, 13.0],
        values=[[0.5, 0.1], [0.9, 0.3]],
        label="edge failure",
    )
    svg = emit_plot(None, heatmap=heat)
    assert svg.count('class="heatcell"') == 4
    assert "edge failure" in svg


def test_axis_labels_present():
    svg = emit_plot(None, curves=[PlotCurve("c", "blue", make_curve([CurvePoint(n=9.0, c=50.0)]))])
    assert "cooperativity C" in svg
    assert "resource state size N" in svg


def test_degenerate_ranges_padded():
    curve = PlotCurve("c", "blue", make_curve([CurvePoint(n=9.0, c=50.0)]))
    svg = emit_plot(None, curves=[curve], c_range=(50.0, 50.0), n_range=(9.0, 9.0))
    assert svg.count("<polyline") == 1
