"""Tests for the SVG rendering of a cell's band/gap/square geometry."""

from __future__ import annotations

import xml.etree.ElementTree as ET

import pytest

from cantorprod.render import MAX_DEPTH, MAX_KMAX, render_svg

SVG = "{http://www.w3.org/2000/svg}"


def parse(depth: int, k_max: int) -> tuple[str, ET.Element]:
    svg = render_svg(depth, k_max)
    return svg, ET.fromstring(svg)


def test_output_is_well_formed_everywhere():
    for depth in range(MAX_DEPTH + 1):
        for k_max in range(MAX_KMAX + 1):
            svg, root = parse(depth, k_max)
            assert root.tag == f"{SVG}svg"
            assert svg.startswith("<svg")


def test_output_is_deterministic():
    assert render_svg(1, 3) == render_svg(1, 3)
    assert render_svg(0, 2) == render_svg(0, 2)


def test_validation_of_ranges():
    with pytest.raises(ValueError):
        render_svg(MAX_DEPTH + 1, 2)
    with pytest.raises(ValueError):
        render_svg(-1, 2)
    with pytest.raises(ValueError):
        render_svg(0, MAX_KMAX + 1)
    with pytest.raises(ValueError):
        render_svg(0, -1)


def test_root_cell_attributes():
    _, root = parse(0, 3)
    assert root.get("data-cell-lo") == "2/3"
    assert root.get("data-cell-hi") == "1/1"
    assert root.get("data-q") == "2"
    assert root.get("data-scale-k") == "1"


def test_descended_cell_attributes():
    _, one = parse(1, 2)
    assert one.get("data-q") == "20"
    _, two = parse(2, 2)
    assert two.get("data-q") == "182"
    assert two.get("data-cell-lo") == "182/243"
    assert two.get("data-scale-k") == "5"


def test_family_counts_scale_with_k_max():
    for k_max in (0, 1, 3):
        svg, _ = parse(0, k_max)
        families = 1 + 2 * k_max
        assert svg.count("data-level") == 3 * families
        assert svg.count("data-lo") == 2 * families
        assert svg.count('class="pair"') == (2 * k_max) ** 2


def test_band_endpoints_are_exact_family_values():
    _, root = parse(0, 1)
    bands = [
        (el.get("data-lo"), el.get("data-hi"))
        for el in root.iter(f"{SVG}path")
        if el.get("data-lo")
    ]
    assert bands == [
        ("16/27", "7/9"),
        ("7/9", "64/81"),
        ("40/81", "133/243"),
        ("133/243", "400/729"),
        ("208/243", "25/27"),
        ("25/27", "676/729"),
    ]


def test_arc_levels_are_exact_family_values():
    _, root = parse(0, 0)
    levels = [el.get("data-level") for el in root.iter(f"{SVG}path") if el.get("data-level")]
    assert levels == ["16/27", "7/9", "64/81"]


def test_margin_labels():
    svg, root = parse(0, 2)
    texts = [el.text for el in root.iter(f"{SVG}text")]
    assert texts == [
        "P(I,0,±)",
        "G(I,0,±)",
        "P(I,1,-)",
        "Q(I,1,-)",
        "Q(I,1,+)",
        "G(I,1,-)",
        "P(I,1,+)",
        "G(I,1,+)",
    ]
    _, bare = parse(0, 0)
    assert len(list(bare.iter(f"{SVG}text"))) == 2


def test_descended_cell_band_values_rescale():
    # the depth-1 cell repeats the same construction at its own scale: its
    # k = 0 band is the square of its q-geometry, not the root's numbers
    _, one = parse(1, 1)
    bands = [
        (el.get("data-lo"), el.get("data-hi"))
        for el in one.iter(f"{SVG}path")
        if el.get("data-lo")
    ]
    assert bands[0] == ("1240/2187", "427/729")


def test_viewbox_and_clip():
    svg, root = parse(0, 2)
    assert root.get("viewBox") == "-0.58 -0.04 2.26 1.08"
    assert 'clipPath id="cell"' in svg
