import pytest

from lottietok import model as M
from lottietok.errors import UnsupportedSvgFeature
from lottietok.lint import lint
from lottietok.model import parse_lottie, serialize_lottie
from lottietok.svgimport import svg_to_static_lottie


def _only_group(anim: M.Animation) -> M.Group:
    assert len(anim.layers) == 1
    shapes = anim.layers[0].payload.shapes
    assert len(shapes) == 1
    return shapes[0]


def test_rect_maps_to_rect_plus_fill():
    svg = '<svg viewBox="0 0 512 512"><rect x="0" y="0" width="100" height="100" fill="#ff0000"/></svg>'
    group = _only_group(svg_to_static_lottie(svg))
    rect = group.children[0]
    fill = group.children[1]
    assert isinstance(rect, M.Rect)
    # Manual mapping: Lottie rects are center-positioned.
    assert rect.position.static == [50.0, 50.0]
    assert rect.size.static == [100.0, 100.0]
    assert isinstance(fill, M.Fill)
    assert fill.color.static == [1.0, 0.0, 0.0]


def test_circle_is_symmetric_ellipse():
    svg = '<svg viewBox="0 0 100 100"><circle cx="50" cy="50" r="50" fill="#00ff00"/></svg>'
    ellipse = _only_group(svg_to_static_lottie(svg)).children[0]
    assert isinstance(ellipse, M.Ellipse)
    assert ellipse.size.static == [100.0, 100.0]
    assert ellipse.position.static == [50.0, 50.0]


def test_gradient_fill_rejected():
    svg = '<svg viewBox="0 0 10 10"><rect width="5" height="5" fill="url(#g)"/></svg>'
    with pytest.raises(UnsupportedSvgFeature) as exc:
        svg_to_static_lottie(svg)
    assert exc.value.name == "gradient"


def test_gradient_element_rejected():
    svg = ('<svg viewBox="0 0 10 10"><defs><linearGradient id="g"/></defs>'
           '<rect width="5" height="5" fill="#fff"/></svg>')
    with pytest.raises(UnsupportedSvgFeature):
        svg_to_static_lottie(svg)


def test_unsupported_element_rejected():
    with pytest.raises(UnsupportedSvgFeature) as exc:
        svg_to_static_lottie('<svg viewBox="0 0 10 10"><text>hello</text></svg>')
    assert exc.value.name == "text"


def test_unsupported_path_command_rejected():
    svg = '<svg viewBox="0 0 10 10"><path d="M 0 0 A 5 5 0 0 1 5 5" fill="#fff"/></svg>'
    with pytest.raises(UnsupportedSvgFeature) as exc:
        svg_to_static_lottie(svg)
    assert "A" in exc.value.name


def test_path_tangent_arithmetic():
    # Hand-derived: out tangent of P0 is C1-P0, in tangent of P1 is C2-P1.
    svg = '<svg viewBox="0 0 40 40"><path d="M 0 0 C 10 0 20 10 30 10 L 30 20 Z" fill="#000000"/></svg>'
    group = _only_group(svg_to_static_lottie(svg))
    path = group.children[0]
    bez = path.shape.static
    assert bez.closed
    assert bez.vertices == [[0.0, 0.0], [30.0, 10.0], [30.0, 20.0]]
    assert bez.out_tangents[0] == [10.0, 0.0]
    assert bez.in_tangents[1] == [-10.0, 0.0]
    assert bez.in_tangents[2] == [0.0, 0.0]


def test_relative_path_commands():
    svg = '<svg viewBox="0 0 40 40"><path d="m 5 5 l 10 0 l 0 10 z" fill="#000000"/></svg>'
    bez = _only_group(svg_to_static_lottie(svg)).children[0].shape.static
    assert bez.vertices == [[5.0, 5.0], [15.0, 5.0], [15.0, 15.0]]
    assert bez.closed


def test_multiple_subpaths_become_multiple_path_nodes():
    svg = '<svg viewBox="0 0 40 40"><path d="M 0 0 L 5 0 L 5 5 Z M 10 10 L 15 10 L 15 15 Z" fill="#000000"/></svg>'
    group = _only_group(svg_to_static_lottie(svg))
    paths = [c for c in group.children if isinstance(c, M.Path)]
    assert len(paths) == 2


def test_group_transform_mapping():
    svg = ('<svg viewBox="0 0 100 100"><g id="grp" transform="translate(10,20) rotate(45) scale(2)">'
           '<rect width="10" height="10" fill="#123456"/></g></svg>')
    anim = svg_to_static_lottie(svg)
    group = _only_group(anim)
    assert group.name == "grp"
    tr = [c for c in group.children if isinstance(c, M.GroupTransform)][-1]
    assert tr.position.joint.static == [10.0, 20.0]
    assert tr.rotation.static == [45.0]
    assert tr.scale.static == [200.0, 200.0]


def test_named_colors_and_stroke():
    svg = ('<svg viewBox="0 0 50 50">'
           '<rect width="10" height="10" fill="none" stroke="blue" stroke-width="3"/></svg>')
    group = _only_group(svg_to_static_lottie(svg))
    strokes = [c for c in group.children if isinstance(c, M.Stroke)]
    fills = [c for c in group.children if isinstance(c, M.Fill)]
    assert not fills
    assert strokes and strokes[0].color.static == [0.0, 0.0, 1.0]
    assert strokes[0].width.static == [3.0]


def test_default_fill_is_black():
    svg = '<svg viewBox="0 0 10 10"><rect width="5" height="5"/></svg>'
    fill = [c for c in _only_group(svg_to_static_lottie(svg)).children if isinstance(c, M.Fill)][0]
    assert fill.color.static == [0.0, 0.0, 0.0]


def test_viewbox_maps_to_canvas():
    svg = '<svg viewBox="0 0 320 200"><rect width="5" height="5" fill="#fff"/></svg>'
    anim = svg_to_static_lottie(svg)
    assert (anim.width, anim.height) == (320.0, 200.0)


def test_one_layer_per_top_level_child():
    svg = ('<svg viewBox="0 0 100 100">'
           '<g id="a"><rect width="5" height="5" fill="#fff"/></g>'
           '<g id="b"><circle cx="5" cy="5" r="2" fill="#fff"/></g>'
           '<rect width="9" height="9" fill="#fff"/></svg>')
    anim = svg_to_static_lottie(svg)
    assert len(anim.layers) == 3
    assert [l.kind for l in anim.layers] == [4, 4, 4]
    assert anim.layers[0].name == "a"


def test_imported_file_is_valid_and_clean():
    svg = ('<svg viewBox="0 0 256 256"><g id="icon" transform="translate(128,128)">'
           '<circle r="60" fill="#3366ff"/><rect x="-20" y="-20" width="40" height="40" fill="#ffffff"/>'
           '</g></svg>')
    anim = svg_to_static_lottie(svg)
    assert parse_lottie(serialize_lottie(anim)) is not None
    assert lint(anim) == []
