"""Generic traversal helpers over the animation model.

Used by cleaning (expression stripping), temporal normalization (keyframe
time mapping), corpus statistics, and the vocabulary builder.
"""

from __future__ import annotations

from typing import Iterator

from . import model as M


def iter_all_layers(a: M.Animation, include_assets: bool = True) -> Iterator[tuple[str, object]]:
    """Yield (container_path, layer) over root layers and asset layers."""
    for i, layer in enumerate(a.layers):
        yield f"$.layers[{i}]", layer
    if include_assets:
        for j, asset in enumerate(a.assets):
            if isinstance(asset, M.PrecompAsset):
                for i, layer in enumerate(asset.layers):
                    yield f"$.assets[{j}].layers[{i}]", layer


def _iter_vec2(v: M.Vec2Prop | None, path: str):
    if v is None:
        return
    if v.separated:
        yield f"{path}.x", v.x
        yield f"{path}.y", v.y
    else:
        yield path, v.joint


def iter_transform_props(tr, path: str) -> Iterator[tuple[str, M.AnimatedProperty]]:
    yield from _iter_vec2(tr.anchor, f"{path}.a")
    yield from _iter_vec2(tr.position, f"{path}.p")
    yield f"{path}.s", tr.scale
    yield f"{path}.r", tr.rotation
    yield f"{path}.o", tr.opacity
    yield f"{path}.sk", tr.skew
    yield f"{path}.sa", tr.skew_axis


def iter_shape_props(node: M.ShapeNode, path: str) -> Iterator[tuple[str, M.AnimatedProperty]]:
    if isinstance(node, M.Group):
        for i, ch in enumerate(node.children):
            yield from iter_shape_props(ch, f"{path}.it[{i}]")
    elif isinstance(node, M.Path):
        yield f"{path}.ks", node.shape
    elif isinstance(node, M.Fill):
        yield f"{path}.c", node.color
        yield f"{path}.o", node.opacity
    elif isinstance(node, M.Stroke):
        yield f"{path}.c", node.color
        yield f"{path}.o", node.opacity
        yield f"{path}.w", node.width
    elif isinstance(node, (M.GradientFill, M.GradientStroke)):
        yield f"{path}.s", node.start
        yield f"{path}.e", node.end
        yield f"{path}.g.k", node.stops.data
        yield f"{path}.o", node.opacity
        if isinstance(node, M.GradientStroke):
            yield f"{path}.w", node.width
    elif isinstance(node, M.Rect):
        yield f"{path}.p", node.position
        yield f"{path}.s", node.size
        yield f"{path}.r", node.roundness
    elif isinstance(node, M.Ellipse):
        yield f"{path}.p", node.position
        yield f"{path}.s", node.size
    elif isinstance(node, M.Star):
        yield f"{path}.pt", node.points
        yield f"{path}.p", node.position
        yield f"{path}.r", node.rotation
        yield f"{path}.or", node.outer_radius
        yield f"{path}.os", node.outer_roundness
        if node.inner_radius is not None:
            yield f"{path}.ir", node.inner_radius
        if node.inner_roundness is not None:
            yield f"{path}.is", node.inner_roundness
    elif isinstance(node, M.GroupTransform):
        yield from iter_transform_props(node, path)
    elif isinstance(node, M.TrimPath):
        yield f"{path}.s", node.start
        yield f"{path}.e", node.end
        yield f"{path}.o", node.offset
    elif isinstance(node, M.Repeater):
        yield f"{path}.c", node.copies
        yield f"{path}.o", node.offset
        rt = node.transform
        yield f"{path}.tr.a", rt.anchor
        yield f"{path}.tr.p", rt.position
        yield f"{path}.tr.s", rt.scale
        yield f"{path}.tr.r", rt.rotation
        yield f"{path}.tr.so", rt.start_opacity
        yield f"{path}.tr.eo", rt.end_opacity
    elif isinstance(node, M.RoundedCorners):
        yield f"{path}.r", node.radius
    elif isinstance(node, M.ZigZag):
        yield f"{path}.s", node.amplitude
        yield f"{path}.r", node.frequency
        yield f"{path}.pt", node.point_type


def iter_layer_props(layer, path: str = "$") -> Iterator[tuple[str, M.AnimatedProperty]]:
    """Every AnimatedProperty reachable from one (typed) layer."""
    if isinstance(layer, M.RawLayer):
        return
    yield from iter_transform_props(layer.transform, f"{path}.ks")
    for i, m in enumerate(layer.masks):
        yield f"{path}.masksProperties[{i}].pt", m.path
        yield f"{path}.masksProperties[{i}].o", m.opacity
        yield f"{path}.masksProperties[{i}].x", m.expansion
    for i, e in enumerate(layer.effects):
        for j, p in enumerate(e.params):
            yield f"{path}.ef[{i}].ef[{j}].v", p.value
    pl = layer.payload
    if isinstance(pl, M.PrecompPayload) and pl.time_remap is not None:
        yield f"{path}.tm", pl.time_remap
    elif isinstance(pl, M.ShapePayload):
        for i, node in enumerate(pl.shapes):
            yield from iter_shape_props(node, f"{path}.shapes[{i}]")
    elif isinstance(pl, M.TextPayload):
        for i, a in enumerate(pl.animators):
            if a.sel_start is not None:
                yield f"{path}.t.a[{i}].s.s", a.sel_start
            if a.sel_end is not None:
                yield f"{path}.t.a[{i}].s.e", a.sel_end
            yield from _iter_vec2(a.position, f"{path}.t.a[{i}].a.p")
            for key, prop in (("r", a.rotation), ("s", a.scale), ("fc", a.fill_color),
                              ("o", a.opacity), ("t", a.tracking)):
                if prop is not None:
                    yield f"{path}.t.a[{i}].a.{key}", prop


def iter_all_props(a: M.Animation) -> Iterator[tuple[str, M.AnimatedProperty]]:
    for lpath, layer in iter_all_layers(a):
        yield from iter_layer_props(layer, lpath)
