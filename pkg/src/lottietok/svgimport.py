"""Minimal static-SVG importer.

Declared subset: svg root with viewBox or width/height; ``g`` groups with
translate/rotate/scale transforms; ``path`` (M/L/C/Z, absolute or relative);
``rect``, ``circle``, ``ellipse``; solid ``fill``/``stroke`` with optional
opacity and width.  Anything else raises :class:`UnsupportedSvgFeature`,
mirroring a discard policy for out-of-subset inputs.
"""

from __future__ import annotations

import re
import xml.etree.ElementTree as ET

from . import model as M
from .errors import UnsupportedSvgFeature

NAMED_COLORS = {
    "black": "#000000", "white": "#ffffff", "red": "#ff0000",
    "green": "#008000", "blue": "#0000ff", "yellow": "#ffff00",
    "gray": "#808080", "grey": "#808080", "none": None,
}

_NUM_RE = re.compile(r"[-+]?(?:\d*\.\d+|\d+\.?)(?:[eE][-+]?\d+)?")


def _strip_ns(tag: str) -> str:
    return tag.rsplit("}", 1)[-1]


def _floats(text: str) -> list[float]:
    return [float(m.group(0)) for m in _NUM_RE.finditer(text or "")]


def _parse_color(value: str) -> list[float] | None:
    value = value.strip()
    if value.lower() in NAMED_COLORS:
        value = NAMED_COLORS[value.lower()]
        if value is None:
            return None
    if value.startswith("url("):
        raise UnsupportedSvgFeature("gradient")
    if not value.startswith("#"):
        raise UnsupportedSvgFeature(f"color {value!r}")
    body = value[1:]
    if len(body) == 3:
        body = "".join(c * 2 for c in body)
    if len(body) != 6:
        raise UnsupportedSvgFeature(f"color {value!r}")
    return [int(body[i:i + 2], 16) / 255.0 for i in (0, 2, 4)]


def _style_of(el) -> dict[str, str]:
    style: dict[str, str] = {}
    for key in ("fill", "stroke", "stroke-width", "fill-opacity", "stroke-opacity", "opacity"):
        if el.get(key) is not None:
            style[key] = el.get(key)
    for decl in (el.get("style") or "").split(";"):
        if ":" in decl:
            k, v = decl.split(":", 1)
            style[k.strip()] = v.strip()
    return style


def _style_nodes(style: dict[str, str]) -> list[M.ShapeNode]:
    nodes: list[M.ShapeNode] = []
    fill_val = style.get("fill", "#000000")
    fill = _parse_color(fill_val)
    base_op = float(style.get("opacity", 1.0))
    if fill is not None:
        op = float(style.get("fill-opacity", 1.0)) * base_op
        nodes.append(M.Fill(color=M.AnimatedProperty.of(fill, dim=3),
                            opacity=M.AnimatedProperty.of(op * 100.0)))
    stroke_val = style.get("stroke", "none")
    stroke = _parse_color(stroke_val)
    if stroke is not None:
        op = float(style.get("stroke-opacity", 1.0)) * base_op
        width = float(style.get("stroke-width", 1.0))
        nodes.append(M.Stroke(color=M.AnimatedProperty.of(stroke, dim=3),
                              opacity=M.AnimatedProperty.of(op * 100.0),
                              width=M.AnimatedProperty.of(width)))
    return nodes


def _parse_transform(text: str) -> M.GroupTransform:
    tr = M.GroupTransform()
    seen: set[str] = set()
    for m in re.finditer(r"(\w+)\s*\(([^)]*)\)", text or ""):
        op, args = m.group(1), _floats(m.group(2))
        if op in seen:
            raise UnsupportedSvgFeature(f"repeated transform {op}")
        seen.add(op)
        if op == "translate":
            tx = args[0]
            ty = args[1] if len(args) > 1 else 0.0
            tr.position = M.Vec2Prop.of(tx, ty)
        elif op == "scale":
            sx = args[0]
            sy = args[1] if len(args) > 1 else sx
            tr.scale = M.AnimatedProperty.of([sx * 100.0, sy * 100.0])
        elif op == "rotate":
            if len(args) > 1:
                raise UnsupportedSvgFeature("rotate with center")
            tr.rotation = M.AnimatedProperty.of(args[0])
        else:
            raise UnsupportedSvgFeature(f"transform {op}")
    return tr


def _tokenize_path(d: str):
    pos = 0
    for m in re.finditer(r"([MmLlCcZzHhVvSsQqTtAa])|" + _NUM_RE.pattern, d):
        if m.group(1):
            yield m.group(1)
        else:
            yield float(m.group(0))
        pos = m.end()


def _path_to_nodes(d: str) -> list[M.Path]:
    """M/L/C/Z subset; lowercase commands are relative."""
    tokens = list(_tokenize_path(d))
    paths: list[M.Path] = []
    verts: list[list[float]] = []
    tin: list[list[float]] = []
    tout: list[list[float]] = []
    cur = [0.0, 0.0]
    closed = False
    i = 0

    def flush(is_closed: bool):
        nonlocal verts, tin, tout
        if verts:
            b = M.BezierPath(closed=is_closed, vertices=verts, in_tangents=tin, out_tangents=tout)
            paths.append(M.Path(shape=M.AnimatedProperty(is_path=True, dim=0, static=b)))
        verts, tin, tout = [], [], []

    def take(n: int) -> list[float]:
        nonlocal i
        vals = tokens[i:i + n]
        if len(vals) != n or any(isinstance(v, str) for v in vals):
            raise UnsupportedSvgFeature("malformed path data")
        i += n
        return vals  # type: ignore[return-value]

    cmd = None
    while i < len(tokens):
        tok = tokens[i]
        if isinstance(tok, str):
            if tok in "HhVvSsQqTtAa":
                raise UnsupportedSvgFeature(f"path command {tok}")
            cmd = tok
            i += 1
            if cmd in "Zz":
                flush(True)
                cmd = None
            continue
        if cmd is None:
            raise UnsupportedSvgFeature("path data before command")
        rel = cmd.islower()
        c = cmd.upper()
        if c == "M":
            x, y = take(2)
            if rel:
                x, y = cur[0] + x, cur[1] + y
            flush(False)
            cur = [x, y]
            verts.append([x, y])
            tin.append([0.0, 0.0])
            tout.append([0.0, 0.0])
            cmd = "l" if rel else "L"  # subsequent pairs are implicit linetos
        elif c == "L":
            x, y = take(2)
            if rel:
                x, y = cur[0] + x, cur[1] + y
            cur = [x, y]
            verts.append([x, y])
            tin.append([0.0, 0.0])
            tout.append([0.0, 0.0])
        elif c == "C":
            x1, y1, x2, y2, x, y = take(6)
            if rel:
                x1, y1 = cur[0] + x1, cur[1] + y1
                x2, y2 = cur[0] + x2, cur[1] + y2
                x, y = cur[0] + x, cur[1] + y
            tout[-1] = [x1 - cur[0], y1 - cur[1]]
            verts.append([x, y])
            tin.append([x2 - x, y2 - y])
            tout.append([0.0, 0.0])
            cur = [x, y]
        else:
            raise UnsupportedSvgFeature(f"path command {cmd}")
    flush(False)
    return paths


def _element_to_nodes(el) -> list[M.ShapeNode]:
    tag = _strip_ns(el.tag)
    style = _style_nodes(_style_of(el))
    if tag == "path":
        geo: list[M.ShapeNode] = list(_path_to_nodes(el.get("d", "")))
    elif tag == "rect":
        x, y = float(el.get("x", 0)), float(el.get("y", 0))
        w, h = float(el.get("width", 0)), float(el.get("height", 0))
        rx = float(el.get("rx", 0))
        geo = [M.Rect(
            position=M.AnimatedProperty.of([x + w / 2.0, y + h / 2.0]),
            size=M.AnimatedProperty.of([w, h]),
            roundness=M.AnimatedProperty.of(rx),
        )]
    elif tag == "circle":
        cx, cy, r = float(el.get("cx", 0)), float(el.get("cy", 0)), float(el.get("r", 0))
        geo = [M.Ellipse(position=M.AnimatedProperty.of([cx, cy]),
                         size=M.AnimatedProperty.of([2 * r, 2 * r]))]
    elif tag == "ellipse":
        cx, cy = float(el.get("cx", 0)), float(el.get("cy", 0))
        rx, ry = float(el.get("rx", 0)), float(el.get("ry", 0))
        geo = [M.Ellipse(position=M.AnimatedProperty.of([cx, cy]),
                         size=M.AnimatedProperty.of([2 * rx, 2 * ry]))]
    elif tag == "g":
        children: list[M.ShapeNode] = []
        for child in el:
            children.extend(_element_to_nodes(child))
        group = M.Group(children=children, name=el.get("id", ""))
        group.children.append(_parse_transform(el.get("transform", "")))
        return [group]
    else:
        raise UnsupportedSvgFeature(tag)
    if el.get("transform"):
        tr = _parse_transform(el.get("transform"))
    else:
        tr = M.GroupTransform()
    return [M.Group(children=geo + style + [tr], name=el.get("id", ""))]


def svg_to_static_lottie(svg_text: str, out_point: float = 60.0, frame_rate: float = 30.0) -> M.Animation:
    """Convert a subset-SVG document into a static one-frame-per-layer Lottie.

    One shape layer per top-level SVG child; viewBox maps to the canvas.
    """
    try:
        root = ET.fromstring(svg_text)
    except ET.ParseError as e:
        raise UnsupportedSvgFeature(f"xml: {e}") from e
    if _strip_ns(root.tag) != "svg":
        raise UnsupportedSvgFeature(_strip_ns(root.tag))
    viewbox = _floats(root.get("viewBox", ""))
    if len(viewbox) == 4:
        w, h = viewbox[2], viewbox[3]
    else:
        w = _floats(root.get("width", ""))
        h = _floats(root.get("height", ""))
        w = w[0] if w else 512.0
        h = h[0] if h else 512.0

    anim = M.Animation(frame_rate=frame_rate, in_point=0.0, out_point=out_point,
                       width=w, height=h, name="")
    for idx, el in enumerate(root):
        tag = _strip_ns(el.tag)
        if tag in ("defs", "linearGradient", "radialGradient"):
            raise UnsupportedSvgFeature("gradient" if "Gradient" in tag or tag == "defs" else tag)
        if tag in ("title", "desc", "metadata"):
            continue
        nodes = _element_to_nodes(el)
        layer = M.Layer(
            kind=4,
            index=idx + 1,
            name=el.get("id", "") or f"layer-{idx + 1}",
            in_point=0.0,
            out_point=out_point,
        )
        layer.payload = M.ShapePayload(shapes=nodes)
        anim.layers.append(layer)
    if viewbox[:2] not in ([], [0.0, 0.0]):
        # Non-zero viewBox origin shifts all content by its offset.
        for layer in anim.layers:
            layer.transform.position = M.Vec2Prop.of(-viewbox[0], -viewbox[1])
    return anim
