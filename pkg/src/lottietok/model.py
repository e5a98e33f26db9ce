"""Typed in-memory model of a Lottie animation with a strict JSON reader/writer.

The model covers the five parameterizable layer types (precomp 0, solid 1,
null 3, shape 4, text 5), their transforms, masks, effects, shape trees, and
text payloads.  Unknown keys inside in-scope objects are preserved verbatim
in per-object ``extras`` side tables so that canonical serialization is
idempotent: ``parse(serialize(a)) == parse_result`` exactly.

Numbers are stored as binary64 and written back in shortest round-trip form
(integral values are written as JSON integers).

Animations are treated as immutable once constructed: pipeline and motion
operations deep-copy instead of mutating, so values are safe to share
across threads.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any

from .errors import MalformedJson, SchemaViolation, UnsupportedLayerKind

# Layer type codes accepted by the strict parser.
SUPPORTED_LAYER_KINDS = (0, 1, 3, 4, 5)
# Layer type codes admitted as opaque stubs in lenient mode (cleaning input).
RAW_LAYER_KINDS = (2, 6, 13, 15)

DEFAULT_VERSION = "5.12.1"

# Mask mode letters <-> small integer enum.
MASK_MODES = {"n": 0, "a": 1, "s": 2, "i": 3, "f": 4}
MASK_MODE_LETTERS = {v: k for k, v in MASK_MODES.items()}

# Lottie effect parameter value-type codes -> compact enum.
EFFECT_PARAM_KINDS = {0: 0, 1: 1, 2: 2, 3: 3, 4: 4, 7: 5, 10: 6}
EFFECT_PARAM_KIND_CODES = {v: k for k, v in EFFECT_PARAM_KINDS.items()}
EFFECT_PARAM_DIMS = {0: 1, 1: 1, 2: 4, 3: 2, 4: 1, 5: 1, 6: 1}

LINEAR_EASE_OUT = (0.0, 0.0)
LINEAR_EASE_IN = (1.0, 1.0)


# =============================================================================
# Domain types
# =============================================================================


@dataclass
class BezierPath:
    """Closed or open cubic bezier contour with relative tangent handles."""

    closed: bool = False
    vertices: list[list[float]] = field(default_factory=list)
    in_tangents: list[list[float]] = field(default_factory=list)
    out_tangents: list[list[float]] = field(default_factory=list)


@dataclass
class Keyframe:
    time: float = 0.0
    value: list[float] | BezierPath = field(default_factory=list)
    ease_in: tuple[float, float] = LINEAR_EASE_IN
    ease_out: tuple[float, float] = LINEAR_EASE_OUT
    hold: int = 0
    extras: dict = field(default_factory=dict)


@dataclass
class AnimatedProperty:
    """A property that is either a static value or a keyframe track, never both.

    ``dim`` is the component count of scalar/vector values; path-valued
    properties set ``is_path`` and carry :class:`BezierPath` values.
    """

    dim: int = 1
    is_path: bool = False
    static: list[float] | BezierPath | None = None
    keyframes: list[Keyframe] | None = None
    extras: dict = field(default_factory=dict)

    @property
    def animated(self) -> bool:
        return self.keyframes is not None

    @staticmethod
    def of(value, dim: int | None = None) -> "AnimatedProperty":
        vals = [float(v) for v in value] if isinstance(value, (list, tuple)) else [float(value)]
        return AnimatedProperty(dim=dim if dim is not None else len(vals), static=vals)


@dataclass
class Vec2Prop:
    """2D property, either joint or with separated x/y scalar tracks."""

    joint: AnimatedProperty | None = None
    x: AnimatedProperty | None = None
    y: AnimatedProperty | None = None
    extras: dict = field(default_factory=dict)

    @property
    def separated(self) -> bool:
        return self.joint is None

    @staticmethod
    def of(x: float, y: float) -> "Vec2Prop":
        return Vec2Prop(joint=AnimatedProperty.of([x, y]))


def _static_scalar(v: float) -> AnimatedProperty:
    return AnimatedProperty.of(v)


@dataclass
class Transform:
    anchor: Vec2Prop = field(default_factory=lambda: Vec2Prop.of(0.0, 0.0))
    position: Vec2Prop = field(default_factory=lambda: Vec2Prop.of(0.0, 0.0))
    scale: AnimatedProperty = field(default_factory=lambda: AnimatedProperty.of([100.0, 100.0]))
    rotation: AnimatedProperty = field(default_factory=lambda: _static_scalar(0.0))
    opacity: AnimatedProperty = field(default_factory=lambda: _static_scalar(100.0))
    skew: AnimatedProperty = field(default_factory=lambda: _static_scalar(0.0))
    skew_axis: AnimatedProperty = field(default_factory=lambda: _static_scalar(0.0))
    extras: dict = field(default_factory=dict)


@dataclass
class Mask:
    mode: int = 1
    path: AnimatedProperty = field(default_factory=lambda: AnimatedProperty(is_path=True, dim=0, static=BezierPath()))
    opacity: AnimatedProperty = field(default_factory=lambda: _static_scalar(100.0))
    expansion: AnimatedProperty = field(default_factory=lambda: _static_scalar(0.0))
    name: str = ""
    extras: dict = field(default_factory=dict)


@dataclass
class EffectParam:
    kind: int = 0  # 0 slider, 1 angle, 2 color, 3 point, 4 checkbox, 5 dropdown, 6 layer ref
    name: str = ""
    match_name: str = ""
    value: AnimatedProperty = field(default_factory=lambda: _static_scalar(0.0))
    extras: dict = field(default_factory=dict)


@dataclass
class Effect:
    kind: int = 5
    name: str = ""
    match_name: str = ""
    enabled: int = 1
    params: list[EffectParam] = field(default_factory=list)
    extras: dict = field(default_factory=dict)


# --- shape tree -------------------------------------------------------------


@dataclass
class ShapeNode:
    name: str = ""
    match_name: str = ""
    hidden: int = 0
    extras: dict = field(default_factory=dict)


@dataclass
class Group(ShapeNode):
    children: list[ShapeNode] = field(default_factory=list)


@dataclass
class Path(ShapeNode):
    shape: AnimatedProperty = field(default_factory=lambda: AnimatedProperty(is_path=True, dim=0, static=BezierPath()))


@dataclass
class Fill(ShapeNode):
    color: AnimatedProperty = field(default_factory=lambda: AnimatedProperty.of([0.0, 0.0, 0.0]))
    opacity: AnimatedProperty = field(default_factory=lambda: _static_scalar(100.0))
    rule: int | None = None


@dataclass
class Stroke(ShapeNode):
    color: AnimatedProperty = field(default_factory=lambda: AnimatedProperty.of([0.0, 0.0, 0.0]))
    opacity: AnimatedProperty = field(default_factory=lambda: _static_scalar(100.0))
    width: AnimatedProperty = field(default_factory=lambda: _static_scalar(1.0))
    line_cap: int = 2
    line_join: int = 2
    miter_limit: float | None = None


@dataclass
class GradientStops:
    count: int = 0
    data: AnimatedProperty = field(default_factory=lambda: AnimatedProperty.of([]))


@dataclass
class GradientFill(ShapeNode):
    gradient_type: int = 1
    start: AnimatedProperty = field(default_factory=lambda: AnimatedProperty.of([0.0, 0.0]))
    end: AnimatedProperty = field(default_factory=lambda: AnimatedProperty.of([0.0, 0.0]))
    stops: GradientStops = field(default_factory=GradientStops)
    opacity: AnimatedProperty = field(default_factory=lambda: _static_scalar(100.0))
    rule: int | None = None


@dataclass
class GradientStroke(ShapeNode):
    gradient_type: int = 1
    start: AnimatedProperty = field(default_factory=lambda: AnimatedProperty.of([0.0, 0.0]))
    end: AnimatedProperty = field(default_factory=lambda: AnimatedProperty.of([0.0, 0.0]))
    stops: GradientStops = field(default_factory=GradientStops)
    opacity: AnimatedProperty = field(default_factory=lambda: _static_scalar(100.0))
    width: AnimatedProperty = field(default_factory=lambda: _static_scalar(1.0))
    line_cap: int = 2
    line_join: int = 2
    miter_limit: float | None = None


@dataclass
class Rect(ShapeNode):
    position: AnimatedProperty = field(default_factory=lambda: AnimatedProperty.of([0.0, 0.0]))
    size: AnimatedProperty = field(default_factory=lambda: AnimatedProperty.of([0.0, 0.0]))
    roundness: AnimatedProperty = field(default_factory=lambda: _static_scalar(0.0))


@dataclass
class Ellipse(ShapeNode):
    position: AnimatedProperty = field(default_factory=lambda: AnimatedProperty.of([0.0, 0.0]))
    size: AnimatedProperty = field(default_factory=lambda: AnimatedProperty.of([0.0, 0.0]))


@dataclass
class Star(ShapeNode):
    star_type: int = 1  # 1 star, 2 polygon
    points: AnimatedProperty = field(default_factory=lambda: _static_scalar(5.0))
    position: AnimatedProperty = field(default_factory=lambda: AnimatedProperty.of([0.0, 0.0]))
    rotation: AnimatedProperty = field(default_factory=lambda: _static_scalar(0.0))
    outer_radius: AnimatedProperty = field(default_factory=lambda: _static_scalar(0.0))
    outer_roundness: AnimatedProperty = field(default_factory=lambda: _static_scalar(0.0))
    inner_radius: AnimatedProperty | None = None
    inner_roundness: AnimatedProperty | None = None


@dataclass
class GroupTransform(ShapeNode):
    anchor: Vec2Prop = field(default_factory=lambda: Vec2Prop.of(0.0, 0.0))
    position: Vec2Prop = field(default_factory=lambda: Vec2Prop.of(0.0, 0.0))
    scale: AnimatedProperty = field(default_factory=lambda: AnimatedProperty.of([100.0, 100.0]))
    rotation: AnimatedProperty = field(default_factory=lambda: _static_scalar(0.0))
    opacity: AnimatedProperty = field(default_factory=lambda: _static_scalar(100.0))
    skew: AnimatedProperty = field(default_factory=lambda: _static_scalar(0.0))
    skew_axis: AnimatedProperty = field(default_factory=lambda: _static_scalar(0.0))


@dataclass
class TrimPath(ShapeNode):
    start: AnimatedProperty = field(default_factory=lambda: _static_scalar(0.0))
    end: AnimatedProperty = field(default_factory=lambda: _static_scalar(100.0))
    offset: AnimatedProperty = field(default_factory=lambda: _static_scalar(0.0))
    mode: int = 1


@dataclass
class RepeaterTransform:
    anchor: AnimatedProperty = field(default_factory=lambda: AnimatedProperty.of([0.0, 0.0]))
    position: AnimatedProperty = field(default_factory=lambda: AnimatedProperty.of([0.0, 0.0]))
    scale: AnimatedProperty = field(default_factory=lambda: AnimatedProperty.of([100.0, 100.0]))
    rotation: AnimatedProperty = field(default_factory=lambda: _static_scalar(0.0))
    start_opacity: AnimatedProperty = field(default_factory=lambda: _static_scalar(100.0))
    end_opacity: AnimatedProperty = field(default_factory=lambda: _static_scalar(100.0))
    extras: dict = field(default_factory=dict)


@dataclass
class Repeater(ShapeNode):
    copies: AnimatedProperty = field(default_factory=lambda: _static_scalar(1.0))
    offset: AnimatedProperty = field(default_factory=lambda: _static_scalar(0.0))
    composite: int = 1
    transform: RepeaterTransform = field(default_factory=RepeaterTransform)


@dataclass
class MergePaths(ShapeNode):
    mode: int = 1


@dataclass
class RoundedCorners(ShapeNode):
    radius: AnimatedProperty = field(default_factory=lambda: _static_scalar(0.0))


@dataclass
class ZigZag(ShapeNode):
    amplitude: AnimatedProperty = field(default_factory=lambda: _static_scalar(0.0))
    frequency: AnimatedProperty = field(default_factory=lambda: _static_scalar(1.0))
    point_type: AnimatedProperty = field(default_factory=lambda: _static_scalar(1.0))


SHAPE_TY = {
    Group: "gr", Path: "sh", Fill: "fl", Stroke: "st",
    GradientFill: "gf", GradientStroke: "gs", Rect: "rc", Ellipse: "el",
    Star: "sr", GroupTransform: "tr", TrimPath: "tm", Repeater: "rp",
    MergePaths: "mm", RoundedCorners: "rd", ZigZag: "zz",
}
TY_SHAPE = {v: k for k, v in SHAPE_TY.items()}


# --- text -------------------------------------------------------------------


@dataclass
class TextDocument:
    font: str = ""
    size: float = 36.0
    color: list[float] = field(default_factory=lambda: [0.0, 0.0, 0.0])
    justify: int = 0
    tracking: float = 0.0
    leading: float | None = None
    text: str = ""
    extras: dict = field(default_factory=dict)


@dataclass
class TextDocKeyframe:
    time: float = 0.0
    document: TextDocument = field(default_factory=TextDocument)


@dataclass
class TextAnimator:
    name: str = ""
    basis: int = 1
    sel_start: AnimatedProperty | None = None
    sel_end: AnimatedProperty | None = None
    sel_extras: dict = field(default_factory=dict)
    position: Vec2Prop | None = None
    rotation: AnimatedProperty | None = None
    scale: AnimatedProperty | None = None
    fill_color: AnimatedProperty | None = None
    opacity: AnimatedProperty | None = None
    tracking: AnimatedProperty | None = None
    extras: dict = field(default_factory=dict)


@dataclass
class TextPayload:
    documents: list[TextDocKeyframe] = field(default_factory=list)
    animators: list[TextAnimator] = field(default_factory=list)
    extras: dict = field(default_factory=dict)


# --- layer payloads ----------------------------------------------------------


@dataclass
class PrecompPayload:
    ref_id: str = ""
    width: float = 0.0
    height: float = 0.0
    time_remap: AnimatedProperty | None = None


@dataclass
class SolidPayload:
    width: float = 0.0
    height: float = 0.0
    color: str = "#000000"  # 6-char lowercase hex


@dataclass
class NullPayload:
    pass


@dataclass
class ShapePayload:
    shapes: list[ShapeNode] = field(default_factory=list)


@dataclass
class Layer:
    kind: int = 3
    index: int | None = None
    name: str = ""
    match_name: str = ""
    in_point: float = 0.0
    out_point: float = 0.0
    start_time: float = 0.0
    stretch: float = 1.0
    parent: int | None = None
    transform: Transform = field(default_factory=Transform)
    auto_orient: int = 0
    three_d: int = 0
    hidden: int = 0
    collapse: int | None = None
    matte_mode: int | None = None
    matte_parent: int | None = None
    matte_target: int | None = None
    blend_mode: int = 0
    css_class: str = ""
    layer_xml_id: str = ""
    masks: list[Mask] = field(default_factory=list)
    effects: list[Effect] = field(default_factory=list)
    styles: Any = None  # opaque `sy` passthrough
    payload: PrecompPayload | SolidPayload | NullPayload | ShapePayload | TextPayload = field(default_factory=NullPayload)
    extras: dict = field(default_factory=dict)


@dataclass
class RawLayer:
    """Opaque stub for layer kinds outside the schema; lenient mode only."""

    kind: int = 2
    index: int | None = None
    raw: dict = field(default_factory=dict)


@dataclass
class FontDef:
    name: str = ""
    family: str = ""
    style: str = ""
    ascent: float | None = None
    extras: dict = field(default_factory=dict)


@dataclass
class PrecompAsset:
    asset_id: str = ""
    layers: list = field(default_factory=list)
    frame_rate: float | None = None
    extras: dict = field(default_factory=dict)


@dataclass
class RawAsset:
    """Opaque stub for image and other non-precomp assets; lenient mode only."""

    asset_id: str = ""
    raw: dict = field(default_factory=dict)


@dataclass
class Animation:
    version: str = DEFAULT_VERSION
    frame_rate: float = 60.0
    in_point: float = 0.0
    out_point: float = 60.0
    width: float = 512.0
    height: float = 512.0
    name: str = ""
    three_d_flag: int = 0
    layers: list = field(default_factory=list)
    assets: list = field(default_factory=list)
    markers: list = field(default_factory=list)  # opaque passthrough
    fonts: list[FontDef] = field(default_factory=list)
    chars: list = field(default_factory=list)  # opaque passthrough
    extras: dict = field(default_factory=dict)


# =============================================================================
# Parsing
# =============================================================================


def _ty_name(v) -> str:
    return type(v).__name__


def _num(v, path: str) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise SchemaViolation(path, f"expected number, got {_ty_name(v)}")
    f = float(v)
    if not math.isfinite(f):
        raise SchemaViolation(path, "non-finite number")
    return f


def _int(v, path: str) -> int:
    if isinstance(v, bool):
        return int(v)
    if isinstance(v, int):
        return v
    if isinstance(v, float) and v == int(v):
        return int(v)
    raise SchemaViolation(path, f"expected integer, got {v!r}")


def _flag(v, path: str) -> int:
    i = _int(v, path)
    if i not in (0, 1):
        raise SchemaViolation(path, f"expected 0/1 flag, got {v!r}")
    return i


def _text(v, path: str) -> str:
    if not isinstance(v, str):
        raise SchemaViolation(path, f"expected string, got {_ty_name(v)}")
    return v


def _dict(v, path: str) -> dict:
    if not isinstance(v, dict):
        raise SchemaViolation(path, f"expected object, got {_ty_name(v)}")
    return v


def _list(v, path: str) -> list:
    if not isinstance(v, list):
        raise SchemaViolation(path, f"expected array, got {_ty_name(v)}")
    return v


def _vecf(v, path: str) -> list[float]:
    return [_num(x, f"{path}[{i}]") for i, x in enumerate(_list(v, path))]


class _Obj:
    """Dict wrapper that tracks consumed keys; leftovers become extras."""

    def __init__(self, d: dict, path: str):
        self.d = d
        self.path = path
        self.used: set[str] = set()

    def has(self, key: str) -> bool:
        return key in self.d

    def take(self, key: str, default=None):
        self.used.add(key)
        return self.d.get(key, default)

    def require(self, key: str):
        if key not in self.d:
            raise SchemaViolation(self.path, f"missing required key {key!r}")
        return self.take(key)

    def extras(self) -> dict:
        return {k: v for k, v in self.d.items() if k not in self.used}


def _parse_ease_pair(v, path: str, default: tuple[float, float]) -> tuple[float, float]:
    if v is None:
        return default
    d = _dict(v, path)
    xs, ys = d.get("x", default[0]), d.get("y", default[1])
    if isinstance(xs, list):
        xs = xs[0] if xs else default[0]
    if isinstance(ys, list):
        ys = ys[0] if ys else default[1]
    x, y = _num(xs, f"{path}.x"), _num(ys, f"{path}.y")
    for name, t in (("x", x), ("y", y)):
        if not 0.0 <= t <= 1.0:
            raise SchemaViolation(f"{path}.{name}", f"easing tangent {t} outside [0,1]")
    return (x, y)


def _parse_bezier(v, path: str) -> BezierPath:
    d = _dict(v, path)
    verts = [_vecf(p, f"{path}.v[{i}]") for i, p in enumerate(_list(d.get("v", []), f"{path}.v"))]
    tin = [_vecf(p, f"{path}.i[{i}]") for i, p in enumerate(_list(d.get("i", []), f"{path}.i"))]
    tout = [_vecf(p, f"{path}.o[{i}]") for i, p in enumerate(_list(d.get("o", []), f"{path}.o"))]
    if not (len(verts) == len(tin) == len(tout)):
        raise SchemaViolation(path, "path v/i/o lists differ in length")
    for i, p in enumerate(verts + tin + tout):
        if len(p) != 2:
            raise SchemaViolation(f"{path}[{i}]", "path point is not 2D")
    closed = bool(d.get("c", False))
    return BezierPath(closed=closed, vertices=verts, in_tangents=tin, out_tangents=tout)


def _scalar_or_vec(v, path: str) -> list[float]:
    if isinstance(v, list):
        return _vecf(v, path)
    return [_num(v, path)]


def _kf_value(v, path: str, is_path: bool):
    if is_path:
        if isinstance(v, list):
            if len(v) != 1:
                raise SchemaViolation(path, "path keyframe value must hold one shape")
            return _parse_bezier(v[0], path)
        return _parse_bezier(v, path)
    return _scalar_or_vec(v, path)


def _parse_property(raw, path: str, is_path: bool = False, dim_hint: int | None = None) -> AnimatedProperty:
    """Parse a Lottie animated property, normalizing legacy keyframe forms.

    Legacy encodings are canonicalized: a keyframe missing `s` inherits the
    previous keyframe's end value, and redundant `e` fields are dropped
    (modern players interpolate between consecutive `s` values).
    """
    if not isinstance(raw, dict):
        if is_path:
            return AnimatedProperty(is_path=True, dim=0, static=_parse_bezier(raw, path))
        vals = _scalar_or_vec(raw, path)
        return AnimatedProperty(dim=len(vals), static=vals)

    obj = _Obj(raw, path)
    a = obj.take("a")
    k = obj.take("k")
    if k is None:
        raise SchemaViolation(path, "property has no value (missing k)")
    animated = bool(a) if a is not None else (
        isinstance(k, list) and bool(k) and isinstance(k[0], dict) and "t" in k[0]
    )
    extras = obj.extras()

    if not animated:
        if is_path:
            return AnimatedProperty(is_path=True, dim=0, static=_parse_bezier(k, f"{path}.k"), extras=extras)
        vals = _scalar_or_vec(k, f"{path}.k")
        dim = dim_hint if dim_hint is not None else len(vals)
        return AnimatedProperty(dim=dim, static=vals, extras=extras)

    kfs: list[Keyframe] = []
    raw_kfs = _list(k, f"{path}.k")
    pending: list[tuple[dict, str]] = [(_dict(e, f"{path}.k[{i}]"), f"{path}.k[{i}]") for i, e in enumerate(raw_kfs)]
    values: list = []
    # First pass: resolve values with legacy carry-forward of s/e.
    for i, (d, p) in enumerate(pending):
        if "s" in d:
            values.append(_kf_value(d["s"], f"{p}.s", is_path))
        elif i > 0:
            prev = pending[i - 1][0]
            src = prev.get("e", prev.get("s"))
            if src is None:
                raise SchemaViolation(p, "keyframe missing value and no predecessor to inherit from")
            values.append(_kf_value(src, f"{p}(inherited)", is_path))
        else:
            raise SchemaViolation(p, "first keyframe missing value")
    last_t = None
    for i, (d, p) in enumerate(pending):
        ko = _Obj(d, p)
        t = _num(ko.require("t"), f"{p}.t")
        if last_t is not None and t <= last_t:
            raise SchemaViolation(f"{p}.t", f"keyframe times not strictly increasing ({t} after {last_t})")
        last_t = t
        ko.take("s")
        ko.take("e")  # legacy end value, absorbed above
        hold = _flag(ko.take("h", 0), f"{p}.h")
        ein = _parse_ease_pair(ko.take("i"), f"{p}.i", LINEAR_EASE_IN)
        eout = _parse_ease_pair(ko.take("o"), f"{p}.o", LINEAR_EASE_OUT)
        kfs.append(Keyframe(time=t, value=values[i], ease_in=ein, ease_out=eout, hold=hold, extras=ko.extras()))
    if not kfs:
        raise SchemaViolation(path, "animated property with empty keyframe list")
    if is_path:
        return AnimatedProperty(is_path=True, dim=0, keyframes=kfs, extras=extras)
    dims = {len(kf.value) for kf in kfs}
    if len(dims) != 1:
        raise SchemaViolation(path, "keyframe values differ in dimension")
    return AnimatedProperty(dim=dims.pop(), keyframes=kfs, extras=extras)


def _parse_vec2prop(raw, path: str) -> Vec2Prop:
    if isinstance(raw, dict) and raw.get("s") is True:
        obj = _Obj(raw, path)
        obj.take("s")
        x = _parse_property(obj.require("x"), f"{path}.x", dim_hint=1)
        y = _parse_property(obj.require("y"), f"{path}.y", dim_hint=1)
        return Vec2Prop(x=x, y=y, extras=obj.extras())
    prop = _parse_property(raw, path, dim_hint=2)
    if prop.static is not None and len(prop.static) < 2:
        raise SchemaViolation(path, "2D property with fewer than 2 components")
    return Vec2Prop(joint=prop)


def _parse_color_prop(raw, path: str, dim: int = 3) -> AnimatedProperty:
    """Color property normalized to a fixed channel count."""
    prop = _parse_property(raw, path, dim_hint=dim)

    def fix(vals: list[float]) -> list[float]:
        if len(vals) > dim:
            return vals[:dim]
        if len(vals) < dim:
            return vals + [1.0] * (dim - len(vals))
        return vals

    if prop.static is not None:
        prop.static = fix(prop.static)
    else:
        for kf in prop.keyframes:
            kf.value = fix(kf.value)
    prop.dim = dim
    return prop


def _parse_transform(raw, path: str) -> Transform:
    if raw is None:
        return Transform()
    obj = _Obj(_dict(raw, path), path)
    tr = Transform()
    if obj.has("a"):
        tr.anchor = _parse_vec2prop(obj.take("a"), f"{path}.a")
    if obj.has("p"):
        tr.position = _parse_vec2prop(obj.take("p"), f"{path}.p")
    if obj.has("s"):
        tr.scale = _parse_property(obj.take("s"), f"{path}.s", dim_hint=2)
    if obj.has("r"):
        tr.rotation = _parse_property(obj.take("r"), f"{path}.r", dim_hint=1)
    if obj.has("o"):
        tr.opacity = _parse_property(obj.take("o"), f"{path}.o", dim_hint=1)
    if obj.has("sk"):
        tr.skew = _parse_property(obj.take("sk"), f"{path}.sk", dim_hint=1)
    if obj.has("sa"):
        tr.skew_axis = _parse_property(obj.take("sa"), f"{path}.sa", dim_hint=1)
    tr.extras = obj.extras()
    return tr


def _parse_gradient_stops(raw, path: str) -> GradientStops:
    obj = _Obj(_dict(raw, path), path)
    count = _int(obj.require("p"), f"{path}.p")
    data = _parse_property(obj.require("k"), f"{path}.k")
    if obj.extras():
        data.extras.update(obj.extras())
    return GradientStops(count=count, data=data)


def _parse_shape_node(raw, path: str) -> ShapeNode:
    obj = _Obj(_dict(raw, path), path)
    ty = _text(obj.require("ty"), f"{path}.ty")
    cls = TY_SHAPE.get(ty)
    if cls is None:
        raise SchemaViolation(f"{path}.ty", f"unknown shape node type {ty!r}")
    node = cls()
    node.name = _text(obj.take("nm", ""), f"{path}.nm")
    node.match_name = _text(obj.take("mn", ""), f"{path}.mn")
    node.hidden = _flag(obj.take("hd", 0), f"{path}.hd")

    if cls is Group:
        items = _list(obj.take("it", []), f"{path}.it")
        node.children = [_parse_shape_node(ch, f"{path}.it[{i}]") for i, ch in enumerate(items)]
    elif cls is Path:
        node.shape = _parse_property(obj.require("ks"), f"{path}.ks", is_path=True)
    elif cls is Fill:
        node.color = _parse_color_prop(obj.require("c"), f"{path}.c")
        node.opacity = _parse_property(obj.take("o", 100), f"{path}.o", dim_hint=1)
        node.rule = _int(obj.take("r"), f"{path}.r") if obj.has("r") else None
    elif cls is Stroke:
        node.color = _parse_color_prop(obj.require("c"), f"{path}.c")
        node.opacity = _parse_property(obj.take("o", 100), f"{path}.o", dim_hint=1)
        node.width = _parse_property(obj.take("w", 1), f"{path}.w", dim_hint=1)
        node.line_cap = _int(obj.take("lc", 2), f"{path}.lc")
        node.line_join = _int(obj.take("lj", 2), f"{path}.lj")
        node.miter_limit = _num(obj.take("ml"), f"{path}.ml") if obj.has("ml") else None
    elif cls in (GradientFill, GradientStroke):
        node.gradient_type = _int(obj.take("t", 1), f"{path}.t")
        node.start = _parse_property(obj.require("s"), f"{path}.s", dim_hint=2)
        node.end = _parse_property(obj.require("e"), f"{path}.e", dim_hint=2)
        node.stops = _parse_gradient_stops(obj.require("g"), f"{path}.g")
        node.opacity = _parse_property(obj.take("o", 100), f"{path}.o", dim_hint=1)
        if cls is GradientFill:
            node.rule = _int(obj.take("r"), f"{path}.r") if obj.has("r") else None
        else:
            node.width = _parse_property(obj.take("w", 1), f"{path}.w", dim_hint=1)
            node.line_cap = _int(obj.take("lc", 2), f"{path}.lc")
            node.line_join = _int(obj.take("lj", 2), f"{path}.lj")
            node.miter_limit = _num(obj.take("ml"), f"{path}.ml") if obj.has("ml") else None
    elif cls is Rect:
        node.position = _parse_property(obj.require("p"), f"{path}.p", dim_hint=2)
        node.size = _parse_property(obj.require("s"), f"{path}.s", dim_hint=2)
        node.roundness = _parse_property(obj.take("r", 0), f"{path}.r", dim_hint=1)
    elif cls is Ellipse:
        node.position = _parse_property(obj.require("p"), f"{path}.p", dim_hint=2)
        node.size = _parse_property(obj.require("s"), f"{path}.s", dim_hint=2)
    elif cls is Star:
        node.star_type = _int(obj.take("sy", 1), f"{path}.sy")
        node.points = _parse_property(obj.require("pt"), f"{path}.pt", dim_hint=1)
        if node.points.static is not None and node.points.static[0] < 3:
            raise SchemaViolation(f"{path}.pt", "star point count below 3")
        node.position = _parse_property(obj.require("p"), f"{path}.p", dim_hint=2)
        node.rotation = _parse_property(obj.take("r", 0), f"{path}.r", dim_hint=1)
        node.outer_radius = _parse_property(obj.require("or"), f"{path}.or", dim_hint=1)
        node.outer_roundness = _parse_property(obj.take("os", 0), f"{path}.os", dim_hint=1)
        node.inner_radius = _parse_property(obj.take("ir"), f"{path}.ir", dim_hint=1) if obj.has("ir") else None
        node.inner_roundness = _parse_property(obj.take("is"), f"{path}.is", dim_hint=1) if obj.has("is") else None
    elif cls is GroupTransform:
        if obj.has("a"):
            node.anchor = _parse_vec2prop(obj.take("a"), f"{path}.a")
        if obj.has("p"):
            node.position = _parse_vec2prop(obj.take("p"), f"{path}.p")
        if obj.has("s"):
            node.scale = _parse_property(obj.take("s"), f"{path}.s", dim_hint=2)
        if obj.has("r"):
            node.rotation = _parse_property(obj.take("r"), f"{path}.r", dim_hint=1)
        if obj.has("o"):
            node.opacity = _parse_property(obj.take("o"), f"{path}.o", dim_hint=1)
        if obj.has("sk"):
            node.skew = _parse_property(obj.take("sk"), f"{path}.sk", dim_hint=1)
        if obj.has("sa"):
            node.skew_axis = _parse_property(obj.take("sa"), f"{path}.sa", dim_hint=1)
    elif cls is TrimPath:
        node.start = _parse_property(obj.take("s", 0), f"{path}.s", dim_hint=1)
        node.end = _parse_property(obj.take("e", 100), f"{path}.e", dim_hint=1)
        node.offset = _parse_property(obj.take("o", 0), f"{path}.o", dim_hint=1)
        node.mode = _int(obj.take("m", 1), f"{path}.m")
    elif cls is Repeater:
        node.copies = _parse_property(obj.take("c", 1), f"{path}.c", dim_hint=1)
        node.offset = _parse_property(obj.take("o", 0), f"{path}.o", dim_hint=1)
        node.composite = _int(obj.take("m", 1), f"{path}.m")
        if obj.has("tr"):
            tobj = _Obj(_dict(obj.take("tr"), f"{path}.tr"), f"{path}.tr")
            rt = RepeaterTransform()
            if tobj.has("a"):
                rt.anchor = _parse_property(tobj.take("a"), f"{path}.tr.a", dim_hint=2)
            if tobj.has("p"):
                rt.position = _parse_property(tobj.take("p"), f"{path}.tr.p", dim_hint=2)
            if tobj.has("s"):
                rt.scale = _parse_property(tobj.take("s"), f"{path}.tr.s", dim_hint=2)
            if tobj.has("r"):
                rt.rotation = _parse_property(tobj.take("r"), f"{path}.tr.r", dim_hint=1)
            if tobj.has("so"):
                rt.start_opacity = _parse_property(tobj.take("so"), f"{path}.tr.so", dim_hint=1)
            if tobj.has("eo"):
                rt.end_opacity = _parse_property(tobj.take("eo"), f"{path}.tr.eo", dim_hint=1)
            rt.extras = tobj.extras()
            node.transform = rt
    elif cls is MergePaths:
        node.mode = _int(obj.take("mm", 1), f"{path}.mm")
    elif cls is RoundedCorners:
        node.radius = _parse_property(obj.require("r"), f"{path}.r", dim_hint=1)
    elif cls is ZigZag:
        node.amplitude = _parse_property(obj.take("s", 0), f"{path}.s", dim_hint=1)
        node.frequency = _parse_property(obj.take("r", 1), f"{path}.r", dim_hint=1)
        node.point_type = _parse_property(obj.take("pt", 1), f"{path}.pt", dim_hint=1)
    node.extras = obj.extras()
    return node


def _parse_mask(raw, path: str) -> Mask:
    obj = _Obj(_dict(raw, path), path)
    mode_ch = _text(obj.take("mode", "a"), f"{path}.mode")
    if mode_ch not in MASK_MODES:
        raise SchemaViolation(f"{path}.mode", f"unknown mask mode {mode_ch!r}")
    m = Mask(mode=MASK_MODES[mode_ch])
    if obj.has("pt"):
        m.path = _parse_property(obj.take("pt"), f"{path}.pt", is_path=True)
    if obj.has("o"):
        m.opacity = _parse_property(obj.take("o"), f"{path}.o", dim_hint=1)
    if obj.has("x"):
        m.expansion = _parse_property(obj.take("x"), f"{path}.x", dim_hint=1)
    m.name = _text(obj.take("nm", ""), f"{path}.nm")
    m.extras = obj.extras()
    return m


def _parse_effect(raw, path: str) -> Effect:
    obj = _Obj(_dict(raw, path), path)
    eff = Effect(kind=_int(obj.require("ty"), f"{path}.ty"))
    eff.name = _text(obj.take("nm", ""), f"{path}.nm")
    eff.match_name = _text(obj.take("mn", ""), f"{path}.mn")
    eff.enabled = _flag(obj.take("en", 1), f"{path}.en")
    obj.take("np")  # derived from the parameter list on output
    for i, p in enumerate(_list(obj.take("ef", []), f"{path}.ef")):
        pobj = _Obj(_dict(p, f"{path}.ef[{i}]"), f"{path}.ef[{i}]")
        raw_kind = _int(pobj.require("ty"), f"{path}.ef[{i}].ty")
        if raw_kind not in EFFECT_PARAM_KINDS:
            raise SchemaViolation(f"{path}.ef[{i}].ty", f"unsupported effect parameter type {raw_kind}")
        kind = EFFECT_PARAM_KINDS[raw_kind]
        dim = EFFECT_PARAM_DIMS[kind]
        param = EffectParam(kind=kind)
        param.name = _text(pobj.take("nm", ""), f"{path}.ef[{i}].nm")
        param.match_name = _text(pobj.take("mn", ""), f"{path}.ef[{i}].mn")
        if pobj.has("v"):
            if kind == 2:
                param.value = _parse_color_prop(pobj.take("v"), f"{path}.ef[{i}].v", dim=4)
            else:
                param.value = _parse_property(pobj.take("v"), f"{path}.ef[{i}].v", dim_hint=dim)
        else:
            param.value = AnimatedProperty.of([0.0] * dim)
        param.extras = pobj.extras()
        eff.params.append(param)
    eff.extras = obj.extras()
    return eff


def _parse_text_payload(raw, path: str) -> TextPayload:
    obj = _Obj(_dict(raw, path), path)
    payload = TextPayload()
    d = _Obj(_dict(obj.require("d"), f"{path}.d"), f"{path}.d")
    for i, entry in enumerate(_list(d.require("k"), f"{path}.d.k")):
        eobj = _Obj(_dict(entry, f"{path}.d.k[{i}]"), f"{path}.d.k[{i}]")
        t = _num(eobj.take("t", 0), f"{path}.d.k[{i}].t")
        sobj = _Obj(_dict(eobj.require("s"), f"{path}.d.k[{i}].s"), f"{path}.d.k[{i}].s")
        doc = TextDocument(
            font=_text(sobj.take("f", ""), f"{path}.d.k[{i}].s.f"),
            size=_num(sobj.take("s", 36), f"{path}.d.k[{i}].s.s"),
            justify=_int(sobj.take("j", 0), f"{path}.d.k[{i}].s.j"),
            tracking=_num(sobj.take("tr", 0), f"{path}.d.k[{i}].s.tr"),
            text=_text(sobj.take("t", ""), f"{path}.d.k[{i}].s.t"),
        )
        if sobj.has("fc"):
            fc = _vecf(sobj.take("fc"), f"{path}.d.k[{i}].s.fc")
            doc.color = (fc + [0.0, 0.0, 0.0])[:3]
        doc.leading = _num(sobj.take("lh"), f"{path}.d.k[{i}].s.lh") if sobj.has("lh") else None
        doc.extras = sobj.extras()
        if eobj.extras():
            doc.extras.update({f"__kf_{k}": v for k, v in eobj.extras().items()})
        payload.documents.append(TextDocKeyframe(time=t, document=doc))
    doc_extras = d.extras()
    for i, a in enumerate(_list(obj.take("a", []), f"{path}.a")):
        aobj = _Obj(_dict(a, f"{path}.a[{i}]"), f"{path}.a[{i}]")
        anim = TextAnimator(name=_text(aobj.take("nm", ""), f"{path}.a[{i}].nm"))
        if aobj.has("s"):
            sobj = _Obj(_dict(aobj.take("s"), f"{path}.a[{i}].s"), f"{path}.a[{i}].s")
            anim.basis = _int(sobj.take("b", 1), f"{path}.a[{i}].s.b")
            if sobj.has("s"):
                anim.sel_start = _parse_property(sobj.take("s"), f"{path}.a[{i}].s.s", dim_hint=1)
            if sobj.has("e"):
                anim.sel_end = _parse_property(sobj.take("e"), f"{path}.a[{i}].s.e", dim_hint=1)
            anim.sel_extras = sobj.extras()
        if aobj.has("a"):
            pobj = _Obj(_dict(aobj.take("a"), f"{path}.a[{i}].a"), f"{path}.a[{i}].a")
            if pobj.has("p"):
                anim.position = _parse_vec2prop(pobj.take("p"), f"{path}.a[{i}].a.p")
            if pobj.has("r"):
                anim.rotation = _parse_property(pobj.take("r"), f"{path}.a[{i}].a.r", dim_hint=1)
            if pobj.has("s"):
                anim.scale = _parse_property(pobj.take("s"), f"{path}.a[{i}].a.s", dim_hint=2)
            if pobj.has("fc"):
                anim.fill_color = _parse_color_prop(pobj.take("fc"), f"{path}.a[{i}].a.fc")
            if pobj.has("o"):
                anim.opacity = _parse_property(pobj.take("o"), f"{path}.a[{i}].a.o", dim_hint=1)
            if pobj.has("t"):
                anim.tracking = _parse_property(pobj.take("t"), f"{path}.a[{i}].a.t", dim_hint=1)
            anim.extras = pobj.extras()
        payload.animators.append(anim)
    payload.extras = obj.extras()
    if doc_extras:
        payload.extras["__d"] = doc_extras
    return payload


def _normalize_hex_color(v: str, path: str) -> str:
    s = v.strip().lower()
    if not s.startswith("#"):
        raise SchemaViolation(path, f"solid color {v!r} is not #hex")
    body = s[1:]
    if len(body) == 3:
        body = "".join(c * 2 for c in body)
    if len(body) == 8:
        body = body[:6]  # drop alpha byte
    if len(body) != 6 or any(c not in "0123456789abcdef" for c in body):
        raise SchemaViolation(path, f"solid color {v!r} is not 6-char hex")
    return "#" + body


def _parse_layer(raw, path: str, lenient: bool):
    obj = _Obj(_dict(raw, path), path)
    kind = _int(obj.require("ty"), f"{path}.ty")
    if kind not in SUPPORTED_LAYER_KINDS:
        if lenient:
            ind = raw.get("ind")
            return RawLayer(kind=kind, index=ind if isinstance(ind, int) else None, raw=raw)
        raise UnsupportedLayerKind(kind, path)

    layer = Layer(kind=kind)
    layer.index = _int(obj.take("ind"), f"{path}.ind") if obj.has("ind") else None
    layer.name = _text(obj.take("nm", ""), f"{path}.nm")
    layer.match_name = _text(obj.take("mn", ""), f"{path}.mn")
    layer.in_point = _num(obj.take("ip", 0), f"{path}.ip")
    layer.out_point = _num(obj.take("op", 0), f"{path}.op")
    layer.start_time = _num(obj.take("st", 0), f"{path}.st")
    layer.stretch = _num(obj.take("sr", 1), f"{path}.sr")
    layer.parent = _int(obj.take("parent"), f"{path}.parent") if obj.has("parent") else None
    layer.transform = _parse_transform(obj.take("ks"), f"{path}.ks")
    layer.auto_orient = _flag(obj.take("ao", 0), f"{path}.ao")
    layer.three_d = _flag(obj.take("ddd", 0), f"{path}.ddd")
    layer.hidden = _flag(obj.take("hd", 0), f"{path}.hd")
    layer.collapse = _flag(obj.take("ct"), f"{path}.ct") if obj.has("ct") else None
    layer.matte_mode = _int(obj.take("tt"), f"{path}.tt") if obj.has("tt") else None
    layer.matte_parent = _int(obj.take("tp"), f"{path}.tp") if obj.has("tp") else None
    layer.matte_target = _flag(obj.take("td"), f"{path}.td") if obj.has("td") else None
    layer.blend_mode = _int(obj.take("bm", 0), f"{path}.bm")
    layer.css_class = _text(obj.take("cl", ""), f"{path}.cl")
    layer.layer_xml_id = _text(obj.take("ln", ""), f"{path}.ln")
    obj.take("hasMask")  # derived from masksProperties on output
    masks = obj.take("masksProperties", [])
    layer.masks = [_parse_mask(m, f"{path}.masksProperties[{i}]") for i, m in enumerate(_list(masks, f"{path}.masksProperties"))]
    effects = obj.take("ef", [])
    layer.effects = [_parse_effect(e, f"{path}.ef[{i}]") for i, e in enumerate(_list(effects, f"{path}.ef"))]
    layer.styles = obj.take("sy") if obj.has("sy") else None

    if kind == 0:
        layer.payload = PrecompPayload(
            ref_id=_text(obj.require("refId"), f"{path}.refId"),
            width=_num(obj.take("w", 0), f"{path}.w"),
            height=_num(obj.take("h", 0), f"{path}.h"),
            time_remap=_parse_property(obj.take("tm"), f"{path}.tm", dim_hint=1) if obj.has("tm") else None,
        )
    elif kind == 1:
        layer.payload = SolidPayload(
            width=_num(obj.require("sw"), f"{path}.sw"),
            height=_num(obj.require("sh"), f"{path}.sh"),
            color=_normalize_hex_color(_text(obj.require("sc"), f"{path}.sc"), f"{path}.sc"),
        )
    elif kind == 3:
        layer.payload = NullPayload()
    elif kind == 4:
        shapes = _list(obj.take("shapes", []), f"{path}.shapes")
        layer.payload = ShapePayload(
            shapes=[_parse_shape_node(s, f"{path}.shapes[{i}]") for i, s in enumerate(shapes)]
        )
    elif kind == 5:
        layer.payload = _parse_text_payload(obj.require("t"), f"{path}.t")
    layer.extras = obj.extras()
    return layer


def _parse_asset(raw, path: str, lenient: bool):
    obj = _Obj(_dict(raw, path), path)
    asset_id = _text(obj.take("id", ""), f"{path}.id")
    if "layers" not in raw:
        if lenient:
            return RawAsset(asset_id=asset_id, raw=raw)
        raise SchemaViolation(path, "non-precomp asset (no layers) unsupported in strict mode")
    obj.take("id")
    layers = [_parse_layer(l, f"{path}.layers[{i}]", lenient) for i, l in enumerate(_list(obj.require("layers"), f"{path}.layers"))]
    fr = _num(obj.take("fr"), f"{path}.fr") if obj.has("fr") else None
    return PrecompAsset(asset_id=asset_id, layers=layers, frame_rate=fr, extras=obj.extras())


def _check_layer_table(layers: list, path: str) -> None:
    """Unique indices; parent chains must not cycle (dangling refs are lint's job)."""
    seen: dict[int, int] = {}
    for i, layer in enumerate(layers):
        ind = getattr(layer, "index", None)
        if ind is None:
            continue
        if ind in seen:
            raise SchemaViolation(f"{path}[{i}].ind", f"duplicate layer index {ind}")
        seen[ind] = i
    for i, layer in enumerate(layers):
        hops = 0
        cur = getattr(layer, "parent", None)
        while cur is not None and cur in seen:
            hops += 1
            if hops > len(layers):
                raise SchemaViolation(f"{path}[{i}].parent", "parent links form a cycle")
            cur = getattr(layers[seen[cur]], "parent", None)


def parse_lottie(json_text: str, *, admit_raw_layers: bool = False) -> Animation:
    """Parse Lottie JSON into a typed :class:`Animation`.

    Strict mode rejects layer kinds outside {0,1,3,4,5} with
    :class:`UnsupportedLayerKind`; ``admit_raw_layers=True`` admits them as
    opaque stubs so the cleaning stage can remove them.
    """
    try:
        root = json.loads(json_text)
    except json.JSONDecodeError as e:
        raise MalformedJson(str(e)) from e
    if not isinstance(root, dict):
        raise SchemaViolation("$", "root is not a JSON object")

    obj = _Obj(root, "$")
    anim = Animation(
        version=_text(obj.take("v", DEFAULT_VERSION), "$.v"),
        frame_rate=_num(obj.require("fr"), "$.fr"),
        in_point=_num(obj.require("ip"), "$.ip"),
        out_point=_num(obj.require("op"), "$.op"),
        width=_num(obj.require("w"), "$.w"),
        height=_num(obj.require("h"), "$.h"),
        name=_text(obj.take("nm", ""), "$.nm"),
        three_d_flag=_flag(obj.take("ddd", 0), "$.ddd"),
    )
    if anim.out_point < anim.in_point:
        raise SchemaViolation("$.op", f"out_point {anim.out_point} below in_point {anim.in_point}")
    if anim.width <= 0 or anim.height <= 0:
        raise SchemaViolation("$.w", "canvas dimensions must be positive")
    if anim.frame_rate <= 0:
        raise SchemaViolation("$.fr", "frame rate must be positive")

    anim.layers = [
        _parse_layer(l, f"$.layers[{i}]", admit_raw_layers)
        for i, l in enumerate(_list(obj.take("layers", []), "$.layers"))
    ]
    anim.assets = [
        _parse_asset(a, f"$.assets[{i}]", admit_raw_layers)
        for i, a in enumerate(_list(obj.take("assets", []), "$.assets"))
    ]
    anim.markers = _list(obj.take("markers", []), "$.markers")
    if obj.has("fonts"):
        fobj = _Obj(_dict(obj.take("fonts"), "$.fonts"), "$.fonts")
        for i, f in enumerate(_list(fobj.take("list", []), "$.fonts.list")):
            fo = _Obj(_dict(f, f"$.fonts.list[{i}]"), f"$.fonts.list[{i}]")
            anim.fonts.append(FontDef(
                name=_text(fo.take("fName", ""), f"$.fonts.list[{i}].fName"),
                family=_text(fo.take("fFamily", ""), f"$.fonts.list[{i}].fFamily"),
                style=_text(fo.take("fStyle", ""), f"$.fonts.list[{i}].fStyle"),
                ascent=_num(fo.take("ascent"), f"$.fonts.list[{i}].ascent") if fo.has("ascent") else None,
                extras=fo.extras(),
            ))
    anim.chars = _list(obj.take("chars", []), "$.chars")
    anim.extras = obj.extras()

    _check_layer_table(anim.layers, "$.layers")
    for i, asset in enumerate(anim.assets):
        if isinstance(asset, PrecompAsset):
            _check_layer_table(asset.layers, f"$.assets[{i}].layers")
    return anim


# =============================================================================
# Serialization
# =============================================================================


def _num_out(x: float):
    if isinstance(x, float) and x.is_integer() and abs(x) < 2**53:
        return int(x)
    return x


def _vec_out(v: list[float]) -> list:
    return [_num_out(x) for x in v]


def _bezier_out(b: BezierPath) -> dict:
    return {
        "i": [_vec_out(p) for p in b.in_tangents],
        "o": [_vec_out(p) for p in b.out_tangents],
        "v": [_vec_out(p) for p in b.vertices],
        "c": b.closed,
    }


def _prop_out(p: AnimatedProperty, scalar_bare: bool = True) -> dict:
    out: dict = {"a": 1 if p.animated else 0}
    if not p.animated:
        if p.is_path:
            out["k"] = _bezier_out(p.static)
        elif p.dim == 1 and scalar_bare:
            out["k"] = _num_out(p.static[0])
        else:
            out["k"] = _vec_out(p.static)
    else:
        kfs = []
        for kf in p.keyframes:
            d: dict = {}
            if kf.ease_in != LINEAR_EASE_IN or kf.ease_out != LINEAR_EASE_OUT:
                d["i"] = {"x": _num_out(kf.ease_in[0]), "y": _num_out(kf.ease_in[1])}
                d["o"] = {"x": _num_out(kf.ease_out[0]), "y": _num_out(kf.ease_out[1])}
            d["t"] = _num_out(kf.time)
            if p.is_path:
                d["s"] = [_bezier_out(kf.value)]
            else:
                d["s"] = _vec_out(kf.value)
            if kf.hold:
                d["h"] = 1
            d.update(kf.extras)
            kfs.append(d)
        out["k"] = kfs
    out.update(p.extras)
    return out


def _vec2prop_out(v: Vec2Prop) -> dict:
    if v.separated:
        out = {"s": True, "x": _prop_out(v.x), "y": _prop_out(v.y)}
        out.update(v.extras)
        return out
    return _prop_out(v.joint, scalar_bare=False)


def _transform_out(tr: Transform) -> dict:
    default = Transform()
    out: dict = {}
    if tr.anchor != default.anchor:
        out["a"] = _vec2prop_out(tr.anchor)
    if tr.position != default.position:
        out["p"] = _vec2prop_out(tr.position)
    if tr.scale != default.scale:
        out["s"] = _prop_out(tr.scale, scalar_bare=False)
    if tr.rotation != default.rotation:
        out["r"] = _prop_out(tr.rotation)
    if tr.opacity != default.opacity:
        out["o"] = _prop_out(tr.opacity)
    if tr.skew != default.skew:
        out["sk"] = _prop_out(tr.skew)
    if tr.skew_axis != default.skew_axis:
        out["sa"] = _prop_out(tr.skew_axis)
    out.update(tr.extras)
    return out


def _shape_node_out(node: ShapeNode) -> dict:
    out: dict = {"ty": SHAPE_TY[type(node)]}
    if node.name:
        out["nm"] = node.name
    if node.match_name:
        out["mn"] = node.match_name
    if node.hidden:
        out["hd"] = True
    if isinstance(node, Group):
        out["it"] = [_shape_node_out(ch) for ch in node.children]
    elif isinstance(node, Path):
        out["ks"] = _prop_out(node.shape)
    elif isinstance(node, Fill):
        out["c"] = _prop_out(node.color, scalar_bare=False)
        out["o"] = _prop_out(node.opacity)
        if node.rule is not None:
            out["r"] = node.rule
    elif isinstance(node, Stroke):
        out["c"] = _prop_out(node.color, scalar_bare=False)
        out["o"] = _prop_out(node.opacity)
        out["w"] = _prop_out(node.width)
        out["lc"] = node.line_cap
        out["lj"] = node.line_join
        if node.miter_limit is not None:
            out["ml"] = _num_out(node.miter_limit)
    elif isinstance(node, (GradientFill, GradientStroke)):
        out["t"] = node.gradient_type
        out["s"] = _prop_out(node.start, scalar_bare=False)
        out["e"] = _prop_out(node.end, scalar_bare=False)
        out["g"] = {"p": node.stops.count, "k": _prop_out(node.stops.data, scalar_bare=False)}
        out["o"] = _prop_out(node.opacity)
        if isinstance(node, GradientFill):
            if node.rule is not None:
                out["r"] = node.rule
        else:
            out["w"] = _prop_out(node.width)
            out["lc"] = node.line_cap
            out["lj"] = node.line_join
            if node.miter_limit is not None:
                out["ml"] = _num_out(node.miter_limit)
    elif isinstance(node, Rect):
        out["p"] = _prop_out(node.position, scalar_bare=False)
        out["s"] = _prop_out(node.size, scalar_bare=False)
        out["r"] = _prop_out(node.roundness)
    elif isinstance(node, Ellipse):
        out["p"] = _prop_out(node.position, scalar_bare=False)
        out["s"] = _prop_out(node.size, scalar_bare=False)
    elif isinstance(node, Star):
        out["sy"] = node.star_type
        out["pt"] = _prop_out(node.points)
        out["p"] = _prop_out(node.position, scalar_bare=False)
        out["r"] = _prop_out(node.rotation)
        if node.inner_radius is not None:
            out["ir"] = _prop_out(node.inner_radius)
        if node.inner_roundness is not None:
            out["is"] = _prop_out(node.inner_roundness)
        out["or"] = _prop_out(node.outer_radius)
        out["os"] = _prop_out(node.outer_roundness)
    elif isinstance(node, GroupTransform):
        default = GroupTransform()
        if node.anchor != default.anchor:
            out["a"] = _vec2prop_out(node.anchor)
        if node.position != default.position:
            out["p"] = _vec2prop_out(node.position)
        if node.scale != default.scale:
            out["s"] = _prop_out(node.scale, scalar_bare=False)
        if node.rotation != default.rotation:
            out["r"] = _prop_out(node.rotation)
        if node.opacity != default.opacity:
            out["o"] = _prop_out(node.opacity)
        if node.skew != default.skew:
            out["sk"] = _prop_out(node.skew)
        if node.skew_axis != default.skew_axis:
            out["sa"] = _prop_out(node.skew_axis)
    elif isinstance(node, TrimPath):
        out["s"] = _prop_out(node.start)
        out["e"] = _prop_out(node.end)
        out["o"] = _prop_out(node.offset)
        out["m"] = node.mode
    elif isinstance(node, Repeater):
        out["c"] = _prop_out(node.copies)
        out["o"] = _prop_out(node.offset)
        out["m"] = node.composite
        rt = node.transform
        tr_out: dict = {}
        rt_default = RepeaterTransform()
        if rt.anchor != rt_default.anchor:
            tr_out["a"] = _prop_out(rt.anchor, scalar_bare=False)
        if rt.position != rt_default.position:
            tr_out["p"] = _prop_out(rt.position, scalar_bare=False)
        if rt.scale != rt_default.scale:
            tr_out["s"] = _prop_out(rt.scale, scalar_bare=False)
        if rt.rotation != rt_default.rotation:
            tr_out["r"] = _prop_out(rt.rotation)
        if rt.start_opacity != rt_default.start_opacity:
            tr_out["so"] = _prop_out(rt.start_opacity)
        if rt.end_opacity != rt_default.end_opacity:
            tr_out["eo"] = _prop_out(rt.end_opacity)
        tr_out.update(rt.extras)
        out["tr"] = tr_out
    elif isinstance(node, MergePaths):
        out["mm"] = node.mode
    elif isinstance(node, RoundedCorners):
        out["r"] = _prop_out(node.radius)
    elif isinstance(node, ZigZag):
        out["s"] = _prop_out(node.amplitude)
        out["r"] = _prop_out(node.frequency)
        out["pt"] = _prop_out(node.point_type)
    out.update(node.extras)
    return out


def _mask_out(m: Mask) -> dict:
    out = {
        "mode": MASK_MODE_LETTERS[m.mode],
        "pt": _prop_out(m.path),
        "o": _prop_out(m.opacity),
        "x": _prop_out(m.expansion),
    }
    if m.name:
        out["nm"] = m.name
    out.update(m.extras)
    return out


def _effect_out(e: Effect) -> dict:
    out: dict = {"ty": e.kind}
    if e.name:
        out["nm"] = e.name
    if e.match_name:
        out["mn"] = e.match_name
    out["np"] = len(e.params)
    if e.enabled != 1:
        out["en"] = e.enabled
    params = []
    for p in e.params:
        pd: dict = {"ty": EFFECT_PARAM_KIND_CODES[p.kind]}
        if p.name:
            pd["nm"] = p.name
        if p.match_name:
            pd["mn"] = p.match_name
        pd["v"] = _prop_out(p.value, scalar_bare=False if p.kind in (2, 3) else True)
        pd.update(p.extras)
        params.append(pd)
    out["ef"] = params
    out.update(e.extras)
    return out


def _text_payload_out(t: TextPayload) -> dict:
    entries = []
    for dk in t.documents:
        doc = dk.document
        s: dict = {"f": doc.font, "s": _num_out(doc.size), "fc": _vec_out(doc.color)}
        if doc.justify:
            s["j"] = doc.justify
        if doc.tracking:
            s["tr"] = _num_out(doc.tracking)
        if doc.leading is not None:
            s["lh"] = _num_out(doc.leading)
        s["t"] = doc.text
        kf_extras = {}
        for k, v in doc.extras.items():
            if k.startswith("__kf_"):
                kf_extras[k[5:]] = v
            else:
                s[k] = v
        entry = {"s": s, "t": _num_out(dk.time)}
        entry.update(kf_extras)
        entries.append(entry)
    d_out = {"k": entries}
    out: dict = {"d": d_out}
    anims = []
    for a in t.animators:
        ad: dict = {}
        if a.name:
            ad["nm"] = a.name
        sel: dict = {}
        if a.basis != 1:
            sel["b"] = a.basis
        if a.sel_start is not None:
            sel["s"] = _prop_out(a.sel_start)
        if a.sel_end is not None:
            sel["e"] = _prop_out(a.sel_end)
        sel.update(a.sel_extras)
        if sel:
            ad["s"] = sel
        props: dict = {}
        if a.position is not None:
            props["p"] = _vec2prop_out(a.position)
        if a.rotation is not None:
            props["r"] = _prop_out(a.rotation)
        if a.scale is not None:
            props["s"] = _prop_out(a.scale, scalar_bare=False)
        if a.fill_color is not None:
            props["fc"] = _prop_out(a.fill_color, scalar_bare=False)
        if a.opacity is not None:
            props["o"] = _prop_out(a.opacity)
        if a.tracking is not None:
            props["t"] = _prop_out(a.tracking)
        props.update(a.extras)
        if props:
            ad["a"] = props
        anims.append(ad)
    if anims:
        out["a"] = anims
    extras = dict(t.extras)
    d_extra = extras.pop("__d", None)
    if d_extra:
        d_out.update(d_extra)
    out.update(extras)
    return out


def _layer_out(layer) -> dict:
    if isinstance(layer, RawLayer):
        return layer.raw
    out: dict = {}
    if layer.three_d:
        out["ddd"] = layer.three_d
    if layer.index is not None:
        out["ind"] = layer.index
    out["ty"] = layer.kind
    if layer.name:
        out["nm"] = layer.name
    if layer.match_name:
        out["mn"] = layer.match_name
    if layer.css_class:
        out["cl"] = layer.css_class
    if layer.layer_xml_id:
        out["ln"] = layer.layer_xml_id
    if layer.parent is not None:
        out["parent"] = layer.parent
    if layer.matte_mode is not None:
        out["tt"] = layer.matte_mode
    if layer.matte_parent is not None:
        out["tp"] = layer.matte_parent
    if layer.matte_target is not None:
        out["td"] = layer.matte_target
    if layer.stretch != 1:
        out["sr"] = _num_out(layer.stretch)
    ks = _transform_out(layer.transform)
    if ks:
        out["ks"] = ks
    if layer.auto_orient:
        out["ao"] = layer.auto_orient
    if layer.blend_mode:
        out["bm"] = layer.blend_mode
    if layer.hidden:
        out["hd"] = layer.hidden
    if layer.collapse is not None:
        out["ct"] = layer.collapse
    if layer.masks:
        out["hasMask"] = True
        out["masksProperties"] = [_mask_out(m) for m in layer.masks]
    if layer.effects:
        out["ef"] = [_effect_out(e) for e in layer.effects]
    if layer.styles is not None:
        out["sy"] = layer.styles

    p = layer.payload
    if isinstance(p, PrecompPayload):
        out["refId"] = p.ref_id
        out["w"] = _num_out(p.width)
        out["h"] = _num_out(p.height)
        if p.time_remap is not None:
            out["tm"] = _prop_out(p.time_remap)
    elif isinstance(p, SolidPayload):
        out["sw"] = _num_out(p.width)
        out["sh"] = _num_out(p.height)
        out["sc"] = p.color
    elif isinstance(p, ShapePayload):
        out["shapes"] = [_shape_node_out(s) for s in p.shapes]
    elif isinstance(p, TextPayload):
        out["t"] = _text_payload_out(p)

    out["ip"] = _num_out(layer.in_point)
    out["op"] = _num_out(layer.out_point)
    if layer.start_time != 0:
        out["st"] = _num_out(layer.start_time)
    out.update(layer.extras)
    return out


def _asset_out(asset) -> dict:
    if isinstance(asset, RawAsset):
        return asset.raw
    out: dict = {"id": asset.asset_id}
    if asset.frame_rate is not None:
        out["fr"] = _num_out(asset.frame_rate)
    out["layers"] = [_layer_out(l) for l in asset.layers]
    out.update(asset.extras)
    return out


def animation_to_obj(a: Animation) -> dict:
    """Animation as a plain JSON-ready object tree in canonical key order."""
    out: dict = {
        "v": a.version,
        "fr": _num_out(a.frame_rate),
        "ip": _num_out(a.in_point),
        "op": _num_out(a.out_point),
        "w": _num_out(a.width),
        "h": _num_out(a.height),
    }
    if a.name:
        out["nm"] = a.name
    if a.three_d_flag:
        out["ddd"] = a.three_d_flag
    out["assets"] = [_asset_out(x) for x in a.assets]
    if a.fonts:
        out["fonts"] = {"list": [_font_out(f) for f in a.fonts]}
    if a.chars:
        out["chars"] = a.chars
    out["layers"] = [_layer_out(l) for l in a.layers]
    out["markers"] = a.markers
    out.update(a.extras)
    return out


def _font_out(f: FontDef) -> dict:
    out: dict = {"fName": f.name, "fFamily": f.family, "fStyle": f.style}
    if f.ascent is not None:
        out["ascent"] = _num_out(f.ascent)
    out.update(f.extras)
    return out


def serialize_lottie(a: Animation, indent: int | None = None) -> str:
    """Emit canonical Lottie JSON: deterministic key order, shortest
    round-trip number formatting, defaulted fields omitted."""
    return json.dumps(animation_to_obj(a), ensure_ascii=False, indent=indent,
                      separators=(",", ":") if indent is None else (",", ": "))


# =============================================================================
# Tolerant structural comparison
# =============================================================================


def _close(x: float, y: float, tol: float) -> bool:
    return abs(x - y) <= tol


def _vals_close(a: list[float], b: list[float], tol: float) -> bool:
    return len(a) == len(b) and all(_close(x, y, tol) for x, y in zip(a, b))


def _bezier_close(a: BezierPath, b: BezierPath, tol: float) -> bool:
    if a.closed != b.closed or len(a.vertices) != len(b.vertices):
        return False
    for la, lb in ((a.vertices, b.vertices), (a.in_tangents, b.in_tangents), (a.out_tangents, b.out_tangents)):
        if len(la) != len(lb):
            return False
        for pa, pb in zip(la, lb):
            if not _vals_close(pa, pb, tol):
                return False
    return True


def _value_close(a, b, tol: float) -> bool:
    if isinstance(a, BezierPath) and isinstance(b, BezierPath):
        return _bezier_close(a, b, tol)
    if isinstance(a, list) and isinstance(b, list):
        return _vals_close(a, b, tol)
    return False


def _prop_equal(a: AnimatedProperty | None, b: AnimatedProperty | None, tol: float) -> bool:
    if a is None or b is None:
        return a is b or (a is None and b is None)
    if a.is_path != b.is_path:
        return False
    sa, sb = a.static, b.static
    if sa is not None and sb is not None:
        return _value_close(sa, sb, tol)
    if a.animated and b.animated:
        if len(a.keyframes) != len(b.keyframes):
            return False
        for ka, kb in zip(a.keyframes, b.keyframes):
            if not _close(ka.time, kb.time, tol):
                return False
            if not _value_close(ka.value, kb.value, tol):
                return False
            if ka.hold != kb.hold:
                return False
            for ea, eb in ((ka.ease_in, kb.ease_in), (ka.ease_out, kb.ease_out)):
                if not (_close(ea[0], eb[0], tol) and _close(ea[1], eb[1], tol)):
                    return False
        return True
    # One static, one animated: equal only if the track is constant at the
    # static value (covers zero-magnitude injected motion).
    static, track = (sa, b) if sa is not None else (sb, a)
    if static is None or isinstance(static, BezierPath) or track.is_path:
        return False
    return all(_value_close(kf.value, static, tol) for kf in track.keyframes)


def _vec2_equal(a: Vec2Prop, b: Vec2Prop, tol: float) -> bool:
    if a.separated != b.separated:
        return False
    if a.separated:
        return _prop_equal(a.x, b.x, tol) and _prop_equal(a.y, b.y, tol)
    return _prop_equal(a.joint, b.joint, tol)


def _transform_equal(a: Transform, b: Transform, tol: float) -> bool:
    return (
        _vec2_equal(a.anchor, b.anchor, tol)
        and _vec2_equal(a.position, b.position, tol)
        and _prop_equal(a.scale, b.scale, tol)
        and _prop_equal(a.rotation, b.rotation, tol)
        and _prop_equal(a.opacity, b.opacity, tol)
        and _prop_equal(a.skew, b.skew, tol)
        and _prop_equal(a.skew_axis, b.skew_axis, tol)
    )


def _shape_equal(a: ShapeNode, b: ShapeNode, tol: float) -> bool:
    if type(a) is not type(b):
        return False
    if (a.name, a.match_name, a.hidden) != (b.name, b.match_name, b.hidden):
        return False
    if isinstance(a, Group):
        return len(a.children) == len(b.children) and all(
            _shape_equal(x, y, tol) for x, y in zip(a.children, b.children)
        )
    if isinstance(a, Path):
        return _prop_equal(a.shape, b.shape, tol)
    if isinstance(a, Fill):
        return a.rule == b.rule and _prop_equal(a.color, b.color, tol) and _prop_equal(a.opacity, b.opacity, tol)
    if isinstance(a, Stroke):
        return (
            (a.line_cap, a.line_join) == (b.line_cap, b.line_join)
            and _opt_num_equal(a.miter_limit, b.miter_limit, tol)
            and _prop_equal(a.color, b.color, tol)
            and _prop_equal(a.opacity, b.opacity, tol)
            and _prop_equal(a.width, b.width, tol)
        )
    if isinstance(a, (GradientFill, GradientStroke)):
        same = (
            a.gradient_type == b.gradient_type
            and a.stops.count == b.stops.count
            and _prop_equal(a.stops.data, b.stops.data, tol)
            and _prop_equal(a.start, b.start, tol)
            and _prop_equal(a.end, b.end, tol)
            and _prop_equal(a.opacity, b.opacity, tol)
        )
        if not same:
            return False
        if isinstance(a, GradientFill):
            return a.rule == b.rule
        return (
            (a.line_cap, a.line_join) == (b.line_cap, b.line_join)
            and _opt_num_equal(a.miter_limit, b.miter_limit, tol)
            and _prop_equal(a.width, b.width, tol)
        )
    if isinstance(a, Rect):
        return (
            _prop_equal(a.position, b.position, tol)
            and _prop_equal(a.size, b.size, tol)
            and _prop_equal(a.roundness, b.roundness, tol)
        )
    if isinstance(a, Ellipse):
        return _prop_equal(a.position, b.position, tol) and _prop_equal(a.size, b.size, tol)
    if isinstance(a, Star):
        return (
            a.star_type == b.star_type
            and _prop_equal(a.points, b.points, tol)
            and _prop_equal(a.position, b.position, tol)
            and _prop_equal(a.rotation, b.rotation, tol)
            and _prop_equal(a.outer_radius, b.outer_radius, tol)
            and _prop_equal(a.outer_roundness, b.outer_roundness, tol)
            and _prop_equal(a.inner_radius, b.inner_radius, tol)
            and _prop_equal(a.inner_roundness, b.inner_roundness, tol)
        )
    if isinstance(a, GroupTransform):
        return (
            _vec2_equal(a.anchor, b.anchor, tol)
            and _vec2_equal(a.position, b.position, tol)
            and _prop_equal(a.scale, b.scale, tol)
            and _prop_equal(a.rotation, b.rotation, tol)
            and _prop_equal(a.opacity, b.opacity, tol)
            and _prop_equal(a.skew, b.skew, tol)
            and _prop_equal(a.skew_axis, b.skew_axis, tol)
        )
    if isinstance(a, TrimPath):
        return (
            a.mode == b.mode
            and _prop_equal(a.start, b.start, tol)
            and _prop_equal(a.end, b.end, tol)
            and _prop_equal(a.offset, b.offset, tol)
        )
    if isinstance(a, Repeater):
        ta, tb = a.transform, b.transform
        return (
            a.composite == b.composite
            and _prop_equal(a.copies, b.copies, tol)
            and _prop_equal(a.offset, b.offset, tol)
            and _prop_equal(ta.anchor, tb.anchor, tol)
            and _prop_equal(ta.position, tb.position, tol)
            and _prop_equal(ta.scale, tb.scale, tol)
            and _prop_equal(ta.rotation, tb.rotation, tol)
            and _prop_equal(ta.start_opacity, tb.start_opacity, tol)
            and _prop_equal(ta.end_opacity, tb.end_opacity, tol)
        )
    if isinstance(a, MergePaths):
        return a.mode == b.mode
    if isinstance(a, RoundedCorners):
        return _prop_equal(a.radius, b.radius, tol)
    if isinstance(a, ZigZag):
        return (
            _prop_equal(a.amplitude, b.amplitude, tol)
            and _prop_equal(a.frequency, b.frequency, tol)
            and _prop_equal(a.point_type, b.point_type, tol)
        )
    return False


def _opt_num_equal(a: float | None, b: float | None, tol: float) -> bool:
    if (a is None) != (b is None):
        return False
    return a is None or _close(a, b, tol)


def _payload_equal(a, b, tol: float) -> bool:
    if type(a) is not type(b):
        return False
    if isinstance(a, PrecompPayload):
        return (
            a.ref_id == b.ref_id
            and _close(a.width, b.width, tol)
            and _close(a.height, b.height, tol)
            and _prop_equal(a.time_remap, b.time_remap, tol)
        )
    if isinstance(a, SolidPayload):
        return a.color == b.color and _close(a.width, b.width, tol) and _close(a.height, b.height, tol)
    if isinstance(a, ShapePayload):
        return len(a.shapes) == len(b.shapes) and all(_shape_equal(x, y, tol) for x, y in zip(a.shapes, b.shapes))
    if isinstance(a, TextPayload):
        if len(a.documents) != len(b.documents) or len(a.animators) != len(b.animators):
            return False
        for da, db in zip(a.documents, b.documents):
            xa, xb = da.document, db.document
            if not (
                _close(da.time, db.time, tol)
                and xa.font == xb.font and xa.text == xb.text
                and xa.justify == xb.justify
                and _close(xa.size, xb.size, tol)
                and _close(xa.tracking, xb.tracking, tol)
                and _opt_num_equal(xa.leading, xb.leading, tol)
                and _vals_close(xa.color, xb.color, tol)
            ):
                return False
        for aa, ab in zip(a.animators, b.animators):
            if aa.name != ab.name or aa.basis != ab.basis:
                return False
            if not (_prop_equal(aa.sel_start, ab.sel_start, tol) and _prop_equal(aa.sel_end, ab.sel_end, tol)):
                return False
            for pa, pb in ((aa.rotation, ab.rotation), (aa.scale, ab.scale), (aa.fill_color, ab.fill_color),
                           (aa.opacity, ab.opacity), (aa.tracking, ab.tracking)):
                if not _prop_equal(pa, pb, tol):
                    return False
            if (aa.position is None) != (ab.position is None):
                return False
            if aa.position is not None and not _vec2_equal(aa.position, ab.position, tol):
                return False
        return True
    return isinstance(a, NullPayload)


def _layer_equal(a, b, tol: float) -> bool:
    if isinstance(a, RawLayer) or isinstance(b, RawLayer):
        return isinstance(a, RawLayer) and isinstance(b, RawLayer) and a.raw == b.raw
    discrete_a = (a.kind, a.index, a.name, a.match_name, a.parent, a.auto_orient, a.three_d,
                  a.hidden, a.collapse, a.matte_mode, a.matte_parent, a.matte_target,
                  a.blend_mode, a.css_class, a.layer_xml_id)
    discrete_b = (b.kind, b.index, b.name, b.match_name, b.parent, b.auto_orient, b.three_d,
                  b.hidden, b.collapse, b.matte_mode, b.matte_parent, b.matte_target,
                  b.blend_mode, b.css_class, b.layer_xml_id)
    if discrete_a != discrete_b:
        return False
    for xa, xb in ((a.in_point, b.in_point), (a.out_point, b.out_point),
                   (a.start_time, b.start_time), (a.stretch, b.stretch)):
        if not _close(xa, xb, tol):
            return False
    if not _transform_equal(a.transform, b.transform, tol):
        return False
    if len(a.masks) != len(b.masks) or len(a.effects) != len(b.effects):
        return False
    for ma, mb in zip(a.masks, b.masks):
        if ma.mode != mb.mode or ma.name != mb.name:
            return False
        if not (_prop_equal(ma.path, mb.path, tol) and _prop_equal(ma.opacity, mb.opacity, tol)
                and _prop_equal(ma.expansion, mb.expansion, tol)):
            return False
    for ea, eb in zip(a.effects, b.effects):
        if (ea.kind, ea.name, ea.match_name, ea.enabled) != (eb.kind, eb.name, eb.match_name, eb.enabled):
            return False
        if len(ea.params) != len(eb.params):
            return False
        for pa, pb in zip(ea.params, eb.params):
            if (pa.kind, pa.name, pa.match_name) != (pb.kind, pb.name, pb.match_name):
                return False
            if not _prop_equal(pa.value, pb.value, tol):
                return False
    return _payload_equal(a.payload, b.payload, tol)


def canonical_equal(a: Animation, b: Animation, tol: float) -> bool:
    """True iff the parameterized structures match: discrete fields exactly,
    real fields within ``tol``.  Opaque passthrough (extras, markers, styles,
    chars) is outside the comparison; exact dataclass equality covers those.
    """
    if (a.version, a.name, a.three_d_flag) != (b.version, b.name, b.three_d_flag):
        return False
    for xa, xb in ((a.frame_rate, b.frame_rate), (a.in_point, b.in_point), (a.out_point, b.out_point),
                   (a.width, b.width), (a.height, b.height)):
        if not _close(xa, xb, tol):
            return False
    if len(a.layers) != len(b.layers) or len(a.assets) != len(b.assets) or len(a.fonts) != len(b.fonts):
        return False
    for la, lb in zip(a.layers, b.layers):
        if not _layer_equal(la, lb, tol):
            return False
    for xa, xb in zip(a.assets, b.assets):
        if isinstance(xa, RawAsset) or isinstance(xb, RawAsset):
            if not (isinstance(xa, RawAsset) and isinstance(xb, RawAsset) and xa.raw == xb.raw):
                return False
            continue
        if xa.asset_id != xb.asset_id or not _opt_num_equal(xa.frame_rate, xb.frame_rate, tol):
            return False
        if len(xa.layers) != len(xb.layers):
            return False
        for la, lb in zip(xa.layers, xb.layers):
            if not _layer_equal(la, lb, tol):
                return False
    for fa, fb in zip(a.fonts, b.fonts):
        if (fa.name, fa.family, fa.style) != (fb.name, fb.family, fb.style):
            return False
        if not _opt_num_equal(fa.ascent, fb.ascent, tol):
            return False
    return True
