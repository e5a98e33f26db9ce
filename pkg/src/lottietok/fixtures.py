"""Deterministic fixture corpus used by tests, demos, and benchmarks.

``make_corpus`` builds n animations from a seed, cycling through families
that together cover all five layer types, masks, effects, text payloads,
and every shape-node kind.  Values stay inside the default vocabulary
ranges and every fixture passes lint with zero errors.
"""

from __future__ import annotations

import os
import random

from . import model as M
from .model import AnimatedProperty as AP
from .model import Vec2Prop

WORDS = ("spark", "loop", "pulse", "drift", "orbit", "wave", "glow", "prism",
         "ember", "petal", "frost", "comet", "ridge", "tide", "bloom", "shard")


def _rng_name(rng: random.Random, suffix: str) -> str:
    return f"{rng.choice(WORDS)}-{suffix}"


def _grid_time(rng: random.Random, lo: float, hi: float) -> float:
    # Quarter-frame grid keeps temporal values exact under quantization.
    return round(rng.uniform(lo, hi) * 4) / 4.0


def _color(rng: random.Random) -> list[float]:
    return [rng.randint(0, 255) / 255.0 for _ in range(3)]


def _ease(rng: random.Random) -> dict:
    if rng.random() < 0.4:
        return {}
    x = round(rng.uniform(0.1, 0.9), 2)
    return {"ease_out": (x, 0.0), "ease_in": (1.0 - x, 1.0)}


def _track(rng: random.Random, values: list[float] | list[list[float]], dim: int,
           t0: float = 0.0, t1: float = 60.0, hold: bool = False) -> AP:
    times = sorted({t0, t1} | {_grid_time(rng, t0 + 1, t1 - 1) for _ in range(len(values) - 2)})
    while len(times) < len(values):
        times.append(times[-1] + 1.0)
    kfs = []
    for t, v in zip(sorted(times), values):
        vals = list(v) if isinstance(v, list) else [v]
        kw = _ease(rng)
        kfs.append(M.Keyframe(time=t, value=vals, hold=1 if hold and rng.random() < 0.5 else 0, **kw))
    return AP(dim=dim, keyframes=kfs)


def _transform(rng: random.Random, animated: str | None = None) -> M.Transform:
    tr = M.Transform(
        anchor=Vec2Prop.of(0.0, 0.0),
        position=Vec2Prop.of(rng.randint(100, 412), rng.randint(100, 412)),
        scale=AP.of([rng.randint(60, 160)] * 2),
        rotation=AP.of(float(rng.choice((0, 0, 45, -30, 90)))),
        opacity=AP.of(float(rng.randint(40, 100))),
    )
    if animated == "rotation":
        start = float(rng.choice((0, 90)))
        tr.rotation = _track(rng, [start, start + rng.choice((90.0, 180.0, 360.0, -180.0))], 1)
    elif animated == "position":
        x, y = rng.randint(100, 400), rng.randint(100, 400)
        if rng.random() < 0.5:
            tr.position = Vec2Prop(
                x=_track(rng, [float(x), float(x + rng.randint(-150, 150))], 1),
                y=AP.of(float(y)),
            )
        else:
            tr.position = Vec2Prop(joint=_track(
                rng, [[float(x), float(y)], [float(x + rng.randint(-150, 150)), float(y + rng.randint(-150, 150))]], 2))
    elif animated == "scale":
        s = float(rng.randint(50, 100))
        tr.scale = _track(rng, [[s, s], [s + rng.randint(20, 100)] * 2], 2)
    elif animated == "opacity":
        tr.opacity = _track(rng, [0.0, 100.0] if rng.random() < 0.5 else [100.0, float(rng.randint(10, 40))], 1)
    return tr


def _fill(rng: random.Random) -> M.Fill:
    return M.Fill(color=AP.of(_color(rng), dim=3), opacity=AP.of(100.0),
                  rule=rng.choice((None, 1)))


def _stroke(rng: random.Random) -> M.Stroke:
    return M.Stroke(color=AP.of(_color(rng), dim=3), opacity=AP.of(float(rng.randint(60, 100))),
                    width=AP.of(float(rng.randint(2, 12))), line_cap=rng.randint(1, 3),
                    line_join=rng.randint(1, 3),
                    miter_limit=float(rng.randint(2, 8)) if rng.random() < 0.3 else None)


def _group_transform(rng: random.Random) -> M.GroupTransform:
    return M.GroupTransform(
        position=Vec2Prop.of(float(rng.randint(-40, 40)), float(rng.randint(-40, 40))),
        scale=AP.of([100.0, 100.0]),
    )


def _rect(rng: random.Random) -> M.Rect:
    return M.Rect(position=AP.of([0.0, 0.0]),
                  size=AP.of([float(rng.randint(40, 200)), float(rng.randint(40, 200))]),
                  roundness=AP.of(float(rng.choice((0, 0, 8, 16)))))


def _ellipse(rng: random.Random) -> M.Ellipse:
    d = float(rng.randint(40, 220))
    return M.Ellipse(position=AP.of([0.0, 0.0]), size=AP.of([d, d * rng.choice((1.0, 0.75))]))


def _star(rng: random.Random, polygon: bool = False) -> M.Star:
    star = M.Star(
        star_type=2 if polygon else 1,
        points=AP.of(float(rng.randint(3, 9))),
        position=AP.of([0.0, 0.0]),
        rotation=AP.of(float(rng.choice((0, 15, 45)))),
        outer_radius=AP.of(float(rng.randint(40, 120))),
        outer_roundness=AP.of(0.0),
    )
    if not polygon:
        star.inner_radius = AP.of(float(rng.randint(15, 40)))
        star.inner_roundness = AP.of(0.0)
    return star


def _bezier_blob(rng: random.Random, n: int = 4, radius: float = 80.0) -> M.BezierPath:
    import math
    verts, tin, tout = [], [], []
    for i in range(n):
        ang = 2 * math.pi * i / n
        r = radius * rng.uniform(0.7, 1.3)
        verts.append([round(r * math.cos(ang), 2), round(r * math.sin(ang), 2)])
        t = radius * 0.35
        tin.append([round(t * math.sin(ang), 2), round(-t * math.cos(ang), 2)])
        tout.append([round(-t * math.sin(ang), 2), round(t * math.cos(ang), 2)])
    return M.BezierPath(closed=True, vertices=verts, in_tangents=tin, out_tangents=tout)


def _path(rng: random.Random, animated: bool = False) -> M.Path:
    if not animated:
        return M.Path(shape=AP(is_path=True, dim=0, static=_bezier_blob(rng)))
    a, b = _bezier_blob(rng), _bezier_blob(rng)
    b.vertices = a.vertices[:1] + b.vertices[1:]
    return M.Path(shape=AP(is_path=True, dim=0, keyframes=[
        M.Keyframe(time=0.0, value=a), M.Keyframe(time=60.0, value=b),
    ]))


def _gradient(rng: random.Random, stroke: bool = False) -> M.ShapeNode:
    c1, c2 = _color(rng), _color(rng)
    data = [0.0] + c1 + [1.0] + c2
    stops = M.GradientStops(count=2, data=AP(dim=len(data), static=data))
    kw = dict(
        gradient_type=rng.randint(1, 2),
        start=AP.of([-60.0, 0.0]), end=AP.of([60.0, 0.0]),
        stops=stops, opacity=AP.of(100.0),
    )
    if stroke:
        return M.GradientStroke(width=AP.of(6.0), line_cap=2, line_join=2, **kw)
    return M.GradientFill(rule=None, **kw)


def _shape_layer(rng: random.Random, ind: int, nodes: list[M.ShapeNode],
                 animated: str | None = None, name: str | None = None) -> M.Layer:
    group = M.Group(name=_rng_name(rng, f"g{ind}"), children=nodes + [_group_transform(rng)])
    layer = M.Layer(kind=4, index=ind, name=name or _rng_name(rng, str(ind)),
                    in_point=0.0, out_point=60.0)
    layer.transform = _transform(rng, animated)
    layer.payload = M.ShapePayload(shapes=[group])
    return layer


def _base(rng: random.Random, name: str) -> M.Animation:
    return M.Animation(version=M.DEFAULT_VERSION, frame_rate=float(rng.choice((24, 25, 30, 60))),
                       in_point=0.0, out_point=60.0, width=512.0, height=512.0, name=name)


# --- fixture families ---------------------------------------------------------


def _fx_solid_null(rng: random.Random, a: M.Animation) -> None:
    null = M.Layer(kind=3, index=2, name="ctrl", in_point=0.0, out_point=60.0)
    null.transform = _transform(rng, "rotation")
    solid = M.Layer(kind=1, index=1, name=_rng_name(rng, "solid"), parent=2,
                    in_point=0.0, out_point=60.0)
    solid.payload = M.SolidPayload(width=float(rng.randint(64, 512)), height=float(rng.randint(64, 512)),
                                   color="#%02x%02x%02x" % tuple(rng.randint(0, 255) for _ in range(3)))
    a.layers = [solid, null]


def _fx_rect(rng, a):
    a.layers = [_shape_layer(rng, 1, [_rect(rng), _fill(rng)], animated="rotation")]


def _fx_ellipse_stroke(rng, a):
    a.layers = [_shape_layer(rng, 1, [_ellipse(rng), _stroke(rng)], animated="position")]


def _fx_star_trim(rng, a):
    trim = M.TrimPath(start=AP.of(0.0), end=_track(rng, [0.0, 100.0], 1),
                      offset=AP.of(0.0), mode=rng.randint(1, 2))
    a.layers = [_shape_layer(rng, 1, [_star(rng), _stroke(rng), trim])]


def _fx_path_gradient(rng, a):
    a.layers = [_shape_layer(rng, 1, [_path(rng, animated=rng.random() < 0.5), _gradient(rng)], animated="scale")]


def _fx_polygon_gstroke(rng, a):
    a.layers = [_shape_layer(rng, 1, [_star(rng, polygon=True), _gradient(rng, stroke=True)])]


def _fx_nested_repeater(rng, a):
    inner = M.Group(name="inner", children=[_ellipse(rng), _fill(rng), _group_transform(rng)])
    rep = M.Repeater(copies=AP.of(float(rng.randint(2, 5))), offset=AP.of(0.0), composite=1,
                     transform=M.RepeaterTransform(position=AP.of([float(rng.randint(20, 60)), 0.0]),
                                                   rotation=AP.of(float(rng.choice((0, 15, 30))))))
    merge = M.MergePaths(mode=rng.randint(1, 5))
    outer_children: list[M.ShapeNode] = [inner, _rect(rng), merge, _fill(rng), rep, _group_transform(rng)]
    a.layers = [_shape_layer(rng, 1, [], animated="opacity")]
    a.layers[0].payload = M.ShapePayload(shapes=[M.Group(name="outer", children=outer_children)])


def _fx_round_zigzag(rng, a):
    rc = M.RoundedCorners(radius=AP.of(float(rng.randint(4, 24))))
    zz = M.ZigZag(amplitude=_track(rng, [0.0, float(rng.randint(4, 16))], 1),
                  frequency=AP.of(float(rng.randint(2, 10))), point_type=AP.of(float(rng.randint(1, 2))))
    a.layers = [_shape_layer(rng, 1, [_rect(rng), rc, zz, _fill(rng)])]


def _fx_text(rng, a):
    a.fonts = [M.FontDef(name="Inter-Bold", family="Inter", style="Bold", ascent=72.5)]
    doc = M.TextDocument(font="Inter-Bold", size=float(rng.randint(24, 96)), color=_color(rng),
                         justify=rng.randint(0, 2), tracking=float(rng.randint(0, 40)),
                         leading=float(rng.randint(20, 100)) if rng.random() < 0.5 else None,
                         text=rng.choice(("Hello", "Göteborg", "spark ☀", "42")))
    payload = M.TextPayload(documents=[M.TextDocKeyframe(time=0.0, document=doc)])
    if rng.random() < 0.6:
        payload.animators.append(M.TextAnimator(
            name="an-1", basis=1,
            sel_start=AP.of(0.0), sel_end=_track(rng, [0.0, 100.0], 1),
            opacity=AP.of(float(rng.randint(10, 90))),
            tracking=AP.of(float(rng.randint(0, 20))) if rng.random() < 0.5 else None,
        ))
    layer = M.Layer(kind=5, index=1, name=_rng_name(rng, "txt"), in_point=0.0, out_point=60.0)
    layer.transform = _transform(rng)
    layer.payload = payload
    a.layers = [layer]


def _fx_precomp(rng, a):
    inner = _shape_layer(rng, 1, [_ellipse(rng), _fill(rng)], animated="rotation")
    asset = M.PrecompAsset(asset_id=f"comp_{rng.randint(0, 9)}", layers=[inner],
                           frame_rate=None if rng.random() < 0.5 else 30.0)
    payload = M.PrecompPayload(ref_id=asset.asset_id, width=512.0, height=512.0)
    if rng.random() < 0.5:
        payload.time_remap = _track(rng, [0.0, 60.0], 1)
    pre = M.Layer(kind=0, index=1, name=_rng_name(rng, "pre"), in_point=0.0, out_point=60.0)
    pre.transform = _transform(rng, "scale")
    pre.payload = payload
    pre.collapse = rng.choice((None, 0, 1))
    a.assets = [asset]
    a.layers = [pre]


def _fx_masks(rng, a):
    mode = rng.choice((1, 1, 2, 3, 4))
    mask = M.Mask(mode=mode, name=f"mask-{mode}",
                  path=AP(is_path=True, dim=0, static=_bezier_blob(rng, 4, 120.0)),
                  opacity=AP.of(float(rng.randint(50, 100))),
                  expansion=AP.of(float(rng.randint(-10, 10))))
    if rng.random() < 0.4:
        p1, p2 = _bezier_blob(rng, 4, 100.0), _bezier_blob(rng, 4, 140.0)
        mask.path = AP(is_path=True, dim=0, keyframes=[
            M.Keyframe(time=0.0, value=p1), M.Keyframe(time=60.0, value=p2)])
    solid = M.Layer(kind=1, index=1, name=_rng_name(rng, "masked"), in_point=0.0, out_point=60.0)
    solid.payload = M.SolidPayload(width=512.0, height=512.0, color="#336699")
    solid.masks = [mask]
    a.layers = [solid]


def _fx_effects(rng, a):
    params = [
        M.EffectParam(kind=0, name="Amount", value=_track(rng, [0.0, float(rng.randint(10, 90))], 1)),
        M.EffectParam(kind=1, name="Angle", value=AP.of(float(rng.randint(-180, 360)))),
        M.EffectParam(kind=2, name="Color", value=AP.of(_color(rng) + [1.0], dim=4)),
        M.EffectParam(kind=3, name="Center", value=AP.of([256.0, 256.0])),
        M.EffectParam(kind=4, name="Invert", value=AP.of(float(rng.randint(0, 1)))),
        M.EffectParam(kind=5, name="Mode", value=AP.of(float(rng.randint(1, 5)))),
        M.EffectParam(kind=6, name="Source", value=AP.of(1.0)),
    ]
    eff = M.Effect(kind=rng.choice((20, 21, 29)), name=_rng_name(rng, "fx"), enabled=1,
                   params=rng.sample(params, rng.randint(2, len(params))))
    layer = _shape_layer(rng, 1, [_rect(rng), _fill(rng)])
    layer.effects = [eff]
    a.layers = [layer]


def _fx_matte(rng, a):
    source = _shape_layer(rng, 1, [_ellipse(rng), _fill(rng)], name="matte-src")
    source.matte_target = 1
    consumer = _shape_layer(rng, 2, [_rect(rng), _fill(rng)], animated="position", name="matte-dst")
    consumer.matte_mode = rng.randint(1, 4)
    a.layers = [source, consumer]


def _fx_mixed(rng, a):
    null = M.Layer(kind=3, index=10, name="rig", in_point=0.0, out_point=60.0)
    null.transform = _transform(rng, "position")
    l1 = _shape_layer(rng, 1, [_rect(rng), _fill(rng)], animated="opacity")
    l1.parent = 10
    l1.blend_mode = rng.choice((0, 1, 2))
    l2 = _shape_layer(rng, 2, [_star(rng), _stroke(rng)])
    l2.parent = 10
    hold = _track(rng, [0.0, 180.0, 360.0], 1, hold=True)
    l2.transform.rotation = hold
    a.layers = [l1, l2, null]


def _fx_fade_zoom(rng, a):
    layer = _shape_layer(rng, 1, [_ellipse(rng), _fill(rng)])
    layer.transform.opacity = _track(rng, [0.0, 100.0], 1)
    s = float(rng.randint(60, 100))
    layer.transform.scale = _track(rng, [[s, s], [s + 60.0, s + 60.0]], 2)
    a.layers = [layer]


FAMILIES = [
    _fx_solid_null, _fx_rect, _fx_ellipse_stroke, _fx_star_trim, _fx_path_gradient,
    _fx_polygon_gstroke, _fx_nested_repeater, _fx_round_zigzag, _fx_text,
    _fx_precomp, _fx_masks, _fx_effects, _fx_matte, _fx_mixed, _fx_fade_zoom,
]


def make_fixture(i: int, seed: int = 20260) -> tuple[str, M.Animation]:
    rng = random.Random(seed * 1_000_003 + i)
    family = FAMILIES[i % len(FAMILIES)]
    a = _base(rng, f"fixture-{i:03d}")
    family(rng, a)
    return f"fixture-{i:03d}", a


def make_corpus(n: int = 200, seed: int = 20260) -> list[tuple[str, M.Animation]]:
    return [make_fixture(i, seed) for i in range(n)]


def write_corpus(directory: str, n: int = 200, seed: int = 20260) -> list[str]:
    """Serialize the corpus to <directory>/<name>.json; returns the paths."""
    from .model import serialize_lottie

    os.makedirs(directory, exist_ok=True)
    paths = []
    for name, anim in make_corpus(n, seed):
        path = os.path.join(directory, f"{name}.json")
        with open(path, "w", encoding="utf-8") as f:
            f.write(serialize_lottie(anim))
        paths.append(path)
    return paths
