"""Corpus cleaning and spatial/temporal normalization.

``clean`` removes non-parameterizable layers (image 2, audio 6, camera 13,
data 15) and strips scripted expressions from animated properties; files
whose semantics would become undefined are rejected rather than patched.

``normalize_spatial`` rescales any canvas onto a square target by injecting
one null parent over the root layers, leaving inner coordinates untouched.
``normalize_temporal`` linearly maps all times so the animation plays over
[0, time_range_max].
"""

from __future__ import annotations

import copy
from dataclasses import dataclass, field

from . import model as M
from .errors import DegenerateDuration
from .walk import iter_all_layers, iter_all_props, iter_layer_props

# Marker carried by the injected normalization parent (match-name survives
# tokenization, so normalized outputs stay detectably normalized).
NORM_ROOT_MATCH_NAME = "norm.spatial.root"
NORM_ROOT_NAME = "Normalized Root"

REMOVAL_REASONS = {2: "Base64Image", 6: "Audio", 13: "Camera", 15: "Data"}

KEPT = "kept"
REJECTED = "rejected"


@dataclass
class CleanReport:
    removed_layers: list[tuple[int | None, str]] = field(default_factory=list)
    stripped_expressions: int = 0
    verdict: str = KEPT
    reject_reason: str | None = None


@dataclass
class NormalizeConfig:
    canvas: int = 512
    time_range_max: float = 60.0

    def __post_init__(self):
        if self.canvas <= 0 or self.time_range_max <= 0:
            raise ValueError("canvas and time_range_max must be positive")


def _reject(report: CleanReport, reason: str) -> tuple[None, CleanReport]:
    report.verdict = REJECTED
    report.reject_reason = reason
    return None, report


def _strip_expressions(a: M.Animation) -> int:
    count = 0
    for _, prop in iter_all_props(a):
        if isinstance(prop.extras.get("x"), str):
            del prop.extras["x"]
            count += 1
    return count


def _remove_raw_layers(layers: list, report: CleanReport) -> tuple[list, bool]:
    kept = []
    ok = True
    for layer in layers:
        if isinstance(layer, M.RawLayer):
            reason = REMOVAL_REASONS.get(layer.kind)
            if reason is None:
                ok = False
                reason = f"UnsupportedKind({layer.kind})"
            report.removed_layers.append((layer.index, reason))
        else:
            kept.append(layer)
    return kept, ok


def clean(a: M.Animation) -> tuple[M.Animation | None, CleanReport]:
    """Remove non-parameterizable content; reject files left undefined.

    The input should come from ``parse_lottie(..., admit_raw_layers=True)``
    so that image/audio/camera/data layers are present as opaque stubs.
    Returns ``(animation, report)``; a rejected verdict implies the
    animation is None.
    """
    report = CleanReport()
    a = copy.deepcopy(a)

    a.layers, ok = _remove_raw_layers(a.layers, report)
    if not ok:
        return _reject(report, "NonParameterizable: unsupported layer kind")
    removed_asset_ids = set()
    kept_assets = []
    for asset in a.assets:
        if isinstance(asset, M.RawAsset):
            removed_asset_ids.add(asset.asset_id)
            continue
        asset.layers, ok = _remove_raw_layers(asset.layers, report)
        if not ok:
            return _reject(report, "NonParameterizable: unsupported layer kind in asset")
        kept_assets.append(asset)
    a.assets = kept_assets

    if not a.layers:
        return _reject(report, "NonParameterizable: no renderable layers left")

    asset_ids = {asset.asset_id for asset in a.assets}
    for path, layer in iter_all_layers(a):
        if layer.three_d:
            return _reject(report, f"NonParameterizable: 3D layer at {path}")
        if isinstance(layer.payload, M.PrecompPayload):
            ref = layer.payload.ref_id
            if ref in removed_asset_ids or ref not in asset_ids:
                return _reject(report, f"NonParameterizable: precomp {path} references missing asset {ref!r}")

    def container_ok(layers: list) -> bool:
        inds = {l.index for l in layers if l.index is not None}
        for l in layers:
            if l.parent is not None and l.parent not in inds:
                return False
            if l.matte_parent is not None and l.matte_parent not in inds:
                return False
        return True

    if not container_ok(a.layers) or any(
        isinstance(asset, M.PrecompAsset) and not container_ok(asset.layers) for asset in a.assets
    ):
        return _reject(report, "NonParameterizable: removal left dangling layer references")

    report.stripped_expressions = _strip_expressions(a)
    return a, report


def normalize_spatial(a: M.Animation, cfg: NormalizeConfig | None = None) -> M.Animation:
    """Scale content onto a canvas x canvas square, centered, aspect kept.

    All root layers are reparented under one injected null that carries the
    scale r = min(C/w, C/h) and the centering offset; inner coordinates are
    untouched.  Running twice is a no-op (the marker null is detected).
    """
    cfg = cfg or NormalizeConfig()
    c = float(cfg.canvas)
    already = any(
        isinstance(l, M.Layer) and l.kind == 3 and l.match_name == NORM_ROOT_MATCH_NAME
        for l in a.layers
    )
    if already and a.width == c and a.height == c:
        return a
    a = copy.deepcopy(a)
    r = min(c / a.width, c / a.height)
    ox = (c - r * a.width) / 2.0
    oy = (c - r * a.height) / 2.0

    used = [l.index for l in a.layers if getattr(l, "index", None) is not None]
    null_ind = (max(used) + 1) if used else 1
    root = M.Layer(
        kind=3,
        index=null_ind,
        name=NORM_ROOT_NAME,
        match_name=NORM_ROOT_MATCH_NAME,
        in_point=a.in_point,
        out_point=a.out_point,
    )
    root.transform = M.Transform(
        position=M.Vec2Prop.of(ox, oy),
        scale=M.AnimatedProperty.of([100.0 * r, 100.0 * r]),
    )
    for layer in a.layers:
        if isinstance(layer, M.Layer) and layer.parent is None:
            layer.parent = null_ind
    a.layers.append(root)
    a.width = c
    a.height = c
    return a


def _affine_times(a: M.Animation, scale: float, offset: float) -> None:
    def map_t(t: float) -> float:
        return scale * t + offset

    a.in_point = map_t(a.in_point)
    a.out_point = map_t(a.out_point)
    for _, layer in iter_all_layers(a):
        if isinstance(layer, M.RawLayer):
            continue
        layer.in_point = map_t(layer.in_point)
        layer.out_point = map_t(layer.out_point)
        layer.start_time = map_t(layer.start_time)
        for _, prop in iter_layer_props(layer):
            if prop.keyframes:
                for kf in prop.keyframes:
                    kf.time = map_t(kf.time)
        pl = layer.payload
        if isinstance(pl, M.PrecompPayload) and pl.time_remap is not None:
            tm = pl.time_remap
            if tm.static is not None:
                tm.static = [map_t(v) for v in tm.static]
            else:
                for kf in tm.keyframes:
                    kf.value = [map_t(v) for v in kf.value]
        elif isinstance(pl, M.TextPayload):
            for dk in pl.documents:
                dk.time = map_t(dk.time)


def normalize_temporal(a: M.Animation, cfg: NormalizeConfig | None = None) -> M.Animation:
    """Linearly map every time so ip -> 0 and op -> time_range_max.

    Keyframe times, layer ip/op/st, text document times, and time-remap
    values all go through the same affine map; the frame rate is preserved.
    """
    cfg = cfg or NormalizeConfig()
    if a.out_point == a.in_point:
        raise DegenerateDuration(f"op == ip == {a.in_point}")
    scale = cfg.time_range_max / (a.out_point - a.in_point)
    offset = -scale * a.in_point
    if scale == 1.0 and offset == 0.0:
        return a
    a = copy.deepcopy(a)
    _affine_times(a, scale, offset)
    return a


def normalize(a: M.Animation, cfg: NormalizeConfig | None = None) -> M.Animation:
    """Spatial then temporal normalization with one config."""
    cfg = cfg or NormalizeConfig()
    return normalize_temporal(normalize_spatial(a, cfg), cfg)
