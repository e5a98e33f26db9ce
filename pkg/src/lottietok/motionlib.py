"""Motion template library: signature extraction, clustering, keyframe
injection, and procedural basic motions for static files.

Transform trajectories are summarized per channel (rotation, scale,
position x/y, opacity) as deltas, direction signs, monotonicity classes,
and a fixed-length sample vector; clustering runs k-medoids over those
vectors so the medoid keyframe patterns double as reusable templates.
"""

from __future__ import annotations

import copy
import random
from dataclasses import dataclass, field
from enum import Enum

from . import model as M
from .errors import AlreadyAnimated, KTooLarge
from .pipeline import NORM_ROOT_MATCH_NAME

SAMPLE_COUNT = 16

CHANNELS = ("rotation", "scale", "position_x", "position_y", "opacity")

# Unit magnitude per channel for normalized template values.
CHANNEL_BASIS = {
    "rotation": 360.0,
    "scale": 100.0,
    "position_x": 512.0,
    "position_y": 512.0,
    "opacity": 100.0,
}

# Minimum |delta| for a channel to count as active when classifying.
ACTIVE_DELTA = {
    "rotation": 5.0,
    "scale": 5.0,
    "position_x": 5.0,
    "position_y": 5.0,
    "opacity": 5.0,
}

# Categorical mismatch penalty added to the sample-vector distance.
CATEGORY_PENALTY = 0.5


class MotionKind(Enum):
    MOVE_H = "move-h"
    MOVE_V = "move-v"
    ZOOM = "zoom"
    ROTATE = "rotate"
    FADE = "fade"
    COMBINED2 = "combined-2"
    COMBINED3 = "combined-3"
    STATIC = "static"


BASE_KINDS = (MotionKind.MOVE_H, MotionKind.MOVE_V, MotionKind.ZOOM, MotionKind.ROTATE, MotionKind.FADE)


# =============================================================================
# Keyframe track evaluation (cubic bezier easing)
# =============================================================================


def _bezier_component(s: float, c1: float, c2: float) -> float:
    u = 1.0 - s
    return 3 * u * u * s * c1 + 3 * u * s * s * c2 + s * s * s


def bezier_eased(p: float, out_tan: tuple[float, float], in_tan: tuple[float, float]) -> float:
    """Value progress for time progress p under ((0,0), out, in, (1,1)) easing."""
    if p <= 0.0:
        return 0.0
    if p >= 1.0:
        return 1.0
    lo, hi = 0.0, 1.0
    for _ in range(40):
        mid = (lo + hi) / 2.0
        if _bezier_component(mid, out_tan[0], in_tan[0]) < p:
            lo = mid
        else:
            hi = mid
    s = (lo + hi) / 2.0
    return _bezier_component(s, out_tan[1], in_tan[1])


def eval_track(prop: M.AnimatedProperty, t: float, component: int = 0) -> float:
    """Evaluate one component of a scalar/vector property at time t."""
    if prop.static is not None:
        return prop.static[component]
    kfs = prop.keyframes
    if t <= kfs[0].time:
        return kfs[0].value[component]
    if t >= kfs[-1].time:
        return kfs[-1].value[component]
    for i in range(len(kfs) - 1):
        a, b = kfs[i], kfs[i + 1]
        if a.time <= t < b.time:
            if a.hold:
                return a.value[component]
            p = (t - a.time) / (b.time - a.time)
            e = bezier_eased(p, a.ease_out, b.ease_in)
            return a.value[component] + e * (b.value[component] - a.value[component])
    return kfs[-1].value[component]


# =============================================================================
# Signatures
# =============================================================================


@dataclass
class ChannelSummary:
    delta: float
    direction: int           # -1, 0, +1
    monotonicity: str        # increasing | decreasing | constant | mixed
    keyframe_count: int
    samples: list[float]     # raw values at SAMPLE_COUNT even times
    pattern: list[tuple[float, float]]  # (time in [0,1], value relative to start)

    def shape_vector(self, basis: float) -> list[float]:
        """Relative trajectory, peak-normalized so magnitude does not split
        clusters; basis is the fallback scale for near-flat channels."""
        v0 = self.samples[0]
        rel = [v - v0 for v in self.samples]
        peak = max(abs(v) for v in rel)
        scale = peak if peak > 1e-9 else basis
        return [v / scale for v in rel]


@dataclass
class MotionSignature:
    channels: dict[str, ChannelSummary] = field(default_factory=dict)
    duration: float = 0.0


@dataclass
class MotionTemplate:
    label: str
    channels: dict[str, list[tuple[float, float]]]  # (t in [0,1], magnitude relative to basis)
    size: int = 1


def _monotonicity(samples: list[float]) -> str:
    eps = 1e-9
    ups = any(b - a > eps for a, b in zip(samples, samples[1:]))
    downs = any(a - b > eps for a, b in zip(samples, samples[1:]))
    if ups and downs:
        return "mixed"
    if ups:
        return "increasing"
    if downs:
        return "decreasing"
    return "constant"


def _channel_tracks(layer: M.Layer) -> dict[str, tuple[M.AnimatedProperty, int]]:
    """Animated transform tracks of one layer, keyed by channel name."""
    tr = layer.transform
    tracks: dict[str, tuple[M.AnimatedProperty, int]] = {}
    if tr.rotation.animated:
        tracks["rotation"] = (tr.rotation, 0)
    if tr.scale.animated:
        tracks["scale"] = (tr.scale, 0)
    if tr.opacity.animated:
        tracks["opacity"] = (tr.opacity, 0)
    pos = tr.position
    if pos.separated:
        if pos.x.animated:
            tracks["position_x"] = (pos.x, 0)
        if pos.y.animated:
            tracks["position_y"] = (pos.y, 0)
    elif pos.joint.animated:
        tracks["position_x"] = (pos.joint, 0)
        tracks["position_y"] = (pos.joint, 1)
    return tracks


def _mean_components(prop: M.AnimatedProperty, t: float) -> float:
    if prop.dim >= 2 and not prop.is_path:
        return (eval_track(prop, t, 0) + eval_track(prop, t, 1)) / 2.0
    return eval_track(prop, t, 0)


def extract_signature(a: M.Animation) -> MotionSignature:
    """Per-channel trajectory summary over all animated root-layer transforms.

    Multiple layers animating the same channel are averaged sample-wise;
    static channels are absent from the result.
    """
    t0, t1 = a.in_point, a.out_point
    duration = t1 - t0
    sig = MotionSignature(duration=duration)
    times = [t0 + duration * j / (SAMPLE_COUNT - 1) for j in range(SAMPLE_COUNT)]

    per_channel: dict[str, list[tuple[list[float], int, list[tuple[float, float]]]]] = {}
    for layer in a.layers:
        if not isinstance(layer, M.Layer):
            continue
        for name, (prop, comp) in _channel_tracks(layer).items():
            if name == "scale" and comp == 0:
                samples = [_mean_components(prop, t) for t in times]
            else:
                samples = [eval_track(prop, t, comp) for t in times]
            pattern = []
            v0 = prop.keyframes[0].value[comp] if name != "scale" else (
                sum(prop.keyframes[0].value[:2]) / 2.0 if prop.dim >= 2 else prop.keyframes[0].value[0]
            )
            for kf in prop.keyframes:
                v = kf.value[comp] if name != "scale" else (
                    sum(kf.value[:2]) / 2.0 if prop.dim >= 2 else kf.value[0]
                )
                tt = (kf.time - t0) / duration if duration else 0.0
                pattern.append((min(max(tt, 0.0), 1.0), v - v0))
            per_channel.setdefault(name, []).append((samples, len(prop.keyframes), pattern))

    for name, entries in per_channel.items():
        n = len(entries)
        samples = [sum(e[0][j] for e in entries) / n for j in range(SAMPLE_COUNT)]
        delta = samples[-1] - samples[0]
        direction = 0 if abs(delta) < 1e-9 else (1 if delta > 0 else -1)
        # Pattern from the entry with the most keyframes (the richest track).
        best = max(entries, key=lambda e: e[1])
        sig.channels[name] = ChannelSummary(
            delta=delta,
            direction=direction,
            monotonicity=_monotonicity(samples),
            keyframe_count=max(e[1] for e in entries),
            samples=samples,
            pattern=[(t, v / CHANNEL_BASIS[name]) for t, v in best[2]],
        )
    return sig


def classify_signature(sig: MotionSignature) -> MotionKind:
    """Map a signature to one of the seven basic motion kinds (or static)."""
    active = [name for name in CHANNELS
              if name in sig.channels and abs(sig.channels[name].delta) >= ACTIVE_DELTA[name]]
    if not active:
        return MotionKind.STATIC
    if len(active) == 1:
        return {
            "position_x": MotionKind.MOVE_H,
            "position_y": MotionKind.MOVE_V,
            "scale": MotionKind.ZOOM,
            "rotation": MotionKind.ROTATE,
            "opacity": MotionKind.FADE,
        }[active[0]]
    # Joint x+y movement is still one translation.
    if set(active) == {"position_x", "position_y"}:
        return MotionKind.COMBINED2
    return MotionKind.COMBINED2 if len(active) == 2 else MotionKind.COMBINED3


_DIRECTION_WORDS = {
    ("opacity", 1): "fade-in", ("opacity", -1): "fade-out",
    ("position_y", -1): "upward motion", ("position_y", 1): "downward motion",
    ("position_x", 1): "rightward motion", ("position_x", -1): "leftward motion",
    ("scale", 1): "scale-up", ("scale", -1): "scale-down",
    ("rotation", 1): "rotate-cw", ("rotation", -1): "rotate-ccw",
}


def signature_label(sig: MotionSignature) -> str:
    words = []
    for name in CHANNELS:
        ch = sig.channels.get(name)
        if ch is None or abs(ch.delta) < ACTIVE_DELTA[name]:
            continue
        words.append(_DIRECTION_WORDS.get((name, ch.direction), name))
    return " + ".join(words) if words else "static"


# =============================================================================
# Clustering (k-medoids)
# =============================================================================


def signature_distance(a: MotionSignature, b: MotionSignature) -> float:
    total = 0.0
    for name in CHANNELS:
        ca, cb = a.channels.get(name), b.channels.get(name)
        basis = CHANNEL_BASIS[name]
        va = ca.shape_vector(basis) if ca else [0.0] * SAMPLE_COUNT
        vb = cb.shape_vector(basis) if cb else [0.0] * SAMPLE_COUNT
        total += sum((x - y) ** 2 for x, y in zip(va, vb))
        da = ca.direction if ca else 0
        db = cb.direction if cb else 0
        ma = ca.monotonicity if ca else "constant"
        mb = cb.monotonicity if cb else "constant"
        if da != db:
            total += CATEGORY_PENALTY
        if ma != mb:
            total += CATEGORY_PENALTY
    return total ** 0.5


def _signature_key(sig: MotionSignature) -> tuple:
    parts = []
    for name in CHANNELS:
        ch = sig.channels.get(name)
        if ch is None:
            parts.append((name, None))
        else:
            vec = tuple(round(v, 4) for v in ch.shape_vector(CHANNEL_BASIS[name]))
            parts.append((name, ch.direction, ch.monotonicity, vec))
    return tuple(parts)


def cluster_signatures(sigs: list[MotionSignature], k: int, seed: int = 0) -> list[MotionTemplate]:
    """k-medoids over signature distance; medoid patterns become templates."""
    if not sigs:
        raise ValueError("no signatures to cluster")
    if k < 1:
        raise ValueError("k must be >= 1")
    uniques: dict[tuple, int] = {}
    for i, s in enumerate(sigs):
        uniques.setdefault(_signature_key(s), i)
    if k > len(uniques):
        raise KTooLarge(f"k={k} exceeds {len(uniques)} distinct signatures")

    n = len(sigs)
    dist = [[0.0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            d = signature_distance(sigs[i], sigs[j])
            dist[i][j] = dist[j][i] = d

    rng = random.Random(seed)
    reps = sorted(uniques.values())
    medoids = sorted(rng.sample(reps, k))
    for _ in range(50):
        clusters: list[list[int]] = [[] for _ in range(k)]
        for i in range(n):
            best = min(range(k), key=lambda m: (dist[i][medoids[m]], m))
            clusters[best].append(i)
        new_medoids = []
        for members, medoid in zip(clusters, medoids):
            if not members:
                new_medoids.append(medoid)
                continue
            new_medoids.append(min(members, key=lambda c: (sum(dist[c][x] for x in members), c)))
        if new_medoids == medoids:
            break
        medoids = new_medoids

    templates = []
    for members, medoid in zip(clusters, medoids):
        sig = sigs[medoid]
        channels = {name: list(ch.pattern) for name, ch in sig.channels.items()}
        templates.append(MotionTemplate(label=signature_label(sig), channels=channels, size=len(members) or 1))
    return templates


# =============================================================================
# Injection and synthesis
# =============================================================================


def _target_layers(a: M.Animation) -> list[M.Layer]:
    """The injected normalization parent when present, else all root layers."""
    for layer in a.layers:
        if isinstance(layer, M.Layer) and layer.kind == 3 and layer.match_name == NORM_ROOT_MATCH_NAME:
            return [layer]
    return [l for l in a.layers if isinstance(l, M.Layer)]


def _check_static(a: M.Animation) -> None:
    for layer in a.layers:
        if isinstance(layer, M.Layer) and _channel_tracks(layer):
            raise AlreadyAnimated(f"layer ind={layer.index} already has keyframed transforms")


def _ensure_separated(tr: M.Transform) -> None:
    pos = tr.position
    if not pos.separated:
        x, y = pos.joint.static[0], pos.joint.static[1]
        tr.position = M.Vec2Prop(x=M.AnimatedProperty.of(x), y=M.AnimatedProperty.of(y))


def _scalar_track(points: list[tuple[float, float]]) -> M.AnimatedProperty:
    return M.AnimatedProperty(dim=1, keyframes=[M.Keyframe(time=t, value=[v]) for t, v in points])


def _vec2_track(points: list[tuple[float, list[float]]]) -> M.AnimatedProperty:
    return M.AnimatedProperty(dim=2, keyframes=[M.Keyframe(time=t, value=list(v)) for t, v in points])


def _static_of(prop: M.AnimatedProperty, component: int = 0) -> float:
    return prop.static[component]


def inject_motion(static_a: M.Animation, tmpl: MotionTemplate, duration: float = 60.0,
                  magnitude: float | None = None, seed: int = 0) -> M.Animation:
    """Instantiate a template's keyframe patterns onto the target transforms.

    Values are end-anchored: the motion settles on the layer's existing
    static pose (fade-in ends fully opaque, slide-in ends in place).  With
    ``magnitude=None`` a scale in [0.5, 1.5] is drawn from the seed.
    Geometry is untouched; only transform tracks change.
    """
    _check_static(static_a)
    rng = random.Random(seed)
    mag = magnitude if magnitude is not None else rng.uniform(0.5, 1.5)
    a = copy.deepcopy(static_a)
    for layer in _target_layers(a):
        tr = layer.transform
        for name, pattern in tmpl.channels.items():
            if not pattern:
                continue
            basis = CHANNEL_BASIS[name]
            deltas = [v * mag * basis for _, v in pattern]
            times = [t * duration for t, _ in pattern]
            if name == "rotation":
                base = _static_of(tr.rotation)
                anchor = base - deltas[-1]
                tr.rotation = _scalar_track(list(zip(times, (anchor + d for d in deltas))))
            elif name == "opacity":
                base = _static_of(tr.opacity)
                anchor = base - deltas[-1]
                vals = [min(100.0, max(0.0, anchor + d)) for d in deltas]
                tr.opacity = _scalar_track(list(zip(times, vals)))
            elif name == "scale":
                bx, by = tr.scale.static[0], tr.scale.static[1]
                anchor = -deltas[-1]
                tr.scale = _vec2_track([(t, [bx + anchor + d, by + anchor + d]) for t, d in zip(times, deltas)])
            elif name in ("position_x", "position_y"):
                _ensure_separated(tr)
                axis = tr.position.x if name == "position_x" else tr.position.y
                base = _static_of(axis)
                anchor = base - deltas[-1]
                track = _scalar_track(list(zip(times, (anchor + d for d in deltas))))
                if name == "position_x":
                    tr.position.x = track
                else:
                    tr.position.y = track
    return a


def synth_basic_motion(static_a: M.Animation, kind: MotionKind, duration: float = 60.0,
                       seed: int = 0, direction: str | None = None,
                       magnitude: float | None = None) -> M.Animation:
    """Apply one of the seven procedural motions with seeded randomization.

    Translation stays within 40% of the canvas, scale within [50, 200]
    percent, rotation is a quarter/half/full turn, fades span the full
    opacity range; combined kinds draw 2-3 distinct base motions.
    """
    _check_static(static_a)
    rng = random.Random(seed)
    a = copy.deepcopy(static_a)
    canvas = max(a.width, a.height)

    if kind in (MotionKind.COMBINED2, MotionKind.COMBINED3):
        count = 2 if kind == MotionKind.COMBINED2 else 3
        parts = rng.sample(BASE_KINDS, count)
    elif kind == MotionKind.STATIC:
        return a
    else:
        parts = [kind]

    t0, t1 = 0.0, duration
    for layer in _target_layers(a):
        tr = layer.transform
        for part in parts:
            if part == MotionKind.MOVE_H:
                sign = {"left": -1, "right": 1}.get(direction) if len(parts) == 1 and direction else rng.choice((-1, 1))
                dx = sign * (magnitude if magnitude is not None else rng.uniform(0.15, 0.4) * canvas)
                _ensure_separated(tr)
                base = _static_of(tr.position.x)
                tr.position.x = _scalar_track([(t0, base), (t1, base + dx)])
            elif part == MotionKind.MOVE_V:
                sign = {"up": -1, "down": 1}.get(direction) if len(parts) == 1 and direction else rng.choice((-1, 1))
                dy = sign * (magnitude if magnitude is not None else rng.uniform(0.15, 0.4) * canvas)
                _ensure_separated(tr)
                base = _static_of(tr.position.y)
                tr.position.y = _scalar_track([(t0, base), (t1, base + dy)])
            elif part == MotionKind.ZOOM:
                zoom_in = {"in": True, "out": False}.get(direction) if len(parts) == 1 and direction else rng.choice((True, False))
                factor = magnitude if magnitude is not None else (rng.uniform(1.3, 2.0) if zoom_in else rng.uniform(0.5, 0.77))
                bx, by = tr.scale.static[0], tr.scale.static[1]
                ex = min(200.0, max(50.0, bx * factor))
                ey = min(200.0, max(50.0, by * factor))
                tr.scale = _vec2_track([(t0, [bx, by]), (t1, [ex, ey])])
            elif part == MotionKind.ROTATE:
                sign = {"cw": 1, "ccw": -1}.get(direction) if len(parts) == 1 and direction else rng.choice((1, -1))
                delta = sign * (magnitude if magnitude is not None else rng.choice((90.0, 180.0, 360.0)))
                base = _static_of(tr.rotation)
                tr.rotation = _scalar_track([(t0, base), (t1, base + delta)])
            elif part == MotionKind.FADE:
                fade_in = {"in": True, "out": False}.get(direction) if len(parts) == 1 and direction else rng.choice((True, False))
                if fade_in:
                    tr.opacity = _scalar_track([(t0, 0.0), (t1, 100.0)])
                else:
                    tr.opacity = _scalar_track([(t0, 100.0), (t1, 0.0)])
    return a


# =============================================================================
# Template files
# =============================================================================


def dump_templates(templates: list[MotionTemplate]) -> str:
    lines = ["#motion-templates v1"]
    for t in templates:
        label = t.label.replace('"', "'")
        lines.append(f'template "{label}" {t.size}')
        for name, pattern in t.channels.items():
            pts = " ".join(f"{tt:g}:{v:g}" for tt, v in pattern)
            lines.append(f"channel {name} {pts}")
        lines.append("end")
    return "\n".join(lines) + "\n"


def load_templates(text: str) -> list[MotionTemplate]:
    templates: list[MotionTemplate] = []
    current: MotionTemplate | None = None
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("template "):
            rest = line[len("template "):]
            label, _, size = rest.rpartition(" ")
            current = MotionTemplate(label=label.strip('"'), channels={}, size=int(size))
        elif line.startswith("channel "):
            _, name, *pts = line.split()
            pattern = []
            for p in pts:
                tt, v = p.split(":")
                pattern.append((float(tt), float(v)))
            current.channels[name] = pattern
        elif line == "end":
            templates.append(current)
            current = None
    return templates


def save_templates(templates: list[MotionTemplate], path: str) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(dump_templates(templates))


def read_templates(path: str) -> list[MotionTemplate]:
    with open(path, "r", encoding="utf-8") as f:
        return load_templates(f.read())
