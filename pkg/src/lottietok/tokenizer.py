"""Animation <-> command sequence <-> token sequence conversion.

Stream layout
-------------
A sequence is a flat list of commands.  Each command contributes its token,
then its numeric parameters in schema order, then its text groups (each a
count-prefixed run of text-region ids), then any KEYFRAME commands for its
animated properties, in property order.  Deferring keyframes keeps the
invariant that every parameter token belongs to the schema of the most
recent command token.

Stream shape:

    META [fonts: FONT*] [assets: ASSET + its layers]* [layer blocks]*

    layer block: LAYER-t params/texts/kfs, TRANSFORM, MASK*n, EFFECT*m,
                 payload (shape-node commands... | TEXTGROUP), END

Layers are emitted in render order (bottom of the document list first);
decoding restores document order.  Shape groups nest via SH-GROUP ... GROUP-END.

Optional values encode as the owning type's pad token; absent optional
properties encode as a static header whose value slots are all pads.
"""

from __future__ import annotations

import json
import struct
from dataclasses import dataclass, field

from . import model as M
from .errors import (
    ArityMismatch,
    MissingMeta,
    TextTooLong,
    TokenOutOfRange,
    UnbalancedNesting,
    UnsupportedContent,
    VersionMismatch,
)
from .texttok import TextTokenizer
from .vocab import PAD_VAL, ClampCounter, ParamType, VocabSpec, dequantize, quantize

PT = ParamType

# Layer kind <-> command name.
LAYER_CMD = {0: "LAYER-0", 1: "LAYER-1", 3: "LAYER-3", 4: "LAYER-4", 5: "LAYER-5"}
CMD_LAYER = {v: k for k, v in LAYER_CMD.items()}

SHAPE_CMD = {
    M.Group: "SH-GROUP", M.Path: "SH-PATH", M.Fill: "SH-FILL", M.Stroke: "SH-STROKE",
    M.GradientFill: "SH-GFILL", M.GradientStroke: "SH-GSTROKE", M.Rect: "SH-RECT",
    M.Ellipse: "SH-ELLIPSE", M.Star: "SH-STAR", M.GroupTransform: "SH-TRANSFORM",
    M.TrimPath: "SH-TRIM", M.Repeater: "SH-REPEAT", M.MergePaths: "SH-MERGE",
    M.RoundedCorners: "SH-ROUND", M.ZigZag: "SH-ZIGZAG",
}
CMD_SHAPE = {v: k for k, v in SHAPE_CMD.items()}

# Effect parameter kind -> (value dim, value ParamType).
EFFECT_VALUE_SPEC = {
    0: (1, PT.GENERIC),       # slider
    1: (1, PT.ROTATION_DEG),  # angle
    2: (4, PT.COLOR_CHANNEL), # color
    3: (2, PT.SPATIAL_COORD), # point
    4: (1, PT.BINARY_FLAG),   # checkbox
    5: (1, PT.SMALL_ENUM),    # dropdown
    6: (1, PT.GENERIC),       # layer reference
}


@dataclass
class Command:
    kind: str
    params: list[tuple[ParamType, float | None]] = field(default_factory=list)
    text_groups: list[str] = field(default_factory=list)


@dataclass
class CommandSeq:
    commands: list[Command] = field(default_factory=list)

    @property
    def meta(self) -> Command:
        return self.commands[0]

    @property
    def body(self) -> list[Command]:
        return self.commands[1:]


@dataclass
class TokenSeq:
    ids: list[int] = field(default_factory=list)
    vocab_version: str = ""
    text_tokenizer_id: str = ""

    def __len__(self) -> int:
        return len(self.ids)


@dataclass
class EfficiencyReport:
    raw_tokens: int
    raw_tokens_minified: int
    structured_text_tokens: int
    command_tokens: int
    compression: float
    compression_minified: float


# =============================================================================
# Sinks (emit targets) and sources (read origins)
# =============================================================================


class _CommandSink:
    def __init__(self):
        self.commands: list[Command] = []

    def command(self, kind: str) -> None:
        self.commands.append(Command(kind))

    def num(self, t: ParamType, value) -> None:
        self.commands[-1].params.append((t, None if value is PAD_VAL else float(value)))

    def text(self, s: str) -> None:
        self.commands[-1].text_groups.append(s)


class _TokenSink:
    def __init__(self, vocab: VocabSpec, tt: TextTokenizer, counter: ClampCounter | None = None):
        self.vocab = vocab
        self.tt = tt
        self.ids: list[int] = []
        self.counter = counter

    def command(self, kind: str) -> None:
        self.ids.append(self.vocab.command_id(kind))

    def num(self, t: ParamType, value) -> None:
        self.ids.append(quantize(value, t, self.vocab, self.counter))

    def text(self, s: str) -> None:
        toks = self.tt.encode(s)
        count_region = self.vocab.regions[PT.COUNT]
        if len(toks) > count_region.hi_step:
            raise TextTooLong(f"text of {len(toks)} tokens exceeds count region max {count_region.hi_step}")
        self.ids.append(quantize(len(toks), PT.COUNT, self.vocab))
        self.ids.extend(toks)


class _CommandSource:
    def __init__(self, seq: CommandSeq):
        self.commands = seq.commands
        self.idx = -1
        self.p = 0
        self.t = 0

    def _finish_current(self) -> None:
        if self.idx < 0:
            return
        cmd = self.commands[self.idx]
        if self.p != len(cmd.params) or self.t != len(cmd.text_groups):
            raise ArityMismatch(
                f"command {cmd.kind} at index {self.idx}: consumed {self.p}/{len(cmd.params)} params, "
                f"{self.t}/{len(cmd.text_groups)} text groups"
            )

    def peek(self) -> str | None:
        if self.idx + 1 >= len(self.commands):
            return None
        return self.commands[self.idx + 1].kind

    def expect(self, kinds) -> str:
        self._finish_current()
        self.idx += 1
        if self.idx >= len(self.commands):
            raise UnbalancedNesting(f"expected {kinds}, found end of sequence", position=self.idx)
        kind = self.commands[self.idx].kind
        if kind not in kinds:
            if self.idx == 0 and "META" in kinds:
                raise MissingMeta(f"first command is {kind}, not META")
            raise UnbalancedNesting(f"expected one of {kinds}, found {kind}", position=self.idx)
        self.p = 0
        self.t = 0
        return kind

    def num(self, t: ParamType):
        cmd = self.commands[self.idx]
        if self.p >= len(cmd.params):
            raise ArityMismatch(f"command {cmd.kind}: ran out of params reading {t.value}")
        pt, value = cmd.params[self.p]
        if pt != t:
            raise ArityMismatch(f"command {cmd.kind} param {self.p}: expected {t.value}, found {pt.value}")
        self.p += 1
        return value

    def num_req(self, t: ParamType) -> float:
        v = self.num(t)
        if v is None:
            raise ArityMismatch(f"command {self.commands[self.idx].kind}: PAD in required {t.value} slot")
        return v

    def text(self) -> str:
        cmd = self.commands[self.idx]
        if self.t >= len(cmd.text_groups):
            raise ArityMismatch(f"command {cmd.kind}: ran out of text groups")
        s = cmd.text_groups[self.t]
        self.t += 1
        return s

    def at_end(self) -> bool:
        return self.idx + 1 >= len(self.commands)

    def finish(self) -> None:
        self._finish_current()


class _TokenSource:
    def __init__(self, ids: list[int], vocab: VocabSpec, tt: TextTokenizer):
        self.ids = ids
        self.vocab = vocab
        self.tt = tt
        self.pos = 0
        self.n_commands = len(vocab.commands)

    def _next(self) -> int:
        if self.pos >= len(self.ids):
            raise UnbalancedNesting("unexpected end of token sequence", position=self.pos)
        tok = self.ids[self.pos]
        self.pos += 1
        return tok

    def peek(self) -> str | None:
        if self.pos >= len(self.ids):
            return None
        tok = self.ids[self.pos]
        if 0 <= tok < self.n_commands:
            return self.vocab.command_name(tok)
        return None

    def expect(self, kinds) -> str:
        start = self.pos
        tok = self._next()
        if not (0 <= tok < self.n_commands):
            raise TokenOutOfRange(tok, "command", position=start)
        kind = self.vocab.command_name(tok)
        if kind not in kinds:
            if start == 0 and "META" in kinds:
                raise MissingMeta(f"sequence starts with {kind}, not META")
            raise UnbalancedNesting(f"expected one of {kinds}, found {kind}", position=start)
        return kind

    def num(self, t: ParamType):
        start = self.pos
        tok = self._next()
        try:
            return dequantize(tok, t, self.vocab)
        except TokenOutOfRange as e:
            raise TokenOutOfRange(e.token, e.expected, position=start) from None

    def num_req(self, t: ParamType) -> float:
        start = self.pos
        v = self.num(t)
        if v is None:
            raise TokenOutOfRange(self.ids[start], f"{t.value} (pad not allowed)", position=start)
        return v

    def text(self) -> str:
        count = int(self.num_req(PT.COUNT))
        toks = []
        base, size = self.vocab.text_base, self.vocab.text_size
        for _ in range(count):
            start = self.pos
            tok = self._next()
            if not (base <= tok < base + size):
                raise TokenOutOfRange(tok, "text", position=start)
            toks.append(tok)
        return self.tt.decode(toks)

    def at_end(self) -> bool:
        return self.pos >= len(self.ids)

    def finish(self) -> None:
        pass


# =============================================================================
# Emit traversal: Animation -> sink
# =============================================================================


def _flag(v) -> int:
    return 1 if v else 0


def _emit_prop_header(sink, prop: M.AnimatedProperty | None, dim: int, t: ParamType, kf_q: list) -> None:
    """Static: flag 0 + value slots (pads when the property is absent).
    Animated: flag 1 + keyframe count, keyframes deferred to kf_q."""
    if prop is None:
        sink.num(PT.BINARY_FLAG, 0)
        for _ in range(dim):
            sink.num(t, PAD_VAL)
        return
    if not prop.animated:
        vals = prop.static
        if len(vals) != dim:
            raise UnsupportedContent("property", f"expected {dim} components, found {len(vals)}")
        sink.num(PT.BINARY_FLAG, 0)
        for v in vals:
            sink.num(t, v)
        return
    sink.num(PT.BINARY_FLAG, 1)
    sink.num(PT.COUNT, len(prop.keyframes))
    kf_q.append((prop, dim, t, False))


def _emit_path_block(sink, b: M.BezierPath) -> None:
    n = len(b.vertices)
    sink.num(PT.COUNT, n)
    sink.num(PT.BINARY_FLAG, _flag(b.closed))
    for i in range(n):
        for pt_list in (b.vertices, b.in_tangents, b.out_tangents):
            sink.num(PT.SPATIAL_COORD, pt_list[i][0])
            sink.num(PT.SPATIAL_COORD, pt_list[i][1])


def _emit_pathprop_header(sink, prop: M.AnimatedProperty, kf_q: list) -> None:
    if not prop.animated:
        sink.num(PT.BINARY_FLAG, 0)
        _emit_path_block(sink, prop.static)
        return
    sink.num(PT.BINARY_FLAG, 1)
    sink.num(PT.COUNT, len(prop.keyframes))
    kf_q.append((prop, 0, PT.SPATIAL_COORD, True))


def _emit_vec2_header(sink, v: M.Vec2Prop, t: ParamType, kf_q: list) -> None:
    if v.separated:
        sink.num(PT.BINARY_FLAG, 1)
        _emit_prop_header(sink, v.x, 1, t, kf_q)
        _emit_prop_header(sink, v.y, 1, t, kf_q)
    else:
        sink.num(PT.BINARY_FLAG, 0)
        _emit_prop_header(sink, v.joint, 2, t, kf_q)


def _emit_opt_vec2_header(sink, v: M.Vec2Prop | None, t: ParamType, kf_q: list) -> None:
    if v is None:
        sink.num(PT.BINARY_FLAG, 0)
        return
    sink.num(PT.BINARY_FLAG, 1)
    _emit_vec2_header(sink, v, t, kf_q)


def _emit_stops_header(sink, stops: M.GradientStops, kf_q: list) -> None:
    data = stops.data
    if data.animated:
        data_len = len(data.keyframes[0].value)
    else:
        data_len = len(data.static)
    sink.num(PT.COUNT, stops.count)
    sink.num(PT.COUNT, data_len)
    if not data.animated:
        sink.num(PT.BINARY_FLAG, 0)
        for v in data.static:
            sink.num(PT.COLOR_CHANNEL, v)
    else:
        sink.num(PT.BINARY_FLAG, 1)
        sink.num(PT.COUNT, len(data.keyframes))
        kf_q.append((data, data_len, PT.COLOR_CHANNEL, False))


def _emit_kf_blocks(sink, kf_q: list) -> None:
    for prop, dim, t, is_path in kf_q:
        for kf in prop.keyframes:
            sink.command("KEYFRAME")
            sink.num(PT.TEMPORAL, kf.time)
            if is_path:
                _emit_path_block(sink, kf.value)
            else:
                if len(kf.value) != dim:
                    raise UnsupportedContent("keyframe", f"expected {dim} components, found {len(kf.value)}")
                for v in kf.value:
                    sink.num(t, v)
            sink.num(PT.EASING_TANGENT, kf.ease_in[0])
            sink.num(PT.EASING_TANGENT, kf.ease_in[1])
            sink.num(PT.EASING_TANGENT, kf.ease_out[0])
            sink.num(PT.EASING_TANGENT, kf.ease_out[1])
            sink.num(PT.BINARY_FLAG, kf.hold)


def _emit_transform(sink, tr: M.Transform | M.GroupTransform, cmd: str, with_names: bool = False) -> None:
    sink.command(cmd)
    kf_q: list = []
    _emit_vec2_header(sink, tr.anchor, PT.SPATIAL_COORD, kf_q)
    _emit_vec2_header(sink, tr.position, PT.SPATIAL_COORD, kf_q)
    _emit_prop_header(sink, tr.scale, 2, PT.SCALE_PERCENT, kf_q)
    _emit_prop_header(sink, tr.rotation, 1, PT.ROTATION_DEG, kf_q)
    _emit_prop_header(sink, tr.opacity, 1, PT.OPACITY, kf_q)
    _emit_prop_header(sink, tr.skew, 1, PT.SKEW_DEG, kf_q)
    _emit_prop_header(sink, tr.skew_axis, 1, PT.SKEW_DEG, kf_q)
    if with_names:
        sink.text(tr.name)
        sink.text(tr.match_name)
    _emit_kf_blocks(sink, kf_q)


def _emit_shape_node(sink, node: M.ShapeNode) -> None:
    cmd = SHAPE_CMD.get(type(node))
    if cmd is None:
        raise UnsupportedContent("shapes", f"node {type(node).__name__} outside schema")
    if isinstance(node, M.GroupTransform):
        _emit_transform(sink, node, cmd, with_names=True)
        return
    sink.command(cmd)
    kf_q: list = []
    sink.num(PT.BINARY_FLAG, node.hidden)
    if isinstance(node, M.Group):
        sink.text(node.name)
        sink.text(node.match_name)
        for child in node.children:
            _emit_shape_node(sink, child)
        sink.command("GROUP-END")
        return
    if isinstance(node, M.Path):
        _emit_pathprop_header(sink, node.shape, kf_q)
    elif isinstance(node, M.Fill):
        sink.num(PT.SMALL_ENUM, node.rule if node.rule is not None else PAD_VAL)
        _emit_prop_header(sink, node.color, 3, PT.COLOR_CHANNEL, kf_q)
        _emit_prop_header(sink, node.opacity, 1, PT.OPACITY, kf_q)
    elif isinstance(node, M.Stroke):
        sink.num(PT.SMALL_ENUM, node.line_cap)
        sink.num(PT.SMALL_ENUM, node.line_join)
        sink.num(PT.GENERIC, node.miter_limit if node.miter_limit is not None else PAD_VAL)
        _emit_prop_header(sink, node.color, 3, PT.COLOR_CHANNEL, kf_q)
        _emit_prop_header(sink, node.opacity, 1, PT.OPACITY, kf_q)
        _emit_prop_header(sink, node.width, 1, PT.SPATIAL_COORD, kf_q)
    elif isinstance(node, M.GradientFill):
        sink.num(PT.SMALL_ENUM, node.rule if node.rule is not None else PAD_VAL)
        sink.num(PT.SMALL_ENUM, node.gradient_type)
        _emit_prop_header(sink, node.start, 2, PT.SPATIAL_COORD, kf_q)
        _emit_prop_header(sink, node.end, 2, PT.SPATIAL_COORD, kf_q)
        _emit_stops_header(sink, node.stops, kf_q)
        _emit_prop_header(sink, node.opacity, 1, PT.OPACITY, kf_q)
    elif isinstance(node, M.GradientStroke):
        sink.num(PT.SMALL_ENUM, node.gradient_type)
        sink.num(PT.SMALL_ENUM, node.line_cap)
        sink.num(PT.SMALL_ENUM, node.line_join)
        sink.num(PT.GENERIC, node.miter_limit if node.miter_limit is not None else PAD_VAL)
        _emit_prop_header(sink, node.start, 2, PT.SPATIAL_COORD, kf_q)
        _emit_prop_header(sink, node.end, 2, PT.SPATIAL_COORD, kf_q)
        _emit_stops_header(sink, node.stops, kf_q)
        _emit_prop_header(sink, node.opacity, 1, PT.OPACITY, kf_q)
        _emit_prop_header(sink, node.width, 1, PT.SPATIAL_COORD, kf_q)
    elif isinstance(node, M.Rect):
        _emit_prop_header(sink, node.position, 2, PT.SPATIAL_COORD, kf_q)
        _emit_prop_header(sink, node.size, 2, PT.SPATIAL_COORD, kf_q)
        _emit_prop_header(sink, node.roundness, 1, PT.SPATIAL_COORD, kf_q)
    elif isinstance(node, M.Ellipse):
        _emit_prop_header(sink, node.position, 2, PT.SPATIAL_COORD, kf_q)
        _emit_prop_header(sink, node.size, 2, PT.SPATIAL_COORD, kf_q)
    elif isinstance(node, M.Star):
        sink.num(PT.SMALL_ENUM, node.star_type)
        _emit_prop_header(sink, node.points, 1, PT.GENERIC, kf_q)
        _emit_prop_header(sink, node.position, 2, PT.SPATIAL_COORD, kf_q)
        _emit_prop_header(sink, node.rotation, 1, PT.ROTATION_DEG, kf_q)
        _emit_prop_header(sink, node.outer_radius, 1, PT.SPATIAL_COORD, kf_q)
        _emit_prop_header(sink, node.outer_roundness, 1, PT.GENERIC, kf_q)
        _emit_prop_header(sink, node.inner_radius, 1, PT.SPATIAL_COORD, kf_q)
        _emit_prop_header(sink, node.inner_roundness, 1, PT.GENERIC, kf_q)
    elif isinstance(node, M.TrimPath):
        sink.num(PT.SMALL_ENUM, node.mode)
        _emit_prop_header(sink, node.start, 1, PT.TRIM_PERCENT, kf_q)
        _emit_prop_header(sink, node.end, 1, PT.TRIM_PERCENT, kf_q)
        _emit_prop_header(sink, node.offset, 1, PT.ROTATION_DEG, kf_q)
    elif isinstance(node, M.Repeater):
        sink.num(PT.SMALL_ENUM, node.composite)
        _emit_prop_header(sink, node.copies, 1, PT.GENERIC, kf_q)
        _emit_prop_header(sink, node.offset, 1, PT.GENERIC, kf_q)
        rt = node.transform
        _emit_prop_header(sink, rt.anchor, 2, PT.SPATIAL_COORD, kf_q)
        _emit_prop_header(sink, rt.position, 2, PT.SPATIAL_COORD, kf_q)
        _emit_prop_header(sink, rt.scale, 2, PT.SCALE_PERCENT, kf_q)
        _emit_prop_header(sink, rt.rotation, 1, PT.ROTATION_DEG, kf_q)
        _emit_prop_header(sink, rt.start_opacity, 1, PT.OPACITY, kf_q)
        _emit_prop_header(sink, rt.end_opacity, 1, PT.OPACITY, kf_q)
    elif isinstance(node, M.MergePaths):
        sink.num(PT.SMALL_ENUM, node.mode)
    elif isinstance(node, M.RoundedCorners):
        _emit_prop_header(sink, node.radius, 1, PT.SPATIAL_COORD, kf_q)
    elif isinstance(node, M.ZigZag):
        _emit_prop_header(sink, node.amplitude, 1, PT.SPATIAL_COORD, kf_q)
        _emit_prop_header(sink, node.frequency, 1, PT.GENERIC, kf_q)
        _emit_prop_header(sink, node.point_type, 1, PT.GENERIC, kf_q)
    sink.text(node.name)
    sink.text(node.match_name)
    _emit_kf_blocks(sink, kf_q)


def _emit_mask(sink, m: M.Mask) -> None:
    sink.command("MASK")
    kf_q: list = []
    sink.num(PT.SMALL_ENUM, m.mode)
    _emit_pathprop_header(sink, m.path, kf_q)
    _emit_prop_header(sink, m.opacity, 1, PT.OPACITY, kf_q)
    _emit_prop_header(sink, m.expansion, 1, PT.EXPANSION, kf_q)
    sink.text(m.name)
    _emit_kf_blocks(sink, kf_q)


def _emit_effect(sink, e: M.Effect) -> None:
    sink.command("EFFECT")
    kf_q: list = []
    sink.num(PT.GENERIC, e.kind)
    sink.num(PT.BINARY_FLAG, e.enabled)
    sink.num(PT.COUNT, len(e.params))
    for p in e.params:
        dim, vt = EFFECT_VALUE_SPEC[p.kind]
        sink.num(PT.SMALL_ENUM, p.kind)
        _emit_prop_header(sink, p.value, dim, vt, kf_q)
    sink.text(e.name)
    sink.text(e.match_name)
    for p in e.params:
        sink.text(p.name)
        sink.text(p.match_name)
    _emit_kf_blocks(sink, kf_q)


def _emit_textgroup(sink, t: M.TextPayload) -> None:
    sink.command("TEXTGROUP")
    kf_q: list = []
    sink.num(PT.COUNT, len(t.documents))
    for dk in t.documents:
        doc = dk.document
        sink.num(PT.TEMPORAL, dk.time)
        sink.num(PT.FONT_SIZE, doc.size)
        for c in doc.color:
            sink.num(PT.COLOR_CHANNEL, c)
        sink.num(PT.SMALL_ENUM, doc.justify)
        sink.num(PT.GENERIC, doc.tracking)
        sink.num(PT.FONT_SIZE, doc.leading if doc.leading is not None else PAD_VAL)
    sink.num(PT.COUNT, len(t.animators))
    for a in t.animators:
        sink.num(PT.SMALL_ENUM, a.basis)
        _emit_prop_header(sink, a.sel_start, 1, PT.TRIM_PERCENT, kf_q)
        _emit_prop_header(sink, a.sel_end, 1, PT.TRIM_PERCENT, kf_q)
        _emit_opt_vec2_header(sink, a.position, PT.SPATIAL_COORD, kf_q)
        _emit_prop_header(sink, a.rotation, 1, PT.ROTATION_DEG, kf_q)
        _emit_prop_header(sink, a.scale, 2, PT.SCALE_PERCENT, kf_q)
        _emit_prop_header(sink, a.fill_color, 3, PT.COLOR_CHANNEL, kf_q)
        _emit_prop_header(sink, a.opacity, 1, PT.OPACITY, kf_q)
        _emit_prop_header(sink, a.tracking, 1, PT.GENERIC, kf_q)
    for dk in t.documents:
        sink.text(dk.document.font)
        sink.text(dk.document.text)
    for a in t.animators:
        sink.text(a.name)
    _emit_kf_blocks(sink, kf_q)


def _emit_layer(sink, layer) -> None:
    if isinstance(layer, M.RawLayer):
        raise UnsupportedContent("layers", f"raw layer kind {layer.kind}; clean the file first")
    sink.command(LAYER_CMD[layer.kind])
    kf_q: list = []
    sink.num(PT.GENERIC, layer.index if layer.index is not None else PAD_VAL)
    sink.num(PT.GENERIC, layer.parent if layer.parent is not None else PAD_VAL)
    sink.num(PT.TEMPORAL, layer.in_point)
    sink.num(PT.TEMPORAL, layer.out_point)
    sink.num(PT.TEMPORAL, layer.start_time)
    sink.num(PT.SCALE_PERCENT, layer.stretch * 100.0)
    sink.num(PT.BINARY_FLAG, layer.auto_orient)
    sink.num(PT.BINARY_FLAG, layer.three_d)
    sink.num(PT.BINARY_FLAG, layer.hidden)
    sink.num(PT.BINARY_FLAG, layer.collapse if layer.collapse is not None else PAD_VAL)
    sink.num(PT.SMALL_ENUM, layer.blend_mode)
    sink.num(PT.SMALL_ENUM, layer.matte_mode if layer.matte_mode is not None else PAD_VAL)
    sink.num(PT.GENERIC, layer.matte_parent if layer.matte_parent is not None else PAD_VAL)
    sink.num(PT.BINARY_FLAG, layer.matte_target if layer.matte_target is not None else PAD_VAL)
    sink.num(PT.COUNT, len(layer.masks))
    sink.num(PT.COUNT, len(layer.effects))
    p = layer.payload
    if isinstance(p, M.PrecompPayload):
        sink.num(PT.SPATIAL_COORD, p.width)
        sink.num(PT.SPATIAL_COORD, p.height)
        _emit_prop_header(sink, p.time_remap, 1, PT.TEMPORAL, kf_q)
    elif isinstance(p, M.SolidPayload):
        sink.num(PT.SPATIAL_COORD, p.width)
        sink.num(PT.SPATIAL_COORD, p.height)
        for ch in _hex_to_channels(p.color):
            sink.num(PT.COLOR_CHANNEL, ch)
    sink.text(layer.name)
    sink.text(layer.match_name)
    sink.text(layer.css_class)
    sink.text(layer.layer_xml_id)
    if isinstance(p, M.PrecompPayload):
        sink.text(p.ref_id)
    _emit_kf_blocks(sink, kf_q)

    _emit_transform(sink, layer.transform, "TRANSFORM")
    for m in layer.masks:
        _emit_mask(sink, m)
    for e in layer.effects:
        _emit_effect(sink, e)
    if isinstance(p, M.ShapePayload):
        for node in p.shapes:
            _emit_shape_node(sink, node)
    elif isinstance(p, M.TextPayload):
        _emit_textgroup(sink, p)
    sink.command("END")


def _hex_to_channels(hex_color: str) -> tuple[float, float, float]:
    body = hex_color.lstrip("#")
    return tuple(int(body[i:i + 2], 16) / 255.0 for i in (0, 2, 4))


def _channels_to_hex(channels) -> str:
    return "#" + "".join(f"{round(max(0.0, min(1.0, c)) * 255):02x}" for c in channels)


def _emit_animation(sink, a: M.Animation) -> None:
    if not a.version:
        raise UnsupportedContent("$.v", "empty version string cannot be tokenized")
    sink.command("META")
    sink.num(PT.GENERIC, a.frame_rate)
    sink.num(PT.GENERIC, a.in_point)
    sink.num(PT.GENERIC, a.out_point)
    sink.num(PT.SPATIAL_COORD, a.width)
    sink.num(PT.SPATIAL_COORD, a.height)
    sink.num(PT.BINARY_FLAG, a.three_d_flag)
    sink.text("" if a.version == M.DEFAULT_VERSION else a.version)
    sink.text(a.name)
    for f in a.fonts:
        sink.command("FONT")
        sink.num(PT.GENERIC, f.ascent if f.ascent is not None else PAD_VAL)
        sink.text(f.name)
        sink.text(f.family)
        sink.text(f.style)
    for asset in a.assets:
        if isinstance(asset, M.RawAsset):
            raise UnsupportedContent("assets", "raw asset; clean the file first")
        sink.command("ASSET")
        sink.num(PT.COUNT, len(asset.layers))
        sink.num(PT.GENERIC, asset.frame_rate if asset.frame_rate is not None else PAD_VAL)
        sink.text(asset.asset_id)
        for layer in reversed(asset.layers):
            _emit_layer(sink, layer)
    for layer in reversed(a.layers):
        _emit_layer(sink, layer)


# =============================================================================
# Read traversal: source -> Animation
# =============================================================================


def _read_prop(src, dim: int, t: ParamType, kf_q: list, optional: bool = False):
    animated = int(src.num_req(PT.BINARY_FLAG))
    if not animated:
        vals = [src.num(t) for _ in range(dim)]
        if all(v is None for v in vals) and optional:
            return None
        if any(v is None for v in vals):
            raise ArityMismatch(f"PAD inside required static {t.value} value")
        return M.AnimatedProperty(dim=dim, static=[float(v) for v in vals])
    count = int(src.num_req(PT.COUNT))
    prop = M.AnimatedProperty(dim=dim, keyframes=[])
    kf_q.append((prop, count, dim, t, False))
    return prop


def _read_path_block(src) -> M.BezierPath:
    n = int(src.num_req(PT.COUNT))
    closed = bool(int(src.num_req(PT.BINARY_FLAG)))
    b = M.BezierPath(closed=closed)
    for _ in range(n):
        b.vertices.append([src.num_req(PT.SPATIAL_COORD), src.num_req(PT.SPATIAL_COORD)])
        b.in_tangents.append([src.num_req(PT.SPATIAL_COORD), src.num_req(PT.SPATIAL_COORD)])
        b.out_tangents.append([src.num_req(PT.SPATIAL_COORD), src.num_req(PT.SPATIAL_COORD)])
    return b


def _read_pathprop(src, kf_q: list) -> M.AnimatedProperty:
    animated = int(src.num_req(PT.BINARY_FLAG))
    if not animated:
        return M.AnimatedProperty(is_path=True, dim=0, static=_read_path_block(src))
    count = int(src.num_req(PT.COUNT))
    prop = M.AnimatedProperty(is_path=True, dim=0, keyframes=[])
    kf_q.append((prop, count, 0, PT.SPATIAL_COORD, True))
    return prop


def _read_vec2(src, t: ParamType, kf_q: list) -> M.Vec2Prop:
    separated = int(src.num_req(PT.BINARY_FLAG))
    if separated:
        x = _read_prop(src, 1, t, kf_q)
        y = _read_prop(src, 1, t, kf_q)
        return M.Vec2Prop(x=x, y=y)
    return M.Vec2Prop(joint=_read_prop(src, 2, t, kf_q))


def _read_opt_vec2(src, t: ParamType, kf_q: list) -> M.Vec2Prop | None:
    present = int(src.num_req(PT.BINARY_FLAG))
    if not present:
        return None
    return _read_vec2(src, t, kf_q)


def _read_stops(src, kf_q: list) -> M.GradientStops:
    count = int(src.num_req(PT.COUNT))
    data_len = int(src.num_req(PT.COUNT))
    animated = int(src.num_req(PT.BINARY_FLAG))
    if not animated:
        vals = [src.num_req(PT.COLOR_CHANNEL) for _ in range(data_len)]
        return M.GradientStops(count=count, data=M.AnimatedProperty(dim=data_len, static=vals))
    kf_count = int(src.num_req(PT.COUNT))
    prop = M.AnimatedProperty(dim=data_len, keyframes=[])
    kf_q.append((prop, kf_count, data_len, PT.COLOR_CHANNEL, False))
    return M.GradientStops(count=count, data=prop)


def _read_kf_blocks(src, kf_q: list) -> None:
    for prop, count, dim, t, is_path in kf_q:
        for _ in range(count):
            src.expect(("KEYFRAME",))
            time = src.num_req(PT.TEMPORAL)
            if is_path:
                value = _read_path_block(src)
            else:
                value = [src.num_req(t) for _ in range(dim)]
            ein = (src.num_req(PT.EASING_TANGENT), src.num_req(PT.EASING_TANGENT))
            eout = (src.num_req(PT.EASING_TANGENT), src.num_req(PT.EASING_TANGENT))
            hold = int(src.num_req(PT.BINARY_FLAG))
            prop.keyframes.append(M.Keyframe(time=time, value=value, ease_in=ein, ease_out=eout, hold=hold))


def _read_transform(src, cls, with_names: bool = False):
    tr = cls()
    kf_q: list = []
    tr.anchor = _read_vec2(src, PT.SPATIAL_COORD, kf_q)
    tr.position = _read_vec2(src, PT.SPATIAL_COORD, kf_q)
    tr.scale = _read_prop(src, 2, PT.SCALE_PERCENT, kf_q)
    tr.rotation = _read_prop(src, 1, PT.ROTATION_DEG, kf_q)
    tr.opacity = _read_prop(src, 1, PT.OPACITY, kf_q)
    tr.skew = _read_prop(src, 1, PT.SKEW_DEG, kf_q)
    tr.skew_axis = _read_prop(src, 1, PT.SKEW_DEG, kf_q)
    if with_names:
        tr.name = src.text()
        tr.match_name = src.text()
    _read_kf_blocks(src, kf_q)
    return tr


def _opt_int(v) -> int | None:
    return None if v is None else int(v)


def _read_shape_node(src, kind: str) -> M.ShapeNode:
    if kind == "SH-TRANSFORM":
        return _read_transform(src, M.GroupTransform, with_names=True)
    cls = CMD_SHAPE[kind]
    node = cls()
    kf_q: list = []
    node.hidden = int(src.num_req(PT.BINARY_FLAG))
    if cls is M.Group:
        node.name = src.text()
        node.match_name = src.text()
        while True:
            nxt = src.peek()
            if nxt == "GROUP-END":
                src.expect(("GROUP-END",))
                return node
            if nxt in CMD_SHAPE:
                k = src.expect(tuple(CMD_SHAPE))
                node.children.append(_read_shape_node(src, k))
            else:
                src.expect(tuple(CMD_SHAPE) + ("GROUP-END",))  # raises a positioned error
    if cls is M.Path:
        node.shape = _read_pathprop(src, kf_q)
    elif cls is M.Fill:
        node.rule = _opt_int(src.num(PT.SMALL_ENUM))
        node.color = _read_prop(src, 3, PT.COLOR_CHANNEL, kf_q)
        node.opacity = _read_prop(src, 1, PT.OPACITY, kf_q)
    elif cls is M.Stroke:
        node.line_cap = int(src.num_req(PT.SMALL_ENUM))
        node.line_join = int(src.num_req(PT.SMALL_ENUM))
        ml = src.num(PT.GENERIC)
        node.miter_limit = None if ml is None else float(ml)
        node.color = _read_prop(src, 3, PT.COLOR_CHANNEL, kf_q)
        node.opacity = _read_prop(src, 1, PT.OPACITY, kf_q)
        node.width = _read_prop(src, 1, PT.SPATIAL_COORD, kf_q)
    elif cls is M.GradientFill:
        node.rule = _opt_int(src.num(PT.SMALL_ENUM))
        node.gradient_type = int(src.num_req(PT.SMALL_ENUM))
        node.start = _read_prop(src, 2, PT.SPATIAL_COORD, kf_q)
        node.end = _read_prop(src, 2, PT.SPATIAL_COORD, kf_q)
        node.stops = _read_stops(src, kf_q)
        node.opacity = _read_prop(src, 1, PT.OPACITY, kf_q)
    elif cls is M.GradientStroke:
        node.gradient_type = int(src.num_req(PT.SMALL_ENUM))
        node.line_cap = int(src.num_req(PT.SMALL_ENUM))
        node.line_join = int(src.num_req(PT.SMALL_ENUM))
        ml = src.num(PT.GENERIC)
        node.miter_limit = None if ml is None else float(ml)
        node.start = _read_prop(src, 2, PT.SPATIAL_COORD, kf_q)
        node.end = _read_prop(src, 2, PT.SPATIAL_COORD, kf_q)
        node.stops = _read_stops(src, kf_q)
        node.opacity = _read_prop(src, 1, PT.OPACITY, kf_q)
        node.width = _read_prop(src, 1, PT.SPATIAL_COORD, kf_q)
    elif cls is M.Rect:
        node.position = _read_prop(src, 2, PT.SPATIAL_COORD, kf_q)
        node.size = _read_prop(src, 2, PT.SPATIAL_COORD, kf_q)
        node.roundness = _read_prop(src, 1, PT.SPATIAL_COORD, kf_q)
    elif cls is M.Ellipse:
        node.position = _read_prop(src, 2, PT.SPATIAL_COORD, kf_q)
        node.size = _read_prop(src, 2, PT.SPATIAL_COORD, kf_q)
    elif cls is M.Star:
        node.star_type = int(src.num_req(PT.SMALL_ENUM))
        node.points = _read_prop(src, 1, PT.GENERIC, kf_q)
        node.position = _read_prop(src, 2, PT.SPATIAL_COORD, kf_q)
        node.rotation = _read_prop(src, 1, PT.ROTATION_DEG, kf_q)
        node.outer_radius = _read_prop(src, 1, PT.SPATIAL_COORD, kf_q)
        node.outer_roundness = _read_prop(src, 1, PT.GENERIC, kf_q)
        node.inner_radius = _read_prop(src, 1, PT.SPATIAL_COORD, kf_q, optional=True)
        node.inner_roundness = _read_prop(src, 1, PT.GENERIC, kf_q, optional=True)
    elif cls is M.TrimPath:
        node.mode = int(src.num_req(PT.SMALL_ENUM))
        node.start = _read_prop(src, 1, PT.TRIM_PERCENT, kf_q)
        node.end = _read_prop(src, 1, PT.TRIM_PERCENT, kf_q)
        node.offset = _read_prop(src, 1, PT.ROTATION_DEG, kf_q)
    elif cls is M.Repeater:
        node.composite = int(src.num_req(PT.SMALL_ENUM))
        node.copies = _read_prop(src, 1, PT.GENERIC, kf_q)
        node.offset = _read_prop(src, 1, PT.GENERIC, kf_q)
        rt = M.RepeaterTransform()
        rt.anchor = _read_prop(src, 2, PT.SPATIAL_COORD, kf_q)
        rt.position = _read_prop(src, 2, PT.SPATIAL_COORD, kf_q)
        rt.scale = _read_prop(src, 2, PT.SCALE_PERCENT, kf_q)
        rt.rotation = _read_prop(src, 1, PT.ROTATION_DEG, kf_q)
        rt.start_opacity = _read_prop(src, 1, PT.OPACITY, kf_q)
        rt.end_opacity = _read_prop(src, 1, PT.OPACITY, kf_q)
        node.transform = rt
    elif cls is M.MergePaths:
        node.mode = int(src.num_req(PT.SMALL_ENUM))
    elif cls is M.RoundedCorners:
        node.radius = _read_prop(src, 1, PT.SPATIAL_COORD, kf_q)
    elif cls is M.ZigZag:
        node.amplitude = _read_prop(src, 1, PT.SPATIAL_COORD, kf_q)
        node.frequency = _read_prop(src, 1, PT.GENERIC, kf_q)
        node.point_type = _read_prop(src, 1, PT.GENERIC, kf_q)
    node.name = src.text()
    node.match_name = src.text()
    _read_kf_blocks(src, kf_q)
    return node


def _read_mask(src) -> M.Mask:
    kf_q: list = []
    m = M.Mask(mode=int(src.num_req(PT.SMALL_ENUM)))
    m.path = _read_pathprop(src, kf_q)
    m.opacity = _read_prop(src, 1, PT.OPACITY, kf_q)
    m.expansion = _read_prop(src, 1, PT.EXPANSION, kf_q)
    m.name = src.text()
    _read_kf_blocks(src, kf_q)
    return m


def _read_effect(src) -> M.Effect:
    kf_q: list = []
    e = M.Effect(kind=int(src.num_req(PT.GENERIC)))
    e.enabled = int(src.num_req(PT.BINARY_FLAG))
    n = int(src.num_req(PT.COUNT))
    for _ in range(n):
        kind = int(src.num_req(PT.SMALL_ENUM))
        if kind not in EFFECT_VALUE_SPEC:
            raise ArityMismatch(f"unknown effect parameter kind {kind}")
        dim, vt = EFFECT_VALUE_SPEC[kind]
        value = _read_prop(src, dim, vt, kf_q)
        e.params.append(M.EffectParam(kind=kind, value=value))
    e.name = src.text()
    e.match_name = src.text()
    for p in e.params:
        p.name = src.text()
        p.match_name = src.text()
    _read_kf_blocks(src, kf_q)
    return e


def _read_textgroup(src) -> M.TextPayload:
    payload = M.TextPayload()
    kf_q: list = []
    n_docs = int(src.num_req(PT.COUNT))
    for _ in range(n_docs):
        time = src.num_req(PT.TEMPORAL)
        doc = M.TextDocument()
        doc.size = src.num_req(PT.FONT_SIZE)
        doc.color = [src.num_req(PT.COLOR_CHANNEL) for _ in range(3)]
        doc.justify = int(src.num_req(PT.SMALL_ENUM))
        doc.tracking = src.num_req(PT.GENERIC)
        lh = src.num(PT.FONT_SIZE)
        doc.leading = None if lh is None else float(lh)
        payload.documents.append(M.TextDocKeyframe(time=time, document=doc))
    n_anims = int(src.num_req(PT.COUNT))
    for _ in range(n_anims):
        a = M.TextAnimator(basis=int(src.num_req(PT.SMALL_ENUM)))
        a.sel_start = _read_prop(src, 1, PT.TRIM_PERCENT, kf_q, optional=True)
        a.sel_end = _read_prop(src, 1, PT.TRIM_PERCENT, kf_q, optional=True)
        a.position = _read_opt_vec2(src, PT.SPATIAL_COORD, kf_q)
        a.rotation = _read_prop(src, 1, PT.ROTATION_DEG, kf_q, optional=True)
        a.scale = _read_prop(src, 2, PT.SCALE_PERCENT, kf_q, optional=True)
        a.fill_color = _read_prop(src, 3, PT.COLOR_CHANNEL, kf_q, optional=True)
        a.opacity = _read_prop(src, 1, PT.OPACITY, kf_q, optional=True)
        a.tracking = _read_prop(src, 1, PT.GENERIC, kf_q, optional=True)
        payload.animators.append(a)
    for dk in payload.documents:
        dk.document.font = src.text()
        dk.document.text = src.text()
    for a in payload.animators:
        a.name = src.text()
    _read_kf_blocks(src, kf_q)
    return payload


def _read_layer(src, kind: str) -> M.Layer:
    tau = CMD_LAYER[kind]
    layer = M.Layer(kind=tau)
    kf_q: list = []
    layer.index = _opt_int(src.num(PT.GENERIC))
    layer.parent = _opt_int(src.num(PT.GENERIC))
    layer.in_point = src.num_req(PT.TEMPORAL)
    layer.out_point = src.num_req(PT.TEMPORAL)
    layer.start_time = src.num_req(PT.TEMPORAL)
    layer.stretch = src.num_req(PT.SCALE_PERCENT) / 100.0
    layer.auto_orient = int(src.num_req(PT.BINARY_FLAG))
    layer.three_d = int(src.num_req(PT.BINARY_FLAG))
    layer.hidden = int(src.num_req(PT.BINARY_FLAG))
    layer.collapse = _opt_int(src.num(PT.BINARY_FLAG))
    layer.blend_mode = int(src.num_req(PT.SMALL_ENUM))
    layer.matte_mode = _opt_int(src.num(PT.SMALL_ENUM))
    layer.matte_parent = _opt_int(src.num(PT.GENERIC))
    layer.matte_target = _opt_int(src.num(PT.BINARY_FLAG))
    n_masks = int(src.num_req(PT.COUNT))
    n_effects = int(src.num_req(PT.COUNT))
    if tau == 0:
        payload = M.PrecompPayload()
        payload.width = src.num_req(PT.SPATIAL_COORD)
        payload.height = src.num_req(PT.SPATIAL_COORD)
        payload.time_remap = _read_prop(src, 1, PT.TEMPORAL, kf_q, optional=True)
        layer.payload = payload
    elif tau == 1:
        payload = M.SolidPayload()
        payload.width = src.num_req(PT.SPATIAL_COORD)
        payload.height = src.num_req(PT.SPATIAL_COORD)
        payload.color = _channels_to_hex([src.num_req(PT.COLOR_CHANNEL) for _ in range(3)])
        layer.payload = payload
    layer.name = src.text()
    layer.match_name = src.text()
    layer.css_class = src.text()
    layer.layer_xml_id = src.text()
    if tau == 0:
        layer.payload.ref_id = src.text()
    _read_kf_blocks(src, kf_q)

    src.expect(("TRANSFORM",))
    layer.transform = _read_transform(src, M.Transform)
    for _ in range(n_masks):
        src.expect(("MASK",))
        layer.masks.append(_read_mask(src))
    for _ in range(n_effects):
        src.expect(("EFFECT",))
        layer.effects.append(_read_effect(src))
    if tau == 4:
        shapes = []
        while True:
            nxt = src.peek()
            if nxt == "END":
                break
            k = src.expect(tuple(CMD_SHAPE) + ("END",))
            shapes.append(_read_shape_node(src, k))
        layer.payload = M.ShapePayload(shapes=shapes)
    elif tau == 5:
        src.expect(("TEXTGROUP",))
        layer.payload = _read_textgroup(src)
    src.expect(("END",))
    return layer


def _read_animation(src) -> M.Animation:
    src.expect(("META",))
    a = M.Animation()
    a.frame_rate = src.num_req(PT.GENERIC)
    a.in_point = src.num_req(PT.GENERIC)
    a.out_point = src.num_req(PT.GENERIC)
    a.width = src.num_req(PT.SPATIAL_COORD)
    a.height = src.num_req(PT.SPATIAL_COORD)
    a.three_d_flag = int(src.num_req(PT.BINARY_FLAG))
    version = src.text()
    a.version = version if version else M.DEFAULT_VERSION
    a.name = src.text()
    while src.peek() == "FONT":
        src.expect(("FONT",))
        ascent = src.num(PT.GENERIC)
        f = M.FontDef(ascent=None if ascent is None else float(ascent))
        f.name = src.text()
        f.family = src.text()
        f.style = src.text()
        a.fonts.append(f)
    while src.peek() == "ASSET":
        src.expect(("ASSET",))
        n_layers = int(src.num_req(PT.COUNT))
        fr = src.num(PT.GENERIC)
        asset = M.PrecompAsset(frame_rate=None if fr is None else float(fr))
        asset.asset_id = src.text()
        for _ in range(n_layers):
            k = src.expect(tuple(LAYER_CMD.values()))
            asset.layers.append(_read_layer(src, k))
        asset.layers.reverse()
        a.assets.append(asset)
    while not src.at_end():
        k = src.expect(tuple(LAYER_CMD.values()))
        a.layers.append(_read_layer(src, k))
    a.layers.reverse()
    src.finish()
    return a


# =============================================================================
# Public operations
# =============================================================================


def to_command_sequence(a: M.Animation) -> CommandSeq:
    """Flatten an Animation into the intermediate command representation.

    Layers appear in render order (reversed document order); nesting is
    carried by SH-GROUP / GROUP-END pairs and per-layer END markers.
    """
    sink = _CommandSink()
    _emit_animation(sink, a)
    return CommandSeq(commands=sink.commands)


def from_command_sequence(seq: CommandSeq) -> M.Animation:
    """Inverse of :func:`to_command_sequence` up to field defaulting."""
    if not seq.commands:
        raise MissingMeta("empty command sequence")
    return _read_animation(_CommandSource(seq))


def encode(a: M.Animation, v: VocabSpec, tt: TextTokenizer,
           counter: ClampCounter | None = None) -> TokenSeq:
    """Animation -> flat token ids under the given vocabulary and text tokenizer."""
    sink = _TokenSink(v, tt, counter)
    _emit_animation(sink, a)
    return TokenSeq(ids=sink.ids, vocab_version=v.version, text_tokenizer_id=tt.tokenizer_id)


def decode(t: TokenSeq, v: VocabSpec, tt: TextTokenizer) -> M.Animation:
    """Token ids -> Animation; refuses mismatched vocabulary or tokenizer."""
    if t.vocab_version and t.vocab_version != v.version:
        raise VersionMismatch(f"sequence vocab {t.vocab_version!r} != vocabulary {v.version!r}")
    if t.text_tokenizer_id and t.text_tokenizer_id != tt.tokenizer_id:
        raise VersionMismatch(f"sequence tokenizer {t.text_tokenizer_id!r} != {tt.tokenizer_id!r}")
    return _read_animation(_TokenSource(t.ids, v, tt))


def encode_commands(seq: CommandSeq, v: VocabSpec, tt: TextTokenizer) -> TokenSeq:
    """Map an existing command sequence to token ids (params, then texts)."""
    sink = _TokenSink(v, tt)
    for cmd in seq.commands:
        sink.command(cmd.kind)
        for pt, value in cmd.params:
            sink.num(pt, value)
        for s in cmd.text_groups:
            sink.text(s)
    return TokenSeq(ids=sink.ids, vocab_version=v.version, text_tokenizer_id=tt.tokenizer_id)


def _fmt_value(v: float | None) -> str:
    if v is None:
        return "_"
    if float(v).is_integer():
        return str(int(v))
    return repr(float(v))


def dump_commands(seq: CommandSeq) -> str:
    """Human-readable one-command-per-line dump (diagnostic only)."""
    lines = []
    for cmd in seq.commands:
        if cmd.kind == "META":
            p = [x for _, x in cmd.params]
            v, nm = cmd.text_groups
            lines.append(
                f'animation v="{v or M.DEFAULT_VERSION}" fr={_fmt_value(p[0])} ip={_fmt_value(p[1])} '
                f'op={_fmt_value(p[2])} w={_fmt_value(p[3])} h={_fmt_value(p[4])} nm="{nm}" ddd={_fmt_value(p[5])}'
            )
            continue
        parts = [cmd.kind.lower()]
        parts.extend(_fmt_value(v) for _, v in cmd.params)
        parts.extend(json.dumps(s, ensure_ascii=False) for s in cmd.text_groups)
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


class _StatsSink:
    """Records every numeric parameter the encoder would emit, by type."""

    def __init__(self, stats, tt: TextTokenizer | None):
        self.stats = stats
        self.tt = tt

    def command(self, kind: str) -> None:
        pass

    def num(self, t: ParamType, value) -> None:
        if value is not PAD_VAL:
            self.stats.observe(t, float(value))

    def text(self, s: str) -> None:
        n = len(self.tt.encode(s)) if self.tt is not None else len(s.encode("utf-8"))
        self.stats.observe(PT.COUNT, float(n))


def collect_stats(a: M.Animation, stats, tt: TextTokenizer | None = None) -> None:
    """Feed one animation's parameter values into a CorpusStats collector,
    classified exactly as the encoder would classify them.  Text group
    lengths count toward the COUNT type (byte length when no tokenizer is
    given)."""
    _emit_animation(_StatsSink(stats, tt), a)


def token_stats(raw_json: str, t: TokenSeq, tt: TextTokenizer) -> EfficiencyReport:
    """Token-efficiency report: raw JSON vs structured text vs command tokens."""
    raw_tokens = len(tt.encode(raw_json))
    minified = json.dumps(json.loads(raw_json), ensure_ascii=False, separators=(",", ":"))
    raw_min = len(tt.encode(minified))
    seq = to_command_sequence(M.parse_lottie(raw_json))
    structured = len(tt.encode(dump_commands(seq)))
    n = len(t.ids)
    return EfficiencyReport(
        raw_tokens=raw_tokens,
        raw_tokens_minified=raw_min,
        structured_text_tokens=structured,
        command_tokens=n,
        compression=raw_tokens / n if n else 0.0,
        compression_minified=raw_min / n if n else 0.0,
    )


# =============================================================================
# Token sequence files
# =============================================================================


def _header_line(vocab_version: str, tokenizer_id: str) -> str:
    return f"#lottie-tok v{vocab_version} tt={tokenizer_id}"


def _parse_header(line: str) -> tuple[str, str]:
    if not line.startswith("#lottie-tok "):
        raise ValueError("missing #lottie-tok header")
    fields = line.split()
    version = ""
    tt_id = ""
    for f in fields[1:]:
        if f.startswith("v"):
            version = f[1:]
        elif f.startswith("tt="):
            tt_id = f[3:]
    return version, tt_id


def write_token_file(seqs: list[TokenSeq], path: str) -> None:
    """Text format: header line, then one space-separated sample per line."""
    if not seqs:
        raise ValueError("no sequences to write")
    with open(path, "w", encoding="utf-8") as f:
        f.write(_header_line(seqs[0].vocab_version, seqs[0].text_tokenizer_id) + "\n")
        for s in seqs:
            f.write(" ".join(str(i) for i in s.ids) + "\n")


def read_token_file(path: str) -> list[TokenSeq]:
    with open(path, "r", encoding="utf-8") as f:
        lines = f.read().splitlines()
    if not lines:
        raise ValueError("empty token file")
    version, tt_id = _parse_header(lines[0])
    out = []
    for line in lines[1:]:
        line = line.strip()
        if not line:
            continue
        out.append(TokenSeq(ids=[int(x) for x in line.split()], vocab_version=version, text_tokenizer_id=tt_id))
    return out


def write_token_file_binary(seqs: list[TokenSeq], path: str) -> None:
    """Binary format: u32 header length + UTF-8 header, then per sequence a
    u32 id count followed by that many little-endian u32 ids."""
    if not seqs:
        raise ValueError("no sequences to write")
    header = _header_line(seqs[0].vocab_version, seqs[0].text_tokenizer_id).encode("utf-8")
    with open(path, "wb") as f:
        f.write(struct.pack("<I", len(header)))
        f.write(header)
        for s in seqs:
            f.write(struct.pack("<I", len(s.ids)))
            f.write(struct.pack(f"<{len(s.ids)}I", *s.ids))


def read_token_file_binary(path: str) -> list[TokenSeq]:
    with open(path, "rb") as f:
        data = f.read()
    (hlen,) = struct.unpack_from("<I", data, 0)
    header = data[4:4 + hlen].decode("utf-8")
    version, tt_id = _parse_header(header)
    pos = 4 + hlen
    out = []
    while pos < len(data):
        (count,) = struct.unpack_from("<I", data, pos)
        pos += 4
        ids = list(struct.unpack_from(f"<{count}I", data, pos))
        pos += 4 * count
        out.append(TokenSeq(ids=ids, vocab_version=version, text_tokenizer_id=tt_id))
    return out
