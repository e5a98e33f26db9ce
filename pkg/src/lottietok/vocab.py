"""Offset-based token vocabulary: disjoint integer regions per parameter type.

Each parameter type t owns a contiguous region of token ids plus one pad
token directly below it.  The offset o_t anchors the value zero so that
``token(x, t) = floor(x * s_t) + o_t`` applies verbatim to negative values;
the inverse is ``(token - o_t) / s_t``.  Pad tokens encode absent optional
values (the ``PAD_VAL`` sentinel, represented as ``None`` in Python).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from .errors import EmptyStats, TokenOutOfRange, UnknownParamType

PAD_VAL = None

VOCAB_VERSION = "1"

# Guard against float representation noise when flooring; far below any
# meaningful value gap (scales are small integers, values are bounded).
_FLOOR_GUARD = 1e-9


class ParamType(Enum):
    BINARY_FLAG = "BINARY_FLAG"
    SMALL_ENUM = "SMALL_ENUM"
    COUNT = "COUNT"
    TEMPORAL = "TEMPORAL"
    SPATIAL_COORD = "SPATIAL_COORD"
    SCALE_PERCENT = "SCALE_PERCENT"
    ROTATION_DEG = "ROTATION_DEG"
    SKEW_DEG = "SKEW_DEG"
    OPACITY = "OPACITY"
    COLOR_CHANNEL = "COLOR_CHANNEL"
    EASING_TANGENT = "EASING_TANGENT"
    EXPANSION = "EXPANSION"
    TRIM_PERCENT = "TRIM_PERCENT"
    FONT_SIZE = "FONT_SIZE"
    GENERIC = "GENERIC"


# Shipped default (min, max, scale) per type.  The ranges cover the failure
# values observed in generated-file audits while keeping the whole added
# vocabulary under 10k ids; the builder can replace them with corpus
# quantiles.
DEFAULT_RANGES: dict[ParamType, tuple[float, float, int]] = {
    ParamType.BINARY_FLAG: (0.0, 1.0, 1),
    ParamType.SMALL_ENUM: (0.0, 16.0, 1),
    ParamType.COUNT: (0.0, 512.0, 1),
    ParamType.TEMPORAL: (0.0, 60.0, 4),
    ParamType.SPATIAL_COORD: (-512.0, 1024.0, 1),
    ParamType.SCALE_PERCENT: (0.0, 400.0, 1),
    ParamType.ROTATION_DEG: (-360.0, 720.0, 1),
    ParamType.SKEW_DEG: (-180.0, 180.0, 1),
    ParamType.OPACITY: (0.0, 100.0, 1),
    ParamType.COLOR_CHANNEL: (0.0, 1.0, 255),
    ParamType.EASING_TANGENT: (0.0, 1.0, 100),
    ParamType.EXPANSION: (-256.0, 256.0, 1),
    ParamType.TRIM_PERCENT: (0.0, 100.0, 1),
    ParamType.FONT_SIZE: (0.0, 500.0, 1),
    ParamType.GENERIC: (-1000.0, 1000.0, 1),
}

# Command tokens, in id order.  LAYER commands carry the Lottie layer type
# code; shape-node begin commands mirror the shape tree node kinds and share
# one GROUP-END closer; END closes a layer.
COMMAND_NAMES = [
    "META",
    "LAYER-0", "LAYER-1", "LAYER-3", "LAYER-4", "LAYER-5",
    "TRANSFORM", "MASK", "EFFECT", "KEYFRAME", "TEXTGROUP",
    "FONT", "ASSET",
    "SH-GROUP", "SH-PATH", "SH-FILL", "SH-STROKE", "SH-GFILL", "SH-GSTROKE",
    "SH-RECT", "SH-ELLIPSE", "SH-STAR", "SH-TRANSFORM", "SH-TRIM",
    "SH-REPEAT", "SH-MERGE", "SH-ROUND", "SH-ZIGZAG",
    "GROUP-END", "END",
]

DEFAULT_TEXT_REGION_SIZE = 256


@dataclass(frozen=True)
class TypeRegion:
    """One parameter type's slice of the id space, in integer token steps."""

    offset: int          # id that the value 0 takes (may lie outside the region)
    scale: int           # tokens per unit
    lo_step: int         # floor(min * scale)
    hi_step: int         # value tokens span [offset+lo_step, offset+hi_step]
    pad: int             # offset + lo_step - 1

    @property
    def min_value(self) -> float:
        return self.lo_step / self.scale

    @property
    def max_value(self) -> float:
        return self.hi_step / self.scale

    @property
    def start(self) -> int:
        return self.offset + self.lo_step

    @property
    def end(self) -> int:
        return self.offset + self.hi_step


@dataclass(frozen=True)
class VocabSpec:
    version: str
    commands: dict[str, int]
    regions: dict[ParamType, TypeRegion]
    text_base: int
    text_size: int

    def command_id(self, name: str) -> int:
        return self.commands[name]

    @property
    def total_size(self) -> int:
        return self.text_base + self.text_size

    def command_name(self, token: int) -> str | None:
        for name, cid in self.commands.items():
            if cid == token:
                return name
        return None

    def is_command(self, token: int) -> bool:
        return token < len(self.commands) and token >= 0


class ClampCounter:
    """Out-of-band counter for values clamped during quantization."""

    def __init__(self):
        self.counts: dict[ParamType, int] = {}

    def bump(self, t: ParamType) -> None:
        self.counts[t] = self.counts.get(t, 0) + 1

    @property
    def total(self) -> int:
        return sum(self.counts.values())


def quantize(x: float | None, t: ParamType, v: VocabSpec, counter: ClampCounter | None = None) -> int:
    """token(x, t) = floor(x * s_t) + o_t after clamping x into the type range.

    The PAD_VAL sentinel (None) maps to the type's pad token.
    """
    try:
        region = v.regions[t]
    except KeyError:
        raise UnknownParamType(str(t)) from None
    if x is PAD_VAL:
        return region.pad
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"cannot quantize non-finite value for {t.value}")
    lo, hi = region.min_value, region.max_value
    if x < lo or x > hi:
        if counter is not None:
            counter.bump(t)
        x = min(max(x, lo), hi)
    step = math.floor(x * region.scale + _FLOOR_GUARD)
    step = min(max(step, region.lo_step), region.hi_step)
    return step + region.offset


def dequantize(tok: int, t: ParamType, v: VocabSpec) -> float | None:
    """Inverse transform: pad token -> PAD_VAL, else (tok - o_t) / s_t."""
    try:
        region = v.regions[t]
    except KeyError:
        raise UnknownParamType(str(t)) from None
    if tok == region.pad:
        return PAD_VAL
    if tok < region.start or tok > region.end:
        raise TokenOutOfRange(tok, t.value)
    return (tok - region.offset) / region.scale


# =============================================================================
# Data-driven builder
# =============================================================================


@dataclass
class CorpusStats:
    """Per-type empirical value collection for range fitting."""

    values: dict[ParamType, list[float]] = field(default_factory=dict)

    def observe(self, t: ParamType, x: float) -> None:
        self.values.setdefault(t, []).append(float(x))

    def count(self, t: ParamType) -> int:
        return len(self.values.get(t, ()))

    @property
    def total(self) -> int:
        return sum(len(v) for v in self.values.values())


@dataclass
class BuildConfig:
    q_lo: float = 0.005
    q_hi: float = 0.995
    scales: dict[ParamType, int] = field(default_factory=dict)
    use_default_ranges: bool = True
    text_size: int = DEFAULT_TEXT_REGION_SIZE
    version: str = VOCAB_VERSION


def _quantile(sorted_vals: list[float], q: float) -> float:
    if not sorted_vals:
        raise ValueError("empty sample")
    if len(sorted_vals) == 1:
        return sorted_vals[0]
    pos = q * (len(sorted_vals) - 1)
    lo = int(math.floor(pos))
    hi = min(lo + 1, len(sorted_vals) - 1)
    if sorted_vals[lo] == sorted_vals[hi]:
        return sorted_vals[lo]
    frac = pos - lo
    return sorted_vals[lo] * (1 - frac) + sorted_vals[hi] * frac


def build_vocab(stats: CorpusStats, cfg: BuildConfig | None = None) -> VocabSpec:
    """Fit per-type ranges to corpus quantiles (rounded outward to whole
    token steps) and pack all regions contiguously after the command tokens.

    Types without observations fall back to the shipped default range; with
    ``use_default_ranges=False`` they raise :class:`EmptyStats` instead.
    """
    cfg = cfg or BuildConfig()
    commands = {name: i for i, name in enumerate(COMMAND_NAMES)}
    cursor = len(commands)
    regions: dict[ParamType, TypeRegion] = {}
    # Structural regions drive decoding (counts gate how many tokens follow),
    # so fitting may widen but never shrink them below the shipped defaults.
    structural = {ParamType.BINARY_FLAG, ParamType.SMALL_ENUM, ParamType.COUNT}
    for t in ParamType:
        scale = int(cfg.scales.get(t, DEFAULT_RANGES[t][2]))
        samples = stats.values.get(t)
        if samples:
            ordered = sorted(samples)
            lo_val = _quantile(ordered, cfg.q_lo)
            hi_val = _quantile(ordered, cfg.q_hi)
            lo_step = math.floor(lo_val * scale)
            hi_step = math.ceil(hi_val * scale)
            if t in structural:
                lo, hi, _ = DEFAULT_RANGES[t]
                lo_step = min(lo_step, math.floor(lo * scale))
                hi_step = max(hi_step, math.ceil(hi * scale))
        elif cfg.use_default_ranges:
            lo, hi, _ = DEFAULT_RANGES[t]
            lo_step = math.floor(lo * scale)
            hi_step = math.ceil(hi * scale)
        else:
            raise EmptyStats(f"no observations for {t.value} and defaults disabled")
        pad = cursor
        start = cursor + 1
        offset = start - lo_step
        regions[t] = TypeRegion(offset=offset, scale=scale, lo_step=lo_step, hi_step=hi_step, pad=pad)
        cursor = start + (hi_step - lo_step) + 1
    return VocabSpec(
        version=cfg.version,
        commands=commands,
        regions=regions,
        text_base=cursor,
        text_size=cfg.text_size,
    )


_DEFAULT_VOCAB: VocabSpec | None = None


def default_vocab() -> VocabSpec:
    """The shipped vocabulary: builder output over the default ranges."""
    global _DEFAULT_VOCAB
    if _DEFAULT_VOCAB is None:
        _DEFAULT_VOCAB = build_vocab(CorpusStats())
    return _DEFAULT_VOCAB


def check_disjoint(v: VocabSpec) -> list[str]:
    """Exhaustive pairwise interval check; returns human-readable overlaps."""
    intervals: list[tuple[int, int, str]] = []
    for name, cid in v.commands.items():
        intervals.append((cid, cid, f"cmd:{name}"))
    for t, r in v.regions.items():
        intervals.append((r.pad, r.pad, f"pad:{t.value}"))
        intervals.append((r.start, r.end, f"region:{t.value}"))
    intervals.append((v.text_base, v.text_base + v.text_size - 1, "text"))
    overlaps = []
    for i in range(len(intervals)):
        a_lo, a_hi, a_name = intervals[i]
        for j in range(i + 1, len(intervals)):
            b_lo, b_hi, b_name = intervals[j]
            if a_lo <= b_hi and b_lo <= a_hi:
                overlaps.append(f"{a_name} [{a_lo},{a_hi}] overlaps {b_name} [{b_lo},{b_hi}]")
    return overlaps


# =============================================================================
# Persistence: line-oriented text format
# =============================================================================


def _fmt_real(x: float) -> str:
    return str(int(x)) if float(x).is_integer() else repr(float(x))


def dump_vocab(v: VocabSpec) -> str:
    lines = [f"version {v.version}", f"TEXT {v.text_base} {v.text_size}"]
    for name, cid in v.commands.items():
        lines.append(f"CMD {name} {cid}")
    for t, r in v.regions.items():
        lines.append(
            f"TYPE {t.value} {r.offset} {r.scale} {_fmt_real(r.min_value)} {_fmt_real(r.max_value)} {r.pad}"
        )
    return "\n".join(lines) + "\n"


def load_vocab(text: str) -> VocabSpec:
    version = None
    commands: dict[str, int] = {}
    regions: dict[ParamType, TypeRegion] = {}
    text_base = None
    text_size = DEFAULT_TEXT_REGION_SIZE
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "version":
            version = parts[1]
        elif parts[0] == "TEXT":
            text_base, text_size = int(parts[1]), int(parts[2])
        elif parts[0] == "CMD":
            commands[parts[1]] = int(parts[2])
        elif parts[0] == "TYPE":
            t = ParamType(parts[1])
            offset, scale = int(parts[2]), int(parts[3])
            min_v, max_v = float(parts[4]), float(parts[5])
            pad = int(parts[6])
            lo_step = round(min_v * scale)
            hi_step = round(max_v * scale)
            region = TypeRegion(offset=offset, scale=scale, lo_step=lo_step, hi_step=hi_step, pad=pad)
            if region.pad != pad:
                raise ValueError(f"line {lineno}: inconsistent pad token")
            regions[t] = region
        else:
            raise ValueError(f"line {lineno}: unknown record {parts[0]!r}")
    if version is None or text_base is None:
        raise ValueError("vocab file missing version or TEXT record")
    missing = [t.value for t in ParamType if t not in regions]
    if missing:
        raise ValueError(f"vocab file missing types: {missing}")
    spec = VocabSpec(version=version, commands=commands, regions=regions,
                     text_base=text_base, text_size=text_size)
    overlaps = check_disjoint(spec)
    if overlaps:
        raise ValueError("vocab regions overlap: " + "; ".join(overlaps[:3]))
    return spec


def save_vocab(v: VocabSpec, path: str) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(dump_vocab(v))


def read_vocab(path: str) -> VocabSpec:
    with open(path, "r", encoding="utf-8") as f:
        return load_vocab(f.read())
