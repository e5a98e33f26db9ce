"""Static renderability validator.

Rules are organized on a five-level scale by the stage a failure shows up
at: 1 schema, 2 structure, 3 rendering.  Levels 4 and 5 concern external
systems and are out of scope here.  ``lint`` never fails; it reports.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import model as M
from .walk import iter_layer_props

ERROR = "error"
WARNING = "warning"

# code -> (level, severity)
CODES = {
    "SchemaViolation": (1, ERROR),
    "EmptyLayers": (2, ERROR),
    "DanglingRef": (2, ERROR),
    "MissingStyle": (3, ERROR),
    "TemporalVisibility": (3, ERROR),
    "FontMissing": (3, ERROR),
    "OpacityCollapse": (3, WARNING),
    "ScaleCollapse": (3, WARNING),
    "OffCanvas": (3, WARNING),
}

# Collapse thresholds: legal Lottie values, but effectively invisible.
OPACITY_COLLAPSE_MAX = 2.0
SCALE_COLLAPSE_MAX = 2.0


@dataclass
class Diagnostic:
    level: int
    code: str
    path: str
    message: str
    severity: str

    def line(self) -> str:
        return f"L{self.level} {self.code} {self.path}: {self.message}"


def _diag(code: str, path: str, message: str) -> Diagnostic:
    level, severity = CODES[code]
    return Diagnostic(level=level, code=code, path=path, message=message, severity=severity)


GEOMETRY = (M.Path, M.Rect, M.Ellipse, M.Star)
STYLES = (M.Fill, M.Stroke, M.GradientFill, M.GradientStroke)


def _static_value(prop: M.AnimatedProperty | None):
    if prop is None or prop.static is None:
        return None
    return prop.static


def _check_schema_props(layer, path: str, out: list[Diagnostic]) -> None:
    for ppath, prop in iter_layer_props(layer, path):
        if prop.keyframes is not None:
            last = None
            for i, kf in enumerate(prop.keyframes):
                if last is not None and kf.time <= last:
                    out.append(_diag("SchemaViolation", ppath, f"keyframe {i} time {kf.time} not increasing"))
                    break
                last = kf.time
            for kf in prop.keyframes:
                for tx, ty in (kf.ease_in, kf.ease_out):
                    if not (0.0 <= tx <= 1.0 and 0.0 <= ty <= 1.0):
                        out.append(_diag("SchemaViolation", ppath, f"easing tangent ({tx},{ty}) outside [0,1]"))
                        break
        values = []
        if prop.static is not None and not prop.is_path:
            values = [prop.static]
        elif prop.keyframes is not None and not prop.is_path:
            values = [kf.value for kf in prop.keyframes]
        if ppath.endswith(".o") and ".ef[" not in ppath:
            for v in values:
                if v and (v[0] < 0 or v[0] > 100):
                    out.append(_diag("SchemaViolation", ppath, f"opacity {v[0]} outside [0,100]"))
                    break
        paths = []
        if prop.is_path:
            paths = [prop.static] if prop.static is not None else [kf.value for kf in prop.keyframes]
        for b in paths:
            if not (len(b.vertices) == len(b.in_tangents) == len(b.out_tangents)):
                out.append(_diag("SchemaViolation", ppath, "path v/i/o lists differ in length"))
                break
    if isinstance(layer.payload, M.ShapePayload):
        def walk(nodes, npath):
            for i, node in enumerate(nodes):
                here = f"{npath}[{i}]"
                if isinstance(node, M.Star):
                    pts = _static_value(node.points)
                    if pts and pts[0] < 3:
                        out.append(_diag("SchemaViolation", here, f"star point count {pts[0]} below 3"))
                if isinstance(node, M.Group):
                    walk(node.children, f"{here}.it")
        walk(layer.payload.shapes, f"{path}.shapes")


def _check_styles(nodes, path: str, inherited: bool, out: list[Diagnostic]) -> None:
    has_style = inherited or any(isinstance(n, STYLES) and not n.hidden for n in nodes)
    has_geometry = any(isinstance(n, GEOMETRY) for n in nodes)
    if has_geometry and not has_style:
        out.append(_diag("MissingStyle", path, "geometry without any sibling or inherited fill/stroke"))
    for i, node in enumerate(nodes):
        if isinstance(node, M.Group):
            _check_styles(node.children, f"{path}[{i}].it", has_style, out)


def _position_values(layer) -> list[list[float]]:
    pos = layer.transform.position
    vals: list[list[float]] = []
    if pos.separated:
        xs = [pos.x.static[0]] if pos.x.static is not None else [kf.value[0] for kf in pos.x.keyframes]
        ys = [pos.y.static[0]] if pos.y.static is not None else [kf.value[0] for kf in pos.y.keyframes]
        for x in xs:
            for y in ys:
                vals.append([x, y])
    else:
        joint = pos.joint
        if joint.static is not None:
            vals.append(joint.static[:2])
        else:
            vals.extend(kf.value[:2] for kf in joint.keyframes)
    return vals


def lint(a: M.Animation) -> list[Diagnostic]:
    """Deterministic, ordered diagnostics for one parsed animation."""
    out: list[Diagnostic] = []

    if a.out_point < a.in_point:
        out.append(_diag("SchemaViolation", "$.op", f"out_point {a.out_point} below in_point {a.in_point}"))
    if a.width <= 0 or a.height <= 0:
        out.append(_diag("SchemaViolation", "$.w", "non-positive canvas"))
    if a.frame_rate <= 0:
        out.append(_diag("SchemaViolation", "$.fr", "non-positive frame rate"))

    if not a.layers:
        out.append(_diag("EmptyLayers", "$.layers", "no layers generated"))

    asset_ids = {asset.asset_id for asset in a.assets if isinstance(asset, M.PrecompAsset)}
    containers: list[tuple[str, list]] = [("$.layers", a.layers)]
    for j, asset in enumerate(a.assets):
        if isinstance(asset, M.PrecompAsset):
            containers.append((f"$.assets[{j}].layers", asset.layers))

    canvas = max(a.width, a.height)
    for cpath, layers in containers:
        inds: dict[int, int] = {}
        for i, layer in enumerate(layers):
            ind = getattr(layer, "index", None)
            if ind is not None:
                if ind in inds:
                    out.append(_diag("SchemaViolation", f"{cpath}[{i}].ind", f"duplicate layer index {ind}"))
                inds[ind] = i
        root = cpath == "$.layers"
        for i, layer in enumerate(layers):
            lpath = f"{cpath}[{i}]"
            if isinstance(layer, M.RawLayer):
                continue
            _check_schema_props(layer, lpath, out)
            if layer.parent is not None and layer.parent not in inds:
                out.append(_diag("DanglingRef", f"{lpath}.parent", f"parent {layer.parent} not found"))
            if layer.matte_parent is not None and layer.matte_parent not in inds:
                out.append(_diag("DanglingRef", f"{lpath}.tp", f"matte parent {layer.matte_parent} not found"))
            if layer.matte_mode is not None and layer.matte_parent is None and i == 0:
                out.append(_diag("DanglingRef", f"{lpath}.tt", "matte consumer with no layer above"))
            if isinstance(layer.payload, M.PrecompPayload) and layer.payload.ref_id not in asset_ids:
                out.append(_diag("DanglingRef", f"{lpath}.refId", f"asset {layer.payload.ref_id!r} not found"))
            if isinstance(layer.payload, M.ShapePayload):
                _check_styles(layer.payload.shapes, f"{lpath}.shapes", False, out)
            if isinstance(layer.payload, M.TextPayload) and not a.fonts:
                out.append(_diag("FontMissing", f"{lpath}.t", "text layer without fonts definitions"))

            if not root:
                continue
            if (layer.in_point >= a.out_point or layer.out_point <= a.in_point
                    or (layer.out_point - layer.in_point) < 1.0):
                out.append(_diag(
                    "TemporalVisibility", f"{lpath}.ip",
                    f"layer active range [{layer.in_point},{layer.out_point}] invisible "
                    f"within animation [{a.in_point},{a.out_point}]",
                ))
            if not layer.hidden:
                op = _static_value(layer.transform.opacity)
                if op is not None and 0 <= op[0] <= OPACITY_COLLAPSE_MAX:
                    out.append(_diag("OpacityCollapse", f"{lpath}.ks.o", f"static opacity {op[0]} renders invisible"))
                sc = _static_value(layer.transform.scale)
                if sc is not None and all(abs(c) <= SCALE_COLLAPSE_MAX for c in sc[:2]):
                    out.append(_diag("ScaleCollapse", f"{lpath}.ks.s", f"static scale {sc[:2]} renders invisible"))
                pvals = _position_values(layer)
                if pvals and all(
                    (x < -canvas or x > 2 * canvas) and (y < -canvas or y > 2 * canvas) for x, y in pvals
                ):
                    out.append(_diag("OffCanvas", f"{lpath}.ks.p", f"position always outside [-{canvas:g},{2 * canvas:g}]"))
    return out


def has_errors(diags: list[Diagnostic]) -> bool:
    return any(d.severity == ERROR for d in diags)


def dominant_code(diags: list[Diagnostic]) -> str | None:
    """Most telling code for one file: errors before warnings, low level first,
    document order as the tiebreak."""
    if not diags:
        return None
    ranked = sorted(
        enumerate(diags),
        key=lambda e: (0 if e[1].severity == ERROR else 1, e[1].level, e[0]),
    )
    return ranked[0][1].code


def failure_histogram(per_file_diags: list[list[Diagnostic]]) -> dict[str, tuple[int, float]]:
    """code -> (count, percent) over failing files (those with any diagnostic)."""
    counts: dict[str, int] = {}
    failing = 0
    for diags in per_file_diags:
        code = dominant_code(diags)
        if code is None:
            continue
        failing += 1
        counts[code] = counts.get(code, 0) + 1
    return {
        code: (n, 100.0 * n / failing)
        for code, n in sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    }


def report_json(diags: list[Diagnostic]) -> list[dict]:
    return [
        {"level": d.level, "code": d.code, "path": d.path, "message": d.message, "severity": d.severity}
        for d in diags
    ]
