import copy
import json

import pytest

from lottietok import model as M
from lottietok.lint import CODES, Diagnostic, dominant_code, failure_histogram, has_errors, lint
from lottietok.model import parse_lottie


def _clean_base() -> M.Animation:
    """Lint-clean two-layer animation used as the mutation substrate."""
    fill = M.Fill(color=M.AnimatedProperty.of([0.9, 0.2, 0.1], dim=3),
                  opacity=M.AnimatedProperty.of(100.0))
    rect = M.Rect(position=M.AnimatedProperty.of([0.0, 0.0]),
                  size=M.AnimatedProperty.of([100.0, 80.0]),
                  roundness=M.AnimatedProperty.of(0.0))
    group = M.Group(name="g", children=[rect, fill, M.GroupTransform()])
    shape = M.Layer(kind=4, index=1, name="art", in_point=0.0, out_point=60.0)
    shape.transform.position = M.Vec2Prop.of(256.0, 256.0)
    shape.payload = M.ShapePayload(shapes=[group])
    null = M.Layer(kind=3, index=2, name="rig", in_point=0.0, out_point=60.0)
    return M.Animation(out_point=60.0, frame_rate=30.0, layers=[shape, null])


def _codes(a: M.Animation) -> list[str]:
    return [d.code for d in lint(a)]


def test_clean_base_has_no_diagnostics():
    assert lint(_clean_base()) == []


def test_empty_layers_fixture(empty_layers_anim):
    diags = lint(empty_layers_anim)
    assert [d.code for d in diags] == ["EmptyLayers"]
    assert diags[0].level == 2 and diags[0].severity == "error"


def test_missing_style_fixture():
    raw = json.dumps({"v": "5", "fr": 30, "ip": 0, "op": 60, "w": 512, "h": 512, "layers": [
        {"ind": 1, "ty": 4, "ip": 0, "op": 60, "st": 0, "shapes": [
            {"ty": "sh", "ks": {"a": 0, "k": {"c": True, "v": [[0, 0], [10, 0], [10, 10]],
                                              "i": [[0, 0]] * 3, "o": [[0, 0]] * 3}}}]}]})
    assert _codes(parse_lottie(raw)) == ["MissingStyle"]


def test_temporal_visibility_fixture():
    # Layer ip 100 against a global op of 60.
    a = _clean_base()
    a.layers[0].in_point = 100.0
    a.layers[0].out_point = 120.0
    assert _codes(a) == ["TemporalVisibility"]


def _mutants() -> dict[str, M.Animation]:
    out: dict[str, M.Animation] = {}

    m = _clean_base()
    m.layers[0].transform.opacity = M.AnimatedProperty.of(150.0)  # outside 0-100
    out["SchemaViolation"] = m

    m = _clean_base()
    m.layers = []
    out["EmptyLayers"] = m

    m = _clean_base()
    group = m.layers[0].payload.shapes[0]
    group.children = [c for c in group.children if not isinstance(c, M.Fill)]
    out["MissingStyle"] = m

    m = _clean_base()
    m.layers[0].in_point, m.layers[0].out_point = 100.0, 120.0
    out["TemporalVisibility"] = m

    m = _clean_base()
    m.layers[0].transform.opacity = M.AnimatedProperty.of(1.0)
    out["OpacityCollapse"] = m

    m = _clean_base()
    m.layers[0].transform.scale = M.AnimatedProperty.of([1.0, 1.0])
    out["ScaleCollapse"] = m

    m = _clean_base()
    m.layers[0].transform.position = M.Vec2Prop.of(5000.0, 5000.0)
    out["OffCanvas"] = m

    m = _clean_base()
    m.layers[0].parent = 99
    out["DanglingRef"] = m

    m = _clean_base()
    doc = M.TextDocument(font="Missing-Font", size=36.0, text="hi")
    text_layer = M.Layer(kind=5, index=3, in_point=0.0, out_point=60.0)
    text_layer.payload = M.TextPayload(documents=[M.TextDocKeyframe(time=0.0, document=doc)])
    m.layers.append(text_layer)
    m.fonts = []
    out["FontMissing"] = m

    return out


@pytest.mark.parametrize("code", sorted(CODES))
def test_mutation_triggers_exactly_its_code(code):
    mutant = _mutants()[code]
    codes = set(_codes(mutant))
    assert codes == {code}, f"{code}: got {codes}"


def test_all_nine_codes_covered():
    assert set(_mutants()) == set(CODES)
    assert len(CODES) == 9


def test_lint_is_pure_and_order_stable():
    a = _mutants()["MissingStyle"]
    first = lint(a)
    second = lint(a)
    assert [(d.code, d.path) for d in first] == [(d.code, d.path) for d in second]


def test_clean_corpus_zero_errors(corpus):
    for name, a in corpus:
        diags = lint(a)
        assert not has_errors(diags), (name, [d.line() for d in diags])


def test_warning_vs_error_split():
    severities = {code: CODES[code][1] for code in CODES}
    assert severities["OpacityCollapse"] == "warning"
    assert severities["ScaleCollapse"] == "warning"
    assert severities["OffCanvas"] == "warning"
    assert severities["EmptyLayers"] == "error"


def test_offcanvas_checks_keyframe_values_only():
    # A fly-in that is visible at some keyframe must not warn.
    a = _clean_base()
    a.layers[0].transform.position = M.Vec2Prop(joint=M.AnimatedProperty(dim=2, keyframes=[
        M.Keyframe(time=0.0, value=[5000.0, 5000.0]),
        M.Keyframe(time=60.0, value=[256.0, 256.0])]))
    assert _codes(a) == []
    # All keyframes off canvas does warn.
    a.layers[0].transform.position.joint.keyframes[1].value = [4000.0, 4000.0]
    assert _codes(a) == ["OffCanvas"]


def test_dangling_refid_and_matte():
    a = _clean_base()
    pre = M.Layer(kind=0, index=3, in_point=0.0, out_point=60.0)
    pre.payload = M.PrecompPayload(ref_id="ghost", width=512.0, height=512.0)
    a.layers.append(pre)
    assert _codes(a) == ["DanglingRef"]

    b = _clean_base()
    b.layers[0].matte_mode = 1  # first layer: nothing above to matte from
    codes = _codes(b)
    assert codes == ["DanglingRef"]


def test_histogram_fifty_fifty():
    mutants = _mutants()
    per_file = [lint(mutants["EmptyLayers"]), lint(copy.deepcopy(mutants["EmptyLayers"])),
                lint(mutants["MissingStyle"]), lint(copy.deepcopy(mutants["MissingStyle"]))]
    hist = failure_histogram(per_file)
    assert hist["EmptyLayers"] == (2, 50.0)
    assert hist["MissingStyle"] == (2, 50.0)


def test_histogram_all_clean():
    assert failure_histogram([[], [], []]) == {}


def test_histogram_mutation_corpus_counts():
    per_file = [lint(m) for m in _mutants().values()]
    hist = failure_histogram(per_file)
    assert set(hist) == set(CODES)
    for code, (count, pct) in hist.items():
        assert count == 1
        assert abs(pct - 100.0 / 9.0) < 1e-9
    assert abs(sum(p for _, p in hist.values()) - 100.0) < 1e-9


def test_diagnostic_line_format(empty_layers_anim):
    # Line-oriented output shape: LEVEL CODE path: message.
    (d,) = lint(empty_layers_anim)
    assert d.line() == "L2 EmptyLayers $.layers: no layers generated"


def test_dominant_code_prefers_errors():
    warn = Diagnostic(level=3, code="OffCanvas", path="$", message="", severity="warning")
    err = Diagnostic(level=3, code="MissingStyle", path="$", message="", severity="error")
    assert dominant_code([warn, err]) == "MissingStyle"
    assert dominant_code([]) is None
