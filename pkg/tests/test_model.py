import json
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lottietok import model as M
from lottietok.errors import MalformedJson, SchemaViolation, UnsupportedLayerKind
from lottietok.model import canonical_equal, parse_lottie, serialize_lottie


def test_parse_empty_layers_fixture(empty_layers_anim):
    a = empty_layers_anim
    assert a.version == "5.12.1"
    assert a.frame_rate == 25.0
    assert a.in_point == 0.0
    assert a.out_point == 105.0
    assert (a.width, a.height) == (512.0, 512.0)
    assert a.layers == []
    assert a.assets == []
    assert a.markers == []


def test_serialize_matches_fixture_modulo_formatting(empty_layers_anim, empty_layers_json):
    # Same object tree as the source listing, key order and float formatting aside.
    ours = json.loads(serialize_lottie(empty_layers_anim))
    theirs = json.loads(empty_layers_json)
    assert ours == theirs


def test_two_layer_fixture_against_raw_json_walk(two_layer_anim, two_layer_json):
    # Independent oracle: walk the raw JSON tree directly.
    raw = json.loads(two_layer_json)
    raw_layers = [(l["ty"], l["ind"], l.get("parent")) for l in raw["layers"]]
    ours = [(l.kind, l.index, l.parent) for l in two_layer_anim.layers]
    assert ours == raw_layers
    assert [l.kind for l in two_layer_anim.layers] == [4, 3]
    # Parent link resolves to an existing index.
    inds = {l.index for l in two_layer_anim.layers}
    assert two_layer_anim.layers[0].parent in inds
    kfs = two_layer_anim.layers[0].transform.rotation.keyframes
    assert [(k.time, k.value) for k in kfs] == [(0.0, [0.0]), (60.0, [360.0])]


def test_roundtrip_identity_on_fixture(two_layer_json):
    a = parse_lottie(two_layer_json)
    assert parse_lottie(serialize_lottie(a)) == a


def test_roundtrip_identity_on_corpus(corpus):
    for name, a in corpus:
        s = serialize_lottie(a)
        b = parse_lottie(s)
        assert b == a, name
        # Idempotent canonical form: serialize . parse . serialize == serialize.
        assert serialize_lottie(b) == s, name


def test_serialize_deterministic(two_layer_anim):
    assert serialize_lottie(two_layer_anim) == serialize_lottie(two_layer_anim)


LEGACY_FORMS = [
    # keyframes with e-values and a bare terminal keyframe
    """
    {"v":"5.5.0","fr":30,"ip":0,"op":60,"w":512,"h":512,"layers":[
      {"ind":1,"ty":3,"ip":0,"op":60,"st":0,
       "ks":{"r":{"a":1,"k":[{"t":0,"s":[0],"e":[180],"i":{"x":0.5,"y":0.5},"o":{"x":0.5,"y":0.5}},
                             {"t":30,"s":[180],"e":[360]},{"t":60}]}}}]}
    """,
    # 4-channel colors, #RGB solid, bare number property
    """
    {"v":"5.5.0","fr":30,"ip":0,"op":60,"w":512,"h":512,"layers":[
      {"ind":1,"ty":1,"sw":100,"sh":100,"sc":"#f00","ip":0,"op":60,"st":0},
      {"ind":2,"ty":4,"ip":0,"op":60,"st":0,"shapes":[
        {"ty":"rc","p":{"a":0,"k":[0,0]},"s":{"a":0,"k":[10,10]},"r":{"a":0,"k":0}},
        {"ty":"fl","c":{"a":0,"k":[0.5,0.25,0.125,1]},"o":100}]}]}
    """,
]


@pytest.mark.parametrize("raw", LEGACY_FORMS)
def test_legacy_forms_canonicalize_idempotently(raw):
    a = parse_lottie(raw)
    s = serialize_lottie(a)
    assert parse_lottie(s) == a
    assert serialize_lottie(parse_lottie(s)) == s


def test_legacy_keyframe_value_carryforward():
    raw = LEGACY_FORMS[0]
    a = parse_lottie(raw)
    kfs = a.layers[0].transform.rotation.keyframes
    # The bare {"t":60} keyframe inherits the previous end value 360.
    assert [(k.time, k.value) for k in kfs] == [(0.0, [0.0]), (30.0, [180.0]), (60.0, [360.0])]


def test_solid_hex_normalized():
    a = parse_lottie(LEGACY_FORMS[1])
    assert a.layers[0].payload.color == "#ff0000"


def test_unknown_keys_preserved_verbatim():
    raw = json.dumps({
        "v": "5.12.1", "fr": 30, "ip": 0, "op": 60, "w": 512, "h": 512,
        "myCustomKey": {"nested": [1, 2, 3]},
        "layers": [{"ind": 1, "ty": 3, "ip": 0, "op": 60, "st": 0, "vendorTag": "x"}],
    })
    a = parse_lottie(raw)
    assert a.extras == {"myCustomKey": {"nested": [1, 2, 3]}}
    assert a.layers[0].extras == {"vendorTag": "x"}
    out = json.loads(serialize_lottie(a))
    assert out["myCustomKey"] == {"nested": [1, 2, 3]}
    assert out["layers"][0]["vendorTag"] == "x"


def test_defaults_omitted_on_serialize():
    raw = json.dumps({
        "v": "5.12.1", "fr": 30, "ip": 0, "op": 60, "w": 512, "h": 512,
        "layers": [{"ind": 1, "ty": 3, "sr": 1, "st": 0, "bm": 0, "ao": 0, "ip": 0, "op": 60}],
    })
    out = json.loads(serialize_lottie(parse_lottie(raw)))
    layer = out["layers"][0]
    for key in ("sr", "st", "bm", "ao", "hd", "ddd"):
        assert key not in layer


def test_malformed_json():
    with pytest.raises(MalformedJson):
        parse_lottie("{not json")


def test_unsupported_layer_kind_strict_and_lenient():
    raw = json.dumps({"v": "5", "fr": 30, "ip": 0, "op": 60, "w": 10, "h": 10,
                      "layers": [{"ind": 1, "ty": 2, "ip": 0, "op": 60, "st": 0}]})
    with pytest.raises(UnsupportedLayerKind) as exc:
        parse_lottie(raw)
    assert exc.value.kind == 2
    lenient = parse_lottie(raw, admit_raw_layers=True)
    assert isinstance(lenient.layers[0], M.RawLayer)


@pytest.mark.parametrize("mutation,path_hint", [
    ({"op": -10}, "op"),                     # out_point below in_point
    ({"w": 0}, "w"),                         # non-positive canvas
    ({"fr": 0}, "fr"),                       # non-positive frame rate
])
def test_animation_invariants(mutation, path_hint):
    base = {"v": "5", "fr": 30, "ip": 0, "op": 60, "w": 512, "h": 512, "layers": []}
    base.update(mutation)
    with pytest.raises(SchemaViolation):
        parse_lottie(json.dumps(base))


def test_keyframe_monotonicity_enforced():
    raw = json.dumps({"v": "5", "fr": 30, "ip": 0, "op": 60, "w": 512, "h": 512, "layers": [
        {"ind": 1, "ty": 3, "ip": 0, "op": 60, "st": 0,
         "ks": {"r": {"a": 1, "k": [{"t": 10, "s": [0]}, {"t": 10, "s": [1]}]}}}]})
    with pytest.raises(SchemaViolation):
        parse_lottie(raw)


def test_easing_tangent_range_enforced():
    raw = json.dumps({"v": "5", "fr": 30, "ip": 0, "op": 60, "w": 512, "h": 512, "layers": [
        {"ind": 1, "ty": 3, "ip": 0, "op": 60, "st": 0,
         "ks": {"r": {"a": 1, "k": [{"t": 0, "s": [0], "o": {"x": 1.5, "y": 0}}, {"t": 10, "s": [1]}]}}}]})
    with pytest.raises(SchemaViolation):
        parse_lottie(raw)


def test_path_list_lengths_enforced():
    raw = json.dumps({"v": "5", "fr": 30, "ip": 0, "op": 60, "w": 512, "h": 512, "layers": [
        {"ind": 1, "ty": 4, "ip": 0, "op": 60, "st": 0, "shapes": [
            {"ty": "sh", "ks": {"a": 0, "k": {"c": True, "v": [[0, 0], [1, 1]], "i": [[0, 0]], "o": [[0, 0], [0, 0]]}}}]}]})
    with pytest.raises(SchemaViolation):
        parse_lottie(raw)


def test_duplicate_index_rejected_but_dangling_parent_allowed():
    dup = json.dumps({"v": "5", "fr": 30, "ip": 0, "op": 60, "w": 512, "h": 512, "layers": [
        {"ind": 1, "ty": 3, "ip": 0, "op": 60, "st": 0},
        {"ind": 1, "ty": 3, "ip": 0, "op": 60, "st": 0}]})
    with pytest.raises(SchemaViolation):
        parse_lottie(dup)
    dangling = json.dumps({"v": "5", "fr": 30, "ip": 0, "op": 60, "w": 512, "h": 512, "layers": [
        {"ind": 1, "ty": 3, "parent": 99, "ip": 0, "op": 60, "st": 0}]})
    a = parse_lottie(dangling)  # reference integrity is lint's job
    assert a.layers[0].parent == 99


def test_parent_cycle_rejected():
    raw = json.dumps({"v": "5", "fr": 30, "ip": 0, "op": 60, "w": 512, "h": 512, "layers": [
        {"ind": 1, "ty": 3, "parent": 2, "ip": 0, "op": 60, "st": 0},
        {"ind": 2, "ty": 3, "parent": 1, "ip": 0, "op": 60, "st": 0}]})
    with pytest.raises(SchemaViolation):
        parse_lottie(raw)


def test_canonical_equal_trivials(two_layer_anim):
    import copy
    a = two_layer_anim
    assert canonical_equal(a, a, 0.0)
    b = copy.deepcopy(a)
    b.layers[0].transform.rotation.keyframes[1].value = [360.4]
    assert canonical_equal(a, b, 1.0)
    assert not canonical_equal(a, b, 0.1)
    c = copy.deepcopy(a)
    c.layers.append(M.Layer(kind=3, index=7, in_point=0.0, out_point=60.0))
    assert not canonical_equal(a, c, 10.0)


def test_canonical_equal_static_vs_constant_track():
    a = M.Animation(layers=[M.Layer(kind=3, index=1, in_point=0, out_point=60)])
    import copy
    b = copy.deepcopy(a)
    b.layers[0].transform.rotation = M.AnimatedProperty(dim=1, keyframes=[
        M.Keyframe(time=0.0, value=[0.0]), M.Keyframe(time=60.0, value=[0.0])])
    assert canonical_equal(a, b, 0.01)
    b.layers[0].transform.rotation.keyframes[1].value = [50.0]
    assert not canonical_equal(a, b, 0.01)


@given(st.floats(allow_nan=False, allow_infinity=False, width=64))
def test_float_shortest_roundtrip(x):
    # Canonical number output reparses to the identical binary64 value.
    out = M._num_out(x)
    back = float(json.loads(json.dumps(out)))
    assert back == x or (math.isnan(back) and math.isnan(x))


def test_separated_dimensions_preserved():
    raw = json.dumps({"v": "5", "fr": 30, "ip": 0, "op": 60, "w": 512, "h": 512, "layers": [
        {"ind": 1, "ty": 3, "ip": 0, "op": 60, "st": 0,
         "ks": {"p": {"s": True, "x": {"a": 0, "k": 10}, "y": {"a": 1, "k": [
             {"t": 0, "s": [0]}, {"t": 60, "s": [100]}]}}}}]})
    a = parse_lottie(raw)
    pos = a.layers[0].transform.position
    assert pos.separated
    assert pos.x.static == [10.0]
    assert pos.y.animated
    out = json.loads(serialize_lottie(a))
    assert out["layers"][0]["ks"]["p"]["s"] is True
