import json
import random

import pytest

from lottietok import model as M
from lottietok import pipeline as pl
from lottietok.errors import DegenerateDuration
from lottietok.model import parse_lottie, serialize_lottie
from lottietok.walk import iter_all_layers, iter_all_props


def _anim(**kw):
    base = {"v": "5.12.1", "fr": 30, "ip": 0, "op": 60, "w": 512, "h": 512, "layers": []}
    base.update(kw)
    return json.dumps(base)


SHAPE_LAYER = {
    "ind": 1, "ty": 4, "nm": "art", "ip": 0, "op": 60, "st": 0,
    "ks": {"r": {"a": 0, "k": 0, "x": "time*360"}},
    "shapes": [
        {"ty": "rc", "p": {"a": 0, "k": [256, 256]}, "s": {"a": 0, "k": [120, 90]}, "r": {"a": 0, "k": 0}},
        {"ty": "fl", "c": {"a": 0, "k": [0.2, 0.4, 0.8]}, "o": {"a": 0, "k": 100}},
    ],
}


class TestClean:
    def test_audio_layer_removed(self):
        raw = _anim(layers=[SHAPE_LAYER, {"ind": 2, "ty": 6, "nm": "sound", "ip": 0, "op": 60, "st": 0}])
        a = parse_lottie(raw, admit_raw_layers=True)
        out, report = pl.clean(a)
        assert report.verdict == pl.KEPT
        assert report.removed_layers == [(2, "Audio")]
        assert [l.kind for l in out.layers] == [4]

    def test_only_image_layer_rejected(self):
        raw = _anim(layers=[{"ind": 1, "ty": 2, "refId": "img_0", "ip": 0, "op": 60, "st": 0}])
        out, report = pl.clean(parse_lottie(raw, admit_raw_layers=True))
        assert out is None
        assert report.verdict == pl.REJECTED
        assert "NonParameterizable" in report.reject_reason

    def test_expression_stripped_keyframes_intact(self):
        layer = {
            "ind": 1, "ty": 4, "ip": 0, "op": 60, "st": 0,
            "ks": {"r": {"a": 1, "x": "time*360",
                         "k": [{"t": 0, "s": [0]}, {"t": 60, "s": [360]}]}},
            "shapes": SHAPE_LAYER["shapes"],
        }
        out, report = pl.clean(parse_lottie(_anim(layers=[layer]), admit_raw_layers=True))
        assert report.stripped_expressions == 1
        kfs = out.layers[0].transform.rotation.keyframes
        assert [(k.time, k.value) for k in kfs] == [(0.0, [0.0]), (60.0, [360.0])]
        assert "x" not in out.layers[0].transform.rotation.extras

    def test_camera_and_data_layers_removed(self):
        raw = _anim(layers=[SHAPE_LAYER,
                            {"ind": 2, "ty": 13, "ip": 0, "op": 60, "st": 0},
                            {"ind": 3, "ty": 15, "ip": 0, "op": 60, "st": 0}])
        out, report = pl.clean(parse_lottie(raw, admit_raw_layers=True))
        assert report.verdict == pl.KEPT
        assert sorted(r for _, r in report.removed_layers) == ["Camera", "Data"]

    def test_precomp_to_removed_image_asset_rejected(self):
        raw = _anim(
            layers=[{"ind": 1, "ty": 0, "refId": "img_0", "w": 100, "h": 100, "ip": 0, "op": 60, "st": 0}],
            assets=[{"id": "img_0", "p": "data:image/png;base64,AAAA", "u": "", "w": 10, "h": 10}],
        )
        out, report = pl.clean(parse_lottie(raw, admit_raw_layers=True))
        assert out is None and report.verdict == pl.REJECTED

    def test_parent_to_removed_layer_rejected(self):
        raw = _anim(layers=[
            dict(SHAPE_LAYER, parent=2),
            {"ind": 2, "ty": 13, "ip": 0, "op": 60, "st": 0},
        ])
        out, report = pl.clean(parse_lottie(raw, admit_raw_layers=True))
        assert out is None and report.verdict == pl.REJECTED

    def test_3d_layer_rejected(self):
        raw = _anim(layers=[dict(SHAPE_LAYER, ddd=1)])
        out, report = pl.clean(parse_lottie(raw, admit_raw_layers=True))
        assert out is None and report.verdict == pl.REJECTED

    def test_clean_idempotent(self, corpus):
        for name, a in corpus[:30]:
            once, r1 = pl.clean(a)
            assert r1.verdict == pl.KEPT, name
            twice, r2 = pl.clean(once)
            assert serialize_lottie(twice) == serialize_lottie(once), name
            assert r2.removed_layers == [] and r2.stripped_expressions == 0

    def test_clean_preserves_surviving_geometry(self):
        raw = _anim(layers=[SHAPE_LAYER, {"ind": 2, "ty": 6, "ip": 0, "op": 60, "st": 0}])
        a = parse_lottie(raw, admit_raw_layers=True)
        out, _ = pl.clean(a)
        assert out.layers[0].payload == a.layers[0].payload  # shape tree untouched

    def test_clean_does_not_mutate_input(self):
        raw = _anim(layers=[SHAPE_LAYER, {"ind": 2, "ty": 6, "ip": 0, "op": 60, "st": 0}])
        a = parse_lottie(raw, admit_raw_layers=True)
        before = len(a.layers)
        pl.clean(a)
        assert len(a.layers) == before


class TestSpatial:
    def _norm_root(self, a):
        roots = [l for l in a.layers if isinstance(l, M.Layer) and l.match_name == pl.NORM_ROOT_MATCH_NAME]
        assert len(roots) == 1
        return roots[0]

    def test_square_downscale(self):
        # r = min(512/1024, 512/1024) = 0.5; offsets (512 - 0.5*1024)/2 = 0.
        a = parse_lottie(_anim(w=1024, h=1024, layers=[{"ind": 1, "ty": 3, "ip": 0, "op": 60, "st": 0}]))
        out = pl.normalize_spatial(a)
        root = self._norm_root(out)
        assert (out.width, out.height) == (512.0, 512.0)
        assert root.transform.scale.static == [50.0, 50.0]
        assert root.transform.position.joint.static == [0.0, 0.0]

    def test_widescreen_centering_offset(self):
        # r = 512/1920; vertical offset (512 - 1080*r)/2 = 112.
        a = parse_lottie(_anim(w=1920, h=1080, layers=[{"ind": 1, "ty": 3, "ip": 0, "op": 60, "st": 0}]))
        root = self._norm_root(pl.normalize_spatial(a))
        r = 512.0 / 1920.0
        assert root.transform.scale.static == [100.0 * r] * 2
        assert root.transform.position.joint.static == [0.0, 112.0]

    def test_identity_canvas_gets_unit_parent(self):
        a = parse_lottie(_anim(layers=[{"ind": 1, "ty": 3, "ip": 0, "op": 60, "st": 0}]))
        out = pl.normalize_spatial(a)
        root = self._norm_root(out)
        assert root.transform.scale.static == [100.0, 100.0]
        assert root.transform.position.joint.static == [0.0, 0.0]
        assert out.layers[0].parent == root.index

    def test_idempotent(self, corpus):
        for name, a in corpus[:20]:
            once = pl.normalize_spatial(a)
            twice = pl.normalize_spatial(once)
            assert serialize_lottie(twice) == serialize_lottie(once), name

    def test_aspect_ratio_preserved(self):
        a = parse_lottie(_anim(w=1920, h=1080, layers=[{"ind": 1, "ty": 3, "ip": 0, "op": 60, "st": 0}]))
        root = self._norm_root(pl.normalize_spatial(a))
        sx, sy = root.transform.scale.static
        ox, oy = root.transform.position.joint.static
        # Map a few content points through the injected transform; difference
        # ratios must match the source ratios (uniform scale).
        pts = [(0, 0), (1920, 0), (1920, 1080), (960, 540)]
        mapped = [(sx / 100 * x + ox, sy / 100 * y + oy) for x, y in pts]
        for (x1, y1), (x2, y2), (mx1, my1), (mx2, my2) in [pts[:2] + mapped[:2], pts[2:] + mapped[2:]]:
            if y2 != y1:
                assert abs((x2 - x1) / (y2 - y1) - (mx2 - mx1) / (my2 - my1)) < 1e-9
        # All mapped content stays inside the canvas.
        for mx, my in mapped:
            assert -1e-9 <= mx <= 512 + 1e-9 and -1e-9 <= my <= 512 + 1e-9

    def test_inner_coordinates_untouched(self, corpus):
        _, a = corpus[1]
        out = pl.normalize_spatial(a)
        assert out.layers[0].payload == a.layers[0].payload


class TestTemporal:
    def test_endpoint_maps_to_range_max(self):
        a = parse_lottie(_anim(op=105, layers=[
            {"ind": 1, "ty": 3, "ip": 0, "op": 105, "st": 0,
             "ks": {"r": {"a": 1, "k": [{"t": 0, "s": [0]}, {"t": 105, "s": [1]}]}}}]))
        out = pl.normalize_temporal(a)
        assert (out.in_point, out.out_point) == (0.0, 60.0)
        assert out.layers[0].transform.rotation.keyframes[-1].time == 60.0

    def test_formula_midpoint(self):
        # t' = 60 * (60 - 30) / (90 - 30) = 30.
        a = parse_lottie(_anim(ip=30, op=90, layers=[
            {"ind": 1, "ty": 3, "ip": 30, "op": 90, "st": 30,
             "ks": {"o": {"a": 1, "k": [{"t": 30, "s": [0]}, {"t": 60, "s": [50]}, {"t": 90, "s": [100]}]}}}]))
        out = pl.normalize_temporal(a)
        times = [k.time for k in out.layers[0].transform.opacity.keyframes]
        assert times == [0.0, 30.0, 60.0]
        assert out.layers[0].start_time == 0.0

    def test_identity_when_already_normalized(self):
        a = parse_lottie(_anim(layers=[{"ind": 1, "ty": 3, "ip": 0, "op": 60, "st": 0}]))
        out = pl.normalize_temporal(a)
        assert serialize_lottie(out) == serialize_lottie(a)

    def test_degenerate_duration(self):
        a = parse_lottie(_anim(ip=10, op=10))
        with pytest.raises(DegenerateDuration):
            pl.normalize_temporal(a)

    def test_frame_rate_preserved(self):
        a = parse_lottie(_anim(fr=24, op=120, layers=[{"ind": 1, "ty": 3, "ip": 0, "op": 120, "st": 0}]))
        assert pl.normalize_temporal(a).frame_rate == 24.0

    def test_ordering_and_relative_spacing_preserved(self):
        rng = random.Random(7)
        times = sorted(rng.uniform(5, 115) for _ in range(6))
        kfs = [{"t": t, "s": [i]} for i, t in enumerate(times)]
        a = parse_lottie(_anim(ip=5, op=115, layers=[
            {"ind": 1, "ty": 3, "ip": 5, "op": 115, "st": 5,
             "ks": {"o": {"a": 1, "k": kfs}}}]))
        out = pl.normalize_temporal(a)
        mapped = [k.time for k in out.layers[0].transform.opacity.keyframes]
        assert mapped == sorted(mapped)
        for i in range(len(times) - 2):
            src = (times[i + 1] - times[i]) / (times[i + 2] - times[i + 1])
            dst = (mapped[i + 1] - mapped[i]) / (mapped[i + 2] - mapped[i + 1])
            assert abs(src - dst) < 1e-9

    def test_time_remap_values_scaled(self):
        a = parse_lottie(_anim(op=120, layers=[
            {"ind": 1, "ty": 0, "refId": "c0", "w": 512, "h": 512, "ip": 0, "op": 120, "st": 0,
             "tm": {"a": 1, "k": [{"t": 0, "s": [0]}, {"t": 120, "s": [120]}]}}],
            assets=[{"id": "c0", "layers": [{"ind": 1, "ty": 3, "ip": 0, "op": 120, "st": 0}]}]))
        out = pl.normalize_temporal(a)
        tm = out.layers[0].payload.time_remap
        assert [(k.time, k.value) for k in tm.keyframes] == [(0.0, [0.0]), (60.0, [60.0])]
        # Asset layers ride the same map.
        assert out.assets[0].layers[0].out_point == 60.0

    def test_idempotent(self, corpus):
        for name, a in corpus[:20]:
            once = pl.normalize_temporal(a)
            twice = pl.normalize_temporal(once)
            assert serialize_lottie(twice) == serialize_lottie(once), name


class TestFullNormalize:
    def test_all_times_in_range_and_canvas_square(self, corpus):
        cfg = pl.NormalizeConfig()
        for name, a in corpus[:40]:
            out = pl.normalize(a, cfg)
            assert (out.width, out.height) == (512.0, 512.0), name
            lo, hi = out.in_point, out.out_point
            assert (lo, hi) == (0.0, 60.0)
            for _, layer in iter_all_layers(out):
                assert 0.0 - 1e-9 <= layer.in_point <= 60.0 + 1e-9
                assert 0.0 - 1e-9 <= layer.out_point <= 60.0 + 1e-9
            for _, prop in iter_all_props(out):
                if prop.keyframes:
                    for kf in prop.keyframes:
                        assert -1e-9 <= kf.time <= 60.0 + 1e-9, name

    def test_alternate_config(self):
        a = parse_lottie(_anim(w=256, h=256, op=32, layers=[
            {"ind": 1, "ty": 3, "ip": 0, "op": 32, "st": 0}]))
        out = pl.normalize(a, pl.NormalizeConfig(canvas=256, time_range_max=16.0))
        assert (out.width, out.out_point) == (256.0, 16.0)
