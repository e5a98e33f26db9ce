import pytest

from lottietok import model as M
from lottietok import motionlib as ml
from lottietok import pipeline as pl
from lottietok.errors import AlreadyAnimated, KTooLarge
from lottietok.lint import has_errors, lint
from lottietok.model import canonical_equal, parse_lottie, serialize_lottie


def _static_icon() -> M.Animation:
    fill = M.Fill(color=M.AnimatedProperty.of([0.1, 0.3, 0.9], dim=3),
                  opacity=M.AnimatedProperty.of(100.0))
    ellipse = M.Ellipse(position=M.AnimatedProperty.of([0.0, 0.0]),
                        size=M.AnimatedProperty.of([120.0, 120.0]))
    layer = M.Layer(kind=4, index=1, name="icon", in_point=0.0, out_point=60.0)
    layer.transform.position = M.Vec2Prop.of(256.0, 256.0)
    layer.payload = M.ShapePayload(shapes=[M.Group(name="g", children=[ellipse, fill, M.GroupTransform()])])
    return M.Animation(out_point=60.0, frame_rate=30.0, layers=[layer])


def _track(prop_points, dim=1):
    return M.AnimatedProperty(dim=dim, keyframes=[
        M.Keyframe(time=t, value=v if isinstance(v, list) else [v]) for t, v in prop_points])


class TestEvalTrack:
    def test_linear_ease_is_identity(self):
        # Default tangents (0,0)/(1,1) sit on the diagonal: y(x) = x.
        for p in (0.0, 0.1, 0.25, 0.5, 0.75, 1.0):
            assert abs(ml.bezier_eased(p, (0.0, 0.0), (1.0, 1.0)) - p) < 1e-9

    def test_symmetric_ease_midpoint(self):
        # Symmetric control points map the midpoint to itself.
        assert abs(ml.bezier_eased(0.5, (0.4, 0.0), (0.6, 1.0)) - 0.5) < 1e-9

    def test_hold_keyframe(self):
        prop = M.AnimatedProperty(dim=1, keyframes=[
            M.Keyframe(time=0.0, value=[1.0], hold=1),
            M.Keyframe(time=60.0, value=[9.0])])
        assert ml.eval_track(prop, 30.0) == 1.0
        assert ml.eval_track(prop, 60.0) == 9.0

    def test_linear_interpolation_by_hand(self):
        prop = _track([(0.0, 0.0), (60.0, 360.0)])
        assert abs(ml.eval_track(prop, 30.0) - 180.0) < 1e-9
        assert ml.eval_track(prop, -5.0) == 0.0
        assert ml.eval_track(prop, 99.0) == 360.0


class TestSignature:
    def test_rotation_full_turn(self):
        a = _static_icon()
        a.layers[0].transform.rotation = _track([(0.0, 0.0), (60.0, 360.0)])
        sig = ml.extract_signature(a)
        ch = sig.channels["rotation"]
        assert abs(ch.delta - 360.0) < 1e-9
        assert ch.direction == 1
        assert ch.monotonicity == "increasing"
        assert ch.keyframe_count == 2
        # Linear track: samples interpolate by hand as 360 * j / 15.
        for j, v in enumerate(ch.samples):
            assert abs(v - 360.0 * j / 15.0) < 1e-6

    def test_static_file_has_no_channels(self):
        sig = ml.extract_signature(_static_icon())
        assert sig.channels == {}

    def test_fade_in_plus_upward_classification(self):
        a = _static_icon()
        a.layers[0].transform.opacity = _track([(0.0, 0.0), (60.0, 100.0)])
        a.layers[0].transform.position = M.Vec2Prop(
            x=M.AnimatedProperty.of(256.0),
            y=_track([(0.0, 400.0), (60.0, 100.0)]))
        sig = ml.extract_signature(a)
        assert sig.channels["opacity"].direction == 1
        assert sig.channels["position_y"].direction == -1
        label = ml.signature_label(sig)
        assert "fade-in" in label and "upward motion" in label
        assert ml.classify_signature(sig) == ml.MotionKind.COMBINED2


class TestCluster:
    def test_identical_signatures_k1(self):
        a = _static_icon()
        a.layers[0].transform.rotation = _track([(0.0, 0.0), (60.0, 360.0)])
        sigs = [ml.extract_signature(a) for _ in range(5)]
        templates = ml.cluster_signatures(sigs, 1)
        assert len(templates) == 1
        assert templates[0].size == 5
        assert templates[0].channels["rotation"] == sigs[0].channels["rotation"].pattern

    def test_two_families_purity(self):
        base = _static_icon()
        rot_sigs, fade_sigs = [], []
        for seed in range(6):
            rot = ml.synth_basic_motion(base, ml.MotionKind.ROTATE, seed=seed, direction="cw")
            rot_sigs.append(ml.extract_signature(rot))
            fade = ml.synth_basic_motion(base, ml.MotionKind.FADE, seed=seed, direction="in")
            fade_sigs.append(ml.extract_signature(fade))
        sigs = rot_sigs + fade_sigs
        templates = ml.cluster_signatures(sigs, 2, seed=11)
        assert sorted(t.size for t in templates) == [6, 6]
        labels = sorted(t.label for t in templates)
        assert labels == ["fade-in", "rotate-cw"]
        # Purity: members of each cluster share their family.
        assignments = []
        for s in sigs:
            dists = [min(ml.signature_distance(s, fam) for fam in
                         (rot_sigs if t.label == "rotate-cw" else fade_sigs)) for t in templates]
            assignments.append(dists.index(min(dists)))
        assert len(set(assignments[:6])) == 1 and len(set(assignments[6:])) == 1

    def test_k_equals_n(self):
        base = _static_icon()
        kinds = [ml.MotionKind.ROTATE, ml.MotionKind.FADE, ml.MotionKind.MOVE_H]
        sigs = [ml.extract_signature(ml.synth_basic_motion(base, k, seed=3, direction=d))
                for k, d in zip(kinds, ("cw", "in", "left"))]
        templates = ml.cluster_signatures(sigs, len(sigs), seed=0)
        assert len(templates) == len(sigs)
        assert all(t.size == 1 for t in templates)

    def test_k_too_large(self):
        a = _static_icon()
        a.layers[0].transform.rotation = _track([(0.0, 0.0), (60.0, 360.0)])
        sigs = [ml.extract_signature(a) for _ in range(4)]
        with pytest.raises(KTooLarge):
            ml.cluster_signatures(sigs, 2)


FADE_IN_TMPL = ml.MotionTemplate(label="fade-in", channels={"opacity": [(0.0, -1.0), (1.0, 0.0)]})


class TestInject:
    def test_fade_in_keyframes(self):
        out = ml.inject_motion(_static_icon(), FADE_IN_TMPL, duration=60.0, magnitude=1.0)
        kfs = out.layers[0].transform.opacity.keyframes
        assert [(k.time, k.value) for k in kfs] == [(0.0, [0.0]), (60.0, [100.0])]

    def test_injected_classifies_to_template_cluster(self):
        out = ml.inject_motion(_static_icon(), FADE_IN_TMPL, duration=60.0, magnitude=1.0)
        sig = ml.extract_signature(out)
        assert ml.classify_signature(sig) == ml.MotionKind.FADE
        assert ml.signature_label(sig) == "fade-in"

    def test_zero_magnitude_canonically_static(self):
        static = _static_icon()
        out = ml.inject_motion(static, FADE_IN_TMPL, duration=60.0, magnitude=0.0)
        assert out.layers[0].transform.opacity.animated  # keyframes present
        assert canonical_equal(out, static, 0.01)        # but zero delta

    def test_already_animated(self):
        a = _static_icon()
        a.layers[0].transform.rotation = _track([(0.0, 0.0), (60.0, 90.0)])
        with pytest.raises(AlreadyAnimated):
            ml.inject_motion(a, FADE_IN_TMPL)
        with pytest.raises(AlreadyAnimated):
            ml.synth_basic_motion(a, ml.MotionKind.FADE)

    def test_geometry_bytes_identical(self):
        static = _static_icon()
        before = serialize_lottie(static)
        out = ml.inject_motion(static, FADE_IN_TMPL, duration=60.0)
        assert serialize_lottie(static) == before  # input untouched
        assert out.layers[0].payload == static.layers[0].payload

    def test_targets_normalization_parent_when_present(self):
        a = pl.normalize_spatial(_static_icon())
        out = ml.inject_motion(a, FADE_IN_TMPL, duration=60.0, magnitude=1.0)
        root = [l for l in out.layers if l.match_name == pl.NORM_ROOT_MATCH_NAME][0]
        icon = [l for l in out.layers if l.name == "icon"][0]
        assert root.transform.opacity.animated
        assert not icon.transform.opacity.animated

    def test_injected_lint_clean(self):
        for tmpl in (FADE_IN_TMPL,
                     ml.MotionTemplate(label="up", channels={"position_y": [(0.0, 0.3), (1.0, 0.0)]}),
                     ml.MotionTemplate(label="zoom", channels={"scale": [(0.0, -0.5), (1.0, 0.0)]})):
            out = ml.inject_motion(_static_icon(), tmpl, duration=60.0, magnitude=1.0)
            assert not has_errors(lint(out)), tmpl.label


class TestSynth:
    def test_rotate_clockwise_full_turn(self):
        out = ml.synth_basic_motion(_static_icon(), ml.MotionKind.ROTATE,
                                    seed=1, direction="cw", magnitude=360.0)
        kfs = out.layers[0].transform.rotation.keyframes
        assert [(k.time, k.value) for k in kfs] == [(0.0, [0.0]), (60.0, [360.0])]

    def test_fade_out(self):
        out = ml.synth_basic_motion(_static_icon(), ml.MotionKind.FADE, seed=1, direction="out")
        kfs = out.layers[0].transform.opacity.keyframes
        assert [(k.time, k.value) for k in kfs] == [(0.0, [100.0]), (60.0, [0.0])]

    def test_seed_determinism(self):
        a = _static_icon()
        one = serialize_lottie(ml.synth_basic_motion(a, ml.MotionKind.COMBINED3, seed=42))
        two = serialize_lottie(ml.synth_basic_motion(a, ml.MotionKind.COMBINED3, seed=42))
        assert one == two
        other = serialize_lottie(ml.synth_basic_motion(a, ml.MotionKind.COMBINED3, seed=43))
        assert other != one

    @pytest.mark.parametrize("kind", [k for k in ml.MotionKind if k != ml.MotionKind.STATIC])
    def test_closed_loop_classification(self, kind):
        for seed in range(3):
            out = ml.synth_basic_motion(_static_icon(), kind, seed=seed)
            got = ml.classify_signature(ml.extract_signature(out))
            assert got == kind, (kind, seed, got)

    @pytest.mark.parametrize("kind", [k for k in ml.MotionKind if k != ml.MotionKind.STATIC])
    def test_synth_outputs_lint_clean(self, kind):
        for seed in range(3):
            out = ml.synth_basic_motion(_static_icon(), kind, seed=seed)
            diags = lint(out)
            assert not diags, (kind, seed, [d.line() for d in diags])

    def test_combined_uses_distinct_kinds(self):
        out = ml.synth_basic_motion(_static_icon(), ml.MotionKind.COMBINED2, seed=5)
        sig = ml.extract_signature(out)
        active = [n for n, ch in sig.channels.items() if abs(ch.delta) >= ml.ACTIVE_DELTA[n]]
        assert len(active) == 2


class TestTemplateFiles:
    def test_round_trip(self, tmp_path):
        templates = [
            FADE_IN_TMPL,
            ml.MotionTemplate(label="fade-in + upward motion",
                              channels={"opacity": [(0.0, -1.0), (1.0, 0.0)],
                                        "position_y": [(0.0, 0.5), (0.5, 0.1), (1.0, 0.0)]},
                              size=12),
        ]
        path = str(tmp_path / "templates.txt")
        ml.save_templates(templates, path)
        back = ml.read_templates(path)
        assert [t.label for t in back] == [t.label for t in templates]
        assert [t.size for t in back] == [t.size for t in templates]
        assert back[1].channels == templates[1].channels


def test_inject_round_trips_through_json(corpus):
    # An injected file stays a valid, parseable document.
    out = ml.inject_motion(_static_icon(), FADE_IN_TMPL)
    assert parse_lottie(serialize_lottie(out)) is not None
