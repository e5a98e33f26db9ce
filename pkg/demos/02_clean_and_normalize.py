"""
Corpus cleaning and spatial/temporal normalization
==================================================

Web-exported files carry content the token schema cannot represent:
embedded raster image layers, audio and camera layers, and scripted
property expressions.  `clean` removes what can be removed and rejects
files whose semantics would become undefined.  Normalization then maps
every file onto a 512x512 canvas and a 0-60 time range.
"""

import json

from lottietok import NormalizeConfig, clean, normalize_spatial, normalize_temporal, parse_lottie

messy = json.dumps({
    "v": "5.12.1", "fr": 25, "ip": 0, "op": 100, "w": 1920, "h": 1080,
    "layers": [
        {"ind": 1, "ty": 4, "nm": "art", "ip": 0, "op": 100, "st": 0,
         # a scripted expression rides on the rotation property
         "ks": {"r": {"a": 0, "k": 0, "x": "time*360"}},
         "shapes": [
             {"ty": "rc", "p": {"a": 0, "k": [960, 540]}, "s": {"a": 0, "k": [300, 200]}, "r": {"a": 0, "k": 0}},
             {"ty": "fl", "c": {"a": 0, "k": [0.9, 0.5, 0.1]}, "o": {"a": 0, "k": 100}}]},
        {"ind": 2, "ty": 6, "nm": "soundtrack", "ip": 0, "op": 100, "st": 0},
    ],
})

# Lenient parsing admits the audio layer as an opaque stub for cleaning.
raw = parse_lottie(messy, admit_raw_layers=True)
cleaned, report = clean(raw)
print("verdict:", report.verdict)
print("removed:", report.removed_layers)               # [(2, 'Audio')]
print("expressions stripped:", report.stripped_expressions)

# A file that would be left meaningless is rejected, not patched.
img_only = json.dumps({"v": "5", "fr": 30, "ip": 0, "op": 60, "w": 64, "h": 64,
                       "layers": [{"ind": 1, "ty": 2, "refId": "img_0",
                                   "ip": 0, "op": 60, "st": 0}]})
rejected, rep = clean(parse_lottie(img_only, admit_raw_layers=True))
print("image-only file:", rep.verdict, "-", rep.reject_reason)

# Spatial normalization: r = min(512/1920, 512/1080) scales the content,
# one injected null parent carries the scale and the centering offset.
cfg = NormalizeConfig(canvas=512, time_range_max=60.0)
spatial = normalize_spatial(cleaned, cfg)
root = [l for l in spatial.layers if l.match_name == "norm.spatial.root"][0]
print("canvas:", spatial.width, "x", spatial.height)
print("injected scale:", root.transform.scale.static, "offset:", root.transform.position.joint.static)

# Temporal normalization: t' = 60 * (t - ip) / (op - ip).
both = normalize_temporal(spatial, cfg)
print("time range:", both.in_point, "-", both.out_point)

# Both passes are idempotent.
assert normalize_spatial(both, cfg) == both
assert normalize_temporal(both, cfg) == both
print("normalize(normalize(a)) == normalize(a)")
