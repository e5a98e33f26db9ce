"""
Renderability linting with a leveled failure taxonomy
=====================================================

Generated files fail in recognizable ways: schema-level value violations
(level 1), structural emptiness or dangling references (level 2), and
rendering-level invisibility (level 3): geometry without styles, layers
outside the time window, collapsed opacity or scale, off-canvas
positions, text without fonts.  `lint` reports them deterministically;
`failure_histogram` aggregates a corpus by dominant code.
"""

import json

from lottietok import failure_histogram, lint, parse_lottie

BROKEN_FILES = {
    # Valid global structure, but nothing to render.
    "empty-layers": {"v": "5.12.1", "fr": 25.0, "ip": 0.0, "op": 105.0,
                     "w": 512.0, "h": 512.0, "layers": [], "assets": [], "markers": []},
    # Path geometry with no sibling fill or stroke node.
    "missing-style": {"v": "5", "fr": 30, "ip": 0, "op": 60, "w": 512, "h": 512, "layers": [
        {"ind": 1, "ty": 4, "ip": 0, "op": 60, "st": 0, "shapes": [
            {"ty": "sh", "ks": {"a": 0, "k": {"c": True, "v": [[0, 0], [50, 0], [50, 50]],
                                              "i": [[0, 0]] * 3, "o": [[0, 0]] * 3}}}]}]},
    # Layer in-point beyond the global out-point: never visible.
    "late-layer": {"v": "5", "fr": 30, "ip": 0, "op": 60, "w": 512, "h": 512, "layers": [
        {"ind": 1, "ty": 4, "ip": 100, "op": 120, "st": 0, "shapes": [
            {"ty": "rc", "p": {"a": 0, "k": [0, 0]}, "s": {"a": 0, "k": [10, 10]}, "r": {"a": 0, "k": 0}},
            {"ty": "fl", "c": {"a": 0, "k": [1, 0, 0]}, "o": {"a": 0, "k": 100}}]}]},
    # 1% opacity and a position far outside the canvas.
    "invisible": {"v": "5", "fr": 30, "ip": 0, "op": 60, "w": 512, "h": 512, "layers": [
        {"ind": 1, "ty": 4, "ip": 0, "op": 60, "st": 0,
         "ks": {"o": {"a": 0, "k": 1}, "p": {"a": 0, "k": [5000, 5000]}},
         "shapes": [
            {"ty": "el", "p": {"a": 0, "k": [0, 0]}, "s": {"a": 0, "k": [40, 40]}},
            {"ty": "fl", "c": {"a": 0, "k": [1, 0, 0]}, "o": {"a": 0, "k": 100}}]}]},
}

per_file = []
for name, doc in BROKEN_FILES.items():
    diags = lint(parse_lottie(json.dumps(doc)))
    per_file.append(diags)
    print(f"{name}:")
    for d in diags:
        print("  " + d.line())

print("\ndominant failure codes over this corpus:")
for code, (count, pct) in failure_histogram(per_file).items():
    print(f"  {code:18s} {count}  ({pct:.0f}%)")

# Clean files stay clean.
ok = parse_lottie(json.dumps(BROKEN_FILES["late-layer"]).replace('"ip": 100', '"ip": 0')
                  .replace('"op": 120', '"op": 60'))
assert lint(ok) == []
print("\nrepaired file: no diagnostics")
