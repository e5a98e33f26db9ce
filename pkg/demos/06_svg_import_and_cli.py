"""
SVG import and the end-to-end command line
==========================================

Static SVG artwork (a small subset: paths with M/L/C/Z, rects, circles,
ellipses, solid fills and strokes, basic transforms) converts to static
Lottie, ready for motion synthesis.  The same flow is scriptable through
the `lottietok` CLI: clean -> normalize -> tokenize -> detokenize -> lint.
"""

import os
import subprocess
import sys
import tempfile

from lottietok import MotionKind, parse_lottie, serialize_lottie, svg_to_static_lottie, synth_basic_motion

SVG = """
<svg viewBox="0 0 512 512">
  <g id="badge" transform="translate(256,256)">
    <circle r="120" fill="#204080"/>
    <rect x="-60" y="-60" width="120" height="120" fill="#f0b429" stroke="#204080" stroke-width="6"/>
    <path d="M -40 80 C -20 110 20 110 40 80 Z" fill="#ffffff"/>
  </g>
</svg>
"""

anim = svg_to_static_lottie(SVG)
print("layers:", [(l.kind, l.name) for l in anim.layers])
group = anim.layers[0].payload.shapes[0]
print("shape nodes:", [type(c).__name__ for c in group.children])

# Animate the imported artwork and write both files.
spinning = synth_basic_motion(anim, MotionKind.ROTATE, seed=8, direction="cw", magnitude=360)

workdir = tempfile.mkdtemp(prefix="lottietok-demo-")
src = os.path.join(workdir, "badge.json")
with open(src, "w") as f:
    f.write(serialize_lottie(spinning))
print("\nwrote", src)


def run(*argv):
    proc = subprocess.run([sys.executable, "-m", "lottietok.cli", *argv],
                          capture_output=True, text=True)
    print(f"$ lottietok {' '.join(argv)}")
    print(proc.stdout.rstrip() or proc.stderr.rstrip())
    return proc


run("normalize", src, "--out-dir", os.path.join(workdir, "norm"))
run("tokenize", os.path.join(workdir, "norm"), "--out-dir", os.path.join(workdir, "tok"))
run("detokenize", os.path.join(workdir, "tok"), "--out-dir", os.path.join(workdir, "out"))
run("lint", os.path.join(workdir, "out"))
run("stats", os.path.join(workdir, "out"))

restored = parse_lottie(open(os.path.join(workdir, "out", "badge.norm.json")).read())
print("\nrestored layers:", [(l.kind, l.name) for l in restored.layers])
