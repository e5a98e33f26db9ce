"""Command-line front end: clean, normalize, tokenize, detokenize, augment,
svg-import, lint, vocab-build, stats.

Inputs are files or directories (directories expand to their sorted *.json /
*.svg / *.tok contents).  Files are processed by a worker pool
(LOTTIE_TOK_THREADS overrides the size); outputs and summary lines are
emitted in sorted input order so parallel and serial runs are identical.

Exit codes: 0 success, 1 any file-level failure or lint error, 2 usage.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from . import model as M
from . import motionlib as ml
from . import pipeline as pl
from . import tokenizer as tk
from . import vocab as vb
from .errors import LottieTokError
from .lint import has_errors as lint_has_errors
from .lint import lint as run_lint
from .lint import report_json as lint_report_json
from .svgimport import svg_to_static_lottie
from .texttok import make_text_tokenizer
from .walk import iter_all_layers


def _threads() -> int:
    env = os.environ.get("LOTTIE_TOK_THREADS")
    if env:
        return max(1, int(env))
    return min(8, os.cpu_count() or 1)


def _expand_inputs(paths: list[str], exts: tuple[str, ...]) -> list[str]:
    files: list[str] = []
    for p in paths:
        if os.path.isdir(p):
            files.extend(
                os.path.join(p, name)
                for name in sorted(os.listdir(p))
                if name.endswith(exts)
            )
        else:
            files.append(p)
    return sorted(dict.fromkeys(files))


def _out_path(in_path: str, out_dir: str | None, new_ext: str, suffix: str = "") -> str:
    stem = os.path.splitext(os.path.basename(in_path))[0]
    directory = out_dir if out_dir else os.path.dirname(in_path)
    os.makedirs(directory or ".", exist_ok=True)
    return os.path.join(directory, f"{stem}{suffix}{new_ext}")


def _run_parallel(files: list[str], fn) -> list[tuple[str, object]]:
    """Apply fn to each file; results keep input order.  Exceptions become
    result values so one bad file never aborts the batch."""
    def safe(path: str):
        try:
            return fn(path)
        except (LottieTokError, ValueError, OSError, json.JSONDecodeError) as e:
            return e

    workers = _threads()
    if workers == 1 or len(files) <= 1:
        results = [safe(f) for f in files]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(safe, files))
    return list(zip(files, results))


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as f:
        return f.read()


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(text)


def _fail_detail(e: Exception) -> str:
    return f"{type(e).__name__}: {e}"


def _emit_summary(rows: list[tuple[str, str, str]]) -> int:
    failures = 0
    for status, path, detail in rows:
        print(f"{status}\t{path}\t{detail}")
        if status == "FAIL":
            failures += 1
    if failures:
        print(f"# {failures}/{len(rows)} files failed", file=sys.stderr)
    return 1 if failures else 0


def _load_vocab_arg(args) -> vb.VocabSpec:
    if getattr(args, "vocab", None):
        return vb.read_vocab(args.vocab)
    return vb.default_vocab()


def _load_tt_arg(args, vocab: vb.VocabSpec):
    return make_text_tokenizer(getattr(args, "text_tokenizer", "builtin"), vocab.text_base)


def _vocab_and_tt(args) -> tuple[vb.VocabSpec, object]:
    """Load vocabulary and text tokenizer together; the text region is the
    last id block, so it widens to fit a larger external tokenizer."""
    vocab = _load_vocab_arg(args)
    tt = _load_tt_arg(args, vocab)
    if tt.size > vocab.text_size:
        import dataclasses
        vocab = dataclasses.replace(vocab, text_size=tt.size)
    return vocab, tt


# --- subcommands --------------------------------------------------------------


def cmd_clean(args) -> int:
    files = _expand_inputs(args.inputs, (".json",))

    def work(path: str):
        anim = M.parse_lottie(_read(path), admit_raw_layers=True)
        cleaned, report = pl.clean(anim)
        if cleaned is not None:
            _write(_out_path(path, args.out_dir, ".json", ".clean"), M.serialize_lottie(cleaned))
        return report

    rows = []
    for path, res in _run_parallel(files, work):
        if isinstance(res, Exception):
            rows.append(("FAIL", path, _fail_detail(res)))
        elif res.verdict == pl.REJECTED:
            rows.append(("FAIL", path, f"Rejected: {res.reject_reason}"))
        else:
            rows.append(("OK", path, f"removed={len(res.removed_layers)} exprs={res.stripped_expressions}"))
    return _emit_summary(rows)


def cmd_normalize(args) -> int:
    files = _expand_inputs(args.inputs, (".json",))
    cfg = pl.NormalizeConfig(canvas=args.canvas, time_range_max=args.time_range)

    def work(path: str):
        anim = M.parse_lottie(_read(path))
        out = pl.normalize(anim, cfg)
        _write(_out_path(path, args.out_dir, ".json", ".norm"), M.serialize_lottie(out))
        return f"canvas={args.canvas} range={args.time_range:g}"

    rows = [("FAIL", p, _fail_detail(r)) if isinstance(r, Exception) else ("OK", p, str(r))
            for p, r in _run_parallel(files, work)]
    return _emit_summary(rows)


def cmd_tokenize(args) -> int:
    files = _expand_inputs(args.inputs, (".json",))
    vocab, tt = _vocab_and_tt(args)

    def work(path: str):
        raw = _read(path)
        anim = M.parse_lottie(raw)
        seq = tk.encode(anim, vocab, tt)
        if args.format == "bin":
            tk.write_token_file_binary([seq], _out_path(path, args.out_dir, ".tokb"))
        else:
            tk.write_token_file([seq], _out_path(path, args.out_dir, ".tok"))
        rep = tk.token_stats(raw, seq, tt)
        return f"tokens={rep.command_tokens} raw={rep.raw_tokens_minified} compression={rep.compression_minified:.2f}"

    rows = [("FAIL", p, _fail_detail(r)) if isinstance(r, Exception) else ("OK", p, str(r))
            for p, r in _run_parallel(files, work)]
    return _emit_summary(rows)


def cmd_detokenize(args) -> int:
    files = _expand_inputs(args.inputs, (".tok", ".tokb"))
    vocab, tt = _vocab_and_tt(args)

    def work(path: str):
        seqs = tk.read_token_file_binary(path) if path.endswith(".tokb") else tk.read_token_file(path)
        for i, seq in enumerate(seqs):
            anim = tk.decode(seq, vocab, tt)
            suffix = "" if len(seqs) == 1 else f"-{i:03d}"
            _write(_out_path(path, args.out_dir, ".json", suffix), M.serialize_lottie(anim))
        return f"sequences={len(seqs)}"

    rows = [("FAIL", p, _fail_detail(r)) if isinstance(r, Exception) else ("OK", p, str(r))
            for p, r in _run_parallel(files, work)]
    return _emit_summary(rows)


def cmd_augment(args) -> int:
    files = _expand_inputs(args.inputs, (".json",))
    template = None
    if args.template:
        templates = ml.read_templates(args.template)
        template = templates[args.template_index]
    kind = ml.MotionKind(args.basic) if args.basic else None

    def work(path: str):
        anim = M.parse_lottie(_read(path))
        if template is not None:
            out = ml.inject_motion(anim, template, duration=args.duration,
                                   magnitude=args.magnitude, seed=args.seed)
            detail = f"template={template.label!r}"
        else:
            out = ml.synth_basic_motion(anim, kind, duration=args.duration, seed=args.seed,
                                        direction=args.direction, magnitude=args.magnitude)
            detail = f"basic={kind.value}"
        _write(_out_path(path, args.out_dir, ".json", ".aug"), M.serialize_lottie(out))
        return detail

    rows = [("FAIL", p, _fail_detail(r)) if isinstance(r, Exception) else ("OK", p, str(r))
            for p, r in _run_parallel(files, work)]
    return _emit_summary(rows)


def cmd_templates(args) -> int:
    files = _expand_inputs(args.inputs, (".json",))
    sigs = []
    failures = 0
    for path, res in _run_parallel(files, lambda p: ml.extract_signature(M.parse_lottie(_read(p)))):
        if isinstance(res, Exception):
            print(f"FAIL\t{path}\t{_fail_detail(res)}")
            failures += 1
        elif res.channels:
            sigs.append(res)
    if not sigs:
        print("FAIL\t-\tno animated signatures in corpus", file=sys.stderr)
        return 1
    templates = ml.cluster_signatures(sigs, args.k, seed=args.seed)
    ml.save_templates(templates, args.output)
    print(f"OK\t{args.output}\ttemplates={len(templates)} from={len(sigs)} signatures")
    return 1 if failures else 0


def cmd_svg_import(args) -> int:
    files = _expand_inputs(args.inputs, (".svg",))

    def work(path: str):
        anim = svg_to_static_lottie(_read(path))
        _write(_out_path(path, args.out_dir, ".json"), M.serialize_lottie(anim))
        return f"layers={len(anim.layers)}"

    rows = [("FAIL", p, _fail_detail(r)) if isinstance(r, Exception) else ("OK", p, str(r))
            for p, r in _run_parallel(files, work)]
    return _emit_summary(rows)


def cmd_lint(args) -> int:
    files = _expand_inputs(args.inputs, (".json",))

    def work(path: str):
        return run_lint(M.parse_lottie(_read(path)))

    results = _run_parallel(files, work)
    any_error = False
    if args.json:
        payload = {}
        for path, res in results:
            if isinstance(res, Exception):
                payload[path] = [{"level": 1, "code": "SchemaViolation", "path": "$",
                                  "message": str(res), "severity": "error"}]
                any_error = True
            else:
                payload[path] = lint_report_json(res)
                any_error = any_error or lint_has_errors(res)
        print(json.dumps(payload, indent=2))
    else:
        for path, res in results:
            if isinstance(res, Exception):
                print(f"L1 SchemaViolation $: {res} [{path}]")
                any_error = True
                continue
            for d in res:
                print(f"{d.line()} [{path}]")
            any_error = any_error or lint_has_errors(res)
    return 1 if any_error else 0


def cmd_vocab_build(args) -> int:
    files = _expand_inputs(args.inputs, (".json",))
    stats = vb.CorpusStats()
    failures = 0
    for path, res in _run_parallel(files, lambda p: M.parse_lottie(_read(p))):
        if isinstance(res, Exception):
            print(f"FAIL\t{path}\t{_fail_detail(res)}")
            failures += 1
        else:
            tk.collect_stats(res, stats)
    cfg = vb.BuildConfig(q_lo=args.q_lo, q_hi=args.q_hi)
    spec = vb.build_vocab(stats, cfg)
    vb.save_vocab(spec, args.output)
    print(f"OK\t{args.output}\ttypes={len(spec.regions)} total={spec.total_size} observations={stats.total}")
    return 1 if failures else 0


@dataclass
class StatsReport:
    files_ok: int = 0
    files_failed: int = 0
    layer_type_percent: dict[str, float] = field(default_factory=dict)
    nesting_depth_hist: dict[int, int] = field(default_factory=dict)
    duration_hist: dict[str, int] = field(default_factory=dict)
    layer_count_mean: float = 0.0
    layer_count_max: int = 0
    mean_compression: float = 0.0


LAYER_TYPE_NAMES = {0: "precomp", 1: "solid", 3: "null", 4: "shape", 5: "text"}


def corpus_stats(paths: list[str]) -> StatsReport:
    """Structural statistics over a corpus; parse failures are counted, not fatal."""
    files = _expand_inputs(paths, (".json",))
    report = StatsReport()
    type_counts: dict[str, int] = {}
    layer_counts: list[int] = []
    compressions: list[float] = []
    vocab = vb.default_vocab()
    tt = make_text_tokenizer("builtin", vocab.text_base)

    for path, res in _run_parallel(files, lambda p: (M.parse_lottie(_read(p)), _read(p))):
        if isinstance(res, Exception):
            report.files_failed += 1
            continue
        anim, raw = res
        report.files_ok += 1
        n_layers = 0
        for _, layer in iter_all_layers(anim):
            n_layers += 1
            name = LAYER_TYPE_NAMES.get(getattr(layer, "kind", -1), "other")
            type_counts[name] = type_counts.get(name, 0) + 1
        layer_counts.append(n_layers)

        depth = _nesting_depth(anim)
        report.nesting_depth_hist[depth] = report.nesting_depth_hist.get(depth, 0) + 1
        seconds = (anim.out_point - anim.in_point) / anim.frame_rate if anim.frame_rate else 0.0
        bucket = f"{int(seconds)}-{int(seconds) + 1}s"
        report.duration_hist[bucket] = report.duration_hist.get(bucket, 0) + 1
        try:
            seq = tk.encode(anim, vocab, tt)
            rep = tk.token_stats(raw, seq, tt)
            compressions.append(rep.compression_minified)
        except LottieTokError:
            pass

    total_layers = sum(type_counts.values())
    if total_layers:
        report.layer_type_percent = {
            k: 100.0 * n / total_layers for k, n in sorted(type_counts.items(), key=lambda kv: -kv[1])
        }
    if layer_counts:
        report.layer_count_mean = sum(layer_counts) / len(layer_counts)
        report.layer_count_max = max(layer_counts)
    if compressions:
        report.mean_compression = sum(compressions) / len(compressions)
    return report


def _nesting_depth(anim: M.Animation) -> int:
    assets = {a.asset_id: a for a in anim.assets if isinstance(a, M.PrecompAsset)}

    def depth_of(layers, seen: frozenset) -> int:
        best = 1
        for layer in layers:
            if isinstance(layer, M.Layer) and isinstance(layer.payload, M.PrecompPayload):
                ref = layer.payload.ref_id
                if ref in assets and ref not in seen:
                    best = max(best, 1 + depth_of(assets[ref].layers, seen | {ref}))
        return best

    return depth_of(anim.layers, frozenset())


def cmd_stats(args) -> int:
    report = corpus_stats(args.inputs)
    print(f"files\tok={report.files_ok}\tfailed={report.files_failed}")
    for name, pct in report.layer_type_percent.items():
        print(f"layer-type\t{name}\t{pct:.1f}%")
    for depth in sorted(report.nesting_depth_hist):
        print(f"nesting-depth\t{depth}\t{report.nesting_depth_hist[depth]}")
    for bucket in sorted(report.duration_hist):
        print(f"duration\t{bucket}\t{report.duration_hist[bucket]}")
    print(f"layer-count\tmean={report.layer_count_mean:.2f}\tmax={report.layer_count_max}")
    print(f"token-efficiency\tmean-compression={report.mean_compression:.2f}\t(minified raw / command tokens)")
    return 0 if report.files_failed == 0 else 1


# --- argument parsing -----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lottietok",
                                description="Lottie <-> token conversion and corpus tooling")
    sub = p.add_subparsers(dest="command", required=True)

    def add_common(sp, exts_help: str):
        sp.add_argument("inputs", nargs="+", help=f"input {exts_help} files or directories")
        sp.add_argument("--out-dir", default=None, help="output directory (default: alongside inputs)")

    sp = sub.add_parser("clean", help="remove non-parameterizable layers and expressions")
    add_common(sp, ".json")
    sp.set_defaults(fn=cmd_clean)

    sp = sub.add_parser("normalize", help="spatial+temporal normalization")
    add_common(sp, ".json")
    sp.add_argument("--canvas", type=int, default=512)
    sp.add_argument("--time-range", type=float, default=60.0)
    sp.set_defaults(fn=cmd_normalize)

    sp = sub.add_parser("tokenize", help="Lottie JSON -> token sequence")
    add_common(sp, ".json")
    sp.add_argument("--vocab", default=None, help="vocabulary file (default: built-in)")
    sp.add_argument("--text-tokenizer", default="builtin", help="builtin | external:FILE")
    sp.add_argument("--format", choices=("ids", "bin"), default="ids")
    sp.set_defaults(fn=cmd_tokenize)

    sp = sub.add_parser("detokenize", help="token sequence -> Lottie JSON")
    add_common(sp, ".tok/.tokb")
    sp.add_argument("--vocab", default=None)
    sp.add_argument("--text-tokenizer", default="builtin")
    sp.set_defaults(fn=cmd_detokenize)

    sp = sub.add_parser("augment", help="inject motion into static files")
    add_common(sp, ".json")
    group = sp.add_mutually_exclusive_group(required=True)
    group.add_argument("--template", default=None, help="motion template file")
    group.add_argument("--basic", default=None,
                       choices=[k.value for k in ml.MotionKind if k != ml.MotionKind.STATIC])
    sp.add_argument("--template-index", type=int, default=0)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--duration", type=float, default=60.0)
    sp.add_argument("--magnitude", type=float, default=None)
    sp.add_argument("--direction", default=None)
    sp.set_defaults(fn=cmd_augment)

    sp = sub.add_parser("templates", help="cluster corpus motion signatures into templates")
    sp.add_argument("inputs", nargs="+")
    sp.add_argument("--k", type=int, default=8, help="number of templates to extract")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("-o", "--output", default="templates.txt")
    sp.set_defaults(fn=cmd_templates)

    sp = sub.add_parser("svg-import", help="subset SVG -> static Lottie")
    add_common(sp, ".svg")
    sp.set_defaults(fn=cmd_svg_import)

    sp = sub.add_parser("lint", help="renderability diagnostics")
    sp.add_argument("inputs", nargs="+")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(fn=cmd_lint)

    sp = sub.add_parser("vocab-build", help="fit vocabulary ranges to a corpus")
    sp.add_argument("inputs", nargs="+")
    sp.add_argument("--q-lo", type=float, default=0.005)
    sp.add_argument("--q-hi", type=float, default=0.995)
    sp.add_argument("-o", "--output", default="vocab.txt")
    sp.set_defaults(fn=cmd_vocab_build)

    sp = sub.add_parser("stats", help="corpus structural statistics")
    sp.add_argument("inputs", nargs="+")
    sp.set_defaults(fn=cmd_stats)

    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
