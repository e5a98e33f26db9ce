import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import read_data
from lottietok.errors import EmptyStats, TokenOutOfRange
from lottietok.vocab import (
    PAD_VAL,
    BuildConfig,
    ClampCounter,
    CorpusStats,
    ParamType,
    build_vocab,
    check_disjoint,
    default_vocab,
    dequantize,
    dump_vocab,
    load_vocab,
    quantize,
)


def test_quantize_opacity_direct(vocab):
    # token(x, t) = floor(x * s) + o with s = 1 for opacity
    o = vocab.regions[ParamType.OPACITY].offset
    assert quantize(100.0, ParamType.OPACITY, vocab) == o + 100


def test_quantize_negative_rotation(vocab):
    o = vocab.regions[ParamType.ROTATION_DEG].offset
    assert quantize(-90.0, ParamType.ROTATION_DEG, vocab) == o - 90


def test_quantize_fractional_spatial(vocab):
    region = vocab.regions[ParamType.SPATIAL_COORD]
    tok = quantize(0.7, ParamType.SPATIAL_COORD, vocab)
    assert tok == region.offset + 0
    assert dequantize(tok, ParamType.SPATIAL_COORD, vocab) == 0.0


@pytest.mark.parametrize("t", list(ParamType))
def test_error_bound_brute_force_scan(vocab, t):
    # Independent oracle: dense scan over the range, including off-grid points.
    region = vocab.regions[t]
    lo, hi = region.min_value, region.max_value
    bound = 1.0 / region.scale
    n = 2000
    for i in range(n + 1):
        x = lo + (hi - lo) * i / n
        err = abs(dequantize(quantize(x, t, vocab), t, vocab) - x)
        assert err <= bound + 1e-12, (t, x, err)


@pytest.mark.parametrize("t", list(ParamType))
def test_grid_exactness_exhaustive(vocab, t):
    region = vocab.regions[t]
    for step in range(region.lo_step, region.hi_step + 1):
        x = step / region.scale
        tok = quantize(x, t, vocab)
        assert tok == region.offset + step
        assert dequantize(tok, t, vocab) == x


def test_pad_round_trip(vocab):
    region = vocab.regions[ParamType.SPATIAL_COORD]
    assert quantize(PAD_VAL, ParamType.SPATIAL_COORD, vocab) == region.pad
    assert dequantize(region.pad, ParamType.SPATIAL_COORD, vocab) is PAD_VAL


def test_pad_token_formula(vocab):
    for t, region in vocab.regions.items():
        assert region.pad == region.offset + region.lo_step - 1, t


def test_foreign_region_token_rejected(vocab):
    opacity_tok = quantize(50.0, ParamType.OPACITY, vocab)
    with pytest.raises(TokenOutOfRange):
        dequantize(opacity_tok, ParamType.ROTATION_DEG, vocab)


def test_clamping_counted_not_fatal(vocab):
    counter = ClampCounter()
    region = vocab.regions[ParamType.OPACITY]
    tok = quantize(250.0, ParamType.OPACITY, vocab, counter)
    assert tok == region.offset + 100
    tok = quantize(-5.0, ParamType.OPACITY, vocab, counter)
    assert tok == region.offset + 0
    assert counter.counts[ParamType.OPACITY] == 2
    assert counter.total == 2


@given(st.floats(min_value=-2000, max_value=2000), st.floats(min_value=-2000, max_value=2000))
def test_quantize_monotone(vocab, x, y):
    lo, hi = sorted((x, y))
    assert quantize(lo, ParamType.GENERIC, vocab) <= quantize(hi, ParamType.GENERIC, vocab)


def test_disjointness_exhaustive(vocab):
    assert check_disjoint(vocab) == []


def test_zero_representable(vocab):
    for t, region in vocab.regions.items():
        assert region.lo_step <= 0 <= region.hi_step, t


def test_vocab_under_10k(vocab):
    assert vocab.total_size < 10_000


def test_default_vocab_matches_golden_file(vocab):
    golden = load_vocab(read_data("default_vocab.txt"))
    assert golden == vocab


def test_builder_on_empty_stats_is_default(vocab):
    assert build_vocab(CorpusStats()) == vocab


def test_constant_observations_degenerate_region():
    stats = CorpusStats()
    for _ in range(10):
        stats.observe(ParamType.FONT_SIZE, 36.0)
    spec = build_vocab(stats)
    region = spec.regions[ParamType.FONT_SIZE]
    assert (region.lo_step, region.hi_step) == (36, 36)  # one value token
    assert region.pad == region.start - 1
    assert check_disjoint(spec) == []


def test_empty_stats_error_when_defaults_disabled():
    with pytest.raises(EmptyStats):
        build_vocab(CorpusStats(), BuildConfig(use_default_ranges=False))


@settings(max_examples=30)
@given(st.lists(st.floats(min_value=-500, max_value=500), min_size=3, max_size=40),
       st.floats(min_value=0.0, max_value=0.2), st.floats(min_value=0.0, max_value=0.2))
def test_widening_quantiles_never_shrinks(values, dlo, dhi):
    stats = CorpusStats()
    for v in values:
        stats.observe(ParamType.GENERIC, v)
    narrow = build_vocab(stats, BuildConfig(q_lo=0.2, q_hi=0.8))
    wide = build_vocab(stats, BuildConfig(q_lo=0.2 - dlo, q_hi=0.8 + dhi))
    rn = narrow.regions[ParamType.GENERIC]
    rw = wide.regions[ParamType.GENERIC]
    assert rw.hi_step - rw.lo_step >= rn.hi_step - rn.lo_step


def test_structural_regions_never_shrink_below_defaults():
    stats = CorpusStats()
    for v in (0.0, 1.0, 2.0):
        stats.observe(ParamType.COUNT, v)
    spec = build_vocab(stats)
    assert spec.regions[ParamType.COUNT].hi_step >= 512


def test_dump_load_round_trip(vocab):
    assert load_vocab(dump_vocab(vocab)) == vocab


def test_regions_packed_after_commands(vocab):
    n = len(vocab.commands)
    ids = sorted(
        [r.pad for r in vocab.regions.values()]
        + [i for r in vocab.regions.values() for i in (r.start, r.end)]
    )
    assert ids[0] == n  # first pad sits right after the command block
    assert vocab.text_base == max(r.end for r in vocab.regions.values()) + 1
