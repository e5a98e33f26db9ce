"""Lossless Lottie <-> token conversion toolkit with corpus utilities."""

from .errors import (
    AlreadyAnimated,
    ArityMismatch,
    DegenerateDuration,
    EmptyStats,
    KTooLarge,
    LottieTokError,
    MalformedJson,
    MissingMeta,
    SchemaViolation,
    TextTooLong,
    TokenOutOfRange,
    UnbalancedNesting,
    UnknownParamType,
    UnsupportedContent,
    UnsupportedLayerKind,
    UnsupportedSvgFeature,
    VersionMismatch,
)
from .lint import Diagnostic, failure_histogram, lint
from .model import (
    Animation,
    Layer,
    canonical_equal,
    parse_lottie,
    serialize_lottie,
)
from .motionlib import (
    MotionKind,
    MotionSignature,
    MotionTemplate,
    classify_signature,
    cluster_signatures,
    extract_signature,
    inject_motion,
    synth_basic_motion,
)
from .pipeline import CleanReport, NormalizeConfig, clean, normalize, normalize_spatial, normalize_temporal
from .svgimport import svg_to_static_lottie
from .texttok import ByteTextTokenizer, ExternalVocabTokenizer, make_text_tokenizer
from .tokenizer import (
    Command,
    CommandSeq,
    TokenSeq,
    decode,
    dump_commands,
    encode,
    from_command_sequence,
    to_command_sequence,
    token_stats,
)
from .vocab import (
    PAD_VAL,
    BuildConfig,
    CorpusStats,
    ParamType,
    VocabSpec,
    build_vocab,
    default_vocab,
    dequantize,
    quantize,
    read_vocab,
    save_vocab,
)

__version__ = "0.1.0"
